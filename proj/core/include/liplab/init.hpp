#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "liplab/network.hpp"
#include "liplab/rng.hpp"

namespace liplab {

/// Per-layer bias law. All built-ins except Constant are symmetric about 0;
/// Constant exists for negative-control experiments and is flagged as such.
struct BiasLaw {
    enum class Kind { Zero, Gaussian, Uniform, Rademacher, Table, Constant };

    Kind kind = Kind::Zero;
    double param = 0.0;          // sigma / m / scale / constant value
    std::vector<double> table;   // Kind::Table only; symmetrized by sign flip

    static BiasLaw zero() { return {}; }
    static BiasLaw gaussian(double sigma) { return {Kind::Gaussian, sigma, {}}; }
    static BiasLaw uniform(double m) { return {Kind::Uniform, m, {}}; }
    static BiasLaw rademacher(double scale = 1.0) { return {Kind::Rademacher, scale, {}}; }
    static BiasLaw symmetric_table(std::vector<double> values) {
        return {Kind::Table, 0.0, std::move(values)};
    }
    static BiasLaw constant(double value) { return {Kind::Constant, value, {}}; }

    bool is_symmetric() const { return kind != Kind::Constant || param == 0.0; }
    void validate() const;
    double sample(Rng& rng) const;
};

/// Bias description for a whole network: one default law plus optional
/// per-layer overrides.
struct BiasSpec {
    BiasLaw default_law;
    std::vector<std::optional<BiasLaw>> per_layer;  // index l overrides layer l

    const BiasLaw& law_for_layer(int l) const {
        if (l < static_cast<int>(per_layer.size()) && per_layer[static_cast<std::size_t>(l)])
            return *per_layer[static_cast<std::size_t>(l)];
        return default_law;
    }
    bool is_symmetric() const;
    void validate() const;
};

struct InitConfig {
    int d = 1;
    int N = 1;
    int L = 1;
    BiasSpec bias;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Draws one network: hidden weights i.i.d. Gaussian with variance 2/N, the
/// output row i.i.d. standard Gaussian, biases per the given law, all jointly
/// independent. Sampling order is fixed (per layer: weights row-major, then
/// bias), so identical (cfg, seed) gives identical parameters.
NetworkParams sample_network(const InitConfig& cfg);

/// Same draw from an already-positioned stream (used by experiment trials).
NetworkParams sample_network(const InitConfig& cfg, Rng& rng);

}  // namespace liplab
