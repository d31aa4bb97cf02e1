#include "liplab/init.hpp"

#include <cmath>

#include "liplab/errors.hpp"

namespace liplab {

void BiasLaw::validate() const {
    switch (kind) {
        case Kind::Gaussian:
        case Kind::Uniform:
        case Kind::Rademacher:
            if (param < 0.0 || !std::isfinite(param))
                throw InvalidArgument("bias law parameter must be finite and >= 0");
            break;
        case Kind::Table:
            if (table.empty()) throw InvalidArgument("table bias law needs at least one value");
            for (double v : table)
                if (!std::isfinite(v)) throw InvalidArgument("table bias law has non-finite value");
            break;
        case Kind::Constant:
            if (!std::isfinite(param)) throw InvalidArgument("constant bias must be finite");
            break;
        case Kind::Zero:
            break;
    }
}

double BiasLaw::sample(Rng& rng) const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Gaussian: return param > 0.0 ? rng.gaussian(param) : 0.0;
        case Kind::Uniform: return param > 0.0 ? rng.uniform(-param, param) : 0.0;
        case Kind::Rademacher: return rng.rademacher(param);
        case Kind::Table: {
            // Random sign flip symmetrizes arbitrary user samples.
            const double v = table[rng.index(table.size())];
            return rng.rademacher(1.0) * v;
        }
        case Kind::Constant: return param;
    }
    return 0.0;
}

bool BiasSpec::is_symmetric() const {
    if (!default_law.is_symmetric()) return false;
    for (const auto& law : per_layer)
        if (law && !law->is_symmetric()) return false;
    return true;
}

void BiasSpec::validate() const {
    default_law.validate();
    for (const auto& law : per_layer)
        if (law) law->validate();
}

void InitConfig::validate() const {
    if (d < 1 || N < 1 || L < 1) throw InvalidArgument("init config requires d, N, L >= 1");
    bias.validate();
}

NetworkParams sample_network(const InitConfig& cfg, Rng& rng) {
    cfg.validate();
    NetworkParams net;
    net.input_dim = cfg.d;
    net.hidden_widths.assign(static_cast<std::size_t>(cfg.L), cfg.N);
    net.weights.reserve(static_cast<std::size_t>(cfg.L) + 1);
    net.biases.reserve(static_cast<std::size_t>(cfg.L) + 1);

    const double hidden_sigma = std::sqrt(2.0 / cfg.N);
    for (int l = 0; l <= cfg.L; ++l) {
        const int rows = l == cfg.L ? 1 : cfg.N;
        const int cols = l == 0 ? cfg.d : cfg.N;
        const double sigma = l == cfg.L ? 1.0 : hidden_sigma;
        Matrix w(rows, cols);
        for (double& v : w.data) v = rng.gaussian(sigma);
        net.weights.push_back(std::move(w));

        const BiasLaw& law = cfg.bias.law_for_layer(l);
        Vector b(static_cast<std::size_t>(rows));
        for (double& v : b) v = law.sample(rng);
        net.biases.push_back(std::move(b));
    }
    net.validate();
    return net;
}

NetworkParams sample_network(const InitConfig& cfg) {
    Rng rng(cfg.seed);
    return sample_network(cfg, rng);
}

}  // namespace liplab
