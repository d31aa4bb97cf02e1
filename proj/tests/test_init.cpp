#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/init.hpp"
#include "liplab/rng.hpp"

using namespace liplab;

namespace {

/// Two-sample Kolmogorov-Smirnov p-value (asymptotic).
double ks_two_sample_p(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        // Step through ties in one go; measuring mid-tie inflates D on
        // discrete laws.
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) p += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    return std::clamp(p, 0.0, 1.0);
}

std::vector<double> bias_samples(const BiasLaw& law, int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (double& v : out) v = law.sample(rng);
    return out;
}

}  // namespace

TEST_CASE("identical config and seed give bit-identical networks") {
    InitConfig cfg{3, 5, 2, {}, 12345};
    cfg.bias.default_law = BiasLaw::gaussian(0.7);
    const NetworkParams a = sample_network(cfg);
    const NetworkParams b = sample_network(cfg);
    for (std::size_t l = 0; l < a.weights.size(); ++l) {
        CHECK(a.weights[l].data == b.weights[l].data);
        CHECK(a.biases[l] == b.biases[l]);
    }
    cfg.seed = 12346;
    const NetworkParams c = sample_network(cfg);
    CHECK(a.weights[0].data != c.weights[0].data);
}

TEST_CASE("zero bias spec forces exactly zero biases") {
    InitConfig cfg{2, 4, 2, {}, 9};
    const NetworkParams net = sample_network(cfg);
    for (const Vector& b : net.biases)
        for (double v : b) CHECK(v == 0.0);
}

TEST_CASE("hidden weight variance tracks 2/N and the output row is standard") {
    InitConfig cfg{1, 10000, 1, {}, 2024};
    const NetworkParams net = sample_network(cfg);

    auto sample_var = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        m /= static_cast<double>(v.size());
        double s = 0.0;
        for (double x : v) s += (x - m) * (x - m);
        return s / static_cast<double>(v.size() - 1);
    };
    const double var0 = sample_var(net.weights[0].data);
    const double target = 2.0 / cfg.N;
    CHECK(var0 > target * 0.9);
    CHECK(var0 < target * 1.1);

    const double varL = sample_var(net.weights[1].data);
    CHECK(varL > 0.9);
    CHECK(varL < 1.1);
}

TEST_CASE("weights are mean zero within standard error") {
    InitConfig cfg{2, 100, 1, {}, 77};
    const NetworkParams net = sample_network(cfg);
    const auto& w = net.weights[0].data;  // 200 entries of sd sqrt(2/N)
    double mean = 0.0;
    for (double v : w) mean += v;
    mean /= static_cast<double>(w.size());
    const double sd = std::sqrt(2.0 / cfg.N);
    CHECK(std::abs(mean) <= 4.0 * sd / std::sqrt(static_cast<double>(w.size())));
}

TEST_CASE("distinct weight entries are uncorrelated across draws") {
    const int n = 100000;
    InitConfig cfg{2, 2, 1, {}, 0};
    // Track the six weight entries of a 2x2 + 1x2 network over n draws.
    std::vector<std::vector<double>> entries(6, std::vector<double>());
    for (int t = 0; t < n; ++t) {
        cfg.seed = derive_trial_seed(31337, static_cast<std::uint64_t>(t));
        const NetworkParams net = sample_network(cfg);
        for (int e = 0; e < 4; ++e) entries[static_cast<std::size_t>(e)].push_back(net.weights[0].data[static_cast<std::size_t>(e)]);
        for (int e = 0; e < 2; ++e) entries[static_cast<std::size_t>(4 + e)].push_back(net.weights[1].data[static_cast<std::size_t>(e)]);
    }
    auto corr = [&](const std::vector<double>& x, const std::vector<double>& y) {
        double mx = 0.0, my = 0.0;
        for (int i = 0; i < n; ++i) {
            mx += x[static_cast<std::size_t>(i)];
            my += y[static_cast<std::size_t>(i)];
        }
        mx /= n;
        my /= n;
        double sxy = 0.0, sxx = 0.0, syy = 0.0;
        for (int i = 0; i < n; ++i) {
            const double dx = x[static_cast<std::size_t>(i)] - mx;
            const double dy = y[static_cast<std::size_t>(i)] - my;
            sxy += dx * dy;
            sxx += dx * dx;
            syy += dy * dy;
        }
        return sxy / std::sqrt(sxx * syy);
    };
    const double band = 4.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            CHECK(std::abs(corr(entries[static_cast<std::size_t>(i)],
                                entries[static_cast<std::size_t>(j)])) <= band);
}

TEST_CASE("built-in bias laws are symmetric by the KS test") {
    const int n = 100000;
    int dir = 0;
    for (const BiasLaw& law : {BiasLaw::gaussian(1.0), BiasLaw::uniform(1.0),
                               BiasLaw::rademacher(1.0), BiasLaw::symmetric_table({0.3, 1.7, 2.4})}) {
        std::vector<double> pos = bias_samples(law, n, 100 + static_cast<std::uint64_t>(dir));
        std::vector<double> neg = bias_samples(law, n, 200 + static_cast<std::uint64_t>(dir));
        for (double& v : neg) v = -v;
        CHECK(ks_two_sample_p(pos, neg) > 0.001);
        ++dir;
    }
}

TEST_CASE("constant bias is representable but flagged asymmetric") {
    BiasSpec spec;
    spec.default_law = BiasLaw::constant(5.0);
    CHECK_FALSE(spec.is_symmetric());
    spec.default_law = BiasLaw::constant(0.0);
    CHECK(spec.is_symmetric());
    spec.default_law = BiasLaw::gaussian(1.0);
    spec.per_layer.push_back(BiasLaw::constant(2.0));
    CHECK_FALSE(spec.is_symmetric());
}

TEST_CASE("per-layer bias overrides apply to their layer only") {
    BiasSpec spec;
    spec.default_law = BiasLaw::zero();
    spec.per_layer = {std::nullopt, BiasLaw::constant(3.0)};
    InitConfig cfg{1, 3, 2, spec, 5};
    const NetworkParams net = sample_network(cfg);
    for (double v : net.biases[0]) CHECK(v == 0.0);
    for (double v : net.biases[1]) CHECK(v == 3.0);
    for (double v : net.biases[2]) CHECK(v == 0.0);
}

TEST_CASE("trial rng derivation is deterministic and collision free") {
    CHECK(derive_trial_seed(0, 0) != derive_trial_seed(0, 1));
    CHECK(derive_trial_seed(0, 0) == derive_trial_seed(0, 0));
    CHECK(derive_trial_seed(1, 0) != derive_trial_seed(0, 0));
    Rng a = derive_trial_rng(42, 7);
    Rng b = derive_trial_rng(42, 7);
    for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("first outputs across trial indices are uniform by chi-square") {
    const int trials = 10000;
    const int bins = 64;
    std::vector<int> counts(bins, 0);
    for (int t = 0; t < trials; ++t) {
        Rng rng = derive_trial_rng(0, static_cast<std::uint64_t>(t));
        const double u = rng.uniform01();
        ++counts[static_cast<std::size_t>(std::min<int>(bins - 1, static_cast<int>(u * bins)))];
    }
    const double expected = static_cast<double>(trials) / bins;
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 0.999 quantile of chi-square with 63 dof is ~103.4 (Wilson-Hilferty),
    // so this passes at p > 0.001.
    CHECK(chi2 < 103.5);
}

TEST_CASE("config validation") {
    InitConfig cfg{0, 1, 1, {}, 0};
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = {1, 1, 1, {}, 0};
    cfg.bias.default_law = BiasLaw::gaussian(-1.0);
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg.bias.default_law = BiasLaw::symmetric_table({});
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}
