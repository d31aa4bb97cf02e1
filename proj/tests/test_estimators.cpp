#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "liplab/errors.hpp"
#include "liplab/estimators.hpp"
#include "liplab/exact_lip.hpp"
#include "liplab/experiments.hpp"
#include "liplab/init.hpp"
#include "liplab/rng.hpp"

using namespace liplab;

namespace {

NetworkParams random_net(Rng& rng, int d, int N, int L, double bias_sigma) {
    InitConfig cfg{d, N, L, {}, rng.next_u64()};
    if (bias_sigma > 0.0) cfg.bias.default_law = BiasLaw::gaussian(bias_sigma);
    return sample_network(cfg);
}

}  // namespace

TEST_CASE("sampling the worked example finds the max-gradient cell") {
    EstimateConfig cfg{2000, {}, 0, 99};
    CHECK(sampled_lip_lower(example_net_three_neuron(), cfg) ==
          doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("sample laws are honored and validated") {
    const NetworkParams net = example_net_three_neuron();
    EstimateConfig cfg{500, {SampleLawKind::SphereRadius, 1e6}, 0, 7};
    CHECK(sampled_lip_lower(net, cfg) == doctest::Approx(std::sqrt(2.0)));
    cfg.law = {SampleLawKind::BallRadius, 1e3};
    CHECK(sampled_lip_lower(net, cfg) == doctest::Approx(std::sqrt(2.0)));
    cfg.law.radius = 0.0;
    CHECK_THROWS_AS(sampled_lip_lower(net, cfg), InvalidArgument);
    cfg.law = {};
    cfg.n_samples = 0;
    CHECK_THROWS_AS(sampled_lip_lower(net, cfg), InvalidArgument);
}

TEST_CASE("hill climb reaches the global cell of the worked example") {
    const NetworkParams net = example_net_three_neuron();
    // (-1, -1) lies on the x = y boundary: the start must be perturbed once.
    const HillClimbResult hc = pattern_hill_climb(net, {-1.0, -1.0}, 8);
    CHECK(hc.grad_norm == doctest::Approx(std::sqrt(2.0)));
    for (std::size_t i = 1; i < hc.history.size(); ++i)
        CHECK(hc.history[i] >= hc.history[i - 1]);
}

TEST_CASE("zero steps reports the start region's gradient norm") {
    const NetworkParams net = example_net_three_neuron();
    const HillClimbResult hc = pattern_hill_climb(net, {3.0, 0.0}, 0);
    CHECK(hc.grad_norm == doctest::Approx(1.0));  // the (1,0) cell
    CHECK(hc.history.size() == 1);
}

TEST_CASE("hill climb stays below the exact constant and improves on sampling") {
    Rng rng(503);
    for (int t = 0; t < 12; ++t) {
        const NetworkParams net = random_net(rng, 2, 4, 1 + t % 2, 0.5);
        const double lip = exact_lipschitz(net).lip;

        EstimateConfig est{200, {}, 0, rng.next_u64()};
        const double sampled = sampled_lip_lower(net, est);

        // Climb from a fresh random point.
        Vector start{rng.gaussian(), rng.gaussian()};
        const HillClimbResult hc = pattern_hill_climb(net, start, 40, rng.next_u64());
        CHECK(hc.grad_norm <= lip + 1e-9);
        CHECK(sampled <= lip + 1e-12);
    }
}

TEST_CASE("identical net, config and seed give identical estimates") {
    Rng rng(811);
    const NetworkParams net = random_net(rng, 3, 5, 2, 0.5);
    EstimateConfig cfg{500, {SampleLawKind::BallRadius, 100.0}, 0, 42};
    CHECK(sampled_lip_lower(net, cfg) == sampled_lip_lower(net, cfg));
    const HillClimbResult a = pattern_hill_climb(net, {1.0, 2.0, 3.0}, 10, 9);
    const HillClimbResult b = pattern_hill_climb(net, {1.0, 2.0, 3.0}, 10, 9);
    CHECK(a.grad_norm == b.grad_norm);
    CHECK(a.pattern == b.pattern);
}

TEST_CASE("collapse lower bound: values and the depth guard") {
    NetworkParams chain;
    chain.input_dim = 1;
    chain.hidden_widths = {1};
    chain.weights = {Matrix(1, 1, {2.0}), Matrix(1, 1, {3.0})};
    chain.biases = {Vector{0.0}, Vector{0.0}};
    CHECK(shallow_collapse_lower(chain) == doctest::Approx(3.0));
    CHECK(shallow_collapse_lower(example_net_three_neuron()) == doctest::Approx(0.5));
    CHECK(shallow_collapse_lower(example_net_collapse_zero()) == 0.0);
    CHECK_THROWS_AS(shallow_collapse_lower(example_net_dead_chain()), InvalidArgument);
}

TEST_CASE("collapse lower bound never exceeds the exact constant on depth-1 nets") {
    Rng rng(521);
    for (int t = 0; t < 20; ++t) {
        const NetworkParams net = random_net(rng, 1 + t % 3, 1 + t % 5, 1, 0.7);
        CHECK(shallow_collapse_lower(net) <= exact_lipschitz(net).lip + 1e-9);
    }
}

TEST_CASE("fixed-point report at the worked example") {
    const NetworkParams net = example_net_three_neuron();
    const FixedPointReport rep = fixed_point_report(net, {2.0, 0.0});
    CHECK(rep.grad_norm == doctest::Approx(1.0));
    CHECK(rep.all_preactivations_nonzero);
    CHECK(rep.layer_nonvanishing == std::vector<bool>{true});
    // On the x = y ray a pre-activation is exactly zero.
    const FixedPointReport boundary = fixed_point_report(net, {1.0, 1.0});
    CHECK_FALSE(boundary.all_preactivations_nonzero);
    CHECK_THROWS_AS(fixed_point_report(net, {0.0, 0.0}), InvalidArgument);
}

TEST_CASE("fixed-point gradient norm matches gradient_at off boundaries") {
    Rng rng(601);
    for (int t = 0; t < 20; ++t) {
        const NetworkParams net = random_net(rng, 3, 6, 2, 0.5);
        Vector x0{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const FixedPointReport rep = fixed_point_report(net, x0);
        const auto g = gradient_at(net, x0);
        if (g.boundary_margin > 0.0) CHECK(rep.grad_norm == norm2(g.gradient));
        CHECK(rep.grad_norm <= exact_lipschitz(net).lip + 1e-9);
    }
}

TEST_CASE("fixed-point ratios are exact for an identity-like chain") {
    // Single neuron with unit weight: the masked product is the identity on
    // the positive ray, so every ratio is 1.
    NetworkParams net;
    net.input_dim = 1;
    net.hidden_widths = {1, 1};
    net.weights = {Matrix(1, 1, {1.0}), Matrix(1, 1, {1.0}), Matrix(1, 1, {1.0})};
    net.biases = {Vector{0.0}, Vector{0.0}, Vector{0.0}};
    const FixedPointReport rep = fixed_point_report(net, {2.0}, {{1.0}});
    REQUIRE(rep.layer_ratio_minmax.size() == 2);
    for (const auto& [lo, hi] : rep.layer_ratio_minmax) {
        CHECK(lo == doctest::Approx(1.0));
        CHECK(hi == doctest::Approx(1.0));
    }
}

TEST_CASE("estimator chain: sampled <= climbed <= exact") {
    Rng rng(617);
    for (int t = 0; t < 8; ++t) {
        const NetworkParams net = random_net(rng, 2, 5, 1, 0.0);
        const double lip = exact_lipschitz(net).lip;
        EstimateConfig est{300, {}, 0, rng.next_u64()};
        const double sampled = sampled_lip_lower(net, est);

        // Recreate the estimator stream to find the best sampled point.
        Rng sampler(est.seed);
        double best = 0.0;
        Vector best_x{1.0, 0.0};
        for (int s = 0; s < est.n_samples; ++s) {
            Vector x{sampler.gaussian(), sampler.gaussian()};
            const auto g = gradient_at(net, x);
            if (g.boundary_margin <= 0.0) continue;
            if (norm2(g.gradient) > best) {
                best = norm2(g.gradient);
                best_x = x;
            }
        }
        const HillClimbResult hc = pattern_hill_climb(net, best_x, 30, 5);
        CHECK(sampled <= hc.grad_norm + 1e-12);
        CHECK(hc.grad_norm <= lip + 1e-9);
    }
}
