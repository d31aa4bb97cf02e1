#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

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

std::set<std::vector<std::vector<std::uint8_t>>> pattern_set(
    const std::vector<RegionCertificate>& regions, bool full_dim_only) {
    std::set<std::vector<std::vector<std::uint8_t>>> out;
    for (const auto& r : regions)
        if (!full_dim_only || r.full_dim) out.insert(r.pattern.bits);
    return out;
}

}  // namespace

TEST_CASE("the worked example: four open cells, two gradient values, lip sqrt 2") {
    const NetworkParams net = example_net_three_neuron();
    const auto full = enumerate_regions(net, RegionMode::FullDimOnly);
    CHECK(full.regions.size() == 4);

    std::set<Vector> grads;
    for (const auto& r : full.regions) {
        CHECK(r.full_dim);
        CHECK(r.margin > 1e-8);
        grads.insert(pattern_gradient(net, r.pattern));
        // The witness realizes its pattern.
        CHECK(trace_pattern(net, r.witness) == r.pattern);
    }
    CHECK(grads == std::set<Vector>{{1.0, 0.0}, {-1.0, 1.0}});

    const auto all = enumerate_regions(net, RegionMode::AllRealizable);
    CHECK(all.regions.size() == 6);
    std::set<Vector> all_grads;
    for (const auto& r : all.regions) all_grads.insert(pattern_gradient(net, r.pattern));
    CHECK(all_grads ==
          std::set<Vector>{{1.0, 0.0}, {-1.0, 1.0}, {2.0, -1.0}, {0.0, 0.0}});

    const LipResult lr = exact_lipschitz(net, {}, true);
    CHECK(std::abs(lr.lip - std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(*lr.sup_all_patterns - std::sqrt(5.0)) <= 1e-12);
    CHECK(lr.full_dim_region_count == 4);
    CHECK(*lr.all_pattern_count == 6);
}

TEST_CASE("one neuron on the line splits it in two") {
    NetworkParams net;
    net.input_dim = 1;
    net.hidden_widths = {1};
    net.weights = {Matrix(1, 1, {2.0}), Matrix(1, 1, {3.0})};
    net.biases = {Vector{0.0}, Vector{0.0}};
    const auto full = enumerate_regions(net, RegionMode::FullDimOnly);
    CHECK(full.regions.size() == 2);
    CHECK(exact_lipschitz(net).lip == doctest::Approx(6.0));
    CHECK(sup_all_patterns(net) == doctest::Approx(6.0));  // the on-pattern
}

TEST_CASE("collapse-zero example: brute force over all patterns agrees") {
    const NetworkParams net = example_net_collapse_zero();
    // Oracle: try all 8 patterns; realizability by dense sampling.
    Rng rng(3);
    std::set<std::vector<std::vector<std::uint8_t>>> seen;
    double best = 0.0;
    for (int s = 0; s < 200000; ++s) {
        Vector x{40.0 * rng.gaussian(), 40.0 * rng.gaussian()};
        const auto g = gradient_at(net, x);
        if (g.boundary_margin <= 0.0) continue;
        seen.insert(trace_pattern(net, x).bits);
        best = std::max(best, norm2(g.gradient));
    }
    CHECK(best == doctest::Approx(1.0));

    const LipResult lr = exact_lipschitz(net, {}, true);
    CHECK(std::abs(lr.lip - 1.0) <= 1e-12);
    // Every sampled full-dimensional pattern appears among the enumerated ones.
    const auto enumerated =
        pattern_set(enumerate_regions(net, RegionMode::FullDimOnly).regions, true);
    for (const auto& p : seen) CHECK(enumerated.count(p) == 1);
    CHECK(lr.full_dim_region_count == enumerated.size());
}

TEST_CASE("dead chain has lip zero with two realizable patterns") {
    const NetworkParams net = example_net_dead_chain();
    const LipResult lr = exact_lipschitz(net, {}, true);
    CHECK(lr.lip == 0.0);
    CHECK(*lr.sup_all_patterns == 0.0);
    CHECK(*lr.all_pattern_count == 2);  // x > 0 and x <= 0; layer 2 never fires
}

TEST_CASE("one-dimensional nets match the breakpoint arrangement oracle") {
    Rng rng(107);
    for (int t = 0; t < 25; ++t) {
        InitConfig cfg{1, 4, 1, {}, rng.next_u64()};
        cfg.bias.default_law = BiasLaw::gaussian(1.0);
        const NetworkParams net = sample_network(cfg);

        // Oracle: collect trace patterns on interval midpoints and at the
        // breakpoints themselves.
        std::vector<double> cuts;
        for (int i = 0; i < 4; ++i) {
            const double w = net.weights[0](i, 0);
            if (w != 0.0) cuts.push_back(-net.biases[0][static_cast<std::size_t>(i)] / w);
        }
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> probes;
        double lo = -1e6;
        for (double c : cuts) {
            probes.push_back(0.5 * (lo + c));
            probes.push_back(c);
            lo = c;
        }
        probes.push_back(lo + 1.0);
        std::set<std::vector<std::vector<std::uint8_t>>> oracle;
        for (double p : probes) oracle.insert(trace_pattern(net, {p}).bits);

        const auto all = enumerate_regions(net, RegionMode::AllRealizable);
        CHECK(all.regions.size() == oracle.size());
        CHECK(all.regions.size() <= 9);  // 2 * 4 + 1 sign loci at most
        const auto check = pattern_count_check(net);
        CHECK(check.ok);
        CHECK(check.bound ==
              doctest::Approx(std::pow(2.0 * std::exp(1.0), 2.0)));  // (4e/2)^2
    }
}

TEST_CASE("the pattern-count ceiling doubles its exponent per layer") {
    Rng rng(113);
    const NetworkParams net = random_net(rng, 1, 4, 2, 0.5);
    const auto check = pattern_count_check(net);
    CHECK(check.bound == doctest::Approx(std::pow(2.0 * std::exp(1.0), 4.0)));  // (2e)^4
    CHECK(check.ok);
}

TEST_CASE("planar nets: cell counts against grid oracle and the arrangement ceiling") {
    Rng rng(211);
    for (int t = 0; t < 10; ++t) {
        const NetworkParams net = random_net(rng, 2, 5, 1, t % 2 ? 1.0 : 0.0);
        const auto full = enumerate_regions(net, RegionMode::FullDimOnly);
        CHECK(full.regions.size() <= 16);  // cells of 5 lines in the plane

        std::set<std::vector<std::vector<std::uint8_t>>> oracle;
        Rng prng(rng.next_u64());
        for (int s = 0; s < 20000; ++s) {
            Vector x{30.0 * prng.gaussian(), 30.0 * prng.gaussian()};
            if (forward(net, x).trace.boundary_margin > 0.0)
                oracle.insert(trace_pattern(net, x).bits);
        }
        const auto enumerated = pattern_set(full.regions, true);
        for (const auto& p : oracle) CHECK(enumerated.count(p) == 1);
        CHECK(oracle.size() <= enumerated.size());

        const auto check = pattern_count_check(net);  // d+2 = 4 < 5 = N
        CHECK(check.ok);
    }
}

TEST_CASE("pattern-count ceiling holds for random wide nets") {
    Rng rng(307);
    for (int t = 0; t < 30; ++t) {
        const int d = 1 + static_cast<int>(rng.index(2));
        const int N = d + 3 + static_cast<int>(rng.index(static_cast<std::size_t>(6 - d)));
        const int L = 1 + static_cast<int>(rng.index(2));
        const NetworkParams net = random_net(rng, d, N, L, 0.5);
        const auto check = pattern_count_check(net);
        CHECK(check.ok);
    }
}

TEST_CASE("pattern-count precondition is enforced by name") {
    Rng rng(1);
    const NetworkParams net = random_net(rng, 2, 4, 1, 0.0);  // d+2 == N
    CHECK_THROWS_WITH_AS(pattern_count_check(net),
                         doctest::Contains("requires d + 2 < N"), InvalidArgument);
    NetworkParams varied = random_net(rng, 1, 4, 2, 0.0);
    varied.hidden_widths = {4, 3};
    varied.weights[1] = Matrix(3, 4);
    varied.biases[1] = Vector(3, 0.0);
    varied.weights[2] = Matrix(1, 3, {1.0, 1.0, 1.0});
    CHECK_THROWS_AS(pattern_count_check(varied), InvalidArgument);
}

TEST_CASE("enumeration budgets fail loudly") {
    Rng rng(5);
    const NetworkParams net = random_net(rng, 2, 6, 2, 0.5);
    EnumerationBudget tiny;
    tiny.max_lp_solves = 3;
    CHECK_THROWS_AS(enumerate_regions(net, RegionMode::FullDimOnly, tiny), BudgetExceeded);
    EnumerationBudget slow;
    slow.max_seconds = 0.0;
    CHECK_THROWS_AS(enumerate_regions(net, RegionMode::AllRealizable, slow), BudgetExceeded);
}

TEST_CASE("shallow sandwich, upper envelope and sampling lower bound") {
    Rng rng(401);
    for (int t = 0; t < 25; ++t) {
        const int d = 1 + static_cast<int>(rng.index(3));
        const int N = 1 + static_cast<int>(rng.index(5));
        const NetworkParams net = random_net(rng, d, N, 1, t % 2 ? 1.0 : 0.0);
        const LipResult lr = exact_lipschitz(net, {}, true);
        CHECK(lr.lip >= 0.5 * linear_collapse(net).lip_linear - 1e-9);
        CHECK(lr.lip <= *lr.sup_all_patterns + 1e-12);
        EstimateConfig est{2000, {}, 0, rng.next_u64()};
        CHECK(sampled_lip_lower(net, est) <= lr.lip + 1e-12);
    }
}

TEST_CASE("no sandwich assertion for deeper nets, only the envelope") {
    Rng rng(409);
    for (int t = 0; t < 10; ++t) {
        const NetworkParams net = random_net(rng, 2, 3, 2, 0.5);
        const LipResult lr = exact_lipschitz(net, {}, true);
        CHECK(lr.lip <= *lr.sup_all_patterns + 1e-12);
    }
}

TEST_CASE("argmax witness is consistent with its pattern and norm") {
    Rng rng(419);
    for (int t = 0; t < 15; ++t) {
        const NetworkParams net = random_net(rng, 2, 4, 1 + t % 2, 0.5);
        const LipResult lr = exact_lipschitz(net);
        const auto g = gradient_at(net, lr.argmax_region.witness);
        CHECK(g.gradient == pattern_gradient(net, lr.argmax_region.pattern));
        CHECK(norm2(g.gradient) == lr.lip);
        CHECK(g.boundary_margin > 0.0);
    }
}

TEST_CASE("scaling the output layer scales the exact constant") {
    Rng rng(431);
    const NetworkParams net = random_net(rng, 2, 4, 2, 0.5);
    const double base = exact_lipschitz(net).lip;
    for (double alpha : {2.0, -3.0, 0.125}) {
        NetworkParams scaled = net;
        for (double& v : scaled.weights.back().data) v *= alpha;
        for (double& v : scaled.biases.back()) v *= alpha;
        CHECK(exact_lipschitz(scaled).lip ==
              doctest::Approx(std::abs(alpha) * base).epsilon(1e-12));
    }
}

TEST_CASE("per-layer widths work everywhere except the constant-width bound") {
    NetworkParams net;
    net.input_dim = 2;
    net.hidden_widths = {3, 2};
    net.weights = {Matrix(3, 2, {1, 0, 0, 1, 1, 1}), Matrix(2, 3, {1, -1, 0, 0, 1, -1}),
                   Matrix(1, 2, {1, 1})};
    net.biases = {Vector{0.1, -0.2, 0.0}, Vector{0.0, 0.3}, Vector{0.0}};
    net.validate();
    const auto fwd = forward(net, {0.5, -0.5});
    CHECK(std::isfinite(fwd.value));
    const LipResult lr = exact_lipschitz(net, {}, true);
    CHECK(lr.lip >= 0.0);
    CHECK(lr.lip <= *lr.sup_all_patterns + 1e-12);
    EstimateConfig est{3000, {}, 0, 5};
    CHECK(sampled_lip_lower(net, est) <= lr.lip + 1e-12);
    CHECK_THROWS_AS(pattern_count_check(net), InvalidArgument);
}

TEST_CASE("randomized soak: envelope, sampling and witness invariants hold together") {
    Rng rng(650);
    for (int t = 0; t < 60; ++t) {
        const int d = 1 + static_cast<int>(rng.index(3));
        const int N = 1 + static_cast<int>(rng.index(6));
        const int L = 1 + static_cast<int>(rng.index(3));
        InitConfig cfg{d, N, L, {}, rng.next_u64()};
        switch (t % 4) {
            case 0: break;
            case 1: cfg.bias.default_law = BiasLaw::gaussian(1.0); break;
            case 2: cfg.bias.default_law = BiasLaw::uniform(2.0); break;
            default: cfg.bias.default_law = BiasLaw::rademacher(0.5); break;
        }
        const NetworkParams net = sample_network(cfg);
        const LipResult lr = exact_lipschitz(net, {}, true);
        CHECK(lr.lip <= *lr.sup_all_patterns + 1e-12);
        CHECK(lr.full_dim_region_count >= 1);
        CHECK(lr.full_dim_region_count <= *lr.all_pattern_count);

        EstimateConfig est{2000, {SampleLawKind::BallRadius, 50.0}, 0, rng.next_u64()};
        CHECK(sampled_lip_lower(net, est) <= lr.lip + 1e-12);

        const auto g = gradient_at(net, lr.argmax_region.witness);
        CHECK(g.boundary_margin > 0.0);
        CHECK(norm2(g.gradient) == lr.lip);
    }
}

TEST_CASE("all-zero weights yield the single all-off region with lip zero") {
    NetworkParams net;
    net.input_dim = 2;
    net.hidden_widths = {3};
    net.weights = {Matrix(3, 2), Matrix(1, 3)};
    net.biases = {Vector(3, 0.0), Vector(1, 0.0)};
    const LipResult lr = exact_lipschitz(net, {}, true);
    CHECK(lr.lip == 0.0);
    CHECK(*lr.sup_all_patterns == 0.0);
    CHECK(lr.full_dim_region_count == 1);
    EstimateConfig est{100, {}, 0, 3};
    CHECK(sampled_lip_lower(net, est) == 0.0);
}
