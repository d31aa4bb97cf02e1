#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liplab/exact_lip.hpp"
#include "liplab/init.hpp"
#include "liplab/linalg.hpp"

namespace liplab {

/// One measured quantity of one trial. Reports are long-format: a trial
/// contributes one row per quantity.
struct TrialRow {
    std::int64_t trial = 0;
    int d = 0;
    int N = 0;
    int L = 0;
    std::uint64_t seed = 0;
    std::string quantity;
    double value = 0.0;
};

/// Outcome of an assertive check. Claims that hinge on the theory's unknown
/// absolute constants are never checks, only aggregates.
struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentReport {
    std::string name;
    std::string config_json;      // echo of the configuration that ran
    std::vector<TrialRow> rows;   // reproducible from (master seed, trial)
    std::string aggregates_json;  // recomputable from rows
    std::vector<Check> checks;

    bool all_checks_pass() const {
        for (const Check& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// CSV with header experiment,trial,d,N,L,seed,quantity,value. Doubles are
/// shortest-round-trip formatted, so equal reports are byte-equal files.
std::string rows_to_csv(const ExperimentReport& report);
std::string summary_to_json(const ExperimentReport& report);

/// Writes rows.csv and summary.json into out_dir (created if needed).
void write_report(const ExperimentReport& report, const std::string& out_dir);

// ---- Scaling of the Lipschitz constant with input dimension -----------------

enum class LipMethod { Exact, Sampled };

struct ScalingConfig {
    std::vector<int> d_grid{2, 4, 8, 16};
    std::vector<int> N_grid{64};
    int R = 200;  // trials per (d, N) cell
    LipMethod method = LipMethod::Sampled;
    std::int64_t n_samples = 8192;  // Sampled method
    BiasSpec bias;
    std::uint64_t master_seed = 1;
    int threads = 0;  // 0 = hardware concurrency
    EnumerationBudget budget;
};

/// Per-trial Lipschitz constants over a (d, N) grid of depth-1 networks,
/// aggregated into per-cell medians, lip/sqrt(d) ratios and the log-log slope
/// of median lip against d. Budget failures of the Exact method are recorded
/// per trial and excluded from aggregates, never silently dropped.
ExperimentReport scaling_shallow(const ScalingConfig& cfg);

// ---- Second-moment identity of masked rows ---------------------------------

struct IsotropyConfig {
    int k = 4;
    int N = 32;
    Vector x;  // nonzero, length k
    BiasSpec bias;
    std::int64_t M = 100000;
    std::uint64_t master_seed = 1;
    int threads = 0;
};

/// Draws M independent (W, b) with W entries N(0, 2/N) over R^k and
/// accumulates the empirical second moment of the first row of
/// sqrt(N) diag(Wx + b) W, which is the k x k identity for symmetric biases.
/// Asymmetric bias laws run as labeled negative controls with no assertion.
ExperimentReport isotropy_check(const IsotropyConfig& cfg);

// ---- Tail decay of masked row projections ----------------------------------

struct SubgaussianConfig {
    int k = 4;
    int N = 32;
    Vector x;  // nonzero, length k
    std::int64_t M = 1000000;
    std::uint64_t master_seed = 1;
    int threads = 0;
};

/// Estimates P(|<row, y>| >= s) for s in {0..4} along several unit directions,
/// fits log-frequency against s^2, and asserts (3-sigma Wilson) that the
/// tails decay at least as fast as 2 exp(-s^2/8).
ExperimentReport subgaussian_tail_check(const SubgaussianConfig& cfg);

// ---- Near-isometry of masked layer products --------------------------------

struct NearIsometryConfig {
    int d = 4;
    int N = 1024;
    int L = 3;
    Vector x0;  // nonzero, length d
    BiasSpec bias;
    int R = 100;
    int probes = 8;
    double u = 1.0;  // echoed into the theoretical probability form
    double C = 1.0;
    std::uint64_t master_seed = 1;
    int threads = 0;
};

/// Per trial, propagates random probe directions through the masked layer
/// products at x0, recording per-layer min/max norm ratios and the
/// no-dead-layer events. Everything is descriptive: the predicted deviation
/// scale carries an unknown constant.
ExperimentReport near_isometry_check(const NearIsometryConfig& cfg);

// ---- Gradient lower-bound event at a fixed point ----------------------------

struct DeepLowerEventConfig {
    int d = 4;
    int N = 256;
    int L = 2;
    BiasSpec bias;
    int R = 500;
    std::uint64_t master_seed = 1;
    int threads = 0;
};

/// Frequency of {||grad Phi(e1)|| >= sqrt(d)/4} plus the differentiability
/// event (all pre-activations nonzero at e1). The gradient frequency is
/// asserted >= 0.9 only in the wide regime N >= 16 d L^2; the
/// differentiability frequency is asserted == 1 for continuous bias laws.
ExperimentReport deep_lower_event(const DeepLowerEventConfig& cfg);

// ---- Fixed constructions where intuition fails ------------------------------

struct CounterexampleConfig {
    std::uint64_t master_seed = 1;
    int threads = 0;
    int random_shallow_trials = 100;
};

/// Four assertions on closed-form constructions:
///  (a) the 2-input/3-neuron example has lip = sqrt(2) and an all-pattern
///      supremum of sqrt(5), each to 1e-9;
///  (b) a net whose collapsed map is constant (lip_linear = 0) still has
///      lip = 1;
///  (c) a depth-2 chain that is identically zero has lip = 0 although its
///      collapsed map has lip_linear = 1;
///  (d) on random depth-1 nets, lip >= lip_linear / 2 without exception.
ExperimentReport counterexample_suite(const CounterexampleConfig& cfg = {});

// Fixed example networks used by the suite and by tests/CLI.
NetworkParams example_net_three_neuron();   // (a): lip sqrt2, sup sqrt5
NetworkParams example_net_collapse_zero();  // (b): lip_linear 0, lip 1
NetworkParams example_net_dead_chain();     // (c): lip 0, lip_linear 1

}  // namespace liplab
