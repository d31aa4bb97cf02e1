#pragma once

#include <cstdint>
#include <vector>

#include "liplab/exact_lip.hpp"
#include "liplab/network.hpp"

namespace liplab {

enum class SampleLawKind { StdGaussian, SphereRadius, BallRadius };

struct SampleLaw {
    SampleLawKind kind = SampleLawKind::StdGaussian;
    double radius = 1.0;  // SphereRadius / BallRadius only
};

struct EstimateConfig {
    std::int64_t n_samples = 10000;
    SampleLaw law;
    int hill_climb_steps = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Certified lower bound for the Lipschitz constant: the max gradient norm
/// over sampled points whose boundary margin is positive (margin-zero points
/// carry only a one-sided selection and are excluded).
double sampled_lip_lower(const NetworkParams& net, const EstimateConfig& cfg);

struct HillClimbResult {
    ActivationPattern pattern;
    double grad_norm = 0.0;
    std::vector<double> history;  // nondecreasing gradient norms, start included
    std::uint64_t lp_solves = 0;
};

/// Local search over the region graph: starting from the trace pattern at
/// `start`, repeatedly flips the single hidden-neuron bit that maximally
/// increases the pattern gradient norm among flips whose pattern stays
/// realizable on a full-dimensional region (adjacent cells of the arrangement
/// differ by one sign, so single-bit moves suffice). Stops at a local max or
/// after `steps` flips. A margin-zero start is perturbed once by a 1e-6
/// Gaussian before giving up.
HillClimbResult pattern_hill_climb(const NetworkParams& net, const Vector& start, int steps,
                                   std::uint64_t seed = 0,
                                   const EnumerationBudget& budget = {});

/// Depth-1 networks only: half the Lipschitz constant of the identity-
/// collapsed network is a deterministic lower bound for the ReLU network.
double shallow_collapse_lower(const NetworkParams& net);

/// Gradient and differentiability diagnostics at a fixed nonzero point.
struct FixedPointReport {
    Vector x0;
    double grad_norm = 0.0;
    double boundary_margin = 0.0;
    bool all_preactivations_nonzero = false;     // exact-zero test on the trace
    std::vector<bool> layer_nonvanishing;        // x^(l) != 0 for l = 1..L
    // Per layer l = 1..L: min/max over probe directions y of
    // ||D^(l-1)W^(l-1)...D^(0)W^(0) y|| / ||y|| (masks taken at x0).
    std::vector<std::pair<double, double>> layer_ratio_minmax;
};

/// `probes` are extra directions for the isometry ratios; the direction of x0
/// itself is always included.
FixedPointReport fixed_point_report(const NetworkParams& net, const Vector& x0,
                                    const std::vector<Vector>& probes = {});

}  // namespace liplab
