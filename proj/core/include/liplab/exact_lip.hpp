#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "liplab/feasibility.hpp"
#include "liplab/network.hpp"

namespace liplab {

/// Enumeration cost limits. Exceeding either raises BudgetExceeded; there is
/// no silent truncation. LP solves are the unit of work (each feasibility
/// query costs one or two), and the region count is bounded by the same
/// quantity, so a call budget doubles as a leaf-count budget.
struct EnumerationBudget {
    std::uint64_t max_lp_solves = 1'000'000;
    double max_seconds = 60.0;
};

enum class RegionMode {
    FullDimOnly,    // open full-dimensional cells only
    AllRealizable,  // also patterns realized solely on lower-dimensional loci
};

/// Proof that a pattern is realizable: an interior (or boundary) witness
/// point, the optimal feasibility margin of the region's halfspace system,
/// and the affine map of the deepest hidden layer's pre-activations
/// restricted to the region.
struct RegionCertificate {
    ActivationPattern pattern;
    Vector witness;
    double margin = 0.0;  // optimal solve_margin value; > tol iff full_dim
    bool full_dim = false;
    Matrix last_pre_A;  // z[L-1] = last_pre_A x + last_pre_c on the region
    Vector last_pre_c;
};

struct EnumerationResult {
    std::vector<RegionCertificate> regions;  // deterministic DFS order
    std::uint64_t lp_solves = 0;
};

/// Depth-first sign branching, layer by layer, neurons in index order, "on"
/// branch first. Each node carries the accumulated halfspace system in input
/// coordinates plus the region-restricted affine pre-activation map; branches
/// are pruned through feasibility.solve_margin. In FullDimOnly mode a node
/// survives only while its system stays full-dimensional; in AllRealizable
/// mode while it stays nonempty.
EnumerationResult enumerate_regions(const NetworkParams& net, RegionMode mode,
                                    const EnumerationBudget& budget = {});

struct LipResult {
    double lip = 0.0;
    RegionCertificate argmax_region;
    std::size_t full_dim_region_count = 0;
    std::optional<std::size_t> all_pattern_count;  // set when AllRealizable ran
    std::optional<double> sup_all_patterns;
    std::uint64_t lp_solves = 0;
};

/// Exact Lipschitz constant: the max of per-pattern gradient norms over the
/// full-dimensional activation regions. Exact because the union of open
/// full-dimensional cells has full measure and the network is affine on each.
/// with_sup_all additionally reports the max over every realizable pattern
/// (the value the unrestricted masked-product supremum attains), which can
/// strictly exceed lip on lower-dimensional loci.
LipResult exact_lipschitz(const NetworkParams& net, const EnumerationBudget& budget = {},
                          bool with_sup_all = false);

/// Max gradient norm over all realizable patterns, including those realized
/// only on measure-zero sets.
double sup_all_patterns(const NetworkParams& net, const EnumerationBudget& budget = {});

struct PatternCountCheck {
    std::size_t count = 0;  // realizable patterns, lower-dimensional included
    double bound = 0.0;     // (e N / (d+1))^(L (d+1))
    bool ok = false;
};

/// Counts realizable patterns and compares against the closed-form ceiling
/// (e N / (d+1))^(L (d+1)). Requires constant width and d + 2 < N, the
/// hypothesis under which the ceiling is valid.
PatternCountCheck pattern_count_check(const NetworkParams& net,
                                      const EnumerationBudget& budget = {});

}  // namespace liplab
