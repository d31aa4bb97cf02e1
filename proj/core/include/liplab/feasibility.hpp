#pragma once

#include <vector>

#include "liplab/linalg.hpp"

namespace liplab {

enum class Relation {
    StrictGt,  // a.x + b > 0
    Le,        // a.x + b <= 0
};

struct Halfspace {
    Vector a;
    double b = 0.0;
    Relation rel = Relation::StrictGt;
};

/// Conjunction of strict/non-strict linear inequalities over R^d.
struct HalfspaceSystem {
    int dim = 0;
    std::vector<Halfspace> rows;
};

enum class FeasStatus { FullDim, FeasibleLowerDim, Infeasible };

/// Classification of the solution set of a HalfspaceSystem.
///
/// margin is the optimum of the uniform-margin LP
///   max t  s.t.  a_i.x + b_i >= t (strict rows),  a_i.x + b_i <= -t (le rows),
///                0 <= t <= cap,
/// so FullDim <=> margin > tol. For FeasibleLowerDim results, strict_margin is
/// the best uniform slack of the strict rows alone (le rows relaxed to <= 0);
/// it is > tol whenever strict rows are strictly satisfiable on the le-row
/// boundary. Rows with identically-zero coefficient vectors are resolved
/// analytically as membership tests and never constrain the margin.
struct FeasibilityResult {
    FeasStatus status = FeasStatus::Infeasible;
    Vector witness;             // empty iff Infeasible
    double margin = 0.0;        // capped at `cap`
    double strict_margin = 0.0; // meaningful for FeasibleLowerDim
    int lp_solves = 0;          // simplex runs consumed (0, 1 or 2)
};

struct SolveOptions {
    double cap = 1.0;   // bounds the margin LP; only the sign of t matters
    double tol = 1e-8;  // separates FullDim from FeasibleLowerDim
};

/// Dense two-phase simplex with Bland's rule; free variables handled by
/// splitting. Problem sizes here are tiny (dim <= ~16, a few hundred rows).
/// Every witness is verified against the system after the solve; failure to
/// verify (or a pivot-count blowup) raises NumericError rather than returning
/// a possibly wrong classification.
FeasibilityResult solve_margin(const HalfspaceSystem& sys, const SolveOptions& opts = {});

}  // namespace liplab
