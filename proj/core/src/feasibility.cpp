#include "liplab/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "liplab/errors.hpp"

namespace liplab {
namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-10;
constexpr double kPhase1Tol = 1e-7;

/// min c.y  s.t.  A y = rhs, y >= 0, solved as a dense tableau with Bland's
/// rule in both phases (termination guaranteed on degenerate inputs).
class Simplex {
public:
    Simplex(int n_vars) : n_(n_vars) {}

    void add_row(Vector coeffs, double rhs) {
        if (rhs < 0.0) {
            for (double& v : coeffs) v = -v;
            rhs = -rhs;
        }
        rows_.push_back(std::move(coeffs));
        rhs_.push_back(rhs);
    }

    // Returns false iff phase I proves infeasibility.
    bool solve(const Vector& cost, Vector& solution_out, double& objective_out) {
        const int m = static_cast<int>(rows_.size());
        const int total = n_ + m;  // one artificial per row
        tab_.assign(static_cast<std::size_t>(m), Vector(static_cast<std::size_t>(total) + 1, 0.0));
        basis_.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            auto& row = tab_[static_cast<std::size_t>(i)];
            std::copy(rows_[static_cast<std::size_t>(i)].begin(),
                      rows_[static_cast<std::size_t>(i)].end(), row.begin());
            row[static_cast<std::size_t>(n_ + i)] = 1.0;
            row.back() = rhs_[static_cast<std::size_t>(i)];
            basis_[static_cast<std::size_t>(i)] = n_ + i;
        }

        // Phase I: minimize the sum of artificials.
        obj_.assign(static_cast<std::size_t>(total) + 1, 0.0);
        for (int j = n_; j < total; ++j) obj_[static_cast<std::size_t>(j)] = 1.0;
        for (int i = 0; i < m; ++i) eliminate_basis_column(i);
        iterate(total);
        if (-obj_.back() > kPhase1Tol * (1.0 + rhs_scale())) return false;
        drive_out_artificials(m);

        // Phase II on the real objective, artificials barred from entering.
        obj_.assign(static_cast<std::size_t>(total) + 1, 0.0);
        std::copy(cost.begin(), cost.end(), obj_.begin());
        for (int i = 0; i < m; ++i)
            if (basis_[static_cast<std::size_t>(i)] < n_) eliminate_basis_column(i);
        iterate(n_);

        solution_out.assign(static_cast<std::size_t>(n_), 0.0);
        for (int i = 0; i < m; ++i)
            if (basis_[static_cast<std::size_t>(i)] < n_)
                solution_out[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] =
                    tab_[static_cast<std::size_t>(i)].back();
        objective_out = -obj_.back();
        return true;
    }

private:
    double rhs_scale() const {
        double s = 0.0;
        for (double v : rhs_) s = std::max(s, std::abs(v));
        return s;
    }

    void eliminate_basis_column(int i) {
        const int col = basis_[static_cast<std::size_t>(i)];
        const double f = obj_[static_cast<std::size_t>(col)];
        if (f == 0.0) return;
        const auto& row = tab_[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < obj_.size(); ++j) obj_[j] -= f * row[j];
    }

    void pivot(int pr, int pc) {
        auto& prow = tab_[static_cast<std::size_t>(pr)];
        const double p = prow[static_cast<std::size_t>(pc)];
        for (double& v : prow) v /= p;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (static_cast<int>(i) == pr) continue;
            auto& row = tab_[i];
            const double f = row[static_cast<std::size_t>(pc)];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * prow[j];
            row[static_cast<std::size_t>(pc)] = 0.0;
        }
        const double f = obj_[static_cast<std::size_t>(pc)];
        if (f != 0.0)
            for (std::size_t j = 0; j < obj_.size(); ++j) obj_[j] -= f * prow[j];
        basis_[static_cast<std::size_t>(pr)] = pc;
    }

    void iterate(int enter_limit) {
        const int m = static_cast<int>(tab_.size());
        const long max_iters = 5000 + 50L * (m + static_cast<long>(obj_.size()));
        for (long it = 0; it < max_iters; ++it) {
            // Bland: entering column of lowest index with negative reduced cost.
            int pc = -1;
            for (int j = 0; j < enter_limit; ++j) {
                if (obj_[static_cast<std::size_t>(j)] < -kReducedCostTol) {
                    pc = j;
                    break;
                }
            }
            if (pc < 0) return;  // optimal

            int pr = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                const double aij = tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(pc)];
                if (aij <= kPivotTol) continue;
                const double ratio = tab_[static_cast<std::size_t>(i)].back() / aij;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (pr < 0 || basis_[static_cast<std::size_t>(i)] <
                                                                  basis_[static_cast<std::size_t>(pr)])))
                {
                    best_ratio = ratio;
                    pr = i;
                }
            }
            // The margin LPs are bounded by construction (t <= cap), so an
            // unbounded ray only arises from numerical breakdown.
            if (pr < 0) throw NumericError("simplex: unbounded direction in a bounded LP");
            pivot(pr, pc);
        }
        throw NumericError("simplex: pivot limit exceeded (possible numerical cycling)");
    }

    void drive_out_artificials(int m) {
        for (int i = 0; i < m; ++i) {
            if (basis_[static_cast<std::size_t>(i)] < n_) continue;
            int pc = -1;
            for (int j = 0; j < n_; ++j) {
                if (std::abs(tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) >
                    kPivotTol) {
                    pc = j;
                    break;
                }
            }
            if (pc >= 0) {
                pivot(i, pc);
            } else {
                // Redundant row; zero it so it can never pivot again.
                auto& row = tab_[static_cast<std::size_t>(i)];
                std::fill(row.begin(), row.end(), 0.0);
            }
        }
    }

    int n_;
    std::vector<Vector> rows_;
    Vector rhs_;
    std::vector<Vector> tab_;
    Vector obj_;
    std::vector<int> basis_;
};

bool is_zero_row(const Vector& a) {
    for (double v : a)
        if (v != 0.0) return false;
    return true;
}

struct MarginLp {
    bool feasible = false;
    double t = 0.0;
    Vector x;
};

/// max t  s.t.  strict rows >= t, le rows <= (push_le ? -t : 0), 0 <= t <= cap.
/// Free x handled as x = xp - xn. `active` lists indices of non-degenerate rows.
MarginLp solve_margin_lp(const HalfspaceSystem& sys, const std::vector<std::size_t>& active,
                         double cap, bool push_le) {
    const int d = sys.dim;
    const int n_structural = 2 * d + 1;  // xp, xn, t
    const int t_col = 2 * d;
    const int m = static_cast<int>(active.size()) + 1;
    const int n = n_structural + m;  // one slack per row (incl. cap row)

    Simplex lp(n);
    int slack = n_structural;
    for (std::size_t idx : active) {
        const Halfspace& h = sys.rows[idx];
        Vector row(static_cast<std::size_t>(n), 0.0);
        for (int j = 0; j < d; ++j) {
            row[static_cast<std::size_t>(j)] = h.a[static_cast<std::size_t>(j)];
            row[static_cast<std::size_t>(d + j)] = -h.a[static_cast<std::size_t>(j)];
        }
        if (h.rel == Relation::StrictGt) {
            // a.x - t - s = -b
            row[static_cast<std::size_t>(t_col)] = -1.0;
            row[static_cast<std::size_t>(slack)] = -1.0;
        } else {
            // a.x (+ t) + s = -b
            row[static_cast<std::size_t>(t_col)] = push_le ? 1.0 : 0.0;
            row[static_cast<std::size_t>(slack)] = 1.0;
        }
        lp.add_row(std::move(row), -h.b);
        ++slack;
    }
    {
        Vector row(static_cast<std::size_t>(n), 0.0);
        row[static_cast<std::size_t>(t_col)] = 1.0;
        row[static_cast<std::size_t>(slack)] = 1.0;
        lp.add_row(std::move(row), cap);
    }

    Vector cost(static_cast<std::size_t>(n), 0.0);
    cost[static_cast<std::size_t>(t_col)] = -1.0;  // max t

    MarginLp out;
    Vector y;
    double obj = 0.0;
    out.feasible = lp.solve(cost, y, obj);
    if (!out.feasible) return out;
    out.t = -obj;
    out.x.resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
        out.x[static_cast<std::size_t>(j)] =
            y[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(d + j)];
    return out;
}

void verify_witness(const HalfspaceSystem& sys, const std::vector<std::size_t>& active,
                    const Vector& x, double strict_floor, double le_ceiling) {
    for (std::size_t idx : active) {
        const Halfspace& h = sys.rows[idx];
        const double eps = 1e-9 * (1.0 + norm2(h.a));
        const double v = dot(h.a, x) + h.b;
        const bool ok = h.rel == Relation::StrictGt ? v >= strict_floor - eps
                                                    : v <= le_ceiling + eps;
        if (!ok)
            throw NumericError("feasibility: witness failed post-solve verification (slack " +
                               std::to_string(v) + ")");
    }
}

}  // namespace

FeasibilityResult solve_margin(const HalfspaceSystem& sys, const SolveOptions& opts) {
    if (sys.dim < 1) throw InvalidArgument("halfspace system needs dim >= 1");
    if (!(opts.cap > 0.0)) throw InvalidArgument("margin cap must be > 0");
    for (const Halfspace& h : sys.rows) {
        if (static_cast<int>(h.a.size()) != sys.dim)
            throw InvalidArgument("halfspace coefficient length mismatch");
        if (!all_finite(h.a) || !std::isfinite(h.b))
            throw InvalidArgument("halfspace has non-finite coefficients");
    }

    FeasibilityResult res;

    // Rows with zero coefficient vectors are constants: either true everywhere
    // (drop; they cannot shrink any ball) or false everywhere (region empty).
    std::vector<std::size_t> active;
    std::size_t n_strict = 0;
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        const Halfspace& h = sys.rows[i];
        if (is_zero_row(h.a)) {
            const bool holds = h.rel == Relation::StrictGt ? h.b > 0.0 : h.b <= 0.0;
            if (!holds) return res;  // Infeasible
            continue;
        }
        active.push_back(i);
        if (h.rel == Relation::StrictGt) ++n_strict;
    }

    MarginLp lp1 = solve_margin_lp(sys, active, opts.cap, /*push_le=*/true);
    res.lp_solves = 1;
    if (!lp1.feasible) return res;  // even the closed relaxation is empty

    if (lp1.t > opts.tol) {
        verify_witness(sys, active, lp1.x, lp1.t, -lp1.t);
        res.status = FeasStatus::FullDim;
        res.witness = std::move(lp1.x);
        res.margin = lp1.t;
        res.strict_margin = res.margin;
        return res;
    }

    if (n_strict == 0) {
        verify_witness(sys, active, lp1.x, 0.0, 0.0);
        res.status = FeasStatus::FeasibleLowerDim;
        res.witness = std::move(lp1.x);
        res.margin = std::max(lp1.t, 0.0);
        res.strict_margin = 0.0;
        return res;
    }

    MarginLp lp2 = solve_margin_lp(sys, active, opts.cap, /*push_le=*/false);
    res.lp_solves = 2;
    if (!lp2.feasible)
        throw NumericError("feasibility: relaxed LP infeasible although margin LP was feasible");
    if (lp2.t > opts.tol) {
        verify_witness(sys, active, lp2.x, lp2.t, 0.0);
        res.status = FeasStatus::FeasibleLowerDim;
        res.witness = std::move(lp2.x);
        res.margin = std::max(lp1.t, 0.0);
        res.strict_margin = lp2.t;
        return res;
    }
    return res;  // strict rows cannot all hold: Infeasible
}

}  // namespace liplab
