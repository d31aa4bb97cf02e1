#include "liplab/exact_lip.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "liplab/errors.hpp"

namespace liplab {
namespace {

using Clock = std::chrono::steady_clock;

struct LayerRows {
    Matrix a;  // pre-activation coefficients in input coordinates
    Vector c;  // pre-activation offsets
};

class Enumerator {
public:
    Enumerator(const NetworkParams& net, RegionMode mode, const EnumerationBudget& budget)
        : net_(net), mode_(mode), budget_(budget), start_(Clock::now()) {
        net_.validate();
        sys_.dim = net_.input_dim;
        bits_.resize(static_cast<std::size_t>(net_.depth()));
        for (int l = 0; l < net_.depth(); ++l)
            bits_[static_cast<std::size_t>(l)].assign(
                static_cast<std::size_t>(net_.hidden_widths[static_cast<std::size_t>(l)]), 0);
    }

    EnumerationResult run() {
        // Root region is all of R^d: full-dimensional with the cap margin.
        Vector witness(static_cast<std::size_t>(net_.input_dim), 0.0);
        LayerRows rows = layer_rows(0, Matrix{}, Vector{}, /*from_input=*/true);
        descend_layer(0, rows, witness, opts_.cap, /*node_full_dim=*/true);
        EnumerationResult out;
        out.regions = std::move(regions_);
        out.lp_solves = lp_solves_;
        return out;
    }

private:
    /// Pre-activation rows of layer l as affine functions of the input,
    /// given the region-restricted map x^(l) = A x + c (identity at l = 0).
    LayerRows layer_rows(int l, const Matrix& a, const Vector& c, bool from_input) const {
        const Matrix& w = net_.weights[static_cast<std::size_t>(l)];
        const Vector& b = net_.biases[static_cast<std::size_t>(l)];
        LayerRows out;
        if (from_input) {
            out.a = w;
            out.c = b;
        } else {
            out.a = matmul(w, a);
            out.c = matvec(w, c);
            for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] += b[i];
        }
        return out;
    }

    void charge(int lp_solves) {
        lp_solves_ += static_cast<std::uint64_t>(lp_solves);
        if (lp_solves_ > budget_.max_lp_solves)
            throw BudgetExceeded("region enumeration exceeded the LP-solve budget (" +
                                     std::to_string(budget_.max_lp_solves) + ")",
                                 lp_solves_, elapsed());
        if ((++ticks_ & 0xFF) == 0 && elapsed() > budget_.max_seconds)
            throw BudgetExceeded("region enumeration exceeded the wall-clock budget", lp_solves_,
                                 elapsed());
    }

    double elapsed() const {
        return std::chrono::duration<double>(Clock::now() - start_).count();
    }

    /// Branches every neuron of layer l (DFS, "on" first), then recurses into
    /// layer l+1 or records a leaf. `witness`/`margin` describe the current
    /// node: when node_full_dim, every accumulated row holds at `witness`
    /// with uniform slack `margin` (an at-least value, not the optimum).
    void descend_layer(int l, const LayerRows& rows, const Vector& witness, double margin,
                       bool node_full_dim) {
        branch_neuron(l, 0, rows, witness, margin, node_full_dim);
    }

    void branch_neuron(int l, int i, const LayerRows& rows, const Vector& witness, double margin,
                       bool node_full_dim) {
        const int width = net_.hidden_widths[static_cast<std::size_t>(l)];
        if (i == width) {
            finish_layer(l, rows, witness, margin, node_full_dim);
            return;
        }

        Halfspace row;
        row.a.assign(rows.a.row(i), rows.a.row(i) + rows.a.cols);
        row.b = rows.c[static_cast<std::size_t>(i)];

        for (int bit = 1; bit >= 0; --bit) {  // "on" branch first
            row.rel = bit ? Relation::StrictGt : Relation::Le;
            bits_[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>(bit);

            bool zero_row = true;
            for (double v : row.a)
                if (v != 0.0) {
                    zero_row = false;
                    break;
                }
            if (zero_row) {
                // Constant sign condition: membership test, no LP and no
                // effect on the margin.
                const bool holds = bit ? row.b > 0.0 : row.b <= 0.0;
                if (!holds) continue;
                sys_.rows.push_back(row);
                branch_neuron(l, i + 1, rows, witness, margin, node_full_dim);
                sys_.rows.pop_back();
                continue;
            }

            // Witness shortcut: if the current witness already satisfies the
            // new row with enough slack, the child is full-dimensional and no
            // LP is needed.
            if (node_full_dim) {
                const double v = dot(row.a, witness) + row.b;
                const double slack = bit ? v : -v;
                const double child_margin = std::min(margin, slack);
                if (child_margin > opts_.tol) {
                    sys_.rows.push_back(row);
                    branch_neuron(l, i + 1, rows, witness, child_margin, true);
                    sys_.rows.pop_back();
                    continue;
                }
            }

            sys_.rows.push_back(row);
            FeasibilityResult fr = solve_margin(sys_, opts_);
            charge(fr.lp_solves);
            switch (fr.status) {
                case FeasStatus::FullDim:
                    branch_neuron(l, i + 1, rows, fr.witness, fr.margin, true);
                    break;
                case FeasStatus::FeasibleLowerDim:
                    if (mode_ == RegionMode::AllRealizable)
                        branch_neuron(l, i + 1, rows, fr.witness, 0.0, false);
                    break;
                case FeasStatus::Infeasible:
                    break;
            }
            sys_.rows.pop_back();
        }
    }

    void finish_layer(int l, const LayerRows& rows, const Vector& witness, double margin,
                      bool node_full_dim) {
        if (l + 1 < net_.depth()) {
            // Mask the layer map by the chosen bits and move on.
            const auto& bits = bits_[static_cast<std::size_t>(l)];
            Matrix a(rows.a.rows, rows.a.cols);
            Vector c(rows.c.size(), 0.0);
            for (int r = 0; r < rows.a.rows; ++r) {
                if (!bits[static_cast<std::size_t>(r)]) continue;
                std::copy(rows.a.row(r), rows.a.row(r) + rows.a.cols, a.row(r));
                c[static_cast<std::size_t>(r)] = rows.c[static_cast<std::size_t>(r)];
            }
            LayerRows next = layer_rows(l + 1, a, c, false);
            descend_layer(l + 1, next, witness, margin, node_full_dim);
            return;
        }

        // Leaf: certify against the full system so the recorded margin is the
        // optimum, not the running lower estimate.
        FeasibilityResult fr = solve_margin(sys_, opts_);
        charge(fr.lp_solves);
        if (fr.status == FeasStatus::Infeasible)
            throw NumericError("region enumeration: leaf system infeasible at certification");
        // Every prefix of a FullDimOnly leaf was full-dimensional, so the
        // certificate must be too; anything else is a solver inconsistency.
        if (mode_ == RegionMode::FullDimOnly && fr.status != FeasStatus::FullDim)
            throw NumericError("region enumeration: full-dimensional leaf lost its margin at "
                               "certification");
        (void)witness;
        (void)margin;
        (void)node_full_dim;

        RegionCertificate cert;
        cert.pattern.bits = bits_;
        cert.full_dim = fr.status == FeasStatus::FullDim;
        cert.witness = std::move(fr.witness);
        cert.margin = cert.full_dim ? fr.margin : fr.strict_margin;
        cert.last_pre_A = rows.a;
        cert.last_pre_c = rows.c;
        regions_.push_back(std::move(cert));
    }

    NetworkParams net_;
    RegionMode mode_;
    EnumerationBudget budget_;
    Clock::time_point start_;
    SolveOptions opts_{};
    HalfspaceSystem sys_;
    std::vector<std::vector<std::uint8_t>> bits_;
    std::vector<RegionCertificate> regions_;
    std::uint64_t lp_solves_ = 0;
    std::uint64_t ticks_ = 0;
};

}  // namespace

EnumerationResult enumerate_regions(const NetworkParams& net, RegionMode mode,
                                    const EnumerationBudget& budget) {
    return Enumerator(net, mode, budget).run();
}

LipResult exact_lipschitz(const NetworkParams& net, const EnumerationBudget& budget,
                          bool with_sup_all) {
    const RegionMode mode = with_sup_all ? RegionMode::AllRealizable : RegionMode::FullDimOnly;
    EnumerationResult en = enumerate_regions(net, mode, budget);

    LipResult out;
    out.lp_solves = en.lp_solves;
    double sup_all = 0.0;
    bool have_argmax = false;
    for (const RegionCertificate& cert : en.regions) {
        const double g = norm2(pattern_gradient(net, cert.pattern));
        sup_all = std::max(sup_all, g);
        if (!cert.full_dim) continue;
        ++out.full_dim_region_count;
        if (!have_argmax || g > out.lip) {
            out.lip = g;
            out.argmax_region = cert;
            have_argmax = true;
        }
    }
    if (!have_argmax)
        throw NumericError("no full-dimensional region found (the cell decomposition must "
                           "contain at least one open cell)");
    if (with_sup_all) {
        out.all_pattern_count = en.regions.size();
        out.sup_all_patterns = sup_all;
    }
    return out;
}

double sup_all_patterns(const NetworkParams& net, const EnumerationBudget& budget) {
    EnumerationResult en = enumerate_regions(net, RegionMode::AllRealizable, budget);
    double sup = 0.0;
    for (const RegionCertificate& cert : en.regions)
        sup = std::max(sup, norm2(pattern_gradient(net, cert.pattern)));
    return sup;
}

PatternCountCheck pattern_count_check(const NetworkParams& net, const EnumerationBudget& budget) {
    net.validate();
    if (!net.constant_width())
        throw InvalidArgument("pattern-count bound requires constant hidden width");
    const int d = net.input_dim;
    const int N = net.hidden_widths.front();
    const int L = net.depth();
    if (!(d + 2 < N))
        throw InvalidArgument("pattern-count bound requires d + 2 < N (width must exceed input "
                              "dimension plus two); got d=" +
                              std::to_string(d) + ", N=" + std::to_string(N));
    EnumerationResult en = enumerate_regions(net, RegionMode::AllRealizable, budget);
    PatternCountCheck out;
    out.count = en.regions.size();
    const double e = std::exp(1.0);
    out.bound = std::pow(e * N / (d + 1.0), static_cast<double>(L) * (d + 1.0));
    out.ok = static_cast<double>(out.count) <= out.bound;
    return out;
}

}  // namespace liplab
