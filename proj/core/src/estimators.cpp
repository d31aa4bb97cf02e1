#include "liplab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "liplab/errors.hpp"
#include "liplab/rng.hpp"

namespace liplab {
namespace {

Vector draw_sample(const SampleLaw& law, int d, Rng& rng) {
    Vector x(static_cast<std::size_t>(d));
    for (double& v : x) v = rng.gaussian();
    switch (law.kind) {
        case SampleLawKind::StdGaussian:
            return x;
        case SampleLawKind::SphereRadius: {
            double n = norm2(x);
            while (n == 0.0) {  // essentially impossible, but stay total
                for (double& v : x) v = rng.gaussian();
                n = norm2(x);
            }
            for (double& v : x) v *= law.radius / n;
            return x;
        }
        case SampleLawKind::BallRadius: {
            double n = norm2(x);
            while (n == 0.0) {
                for (double& v : x) v = rng.gaussian();
                n = norm2(x);
            }
            // Radius uniform in [0, R]: an estimator wants every scale
            // probed, and volume-uniform sampling at large R would never see
            // the O(1)-sized cells that biases carve out near the origin.
            const double r = law.radius * rng.uniform01();
            for (double& v : x) v *= r / n;
            return x;
        }
    }
    return x;
}

/// Region system of a full pattern in input coordinates: for every hidden
/// neuron one halfspace with the relation chosen by its bit, with the affine
/// layer maps masked by the same pattern.
HalfspaceSystem pattern_region_system(const NetworkParams& net, const ActivationPattern& p) {
    check_pattern_shape(net, p);
    HalfspaceSystem sys;
    sys.dim = net.input_dim;

    Matrix a;  // x^(l) = a x + c restricted to the region; identity at l = 0
    Vector c;
    for (int l = 0; l < net.depth(); ++l) {
        const Matrix& w = net.weights[static_cast<std::size_t>(l)];
        const Vector& b = net.biases[static_cast<std::size_t>(l)];
        Matrix za;
        Vector zc;
        if (l == 0) {
            za = w;
            zc = b;
        } else {
            za = matmul(w, a);
            zc = matvec(w, c);
            for (std::size_t i = 0; i < zc.size(); ++i) zc[i] += b[i];
        }
        const auto& bits = p.bits[static_cast<std::size_t>(l)];
        for (int i = 0; i < za.rows; ++i) {
            Halfspace h;
            h.a.assign(za.row(i), za.row(i) + za.cols);
            h.b = zc[static_cast<std::size_t>(i)];
            h.rel = bits[static_cast<std::size_t>(i)] ? Relation::StrictGt : Relation::Le;
            sys.rows.push_back(std::move(h));
        }
        a = Matrix(za.rows, za.cols);
        c.assign(zc.size(), 0.0);
        for (int i = 0; i < za.rows; ++i) {
            if (!bits[static_cast<std::size_t>(i)]) continue;
            std::copy(za.row(i), za.row(i) + za.cols, a.row(i));
            c[static_cast<std::size_t>(i)] = zc[static_cast<std::size_t>(i)];
        }
    }
    return sys;
}

}  // namespace

void EstimateConfig::validate() const {
    if (n_samples < 1) throw InvalidArgument("estimate config requires n_samples >= 1");
    if (hill_climb_steps < 0) throw InvalidArgument("hill_climb_steps must be >= 0");
    if (law.kind != SampleLawKind::StdGaussian && !(law.radius > 0.0))
        throw InvalidArgument("sample law radius must be > 0");
}

double sampled_lip_lower(const NetworkParams& net, const EstimateConfig& cfg) {
    net.validate();
    cfg.validate();
    Rng rng(cfg.seed);
    double best = 0.0;
    for (std::int64_t s = 0; s < cfg.n_samples; ++s) {
        const Vector x = draw_sample(cfg.law, net.input_dim, rng);
        const GradientResult g = gradient_at(net, x);
        if (g.boundary_margin <= 0.0) continue;
        best = std::max(best, norm2(g.gradient));
    }
    return best;
}

HillClimbResult pattern_hill_climb(const NetworkParams& net, const Vector& start, int steps,
                                   std::uint64_t seed, const EnumerationBudget& budget) {
    net.validate();
    if (steps < 0) throw InvalidArgument("hill climb steps must be >= 0");

    Vector x = start;
    ForwardResult fwd = forward(net, x);
    if (fwd.trace.boundary_margin <= 0.0) {
        Rng rng(derive_trial_seed(seed, 0x68696c6cULL));
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += 1e-6 * rng.gaussian();
        fwd = forward(net, x);
        if (fwd.trace.boundary_margin <= 0.0)
            throw NumericError("hill climb start point sits on a region boundary even after "
                               "perturbation");
    }

    HillClimbResult out;
    out.pattern = fwd.trace.pattern;
    out.grad_norm = norm2(pattern_gradient(net, out.pattern));
    out.history.push_back(out.grad_norm);
    std::uint64_t lp_solves = 0;

    const int L = net.depth();
    for (int step = 0; step < steps; ++step) {
        // Rank all single-bit flips by gradient norm, then accept the best
        // one whose region is full-dimensional.
        struct Candidate {
            int layer;
            int neuron;
            double norm;
        };
        std::vector<Candidate> cands;
        for (int l = 0; l < L; ++l) {
            const int width = net.hidden_widths[static_cast<std::size_t>(l)];
            for (int i = 0; i < width; ++i) {
                ActivationPattern q = out.pattern;
                auto& bit = q.bits[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)];
                bit = bit ? 0 : 1;
                const double n = norm2(pattern_gradient(net, q));
                if (n > out.grad_norm) cands.push_back({l, i, n});
            }
        }
        std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
            if (a.norm != b.norm) return a.norm > b.norm;
            if (a.layer != b.layer) return a.layer < b.layer;
            return a.neuron < b.neuron;
        });

        bool moved = false;
        for (const Candidate& cand : cands) {
            ActivationPattern q = out.pattern;
            auto& bit =
                q.bits[static_cast<std::size_t>(cand.layer)][static_cast<std::size_t>(cand.neuron)];
            bit = bit ? 0 : 1;
            FeasibilityResult fr = solve_margin(pattern_region_system(net, q));
            lp_solves += static_cast<std::uint64_t>(fr.lp_solves);
            if (lp_solves > budget.max_lp_solves)
                throw BudgetExceeded("hill climb exceeded the LP-solve budget", lp_solves, 0.0);
            if (fr.status == FeasStatus::FullDim) {
                out.pattern = std::move(q);
                out.grad_norm = cand.norm;
                out.history.push_back(cand.norm);
                moved = true;
                break;
            }
        }
        if (!moved) break;  // local max of the realizable region graph
    }
    out.lp_solves = lp_solves;
    return out;
}

double shallow_collapse_lower(const NetworkParams& net) {
    net.validate();
    if (net.depth() != 1)
        throw InvalidArgument("collapse lower bound is only valid for depth-1 networks; for two "
                              "or more hidden layers the ReLU network can be constant while the "
                              "collapsed network is not");
    return 0.5 * linear_collapse(net).lip_linear;
}

FixedPointReport fixed_point_report(const NetworkParams& net, const Vector& x0,
                                    const std::vector<Vector>& probes) {
    net.validate();
    if (static_cast<int>(x0.size()) != net.input_dim)
        throw InvalidArgument("x0 length does not match network input dimension");
    if (norm2(x0) == 0.0) throw InvalidArgument("fixed-point report requires x0 != 0");

    const ForwardResult fwd = forward(net, x0);
    const int L = net.depth();

    FixedPointReport rep;
    rep.x0 = x0;
    rep.boundary_margin = fwd.trace.boundary_margin;
    rep.grad_norm = norm2(pattern_gradient(net, fwd.trace.pattern));
    rep.all_preactivations_nonzero = fwd.trace.boundary_margin > 0.0;
    rep.layer_nonvanishing.reserve(static_cast<std::size_t>(L));
    for (int l = 1; l <= L; ++l)
        rep.layer_nonvanishing.push_back(norm2(fwd.trace.post[static_cast<std::size_t>(l)]) > 0.0);

    // Propagate probe directions through the masked products
    // D^(l-1) W^(l-1) ... D^(0) W^(0) and record min/max norm ratios.
    std::vector<Vector> dirs;
    dirs.push_back(x0);
    for (const Vector& p : probes) {
        if (static_cast<int>(p.size()) != net.input_dim)
            throw InvalidArgument("probe length does not match network input dimension");
        if (norm2(p) > 0.0) dirs.push_back(p);
    }

    rep.layer_ratio_minmax.assign(static_cast<std::size_t>(L),
                                  {std::numeric_limits<double>::infinity(), 0.0});
    for (const Vector& y : dirs) {
        const double y_norm = norm2(y);
        Vector v = y;
        for (int l = 0; l < L; ++l) {
            v = matvec(net.weights[static_cast<std::size_t>(l)], v);
            const auto& bits = fwd.trace.pattern.bits[static_cast<std::size_t>(l)];
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!bits[i]) v[i] = 0.0;
            const double ratio = norm2(v) / y_norm;
            auto& mm = rep.layer_ratio_minmax[static_cast<std::size_t>(l)];
            mm.first = std::min(mm.first, ratio);
            mm.second = std::max(mm.second, ratio);
        }
    }
    return rep;
}

}  // namespace liplab
