#include "liplab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liplab/errors.hpp"

namespace liplab {
namespace {

double pos(double a) { return a > 0.0 ? a : 0.0; }

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

void require_dims(int d, int N, int L = 1) {
    if (d < 1 || N < 1 || L < 1) throw InvalidArgument("bounds require d, N, L >= 1");
}

void require_wide(int d, int N) {
    if (!(N > d + 2))
        throw InvalidArgument("deep bound requires N > d + 2 (width must exceed input dimension "
                              "plus two); got d=" +
                              std::to_string(d) + ", N=" + std::to_string(N));
}

double log_width_term(int d, int N) { return std::sqrt(std::log(std::exp(1.0) * N / (d + 1.0))); }

void check_ut(double u, double t) {
    if (u < 0.0 || t < 0.0 || !std::isfinite(u) || !std::isfinite(t))
        throw InvalidArgument("bound parameters u, t must be finite and >= 0");
}

}  // namespace

BoundValue shallow_upper(int d, int N, double u, double t, const BoundConstants& k) {
    require_dims(d, N);
    check_ut(u, t);
    const double kk = std::min(d, N);
    BoundValue out;
    out.value = k.C_upper * (1.0 + (std::sqrt(double(d)) + t) / std::sqrt(double(N))) *
                (std::sqrt(kk) + u);
    out.prob_lower_bound =
        clamp01(pos(1.0 - 2.0 * std::exp(-u * u)) * pos(1.0 - 2.0 * std::exp(-k.c1 * t * t)));
    return out;
}

double shallow_upper_simple(int d, const BoundConstants& k) {
    require_dims(d, 1);
    return k.C_upper * std::sqrt(double(d));
}

double shallow_expectation(int d, int N, const BoundConstants& k) {
    require_dims(d, N);
    return k.C_upper * (1.0 + std::sqrt(double(d) / N)) * std::sqrt(double(std::min(d, N)));
}

BoundValue deep_upper(int d, int N, int L, double u, double t, const BoundConstants& k) {
    require_dims(d, N, L);
    require_wide(d, N);
    check_ut(u, t);
    const double rd = std::sqrt(double(d));
    const double rN = std::sqrt(double(N));
    BoundValue out;
    out.value = k.C_upper * (1.0 + (rd + t) / rN) *
                std::pow(2.0 * std::sqrt(2.0) + std::sqrt(2.0) * t / rN, L - 1) *
                std::sqrt(double(L)) * log_width_term(d, N) * (rd + u);
    out.prob_lower_bound =
        clamp01(pos(1.0 - 2.0 * std::exp(-u * u)) *
                std::pow(pos(1.0 - 2.0 * std::exp(-k.c1 * t * t)), L));
    return out;
}

BoundValue deep_upper_simple(int d, int N, int L, const BoundConstants& k) {
    require_dims(d, N, L);
    require_wide(d, N);
    BoundValue out;
    out.value = k.C_upper * std::pow(3.0 * std::sqrt(2.0), L) * std::sqrt(double(L)) *
                log_width_term(d, N) * std::sqrt(double(d));
    out.prob_lower_bound = clamp01(pos(1.0 - 2.0 * std::exp(double(-d))) *
                                   std::pow(pos(1.0 - 2.0 * std::exp(-k.c1 * N)), L));
    return out;
}

double deep_expectation(int d, int N, int L, const BoundConstants& k) {
    require_dims(d, N, L);
    require_wide(d, N);
    return k.C_upper * std::pow(2.0 * std::sqrt(2.0), L) * std::sqrt(double(L)) *
           log_width_term(d, N) * std::sqrt(double(d));
}

BoundValue shallow_lower(int d, int N, double u, double t, const BoundConstants& k) {
    require_dims(d, N);
    check_ut(u, t);
    BoundValue out;
    out.value = (1.0 / std::sqrt(2.0)) * pos(1.0 - u / std::sqrt(double(N))) *
                pos(std::sqrt(double(d)) - t);
    out.prob_lower_bound = clamp01(pos(1.0 - 2.0 * std::exp(-k.c * t * t)) *
                                   pos(1.0 - 2.0 * std::exp(-k.c * u * u)));
    return out;
}

BoundValue shallow_lower_simple(int d, int N, const BoundConstants& k) {
    require_dims(d, N);
    BoundValue out;
    out.value = std::sqrt(double(d)) / (4.0 * std::sqrt(2.0));
    out.prob_lower_bound = clamp01(pos(1.0 - 2.0 * std::exp(-k.c * N)) *
                                   pos(1.0 - 2.0 * std::exp(-k.c * d)));
    return out;
}

BoundValue deep_lower(int d, int N, int L, double u, double t, const BoundConstants& k) {
    require_dims(d, N, L);
    check_ut(u, t);
    const double kk = std::min(d, N);
    BoundValue out;
    out.value =
        std::pow(pos(1.0 - k.C_lower * (std::sqrt(double(d)) + u) / std::sqrt(double(N))), L) *
        pos(std::sqrt(kk) - t);
    out.prob_lower_bound =
        clamp01(std::pow(pos(1.0 - std::exp2(double(-N)) - std::exp(-u * u)), L) *
                pos(1.0 - 2.0 * std::exp(-k.c1 * t * t)));
    return out;
}

BoundValue deep_lower_simple(int d, int N, int L, const BoundConstants& k) {
    require_dims(d, N, L);
    const double u = std::sqrt(double(N)) / (4.0 * k.C_lower * L);
    const double t = std::sqrt(double(d)) / 2.0;
    return deep_lower(d, N, L, u, t, k);
}

double covering_bound_shallow(double normW0, int k, double eps, const BoundConstants& c) {
    if (k < 0) throw InvalidArgument("covering bound requires rank k >= 0");
    if (k == 0) return 1.0;
    if (!(normW0 > 0.0) || !(eps > 0.0) || !(eps < normW0))
        throw InvalidArgument("covering bound requires 0 < eps < normW0 (trivial otherwise)");
    return std::pow(9.0 * normW0 / eps, c.C_cov * k);
}

double covering_bound_deep(double Lambda, int d, int N, int L, double eps) {
    require_dims(d, N, L);
    require_wide(d, N);
    if (!(Lambda > 0.0) || !(eps > 0.0) || !(eps < Lambda))
        throw InvalidArgument("covering bound requires 0 < eps < Lambda (trivial otherwise)");
    return std::pow(3.0 * Lambda / eps, d) *
           std::pow(std::exp(1.0) * N / (d + 1.0), static_cast<double>(L) * (d + 1.0));
}

namespace {

struct Quadrature {
    const std::function<double(double)>& f;  // integrand in u after substitution
    double noise_floor;                      // fp-noise / bounded-jump acceptance
    int evals = 0;
    int max_evals = 200000;

    double simpson(double a, double b, double fa, double fm, double fb) const {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double eval(double u) {
        if (++evals > max_evals)
            throw NumericError("entropy-integral quadrature did not converge within the "
                               "evaluation budget");
        return f(u);
    }

    double adapt(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = simpson(a, m, fa, flm, fm);
        const double right = simpson(m, b, fm, frm, fb);
        const double delta = left + right - whole;
        // Covering-number bounds may step (they are 0 beyond Lambda), so a
        // jump pinned between grid points never converges by the Richardson
        // rule alone; once the interval is this narrow its total contribution
        // is below the noise floor and we accept.
        if (depth > 0 && (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= noise_floor ||
                          b - a <= 1e-13))
            return left + right + delta / 15.0;
        return adapt(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               adapt(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

double dudley_entropy_integral(const std::function<double(double)>& log_cov, double Lambda,
                               double rel_tol) {
    if (!(Lambda > 0.0)) throw InvalidArgument("entropy integral requires Lambda > 0");
    if (!(rel_tol > 0.0)) throw InvalidArgument("entropy integral requires rel_tol > 0");

    // eps = Lambda u^4 turns the sqrt(log(1/eps))-type endpoint blow-up into
    // an integrand vanishing like u^3 at 0.
    auto g = [&](double u) -> double {
        if (u <= 0.0) return 0.0;
        const double eps = Lambda * u * u * u * u;
        const double lc = log_cov(eps);
        if (!(lc > 0.0)) return 0.0;  // clamp negatives; zero tail near u = 1
        return 4.0 * Lambda * u * u * u * std::sqrt(lc);
    };

    // Coarse pass to set the absolute tolerance, then the adaptive pass.
    double coarse = 0.0;
    const int n0 = 64;
    for (int i = 0; i < n0; ++i) {
        const double a = static_cast<double>(i) / n0;
        const double b = static_cast<double>(i + 1) / n0;
        coarse += (b - a) / 6.0 * (g(a) + 4.0 * g(0.5 * (a + b)) + g(b));
    }
    const double scale = std::max(std::abs(coarse), 1e-300);

    Quadrature q{g, 1e-13 * scale, 0, 200000};
    const double fa = g(0.0);
    const double fb = g(1.0);
    const double fm = q.eval(0.5);
    const double whole = q.simpson(0.0, 1.0, fa, fm, fb);
    // Split the local tolerance across subintervals a bit tighter than the
    // target so the final relative error lands under rel_tol.
    return q.adapt(0.0, 1.0, fa, fm, fb, whole, 0.1 * rel_tol * scale, 0);
}

}  // namespace liplab
