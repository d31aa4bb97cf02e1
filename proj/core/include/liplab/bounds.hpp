#pragma once

#include <functional>

namespace liplab {

/// Stand-ins for the absolute constants the theory only proves to exist.
/// Everything defaults to 1; every report echoes the values used. None of
/// these are asserted anywhere; they parameterize formulas.
struct BoundConstants {
    double C_upper = 1.0;  // leading constant of the upper bounds
    double c1 = 1.0;       // exponent constant in upper-bound probabilities
    double c = 1.0;        // exponent constant in lower-bound probabilities
    double C_lower = 1.0;  // leading constant inside the deep lower bound
    double C_cov = 1.0;    // exponent constant of the shallow covering bound
};

struct BoundValue {
    double value = 0.0;
    double prob_lower_bound = 0.0;  // clamped to [0, 1]
};

// ---- Shallow upper bounds ----------------------------------------------

/// value = C (1 + (sqrt(d)+t)/sqrt(N)) (sqrt(k)+u), k = min(d,N);
/// prob  = (1-2e^{-u^2})_+ (1-2e^{-c1 t^2})_+.
BoundValue shallow_upper(int d, int N, double u, double t, const BoundConstants& k = {});

/// Dimension-only form: C sqrt(d).
double shallow_upper_simple(int d, const BoundConstants& k = {});

/// Expectation form: C (1 + sqrt(d/N)) sqrt(min(d,N)).
double shallow_expectation(int d, int N, const BoundConstants& k = {});

// ---- Deep upper bounds ---------------------------------------------------

/// value = C (1+(sqrt(d)+t)/sqrt(N)) (2sqrt2 + sqrt2 t/sqrt(N))^{L-1}
///           sqrt(L) sqrt(ln(eN/(d+1))) (sqrt(d)+u);
/// prob  = (1-2e^{-u^2})_+ ((1-2e^{-c1 t^2})_+)^L.  Requires N > d+2.
BoundValue deep_upper(int d, int N, int L, double u, double t, const BoundConstants& k = {});

/// High-probability convenience shape C (3sqrt2)^L sqrt(L) sqrt(ln(eN/(d+1)))
/// sqrt(d) with prob (1-2e^{-d})_+ ((1-2e^{-c1 N})_+)^L. Requires N > d+2.
BoundValue deep_upper_simple(int d, int N, int L, const BoundConstants& k = {});

/// Expectation shape C (2sqrt2)^L sqrt(L) sqrt(ln(eN/(d+1))) sqrt(d).
double deep_expectation(int d, int N, int L, const BoundConstants& k = {});

// ---- Shallow lower bounds -------------------------------------------------

/// value = (1/sqrt2) (1-u/sqrt(N))_+ (sqrt(d)-t)_+   (no unknown constant);
/// prob  = (1-2e^{-c t^2})_+ (1-2e^{-c u^2})_+.
BoundValue shallow_lower(int d, int N, double u, double t, const BoundConstants& k = {});

/// Convenience point u = sqrt(N)/2, t = sqrt(d)/2:
/// value = sqrt(d)/(4 sqrt2), prob = (1-2e^{-cN})_+ (1-2e^{-cd})_+.
BoundValue shallow_lower_simple(int d, int N, const BoundConstants& k = {});

// ---- Deep lower bounds ------------------------------------------------------

/// value = ((1 - C_lower (sqrt(d)+u)/sqrt(N))_+)^L (sqrt(k)-t)_+, k = min(d,N);
/// prob  = ((1 - 2^{-N} - e^{-u^2})_+)^L (1-2e^{-c1 t^2})_+.
BoundValue deep_lower(int d, int N, int L, double u, double t, const BoundConstants& k = {});

/// Convenience point u = sqrt(N)/(4 C_lower L), t = sqrt(d)/2. The value is
/// >= sqrt(d)/4 whenever N >= (4 C_lower)^2 d L^2.
BoundValue deep_lower_simple(int d, int N, int L, const BoundConstants& k = {});

// ---- Covering numbers and the entropy integral --------------------------

/// (9 normW0 / eps)^(C_cov k). Requires 0 < eps < normW0 (k = 0 gives 1).
double covering_bound_shallow(double normW0, int k, double eps, const BoundConstants& c = {});

/// (3 Lambda / eps)^d (e N / (d+1))^(L (d+1)).
/// Requires 0 < eps < Lambda, d >= 1 and N > d+2.
double covering_bound_deep(double Lambda, int d, int N, int L, double eps);

/// Integral of sqrt(log_cov(eps)) over eps in (0, Lambda) by adaptive
/// quadrature, relative tolerance rel_tol. log_cov must be nonnegative,
/// nonincreasing and zero for eps >= Lambda; the integrable blow-up at
/// eps -> 0 is flattened by the substitution eps = Lambda u^4.
double dudley_entropy_integral(const std::function<double(double)>& log_cov, double Lambda,
                               double rel_tol = 1e-6);

}  // namespace liplab
