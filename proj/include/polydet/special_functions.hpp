#pragma once

#include <complex>

#include "polydet/config.hpp"

namespace polydet {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kLogTwoPi = 1.837877066409345483560659472811235279;

/// Radius of the excluded disc around s = 1 for the Hurwitz zeta function.
inline constexpr double kPoleGuard = 1e-8;

/// Bernoulli number B_k (B_1 = -1/2), exact rational recurrence rounded once.
double bernoulli_number(int k);

/// B_r(z) from the generating function t e^{zt} / (e^t - 1).
cplx bernoulli_poly(int r, cplx z);

/// Value of an Euler–Maclaurin evaluation together with its remainder bound.
struct HurwitzEval {
    cplx value;
    cplx derivative;  // d/ds, only filled when requested
    double value_error = 0.0;
    double derivative_error = 0.0;
};

/// Euler–Maclaurin evaluation of the Hurwitz zeta function for Re(z) > 0.
///
/// The shift is N = ceil|Im s| + ceil|z| + cfg.euler_maclaurin_shift and the
/// Bernoulli tail has cfg.bernoulli_terms terms. With `regularized` the pole
/// part 1/(s-1) is subtracted analytically, so s = 1 is admissible and the
/// result is the entire function zeta(s,z) - 1/(s-1).
HurwitzEval hurwitz_euler_maclaurin(cplx s, cplx z, const EvalConfig& cfg, bool with_derivative,
                                    bool regularized = false);

cplx hurwitz_zeta(cplx s, cplx z, const EvalConfig& cfg = {});

/// d/ds zeta(s,z), differentiating every Euler–Maclaurin term analytically.
cplx hurwitz_zeta_ds(cplx s, cplx z, const EvalConfig& cfg = {});

/// log of the Milnor gamma function: d/ds zeta(s,z) at s = 1 - r.
cplx log_milnor_gamma(int r, cplx z, const EvalConfig& cfg = {});
cplx milnor_gamma(int r, cplx z, const EvalConfig& cfg = {});

struct SeriesValue {
    cplx value;
    double tail_bound = 0.0;
    int terms = 0;
};

/// Li_r(z) = sum z^m / m^r on |z| <= 0.99, truncated once the geometric tail
/// bound |z|^{M+1} / ((M+1)^r (1-|z|)) drops below cfg.target_abs_error.
SeriesValue polylog_series(int r, cplx z, const EvalConfig& cfg = {});
cplx polylog(int r, cplx z, const EvalConfig& cfg = {});

/// log Gamma(z) for Re(z) > 0: the branch analytic off (-inf, 0] and real on
/// the positive axis. Stirling series after shifting Re(z) past 15.
cplx log_gamma(cplx z);

/// log Gamma on the whole plane minus the poles, via reflection for Re(z) <= 0.
/// Only exp() of the result is branch independent.
cplx log_gamma_any(cplx z);

/// (e^x - 1) / x, accurate near x = 0.
cplx expm1_over_x(cplx x);

}  // namespace polydet
