#include "polydet/special_functions.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "polydet/errors.hpp"

namespace polydet {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

constexpr int kMaxBernoulli = 160;
constexpr int kMaxBernoulliPoly = 64;

// Exact B_0..B_kMaxBernoulli from sum_{k=0}^{m} C(m+1,k) B_k = 0.
const std::vector<cpp_rational>& bernoulli_rationals() {
    static const std::vector<cpp_rational> table = [] {
        std::vector<cpp_rational> b(kMaxBernoulli + 1);
        b[0] = 1;
        for (int m = 1; m <= kMaxBernoulli; ++m) {
            cpp_rational acc = 0;
            cpp_int binom = 1;  // C(m+1, k)
            for (int k = 0; k < m; ++k) {
                acc += cpp_rational(binom) * b[k];
                binom = binom * (m + 1 - k) / (k + 1);
            }
            b[m] = -acc / cpp_rational(m + 1);
        }
        return b;
    }();
    return table;
}

// B_{2j} / (2j)! for j = 0..kMaxBernoulli/2, rounded once.
template <class T>
const std::vector<T>& em_coefficients() {
    static const std::vector<T> table = [] {
        const auto& b = bernoulli_rationals();
        std::vector<T> c(kMaxBernoulli / 2 + 1);
        cpp_int fact = 1;
        for (int j = 0; j <= kMaxBernoulli / 2; ++j) {
            if (j > 0) fact *= cpp_int(2 * j - 1) * cpp_int(2 * j);
            c[j] = static_cast<T>(b[2 * j] / cpp_rational(fact));
        }
        return c;
    }();
    return table;
}

// C(r,j) B_j for each r <= kMaxBernoulliPoly.
const std::vector<std::vector<double>>& bernoulli_poly_coefficients() {
    static const std::vector<std::vector<double>> table = [] {
        const auto& b = bernoulli_rationals();
        std::vector<std::vector<double>> rows(kMaxBernoulliPoly + 1);
        for (int r = 0; r <= kMaxBernoulliPoly; ++r) {
            cpp_int binom = 1;
            for (int j = 0; j <= r; ++j) {
                rows[r].push_back(static_cast<double>(cpp_rational(binom) * b[j]));
                binom = binom * (r - j) / (j + 1);
            }
        }
        return rows;
    }();
    return table;
}

// (x e^x - e^x + 1) / x^2, the s-derivative kernel of the regularized pole term.
template <class T>
std::complex<T> pole_derivative_kernel(std::complex<T> x) {
    if (std::abs(x) < T(0.5)) {
        std::complex<T> acc = 0, xp = 1;
        T fact = 2;  // (k+2)!
        for (int k = 0; k < 30; ++k) {
            acc += xp * T(k + 1) / fact;
            xp *= x;
            fact *= T(k + 3);
        }
        return acc;
    }
    const std::complex<T> ex = std::exp(x);
    return (x * ex - ex + T(1)) / (x * x);
}

template <class T>
std::complex<T> expm1_over_x_t(std::complex<T> x) {
    if (std::abs(x) < T(0.5)) {
        std::complex<T> acc = 0, xp = 1;
        T fact = 1;  // (k+1)!
        for (int k = 0; k < 30; ++k) {
            acc += xp / fact;
            xp *= x;
            fact *= T(k + 2);
        }
        return acc;
    }
    return (std::exp(x) - T(1)) / x;
}

// Euler-Maclaurin core in working precision T. Long double is used for Re(s) < 0,
// where the head sum grows like N^{1-Re s} and cancels against the tail.
template <class T>
HurwitzEval em_core(cplx s_in, cplx z_in, int n_shift, int m_terms, bool with_derivative, bool regularized) {
    using C = std::complex<T>;
    const C s(s_in.real(), s_in.imag()), z(z_in.real(), z_in.imag());
    const auto& c = em_coefficients<T>();

    C sum = 0, dsum = 0;
    for (int k = 0; k < n_shift; ++k) {
        const C w = T(k) + z;
        const C lw = std::log(w);
        const C t = std::exp(-s * lw);
        sum += t;
        if (with_derivative) dsum -= t * lw;
    }

    const C w = T(n_shift) + z;
    const C lw = std::log(w);
    const C w_ms = std::exp(-s * lw);  // w^{-s}

    if (regularized) {
        const C x = -(s - T(1)) * lw;
        sum += -lw * expm1_over_x_t(x);
        if (with_derivative) dsum += lw * lw * pole_derivative_kernel(x);
    } else {
        const C p = w * w_ms / (s - T(1));
        sum += p;
        if (with_derivative) dsum += -lw * p - p / (s - T(1));
    }

    sum += T(0.5) * w_ms;
    if (with_derivative) dsum += T(-0.5) * lw * w_ms;

    C poch = s, dpoch = 1;  // (s)_{2j-1} and its s-derivative
    C pw = w_ms / w;        // w^{-s-2j+1}
    const C inv_w2 = T(1) / (w * w);
    for (int j = 1; j <= m_terms; ++j) {
        sum += c[j] * poch * pw;
        if (with_derivative) dsum += c[j] * (dpoch - poch * lw) * pw;
        const C f1 = s + T(2 * j - 1), f2 = s + T(2 * j);
        dpoch = dpoch * f1 * f2 + poch * (f1 + f2);
        poch *= f1 * f2;
        pw *= inv_w2;
    }

    HurwitzEval out;
    out.value = cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    out.derivative = cplx(static_cast<double>(dsum.real()), static_cast<double>(dsum.imag()));
    const double denom = s_in.real() + 2.0 * m_terms + 1.0;
    if (denom > 0) {
        const double ratio = std::abs(s_in + (2.0 * m_terms + 1.0)) / denom;
        const double next = static_cast<double>(std::abs(c[m_terms + 1] * poch * pw));
        out.value_error = 2.0 * next * ratio;
        out.derivative_error = static_cast<double>(
            2 * std::abs(c[m_terms + 1]) * (std::abs(dpoch) + std::abs(poch) * std::abs(lw)) * std::abs(pw) * ratio);
    } else {
        out.value_error = out.derivative_error = std::numeric_limits<double>::infinity();
    }
    return out;
}

}  // namespace

cplx expm1_over_x(cplx x) { return expm1_over_x_t(x); }

double bernoulli_number(int k) {
    if (k < 0 || k > kMaxBernoulli) fail(ErrorKind::InvalidArgument, "Bernoulli index out of range");
    return static_cast<double>(bernoulli_rationals()[k]);
}

cplx bernoulli_poly(int r, cplx z) {
    if (r < 0 || r > kMaxBernoulliPoly)
        fail(ErrorKind::InvalidArgument, "Bernoulli polynomial degree out of range");
    const auto& a = bernoulli_poly_coefficients()[r];
    cplx acc = a[0];
    for (int j = 1; j <= r; ++j) acc = acc * z + a[j];
    return acc;
}

HurwitzEval hurwitz_euler_maclaurin(cplx s, cplx z, const EvalConfig& cfg, bool with_derivative,
                                    bool regularized) {
    if (!(z.real() > 0)) fail(ErrorKind::DomainError, "Hurwitz zeta needs Re(z) > 0");
    if (!regularized && std::abs(s - 1.0) <= kPoleGuard)
        fail(ErrorKind::PoleAtOne, "Hurwitz zeta evaluated at the pole s = 1");
    if (cfg.bernoulli_terms < 1 || cfg.bernoulli_terms > 60 || cfg.euler_maclaurin_shift < 1)
        fail(ErrorKind::InvalidArgument, "invalid Euler-Maclaurin parameters");

    const int n_shift = static_cast<int>(std::ceil(std::abs(s.imag())) + std::ceil(std::abs(z))) +
                        cfg.euler_maclaurin_shift;
    if (s.real() < 0.0)
        return em_core<long double>(s, z, n_shift, cfg.bernoulli_terms, with_derivative, regularized);
    return em_core<double>(s, z, n_shift, cfg.bernoulli_terms, with_derivative, regularized);
}

cplx hurwitz_zeta(cplx s, cplx z, const EvalConfig& cfg) {
    return hurwitz_euler_maclaurin(s, z, cfg, false).value;
}

cplx hurwitz_zeta_ds(cplx s, cplx z, const EvalConfig& cfg) {
    return hurwitz_euler_maclaurin(s, z, cfg, true).derivative;
}

cplx log_milnor_gamma(int r, cplx z, const EvalConfig& cfg) {
    if (r < 1) fail(ErrorKind::InvalidArgument, "Milnor gamma depth must be positive");
    return hurwitz_zeta_ds(cplx(1.0 - r, 0.0), z, cfg);
}

cplx milnor_gamma(int r, cplx z, const EvalConfig& cfg) { return std::exp(log_milnor_gamma(r, z, cfg)); }

SeriesValue polylog_series(int r, cplx z, const EvalConfig& cfg) {
    if (r < 1) fail(ErrorKind::InvalidArgument, "polylog order must be positive");
    const double az = std::abs(z);
    if (az > 0.99) fail(ErrorKind::DomainError, "polylog series needs |z| <= 0.99");
    SeriesValue out;
    if (az == 0.0) return out;
    cplx zp = 1.0;
    for (int m = 1; m <= cfg.series_max_terms; ++m) {
        zp *= z;
        out.value += zp / std::pow(static_cast<double>(m), r);
        out.terms = m;
        out.tail_bound = std::pow(az, m + 1) / (std::pow(m + 1.0, r) * (1.0 - az));
        if (out.tail_bound <= cfg.target_abs_error) break;
    }
    return out;
}

cplx polylog(int r, cplx z, const EvalConfig& cfg) { return polylog_series(r, z, cfg).value; }

cplx log_gamma(cplx z) {
    if (!(z.real() > 0)) fail(ErrorKind::DomainError, "log_gamma needs Re(z) > 0");
    cplx shift_log = 0.0;
    cplx w = z;
    while (w.real() < 15.0) {
        shift_log += std::log(w);
        w += 1.0;
    }
    const cplx lw = std::log(w);
    cplx acc = (w - 0.5) * lw - w + 0.5 * kLogTwoPi;
    const cplx inv_w2 = 1.0 / (w * w);
    cplx pw = 1.0 / w;
    for (int k = 1; k <= 14; ++k) {
        acc += bernoulli_number(2 * k) / (2.0 * k * (2.0 * k - 1.0)) * pw;
        pw *= inv_w2;
    }
    return acc - shift_log;
}

cplx log_gamma_any(cplx z) {
    if (z.real() > 0) return log_gamma(z);
    const double nearest = std::round(z.real());
    if (std::abs(z.imag()) < 1e-12 && std::abs(z.real() - nearest) < 1e-12)
        fail(ErrorKind::GammaPole, "Gamma has a pole at a nonpositive integer");
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
}

}  // namespace polydet
