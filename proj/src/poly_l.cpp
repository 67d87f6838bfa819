#include "polydet/poly_l.hpp"

#include <algorithm>
#include <cmath>

#include "polydet/errors.hpp"

namespace polydet {

namespace {

// Li_r(w) for the small arguments of an Euler factor (|w| <= 2^{-Re s}).
cplx small_polylog(int r, cplx w) {
    cplx acc = 0.0, wp = w;
    for (int m = 1; m < 400; ++m) {
        const cplx term = wp / std::pow(static_cast<double>(m), r);
        acc += term;
        if (std::abs(term) <= 1e-18 * std::abs(acc)) break;
        wp *= w;
    }
    return acc;
}

PolyLResult euler_sum(const HeckeCharacter& chi, int r, cplx s, const EvalConfig& cfg, bool weighted) {
    if (r < 1) fail(ErrorKind::InvalidArgument, "depth r must be a positive integer");
    if (!(s.real() > 1.0)) fail(ErrorKind::DomainError, "Euler product needs Re(s) > 1");
    cfg.validate();
    const auto terms = euler_terms(chi, cfg.prime_bound);
    cplx acc = 0.0;
    for (const auto& t : *terms) {
        const cplx w = t.chi * std::exp(-s * t.log_norm);
        const cplx li = r == 1 ? -std::log(1.0 - w) : small_polylog(r, w);
        acc += weighted && r > 1 ? std::exp((1.0 - r) * std::log(t.log_norm)) * li : li;
    }
    PolyLResult out;
    out.log_value = acc;
    out.value = std::exp(acc);
    out.prime_bound_used = cfg.prime_bound;
    out.log_tail_bound = poly_l_tail_bound(chi, weighted ? r : 1, s.real(), cfg.prime_bound);
    out.tail_bound = std::abs(out.value) * std::expm1(out.log_tail_bound);
    return out;
}

double log_zeta_real(double sigma) { return std::log(hurwitz_zeta(cplx(sigma, 0.0), 1.0).real()); }

// log L(s) on the branch given by the prime-power series.
cplx log_l_at(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg) {
    if (s.real() > 1.0 && chi.field().degree() * log_zeta_real(s.real()) < kPi - 0.1)
        return std::log(l_value(chi, s, cfg));
    if (s.real() > 1.0) return log_l_series(chi, s, cfg.prime_bound);
    fail(ErrorKind::DomainError, "series branch of log L needs Re(s) > 1");
}

cplx log_poly_l(const HeckeCharacter& chi, int r, cplx s, const EvalConfig& cfg) {
    if (r == 1) return log_l_at(chi, s, cfg);
    return poly_l_euler(chi, r, s, cfg).log_value;
}

// |d^m/ds^m log L^{(r)}(s)| for m >= 0, using the ladder once m reaches r - 1.
double ladder_derivative_size(const HeckeCharacter& chi, int r, int m, cplx s, const EvalConfig& cfg) {
    if (m < r) return std::abs(log_poly_l(chi, r - m, s, cfg));
    const int q = m - r;  // order of the derivative of L'/L
    const double eta = 1e-3;
    auto d = [&](cplx x) { return l_log_derivative(chi, x, cfg); };
    if (q == 0) return std::abs(d(s));
    if (q == 1) return std::abs((d(s + eta) - d(s - eta)) / (2.0 * eta));
    return std::abs((d(s + eta) - 2.0 * d(s) + d(s - eta)) / (eta * eta));
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace

double poly_l_tail_bound(const HeckeCharacter& chi, int r, double sigma, long prime_bound) {
    if (!(sigma > 1.0)) fail(ErrorKind::DomainError, "tail bound needs Re(s) > 1");
    const double x = static_cast<double>(prime_bound);
    const double log_x = std::log(x);
    const double density = 1.26 * (sigma + (r - 1) / log_x) / (sigma - 1.0);
    const double geometric = 1.0 / (1.0 - std::pow(x, -sigma));
    return chi.field().degree() * density * std::pow(x, 1.0 - sigma) * std::pow(log_x, -r) * geometric;
}

PolyLResult poly_l_euler(const HeckeCharacter& chi, int r, cplx s, const EvalConfig& cfg) {
    return euler_sum(chi, r, s, cfg, true);
}

PolyLResult poly_l_tilde(const HeckeCharacter& chi, int r, cplx s, const EvalConfig& cfg) {
    return euler_sum(chi, r, s, cfg, false);
}

LadderResidual poly_l_ladder_residual(const HeckeCharacter& chi, int r, cplx s, double h, const EvalConfig& cfg) {
    if (r < 2) fail(ErrorKind::InvalidArgument, "ladder needs r >= 2");
    if (!(h > 0.0)) fail(ErrorKind::InvalidArgument, "step h must be positive");
    const int k = r - 1;
    if (!(s.real() - 0.5 * k * h > 1.0))
        fail(ErrorKind::StencilLeavesDomain, "finite-difference stencil reaches Re(s) <= 1");

    cplx fd = 0.0;
    double f_max = 0.0;
    for (int j = 0; j <= k; ++j) {
        const cplx f = poly_l_euler(chi, r, s + (0.5 * k - j) * h, cfg).log_value;
        f_max = std::max(f_max, std::abs(f));
        fd += ((j % 2 == 0) ? 1.0 : -1.0) * binomial(k, j) * f;
    }
    fd /= std::pow(h, k);
    const cplx expected = ((k % 2 == 0) ? 1.0 : -1.0) * log_l_at(chi, s, cfg);

    LadderResidual out;
    out.residual = std::abs(fd - expected);
    const double truncation = k * h * h / 24.0 * ladder_derivative_size(chi, r, k + 2, s, cfg);
    const double rounding = std::pow(2.0, k) * 4e-16 * f_max / std::pow(h, k);
    const double tail = poly_l_tail_bound(chi, 1, s.real() - 0.5 * k * h, cfg.prime_bound);
    out.estimate = 2.0 * (truncation + rounding + tail);
    return out;
}

LadderResidual poly_l_step_residual(const HeckeCharacter& chi, int r, cplx s, double h, const EvalConfig& cfg) {
    if (r < 2) fail(ErrorKind::InvalidArgument, "step identity needs r >= 2");
    if (!(h > 0.0)) fail(ErrorKind::InvalidArgument, "step h must be positive");
    if (!(s.real() - 0.5 * h > 1.0))
        fail(ErrorKind::StencilLeavesDomain, "finite-difference stencil reaches Re(s) <= 1");
    const PolyLResult plus = poly_l_euler(chi, r, s + 0.5 * h, cfg);
    const PolyLResult minus = poly_l_euler(chi, r, s - 0.5 * h, cfg);
    const cplx fd = (plus.log_value - minus.log_value) / h;
    const cplx expected = -log_poly_l(chi, r - 1, s, cfg);

    LadderResidual out;
    out.residual = std::abs(fd - expected);
    const double truncation = h * h / 24.0 * ladder_derivative_size(chi, r, 3, s, cfg);
    const double rounding = 8e-16 * std::max(std::abs(plus.log_value), std::abs(minus.log_value)) / h;
    const double tail = poly_l_tail_bound(chi, r - 1, s.real() - 0.5 * h, cfg.prime_bound);
    out.estimate = 2.0 * (truncation + rounding + tail);
    return out;
}

ContinuedValue poly_l_continued(const HeckeCharacter& chi, int r, const PathSpec& path, const EvalConfig& cfg,
                                const OmegaRegion* omega) {
    if (r < 1) fail(ErrorKind::InvalidArgument, "depth r must be a positive integer");
    path.validate();
    const cplx a = path.start();
    const cplx s = path.end();
    if (a.imag() != 0.0 || !(a.real() > 1.0))
        fail(ErrorKind::InvalidArgument, "continuation anchor must be real and > 1");

    const OmegaRegion fallback(chi, nullptr);
    const OmegaRegion& region = omega != nullptr ? *omega : fallback;
    ContinuedValue out;
    out.membership = region.classify_path(path);
    if (out.membership == Membership::outside)
        fail(ErrorKind::PathLeavesOmega, "continuation path meets an excluded half-line");

    cplx acc = 0.0;
    double fact = 1.0;
    cplx power = 1.0;
    for (int k = 0; k < r; ++k) {
        if (k > 0) {
            fact *= k;
            power *= (s - a);
        }
        acc += ((k % 2 == 0) ? 1.0 : -1.0) * power / fact * log_poly_l(chi, r - k, a, cfg);
    }
    if (path.waypoints.size() >= 2) {
        const double sign = ((r - 1) % 2 == 0) ? 1.0 : -1.0;
        const double fact_r = std::tgamma(static_cast<double>(r));
        const QuadResult q = integrate_path(
            [&](cplx xi) { return std::pow(s - xi, r - 1) * l_log_derivative(chi, xi, cfg); }, path, cfg);
        acc += sign / fact_r * q.value;
        out.quad_error = q.error_estimate / fact_r;
    }
    out.log_value = acc;
    out.value = std::exp(acc);
    return out;
}

// ------------------------------------------------------------ monodromy

namespace {

struct BranchTracker {
    const std::function<cplx(cplx)>& g;
    int max_depth;

    cplx next_log(cplx x, cplx prev_log) const {
        const cplx v = g(x);
        if (v == 0.0) fail(ErrorKind::NearZeroOfL, "log branch hits a zero");
        const double prev_arg = prev_log.imag();
        double arg = std::arg(v);
        arg += kTwoPi * std::round((prev_arg - arg) / kTwoPi);
        if (std::abs(arg - prev_arg) > 0.75 * kPi) throw std::out_of_range("branch jump");
        return cplx(std::log(std::abs(v)), arg);
    }

    // Integral of log g over [a, b] on the branch continued from log_a; returns
    // the integral and the branch value at b.
    std::pair<cplx, cplx> panel(cplx a, cplx b, cplx log_a) const {
        const auto& gl = gauss_legendre_32();
        const cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
        cplx acc = 0.0, cur = log_a;
        for (int i = 0; i < 32; ++i) {
            cur = next_log(mid + half * gl.nodes[i], cur);
            acc += gl.weights[i] * cur;
        }
        cur = next_log(b, cur);
        return {acc * half, cur};
    }

    void adapt(cplx a, cplx b, cplx log_a, double tol, int depth, cplx& sum, cplx& log_b, double& err) const {
        const cplx m = 0.5 * (a + b);
        std::pair<cplx, cplx> whole, left, right;
        bool ok = true;
        try {
            whole = panel(a, b, log_a);
            left = panel(a, m, log_a);
            right = panel(m, b, left.second);
        } catch (const std::out_of_range&) {
            ok = false;
        }
        if (ok) {
            const double diff = std::abs(left.first + right.first - whole.first);
            if (diff <= tol || diff <= 1e-13 * std::abs(whole.first) || diff <= 1e-15 * std::abs(b - a) ||
                depth <= 0) {
                sum += left.first + right.first;
                log_b = right.second;
                err += diff;
                return;
            }
        } else if (depth <= 0) {
            fail(ErrorKind::BranchStepTooLarge, "argument of g jumps by more than 3 pi / 4 between nodes");
        }
        cplx log_m;
        adapt(a, m, log_a, 0.5 * tol, depth - 1, sum, log_m, err);
        adapt(m, b, log_m, 0.5 * tol, depth - 1, sum, log_b, err);
    }
};

}  // namespace

MonodromyResult monodromy_defect_of(const std::function<cplx(cplx)>& g, const PathSpec& loop, const EvalConfig& cfg) {
    loop.validate();
    if (!loop.is_closed()) fail(ErrorKind::NonClosedLoop, "monodromy defect needs a closed loop");
    const BranchTracker tracker{g, cfg.quad_max_depth};
    const cplx g0 = g(loop.start());
    if (g0 == 0.0) fail(ErrorKind::NearZeroOfL, "loop starts at a zero");
    cplx log_cur = std::log(g0);
    cplx sum = 0.0;
    double err = 0.0;
    const double total = loop.length();
    for (std::size_t i = 1; i < loop.waypoints.size(); ++i) {
        const cplx a = loop.waypoints[i - 1], b = loop.waypoints[i];
        const double len = std::abs(b - a);
        const int steps = std::max(loop.steps_per_segment, static_cast<int>(std::ceil(len * cfg.path_steps_per_unit)));
        const double tol = cfg.quad_tolerance * (len / total) / steps;
        for (int k = 0; k < steps; ++k) {
            const cplx p = a + (b - a) * (static_cast<double>(k) / steps);
            const cplx q = a + (b - a) * (static_cast<double>(k + 1) / steps);
            cplx log_q;
            tracker.adapt(p, q, log_cur, tol, cfg.quad_max_depth, sum, log_q, err);
            log_cur = log_q;
        }
    }
    return {-sum, err};
}

MonodromyResult erh_monodromy_defect(const HeckeCharacter& chi, const PathSpec& loop, const EvalConfig& cfg) {
    loop.validate();
    const int eps = chi.epsilon();
    if (eps == 1) {
        for (std::size_t i = 1; i < loop.waypoints.size(); ++i) {
            const cplx a = loop.waypoints[i - 1], b = loop.waypoints[i];
            const double t = std::clamp(std::real((1.0 - a) * std::conj(b - a)) / std::norm(b - a), 0.0, 1.0);
            if (std::abs(a + t * (b - a) - 1.0) < 0.05)
                fail(ErrorKind::InvalidArgument, "loop passes within 0.05 of s = 1");
        }
    }
    return monodromy_defect_of(
        [&](cplx xi) {
            if (eps == 1) return l_value_regularized(chi, xi, cfg).value;
            return l_value(chi, xi, cfg);
        },
        loop, cfg);
}

}  // namespace polydet
