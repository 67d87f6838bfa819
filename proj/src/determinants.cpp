#include "polydet/determinants.hpp"

#include <algorithm>
#include <cmath>

#include "polydet/errors.hpp"
#include "polydet/l_functions.hpp"
#include "polydet/poly_l.hpp"
#include "polydet/special_functions.hpp"
#include "polydet/zero_data.hpp"

namespace polydet {

std::string to_string(XiRoute route) { return route == XiRoute::zero_sum ? "zero_sum" : "hankel"; }

namespace {

constexpr double kCutFloor = 1e-18;

void require_right_of_one(cplx z) {
    if (!(z.real() > 1.0)) fail(ErrorKind::DomainError, "needs Re(z) > 1");
}

cplx arch_w(const ArchPlace& v, cplx z) {
    return (static_cast<double>(v.n_v) * (z + cplx(0.0, v.phi)) + static_cast<double>(std::abs(v.m))) / 2.0;
}

// A1 + A3 and their s-derivatives; both are elementary in s.
struct OuterTerms {
    cplx value;
    cplx ds;
};

OuterTerms outer_terms(const HeckeCharacter& chi, cplx s, cplx z, const EvalConfig& cfg) {
    OuterTerms out{0.0, 0.0};
    if (chi.epsilon() == 1) {
        for (cplx u : {z, z - 1.0}) {
            const cplx l = std::log(kTwoPi / u);
            const cplx p = std::exp(s * l);
            out.value += p;
            out.ds += p * l;
        }
    }
    for (const auto& v : chi.arch()) {
        const double lnp = std::log(v.n_v * kPi);
        const cplx p = std::exp(s * lnp);
        const cplx w = arch_w(v, z);
        const HurwitzEval h = hurwitz_euler_maclaurin(s, w, cfg, true);
        out.value -= p * h.value;
        out.ds -= p * (lnp * h.value + h.derivative);
    }
    return out;
}

// Integral over the Hankel contour of L'/L(z - t) exp(-s log t) weight(log t) dt,
// split into the two edges (in log x) and the circle.
QuadResult hankel_integral(const HeckeCharacter& chi, cplx s, cplx z, const ContourSpec& c, const EvalConfig& cfg,
                           bool log_weight) {
    auto weight = [&](cplx log_t) { return log_weight ? -log_t : cplx(1.0); };
    auto edges = [&](double u) {
        const double x = std::exp(u);
        const cplx d = l_log_derivative(chi, z + x, cfg);
        const cplx lo(u, -kPi), hi(u, kPi);
        return d * (std::exp(-s * lo) * weight(lo) - std::exp(-s * hi) * weight(hi)) * x;
    };
    auto circle = [&](double psi) {
        const cplx t = std::polar(c.delta, psi);
        const cplx log_t(std::log(c.delta), psi);
        return l_log_derivative(chi, z - t, cfg) * std::exp(-s * log_t) * weight(log_t) * cplx(0.0, 1.0) * t;
    };
    const QuadResult e =
        doubling_real(edges, std::log(c.delta), std::log(c.cut_depth), c.nodes_ray, cfg.hankel_max_doublings,
                      cfg.quad_tolerance);
    const QuadResult k = doubling_real(circle, -kPi, kPi, c.nodes_circle, cfg.hankel_max_doublings, cfg.quad_tolerance);
    QuadResult out;
    out.value = e.value + k.value;
    out.error_estimate = e.error_estimate + k.error_estimate;
    out.evaluations = e.evaluations + k.evaluations;
    return out;
}

}  // namespace

XiValue xi_zero_sum(const HeckeCharacter& chi, cplx s, cplx z, const ZeroTable& zeros) {
    if (zeros.empty()) fail(ErrorKind::EmptyZeroTable, "zero sum needs a non-empty table");
    if (!(s.real() > 1.0)) fail(ErrorKind::DomainError, "zero sum needs Re(s) > 1");
    require_right_of_one(z);
    XiValue out;
    out.route = XiRoute::zero_sum;
    out.height = zeros.completeness_height;
    const std::vector<cplx> rho = zeros.zeros();
    for (std::size_t k = 0; k + 1 < rho.size(); k += 2) {
        const cplx a = std::exp(-s * std::log((z - rho[k]) / kTwoPi));
        const cplx b = std::exp(-s * std::log((z - rho[k + 1]) / kTwoPi));
        out.value += a + b;
    }
    out.error_estimate = out.height >= 10.0 && out.height - std::abs(z.imag()) > 1.0
                             ? truncation_tail_estimate(s, z, out.height, chi)
                             : std::numeric_limits<double>::infinity();
    return out;
}

ContourSpec resolve_contour(const HeckeCharacter& chi, cplx s, cplx z, ContourSpec c, const EvalConfig& cfg) {
    require_right_of_one(z);
    if (c.delta <= 0.0) c.delta = cfg.hankel_delta_fraction * (z.real() - 1.0);
    if (!(c.delta < z.real() - 1.0))
        fail(ErrorKind::ContourInvalid, "Hankel radius must be smaller than Re(z) - 1");
    if (c.nodes_circle < 1 || c.nodes_ray < 1) fail(ErrorKind::ContourInvalid, "contour needs at least one panel");
    if (c.cut_depth <= 0.0) {
        double x = 8.0;
        while (x < 4096.0) {
            const double mag = std::abs(l_log_derivative(chi, z + x, cfg)) * std::pow(x, 1.0 - s.real()) *
                               std::exp(std::abs(s.imag()) * kPi);
            if (mag < kCutFloor) break;
            x *= 1.25;
        }
        c.cut_depth = x;
    }
    if (!(c.cut_depth > c.delta)) fail(ErrorKind::ContourInvalid, "cut depth must exceed the circle radius");
    return c;
}

XiValue xi_hankel(const HeckeCharacter& chi, cplx s, cplx z, const ContourSpec& contour, const EvalConfig& cfg) {
    require_right_of_one(z);
    if (std::abs(s - 1.0) < kPoleGuard) fail(ErrorKind::PoleAtOne, "xi(s, z) has a pole at s = 1");
    XiValue out;
    out.route = XiRoute::hankel;
    out.contour = resolve_contour(chi, s, z, contour, cfg);
    const QuadResult q = hankel_integral(chi, s, z, out.contour, cfg, false);
    const cplx pref = std::exp(s * kLogTwoPi) / cplx(0.0, kTwoPi);
    out.value = outer_terms(chi, s, z, cfg).value + pref * q.value;
    out.error_estimate = std::abs(pref) * q.error_estimate;
    return out;
}

XiValue xi_hankel_ds(const HeckeCharacter& chi, cplx s, cplx z, const ContourSpec& contour, const EvalConfig& cfg) {
    require_right_of_one(z);
    if (std::abs(s - 1.0) < kPoleGuard) fail(ErrorKind::PoleAtOne, "xi(s, z) has a pole at s = 1");
    XiValue out;
    out.route = XiRoute::hankel;
    out.contour = resolve_contour(chi, s, z, contour, cfg);
    const QuadResult plain = hankel_integral(chi, s, z, out.contour, cfg, false);
    const QuadResult logged = hankel_integral(chi, s, z, out.contour, cfg, true);
    const cplx pref = std::exp(s * kLogTwoPi) / cplx(0.0, kTwoPi);
    out.value = outer_terms(chi, s, z, cfg).ds + pref * (kLogTwoPi * plain.value + logged.value);
    out.error_estimate = std::abs(pref) * (kLogTwoPi * plain.error_estimate + logged.error_estimate);
    return out;
}

XiDerivativeParts xi_ds_at_depth(const HeckeCharacter& chi, int r, cplx z, const EvalConfig& cfg) {
    if (r < 1) fail(ErrorKind::InvalidArgument, "depth r must be a positive integer");
    require_right_of_one(z);
    const cplx s(1.0 - r, 0.0);
    XiDerivativeParts out;

    if (chi.epsilon() == 1) {
        for (cplx u : {z, z - 1.0}) {
            const cplx l = std::log(kTwoPi / u);
            out.da1 += std::exp(s * l) * l;
        }
    }
    for (const auto& v : chi.arch()) {
        const double lnp = std::log(v.n_v * kPi);
        const cplx w = arch_w(v, z);
        out.da3 -= std::exp(s * lnp) * (lnp * hurwitz_zeta(s, w, cfg) + hurwitz_zeta_ds(s, w, cfg));
    }

    // Half-line integral; the integrand decays like Np^{-x} for the smallest
    // prime with chi(p) != 0.
    double cut = 8.0;
    while (cut < 4096.0) {
        if (std::abs(l_log_derivative(chi, z + cut, cfg)) * std::pow(cut, r - 1) < kCutFloor) break;
        cut *= 1.25;
    }
    const QuadResult q = doubling_real(
        [&](double x) { return l_log_derivative(chi, z + x, cfg) * std::pow(x, r - 1); }, 0.0, cut,
        std::max(4, static_cast<int>(std::ceil(cut / 4.0))), cfg.hankel_max_doublings, cfg.quad_tolerance);
    out.half_line_integral = q.value;
    const double sign_r = (r % 2 == 0) ? 1.0 : -1.0;
    const double scale = std::pow(kTwoPi, 1.0 - r);
    out.da2 = -scale * sign_r * q.value;
    out.quad_error = scale * q.error_estimate;
    return out;
}

cplx log_arch_factor(const HeckeCharacter& chi, int r, cplx z, const EvalConfig& cfg) {
    cplx acc = 0.0;
    for (const auto& v : chi.arch()) {
        const double lnp = std::log(v.n_v * kPi);
        const double weight = std::exp((1.0 - r) * lnp);
        const cplx w = arch_w(v, z);
        acc += weight * (-lnp * bernoulli_poly(r, w) / static_cast<double>(r) + log_milnor_gamma(r, w, cfg));
    }
    return acc;
}

DeterminantValue determinant_closed(const HeckeCharacter& chi, int r, cplx z, const EvalConfig& cfg) {
    if (r < 1) fail(ErrorKind::InvalidArgument, "depth r must be a positive integer");
    require_right_of_one(z);
    DeterminantValue out;
    cplx log_lr;
    double tail = 0.0;
    if (r == 1) {
        log_lr = std::log(l_value(chi, z, cfg));
    } else {
        const PolyLResult p = poly_l_euler(chi, r, z, cfg);
        log_lr = p.log_value;
        tail = p.log_tail_bound;
    }
    const double exponent = ((r - 1) % 2 == 0 ? 1.0 : -1.0) * std::tgamma(static_cast<double>(r)) *
                            std::pow(kTwoPi, 1.0 - r);
    cplx acc = exponent * log_lr;
    if (chi.epsilon() == 1) {
        for (cplx u : {z / kTwoPi, (z - 1.0) / kTwoPi}) acc += std::pow(u, r - 1) * std::log(u);
    }
    acc += log_arch_factor(chi, r, z, cfg);
    out.log_value = acc;
    out.value = std::exp(acc);
    out.error_estimate = std::abs(out.value) * std::expm1(std::abs(exponent) * tail);
    return out;
}

DeterminantValue determinant_numeric(const HeckeCharacter& chi, int r, cplx z, const EvalConfig& cfg) {
    const XiDerivativeParts parts = xi_ds_at_depth(chi, r, z, cfg);
    DeterminantValue out;
    out.log_value = -parts.total();
    out.value = std::exp(out.log_value);
    out.error_estimate = std::abs(out.value) * std::expm1(parts.quad_error);
    return out;
}

cplx regularized_product(const HeckeCharacter& chi, cplx z, const EvalConfig& cfg) {
    require_right_of_one(z);
    const auto& field = chi.field();
    double phi_c = 0.0, m_c = 0.0, m_all = 0.0;
    for (const auto& v : chi.arch()) {
        m_all += std::abs(v.m);
        if (v.type == PlaceType::complex) {
            phi_c += v.phi;
            m_c += std::abs(v.m);
        }
    }
    const double eps = chi.epsilon();
    const double q = static_cast<double>(chi.conductor_norm()) * std::labs(field.discriminant());
    const cplx log_two_power = cplx(eps + 0.5 * field.r1() + 0.5 * m_c, phi_c) * std::log(2.0);
    const double log_pi_power = (2.0 * eps + 0.5 * m_all) * std::log(kPi);
    return std::exp(-0.5 * z * std::log(q) - log_two_power - log_pi_power) * completed_lambda(chi, z, cfg);
}

}  // namespace polydet
