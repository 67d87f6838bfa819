#include "polydet/l_functions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "polydet/errors.hpp"

namespace polydet {

namespace {

constexpr double kNearZeroThreshold = 1e-13;

// L(s, chi) for one primitive Dirichlet character and its s-derivative. The
// principal factor is zeta(s), or (s-1) zeta(s) when `regularize` is set.
ValueAndDerivative dirichlet_factor(const DirichletCharacter& chi, cplx s, const EvalConfig& cfg, bool regularize) {
    if (chi.is_principal()) {
        if (regularize) {
            const HurwitzEval h = hurwitz_euler_maclaurin(s, 1.0, cfg, true, true);
            return {1.0 + (s - 1.0) * h.value, h.value + (s - 1.0) * h.derivative};
        }
        const HurwitzEval h = hurwitz_euler_maclaurin(s, 1.0, cfg, true, false);
        return {h.value, h.derivative};
    }
    // Non-principal: sum chi(a) = 0, so the 1/(s-1) parts cancel exactly.
    const long q = chi.modulus();
    const double log_q = std::log(static_cast<double>(q));
    cplx sum = 0.0, dsum = 0.0;
    for (long a = 1; a < q; ++a) {
        const cplx c = chi(a);
        if (c == 0.0) continue;
        const HurwitzEval h =
            hurwitz_euler_maclaurin(s, static_cast<double>(a) / static_cast<double>(q), cfg, true, true);
        sum += c * h.value;
        dsum += c * h.derivative;
    }
    const cplx q_ms = std::exp(-s * log_q);
    return {q_ms * sum, q_ms * (dsum - log_q * sum)};
}

ValueAndDerivative assemble(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg, bool regularize) {
    ValueAndDerivative out{1.0, 0.0};
    for (const auto& f : chi.dirichlet_factors()) {
        const ValueAndDerivative v = dirichlet_factor(f, s, cfg, regularize);
        out.derivative = out.derivative * v.value + out.value * v.derivative;
        out.value *= v.value;
    }
    return out;
}

cplx log_derivative_sum(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg, bool regularize) {
    cplx acc = 0.0;
    for (const auto& f : chi.dirichlet_factors()) {
        const ValueAndDerivative v = dirichlet_factor(f, s, cfg, regularize);
        if (std::abs(v.value) < kNearZeroThreshold)
            fail(ErrorKind::NearZeroOfL, "L'/L evaluated too close to a zero of L");
        acc += v.derivative / v.value;
    }
    return acc;
}

// -log(1 - w) with full relative accuracy for small w.
cplx minus_log1m(cplx w) {
    if (std::abs(w) < 0.1) {
        cplx acc = 0.0, wp = w;
        for (int l = 1; l < 40; ++l) {
            const cplx term = wp / static_cast<double>(l);
            acc += term;
            if (std::abs(term) < 1e-18 * std::abs(acc)) break;
            wp *= w;
        }
        return acc;
    }
    return -std::log(1.0 - w);
}

void require_half_plane(cplx s) {
    if (!(s.real() > 1.0)) fail(ErrorKind::DomainError, "Dirichlet series route needs Re(s) > 1");
}

cplx completed_lambda_direct(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg) {
    const auto& field = chi.field();
    const double scale = static_cast<double>(chi.conductor_norm()) * std::labs(field.discriminant()) /
                         (std::pow(4.0, field.r2()) * std::pow(kPi, field.degree()));
    cplx log_gamma_sum = 0.0;
    for (const auto& v : chi.arch()) {
        const cplx w = (static_cast<double>(v.n_v) * (s + cplx(0.0, v.phi)) + static_cast<double>(std::abs(v.m))) / 2.0;
        log_gamma_sum += log_gamma_any(w);
    }
    cplx core;
    if (chi.epsilon() == 1) core = 0.5 * s * l_value_regularized(chi, s, cfg).value;
    else core = l_value(chi, s, cfg);
    return core * std::exp(0.5 * s * std::log(scale) + log_gamma_sum);
}

double distance_to_gamma_pole(const HeckeCharacter& chi, cplx s) {
    double d = 1e300;
    for (const auto& v : chi.arch()) {
        const cplx w = (static_cast<double>(v.n_v) * (s + cplx(0.0, v.phi)) + static_cast<double>(std::abs(v.m))) / 2.0;
        const double nearest = std::min(0.0, std::round(w.real()));
        d = std::min(d, std::abs(w - nearest));
    }
    return d;
}

}  // namespace

std::shared_ptr<const std::vector<EulerTerm>> euler_terms(const HeckeCharacter& chi, long bound) {
    static std::mutex mu;
    static std::map<std::pair<std::string, long>, std::shared_ptr<const std::vector<EulerTerm>>> cache;
    const auto key = std::make_pair(chi.label(), bound);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto terms = std::make_shared<std::vector<EulerTerm>>();
    for (const auto& p : enumerate_prime_ideals(chi.field(), bound)) {
        const cplx c = char_value(chi, p);
        if (c == 0.0) continue;
        terms->push_back({std::log(static_cast<double>(p.norm)), c});
    }
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 16) cache.clear();
    cache[key] = terms;
    return terms;
}

cplx l_value(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg) { return assemble(chi, s, cfg, false).value; }

ValueAndDerivative l_value_regularized(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg) {
    return assemble(chi, s, cfg, true);
}

cplx l_log_derivative(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg) {
    return log_derivative_sum(chi, s, cfg, false);
}

cplx l_log_derivative_regularized(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg) {
    return log_derivative_sum(chi, s, cfg, true);
}

cplx l_log_derivative_series(const HeckeCharacter& chi, cplx s, long prime_bound) {
    require_half_plane(s);
    cplx acc = 0.0;
    for (const auto& t : *euler_terms(chi, prime_bound)) {
        const cplx w = t.chi * std::exp(-s * t.log_norm);
        acc -= t.log_norm * w / (1.0 - w);
    }
    return acc;
}

cplx log_l_series(const HeckeCharacter& chi, cplx s, long prime_bound) {
    require_half_plane(s);
    cplx acc = 0.0;
    for (const auto& t : *euler_terms(chi, prime_bound)) acc += minus_log1m(t.chi * std::exp(-s * t.log_norm));
    return acc;
}

// ------------------------------------------------------------------ Omega

OmegaRegion::OmegaRegion(const HeckeCharacter& chi, const ZeroTable* zeros, double tol) : tol_(tol) {
    if (zeros != nullptr) {
        has_table_ = true;
        height_ = zeros->completeness_height;
        for (cplx rho : zeros->zeros()) origins_.push_back(rho);
    }
    // Trivial zeros -(|m_v| + 2l)/N_v - i phi_v, l >= 0: one half-line per place.
    for (const auto& v : chi.arch())
        origins_.push_back(cplx(-static_cast<double>(std::abs(v.m)) / v.n_v, -v.phi));
    if (chi.is_principal()) origins_.push_back(1.0);
}

Membership OmegaRegion::classify(cplx p) const {
    for (cplx o : origins_)
        if (std::abs(p.imag() - o.imag()) <= tol_ && p.real() <= o.real() + tol_) return Membership::outside;
    if (p.real() >= 1.0) return Membership::inside;
    if (std::abs(p.real() - 0.5) < 0.1) return Membership::unverifiable;
    if (!has_table_ || std::abs(p.imag()) >= height_) return Membership::unverifiable;
    return Membership::inside;
}

bool OmegaRegion::segment_crosses_cut(cplx a, cplx b) const {
    for (cplx o : origins_) {
        const double y = o.imag();
        const double ya = a.imag() - y, yb = b.imag() - y;
        if ((ya > tol_ && yb > tol_) || (ya < -tol_ && yb < -tol_)) continue;
        double x;
        if (std::abs(b.imag() - a.imag()) <= tol_) {
            x = std::min(a.real(), b.real());
        } else {
            const double t = std::clamp(-ya / (yb - ya), 0.0, 1.0);
            x = a.real() + t * (b.real() - a.real());
        }
        if (x <= o.real() + tol_) return true;
    }
    return false;
}

Membership OmegaRegion::classify_path(const PathSpec& path) const {
    Membership worst = Membership::inside;
    for (std::size_t i = 0; i < path.waypoints.size(); ++i) {
        const cplx a = path.waypoints[i];
        if (classify(a) == Membership::outside) return Membership::outside;
        if (i == 0) continue;
        const cplx prev = path.waypoints[i - 1];
        if (segment_crosses_cut(prev, a)) return Membership::outside;
        for (int k = 0; k <= 64; ++k) {
            if (classify(prev + (a - prev) * (k / 64.0)) == Membership::unverifiable) worst = Membership::unverifiable;
        }
    }
    if (path.waypoints.size() == 1 && classify(path.waypoints[0]) == Membership::unverifiable)
        worst = Membership::unverifiable;
    return worst;
}

// ----------------------------------------------------------- branches

BranchResult log_l_branch(const HeckeCharacter& chi, const PathSpec& path, const EvalConfig& cfg,
                          const OmegaRegion* omega) {
    path.validate();
    const cplx anchor = path.start();
    if (anchor.imag() != 0.0 || !(anchor.real() > 1.0))
        fail(ErrorKind::InvalidArgument, "log L branch must start at a real anchor a > 1");
    if (omega != nullptr)
        for (cplx w : path.waypoints)
            if (omega->classify(w) == Membership::outside)
                fail(ErrorKind::PathLeavesOmega, "path waypoint lies on an excluded half-line");

    BranchResult out;
    out.value = std::log(l_value(chi, anchor, cfg));
    if (path.waypoints.size() < 2) return out;
    const QuadResult q = integrate_path([&](cplx x) { return l_log_derivative(chi, x, cfg); }, path, cfg);
    if (q.max_panel_imag > kPi)
        fail(ErrorKind::BranchStepTooLarge, "log L increment exceeds pi on a single panel");
    out.value += q.value;
    out.quad_error = q.error_estimate;
    return out;
}

cplx completed_lambda(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg) {
    // Lambda is entire; at removable gamma poles use the mean over a small circle.
    if (distance_to_gamma_pole(chi, s) > 1e-3) return completed_lambda_direct(chi, s, cfg);
    constexpr int kPoints = 32;
    constexpr double kRadius = 0.05;
    cplx acc = 0.0;
    for (int k = 0; k < kPoints; ++k)
        acc += completed_lambda_direct(chi, s + std::polar(kRadius, kTwoPi * (k + 0.5) / kPoints), cfg);
    return acc / static_cast<double>(kPoints);
}

cplx root_number(const HeckeCharacter& chi, cplx s_sample, const EvalConfig& cfg) {
    const HeckeCharacter dual = chi.conjugate();
    auto ratio = [&](cplx s) {
        const cplx denom = completed_lambda(chi, s, cfg);
        const cplx numer = completed_lambda(dual, 1.0 - s, cfg);
        if (!(std::abs(denom) > 1e-280) || !(std::abs(numer) > 1e-280))
            fail(ErrorKind::DegenerateSample, "completed L-function vanishes at the sample point");
        return numer / denom;
    };
    const cplx w1 = ratio(s_sample);
    const cplx w2 = ratio(s_sample + cplx(0.31, 0.73));
    if (std::abs(std::abs(w1) - 1.0) > 1e-8 || std::abs(w1 - w2) > 1e-8)
        fail(ErrorKind::NumericalFailure, "root number is not a unimodular constant");
    return w1;
}

ArgumentCount argument_principle_count(const HeckeCharacter& chi, const PathSpec& loop, const EvalConfig& cfg) {
    if (!loop.is_closed()) fail(ErrorKind::NonClosedLoop, "argument principle needs a closed loop");
    const QuadResult q = integrate_path([&](cplx x) { return l_log_derivative(chi, x, cfg); }, loop, cfg);
    ArgumentCount out;
    out.raw = q.value / cplx(0.0, kTwoPi);
    out.count = std::lround(out.raw.real());
    out.residual = std::abs(out.raw - static_cast<double>(out.count));
    if (out.residual >= 0.01)
        fail(ErrorKind::ResidualTooLarge, "loop integral is not close to an integer: residual " +
                                              std::to_string(out.residual));
    return out;
}

}  // namespace polydet
