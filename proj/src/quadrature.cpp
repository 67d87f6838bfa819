#include "polydet/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "polydet/errors.hpp"

namespace polydet {

bool PathSpec::is_closed(double tol) const {
    return waypoints.size() >= 2 && std::abs(waypoints.front() - waypoints.back()) <= tol;
}

double PathSpec::length() const {
    double len = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i) len += std::abs(waypoints[i] - waypoints[i - 1]);
    return len;
}

void PathSpec::validate() const {
    if (waypoints.empty()) fail(ErrorKind::InvalidArgument, "path has no waypoints");
    if (steps_per_segment < 1) fail(ErrorKind::InvalidArgument, "steps_per_segment must be >= 1");
    for (std::size_t i = 1; i < waypoints.size(); ++i)
        if (waypoints[i] == waypoints[i - 1])
            fail(ErrorKind::InvalidArgument, "consecutive path waypoints must be distinct");
}

PathSpec PathSpec::segment(cplx a, cplx b, int steps) { return PathSpec{{a, b}, steps}; }

PathSpec PathSpec::rectangle(double x0, double x1, double y0, double y1, int steps) {
    if (!(x0 < x1 && y0 < y1)) fail(ErrorKind::InvalidArgument, "degenerate rectangle");
    return PathSpec{{cplx(x0, y0), cplx(x1, y0), cplx(x1, y1), cplx(x0, y1), cplx(x0, y0)}, steps};
}

PathSpec PathSpec::circle(cplx center, double radius, int sides) {
    if (!(radius > 0) || sides < 3) fail(ErrorKind::InvalidArgument, "degenerate circle");
    PathSpec p;
    p.steps_per_segment = 1;
    for (int k = 0; k < sides; ++k) p.waypoints.push_back(center + std::polar(radius, kTwoPi * k / sides));
    p.waypoints.push_back(p.waypoints.front());
    return p;
}

const GaussLegendre32& gauss_legendre_32() {
    static const GaussLegendre32 rule = [] {
        using G = boost::math::quadrature::gauss<double, 32>;
        const auto& x = G::abscissa();
        const auto& w = G::weights();
        GaussLegendre32 r{};
        for (std::size_t i = 0; i < 16; ++i) {
            r.nodes[15 - i] = -x[i];
            r.weights[15 - i] = w[i];
            r.nodes[16 + i] = x[i];
            r.weights[16 + i] = w[i];
        }
        return r;
    }();
    return rule;
}

cplx gauss_panel(const ComplexFn& f, cplx a, cplx b) {
    const auto& gl = gauss_legendre_32();
    const cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx acc = 0.0;
    for (int i = 0; i < 32; ++i) acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
    return acc * half;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b) {
    const auto& gl = gauss_legendre_32();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 32; ++i) acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
    return acc * half;
}

cplx gauss_panel_real(const RealToComplexFn& f, double a, double b) {
    const auto& gl = gauss_legendre_32();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx acc = 0.0;
    for (int i = 0; i < 32; ++i) acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
    return acc * half;
}

namespace {

void adapt(const ComplexFn& f, cplx a, cplx b, cplx whole, double tol, int depth, QuadResult& out) {
    const cplx m = 0.5 * (a + b);
    const cplx left = gauss_panel(f, a, m);
    const cplx right = gauss_panel(f, m, b);
    out.evaluations += 64;
    const double diff = std::abs(left + right - whole);
    // Below the rounding floor further bisection only adds noise.
    const bool converged = diff <= tol || diff <= 1e-13 * std::abs(left + right) || diff <= 1e-15 * std::abs(b - a);
    if (converged || depth <= 0) {
        out.value += left + right;
        out.error_estimate += diff;
        out.max_panel_imag = std::max({out.max_panel_imag, std::abs(left.imag()), std::abs(right.imag())});
        return;
    }
    adapt(f, a, m, left, 0.5 * tol, depth - 1, out);
    adapt(f, m, b, right, 0.5 * tol, depth - 1, out);
}

}  // namespace

QuadResult integrate_segment(const ComplexFn& f, cplx a, cplx b, double tol, int max_depth) {
    QuadResult out;
    if (a == b) return out;
    const cplx whole = gauss_panel(f, a, b);
    out.evaluations = 32;
    adapt(f, a, b, whole, tol, max_depth, out);
    return out;
}

QuadResult integrate_path(const ComplexFn& f, const PathSpec& path, const EvalConfig& cfg) {
    path.validate();
    QuadResult out;
    const double total = std::max(path.length(), 1e-300);
    for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
        const cplx a = path.waypoints[i - 1], b = path.waypoints[i];
        const double len = std::abs(b - a);
        const int steps =
            std::max(path.steps_per_segment, static_cast<int>(std::ceil(len * cfg.path_steps_per_unit)));
        const double step_tol = cfg.quad_tolerance * (len / total) / steps;
        for (int k = 0; k < steps; ++k) {
            const cplx p = a + (b - a) * (static_cast<double>(k) / steps);
            const cplx q = a + (b - a) * (static_cast<double>(k + 1) / steps);
            const QuadResult part = integrate_segment(f, p, q, step_tol, cfg.quad_max_depth);
            out.value += part.value;
            out.error_estimate += part.error_estimate;
            out.evaluations += part.evaluations;
            out.max_panel_imag = std::max(out.max_panel_imag, part.max_panel_imag);
        }
    }
    return out;
}

cplx composite_real(const RealToComplexFn& f, double a, double b, int panels) {
    cplx acc = 0.0;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) acc += gauss_panel_real(f, a + k * h, a + (k + 1) * h);
    return acc;
}

QuadResult doubling_real(const RealToComplexFn& f, double a, double b, int initial_panels, int max_doublings,
                         double tol) {
    QuadResult out;
    int panels = std::max(1, initial_panels);
    cplx prev = composite_real(f, a, b, panels);
    out.evaluations = 32L * panels;
    for (int d = 0; d < max_doublings; ++d) {
        panels *= 2;
        const cplx next = composite_real(f, a, b, panels);
        out.evaluations += 32L * panels;
        out.error_estimate = std::abs(next - prev);
        prev = next;
        if (out.error_estimate <= tol) break;
    }
    out.value = prev;
    return out;
}

}  // namespace polydet
