#pragma once

#include <array>
#include <functional>
#include <vector>

#include "polydet/config.hpp"
#include "polydet/special_functions.hpp"

namespace polydet {

/// Polygonal path through complex waypoints.
struct PathSpec {
    std::vector<cplx> waypoints;
    /// Minimum number of quadrature steps on every segment.
    int steps_per_segment = 4;

    bool is_closed(double tol = 1e-12) const;
    double length() const;
    cplx start() const { return waypoints.front(); }
    cplx end() const { return waypoints.back(); }

    /// Consecutive waypoints must be distinct.
    void validate() const;

    static PathSpec segment(cplx a, cplx b, int steps = 4);
    /// Counter-clockwise rectangle [x0,x1] x [y0,y1] starting at x0 + i y0.
    static PathSpec rectangle(double x0, double x1, double y0, double y1, int steps = 4);
    /// Counter-clockwise regular polygon approximating a circle, starting at center + radius.
    static PathSpec circle(cplx center, double radius, int sides = 64);
};

/// 32-point Gauss–Legendre rule on [-1, 1], nodes in increasing order.
struct GaussLegendre32 {
    std::array<double, 32> nodes;
    std::array<double, 32> weights;
};
const GaussLegendre32& gauss_legendre_32();

using ComplexFn = std::function<cplx(cplx)>;
using RealToComplexFn = std::function<cplx(double)>;

struct QuadResult {
    cplx value;
    double error_estimate = 0.0;
    long evaluations = 0;
    /// Largest |Im| of any accepted panel's contribution.
    double max_panel_imag = 0.0;
};

/// One 32-point panel of f along the straight segment a -> b (dξ included).
cplx gauss_panel(const ComplexFn& f, cplx a, cplx b);
double gauss_panel(const std::function<double(double)>& f, double a, double b);
cplx gauss_panel_real(const RealToComplexFn& f, double a, double b);

/// Adaptive bisection of Gauss–Legendre panels along a -> b. A panel is accepted
/// when it agrees with its two halves to within its share of `tol`.
QuadResult integrate_segment(const ComplexFn& f, cplx a, cplx b, double tol, int max_depth);

/// Integrates f(ξ) dξ along the polygonal path; each segment is first split into
/// max(steps_per_segment, ceil(length * steps_per_unit)) steps.
QuadResult integrate_path(const ComplexFn& f, const PathSpec& path, const EvalConfig& cfg);

/// Composite Gauss–Legendre on [a, b] with `panels` equal panels of a real variable.
cplx composite_real(const RealToComplexFn& f, double a, double b, int panels);

/// Panel doubling on [a, b] until two successive refinements agree to `tol`.
QuadResult doubling_real(const RealToComplexFn& f, double a, double b, int initial_panels, int max_doublings,
                         double tol);

}  // namespace polydet
