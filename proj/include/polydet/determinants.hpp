#pragma once

#include <string>

#include "polydet/config.hpp"
#include "polydet/fields.hpp"
#include "polydet/quadrature.hpp"
#include "polydet/zero_table.hpp"

namespace polydet {

/// Hankel contour around the cut (-inf, 0]: circle of radius delta, edges cut at
/// depth X. Non-positive delta / cut_depth select the defaults.
struct ContourSpec {
    double delta = 0.0;
    double cut_depth = 0.0;
    int nodes_circle = 4;  // initial 32-point panels on the circle
    int nodes_ray = 8;     // initial 32-point panels on each edge (in log x)
};

enum class XiRoute { zero_sum, hankel };
std::string to_string(XiRoute route);

struct XiValue {
    cplx value;
    XiRoute route = XiRoute::zero_sum;
    /// Zero-sum height T (zero_sum route).
    double height = 0.0;
    /// Contour actually used (hankel route).
    ContourSpec contour;
    double error_estimate = 0.0;
};

/// sum over the tabulated zeros of ((z - rho) / 2 pi)^{-s}, conjugate pairs added
/// together by increasing |Im rho|. The error estimate is the zero-density tail.
XiValue xi_zero_sum(const HeckeCharacter& chi, cplx s, cplx z, const ZeroTable& zeros);

/// Resolves the default delta = hankel_delta_fraction (Re z - 1) and the cut depth
/// X where |L'/L(z + X)| X^{-Re s} drops below 1e-18. Validates the contour.
ContourSpec resolve_contour(const HeckeCharacter& chi, cplx s, cplx z, ContourSpec contour, const EvalConfig& cfg = {});

/// xi(s, z) = A1 + A2 + A3 with A2 the Hankel integral of L'/L(z - t) t^{-s}.
XiValue xi_hankel(const HeckeCharacter& chi, cplx s, cplx z, const ContourSpec& contour = {},
                  const EvalConfig& cfg = {});

/// d/ds xi(s, z) from the Hankel representation, with the log-weighted contour
/// integral for A2. Valid for any s != 1.
XiValue xi_hankel_ds(const HeckeCharacter& chi, cplx s, cplx z, const ContourSpec& contour = {},
                     const EvalConfig& cfg = {});

struct XiDerivativeParts {
    cplx da1;
    cplx da2;
    cplx da3;
    /// The half-line integral int_0^inf L'/L(z + x) x^{r-1} dx.
    cplx half_line_integral;
    double quad_error = 0.0;
    cplx total() const { return da1 + da2 + da3; }
};

/// d/ds xi(s, z) at s = 1 - r, with dA2 from the collapsed half-line integral.
XiDerivativeParts xi_ds_at_depth(const HeckeCharacter& chi, int r, cplx z, const EvalConfig& cfg = {});

/// log of the archimedean product prod_v exp(-(N_v pi)^{1-r} log(N_v pi) B_r(w_v) / r)
/// Gamma_r(w_v)^{(N_v pi)^{1-r}} with w_v = (N_v (z + i phi_v) + |m_v|) / 2.
cplx log_arch_factor(const HeckeCharacter& chi, int r, cplx z, const EvalConfig& cfg = {});

struct DeterminantValue {
    cplx value;
    cplx log_value;
    double error_estimate = 0.0;
};

/// Closed form of the depth-r determinant from L^{(r)}, Milnor gammas and
/// Bernoulli polynomials.
DeterminantValue determinant_closed(const HeckeCharacter& chi, int r, cplx z, const EvalConfig& cfg = {});

/// exp(-d/ds xi(s, z)) at s = 1 - r, by xi_ds_at_depth.
DeterminantValue determinant_numeric(const HeckeCharacter& chi, int r, cplx z, const EvalConfig& cfg = {});

/// (N f |d_K|)^{-z/2} / (2^{eps + r1/2 + i phi_C + m_C/2} pi^{2 eps + m/2}) Lambda_K(z).
cplx regularized_product(const HeckeCharacter& chi, cplx z, const EvalConfig& cfg = {});

}  // namespace polydet
