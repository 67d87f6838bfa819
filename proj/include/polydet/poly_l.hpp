#pragma once

#include <functional>

#include "polydet/config.hpp"
#include "polydet/fields.hpp"
#include "polydet/l_functions.hpp"
#include "polydet/quadrature.hpp"

namespace polydet {

struct PolyLResult {
    cplx value;
    cplx log_value;
    /// Certified bound on |log L^{(r)} - log_value| from the discarded primes.
    double log_tail_bound = 0.0;
    /// The same bound carried to the value: |value| (e^{log_tail_bound} - 1).
    double tail_bound = 0.0;
    long prime_bound_used = 0;
};

/// Bound on sum_{Np > X} (log Np)^{1-r} |Li_r(chi(p) Np^{-s})| via
/// pi(x) < 1.26 x / log x and partial summation.
double poly_l_tail_bound(const HeckeCharacter& chi, int r, double sigma, long prime_bound);

/// L^{(r)}(s) = exp(sum_{Np <= X} (log Np)^{1-r} Li_r(chi(p) Np^{-s})) for Re(s) > 1.
PolyLResult poly_l_euler(const HeckeCharacter& chi, int r, cplx s, const EvalConfig& cfg = {});

/// The unweighted product exp(sum_{Np <= X} Li_r(chi(p) Np^{-s})), Re(s) > 1 only.
PolyLResult poly_l_tilde(const HeckeCharacter& chi, int r, cplx s, const EvalConfig& cfg = {});

struct LadderResidual {
    double residual = 0.0;
    /// Expected size of the residual: stencil truncation, rounding and Euler tail.
    double estimate = 0.0;
};

/// |FD^{r-1}[log L^{(r)}](s; h) - (-1)^{r-1} log L(s)| with a central stencil.
LadderResidual poly_l_ladder_residual(const HeckeCharacter& chi, int r, cplx s, double h, const EvalConfig& cfg = {});

/// |d/ds log L^{(r)}(s) + log L^{(r-1)}(s)| with a central first difference.
LadderResidual poly_l_step_residual(const HeckeCharacter& chi, int r, cplx s, double h, const EvalConfig& cfg = {});

struct ContinuedValue {
    cplx value;
    cplx log_value;
    double quad_error = 0.0;
    Membership membership = Membership::inside;
};

/// L^{(r)}(s) continued along `path` from the real anchor a = path.start() > 1:
///   log L^{(r)}(s) = sum_{k<r} (-1)^k (s-a)^k / k! log L^{(r-k)}(a)
///                    + (-1)^{r-1} / (r-1)! int_path (s - xi)^{r-1} L'/L(xi) dxi.
/// Without `omega` the region is built from the trivial zeros alone.
ContinuedValue poly_l_continued(const HeckeCharacter& chi, int r, const PathSpec& path, const EvalConfig& cfg = {},
                                const OmegaRegion* omega = nullptr);

/// -oint log g(xi) dxi along a closed loop, tracking a continuous branch of log g
/// from its principal value at the loop's first point.
struct MonodromyResult {
    cplx defect;
    double quad_error = 0.0;
};
MonodromyResult monodromy_defect_of(const std::function<cplx(cplx)>& g, const PathSpec& loop,
                                    const EvalConfig& cfg = {});

/// The defect for g = (xi - 1)^eps L(xi; chi).
MonodromyResult erh_monodromy_defect(const HeckeCharacter& chi, const PathSpec& loop, const EvalConfig& cfg = {});

}  // namespace polydet
