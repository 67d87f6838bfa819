#pragma once

#include <memory>
#include <optional>

#include "polydet/config.hpp"
#include "polydet/fields.hpp"
#include "polydet/quadrature.hpp"
#include "polydet/special_functions.hpp"
#include "polydet/zero_table.hpp"

namespace polydet {

struct ValueAndDerivative {
    cplx value;
    cplx derivative;
};

struct EulerTerm {
    double log_norm;
    cplx chi;  // chi(p), never zero
};

/// Prime ideals with chi(p) != 0 and norm <= bound in the fixed (norm, p, index)
/// order. Cached per character label and bound.
std::shared_ptr<const std::vector<EulerTerm>> euler_terms(const HeckeCharacter& chi, long bound);

/// L_K(s, chi) on the whole plane minus the pole, assembled from Hurwitz zeta values.
cplx l_value(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg = {});

/// (s-1)^eps L_K(s, chi) and its derivative; entire, so s = 1 is allowed.
ValueAndDerivative l_value_regularized(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg = {});

/// L'/L from the analytic derivative of the Hurwitz assembly.
cplx l_log_derivative(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg = {});

/// d/ds log((s-1)^eps L(s)) = L'/L + eps/(s-1), free of the pole at s = 1.
cplx l_log_derivative_regularized(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg = {});

/// L'/L = -sum_p sum_l log Np chi(p)^l Np^{-ls} over Np <= prime_bound, Re(s) > 1.
cplx l_log_derivative_series(const HeckeCharacter& chi, cplx s, long prime_bound);

/// log L = sum_p sum_l chi(p)^l / (l Np^{ls}) over Np <= prime_bound, Re(s) > 1.
cplx log_l_series(const HeckeCharacter& chi, cplx s, long prime_bound);

enum class Membership { inside, outside, unverifiable };

/// Approximation of Omega_K(chi): the plane minus the leftward half-lines from every
/// tabulated zero, from the trivial zeros and, for principal chi, from s = 1.
class OmegaRegion {
  public:
    OmegaRegion(const HeckeCharacter& chi, const ZeroTable* zeros, double tol = 1e-9);

    Membership classify(cplx point) const;
    /// True when the closed segment a -> b meets one of the excluded half-lines.
    bool segment_crosses_cut(cplx a, cplx b) const;
    /// outside if any segment crosses a cut, unverifiable if any point is, else inside.
    Membership classify_path(const PathSpec& path) const;

    /// Start points of the excluded half-lines {rho - lambda : lambda >= 0}.
    const std::vector<cplx>& cut_origins() const noexcept { return origins_; }

  private:
    std::vector<cplx> origins_;
    double height_ = 0.0;
    bool has_table_ = false;
    double tol_;
};

struct BranchResult {
    cplx value;
    double quad_error = 0.0;
};

/// Continuous branch of log L at the end of `path`: the principal log at the real
/// anchor path.start() (Re > 1) plus the integral of L'/L along the path.
BranchResult log_l_branch(const HeckeCharacter& chi, const PathSpec& path, const EvalConfig& cfg = {},
                          const OmegaRegion* omega = nullptr);

/// Lambda_K(s, chi) including the (s(s-1)/2)^eps factor and the archimedean gammas.
cplx completed_lambda(const HeckeCharacter& chi, cplx s, const EvalConfig& cfg = {});

/// W_K(chi) = Lambda(1-s, conj chi) / Lambda(s, chi); checked for |W| = 1 and for
/// independence of the sample point.
cplx root_number(const HeckeCharacter& chi, cplx s_sample = cplx(0.75, 1.25),const EvalConfig& cfg = {});

struct ArgumentCount {
    long count = 0;
    double residual = 0.0;
    cplx raw;
};

/// (1 / 2 pi i) times the loop integral of L'/L, rounded to the nearest integer.
ArgumentCount argument_principle_count(const HeckeCharacter& chi, const PathSpec& loop, const EvalConfig& cfg = {});

}  // namespace polydet
