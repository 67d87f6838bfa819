#pragma once

#include <map>
#include <string>

namespace polydet {

/// Precision targets, truncation bounds and quadrature settings shared by every
/// evaluator. Defaults reproduce the accuracy the verification suites need.
struct EvalConfig {
    double target_abs_error = 1e-15;
    /// Additive part of the Euler–Maclaurin shift N = ceil|Im s| + ceil|z| + shift.
    int euler_maclaurin_shift = 20;
    /// Number of Bernoulli correction terms in the Euler–Maclaurin tail.
    int bernoulli_terms = 20;
    int series_max_terms = 200000;

    /// Norm bound X for truncated Euler products.
    long prime_bound = 10'000'000;

    /// Absolute tolerance of the adaptive Gauss–Legendre path integrator.
    double quad_tolerance = 1e-12;
    int quad_max_depth = 24;
    /// Initial number of steps per unit length on integration paths.
    double path_steps_per_unit = 4.0;

    /// Hankel contour radius as a fraction of Re(z) - 1.
    double hankel_delta_fraction = 0.4;
    /// Maximum number of panel doublings for Hankel / half-line quadrature.
    int hankel_max_doublings = 6;

    void validate() const;

    /// Flat key=value form; keys match the field names.
    std::map<std::string, std::string> to_map() const;
    /// Overrides fields from a key=value map. Unknown keys are an error.
    void apply(const std::map<std::string, std::string>& kv);
    /// Stable 64-bit FNV-1a digest of to_map(), hex encoded.
    std::string hash() const;
};

/// Reads a flat key=value file ('#' comments, blank lines ignored).
std::map<std::string, std::string> read_config_file(const std::string& path);

}  // namespace polydet
