#pragma once

#include <complex>
#include <string>
#include <vector>

namespace polydet {

using cplx = std::complex<double>;

enum class FieldKind { rational, quadratic };

/// Q or a quadratic field Q(sqrt d) with d squarefree, d != 0, 1.
class NumberField {
  public:
    static NumberField rational();
    static NumberField quadratic(long d);

    FieldKind kind() const noexcept { return kind_; }
    long radicand() const noexcept { return d_; }
    int degree() const noexcept { return kind_ == FieldKind::rational ? 1 : 2; }
    int r1() const noexcept;
    int r2() const noexcept;
    long discriminant() const noexcept;
    /// "Q" or "quad:<d>".
    std::string label() const;

    bool operator==(const NumberField&) const = default;

  private:
    NumberField(FieldKind kind, long d) : kind_(kind), d_(d) {}
    FieldKind kind_;
    long d_;
};

/// Parses "Q" or "quad:<d>".
NumberField parse_field(const std::string& spec);

enum class SplitType { rational, split, inert, ramified };

struct PrimeIdeal {
    long p = 0;
    long norm = 0;
    SplitType split = SplitType::rational;
    /// 0 or 1 for the two conjugate ideals above a split prime, otherwise 0.
    int index = 0;
    /// Discriminant of the field the ideal lives in (1 for Q).
    long field_discriminant = 1;
};

/// Kronecker symbol (d / n) for n >= 1.
int kronecker_symbol(long d, long n);

/// Primes p <= n from a cached Eratosthenes sieve (capped at 10^8).
std::vector<long> primes_up_to(long n);

/// Prime ideals of norm <= norm_bound ordered by (norm, p, index).
std::vector<PrimeIdeal> enumerate_prime_ideals(const NumberField& field, long norm_bound);

/// Primitive Dirichlet character stored as its value table on Z / qZ.
class DirichletCharacter {
  public:
    /// The principal character mod 1.
    static DirichletCharacter trivial();
    /// Conrey character chi_q(m, .); must be primitive.
    static DirichletCharacter conrey(long q, long m);
    /// The real character n -> (d / n) for a fundamental discriminant d.
    static DirichletCharacter kronecker(long fundamental_discriminant);
    /// Values on residues coprime to q; checked for multiplicativity and primitivity.
    static DirichletCharacter from_table(long q, const std::vector<std::pair<long, cplx>>& values,
                                         std::string label = {});
    /// JSON text {"modulus": q, "values": {"a": v | [re, im], ...}}.
    static DirichletCharacter from_json(const std::string& text);

    long modulus() const noexcept { return q_; }
    cplx operator()(long n) const;
    bool is_principal() const noexcept { return q_ == 1; }
    /// 0 for even, 1 for odd.
    int parity() const noexcept { return parity_; }
    bool is_real() const noexcept;
    DirichletCharacter conjugate() const;
    const std::string& label() const noexcept { return label_; }
    /// Smallest modulus inducing this character.
    long conductor() const;

  private:
    DirichletCharacter(long q, std::vector<cplx> values, std::string label);
    long q_;
    std::vector<cplx> values_;
    int parity_ = 0;
    std::string label_;
};

enum class PlaceType { real, complex };

struct ArchPlace {
    PlaceType type = PlaceType::real;
    int n_v = 1;
    double phi = 0.0;
    int m = 0;
};

/// Hecke character with the data entering the completed L-function. Over Q it is a
/// primitive Dirichlet character; over a quadratic field only the trivial character
/// is constructible. Its L-function is a product of Dirichlet L-functions.
class HeckeCharacter {
  public:
    static HeckeCharacter trivial(const NumberField& field);
    static HeckeCharacter dirichlet(const DirichletCharacter& chi);

    /// Replaces the archimedean data; only the formula-level routines see it.
    /// Requires sum_v N_v phi_v = 0 and one entry per infinite place.
    HeckeCharacter with_arch(std::vector<ArchPlace> arch) const;

    const NumberField& field() const noexcept { return field_; }
    long conductor_norm() const noexcept { return conductor_norm_; }
    bool is_principal() const noexcept { return principal_; }
    int epsilon() const noexcept { return principal_ ? 1 : 0; }
    bool is_class_character() const noexcept;
    bool is_self_dual() const noexcept;
    const std::vector<ArchPlace>& arch() const noexcept { return arch_; }
    /// L_K(s, chi) = prod of L(s, factor).
    const std::vector<DirichletCharacter>& dirichlet_factors() const noexcept { return factors_; }
    HeckeCharacter conjugate() const;
    std::string label() const;

  private:
    HeckeCharacter(NumberField field, long conductor_norm, bool principal, std::vector<ArchPlace> arch,
                   std::vector<DirichletCharacter> factors, std::string label);
    NumberField field_;
    long conductor_norm_;
    bool principal_;
    std::vector<ArchPlace> arch_;
    std::vector<DirichletCharacter> factors_;
    std::string label_;
};

/// chi(p), zero when p divides the conductor.
cplx char_value(const HeckeCharacter& chi, const PrimeIdeal& p);

/// Parses "trivial", "kronecker" (the field's quadratic character, over Q only
/// with an explicit "kronecker:<d>"), "dirichlet:q:m" (Conrey label) or
/// "file:<path>" (JSON value table) for the given field.
HeckeCharacter parse_character(const NumberField& field, const std::string& spec);

}  // namespace polydet
