#include "polydet/fields.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "polydet/errors.hpp"
#include "polydet/special_functions.hpp"

namespace polydet {

namespace {

bool is_squarefree(long d) {
    long a = std::labs(d);
    for (long p = 2; p * p <= a; ++p)
        if (a % (p * p) == 0) return false;
    return true;
}

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long powmod(long b, long e, long m) {
    long result = 1 % m;
    b = mod(b, m);
    while (e > 0) {
        if (e & 1) result = static_cast<long>((__int128)result * b % m);
        b = static_cast<long>((__int128)b * b % m);
        e >>= 1;
    }
    return result;
}

std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> f;
    for (long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

bool is_fundamental_discriminant(long d) {
    if (d == 0 || d == 1) return false;
    if (mod(d, 4) == 1) return is_squarefree(d);
    if (mod(d, 4) != 0) return false;
    long m = d / 4;
    return (mod(m, 4) == 2 || mod(m, 4) == 3) && is_squarefree(m);
}

cplx unit_root(long num, long den) { return std::polar(1.0, kTwoPi * static_cast<double>(mod(num, den)) / den); }

// chi_{p^e}(m, n) for the Conrey labelling, m and n coprime to p.
cplx conrey_local(long p, int e, long pe, long m, long n) {
    if (p == 2) {
        if (e == 1) return 1.0;
        const long em = mod(m, 4) == 1 ? 1 : -1;
        const long en = mod(n, 4) == 1 ? 1 : -1;
        const long sign_part = ((1 - em) * (1 - en)) / 4;  // 0 or 1 => exponent 1/2
        if (e == 2) return sign_part ? -1.0 : 1.0;
        // n = en * 5^b mod 2^e
        const long order = pe / 4;
        auto log5 = [&](long x) {
            long target = mod(x, pe);
            long cur = 1;
            for (long k = 0; k < order; ++k) {
                if (cur == target) return k;
                cur = cur * 5 % pe;
            }
            fail(ErrorKind::NumericalFailure, "discrete log base 5 failed");
        };
        const long a = log5(em * m), b = log5(en * n);
        const cplx s = sign_part ? -1.0 : 1.0;
        return s * unit_root(a * b, order);
    }
    const long phi = pe / p * (p - 1);
    long g = 2;
    for (;; ++g) {
        if (std::gcd(g, p) != 1) continue;
        bool prim = true;
        for (auto [f, _] : factorize(p - 1))
            if (powmod(g, (p - 1) / f, p) == 1) prim = false;
        if (!prim) continue;
        if (e >= 2 && powmod(g, p - 1, p * p) == 1) continue;
        break;
    }
    auto dlog = [&](long x) {
        long target = mod(x, pe), cur = 1;
        for (long k = 0; k < phi; ++k) {
            if (cur == target) return k;
            cur = static_cast<long>((__int128)cur * g % pe);
        }
        fail(ErrorKind::NumericalFailure, "discrete log failed");
    };
    return unit_root(dlog(m) * dlog(n), phi);
}

constexpr long kMaxModulus = 1'000'000;
constexpr long kSieveCap = 100'000'000;

}  // namespace

// ---------------------------------------------------------------- NumberField

NumberField NumberField::rational() { return NumberField(FieldKind::rational, 1); }

NumberField NumberField::quadratic(long d) {
    if (d == 0 || d == 1 || !is_squarefree(d))
        fail(ErrorKind::InvalidArgument, "quadratic field needs squarefree d != 0, 1");
    return NumberField(FieldKind::quadratic, d);
}

int NumberField::r1() const noexcept {
    if (kind_ == FieldKind::rational) return 1;
    return d_ > 0 ? 2 : 0;
}

int NumberField::r2() const noexcept { return (kind_ == FieldKind::quadratic && d_ < 0) ? 1 : 0; }

long NumberField::discriminant() const noexcept {
    if (kind_ == FieldKind::rational) return 1;
    return mod(d_, 4) == 1 ? d_ : 4 * d_;
}

std::string NumberField::label() const {
    return kind_ == FieldKind::rational ? std::string("Q") : "quad:" + std::to_string(d_);
}

NumberField parse_field(const std::string& spec) {
    if (spec == "Q") return NumberField::rational();
    if (spec.rfind("quad:", 0) == 0) {
        try {
            std::size_t used = 0;
            long d = std::stol(spec.substr(5), &used);
            if (used == spec.size() - 5) return NumberField::quadratic(d);
        } catch (const std::logic_error&) {
        }
    }
    fail(ErrorKind::InvalidArgument, "field spec must be Q or quad:<d>, got '" + spec + "'");
}

// ------------------------------------------------------------ prime ideals

int kronecker_symbol(long d, long n) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "Kronecker symbol needs n >= 1");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (mod(d, 2) == 0) return 0;
        const long r = mod(d, 8);
        if (r == 3 || r == 5) result = -result;
    }
    // Jacobi symbol (d / n), n odd.
    long a = mod(d, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const long r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::vector<long> primes_up_to(long n) {
    if (n > kSieveCap) fail(ErrorKind::InvalidArgument, "prime sieve is capped at 10^8");
    static std::mutex mu;
    static std::vector<long> cache;
    static long cached_bound = 1;
    std::lock_guard<std::mutex> lock(mu);
    if (n > cached_bound) {
        const long bound = std::max(n, std::min(kSieveCap, 2 * cached_bound));
        std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
        cache.clear();
        for (long i = 2; i <= bound; ++i) {
            if (composite[i]) continue;
            cache.push_back(i);
            for (long j = i * i; j <= bound; j += i) composite[j] = true;
        }
        cached_bound = bound;
    }
    auto end = std::upper_bound(cache.begin(), cache.end(), n);
    return std::vector<long>(cache.begin(), end);
}

std::vector<PrimeIdeal> enumerate_prime_ideals(const NumberField& field, long norm_bound) {
    if (norm_bound < 2) fail(ErrorKind::InvalidArgument, "norm_bound must be >= 2");
    const long disc = field.discriminant();
    std::vector<PrimeIdeal> out;
    for (long p : primes_up_to(norm_bound)) {
        if (field.kind() == FieldKind::rational) {
            out.push_back({p, p, SplitType::rational, 0, disc});
            continue;
        }
        switch (kronecker_symbol(disc, p)) {
            case 1:
                out.push_back({p, p, SplitType::split, 0, disc});
                out.push_back({p, p, SplitType::split, 1, disc});
                break;
            case 0: out.push_back({p, p, SplitType::ramified, 0, disc}); break;
            default:
                if (p <= norm_bound / p) out.push_back({p, p * p, SplitType::inert, 0, disc});
        }
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        return std::tie(a.norm, a.p, a.index) < std::tie(b.norm, b.p, b.index);
    });
    return out;
}

// ------------------------------------------------------ DirichletCharacter

DirichletCharacter::DirichletCharacter(long q, std::vector<cplx> values, std::string label)
    : q_(q), values_(std::move(values)), label_(std::move(label)) {
    const cplx minus_one = values_[static_cast<std::size_t>(mod(-1, q_))];
    parity_ = (q_ > 2 && std::abs(minus_one + 1.0) < 1e-9) ? 1 : 0;
}

DirichletCharacter DirichletCharacter::trivial() { return DirichletCharacter(1, {1.0}, "trivial"); }

DirichletCharacter DirichletCharacter::conrey(long q, long m) {
    if (q < 1 || q > kMaxModulus) fail(ErrorKind::InvalidArgument, "modulus out of range");
    if (q == 1) return trivial();
    if (std::gcd(mod(m, q), q) != 1) fail(ErrorKind::InvalidArgument, "Conrey index must be coprime to q");
    const auto fac = factorize(q);
    std::vector<cplx> values(static_cast<std::size_t>(q), 0.0);
    for (long n = 1; n < q; ++n) {
        if (std::gcd(n, q) != 1) continue;
        cplx v = 1.0;
        for (auto [p, e] : fac) {
            long pe = 1;
            for (int k = 0; k < e; ++k) pe *= p;
            v *= conrey_local(p, e, pe, mod(m, pe), mod(n, pe));
        }
        values[static_cast<std::size_t>(n)] = v;
    }
    DirichletCharacter chi(q, std::move(values), "dirichlet:" + std::to_string(q) + ":" + std::to_string(mod(m, q)));
    if (chi.conductor() != q)
        fail(ErrorKind::UnsupportedCharacter, "character " + chi.label() + " is not primitive");
    return chi;
}

DirichletCharacter DirichletCharacter::kronecker(long d) {
    if (!is_fundamental_discriminant(d))
        fail(ErrorKind::InvalidArgument, "kronecker character needs a fundamental discriminant");
    const long q = std::labs(d);
    if (q > kMaxModulus) fail(ErrorKind::InvalidArgument, "modulus out of range");
    std::vector<cplx> values(static_cast<std::size_t>(q), 0.0);
    for (long n = 1; n < q; ++n) values[static_cast<std::size_t>(n)] = static_cast<double>(kronecker_symbol(d, n));
    return DirichletCharacter(q, std::move(values), "kronecker:" + std::to_string(d));
}

DirichletCharacter DirichletCharacter::from_table(long q, const std::vector<std::pair<long, cplx>>& given,
                                                  std::string label) {
    if (q < 1 || q > kMaxModulus) fail(ErrorKind::InvalidArgument, "modulus out of range");
    if (q == 1) return trivial();
    std::vector<cplx> values(static_cast<std::size_t>(q), 0.0);
    std::vector<bool> seen(static_cast<std::size_t>(q), false);
    for (auto [a, v] : given) {
        const long r = mod(a, q);
        if (std::gcd(r, q) != 1) fail(ErrorKind::InvalidArgument, "table entry not coprime to modulus");
        if (std::abs(std::abs(v) - 1.0) > 1e-9) fail(ErrorKind::InvalidArgument, "character values must be unimodular");
        values[static_cast<std::size_t>(r)] = v;
        seen[static_cast<std::size_t>(r)] = true;
    }
    for (long a = 1; a < q; ++a)
        if (std::gcd(a, q) == 1 && !seen[static_cast<std::size_t>(a)])
            fail(ErrorKind::InvalidArgument, "missing value for residue " + std::to_string(a));
    if (std::abs(values[1] - 1.0) > 1e-9) fail(ErrorKind::InvalidArgument, "chi(1) must be 1");
    for (long a = 1; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        for (long b = a; b < q; ++b) {
            if (std::gcd(b, q) != 1) continue;
            const cplx lhs = values[static_cast<std::size_t>(a * b % q)];
            if (std::abs(lhs - values[static_cast<std::size_t>(a)] * values[static_cast<std::size_t>(b)]) > 1e-9)
                fail(ErrorKind::InvalidArgument, "character table is not multiplicative");
        }
    }
    if (label.empty()) label = "table:" + std::to_string(q);
    DirichletCharacter chi(q, std::move(values), std::move(label));
    if (chi.conductor() != q) fail(ErrorKind::UnsupportedCharacter, "character table is not primitive");
    return chi;
}

DirichletCharacter DirichletCharacter::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, std::string("character spec: ") + e.what());
    }
    if (!j.contains("modulus") || !j.contains("values") || !j["values"].is_object())
        fail(ErrorKind::ParseError, "character spec needs 'modulus' and a 'values' object");
    const long q = j["modulus"].get<long>();
    std::vector<std::pair<long, cplx>> entries;
    std::ostringstream tag;
    tag << "table:" << q;
    for (auto it = j["values"].begin(); it != j["values"].end(); ++it) {
        long a = 0;
        try {
            a = std::stol(it.key());
        } catch (const std::logic_error&) {
            fail(ErrorKind::ParseError, "character spec key '" + it.key() + "' is not an integer");
        }
        cplx v;
        if (it->is_number()) v = it->get<double>();
        else if (it->is_array() && it->size() == 2) v = cplx((*it)[0].get<double>(), (*it)[1].get<double>());
        else fail(ErrorKind::ParseError, "character value must be a number or [re, im]");
        entries.emplace_back(a, v);
        tag << ":" << a << "=" << v.real() << "," << v.imag();
    }
    return from_table(q, entries, tag.str());
}

cplx DirichletCharacter::operator()(long n) const { return values_[static_cast<std::size_t>(mod(n, q_))]; }

bool DirichletCharacter::is_real() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](cplx v) { return std::abs(v.imag()) < 1e-12; });
}

DirichletCharacter DirichletCharacter::conjugate() const {
    if (is_real()) return *this;
    std::vector<cplx> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), [](cplx x) { return std::conj(x); });
    return DirichletCharacter(q_, std::move(v), "conj(" + label_ + ")");
}

long DirichletCharacter::conductor() const {
    for (long d = 1; d < q_; ++d) {
        if (q_ % d != 0) continue;
        bool induced = true;
        for (long n = 1 + d; n < q_ && induced; n += d)
            if (std::gcd(n, q_) == 1 && std::abs(values_[static_cast<std::size_t>(n)] - 1.0) > 1e-9) induced = false;
        if (induced) return d;
    }
    return q_;
}

// ----------------------------------------------------------- HeckeCharacter

HeckeCharacter::HeckeCharacter(NumberField field, long conductor_norm, bool principal, std::vector<ArchPlace> arch,
                               std::vector<DirichletCharacter> factors, std::string label)
    : field_(field),
      conductor_norm_(conductor_norm),
      principal_(principal),
      arch_(std::move(arch)),
      factors_(std::move(factors)),
      label_(std::move(label)) {}

HeckeCharacter HeckeCharacter::trivial(const NumberField& field) {
    std::vector<ArchPlace> arch;
    std::vector<DirichletCharacter> factors{DirichletCharacter::trivial()};
    if (field.kind() == FieldKind::rational) {
        arch.push_back({PlaceType::real, 1, 0.0, 0});
    } else {
        factors.push_back(DirichletCharacter::kronecker(field.discriminant()));
        if (field.r1() == 2) arch = {{PlaceType::real, 1, 0.0, 0}, {PlaceType::real, 1, 0.0, 0}};
        else arch = {{PlaceType::complex, 2, 0.0, 0}};
    }
    return HeckeCharacter(field, 1, true, std::move(arch), std::move(factors), field.label() + "/trivial");
}

HeckeCharacter HeckeCharacter::dirichlet(const DirichletCharacter& chi) {
    if (chi.is_principal()) return trivial(NumberField::rational());
    return HeckeCharacter(NumberField::rational(), chi.modulus(), false, {{PlaceType::real, 1, 0.0, chi.parity()}},
                          {chi}, "Q/" + chi.label());
}

HeckeCharacter HeckeCharacter::with_arch(std::vector<ArchPlace> arch) const {
    if (static_cast<int>(arch.size()) != field_.r1() + field_.r2())
        fail(ErrorKind::InvalidArgument, "one archimedean entry per infinite place is required");
    double weighted_phi = 0.0;
    int reals = 0;
    for (const auto& v : arch) {
        if ((v.type == PlaceType::real) != (v.n_v == 1) || (v.n_v != 1 && v.n_v != 2))
            fail(ErrorKind::InvalidArgument, "N_v must be 1 for real and 2 for complex places");
        reals += v.type == PlaceType::real;
        weighted_phi += v.n_v * v.phi;
    }
    if (reals != field_.r1()) fail(ErrorKind::InvalidArgument, "place types do not match the field signature");
    if (std::abs(weighted_phi) > 1e-12) fail(ErrorKind::InvalidArgument, "sum of N_v phi_v must vanish");
    HeckeCharacter out = *this;
    out.arch_ = std::move(arch);
    out.label_ += "+arch";
    return out;
}

bool HeckeCharacter::is_class_character() const noexcept {
    return std::all_of(arch_.begin(), arch_.end(), [](const ArchPlace& v) { return v.phi == 0.0 && v.m == 0; });
}

bool HeckeCharacter::is_self_dual() const noexcept {
    return std::all_of(factors_.begin(), factors_.end(), [](const DirichletCharacter& c) { return c.is_real(); }) &&
           std::all_of(arch_.begin(), arch_.end(), [](const ArchPlace& v) { return v.phi == 0.0; });
}

HeckeCharacter HeckeCharacter::conjugate() const {
    if (is_self_dual()) return *this;
    std::vector<DirichletCharacter> f;
    for (const auto& c : factors_) f.push_back(c.conjugate());
    std::vector<ArchPlace> arch = arch_;
    for (auto& v : arch) {
        v.phi = -v.phi;
        v.m = -v.m;
    }
    return HeckeCharacter(field_, conductor_norm_, principal_, std::move(arch), std::move(f), "conj(" + label_ + ")");
}

std::string HeckeCharacter::label() const { return label_; }

cplx char_value(const HeckeCharacter& chi, const PrimeIdeal& p) {
    if (p.field_discriminant != chi.field().discriminant())
        fail(ErrorKind::FieldMismatch, "prime ideal belongs to a different field than the character");
    if (chi.field().kind() == FieldKind::quadratic) return 1.0;
    return chi.dirichlet_factors().front()(p.p);
}

HeckeCharacter parse_character(const NumberField& field, const std::string& spec) {
    auto need_rational = [&] {
        if (field.kind() != FieldKind::rational)
            fail(ErrorKind::UnsupportedCharacter, "only the trivial character is supported over quadratic fields");
    };
    if (spec == "trivial") return HeckeCharacter::trivial(field);
    if (spec == "kronecker") {
        if (field.kind() != FieldKind::quadratic)
            fail(ErrorKind::InvalidArgument, "'kronecker' needs a quadratic field; use kronecker:<D> over Q");
        return HeckeCharacter::dirichlet(DirichletCharacter::kronecker(field.discriminant()));
    }
    try {
        if (spec.rfind("kronecker:", 0) == 0) {
            need_rational();
            return HeckeCharacter::dirichlet(DirichletCharacter::kronecker(std::stol(spec.substr(10))));
        }
        if (spec.rfind("dirichlet:", 0) == 0) {
            need_rational();
            const auto rest = spec.substr(10);
            const auto colon = rest.find(':');
            if (colon == std::string::npos) fail(ErrorKind::InvalidArgument, "expected dirichlet:q:m");
            return HeckeCharacter::dirichlet(
                DirichletCharacter::conrey(std::stol(rest.substr(0, colon)), std::stol(rest.substr(colon + 1))));
        }
    } catch (const std::logic_error&) {
        fail(ErrorKind::InvalidArgument, "malformed character spec '" + spec + "'");
    }
    if (spec.rfind("file:", 0) == 0) {
        need_rational();
        std::ifstream in(spec.substr(5));
        if (!in) fail(ErrorKind::InvalidArgument, "cannot open character file '" + spec.substr(5) + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return HeckeCharacter::dirichlet(DirichletCharacter::from_json(buf.str()));
    }
    fail(ErrorKind::InvalidArgument, "unknown character spec '" + spec + "'");
}

}  // namespace polydet
