#include <doctest.h>

#include <cmath>

#include "polydet/determinants.hpp"
#include "polydet/errors.hpp"
#include "polydet/l_functions.hpp"
#include "polydet/poly_l.hpp"
#include "polydet/zero_data.hpp"

using namespace polydet;

namespace {

bool throws_kind(ErrorKind kind, auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

const NumberField kQ = NumberField::rational();

ZeroTable zeta_table() { return load_zeros(std::string(POLYDET_DATA_DIR) + "/zeta_zeros_100.txt"); }

// pi^{-s/2} Gamma(s/2) zeta(s) s (s - 1) / 2 on the real axis from libstdc++.
double riemann_xi(double s) { return 0.5 * s * (s - 1.0) * std::pow(kPi, -0.5 * s) * std::tgamma(0.5 * s) * std::riemann_zeta(s); }

}  // namespace

TEST_CASE("zero sums") {
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    const ZeroTable table = zeta_table();
    const XiValue x50 = xi_zero_sum(zeta, 3.0, 2.0, table.prefix(50));
    const XiValue x100 = xi_zero_sum(zeta, 3.0, 2.0, table);
    CHECK(x100.route == XiRoute::zero_sum);
    CHECK(x100.height == table.completeness_height);
    CHECK(std::abs(x50.value - x100.value) <= x50.error_estimate);
    CHECK(x100.error_estimate < x50.error_estimate);
    // conjugate pairs make the sum real for real s and z
    CHECK(std::abs(x100.value.imag()) < 1e-15 * std::abs(x100.value));

    // at large s the first pair dominates
    const cplx rho(0.5, table.ordinates[0]);
    const double first = 2.0 * std::real(std::pow((cplx(2.0) - rho) / kTwoPi, -40.0));
    const XiValue big = xi_zero_sum(zeta, 40.0, 2.0, table);
    CHECK(std::abs(big.value - first) <= 1e-5 * std::abs(first));

    CHECK(throws_kind(ErrorKind::EmptyZeroTable, [&] { xi_zero_sum(zeta, 3.0, 2.0, ZeroTable{}); }));
}

TEST_CASE("hankel representation") {
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    const ZeroTable table = zeta_table();
    const XiValue zs = xi_zero_sum(zeta, 3.0, 2.0, table);
    const XiValue hk = xi_hankel(zeta, 3.0, 2.0);
    CHECK(hk.route == XiRoute::hankel);
    CHECK(std::abs(zs.value - hk.value) <= zs.error_estimate + hk.error_estimate);
    CHECK(std::abs(hk.value.imag()) < 1e-12);

    // the contour radius does not matter
    ContourSpec c1, c2;
    c1.delta = 0.6;
    c2.delta = 1.2;
    const cplx s(2.5, 1.0), z(3.0, 0.5);
    CHECK(std::abs(xi_hankel(zeta, s, z, c1).value - xi_hankel(zeta, s, z, c2).value) < 1e-8);
    ContourSpec bad;
    bad.delta = 5.0;
    CHECK(throws_kind(ErrorKind::ContourInvalid, [&] { xi_hankel(zeta, s, z, bad); }));
    const ContourSpec resolved = resolve_contour(zeta, s, z, {});
    CHECK(std::abs(resolved.delta - 0.8) < 1e-15);
    CHECK(resolved.cut_depth > 0.0);

    // a character without a pole, against zeros from the scanner
    const HeckeCharacter m4 = parse_character(kQ, "dirichlet:4:3");
    const ZeroTable m4zeros = find_zeros(m4, 50.0);
    const XiValue a = xi_zero_sum(m4, 4.0, 2.0, m4zeros);
    const XiValue b = xi_hankel(m4, 4.0, 2.0);
    CHECK(std::abs(a.value - b.value) <= a.error_estimate + b.error_estimate);
}

TEST_CASE("s-derivative at negative integers") {
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    const cplx z(2.5, 0.3);

    // central difference of the Hankel value at s = 0
    const double h = 1e-4;
    const cplx fd = (xi_hankel(zeta, h, z).value - xi_hankel(zeta, -h, z).value) / (2.0 * h);
    CHECK(std::abs(fd - xi_ds_at_depth(zeta, 1, z).total()) < 1e-6);

    for (int r : {1, 2, 3}) {
        const XiDerivativeParts parts = xi_ds_at_depth(zeta, r, z);
        // d/ds (2 pi / w)^s = (2 pi / w)^s log(2 pi / w) for w = z, z - 1
        const double s = 1.0 - r;
        cplx da1 = 0.0;
        for (cplx w : {z, z - 1.0}) da1 += std::pow(kTwoPi / w, s) * std::log(kTwoPi / w);
        CHECK(std::abs(parts.da1 - da1) < 1e-12 * std::abs(da1));

        // int_0^inf L'/L(z + x) x^{r-1} dx = -(r-1)! log L^{(r)}(z)
        EvalConfig cfg;
        cfg.prime_bound = 1'000'000;
        const PolyLResult pl = poly_l_euler(zeta, r, z, cfg);
        const double fact = std::tgamma(static_cast<double>(r));
        CHECK(std::abs(parts.half_line_integral + fact * pl.log_value) <= fact * pl.log_tail_bound + parts.quad_error + 1e-7);

        // the log-weighted contour route
        const XiValue dbg = xi_hankel_ds(zeta, s, z);
        CHECK(std::abs(dbg.value - parts.total()) < 1e-6 * std::max(1.0, std::abs(dbg.value)));
    }
}

TEST_CASE("determinants at depth one") {
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    // at z = 2 the regularized product is Lambda(2) / (2^{3/2} pi^2) = 1 / (6 2^{3/2} pi)
    const DeterminantValue d2 = determinant_closed(zeta, 1, 2.0);
    CHECK(std::abs(d2.value - 1.0 / (6.0 * std::pow(2.0, 1.5) * kPi)) < 1e-14);
    CHECK(std::abs(d2.value - 0.0187565899199399) < 1e-14);
    for (double z : {1.5, 2.5, 4.0}) {
        const double hand = riemann_xi(z) / (std::pow(2.0, 1.5) * kPi * kPi);
        CHECK(std::abs(determinant_closed(zeta, 1, z).value - hand) < 1e-12 * hand);
        CHECK(std::abs(regularized_product(zeta, z) - hand) < 1e-12 * hand);
        CHECK(std::abs(determinant_numeric(zeta, 1, z).value - hand) < 1e-9 * hand);
    }

    // Gaussian field: 4^{-z/2} / (2 pi^2) Lambda_K(z)
    const HeckeCharacter gauss = HeckeCharacter::trivial(NumberField::quadratic(-1));
    const HeckeCharacter m4 = parse_character(kQ, "dirichlet:4:3");
    for (double z : {2.0, 3.0}) {
        const double lam = 0.5 * z * (z - 1.0) * std::pow(kPi, -z) * std::tgamma(z) * std::riemann_zeta(z) *
                           l_value(m4, z).real();
        const double hand = std::pow(4.0, -0.5 * z) / (2.0 * kPi * kPi) * lam;
        CHECK(std::abs(regularized_product(gauss, z) - hand) < 1e-12 * hand);
        CHECK(std::abs(determinant_closed(gauss, 1, z).value - hand) < 1e-9 * hand);
    }
}

TEST_CASE("higher depth") {
    for (const char* spec : {"trivial", "dirichlet:4:3", "dirichlet:5:2"}) {
        const HeckeCharacter chi = parse_character(kQ, spec);
        for (int r : {2, 3}) {
            const cplx z(2.5, 0.5);
            const DeterminantValue c = determinant_closed(chi, r, z);
            const DeterminantValue n = determinant_numeric(chi, r, z);
            CHECK(std::abs(c.log_value - n.log_value) <= 1e-6 * std::max(1.0, std::abs(c.log_value)));
        }
    }
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    CHECK(throws_kind(ErrorKind::InvalidArgument, [&] { determinant_closed(zeta, 0, 2.0); }));
    CHECK(throws_kind(ErrorKind::DomainError, [&] { determinant_closed(zeta, 2, 0.8); }));
}

TEST_CASE("archimedean factor at depth one") {
    // Gamma_1(w) = Gamma(w) / sqrt(2 pi) and B_1(w) = w - 1/2
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    const HeckeCharacter m4 = parse_character(kQ, "dirichlet:4:3");
    for (double z : {1.7, 3.2}) {
        const double w0 = 0.5 * z, w1 = 0.5 * (z + 1.0);
        const double e0 = -std::log(kPi) * (w0 - 0.5) + std::lgamma(w0) - 0.5 * kLogTwoPi;
        const double e1 = -std::log(kPi) * (w1 - 0.5) + std::lgamma(w1) - 0.5 * kLogTwoPi;
        CHECK(std::abs(log_arch_factor(zeta, 1, z) - e0) < 1e-9);
        CHECK(std::abs(log_arch_factor(m4, 1, z) - e1) < 1e-9);
    }
    // depth two against the Milnor gamma directly
    const double z = 2.2, w = 1.1;
    const cplx e2 = std::pow(kPi, -1.0) * (-std::log(kPi) * bernoulli_poly(2, w) / 2.0 + log_milnor_gamma(2, w));
    CHECK(std::abs(log_arch_factor(zeta, 2, z) - e2) < 1e-12);
}
