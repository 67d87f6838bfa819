#include <doctest.h>

#include <cmath>

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

}  // namespace

TEST_CASE("special values") {
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    const HeckeCharacter m4 = parse_character(kQ, "dirichlet:4:3");
    CHECK(std::abs(l_value(zeta, 2.0) - kPi * kPi / 6.0) < 1e-14);
    CHECK(std::abs(l_value(m4, 1.0) - kPi / 4.0) < 1e-14);
    // Catalan's constant
    CHECK(std::abs(l_value(m4, 2.0) - 0.915965594177219) < 1e-14);
    CHECK(std::abs(l_value(zeta, 0.0) + 0.5) < 1e-14);
    CHECK(std::abs(l_value(zeta, -2.0)) < 1e-14);

    const HeckeCharacter gauss = HeckeCharacter::trivial(NumberField::quadratic(-1));
    CHECK(std::abs(l_value(gauss, 2.0) - 1.506703009922985) < 1e-13);

    CHECK(std::abs(l_log_derivative(zeta, 2.0) + 0.569960993094532) < 1e-13);
    CHECK(throws_kind(ErrorKind::PoleAtOne, [&] { l_value(zeta, 1.0); }));
    // (s - 1) zeta(s) -> 1 and its derivative is Euler's gamma
    const ValueAndDerivative reg = l_value_regularized(zeta, 1.0);
    CHECK(std::abs(reg.value - 1.0) < 1e-14);
    CHECK(std::abs(reg.derivative - 0.5772156649015329) < 1e-13);
}

TEST_CASE("log derivative routes agree") {
    for (const char* spec : {"trivial", "dirichlet:4:3", "dirichlet:5:2"}) {
        const HeckeCharacter chi = parse_character(kQ, spec);
        for (cplx s : {cplx(3.0, 0.0), cplx(2.5, 4.0), cplx(4.0, -11.0)}) {
            const cplx an = l_log_derivative(chi, s);
            const cplx ser = l_log_derivative_series(chi, s, 1'000'000);
            // sum_{p > X} log p p^{-sigma} < 1.1 X^{1-sigma} / (sigma - 1), prime powers included
            CHECK(std::abs(an - ser) < 1.1 * std::pow(1e6, 1.0 - s.real()) / (s.real() - 1.0) + 1e-13);
            const cplx reg = l_log_derivative_regularized(chi, s);
            CHECK(std::abs(reg - an - (chi.is_principal() ? 1.0 / (s - 1.0) : cplx(0.0))) < 1e-13);
        }
    }
    // finite differences of the Hurwitz assembly
    const HeckeCharacter m4 = parse_character(kQ, "dirichlet:4:3");
    const cplx s(0.3, 8.0);
    const double h = 1e-5;
    const cplx fd = (std::log(l_value(m4, s + h)) - std::log(l_value(m4, s - h))) / (2.0 * h);
    CHECK(std::abs(fd - l_log_derivative(m4, s)) < 1e-7);
}

TEST_CASE("truncated euler product within its certified tail") {
    const long x = 1'000'000;
    for (const char* spec : {"trivial", "dirichlet:4:3", "dirichlet:5:2"}) {
        const HeckeCharacter chi = parse_character(kQ, spec);
        for (cplx s : {cplx(2.0, 0.0), cplx(1.5, 3.0)}) {
            const cplx exact = std::log(l_value(chi, s));
            const cplx trunc = log_l_series(chi, s, x);
            CHECK(std::abs(exact - trunc) <= poly_l_tail_bound(chi, 1, s.real(), x));
        }
    }
}

TEST_CASE("dedekind zeta of a quadratic field from its prime ideals") {
    // the Hurwitz assembly uses zeta * L(chi_d); the series enumerates ideals directly
    for (long d : {-1L, 5L, -3L}) {
        const HeckeCharacter chi = HeckeCharacter::trivial(NumberField::quadratic(d));
        for (cplx s : {cplx(3.0, 1.0), cplx(4.0, -7.0)}) {
            const cplx analytic = std::log(l_value(chi, s));
            const cplx series = log_l_series(chi, s, 1'000'000);
            CHECK(std::abs(analytic - series) < 1e-10);
        }
    }
}

TEST_CASE("continuous branch of log L") {
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    // within Re s > 1 the branch equals the Dirichlet series of log zeta
    const PathSpec p{{cplx(3.0, 0.0), cplx(3.0, 25.0), cplx(1.6, 25.0)}};
    const BranchResult b = log_l_branch(zeta, p);
    CHECK(std::abs(b.value - log_l_series(zeta, cplx(1.6, 25.0), 1'000'000)) < 1e-5);
    // across the strip the exponential reproduces L
    const PathSpec q{{cplx(2.0, 0.0), cplx(2.0, 20.0), cplx(0.3, 20.0)}};
    const BranchResult c = log_l_branch(zeta, q);
    CHECK(std::abs(std::exp(c.value) - l_value(zeta, cplx(0.3, 20.0))) < 1e-10);

    CHECK(throws_kind(ErrorKind::InvalidArgument, [&] { log_l_branch(zeta, PathSpec{{cplx(0.5, 0.0), cplx(2.0, 1.0)}}); }));
    const ZeroTable zeros = load_zeros(std::string(POLYDET_DATA_DIR) + "/zeta_zeros_100.txt");
    const OmegaRegion omega(zeta, &zeros);
    const PathSpec bad{{cplx(2.0, 0.0), cplx(2.0, 14.134725141734695), cplx(0.2, 14.134725141734695)}};
    CHECK(throws_kind(ErrorKind::PathLeavesOmega, [&] { log_l_branch(zeta, bad, {}, &omega); }));
}

TEST_CASE("omega region") {
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    const ZeroTable zeros = load_zeros(std::string(POLYDET_DATA_DIR) + "/zeta_zeros_100.txt");
    const OmegaRegion omega(zeta, &zeros);
    CHECK(omega.classify(cplx(0.0, 0.0)) == Membership::outside);   // cut from s = 1
    CHECK(omega.classify(cplx(-3.0, 0.0)) == Membership::outside);  // trivial zeros
    CHECK(omega.classify(cplx(2.0, 1.0)) == Membership::inside);
    CHECK(omega.classify(cplx(0.8, 5.0)) == Membership::inside);
    CHECK(omega.classify(cplx(0.55, 5.0)) == Membership::unverifiable);
    CHECK(omega.classify(cplx(0.8, 500.0)) == Membership::unverifiable);
    CHECK(omega.segment_crosses_cut(cplx(-1.0, -1.0), cplx(-1.0, 1.0)));
    CHECK_FALSE(omega.segment_crosses_cut(cplx(2.0, -1.0), cplx(2.0, 1.0)));

    const OmegaRegion bare(zeta, nullptr);
    CHECK(bare.classify(cplx(0.8, 5.0)) == Membership::unverifiable);
    // origins: 1, the trivial zeros' half-line start 0 (phi = 0, m = 0) and two per ordinate
    CHECK(omega.cut_origins().size() == 2 + 2 * zeros.size());
}

TEST_CASE("completed L-function") {
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    CHECK(std::abs(completed_lambda(zeta, 2.0) - kPi / 6.0) < 1e-14);
    // removable poles: (s(s-1)/2) pi^{-s/2} Gamma(s/2) zeta(s) at s = 0 and s = 1 equals 1/2
    CHECK(std::abs(completed_lambda(zeta, 0.0) - 0.5) < 1e-12);
    CHECK(std::abs(completed_lambda(zeta, 1.0) - 0.5) < 1e-12);

    for (const char* spec : {"trivial", "dirichlet:4:3", "dirichlet:5:2", "kronecker:8"}) {
        const HeckeCharacter chi = parse_character(kQ, spec);
        const cplx w = root_number(chi);
        CHECK(std::abs(std::abs(w) - 1.0) < 1e-10);
        const cplx s(0.3, 2.0);
        const cplx lhs = completed_lambda(chi.conjugate(), 1.0 - s);
        const cplx rhs = w * completed_lambda(chi, s);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
        if (chi.is_self_dual()) CHECK(std::abs(w - 1.0) < 1e-10);
    }
    // for a primitive odd character mod 5, Lambda(s, chi) = tau(chi) / (i sqrt 5) Lambda(1 - s, conj chi)
    const HeckeCharacter c5 = parse_character(kQ, "dirichlet:5:2");
    cplx tau = 0.0;
    for (long a = 1; a < 5; ++a) tau += c5.dirichlet_factors()[0](a) * std::polar(1.0, kTwoPi * a / 5.0);
    CHECK(std::abs(root_number(c5) * tau / (cplx(0.0, 1.0) * std::sqrt(5.0)) - 1.0) < 1e-10);

    const HeckeCharacter gauss = HeckeCharacter::trivial(NumberField::quadratic(-1));
    CHECK(std::abs(root_number(gauss) - 1.0) < 1e-10);
}

TEST_CASE("argument principle") {
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    CHECK(argument_principle_count(zeta, PathSpec::rectangle(2.0, 3.0, 1.0, 2.0)).count == 0);
    const ArgumentCount one = argument_principle_count(zeta, PathSpec::rectangle(0.2, 0.8, 13.0, 15.0));
    CHECK(one.count == 1);
    CHECK(one.residual < 1e-8);
    CHECK(argument_principle_count(zeta, PathSpec::rectangle(0.2, 0.8, -15.0, -13.0)).count == 1);
    CHECK(argument_principle_count(zeta, PathSpec::rectangle(0.2, 0.8, 13.0, 26.0)).count == 3);
    const HeckeCharacter m4 = parse_character(kQ, "dirichlet:4:3");
    CHECK(argument_principle_count(m4, PathSpec::rectangle(0.2, 0.8, 5.5, 6.5)).count == 1);
    CHECK(throws_kind(ErrorKind::NonClosedLoop,
                      [&] { argument_principle_count(zeta, PathSpec{{cplx(2.0, 0.0), cplx(3.0, 1.0)}}); }));
}
