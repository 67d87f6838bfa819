#include <doctest.h>

#include <cmath>

#include "polydet/errors.hpp"
#include "polydet/poly_l.hpp"

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

EvalConfig with_bound(long x) {
    EvalConfig cfg;
    cfg.prime_bound = x;
    return cfg;
}

}  // namespace

TEST_CASE("depth one is the L-function") {
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    const PolyLResult r1 = poly_l_euler(zeta, 1, 2.0, with_bound(1'000'000));
    CHECK(r1.prime_bound_used == 1'000'000);
    CHECK(std::abs(r1.value - kPi * kPi / 6.0) <= r1.tail_bound);
    CHECK(r1.tail_bound < 1e-5);
    const HeckeCharacter m4 = parse_character(kQ, "dirichlet:4:3");
    const PolyLResult c = poly_l_euler(m4, 1, cplx(2.0, 3.0), with_bound(1'000'000));
    CHECK(std::abs(c.log_value - std::log(l_value(m4, cplx(2.0, 3.0)))) <= c.log_tail_bound);
    CHECK(throws_kind(ErrorKind::DomainError, [&] { poly_l_euler(zeta, 2, 0.9); }));
}

TEST_CASE("far right half-plane") {
    // only p = 2, 3 matter at Re s = 20
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    const cplx s(20.0, 1.0);
    for (int r : {1, 2, 3, 5}) {
        const PolyLResult v = poly_l_euler(zeta, r, s, with_bound(100'000));
        cplx expect = 0.0;
        for (double p : {2.0, 3.0}) expect += std::pow(std::log(p), 1 - r) * polylog(r, std::pow(p, -s));
        CHECK(std::abs(v.log_value - expect) < 2.0 * std::pow(5.0, -20.0));
    }
}

TEST_CASE("prime bound refinement within the tail") {
    const HeckeCharacter m4 = parse_character(kQ, "dirichlet:4:3");
    for (int r : {2, 3}) {
        const cplx s(1.6, 2.0);
        const PolyLResult lo = poly_l_euler(m4, r, s, with_bound(100'000));
        const PolyLResult hi = poly_l_euler(m4, r, s, with_bound(1'000'000));
        CHECK(std::abs(lo.log_value - hi.log_value) <= lo.log_tail_bound);
        CHECK(hi.log_tail_bound < lo.log_tail_bound);
    }
    // the unweighted product differs from the weighted one for r > 1
    const PolyLResult t = poly_l_tilde(m4, 2, 2.5, with_bound(100'000));
    const PolyLResult w = poly_l_euler(m4, 2, 2.5, with_bound(100'000));
    CHECK(std::abs(t.log_value - w.log_value) > 1e-3);
    CHECK(std::abs(poly_l_tilde(m4, 1, 2.5, with_bound(100'000)).log_value - poly_l_euler(m4, 1, 2.5, with_bound(100'000)).log_value) < 1e-14);
}

TEST_CASE("ladder relations") {
    const EvalConfig cfg = with_bound(1'000'000);
    for (const char* spec : {"trivial", "dirichlet:4:3"}) {
        const HeckeCharacter chi = parse_character(kQ, spec);
        for (int r : {2, 3}) {
            const LadderResidual lad = poly_l_ladder_residual(chi, r, cplx(2.5, 1.0), 1e-2, cfg);
            CHECK(lad.residual <= lad.estimate);
            const LadderResidual step = poly_l_step_residual(chi, r, cplx(2.5, 1.0), 1e-3, cfg);
            CHECK(step.residual <= step.estimate);
            CHECK(step.residual < 1e-5);
        }
    }
}

TEST_CASE("continuation by parts") {
    const EvalConfig cfg = with_bound(1'000'000);
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    // a one-point path returns the Euler value at the anchor
    const ContinuedValue at = poly_l_continued(zeta, 2, PathSpec{{cplx(3.0, 0.0)}}, cfg);
    CHECK(std::abs(at.log_value - poly_l_euler(zeta, 2, 3.0, cfg).log_value) < 1e-14);

    // inside Re s > 1 both routes are available; the Euler tail limits agreement
    const EvalConfig big = with_bound(10'000'000);
    for (int r : {2, 3}) {
        const ContinuedValue c = poly_l_continued(zeta, r, PathSpec{{cplx(3.0, 0.0), cplx(1.5, 0.0)}}, big);
        const PolyLResult e = poly_l_euler(zeta, r, 1.5, big);
        CHECK(std::abs(c.log_value - e.log_value) <= e.log_tail_bound + c.quad_error + 1e-10);
        CHECK(c.membership == Membership::inside);
    }

    // left of Re s = 1 the value is path independent inside the region
    const HeckeCharacter m4 = parse_character(kQ, "dirichlet:4:3");
    for (int r : {2, 3}) {
        const ContinuedValue straight = poly_l_continued(m4, r, PathSpec{{cplx(3.0, 0.0), cplx(0.8, 0.0)}}, big);
        const ContinuedValue dogleg =
            poly_l_continued(m4, r, PathSpec{{cplx(3.0, 0.0), cplx(3.0, 2.0), cplx(0.8, 2.0), cplx(0.8, 0.0)}}, big);
        CHECK(std::abs(straight.log_value - dogleg.log_value) < 1e-7);
        CHECK(straight.membership == Membership::unverifiable);
    }

    CHECK(throws_kind(ErrorKind::InvalidArgument,
                      [&] { poly_l_continued(zeta, 2, PathSpec{{cplx(0.5, 0.0), cplx(3.0, 0.0)}}, cfg); }));
    CHECK(throws_kind(ErrorKind::PathLeavesOmega,
                      [&] { poly_l_continued(zeta, 2, PathSpec{{cplx(3.0, 0.0), cplx(3.0, 1.0), cplx(-3.0, 1.0), cplx(-3.0, -0.0001)}}, cfg); }));
}

TEST_CASE("monodromy") {
    const HeckeCharacter zeta = HeckeCharacter::trivial(kQ);
    const MonodromyResult quiet = erh_monodromy_defect(zeta, PathSpec::circle(2.0, 0.5));
    CHECK(std::abs(quiet.defect) < 1e-9);
    // the zero at 1/2 + 14.13i produces 2 pi i (rho - b)
    const PathSpec loop = PathSpec::rectangle(0.2, 0.8, 13.0, 15.0);
    const cplx rho(0.5, 14.134725141734693);
    const MonodromyResult one = erh_monodromy_defect(zeta, loop);
    CHECK(std::abs(one.defect - cplx(0.0, kTwoPi) * (rho - loop.start())) < 1e-7);

    const cplx planted(0.37, 0.21);
    const PathSpec box = PathSpec::rectangle(0.0, 1.0, -0.5, 0.5);
    const MonodromyResult p = monodromy_defect_of([&](cplx x) { return x - planted; }, box);
    CHECK(std::abs(p.defect - cplx(0.0, kTwoPi) * (planted - box.start())) < 1e-10);

    CHECK(throws_kind(ErrorKind::NonClosedLoop,
                      [&] { erh_monodromy_defect(zeta, PathSpec{{cplx(2.0, 0.0), cplx(3.0, 0.0)}}); }));
    // (s - 1) zeta(s) is entire and zero free near s = 1
    CHECK(std::abs(erh_monodromy_defect(zeta, PathSpec::circle(1.0, 0.5)).defect) < 1e-9);
    CHECK(throws_kind(ErrorKind::InvalidArgument,
                      [&] { erh_monodromy_defect(zeta, PathSpec::rectangle(0.5, 1.02, -0.5, 0.5)); }));
    EvalConfig shallow;
    shallow.quad_max_depth = 2;
    CHECK(throws_kind(ErrorKind::BranchStepTooLarge, [&] {
        monodromy_defect_of([](cplx x) { return std::exp(cplx(0.0, 1e4) * x); }, box, shallow);
    }));
}
