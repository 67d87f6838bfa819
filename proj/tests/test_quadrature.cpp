#include <doctest.h>

#include <cmath>

#include "polydet/errors.hpp"
#include "polydet/quadrature.hpp"

using namespace polydet;

TEST_CASE("gauss-legendre 32 is exact for degree 63") {
    const auto& gl = gauss_legendre_32();
    double wsum = 0.0;
    for (double w : gl.weights) wsum += w;
    CHECK(std::abs(wsum - 2.0) < 1e-14);
    for (int i = 1; i < 32; ++i) CHECK(gl.nodes[i] > gl.nodes[i - 1]);
    // int_0^1 x^62 dx
    const double v = gauss_panel([](double x) { return std::pow(x, 62); }, 0.0, 1.0);
    CHECK(std::abs(v - 1.0 / 63.0) < 1e-15);
}

TEST_CASE("path integrals") {
    EvalConfig cfg;
    // Cauchy: oint dz / (z - c) = 2 pi i for c inside, 0 outside
    const PathSpec loop = PathSpec::rectangle(-1.0, 2.0, -1.5, 1.0);
    CHECK(loop.is_closed());
    const QuadResult in = integrate_path([](cplx z) { return 1.0 / (z - cplx(0.3, 0.2)); }, loop, cfg);
    CHECK(std::abs(in.value - cplx(0.0, kTwoPi)) < 1e-11);
    const QuadResult out = integrate_path([](cplx z) { return 1.0 / (z - cplx(3.0, 0.2)); }, loop, cfg);
    CHECK(std::abs(out.value) < 1e-11);

    // antiderivative along an open polygon
    const PathSpec p{{cplx(0.0, 0.0), cplx(1.0, 2.0), cplx(-0.5, 3.0)}};
    const QuadResult e = integrate_path([](cplx z) { return std::exp(z); }, p, cfg);
    CHECK(std::abs(e.value - (std::exp(cplx(-0.5, 3.0)) - 1.0)) < 1e-12);
}

TEST_CASE("adaptive refinement near a singularity") {
    // int_0^1 dx / (x + 1e-3) = log(1001 / 1)
    const QuadResult r = integrate_segment([](cplx x) { return 1.0 / (x + 1e-3); }, 0.0, 1.0, 1e-12, 30);
    CHECK(std::abs(r.value - std::log(1001.0)) < 1e-10);
    CHECK(r.evaluations > 32 * 4);
}

TEST_CASE("path validation") {
    const PathSpec bad{{cplx(1.0, 0.0), cplx(1.0, 0.0)}};
    CHECK_THROWS_AS(bad.validate(), Error);
    CHECK_THROWS_AS(PathSpec::rectangle(1.0, 0.0, 0.0, 1.0), Error);
    const PathSpec c = PathSpec::circle(2.0, 0.5);
    CHECK(c.is_closed());
    CHECK(std::abs(c.length() - 64.0 * 2.0 * 0.5 * std::sin(kPi / 64.0)) < 1e-12);
}

TEST_CASE("panel doubling") {
    const QuadResult r = doubling_real([](double x) { return cplx(std::cos(x), std::sin(3 * x)); }, 0.0, 10.0, 2, 6, 1e-13);
    CHECK(std::abs(r.value - cplx(std::sin(10.0), (1.0 - std::cos(30.0)) / 3.0)) < 1e-12);
}
