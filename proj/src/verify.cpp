#include "polydet/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "polydet/determinants.hpp"
#include "polydet/errors.hpp"
#include "polydet/fields.hpp"
#include "polydet/l_functions.hpp"
#include "polydet/poly_l.hpp"
#include "polydet/report.hpp"
#include "polydet/special_functions.hpp"
#include "polydet/zero_data.hpp"

namespace polydet {

bool SuiteResult::passed() const {
    if (!error.empty() || checks.empty()) return false;
    if (time_limit > 0.0 && seconds > time_limit) return false;
    return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.passed; });
}

double SuiteResult::max_residual() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, c.residual);
    return m;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"special", "ladder",   "theorem",   "deninger",
                                                   "explicit", "zeros", "monodromy", "continuation"};
    return names;
}

namespace {

std::string fmt(cplx z) {
    std::ostringstream os;
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

void check(SuiteResult& out, std::string label, double residual, double tol) {
    out.checks.push_back({std::move(label), residual, tol, std::isfinite(residual) && residual <= tol});
}

HeckeCharacter zeta_q() { return HeckeCharacter::trivial(NumberField::rational()); }
HeckeCharacter chi_m4() { return parse_character(NumberField::rational(), "dirichlet:4:3"); }
HeckeCharacter zeta_qi() { return HeckeCharacter::trivial(NumberField::quadratic(-1)); }
HeckeCharacter zeta_q5() { return HeckeCharacter::trivial(NumberField::quadratic(5)); }

double relative(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// ------------------------------------------------------------- suites

void suite_special(SuiteResult& out, const EvalConfig& cfg, const std::string&) {
    out.title = "Lerch and Bernoulli identities on the z grid";
    out.time_limit = 5.0;
    const std::vector<double> re = {0.1, 0.25, 0.5, 1.0, 1.7, 2.5, 4.0, 6.0, 8.0, 10.0};
    const std::vector<double> im = {-10.0, -6.0, -3.0, -1.0, -0.3, 0.0, 0.3, 1.0, 3.0, 6.0, 10.0};
    double lerch = 0.0, link = 0.0;
    for (double x : re) {
        for (double y : im) {
            const cplx z(x, y);
            lerch = std::max(lerch, std::abs(hurwitz_zeta_ds(0.0, z, cfg) - (log_gamma(z) - 0.5 * kLogTwoPi)));
            for (int r = 1; r <= 6; ++r) {
                const cplx b = bernoulli_poly(r, z) / static_cast<double>(r);
                const cplx h = hurwitz_zeta(cplx(1.0 - r, 0.0), z, cfg);
                link = std::max(link, std::abs(h + b) / std::max(1.0, std::abs(b)));
            }
        }
    }
    check(out, "Lerch |zeta'(0,z) - log(Gamma(z)/sqrt(2 pi))|", lerch, 1e-10);
    check(out, "Bernoulli |zeta(1-r,z) + B_r(z)/r| / max(1,|B_r/r|), r=1..6", link, 1e-10);
}

void suite_ladder(SuiteResult& out, const EvalConfig& cfg, const std::string&) {
    out.title = "ladder identity by central finite differences";
    out.time_limit = 30.0;
    const std::vector<std::pair<std::string, HeckeCharacter>> chars = {{"Q trivial", zeta_q()},
                                                                        {"Q chi_-4", chi_m4()}};
    for (const auto& [name, chi] : chars) {
        double r2 = 0.0, r3 = 0.0;
        for (int k = 0; k < 10; ++k) {
            const cplx s(2.2 + 0.2 * k, 0.0);
            r2 = std::max(r2, poly_l_ladder_residual(chi, 2, s, 1e-3, cfg).residual);
            r3 = std::max(r3, poly_l_ladder_residual(chi, 3, s, 1e-2, cfg).residual);
        }
        check(out, name + " r=2 h=1e-3, 10 points in [2.2,4]", r2, 1e-5);
        check(out, name + " r=3 h=1e-2, 10 points in [2.2,4]", r3, 1e-4);
    }
}

void suite_theorem(SuiteResult& out, const EvalConfig& cfg, const std::string&) {
    out.title = "closed form vs numeric s-derivative of xi";
    out.time_limit = 300.0;
    const std::vector<std::pair<std::string, HeckeCharacter>> chars = {
        {"Q trivial", zeta_q()}, {"Q chi_-4", chi_m4()}, {"Q(i) trivial", zeta_qi()}};
    const std::vector<cplx> zs = {2.0, 3.0, cplx(2.5, 1.5)};
    for (const auto& [name, chi] : chars) {
        for (int r = 1; r <= 3; ++r) {
            for (cplx z : zs) {
                const cplx closed = determinant_closed(chi, r, z, cfg).value;
                const cplx numeric = determinant_numeric(chi, r, z, cfg).value;
                check(out, name + " r=" + std::to_string(r) + " z=" + fmt(z), relative(numeric, closed), 1e-6);
            }
        }
    }
}

void suite_deninger(SuiteResult& out, const EvalConfig& cfg, const std::string&) {
    out.title = "depth-one determinant vs regularized product of Lambda";
    out.time_limit = 30.0;
    const std::vector<std::pair<std::string, HeckeCharacter>> chars = {
        {"Q trivial", zeta_q()}, {"Q(i) trivial", zeta_qi()}, {"Q(sqrt5) trivial", zeta_q5()}, {"Q chi_-4", chi_m4()}};
    for (const auto& [name, chi] : chars) {
        double worst = 0.0;
        for (int k = 0; k <= 5; ++k) {
            const cplx z(1.5 + 0.5 * k, 0.0);
            const cplx closed = determinant_closed(chi, 1, z, cfg).value;
            const cplx lambda = completed_lambda(chi, z, cfg);
            worst = std::max(worst, std::abs(closed - regularized_product(chi, z, cfg)) / std::abs(lambda));
        }
        check(out, name + " z=1.5..4 step 0.5, relative to |Lambda|", worst, 1e-9);
    }
    const double expected = 1.0 / (6.0 * std::pow(2.0, 1.5) * kPi);
    check(out, "Q trivial z=2 equals 1/(6 2^{3/2} pi)",
          std::abs(determinant_closed(zeta_q(), 1, 2.0, cfg).value - expected), 1e-9);
}

void suite_explicit(SuiteResult& out, const EvalConfig& cfg, const std::string& data_dir) {
    out.title = "zero sum vs Hankel contour formula for zeta";
    out.time_limit = 120.0;
    const ZeroTable table = load_zeros(data_dir + "/zeta_zeros_100.txt");
    const HeckeCharacter chi = zeta_q();
    const std::vector<std::pair<cplx, cplx>> points = {{2.0, 2.0}, {3.0, 2.0}, {2.5, 3.0}};
    for (const auto& [s, z] : points) {
        const XiValue hankel = xi_hankel(chi, s, z, {}, cfg);
        double gaps[3];
        const std::size_t counts[3] = {25, 50, 100};
        for (int i = 0; i < 3; ++i) {
            const XiValue sum = xi_zero_sum(chi, s, z, table.prefix(counts[i]));
            gaps[i] = std::abs(sum.value - hankel.value);
            if (counts[i] == 100) {
                const double budget = sum.error_estimate + hankel.error_estimate;
                check(out, "(s,z)=(" + fmt(s) + "," + fmt(z) + ") gap within tail + quadrature", gaps[i], budget);
            }
        }
        const bool shrinking = gaps[0] > gaps[1] && gaps[1] > gaps[2];
        out.checks.push_back({"(s,z)=(" + fmt(s) + "," + fmt(z) + ") gap shrinks 25 -> 50 -> 100", gaps[2],
                              gaps[1], shrinking});
    }
}

void suite_zeros(SuiteResult& out, const EvalConfig& cfg, const std::string& data_dir) {
    out.title = "zero finder vs reference ordinates and Dedekind factorization";
    out.time_limit = 120.0;
    const ZeroTable found = find_zeros(zeta_q(), 30.0, cfg);
    const ZeroTable reference = load_zeros(data_dir + "/zeta_zeros_100.txt");
    const double quoted[3] = {14.134725, 21.022040, 25.010858};
    double vs_quoted = found.size() == 3 ? 0.0 : INFINITY;
    double vs_file = vs_quoted;
    for (std::size_t k = 0; k < std::min<std::size_t>(3, found.size()); ++k) {
        vs_quoted = std::max(vs_quoted, std::abs(found.ordinates[k] - quoted[k]));
        vs_file = std::max(vs_file, std::abs(found.ordinates[k] - reference.ordinates[k]));
    }
    check(out, "zeta ordinates below 30 vs 14.134725, 21.022040, 25.010858", vs_quoted, 1e-6);
    check(out, "zeta ordinates below 30 vs reference file", vs_file, 1e-6);

    const ZeroTable dedekind = find_zeros(zeta_qi(), 15.0, cfg);
    std::vector<double> product = find_zeros(zeta_q(), 15.0, cfg).ordinates;
    const std::vector<double> dirichlet = find_zeros(chi_m4(), 15.0, cfg).ordinates;
    product.insert(product.end(), dirichlet.begin(), dirichlet.end());
    std::sort(product.begin(), product.end());
    double diff = product.size() == dedekind.size() && !product.empty() ? 0.0 : INFINITY;
    for (std::size_t k = 0; std::isfinite(diff) && k < product.size(); ++k)
        diff = std::max(diff, std::abs(product[k] - dedekind.ordinates[k]));
    check(out, "zeros of zeta_Q(i) below 15 = zeros of zeta and L(chi_-4)", diff, 1e-8);
}

void suite_monodromy(SuiteResult& out, const EvalConfig& cfg, const std::string&) {
    out.title = "argument principle and monodromy defect";
    out.time_limit = 120.0;
    const HeckeCharacter chi = zeta_q();
    const ArgumentCount count = argument_principle_count(chi, PathSpec::rectangle(0.2, 0.8, 13.0, 15.0), cfg);
    check(out, "zeros in [0.2,0.8]x[13,15]i, |count - 1|", std::abs(count.raw - 1.0), 0.01);

    const PathSpec strip = PathSpec::rectangle(0.6, 0.9, -30.0, 30.0);
    check(out, "defect on [0.6,0.9]x[-30,30]i", std::abs(erh_monodromy_defect(chi, strip, cfg).defect), 1e-6);

    const cplx planted(0.7, 5.0);
    const cplx oracle = cplx(0.0, kTwoPi) * (planted - strip.start());
    const MonodromyResult model = monodromy_defect_of([&](cplx xi) { return xi - planted; }, strip, cfg);
    check(out, "planted zero xi - rho*: defect vs 2 pi i (rho* - base)", std::abs(model.defect - oracle), 1e-6);
    const MonodromyResult seeded = monodromy_defect_of(
        [&](cplx xi) { return (xi - planted) * l_value_regularized(chi, xi, cfg).value; }, strip, cfg);
    check(out, "planted zero times (xi-1) zeta(xi): same oracle", std::abs(seeded.defect - oracle), 1e-6);
}

void suite_continuation(SuiteResult& out, const EvalConfig& cfg, const std::string&) {
    out.title = "continued L^(r) vs Euler product, two paths per point";
    out.time_limit = 300.0;
    const std::vector<std::pair<std::string, HeckeCharacter>> chars = {{"Q trivial", zeta_q()},
                                                                        {"Q chi_-4", chi_m4()}};
    const std::vector<cplx> points = {1.75, cplx(2.0, 1.0), cplx(2.5, -0.7), cplx(3.2, 0.4), 4.0};
    const cplx a = 3.0;
    for (const auto& [name, chi] : chars) {
        for (int r = 2; r <= 3; ++r) {
            double vs_euler = 0.0, vs_path = 0.0;
            for (cplx s : points) {
                const cplx bend(0.5 * (s.real() + a.real()), s.imag() + 0.8);
                const PathSpec straight = PathSpec::segment(a, s);
                const PathSpec dogleg{{a, bend, s}};
                const cplx euler = poly_l_euler(chi, r, s, cfg).value;
                const cplx v1 = poly_l_continued(chi, r, straight, cfg).value;
                const cplx v2 = poly_l_continued(chi, r, dogleg, cfg).value;
                vs_euler = std::max({vs_euler, std::abs(v1 - euler), std::abs(v2 - euler)});
                vs_path = std::max(vs_path, std::abs(v1 - v2));
            }
            check(out, name + " r=" + std::to_string(r) + " continued vs Euler", vs_euler, 1e-7);
            check(out, name + " r=" + std::to_string(r) + " straight vs dogleg path", vs_path, 1e-7);
        }
    }
}

using SuiteFn = void (*)(SuiteResult&, const EvalConfig&, const std::string&);

}  // namespace

SuiteResult run_suite(const std::string& name, const EvalConfig& cfg, const std::string& data_dir) {
    static const std::map<std::string, std::pair<int, SuiteFn>> table = {
        {"special", {1, suite_special}},     {"ladder", {2, suite_ladder}},   {"theorem", {3, suite_theorem}},
        {"deninger", {4, suite_deninger}},   {"explicit", {5, suite_explicit}}, {"zeros", {6, suite_zeros}},
        {"monodromy", {7, suite_monodromy}}, {"continuation", {8, suite_continuation}}};
    const auto it = table.find(name);
    if (it == table.end()) fail(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
    SuiteResult out;
    out.name = name;
    out.criterion = it->second.first;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        it->second.second(out, cfg, data_dir);
    } catch (const Error& e) {
        out.error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace polydet
