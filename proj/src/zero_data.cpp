#include "polydet/zero_data.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "polydet/errors.hpp"
#include "polydet/l_functions.hpp"

namespace polydet {

// ---------------------------------------------------------------- table

std::vector<std::complex<double>> ZeroTable::zeros() const {
    std::vector<std::complex<double>> out;
    out.reserve(2 * ordinates.size());
    for (std::size_t k = 0; k < ordinates.size(); ++k) {
        const int mult = multiplicities.empty() ? 1 : multiplicities[k];
        for (int j = 0; j < mult; ++j) {
            out.emplace_back(0.5, ordinates[k]);
            out.emplace_back(0.5, -ordinates[k]);
        }
    }
    return out;
}

ZeroTable ZeroTable::prefix(std::size_t k) const {
    if (k == 0 || k > ordinates.size()) fail(ErrorKind::InvalidArgument, "zero table prefix out of range");
    ZeroTable out = *this;
    out.ordinates.resize(k);
    if (!out.multiplicities.empty()) out.multiplicities.resize(k);
    out.completeness_height = ordinates[k - 1];
    out.source_id = source_id + "[:" + std::to_string(k) + "]";
    return out;
}

void ZeroTable::validate() const {
    if (ordinates.empty()) fail(ErrorKind::EmptyZeroTable, "zero table has no ordinates");
    if (!multiplicities.empty() && multiplicities.size() != ordinates.size())
        fail(ErrorKind::InvalidArgument, "multiplicity column length mismatch");
    for (std::size_t k = 0; k < ordinates.size(); ++k) {
        if (!(ordinates[k] > 0.0)) fail(ErrorKind::InvalidArgument, "ordinates must be positive");
        if (k > 0 && !(ordinates[k] > ordinates[k - 1]))
            fail(ErrorKind::NonMonotoneError, "ordinates are not strictly increasing at entry " + std::to_string(k + 1));
        if (!multiplicities.empty() && multiplicities[k] < 1)
            fail(ErrorKind::InvalidArgument, "multiplicities must be positive");
    }
    if (!(completeness_height > 0.0)) fail(ErrorKind::InvalidArgument, "completeness height must be positive");
}

// --------------------------------------------------------------- text io

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& tok, int line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || !std::isfinite(v))
        fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": cannot parse '" + tok + "'");
    return v;
}

}  // namespace

ZeroTable parse_zeros(std::istream& in, const std::string& source_id) {
    ZeroTable table;
    table.source_id = source_id;
    bool have_height = false, any_mult = false;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("height:", 0) == 0) {
            if (have_height || !table.ordinates.empty())
                fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": misplaced height header");
            table.completeness_height = parse_number(trim(line.substr(7)), line_no);
            have_height = true;
            continue;
        }
        std::istringstream fields(line);
        std::string a, b, extra;
        fields >> a >> b >> extra;
        if (!extra.empty())
            fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": too many columns");
        const double gamma = parse_number(a, line_no);
        if (!(gamma > 0.0))
            fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": ordinate must be positive");
        int mult = 1;
        if (!b.empty()) {
            const double m = parse_number(b, line_no);
            if (m < 1.0 || m != std::floor(m))
                fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad multiplicity");
            mult = static_cast<int>(m);
            any_mult = true;
        }
        if (!table.ordinates.empty() && !(gamma > table.ordinates.back()))
            fail(ErrorKind::NonMonotoneError, "line " + std::to_string(line_no) + ": ordinate " + a +
                                                  " does not exceed the previous one");
        table.ordinates.push_back(gamma);
        table.multiplicities.push_back(mult);
    }
    if (table.ordinates.empty()) fail(ErrorKind::EmptyZeroTable, "no ordinates in " + source_id);
    if (!any_mult) table.multiplicities.clear();
    if (!have_height) table.completeness_height = table.ordinates.back();
    table.validate();
    return table;
}

ZeroTable load_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot open zeros file " + path);
    return parse_zeros(in, path);
}

void export_zeros(const ZeroTable& table, std::ostream& out) {
    table.validate();
    out << "# " << table.source_id << "\n";
    out << "height: " << std::setprecision(17) << table.completeness_height << "\n";
    for (std::size_t k = 0; k < table.ordinates.size(); ++k) {
        out << std::setprecision(17) << table.ordinates[k];
        if (!table.multiplicities.empty()) out << ' ' << table.multiplicities[k];
        out << "\n";
    }
}

void export_zeros(const ZeroTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write zeros file " + path);
    export_zeros(table, out);
}

// ---------------------------------------------------------------- finder

ZeroTable find_zeros(const HeckeCharacter& chi, double height, const EvalConfig& cfg, double grid) {
    if (!chi.is_self_dual())
        fail(ErrorKind::UnsupportedCharacter, "zero scan needs a self-dual character");
    if (!(height > 0.0) || height > 50.0) fail(ErrorKind::InvalidArgument, "scan height must lie in (0, 50]");
    if (!(grid > 0.0)) fail(ErrorKind::InvalidArgument, "scan grid must be positive");

    const cplx rot = 1.0 / std::sqrt(root_number(chi, cplx(0.75, 1.25), cfg));
    auto z = [&](double t) { return (rot * completed_lambda(chi, cplx(0.5, t), cfg)).real(); };

    ZeroTable table;
    table.source_id = "scan:" + chi.label();
    table.completeness_height = height;
    const long steps = static_cast<long>(std::ceil(height / grid));
    double t_prev = 0.0, z_prev = 0.0;
    bool started = false;
    for (long k = 1; k <= steps; ++k) {
        const double t = std::min(height, k * grid);
        const double zt = z(t);
        if (started && (z_prev < 0.0) != (zt < 0.0)) {
            double lo = t_prev, hi = t, f_lo = z_prev;
            while (hi - lo > 1e-9 * 0.5) {
                const double mid = 0.5 * (lo + hi);
                const double f_mid = z(mid);
                if ((f_mid < 0.0) == (f_lo < 0.0)) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            table.ordinates.push_back(0.5 * (lo + hi));
        }
        t_prev = t;
        z_prev = zt;
        started = true;
    }
    return table;
}

double zero_count_estimate(const HeckeCharacter& chi, double height) {
    const auto& field = chi.field();
    const double scale = static_cast<double>(chi.conductor_norm()) * std::labs(field.discriminant()) /
                         (std::pow(4.0, field.r2()) * std::pow(kPi, field.degree()));
    auto theta = [&](double t) {
        double acc = 0.5 * t * std::log(scale);
        for (const auto& v : chi.arch()) {
            const cplx w = (static_cast<double>(v.n_v) * cplx(0.5, t + v.phi) + static_cast<double>(std::abs(v.m))) / 2.0;
            acc += log_gamma(w).imag();
        }
        return acc;
    };
    return (theta(height) - theta(0.0)) / kPi + chi.epsilon();
}

double truncation_tail_estimate(cplx s, cplx z, double height, const HeckeCharacter& chi) {
    const double sigma = s.real();
    if (!(sigma > 1.0)) fail(ErrorKind::DomainError, "tail estimate needs Re(s) > 1");
    if (!(z.real() > 1.0)) fail(ErrorKind::DomainError, "tail estimate needs Re(z) > 1");
    if (height < 10.0) fail(ErrorKind::InvalidArgument, "tail estimate needs T >= 10");
    const double c = std::abs(z.imag());
    const double u = height - c;
    if (!(u > 1.0)) fail(ErrorKind::InvalidArgument, "tail height too close to Im(z)");
    const double n = chi.field().degree();
    const double log_q = std::log(static_cast<double>(chi.conductor_norm()) * std::labs(chi.field().discriminant()));
    const double s1 = sigma - 1.0;
    const double pow_u = std::pow(u, -s1);
    const double integral = log_q * pow_u / s1 +
                            n * (pow_u * (std::log(u / kTwoPi) / s1 + 1.0 / (s1 * s1)) + c * std::pow(u, -sigma) / sigma);
    return 2.0 * std::pow(kTwoPi, sigma) / kPi * integral;
}

}  // namespace polydet
