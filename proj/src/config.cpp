#include "polydet/config.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "polydet/errors.hpp"

namespace polydet {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::PoleAtOne: return "PoleAtOne";
        case ErrorKind::GammaPole: return "GammaPole";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::UnsupportedCharacter: return "UnsupportedCharacter";
        case ErrorKind::NearZeroOfL: return "NearZeroOfL";
        case ErrorKind::PathLeavesOmega: return "PathLeavesOmega";
        case ErrorKind::BranchStepTooLarge: return "BranchStepTooLarge";
        case ErrorKind::NonClosedLoop: return "NonClosedLoop";
        case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
        case ErrorKind::DegenerateSample: return "DegenerateSample";
        case ErrorKind::StencilLeavesDomain: return "StencilLeavesDomain";
        case ErrorKind::ContourInvalid: return "ContourInvalid";
        case ErrorKind::EmptyZeroTable: return "EmptyZeroTable";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::NonMonotoneError: return "NonMonotoneError";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
    }
    return "Unknown";
}

void EvalConfig::validate() const {
    if (!(target_abs_error > 0)) fail(ErrorKind::InvalidArgument, "target_abs_error must be positive");
    if (euler_maclaurin_shift < 1 || bernoulli_terms < 1 || series_max_terms < 1)
        fail(ErrorKind::InvalidArgument, "series counts must be >= 1");
    if (bernoulli_terms > 60) fail(ErrorKind::InvalidArgument, "bernoulli_terms is capped at 60");
    if (prime_bound < 2) fail(ErrorKind::InvalidArgument, "prime_bound must be >= 2");
    if (!(quad_tolerance > 0) || quad_max_depth < 1 || !(path_steps_per_unit > 0))
        fail(ErrorKind::InvalidArgument, "invalid quadrature settings");
    if (!(hankel_delta_fraction > 0 && hankel_delta_fraction < 1) || hankel_max_doublings < 1)
        fail(ErrorKind::InvalidArgument, "invalid Hankel settings");
}

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail(ErrorKind::InvalidArgument, "config key '" + key + "' expects a number, got '" + v + "'");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    double d = parse_double(key, v);
    if (d != static_cast<double>(static_cast<long>(d)))
        fail(ErrorKind::InvalidArgument, "config key '" + key + "' expects an integer");
    return static_cast<long>(d);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> EvalConfig::to_map() const {
    return {
        {"target_abs_error", fmt_double(target_abs_error)},
        {"euler_maclaurin_shift", std::to_string(euler_maclaurin_shift)},
        {"bernoulli_terms", std::to_string(bernoulli_terms)},
        {"series_max_terms", std::to_string(series_max_terms)},
        {"prime_bound", std::to_string(prime_bound)},
        {"quad_tolerance", fmt_double(quad_tolerance)},
        {"quad_max_depth", std::to_string(quad_max_depth)},
        {"path_steps_per_unit", fmt_double(path_steps_per_unit)},
        {"hankel_delta_fraction", fmt_double(hankel_delta_fraction)},
        {"hankel_max_doublings", std::to_string(hankel_max_doublings)},
    };
}

void EvalConfig::apply(const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "target_abs_error") target_abs_error = parse_double(key, value);
        else if (key == "euler_maclaurin_shift") euler_maclaurin_shift = static_cast<int>(parse_long(key, value));
        else if (key == "bernoulli_terms") bernoulli_terms = static_cast<int>(parse_long(key, value));
        else if (key == "series_max_terms") series_max_terms = static_cast<int>(parse_long(key, value));
        else if (key == "prime_bound") prime_bound = parse_long(key, value);
        else if (key == "quad_tolerance") quad_tolerance = parse_double(key, value);
        else if (key == "quad_max_depth") quad_max_depth = static_cast<int>(parse_long(key, value));
        else if (key == "path_steps_per_unit") path_steps_per_unit = parse_double(key, value);
        else if (key == "hankel_delta_fraction") hankel_delta_fraction = parse_double(key, value);
        else if (key == "hankel_max_doublings") hankel_max_doublings = static_cast<int>(parse_long(key, value));
        else fail(ErrorKind::InvalidArgument, "unknown config key '" + key + "'");
    }
    validate();
}

std::string EvalConfig::hash() const {
    std::uint64_t h = 14695981039346656037ull;
    for (const auto& [key, value] : to_map()) {
        for (char c : key + "=" + value + "\n") {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": expected key=value");
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

}  // namespace polydet
