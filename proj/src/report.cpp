#include "polydet/report.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "polydet/errors.hpp"

namespace polydet {

using nlohmann::json;

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

OutputFormat parse_format(const std::string& name) {
    if (name == "table") return OutputFormat::table;
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    fail(ErrorKind::InvalidArgument, "unknown output format '" + name + "'");
}

std::string to_string(OutputFormat format) {
    switch (format) {
        case OutputFormat::table: return "table";
        case OutputFormat::json: return "json";
        case OutputFormat::csv: return "csv";
    }
    return "table";
}

namespace {

// JSON has no inf/nan; those go out as strings.
json number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

double read_number(const json& j) {
    if (j.is_number()) return j.get<double>();
    const std::string s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    return NAN;
}

json to_json_obj(const Record& rec) {
    return json{{"inputs", rec.inputs},           {"route", rec.route},
                {"value_re", number(rec.value.real())}, {"value_im", number(rec.value.imag())},
                {"error_estimate", number(rec.error_estimate)}, {"config_hash", rec.config_hash}};
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string record_to_json(const Record& rec) { return to_json_obj(rec).dump(); }

Record record_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        Record rec;
        rec.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
        rec.route = j.at("route").get<std::string>();
        rec.value = cplx(read_number(j.at("value_re")), read_number(j.at("value_im")));
        rec.error_estimate = read_number(j.at("error_estimate"));
        rec.config_hash = j.at("config_hash").get<std::string>();
        return rec;
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("bad record: ") + e.what());
    }
}

void write_records(std::ostream& out, const std::vector<Record>& records, OutputFormat format) {
    switch (format) {
        case OutputFormat::json: {
            json arr = json::array();
            for (const auto& r : records) arr.push_back(to_json_obj(r));
            out << arr.dump(2) << "\n";
            return;
        }
        case OutputFormat::csv: {
            out << "inputs,route,value_re,value_im,error_estimate,config_hash\n";
            for (const auto& r : records) {
                std::string inputs;
                for (const auto& [k, v] : r.inputs) inputs += (inputs.empty() ? "" : ";") + k + "=" + v;
                out << csv_escape(inputs) << ',' << csv_escape(r.route) << ',' << format_double(r.value.real()) << ','
                    << format_double(r.value.imag()) << ',' << format_double(r.error_estimate) << ','
                    << r.config_hash << "\n";
            }
            return;
        }
        case OutputFormat::table: {
            for (const auto& r : records) {
                std::string inputs;
                for (const auto& [k, v] : r.inputs) inputs += (inputs.empty() ? "" : " ") + k + "=" + v;
                out << std::left << std::setw(10) << r.route << ' ' << std::setw(44) << inputs << ' '
                    << std::right << std::setprecision(15) << std::setw(24) << r.value.real() << ' ' << std::setw(24)
                    << r.value.imag() << "  err " << std::setprecision(3) << r.error_estimate << "\n";
            }
            return;
        }
    }
}

std::string RunManifest::to_json() const {
    return json{{"subcommand", subcommand},
                {"parameters", parameters},
                {"config", config},
                {"format", polydet::to_string(format)}}
        .dump();
}

RunManifest RunManifest::from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        RunManifest m;
        m.subcommand = j.at("subcommand").get<std::string>();
        m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
        m.config = j.at("config").get<std::map<std::string, std::string>>();
        m.format = parse_format(j.at("format").get<std::string>());
        return m;
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("bad manifest: ") + e.what());
    }
}

}  // namespace polydet
