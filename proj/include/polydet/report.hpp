#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "polydet/special_functions.hpp"

namespace polydet {

/// One output row: {inputs, route, value_re, value_im, error_estimate, config_hash}.
struct Record {
    std::map<std::string, std::string> inputs;
    std::string route;
    cplx value;
    double error_estimate = 0.0;
    std::string config_hash;
};

enum class OutputFormat { table, json, csv };
OutputFormat parse_format(const std::string& name);
std::string to_string(OutputFormat format);

std::string record_to_json(const Record& rec);
Record record_from_json(const std::string& text);

/// Emits the records in the requested format. JSON is one array, CSV has a header
/// and flattens inputs as "key=value;..." in one column.
void write_records(std::ostream& out, const std::vector<Record>& records, OutputFormat format);

/// Everything needed to replay a CLI run.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> parameters;
    std::map<std::string, std::string> config;
    OutputFormat format = OutputFormat::table;

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);
    bool operator==(const RunManifest&) const = default;
};

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace polydet
