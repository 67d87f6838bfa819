// polydet: command-line front end for the determinant library.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>

#include "polydet/determinants.hpp"
#include "polydet/errors.hpp"
#include "polydet/l_functions.hpp"
#include "polydet/poly_l.hpp"
#include "polydet/report.hpp"
#include "polydet/verify.hpp"
#include "polydet/zero_data.hpp"

using namespace polydet;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFailure = 1;

// "2", "-0.5", "2.5+1.5i", "3-i", "1e-3i".
cplx parse_complex(const std::string& text) {
    static const std::regex re(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i)?\s*$)");
    static const std::regex pure(R"(^\s*([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, pure)) {
        const double mag = m[2].matched ? std::stod(m[2]) : 1.0;
        return cplx(0.0, m[1] == "-" ? -mag : mag);
    }
    if (std::regex_match(text, m, re) && m[1].matched) {
        const double re_part = std::stod(m[1]);
        double im_part = 0.0;
        if (m[2].matched) {
            im_part = m[3].matched ? std::stod(m[3]) : 1.0;
            if (m[2] == "-") im_part = -im_part;
        }
        return cplx(re_part, im_part);
    }
    fail(ErrorKind::InvalidArgument, "cannot parse complex number '" + text + "'");
}

std::string show(cplx z) {
    std::string s = format_double(z.real());
    if (z.imag() != 0.0) s += (z.imag() < 0 ? "-" : "+") + format_double(std::abs(z.imag())) + "i";
    return s;
}

struct Options {
    std::string format = "table";
    std::string config_path;
    std::vector<std::string> config_sets;
    std::string manifest_out;
    long prime_bound = 0;

    std::string field = "Q";
    std::string character = "trivial";

    std::string fn;
    int r = 1;
    std::string s = "2";
    std::string z = "2";

    bool log_derivative = false, completed = false, root_number = false;

    bool continued = false, tilde = false;
    std::string anchor = "3";
    std::string path;

    std::string route = "hankel";
    std::string zeros_file;
    double delta = 0.0, cut_depth = 0.0;

    bool closed = false, numeric = false, both = false;

    bool find = false;
    double height = 30.0;
    std::string import_file, export_file;

    std::string suite = "all";
};

void add_character_options(CLI::App* app, Options& o) {
    app->add_option("--field", o.field, "Q or quad:<d>");
    app->add_option("--char", o.character, "trivial | kronecker[:D] | dirichlet:q:m | file:<path>");
}

EvalConfig build_config(const Options& o) {
    EvalConfig cfg;
    std::string path = o.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("POLYDET_CONFIG")) path = env;
    }
    if (!path.empty()) cfg.apply(read_config_file(path));
    std::map<std::string, std::string> flags;
    for (const auto& kv : o.config_sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) fail(ErrorKind::InvalidArgument, "--set expects key=value, got '" + kv + "'");
        flags[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (o.prime_bound > 0) flags["prime_bound"] = std::to_string(o.prime_bound);
    cfg.apply(flags);
    return cfg;
}

std::vector<cplx> parse_waypoints(const std::string& text) {
    std::vector<cplx> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find(';', start);
        const std::string tok = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!tok.empty()) out.push_back(parse_complex(tok));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

int run(const std::string& cmd, const Options& o, const EvalConfig& cfg, std::vector<Record>& records) {
    const std::string hash = cfg.hash();
    auto record = [&](std::map<std::string, std::string> inputs, std::string route, cplx value, double err) {
        records.push_back({std::move(inputs), std::move(route), value, err, hash});
    };

    if (cmd == "eval") {
        const cplx s = parse_complex(o.s), z = parse_complex(o.z);
        std::map<std::string, std::string> in = {{"fn", o.fn}, {"r", std::to_string(o.r)}, {"s", show(s)}, {"z", show(z)}};
        if (o.fn == "hurwitz") {
            const HurwitzEval h = hurwitz_euler_maclaurin(s, z, cfg, false);
            record(in, "euler_maclaurin", h.value, h.value_error);
        } else if (o.fn == "hurwitz-ds") {
            const HurwitzEval h = hurwitz_euler_maclaurin(s, z, cfg, true);
            record(in, "euler_maclaurin", h.derivative, h.derivative_error);
        } else if (o.fn == "milnor-gamma") {
            record(in, "euler_maclaurin", milnor_gamma(o.r, z, cfg), 0.0);
        } else if (o.fn == "polylog") {
            const SeriesValue v = polylog_series(o.r, z, cfg);
            record(in, "series", v.value, v.tail_bound);
        } else if (o.fn == "bernoulli") {
            record(in, "exact", bernoulli_poly(o.r, z), 0.0);
        } else if (o.fn == "log-gamma") {
            record(in, "stirling", log_gamma(z), 0.0);
        } else {
            fail(ErrorKind::InvalidArgument, "unknown --fn '" + o.fn + "'");
        }
        return 0;
    }

    const NumberField field = parse_field(o.field);
    const HeckeCharacter chi = parse_character(field, o.character);
    std::map<std::string, std::string> base = {{"field", field.label()}, {"char", chi.label()}};

    if (cmd == "lfun") {
        const cplx s = parse_complex(o.s);
        auto in = base;
        in["s"] = show(s);
        if (o.root_number) {
            record(in, "root_number", root_number(chi, cplx(0.75, 1.25), cfg), 1e-8);
        } else if (o.completed) {
            record(in, "completed", completed_lambda(chi, s, cfg), 0.0);
        } else if (o.log_derivative) {
            record(in, "log_derivative", l_log_derivative(chi, s, cfg), 0.0);
        } else {
            record(in, "hurwitz", l_value(chi, s, cfg), 0.0);
        }
        return 0;
    }

    if (cmd == "polyl") {
        const cplx s = parse_complex(o.s);
        auto in = base;
        in["r"] = std::to_string(o.r);
        in["s"] = show(s);
        in["prime_bound"] = std::to_string(cfg.prime_bound);
        if (o.continued) {
            const cplx a = parse_complex(o.anchor);
            PathSpec path;
            path.waypoints.push_back(a);
            for (cplx w : parse_waypoints(o.path)) path.waypoints.push_back(w);
            if (path.waypoints.back() != s) path.waypoints.push_back(s);
            in["anchor"] = show(a);
            const ContinuedValue v = poly_l_continued(chi, o.r, path, cfg);
            in["membership"] = v.membership == Membership::inside ? "inside" : "unverifiable";
            record(in, "continued", v.value, std::abs(v.value) * v.quad_error);
        } else if (o.tilde) {
            const PolyLResult v = poly_l_tilde(chi, o.r, s, cfg);
            record(in, "euler_tilde", v.value, v.tail_bound);
        } else {
            const PolyLResult v = poly_l_euler(chi, o.r, s, cfg);
            record(in, "euler", v.value, v.tail_bound);
        }
        return 0;
    }

    if (cmd == "xi") {
        const cplx s = parse_complex(o.s), z = parse_complex(o.z);
        auto in = base;
        in["s"] = show(s);
        in["z"] = show(z);
        if (o.route == "zeros") {
            if (o.zeros_file.empty()) fail(ErrorKind::InvalidArgument, "--route zeros needs --zeros-file");
            const XiValue v = xi_zero_sum(chi, s, z, load_zeros(o.zeros_file));
            in["height"] = format_double(v.height);
            record(in, "zero_sum", v.value, v.error_estimate);
        } else if (o.route == "hankel") {
            ContourSpec c;
            c.delta = o.delta;
            c.cut_depth = o.cut_depth;
            const XiValue v = xi_hankel(chi, s, z, c, cfg);
            in["delta"] = format_double(v.contour.delta);
            in["cut_depth"] = format_double(v.contour.cut_depth);
            record(in, "hankel", v.value, v.error_estimate);
        } else {
            fail(ErrorKind::InvalidArgument, "unknown --route '" + o.route + "'");
        }
        return 0;
    }

    if (cmd == "det") {
        const cplx z = parse_complex(o.z);
        auto in = base;
        in["r"] = std::to_string(o.r);
        in["z"] = show(z);
        const bool want_closed = o.closed || o.both || !o.numeric;
        const bool want_numeric = o.numeric || o.both;
        std::optional<DeterminantValue> c, n;
        if (want_closed) {
            c = determinant_closed(chi, o.r, z, cfg);
            record(in, "closed", c->value, c->error_estimate);
        }
        if (want_numeric) {
            n = determinant_numeric(chi, o.r, z, cfg);
            record(in, "numeric", n->value, n->error_estimate);
        }
        if (c && n) record(in, "residual", std::abs(c->value - n->value) / std::abs(c->value), 0.0);
        return 0;
    }

    if (cmd == "zeros") {
        ZeroTable table;
        auto in = base;
        if (!o.import_file.empty()) {
            table = load_zeros(o.import_file);
            in["source"] = o.import_file;
        } else if (o.find) {
            table = find_zeros(chi, o.height, cfg);
            in["height"] = format_double(o.height);
        } else {
            fail(ErrorKind::InvalidArgument, "zeros needs --find or --import");
        }
        if (!o.export_file.empty()) export_zeros(table, o.export_file);
        for (std::size_t k = 0; k < table.size(); ++k) {
            auto row = in;
            row["index"] = std::to_string(k + 1);
            record(row, o.find && o.import_file.empty() ? "scan" : "import", cplx(0.5, table.ordinates[k]),
                   o.find && o.import_file.empty() ? 1e-9 : 0.0);
        }
        return 0;
    }
    fail(ErrorKind::InvalidArgument, "unknown subcommand '" + cmd + "'");
}

int run_verify(const Options& o, const EvalConfig& cfg, std::vector<Record>& records) {
    std::vector<std::string> names;
    if (o.suite == "all") names = suite_names();
    else names = {o.suite};
    bool all_ok = true;
    for (const auto& name : names) {
        const SuiteResult res = run_suite(name, cfg);
        all_ok = all_ok && res.passed();
        records.push_back({{{"suite", name},
                            {"criterion", std::to_string(res.criterion)},
                            {"passed", res.passed() ? "true" : "false"},
                            {"seconds", format_double(res.seconds)}},
                           "verify",
                           res.max_residual(),
                           0.0,
                           cfg.hash()});
        if (o.format == "table") {
            std::cout << (res.passed() ? "PASS " : "FAIL ") << name << " (" << res.title << ")  max_residual "
                      << res.max_residual() << "  " << res.seconds << "s\n";
            for (const auto& c : res.checks)
                std::cout << "    [" << (c.passed ? "ok" : "XX") << "] " << c.label << "  residual " << c.residual
                          << "  tol " << c.tolerance << "\n";
            if (!res.error.empty()) std::cout << "    error: " << res.error << "\n";
        }
    }
    return all_ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Higher-depth determinants of Hecke L-function zeros"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "table | json | csv")->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--config", o.config_path, "key=value config file (default: $POLYDET_CONFIG)");
    app.add_option("--set", o.config_sets, "override one config key, key=value");
    app.add_option("--manifest-out", o.manifest_out, "write the run manifest as JSON");

    auto* eval = app.add_subcommand("eval", "special functions");
    eval->add_option("--fn", o.fn, "hurwitz | hurwitz-ds | milnor-gamma | polylog | bernoulli | log-gamma")->required();
    eval->add_option("--r", o.r);
    eval->add_option("--s", o.s);
    eval->add_option("--z", o.z);

    auto* lfun = app.add_subcommand("lfun", "Hecke L-function values");
    add_character_options(lfun, o);
    lfun->add_option("--s", o.s);
    lfun->add_flag("--log-derivative", o.log_derivative);
    lfun->add_flag("--completed", o.completed);
    lfun->add_flag("--root-number", o.root_number);

    auto* polyl = app.add_subcommand("polyl", "poly-Hecke L-function");
    add_character_options(polyl, o);
    polyl->add_option("--depth", o.r)->required();
    polyl->add_option("--s", o.s);
    polyl->add_option("--prime-bound", o.prime_bound);
    polyl->add_flag("--continued", o.continued);
    polyl->add_flag("--tilde", o.tilde);
    polyl->add_option("--anchor", o.anchor);
    polyl->add_option("--path", o.path, "intermediate waypoints, ';'-separated");

    auto* xi = app.add_subcommand("xi", "zeta sum over zeros");
    add_character_options(xi, o);
    xi->add_option("--s", o.s);
    xi->add_option("--z", o.z);
    xi->add_option("--route", o.route)->check(CLI::IsMember({"zeros", "hankel"}));
    xi->add_option("--zeros-file", o.zeros_file);
    xi->add_option("--delta", o.delta);
    xi->add_option("--cut-depth", o.cut_depth);

    auto* det = app.add_subcommand("det", "depth-r determinant");
    add_character_options(det, o);
    det->add_option("--depth", o.r)->required();
    det->add_option("--z", o.z);
    det->add_option("--prime-bound", o.prime_bound);
    auto* f_closed = det->add_flag("--closed", o.closed);
    auto* f_numeric = det->add_flag("--numeric", o.numeric);
    auto* f_both = det->add_flag("--both", o.both);
    f_closed->excludes(f_numeric)->excludes(f_both);
    f_numeric->excludes(f_both);

    auto* zeros = app.add_subcommand("zeros", "find, import or export zero tables");
    add_character_options(zeros, o);
    auto* f_find = zeros->add_flag("--find", o.find);
    zeros->add_option("--height", o.height);
    auto* f_import = zeros->add_option("--import", o.import_file);
    zeros->add_option("--export", o.export_file);
    f_find->excludes(f_import);

    auto* verify = app.add_subcommand("verify", "run acceptance suites");
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    verify->add_option("--suite", o.suite)->check(CLI::IsMember(suites));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    std::vector<Record> records;
    int code = 0;
    try {
        const EvalConfig cfg = build_config(o);
        const OutputFormat format = parse_format(o.format);
        if (!o.manifest_out.empty()) {
            RunManifest m{cmd, {}, cfg.to_map(), format};
            for (const auto* opt : app.get_subcommands().front()->get_options())
                if (opt->count() > 0 && !opt->get_name().empty())
                    m.parameters[opt->get_name()] = opt->as<std::string>();
            std::ofstream(o.manifest_out) << m.to_json() << "\n";
        }
        code = cmd == "verify" ? run_verify(o, cfg, records) : run(cmd, o, cfg, records);
        if (!(cmd == "verify" && format == OutputFormat::table)) write_records(std::cout, records, format);
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::InvalidArgument:
            case ErrorKind::ParseError:
            case ErrorKind::FieldMismatch:
            case ErrorKind::UnsupportedCharacter: return kExitUsage;
            default: return kExitFailure;
        }
    }
    return code;
}
