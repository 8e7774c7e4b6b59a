#include "korovkin/cli.hpp"

#include <atomic>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "korovkin/analysis.hpp"
#include "korovkin/choquet.hpp"
#include "korovkin/parse.hpp"

namespace korovkin::cli {

namespace {

// ---------------------------------------------------------------- utilities

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// CSV field quoting: only needed for free-text columns (witness_summary).
std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Atomic write: temp file in the target directory, then rename.
void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file '" + tmp.string() + "'");
        out << content;
        if (!out) throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::pair<double, double> parse_interval(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw ParseError("expected 'a,b'", text, 0);
    double a, b;
    try {
        a = std::stod(text.substr(0, comma));
        b = std::stod(text.substr(comma + 1));
    } catch (const std::exception&) {
        throw ParseError("expected numbers in 'a,b'", text, 0);
    }
    if (!(a < b)) throw ParseError("domain requires a < b", text, 0);
    return {a, b};
}

std::vector<int> parse_ns(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError("expected integer list '10,50,200'", text, 0);
        }
    }
    if (out.empty()) throw ParseError("empty n list", text, 0);
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) throw ParseError("n list must be strictly ascending", text, 0);
    return out;
}

// --------------------------------------------------------------- experiment

// One experiment, all fields still in text form. Used both for direct
// subcommand invocations (flags override config defaults) and for [section]
// blocks of a sweep config.
struct ExperimentSpec {
    std::string name;  // sweep section name
    std::string command;
    std::string op;
    std::vector<std::string> fns;
    std::string cap = "id";
    std::string domain;
    std::string cells;
    std::string ns = "10,50,200";
    std::string mode = "pointwise";
    std::string eps = "0.05";
    std::string p = "1";
    std::string seed = "1";
    std::string trials = "200";
    std::string out;
    bool strict = false;
    bool allow_large_2d = false;
};

double spec_double(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number for " + key, value, 0);
    }
}

int spec_int(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected an integer for " + key, value, 0);
    }
}

int run_integrate(const ExperimentSpec& ex) {
    if (ex.fns.empty()) throw ParseError("integrate requires --fn", "integrate", 0);
    auto [a, b] = parse_interval(ex.domain.empty() ? "0,1" : ex.domain);
    std::size_t m = ex.cells.empty() ? 1000 : static_cast<std::size_t>(spec_int(ex.cells, "cells"));
    Capacity cap = parse_capacity(ex.cap);
    FunctionSpec fn = parse_function(ex.fns.front());

    GridFunction f = sample(fn, Grid(a, b, m));
    std::vector<double> widths(f.size(), f.grid.width());
    double value = choquet_integral(f.values, widths, cap);

    std::string csv = "x,value\nintegral," + format_number(value) + "\n";
    write_output(ex.out, csv);
    return 0;
}

int run_apply(const ExperimentSpec& ex) {
    if (ex.op.empty()) throw ParseError("apply requires --op", "apply", 0);
    if (ex.fns.empty()) throw ParseError("apply requires --fn", "apply", 0);
    OperatorSpec op = parse_operator(ex.op);
    op.allow_large_2d = ex.allow_large_2d;
    FunctionSpec fn = parse_function(ex.fns.front());

    std::string csv = "x,value\n";
    if (op.family == OperatorSpec::Family::Bkc2) {
        auto [a, b] = parse_interval(ex.domain.empty() ? "0,1" : ex.domain);
        std::size_t m = ex.cells.empty() ? 32 : static_cast<std::size_t>(spec_int(ex.cells, "cells"));
        Grid2 grid{Grid(a, b, m), Grid(a, b, m)};
        GridFunction2 f = sample2(fn, grid);
        GridFunction2 g = apply_bkc2(f, op.n, op.cap, op.allow_large_2d);
        // 2D rows use "x1:x2" in the x column (FORMATS.md)
        for (std::size_t i1 = 0; i1 < grid.x1.m; ++i1)
            for (std::size_t i2 = 0; i2 < grid.x2.m; ++i2)
                csv += format_number(grid.x1.midpoint(i1)) + ":" +
                       format_number(grid.x2.midpoint(i2)) + "," +
                       format_number(g.at(i1, i2)) + "\n";
    } else {
        std::string domain = ex.domain;
        if (domain.empty())
            domain = op.family == OperatorSpec::Family::Szasz ? "0," + format_number(op.x_max)
                                                              : "0,1";
        auto [a, b] = parse_interval(domain);
        std::size_t m = ex.cells.empty() ? 200 : static_cast<std::size_t>(spec_int(ex.cells, "cells"));
        GridFunction f = sample(fn, Grid(a, b, m));
        GridFunction g = make_operator(op)(f);
        for (std::size_t i = 0; i < g.size(); ++i)
            csv += format_number(g.grid.midpoint(i)) + "," + format_number(g.values[i]) + "\n";
    }
    write_output(ex.out, csv);
    return 0;
}

int run_properties(const ExperimentSpec& ex) {
    if (ex.op.empty()) throw ParseError("properties requires --op", "properties", 0);
    OperatorSpec op = parse_operator(ex.op);
    op.allow_large_2d = ex.allow_large_2d;
    DomainKind domain = parse_domain_kind(ex.domain.empty() ? "cube1" : ex.domain);
    if (domain == DomainKind::Cube2 || domain == DomainKind::PositiveCone2)
        throw ParseError("properties runs on 1D domains", ex.domain, 0);

    CheckOptions opt;
    opt.trials = spec_int(ex.trials, "trials");
    opt.seed = static_cast<std::uint64_t>(spec_int(ex.seed, "seed"));
    opt.positive_cone = domain == DomainKind::PositiveCone1;

    Grid grid = op.family == OperatorSpec::Family::Szasz
                    ? Grid(0.0, op.x_max, ex.cells.empty() ? 50 : static_cast<std::size_t>(spec_int(ex.cells, "cells")))
                    : Grid(0.0, 1.0, ex.cells.empty() ? 50 : static_cast<std::size_t>(spec_int(ex.cells, "cells")));
    GridOperator T = make_operator(op);

    std::vector<PropertyReport> reports = {
        check_sublinearity(T, grid, opt),    check_translatability(T, grid, opt),
        check_monotonicity(T, grid, opt),    check_comonotone_additivity(T, grid, opt),
        check_order_lipschitz(T, grid, opt),
    };

    std::string op_text = to_string(op);
    std::string csv = "property,operator,trials,worst_margin,pass,witness_summary\n";
    for (const PropertyReport& r : reports)
        csv += r.property + "," + op_text + "," + std::to_string(r.trials) + "," +
               format_number(r.worst_margin) + "," + (r.pass ? "true" : "false") + "," +
               csv_quote(r.witness) + "\n";
    write_output(ex.out, csv);
    return 0;
}

void append_report_rows(std::string& csv, const ConvergenceReport& report) {
    for (const ConvergenceRow& row : report.rows)
        csv += report.family + "," + csv_quote(report.function_id) + "," +
               to_string(report.mode) + "," + std::to_string(row.n) + "," +
               format_number(row.error) + "\n";
}

int run_korovkin(const ExperimentSpec& ex) {
    if (ex.op.empty()) throw ParseError("korovkin requires --op", "korovkin", 0);
    OperatorSpec op = parse_operator(ex.op);
    op.allow_large_2d = ex.allow_large_2d;
    DomainKind domain = parse_domain_kind(ex.domain.empty() ? "cube1" : ex.domain);

    ScanConfig config;
    config.ns = parse_ns(ex.ns);
    config.mode = parse_mode(ex.mode);
    config.eps = spec_double(ex.eps, "eps");
    config.p = spec_double(ex.p, "p");

    bool two_dim = domain == DomainKind::Cube2 || domain == DomainKind::PositiveCone2;
    // pointwise mode defaults to a coarse grid: unmasked midpoints must sit a
    // few cell widths away from suite jumps for finite-n errors to shrink
    std::size_t default_m = two_dim ? 32 : (config.mode == ConvergenceMode::Pointwise ? 20 : 200);
    std::size_t m = ex.cells.empty() ? default_m : static_cast<std::size_t>(spec_int(ex.cells, "cells"));
    Grid grid = op.family == OperatorSpec::Family::Szasz ? Grid(0.0, op.x_max, m)
                                                        : Grid(0.0, 1.0, m);

    std::vector<FunctionSpec> suite;
    for (const std::string& text : ex.fns) suite.push_back(parse_function(text));
    if (suite.empty()) {
        if (two_dim) {
            suite.push_back(FunctionSpec::sum_of_squares());
        } else {
            suite.push_back(FunctionSpec::step({0.5}, {0.0, 1.0}));
            suite.push_back(FunctionSpec::monomial(3));
        }
    }

    HarnessResult result = korovkin_harness(op, domain, grid, config, suite);

    // first row: verdict (n and error columns empty), then per-n rows
    std::string csv = "family,function,mode,n,error\n";
    csv += "verdict," + to_string(result.verdict) + "," + to_string(config.mode) + ",,\n";
    if (!result.witness.empty())
        csv += "witness," + csv_quote(result.witness) + "," + to_string(config.mode) + ",,\n";
    for (const ConvergenceReport& report : result.stage1) append_report_rows(csv, report);
    for (const ConvergenceReport& report : result.stage2) append_report_rows(csv, report);
    write_output(ex.out, csv);

    if (ex.strict && result.verdict != Verdict::Confirmed) return 3;
    return 0;
}

int run_experiment(const ExperimentSpec& ex) {
    if (ex.command == "integrate") return run_integrate(ex);
    if (ex.command == "apply") return run_apply(ex);
    if (ex.command == "properties") return run_properties(ex);
    if (ex.command == "korovkin") return run_korovkin(ex);
    throw ParseError("unknown command '" + ex.command + "'", ex.command, 0);
}

// ------------------------------------------------------------- config files

struct ConfigSection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
};

std::vector<ConfigSection> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file", path, 0);
    std::vector<ConfigSection> sections;
    sections.push_back({"", {}});
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ParseError("unterminated [section] at line " + std::to_string(lineno), path, lineno);
            sections.push_back({trim(t.substr(1, t.size() - 2)), {}});
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value' at line " + std::to_string(lineno), path, lineno);
        sections.back().entries.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return sections;
}

void apply_entry(ExperimentSpec& ex, const std::string& key, const std::string& value) {
    if (key == "command") ex.command = value;
    else if (key == "op") ex.op = value;
    else if (key == "fn") ex.fns.push_back(value);
    else if (key == "cap") ex.cap = value;
    else if (key == "domain") ex.domain = value;
    else if (key == "cells") ex.cells = value;
    else if (key == "ns") ex.ns = value;
    else if (key == "mode") ex.mode = value;
    else if (key == "eps") ex.eps = value;
    else if (key == "p") ex.p = value;
    else if (key == "seed") ex.seed = value;
    else if (key == "trials") ex.trials = value;
    else if (key == "out") ex.out = value;
    else if (key == "strict") ex.strict = value == "true" || value == "1";
    else if (key == "allow-large-2d") ex.allow_large_2d = value == "true" || value == "1";
    else throw ParseError("unknown config key '" + key + "'", key, 0);
}

int run_sweep(const std::string& config_path, const std::string& out_dir) {
    std::vector<ConfigSection> sections = load_config(config_path);

    ExperimentSpec base;
    std::vector<ExperimentSpec> experiments;
    for (const ConfigSection& section : sections) {
        if (section.name.empty()) {
            for (const auto& [k, v] : section.entries) apply_entry(base, k, v);
            continue;
        }
        ExperimentSpec ex = base;
        ex.name = section.name;
        for (const auto& [k, v] : section.entries) apply_entry(ex, k, v);
        if (ex.command.empty()) ex.command = "korovkin";
        if (ex.out.empty()) {
            if (out_dir.empty())
                throw ParseError("sweep section '" + section.name + "' has no output path (set out= or pass --out DIR)",
                                 config_path, 0);
            ex.out = (std::filesystem::path(out_dir) / (section.name + ".csv")).string();
        }
        experiments.push_back(std::move(ex));
    }
    if (experiments.empty())
        throw ParseError("config has no [section] experiments", config_path, 0);

    unsigned threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("KOROVKIN_LAB_THREADS")) {
        int requested = spec_int(env, "KOROVKIN_LAB_THREADS");
        if (requested < 0) throw ParseError("KOROVKIN_LAB_THREADS must be >= 0", env, 0);
        if (requested > 0) threads = static_cast<unsigned>(requested);
    }
    if (threads == 0) threads = 1;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(experiments.size()));

    std::atomic<std::size_t> next{0};
    std::atomic<int> worst{0};
    std::mutex err_mutex;
    std::vector<std::string> errors;

    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= experiments.size()) return;
            int code = 0;
            try {
                code = run_experiment(experiments[i]);
            } catch (const ParseError& e) {
                code = 1;
                std::lock_guard<std::mutex> lock(err_mutex);
                errors.push_back("[" + experiments[i].name + "] " + e.what());
            } catch (const std::exception& e) {
                code = 2;
                std::lock_guard<std::mutex> lock(err_mutex);
                errors.push_back("[" + experiments[i].name + "] " + e.what());
            }
            int prev = worst.load();
            while (code > prev && !worst.compare_exchange_weak(prev, code)) {}
        }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    for (const std::string& msg : errors) std::cerr << "korovkin-lab: " << msg << "\n";
    return worst.load();
}

// -------------------------------------------------------------------- wiring

void add_common(CLI::App* cmd, ExperimentSpec& ex, std::string& config_path) {
    cmd->add_option("--op", ex.op, "operator text form (see FORMATS.md)");
    cmd->add_option("--fn", ex.fns, "function text form; repeatable");
    cmd->add_option("--cap", ex.cap, "capacity text form");
    cmd->add_option("--domain", ex.domain, "interval 'a,b' or domain kind (cube1|cone1|...)");
    cmd->add_option("--cells", ex.cells, "grid cell count");
    cmd->add_option("--ns", ex.ns, "ascending n list, e.g. 10,50,200");
    cmd->add_option("--mode", ex.mode, "pointwise|measure|lp");
    cmd->add_option("--eps", ex.eps, "in-measure threshold");
    cmd->add_option("--p", ex.p, "Lp exponent");
    cmd->add_option("--seed", ex.seed, "RNG seed");
    cmd->add_option("--trials", ex.trials, "property-check trial count");
    cmd->add_option("--out", ex.out, "output CSV path (default: stdout)");
    cmd->add_option("--config", config_path, "key = value config file; flags override");
    cmd->add_flag("--strict", ex.strict, "exit 3 when the korovkin verdict is not 'confirmed'");
    cmd->add_flag("--allow-large-2d", ex.allow_large_2d, "lift the bkc2 n<=128 guard");
}

// Merge config file values under the flags actually given on the command
// line: a flag that was typed wins; otherwise the config value applies.
void merge_config(CLI::App* cmd, ExperimentSpec& ex, const std::string& config_path) {
    if (config_path.empty()) return;
    auto given = [&](const std::string& flag) {
        const CLI::Option* opt = cmd->get_option(flag);
        return opt->count() > 0;
    };
    std::vector<ConfigSection> sections = load_config(config_path);
    for (const ConfigSection& section : sections) {
        if (!section.name.empty() && section.name != ex.command) continue;
        for (const auto& [key, value] : section.entries) {
            if (key == "command") continue;
            std::string flag = "--" + key;
            if (key == "fn" ? !given("--fn") : !given(flag)) apply_entry(ex, key, value);
        }
    }
}

}  // namespace

int run(const std::vector<std::string>& args) {
    std::vector<std::string> argv_store;
    argv_store.push_back("korovkin-lab");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : argv_store) argv.push_back(s.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, char** argv) {
    CLI::App app{"korovkin-lab: Choquet-type operator experiments"};
    app.require_subcommand(1);

    ExperimentSpec ex;
    std::string config_path;

    CLI::App* integrate = app.add_subcommand("integrate", "Choquet integral of a sampled function");
    CLI::App* apply = app.add_subcommand("apply", "apply an operator, emit x,value rows");
    CLI::App* properties = app.add_subcommand("properties", "run the axiom checks");
    CLI::App* korovkin_cmd = app.add_subcommand("korovkin", "convergence scans + Korovkin verdict");
    CLI::App* sweep = app.add_subcommand("sweep", "run every [section] of a config file");
    for (CLI::App* cmd : {integrate, apply, properties, korovkin_cmd})
        add_common(cmd, ex, config_path);
    std::string sweep_out;
    sweep->add_option("--config", config_path, "sweep config file")->required();
    sweep->add_option("--out", sweep_out, "output directory for sections without out=");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sweep->parsed()) return run_sweep(config_path, sweep_out);
        CLI::App* active = app.get_subcommands().front();
        ex.command = active->get_name();
        merge_config(active, ex, config_path);
        return run_experiment(ex);
    } catch (const ParseError& e) {
        std::cerr << "korovkin-lab: parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "korovkin-lab: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace korovkin::cli
