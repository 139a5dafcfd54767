// letf: command-line front end over the robust growth-rate engine.
//
// Subcommands:
//   rate      robust growth rate and worst-case parameters at one leverage
//   optimize  leverage maximizing the robust rate (closed form, candidate
//             table, or certified grid depending on the model)
//   sweep     rate across a beta grid, or re-optimized beta* while one box
//             bound (sigma.lo or rho.hi) scans an interval
//   verify    Monte-Carlo cross-check of the analytic rate at the worst-case
//             parameter vector, plus optional dominance sampling
//
// Configuration is an INI file with [problem], [model], and [command]
// sections; keys are the library field names and intervals read "lo,hi".
// `--set section.key=value` overrides the file; dedicated flags (--beta,
// --epsilon, ...) override both. Output is CSV or JSON with stable,
// versioned schemas; floats carry 12 significant digits.
//
// Exit codes: 0 success, 1 validation error, 2 feasibility error,
// 3 verification failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <letf/letf.hpp>

namespace {

constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Output cells and tables.

struct Cell {
    enum class Kind { Number, Integer, Text, Boolean, Empty } kind = Kind::Empty;
    double num = 0;
    long integer = 0;
    std::string text;
    bool boolean = false;
};

Cell num(double v) { return {Cell::Kind::Number, v, 0, {}, false}; }
Cell intc(long v) { return {Cell::Kind::Integer, 0, v, {}, false}; }
Cell text(std::string s) { return {Cell::Kind::Text, 0, 0, std::move(s), false}; }
Cell boolc(bool b) { return {Cell::Kind::Boolean, 0, 0, {}, b}; }
Cell none() { return {}; }

using Record = std::vector<std::pair<std::string, Cell>>;

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_cell(const Cell& c) {
    std::string s;
    switch (c.kind) {
        case Cell::Kind::Number: s = fmt_double(c.num); break;
        case Cell::Kind::Integer: s = std::to_string(c.integer); break;
        case Cell::Kind::Text: s = c.text; break;
        case Cell::Kind::Boolean: s = c.boolean ? "true" : "false"; break;
        case Cell::Kind::Empty: return "";
    }
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : s) {
            if (ch == '"') quoted += '"';
            quoted += ch;
        }
        quoted += '"';
        return quoted;
    }
    return s;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string json_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::Number: return fmt_double(c.num);
        case Cell::Kind::Integer: return std::to_string(c.integer);
        case Cell::Kind::Text: return "\"" + json_escape(c.text) + "\"";
        case Cell::Kind::Boolean: return c.boolean ? "true" : "false";
        case Cell::Kind::Empty: return "null";
    }
    return "null";
}

// Every record in a table shares one schema; the header comes from the first.
void write_table(const std::vector<Record>& records, const std::string& format,
                 const std::string& out_path) {
    std::ostringstream os;
    if (format == "csv") {
        if (!records.empty()) {
            for (std::size_t i = 0; i < records.front().size(); ++i)
                os << (i ? "," : "") << records.front()[i].first;
            os << "\n";
            for (const auto& rec : records) {
                for (std::size_t i = 0; i < rec.size(); ++i)
                    os << (i ? "," : "") << csv_cell(rec[i].second);
                os << "\n";
            }
        }
    } else {  // json
        os << "[";
        for (std::size_t r = 0; r < records.size(); ++r) {
            os << (r ? ",\n " : "\n ") << "{";
            for (std::size_t i = 0; i < records[r].size(); ++i)
                os << (i ? ", " : "") << "\"" << records[r][i].first
                   << "\": " << json_cell(records[r][i].second);
            os << "}";
        }
        os << "\n]\n";
    }
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out_path);
        if (!f) throw letf::validation_error("cannot open output path: " + out_path);
        f << os.str();
    }
}

// ---------------------------------------------------------------------------
// INI config.

using Sections = std::map<std::string, std::map<std::string, std::string>>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Sections parse_ini(std::istream& in) {
    Sections out;
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw letf::validation_error("config line " + std::to_string(line_no) +
                                             ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            out[section];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw letf::validation_error("config line " + std::to_string(line_no) +
                                         ": expected key = value");
        if (section.empty())
            throw letf::validation_error("config line " + std::to_string(line_no) +
                                         ": key outside any [section]");
        out[section][trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return out;
}

Sections load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw letf::validation_error("cannot open config file: " + path);
    return parse_ini(f);
}

void apply_set(Sections& cfg, const std::vector<std::string>& sets) {
    for (const auto& s : sets) {
        const auto dot = s.find('.');
        const auto eq = s.find('=', dot == std::string::npos ? 0 : dot);
        if (dot == std::string::npos || eq == std::string::npos || dot > eq)
            throw letf::validation_error("--set expects section.key=value, got: " + s);
        cfg[trim(s.substr(0, dot))][trim(s.substr(dot + 1, eq - dot - 1))] =
            trim(s.substr(eq + 1));
    }
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty()) return x;
    } catch (const std::exception&) {
    }
    throw letf::validation_error("key " + key + ": cannot parse number from '" + v + "'");
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (trim(v.substr(pos)).empty()) return x;
    } catch (const std::exception&) {
    }
    throw letf::validation_error("key " + key + ": cannot parse integer from '" + v + "'");
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw letf::validation_error("key " + key + ": cannot parse boolean from '" + v + "'");
}

// "lo,hi", or a single number for a degenerate interval.
letf::Interval parse_interval(const std::string& key, const std::string& v) {
    const auto comma = v.find(',');
    if (comma == std::string::npos) {
        const double x = parse_double(key, v);
        return {x, x};
    }
    return {parse_double(key, trim(v.substr(0, comma))),
            parse_double(key, trim(v.substr(comma + 1)))};
}

std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    if (out.empty()) throw letf::validation_error("key " + key + ": empty list");
    return out;
}

// ---------------------------------------------------------------------------
// Section -> domain objects.

class SectionReader {
  public:
    SectionReader(const Sections& cfg, std::string name) : name_(std::move(name)) {
        if (auto it = cfg.find(name_); it != cfg.end()) kv_ = it->second;
    }

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string require(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end())
            throw letf::validation_error("missing [" + name_ + "] key: " + key);
        used_.push_back(key);
        return it->second;
    }

    std::string get(const std::string& key, const std::string& fallback) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        used_.push_back(key);
        return it->second;
    }

    double number(const std::string& key, double fallback) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        used_.push_back(key);
        return parse_double(name_ + "." + key, it->second);
    }

    double number_required(const std::string& key) {
        return parse_double(name_ + "." + key, require(key));
    }

    long integer(const std::string& key, long fallback) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        used_.push_back(key);
        return parse_long(name_ + "." + key, it->second);
    }

    bool boolean(const std::string& key, bool fallback) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        used_.push_back(key);
        return parse_bool(name_ + "." + key, it->second);
    }

    letf::Interval interval(const std::string& key) {
        return parse_interval(name_ + "." + key, require(key));
    }

    // Typo guard: every configured key must have been consumed.
    void reject_unused() const {
        for (const auto& [key, value] : kv_) {
            (void)value;
            if (std::find(used_.begin(), used_.end(), key) == used_.end())
                throw letf::validation_error("unknown [" + name_ + "] key: " + key);
        }
    }

  private:
    std::string name_;
    std::map<std::string, std::string> kv_;
    mutable std::vector<std::string> used_;
};

letf::Problem read_problem(const Sections& cfg) {
    SectionReader sec(cfg, "problem");
    letf::Problem prob;
    prob.p = sec.number("p", prob.p);
    prob.r = sec.number("r", prob.r);
    if (sec.has("beta_range")) prob.beta_range = sec.interval("beta_range");
    sec.reject_unused();
    return prob;
}

letf::ModelSpec read_model(const Sections& cfg) {
    SectionReader sec(cfg, "model");
    const std::string type = sec.require("type");
    letf::ModelSpec model;
    if (type == "gbm") {
        model = letf::Gbm{sec.interval("mu"), sec.interval("sigma")};
    } else if (type == "cir") {
        model = letf::Cir{sec.interval("b"), sec.interval("a"), sec.interval("sigma")};
    } else if (type == "three_halves") {
        model = letf::ThreeHalves{sec.interval("b"), sec.interval("a"),
                                  sec.interval("sigma")};
    } else if (type == "heston") {
        model = letf::Heston{sec.interval("mu"), sec.interval("rho"), sec.interval("b"),
                             sec.interval("a"), sec.interval("sigma")};
    } else if (type == "sv32") {
        model = letf::Sv32{sec.interval("mu"), sec.interval("rho"), sec.interval("b"),
                           sec.interval("a"), sec.interval("sigma")};
    } else if (type == "vasicek") {
        model = letf::Vasicek{sec.interval("mu"), sec.interval("varsigma"),
                              sec.interval("rho"), sec.interval("b"), sec.interval("a"),
                              sec.interval("sigma"), sec.number("r0", std::nan(""))};
    } else if (type == "inv_garch") {
        model = letf::InvGarch{sec.interval("mu"), sec.interval("varsigma"),
                               sec.interval("rho"), sec.interval("b"), sec.interval("a"),
                               sec.interval("sigma"), sec.number("r0", std::nan(""))};
    } else {
        throw letf::validation_error(
            "unknown model type: " + type +
            " (expected gbm, cir, three_halves, heston, sv32, vasicek, inv_garch)");
    }
    sec.reject_unused();
    return model;
}

// ---------------------------------------------------------------------------
// Shared command context.

struct CmdOptions {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_path;
    std::string format = "csv";
    // Flag overrides; NaN / negative sentinel means "not given".
    double beta = std::nan("");
    double epsilon = std::nan("");
    double dt = std::nan("");
    double horizon = std::nan("");
    long seed = -1;
    long paths = -1;
    bool candidates = false;
};

struct Context {
    letf::Problem prob;
    letf::ModelSpec model;
    Sections cfg;
};

Context make_context(const CmdOptions& opt) {
    Sections cfg = load_config(opt.config_path);
    apply_set(cfg, opt.sets);
    // Dedicated flags take precedence over --set and the file.
    auto& cmd = cfg["command"];
    if (!std::isnan(opt.beta)) cmd["beta"] = fmt_double(opt.beta);
    if (!std::isnan(opt.epsilon)) cmd["epsilon"] = fmt_double(opt.epsilon);
    if (!std::isnan(opt.dt)) cmd["dt"] = fmt_double(opt.dt);
    if (!std::isnan(opt.horizon)) cmd["horizon"] = fmt_double(opt.horizon);
    if (opt.seed >= 0) cmd["seed"] = std::to_string(opt.seed);
    if (opt.paths >= 0) cmd["paths"] = std::to_string(opt.paths);
    if (opt.candidates) cmd["candidates"] = "true";
    Context ctx;
    ctx.prob = read_problem(cfg);
    ctx.model = read_model(cfg);
    ctx.cfg = std::move(cfg);
    return ctx;
}

void push_worst_columns(Record& rec, const letf::ModelSpec& model,
                        const letf::WorstCase& worst) {
    for (const auto& [name, iv] : letf::detail::param_intervals(model)) {
        (void)iv;
        auto it = worst.params.find(name);
        rec.emplace_back("worst_" + name,
                         it == worst.params.end() ? none() : num(it->second));
    }
}

// ---------------------------------------------------------------------------
// Commands.

int cmd_rate(const CmdOptions& opt) {
    Context ctx = make_context(opt);
    SectionReader cmd(ctx.cfg, "command");
    const double beta = cmd.number_required("beta");
    cmd.reject_unused();

    const letf::GrowthPoint pt = letf::growth(ctx.model, ctx.prob, beta);
    Record rec;
    rec.emplace_back("beta", num(pt.beta));
    rec.emplace_back("rate", pt.rate ? num(*pt.rate) : none());
    rec.emplace_back("feasible", boolc(pt.feasible));
    rec.emplace_back("feasibility_note", text(pt.feasibility_note));
    rec.emplace_back("regime", text(letf::to_string(pt.worst.regime)));
    rec.emplace_back("subcase", text(pt.worst.subcase));
    push_worst_columns(rec, ctx.model, pt.worst);
    rec.emplace_back("schema_version", intc(kSchemaVersion));
    write_table({rec}, opt.format, opt.out_path);
    return pt.feasible ? 0 : 2;
}

int cmd_optimize(const CmdOptions& opt) {
    Context ctx = make_context(opt);
    SectionReader cmd(ctx.cfg, "command");
    const double epsilon = cmd.number("epsilon", 0.01);
    const bool list_candidates = cmd.boolean("candidates", false);
    cmd.reject_unused();

    const letf::OptimalLeverage best =
        letf::optimize_leverage(ctx.model, ctx.prob, epsilon);
    std::vector<Record> records;
    if (!list_candidates) {
        Record rec;
        rec.emplace_back("beta_star", num(best.beta_star));
        rec.emplace_back("rate_star", num(best.rate_star));
        rec.emplace_back("method", text(letf::to_string(best.method)));
        rec.emplace_back("error_bound", num(best.error_bound));
        rec.emplace_back("schema_version", intc(kSchemaVersion));
        records.push_back(std::move(rec));
    } else {
        auto row = [&](const char* kind, double beta, Cell rate, bool with_meta) {
            Record rec;
            rec.emplace_back("kind", text(kind));
            rec.emplace_back("beta", num(beta));
            rec.emplace_back("rate", std::move(rate));
            rec.emplace_back("method",
                             with_meta ? text(letf::to_string(best.method)) : none());
            rec.emplace_back("error_bound", with_meta ? num(best.error_bound) : none());
            rec.emplace_back("schema_version", intc(kSchemaVersion));
            records.push_back(std::move(rec));
        };
        row("optimum", best.beta_star, num(best.rate_star), true);
        for (const auto& [beta, rate] : best.candidates)
            row("candidate", beta, num(rate), false);
        for (double beta : best.infeasible) row("infeasible", beta, none(), false);
    }
    write_table(records, opt.format, opt.out_path);
    return 0;
}

int cmd_sweep(const CmdOptions& opt) {
    Context ctx = make_context(opt);
    SectionReader cmd(ctx.cfg, "command");
    const std::string axis_name =
        cmd.get("axis", "");  // empty -> plain beta sweep
    std::vector<Record> records;
    if (axis_name.empty()) {
        const double lo = cmd.number("beta_lo", ctx.prob.beta_range.lo);
        const double hi = cmd.number("beta_hi", ctx.prob.beta_range.hi);
        const int points = static_cast<int>(cmd.integer("points", 101));
        cmd.reject_unused();
        for (const letf::SweepRow& row :
             letf::beta_sweep(ctx.model, ctx.prob, lo, hi, points)) {
            Record rec;
            rec.emplace_back("beta", num(row.beta));
            rec.emplace_back("rate", row.rate ? num(*row.rate) : none());
            rec.emplace_back("feasible", boolc(row.feasible));
            rec.emplace_back("schema_version", intc(kSchemaVersion));
            records.push_back(std::move(rec));
        }
    } else {
        letf::ScanAxis axis;
        if (axis_name == "sigma_lo") axis = letf::ScanAxis::SigmaLo;
        else if (axis_name == "rho_hi") axis = letf::ScanAxis::RhoHi;
        else
            throw letf::validation_error("unknown [command] axis: " + axis_name +
                                         " (expected sigma_lo or rho_hi)");
        const double lo = cmd.number_required("axis_lo");
        const double hi = cmd.number_required("axis_hi");
        const int points = static_cast<int>(cmd.integer("points", 9));
        const double epsilon = cmd.number("epsilon", 0.01);
        cmd.reject_unused();
        for (const letf::ScanRow& row :
             letf::scan_axis(ctx.model, ctx.prob, axis, lo, hi, points, epsilon)) {
            Record rec;
            rec.emplace_back(axis_name, num(row.axis));
            rec.emplace_back("beta_star", num(row.beta_star));
            rec.emplace_back("rate_star", num(row.rate_star));
            rec.emplace_back("schema_version", intc(kSchemaVersion));
            records.push_back(std::move(rec));
        }
    }
    write_table(records, opt.format, opt.out_path);
    return 0;
}

int cmd_verify(const CmdOptions& opt) {
    Context ctx = make_context(opt);
    SectionReader cmd(ctx.cfg, "command");
    const double beta = cmd.number_required("beta");
    const double dt = cmd.number("dt", 1.0 / 500.0);
    const long paths = cmd.integer("paths", 20000);
    const long seed = cmd.integer("seed", 1);
    const double horizon = cmd.number("horizon", 25.0);
    std::vector<double> horizons{horizon};
    if (cmd.has("horizons"))
        horizons = parse_double_list("command.horizons", cmd.require("horizons"));
    const long samples = cmd.integer("samples", -1);  // -1 -> skip dominance
    const bool has_max_gap = cmd.has("max_gap");
    const double max_gap = cmd.number("max_gap", 0.0);
    cmd.reject_unused();

    const letf::GrowthPoint pt = letf::growth(ctx.model, ctx.prob, beta);
    if (!pt.feasible)
        throw letf::feasibility_error("verify at infeasible leverage: " +
                                      pt.feasibility_note);
    const double analytic = *pt.rate;

    letf::SimRequest req;
    req.model = letf::make_degenerate(ctx.model, pt.worst.params);
    req.prob = ctx.prob;
    req.beta = beta;
    req.horizon_T = horizons.back();
    req.dt = dt;
    req.n_paths = paths;
    req.seed = static_cast<std::uint64_t>(seed);
    req.scheme = letf::scheme_for(ctx.model);

    std::vector<Record> records;
    bool all_passed = true;
    auto push_check = [&](const std::string& check, double measured, double allowed,
                          bool passed, const std::string& detail) {
        Record rec;
        rec.emplace_back("check", text(check));
        rec.emplace_back("measured", num(measured));
        rec.emplace_back("allowed", num(allowed));
        rec.emplace_back("passed", boolc(passed));
        rec.emplace_back("detail", text(detail));
        rec.emplace_back("schema_version", intc(kSchemaVersion));
        records.push_back(std::move(rec));
        all_passed = all_passed && passed;
    };

    try {
        const std::vector<letf::McEstimate> curve = letf::growth_curve(req, horizons);
        const letf::McEstimate& last = curve.back();
        const double gap_last = std::abs(last.estimate - analytic);
        const double slack =
            std::max(0.02, 3.0 * last.delta_std_err()) + 5.0 / last.horizon_T;
        push_check("analytic_vs_mc", gap_last, slack, gap_last <= slack,
                   "T=" + fmt_double(last.horizon_T) + " analytic=" +
                       fmt_double(analytic) + " estimate=" + fmt_double(last.estimate));
        if (curve.size() >= 2) {
            const letf::McEstimate& first = curve.front();
            const double gap_first = std::abs(first.estimate - analytic);
            const double allowance =
                2.0 * (first.delta_std_err() + last.delta_std_err());
            push_check("gap_improvement", gap_last - gap_first, allowance,
                       gap_last - gap_first <= allowance,
                       "gap(T=" + fmt_double(first.horizon_T) + ")=" +
                           fmt_double(gap_first));
        }
        if (has_max_gap)
            push_check("max_gap", gap_last, max_gap, gap_last <= max_gap,
                       "largest-horizon gap against the configured ceiling");
        if (samples >= 0) {
            const letf::DominanceReport rep = letf::dominance_check(
                ctx.model, ctx.prob, beta, req, static_cast<int>(samples));
            push_check("dominance", static_cast<double>(rep.violations.size()), 0.0,
                       rep.passed(),
                       "checked " + std::to_string(rep.n_checked) +
                           " parameter vectors (corners plus samples)");
        }
    } catch (const letf::simulation_error& e) {
        push_check("simulation", 1.0, 0.0, false, e.what());
    }

    write_table(records, opt.format, opt.out_path);
    return all_passed ? 0 : 3;
}

void add_common(CLI::App* sub, CmdOptions& opt) {
    sub->add_option("--config", opt.config_path, "INI configuration file")
        ->required();
    sub->add_option("--set", opt.sets, "override: section.key=value");
    sub->add_option("--out", opt.out_path, "output path (default stdout)");
    sub->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--beta", opt.beta, "leverage ratio");
    sub->add_option("--epsilon", opt.epsilon, "certified accuracy in the rate");
    sub->add_option("--seed", opt.seed, "simulation seed");
    sub->add_option("--paths", opt.paths, "simulation path count");
    sub->add_option("--dt", opt.dt, "simulation step in years");
    sub->add_option("--horizon", opt.horizon, "simulation horizon in years");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust growth-rate engine for leveraged funds"};
    app.require_subcommand(1);

    CmdOptions opt;
    CLI::App* rate = app.add_subcommand("rate", "robust rate at one leverage");
    CLI::App* optimize = app.add_subcommand("optimize", "maximize the robust rate");
    CLI::App* sweep = app.add_subcommand("sweep", "beta sweep or box-bound scan");
    CLI::App* verify = app.add_subcommand("verify", "Monte-Carlo cross-check");
    for (CLI::App* sub : {rate, optimize, sweep, verify}) add_common(sub, opt);
    optimize->add_flag("--candidates", opt.candidates,
                       "emit every evaluated candidate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (rate->parsed()) return cmd_rate(opt);
        if (optimize->parsed()) return cmd_optimize(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
        return cmd_verify(opt);
    } catch (const letf::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const letf::feasibility_error& e) {
        std::cerr << "feasibility error: " << e.what() << "\n";
        return 2;
    } catch (const letf::simulation_error& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
