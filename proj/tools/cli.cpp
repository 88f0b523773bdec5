#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsacount/rsacount.h"

namespace rsacount::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
    ApiError(rc_status s, const std::string& what) : std::runtime_error(what), status(s) {}
    rc_status status;
};

int exit_code_for(rc_status s) {
    switch (s) {
        case RC_OK: return kOk;
        case RC_ERR_VALIDATION:
        case RC_ERR_ARGUMENT: return kUsage;
        case RC_ERR_DOMAIN:
        case RC_ERR_RANGE:
        case RC_ERR_RESOURCE:
        case RC_ERR_OVERFLOW:
        case RC_ERR_CONTRACT: return kDomain;
        case RC_ERR_INTERNAL: return kInternal;
    }
    return kInternal;
}

// ---- run configuration ----

struct RunConfig {
    std::uint64_t sieve_segment = 1u << 20;
    std::uint64_t oracle_cap = 1'000'000;
    double quad_abs_tol = 1e-10;
    double quad_rel_tol = 1e-8;
    int quad_max_depth = 60;
    std::string error_model = "grh";
    double error_model_c = 1.0;
    std::optional<double> error_model_k;  // model default when unset
    std::string output_format = "csv";
    bool strict_ranges = false;
    unsigned threads = 1;
    std::optional<std::uint64_t> seed;  // reserved
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_positive_real(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double d = 0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || !(d > 0.0) || !std::isfinite(d))
        throw UsageError(key + " must be a positive real, got '" + v + "'");
    return d;
}

std::uint64_t parse_positive_int(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    unsigned long long n = 0;
    try {
        n = std::stoull(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || n == 0 || v.front() == '-')
        throw UsageError(key + " must be a positive integer, got '" + v + "'");
    return n;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw UsageError(key + " must be true or false, got '" + v + "'");
}

void set_format(RunConfig& cfg, const std::string& v) {
    if (v != "csv" && v != "json") throw UsageError("format must be csv or json, got '" + v + "'");
    cfg.output_format = v;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& v) {
    if (key == "sieve_segment") cfg.sieve_segment = parse_positive_int(key, v);
    else if (key == "oracle_cap") cfg.oracle_cap = parse_positive_int(key, v);
    else if (key == "quad_abs_tol") cfg.quad_abs_tol = parse_positive_real(key, v);
    else if (key == "quad_rel_tol") cfg.quad_rel_tol = parse_positive_real(key, v);
    else if (key == "quad_max_depth") cfg.quad_max_depth = static_cast<int>(parse_positive_int(key, v));
    else if (key == "error_model") cfg.error_model = v;
    else if (key == "error_model_c") cfg.error_model_c = parse_positive_real(key, v);
    else if (key == "error_model_k") cfg.error_model_k = parse_positive_real(key, v);
    else if (key == "output_format") set_format(cfg, v);
    else if (key == "strict_ranges") cfg.strict_ranges = parse_bool(key, v);
    else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_positive_int(key, v));
    else if (key == "seed") cfg.seed = v == "0" ? 0 : parse_positive_int(key, v);
    else throw UsageError("unknown config key '" + key + "'");
}

// Flat key=value lines; '#' starts a comment.
void load_config(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

// ---- C API wrappers ----

class Context {
public:
    Context() {
        if (rc_context_create(&ctx_) != RC_OK) throw ApiError(RC_ERR_RESOURCE, "cannot create context");
    }
    ~Context() { rc_context_destroy(ctx_); }
    Context(const Context&) = delete;
    Context& operator=(const Context&) = delete;

    rc_context* get() const { return ctx_; }

    void check(rc_status s) const {
        if (s != RC_OK) throw ApiError(s, rc_last_error(ctx_));
    }
    std::vector<std::string> warnings() const {
        std::vector<std::string> out;
        for (size_t i = 0; i < rc_warning_count(ctx_); ++i) out.emplace_back(rc_warning(ctx_, i));
        return out;
    }

private:
    rc_context* ctx_ = nullptr;
};

class Character {
public:
    Character(const Context& ctx, const std::string& spec) { ctx.check(rc_character_parse(ctx.get(), spec.c_str(), &chi_)); }
    ~Character() { rc_character_destroy(chi_); }
    Character(const Character&) = delete;
    Character& operator=(const Character&) = delete;

    const rc_character* get() const { return chi_; }

private:
    rc_character* chi_ = nullptr;
};

rc_rational parse_rational(const Context& ctx, const std::string& text) {
    rc_rational r{};
    ctx.check(rc_parse_rational(ctx.get(), text.c_str(), &r));
    return r;
}

std::uint64_t parse_count(const Context& ctx, const std::string& name, const std::string& text) {
    const auto r = parse_rational(ctx, text);
    if (r.den != 1 || r.num < 0) throw UsageError(name + " must be a nonnegative integer, got '" + text + "'");
    return static_cast<std::uint64_t>(r.num);
}

std::string str(rc_rational r) {
    return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

// ---- report tables ----

// Reals carry 12 significant digits in both output formats.
Json real(double v) {
    if (!std::isfinite(v)) return nullptr;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
    std::vector<std::string> warnings;
};

std::string csv_cell(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
        return buf;
    }
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\r\n") == std::string::npos && (s.empty() || (s.front() != ' ' && s.back() != ' ')))
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

void write_csv(const Table& t, std::ostream& out) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << "\r\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << "\r\n";
    }
}

void write_json(const Table& t, const RunConfig& cfg, std::ostream& out) {
    Json meta;
    meta["command"] = t.command;
    meta["version"] = rc_version();
    meta["columns"] = t.columns;
    meta["error_model"] = {{"name", cfg.error_model},
                           {"c", real(cfg.error_model_c)},
                           {"K", cfg.error_model_k ? real(*cfg.error_model_k) : Json(nullptr)}};
    meta["quadrature"] = {{"abs_tol", real(cfg.quad_abs_tol)},
                          {"rel_tol", real(cfg.quad_rel_tol)},
                          {"max_depth", cfg.quad_max_depth}};
    meta["strict"] = cfg.strict_ranges;
    meta["seed"] = cfg.seed ? Json(*cfg.seed) : Json(nullptr);
    meta["warnings"] = t.warnings;
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i];
        rows.push_back(std::move(obj));
    }
    out << Json{{"meta", std::move(meta)}, {"rows", std::move(rows)}}.dump(2) << "\n";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

// ---- subcommands ----

struct Args {
    std::string x, r, s, h, model = "all", chr, eta, grid;
    bool oracle = false;
};

rc_rational resolve_r(const Context& ctx, std::uint64_t x, const Args& a) {
    if (!a.r.empty() && !a.s.empty()) throw UsageError("give exactly one of --r and --s");
    if (!a.r.empty()) return parse_rational(ctx, a.r);
    if (!a.s.empty()) {
        rc_rational r{};
        ctx.check(rc_r_from_s(ctx.get(), x, parse_rational(ctx, a.s), &r));
        return r;
    }
    throw UsageError("one of --r and --s is required");
}

Table cmd_count(const Context& ctx, const Args& a) {
    Table t{"count", {"x", "r", "s", "method", "landau_regime", "sum_mid", "sum_small", "sum_sub", "total"}, {}, {}};
    const auto x = parse_count(ctx, "--x", a.x);
    const auto r = resolve_r(ctx, x, a);
    if (a.oracle) {
        std::uint64_t total = 0;
        ctx.check(rc_count_oracle(ctx.get(), x, r, &total));
        rc_rational s{};
        ctx.check(rc_r_from_s(ctx.get(), x, r, &s));  // x / r
        const bool landau = static_cast<__int128>(r.num) * 4 >= static_cast<__int128>(x) * r.den;
        t.rows.push_back({x, str(r), str(s), "oracle", landau, nullptr, nullptr, nullptr, total});
    } else {
        rc_count_result c{};
        ctx.check(rc_count(ctx.get(), x, r, &c));
        t.rows.push_back({c.x, str(c.r), str(c.s), "sieve", c.landau_regime != 0, c.sum_mid, c.sum_small, c.sum_sub,
                          c.total});
    }
    return t;
}

Table cmd_pi2(const Context& ctx, const Args& a) {
    Table t{"pi2", {"x", "pi2"}, {}, {}};
    const auto x = parse_count(ctx, "--x", a.x);
    std::uint64_t v = 0;
    ctx.check(rc_pi2(ctx.get(), x, &v));
    t.rows.push_back({x, v});
    return t;
}

Table cmd_approx(const Context& ctx, const RunConfig& cfg, const Args& a) {
    Table t{"approx", {"x", "r", "model", "error_model", "value", "warnings"}, {}, {}};
    const auto xr = parse_rational(ctx, a.x);
    const double x = static_cast<double>(xr.num) / static_cast<double>(xr.den);
    const auto r = parse_rational(ctx, a.r);

    std::vector<std::string> names;
    if (a.model == "all") {
        for (size_t i = 0; i < rc_approximant_count(); ++i) names.emplace_back(rc_approximant_name(i));
    } else {
        names.push_back(a.model);
    }
    const bool listing = names.size() > 1;
    for (const auto& name : names) {
        double v = 0;
        const auto status = rc_main_term(ctx.get(), name.c_str(), x, r, &v);
        // when listing, an approximant undefined at (x, r) gets an empty value
        if (listing && status == RC_ERR_DOMAIN) {
            const std::string msg = std::string("undefined: ") + rc_last_error(ctx.get());
            t.warnings.push_back(name + ": " + msg);
            t.rows.push_back({real(x), str(r), name, cfg.error_model, nullptr, msg});
            continue;
        }
        ctx.check(status);
        const auto w = ctx.warnings();
        for (const auto& msg : w) t.warnings.push_back(name + ": " + msg);
        t.rows.push_back({real(x), str(r), name, cfg.error_model, real(v), join(w, "; ")});
    }
    return t;
}

Table cmd_lchi(const Context& ctx, const RunConfig& cfg, const Args& a) {
    Table t{"lchi", {"Q", "char", "s", "head", "tail", "value", "error", "bound", "error_model"}, {}, {}};
    const Character chi(ctx, a.chr);
    rc_lchi_result res{};
    ctx.check(rc_l_chi_s(ctx.get(), chi.get(), parse_rational(ctx, a.s), &res));
    t.rows.push_back({rc_character_modulus(chi.get()), rc_character_spec(chi.get()), str(res.s), real(res.head),
                      real(res.tail), real(res.value), real(res.error), real(res.bound), cfg.error_model});
    return t;
}

int parse_eta(const std::string& v) {
    if (v == "+1" || v == "1") return 1;
    if (v == "-1") return -1;
    throw UsageError("--eta must be +1 or -1, got '" + v + "'");
}

Table cmd_bias(const Context& ctx, const Args& a) {
    Table t{"bias",
            {"x", "r", "s", "Q", "eta", "emp_num", "emp_den", "emp_ratio", "h_main", "pred_ratio", "delta_sqrt_x",
             "bigdelta_term", "loglog_term", "status"},
            {},
            {}};
    const Character chi(ctx, a.chr);
    const int eta = parse_eta(a.eta);
    std::vector<std::uint64_t> xs;
    std::vector<rc_rational> ss;
    if (!a.grid.empty()) {
        if (!a.x.empty() || !a.s.empty()) throw UsageError("--grid replaces --x and --s");
        std::stringstream in(a.grid);
        std::string item;
        while (std::getline(in, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw UsageError("grid points are X:S, got '" + item + "'");
            xs.push_back(parse_count(ctx, "grid x", trim(item.substr(0, colon))));
            ss.push_back(parse_rational(ctx, trim(item.substr(colon + 1))));
        }
        if (xs.empty()) throw UsageError("--grid is empty");
    } else {
        if (a.x.empty() || a.s.empty()) throw UsageError("bias needs --x and --s, or --grid");
        xs.push_back(parse_count(ctx, "--x", a.x));
        ss.push_back(parse_rational(ctx, a.s));
    }
    std::vector<rc_bias_row> rows(xs.size());
    const auto status = rc_bias_table(ctx.get(), chi.get(), eta, xs.data(), ss.data(), xs.size(), rows.data());
    t.warnings = ctx.warnings();
    ctx.check(status);
    for (const auto& row : rows) {
        const std::string st = row.status;
        if (st.rfind("error", 0) == 0) {
            t.rows.push_back({row.x, nullptr, str(row.s), row.Q, row.eta, nullptr, nullptr, nullptr, nullptr, nullptr,
                              nullptr, nullptr, nullptr, st});
            continue;
        }
        t.rows.push_back({row.x, str(row.r), str(row.s), row.Q, row.eta, row.emp_num, row.emp_den,
                          row.has_emp_ratio ? real(row.emp_ratio) : Json(nullptr), real(row.h_main),
                          real(row.pred_ratio), real(row.delta_sqrt_x), real(row.bigdelta_term), real(row.loglog_term),
                          st});
    }
    return t;
}

Table cmd_shortint(const Context& ctx, const Args& a) {
    Table t{"shortint", {"x", "h", "variance", "envelope", "ratio"}, {}, {}};
    const auto x = parse_count(ctx, "--x", a.x);
    const auto h = parse_count(ctx, "--h", a.h);
    double var = 0, env = 0;
    ctx.check(rc_short_interval(ctx.get(), x, h, &var, &env));
    t.rows.push_back({x, h, real(var), real(env), real(var / env)});
    return t;
}

void configure(const Context& ctx, const RunConfig& cfg) {
    ctx.check(rc_set_threads(ctx.get(), cfg.threads));
    ctx.check(rc_set_sieve_segment(ctx.get(), cfg.sieve_segment));
    ctx.check(rc_set_oracle_cap(ctx.get(), cfg.oracle_cap));
    ctx.check(rc_set_quadrature(ctx.get(), cfg.quad_abs_tol, cfg.quad_rel_tol, cfg.quad_max_depth));
    ctx.check(rc_set_error_model(ctx.get(), cfg.error_model.c_str(), cfg.error_model_c,
                                 cfg.error_model_k.value_or(0.0)));
    ctx.check(rc_set_strict(ctx.get(), cfg.strict_ranges ? 1 : 0));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact RSA-integer counts, asymptotic main terms and congruence bias reports", "rsacount"};
    app.set_help_flag("--help", "print this help");
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, format, error_model;
    std::optional<double> tolerance, model_c, model_k;
    std::optional<std::uint64_t> seed, oracle_cap, segment;
    std::optional<unsigned> threads;
    bool strict = false;
    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--format", format, "csv or json");
    app.add_option("--tolerance", tolerance, "quadrature relative tolerance");
    app.add_option("--seed", seed, "reserved; recorded in JSON meta");
    app.add_option("--threads", threads, "worker threads");
    app.add_option("--error-model", error_model, "dlvp, kv or grh");
    app.add_option("--error-c", model_c, "error model constant c");
    app.add_option("--error-k", model_k, "error model constant K");
    app.add_option("--oracle-cap", oracle_cap, "largest x for the brute-force oracle");
    app.add_option("--sieve-segment", segment, "odd entries per sieve segment");
    app.add_flag("--strict", strict, "theorem-range violations are errors");

    Args a;
    auto* count = app.add_subcommand("count", "exact pi_2(x; r)");
    count->add_option("--x", a.x)->required();
    count->add_option("--r", a.r, "shape parameter, a or a/b");
    count->add_option("--s", a.s, "x / r");
    count->add_flag("--oracle", a.oracle, "use the brute-force double loop");

    auto* pi2 = app.add_subcommand("pi2", "products of two distinct primes up to x");
    pi2->add_option("--x", a.x)->required();

    auto* approx = app.add_subcommand("approx", "asymptotic main terms");
    approx->add_option("--x", a.x)->required();
    approx->add_option("--r", a.r)->required();
    approx->add_option("--model", a.model, "approximant name or all");

    auto* lchi = app.add_subcommand("lchi", "bias coefficient L_chi(s)");
    lchi->add_option("--s", a.s)->required();
    lchi->add_option("--char", a.chr, "kronecker:D or table:Q:v0,...")->required();

    auto* bias = app.add_subcommand("bias", "empirical and predicted bias ratios");
    bias->add_option("--x", a.x);
    bias->add_option("--s", a.s);
    bias->add_option("--char", a.chr)->required();
    bias->add_option("--eta", a.eta, "+1 or -1")->required();
    bias->add_option("--grid", a.grid, "X:S,X:S,...");

    auto* shortint = app.add_subcommand("shortint", "short-interval variance of prime counts");
    shortint->add_option("--x", a.x)->required();
    shortint->add_option("--h", a.h)->required();

    std::vector<const char*> argv{"rsacount"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) load_config(config_path, cfg);
        if (!format.empty()) set_format(cfg, format);
        if (tolerance) {
            if (!(*tolerance > 0.0) || !std::isfinite(*tolerance)) throw UsageError("--tolerance must be positive");
            cfg.quad_rel_tol = *tolerance;
        }
        if (seed) cfg.seed = seed;
        if (threads) {
            if (*threads == 0) throw UsageError("--threads must be positive");
            cfg.threads = *threads;
        }
        if (!error_model.empty()) cfg.error_model = error_model;
        if (model_c) cfg.error_model_c = *model_c;
        if (model_k) cfg.error_model_k = model_k;
        if (oracle_cap) cfg.oracle_cap = *oracle_cap;
        if (segment) cfg.sieve_segment = *segment;
        if (strict) cfg.strict_ranges = true;

        Context ctx;
        configure(ctx, cfg);

        Table t;
        if (*count) t = cmd_count(ctx, a);
        else if (*pi2) t = cmd_pi2(ctx, a);
        else if (*approx) t = cmd_approx(ctx, cfg, a);
        else if (*lchi) t = cmd_lchi(ctx, cfg, a);
        else if (*bias) t = cmd_bias(ctx, a);
        else t = cmd_shortint(ctx, a);

        for (const auto& w : t.warnings) err << w << "\n";
        if (cfg.output_format == "json") write_json(t, cfg, out);
        else write_csv(t, out);
        return kOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ApiError& e) {
        err << rc_status_name(e.status) << " error: " << e.what() << "\n";
        return exit_code_for(e.status);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

}  // namespace rsacount::cli
