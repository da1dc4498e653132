#include "fracfix/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace fracfix {

namespace {

using nlohmann::json;

std::string g8(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return buf;
}

std::string g12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

[[noreturn]] void cfg_fail(const std::string& key, const std::string& why) {
    throw ConfigError(key + ": " + why);
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) { ok = true; break; }
        if (!ok) cfg_fail(where.empty() ? key : where + "." + key, "unknown key");
    }
}

double need_number(const json& j, const std::string& key) {
    if (!j.is_number()) cfg_fail(key, "expected a number");
    return j.get<double>();
}

int need_int(const json& j, const std::string& key) {
    if (!j.is_number_integer()) cfg_fail(key, "expected an integer");
    return j.get<int>();
}

MethodKind parse_kind(const std::string& s) {
    if (s == "QuasiNewton") return MethodKind::QuasiNewton;
    if (s == "PseudoNewton") return MethodKind::PseudoNewton;
    if (s == "FracNewtonRaphson") return MethodKind::FracNewtonRaphson;
    if (s == "ClassicalNewton") return MethodKind::ClassicalNewton;
    cfg_fail("method.kind", "unknown value '" + s + "'");
}

bool violates_guard(double a, double exclusion) {
    return std::abs(a - std::round(a)) <= exclusion;
}

// Deterministic uniform draw in [lo, hi), identical across platforms.
class UniformDraw {
public:
    explicit UniformDraw(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    double next(double lo, double hi) {
        // splitmix64 step
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

private:
    std::uint64_t state_;
};

void resolve_alphas(SweepConfig& cfg) {
    // Sampled orders must clear the exclusion band and stay valid
    // fractional orders even when the band is configured to zero.
    const double excl = std::max(cfg.integer_exclusion, kIntegerOrderTol);
    auto& spec = cfg.alpha_spec;
    cfg.alphas.clear();

    switch (spec.mode) {
        case AlphaSpec::Mode::List: {
            // Explicit orders are taken as given; only sampled modes apply
            // the exclusion band. Integer orders are invalid everywhere.
            if (spec.list.empty()) cfg_fail("alpha.list", "must not be empty");
            for (std::size_t i = 0; i < spec.list.size(); ++i)
                if (is_integer_order(spec.list[i]))
                    cfg_fail("alpha.list[" + std::to_string(i) + "]",
                             "order must not be an integer");
            cfg.alphas = spec.list;
            break;
        }
        case AlphaSpec::Mode::Grid: {
            if (spec.count < 1) cfg_fail("alpha.grid.count", "must be at least 1");
            if (spec.hi < spec.lo) cfg_fail("alpha.grid", "hi must not be below lo");
            double lo = spec.lo, hi = spec.hi;
            if (violates_guard(lo, excl)) {
                lo = std::round(lo) - excl;
                cfg.warnings.push_back("alpha.grid.lo snapped outward to " + g8(lo));
            }
            if (violates_guard(hi, excl)) {
                hi = std::round(hi) + excl;
                cfg.warnings.push_back("alpha.grid.hi snapped outward to " + g8(hi));
            }
            for (int i = 0; i < spec.count; ++i) {
                double a = spec.count == 1
                               ? lo
                               : lo + (hi - lo) * static_cast<double>(i) / (spec.count - 1);
                if (violates_guard(a, excl)) {
                    const double r = std::round(a);
                    const double side = a >= r ? 1.0 : -1.0;
                    a = r + side * excl * (1.0 + 1e-9);
                    cfg.warnings.push_back("alpha.grid point snapped to " + g8(a));
                }
                cfg.alphas.push_back(a);
            }
            break;
        }
        case AlphaSpec::Mode::Random: {
            if (spec.count < 1) cfg_fail("alpha.random.count", "must be at least 1");
            if (spec.hi <= spec.lo) cfg_fail("alpha.random", "hi must exceed lo");
            UniformDraw rng(spec.seed);
            for (int i = 0; i < spec.count; ++i) {
                double a = 0.0;
                int tries = 0;
                do {
                    if (++tries > 10000)
                        cfg_fail("alpha.random", "integer_exclusion rejects the whole range");
                    a = rng.next(spec.lo, spec.hi);
                } while (violates_guard(a, excl));
                cfg.alphas.push_back(a);
            }
            break;
        }
    }
}

}  // namespace

SweepConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    check_keys(j, "",
               {"problem", "method", "x0", "alpha", "integer_exclusion", "dedup_tol",
                "output"});

    SweepConfig cfg;
    if (!j.contains("problem")) cfg_fail("problem", "missing");
    if (!j["problem"].is_string()) cfg_fail("problem", "expected a string");
    cfg.problem = j["problem"].get<std::string>();

    if (!j.contains("method") || !j["method"].is_object()) cfg_fail("method", "missing object");
    const json& m = j["method"];
    check_keys(m, "method",
               {"kind", "epsilon", "hybrid_delta", "rnd_digits", "grid_digits", "max_iter",
                "tol_step", "tol_grad"});
    if (!m.contains("kind") || !m["kind"].is_string()) cfg_fail("method.kind", "missing string");
    cfg.method.kind = parse_kind(m["kind"].get<std::string>());
    if (m.contains("epsilon")) cfg.method.epsilon = need_number(m["epsilon"], "method.epsilon");
    if (m.contains("hybrid_delta")) {
        const double d = need_number(m["hybrid_delta"], "method.hybrid_delta");
        if (d <= 0.0) cfg_fail("method.hybrid_delta", "must be positive");
        cfg.method.hybrid_delta = d;
    }
    if (m.contains("rnd_digits")) cfg.method.rnd_digits = need_int(m["rnd_digits"], "method.rnd_digits");
    if (cfg.method.rnd_digits < 0) cfg_fail("method.rnd_digits", "must be non-negative");
    if (m.contains("grid_digits")) cfg.method.grid_digits = need_int(m["grid_digits"], "method.grid_digits");
    if (m.contains("max_iter")) cfg.method.max_iter = need_int(m["max_iter"], "method.max_iter");
    if (cfg.method.max_iter < 1) cfg_fail("method.max_iter", "must be at least 1");
    if (m.contains("tol_step")) cfg.method.tol_step = need_number(m["tol_step"], "method.tol_step");
    if (cfg.method.tol_step <= 0.0) cfg_fail("method.tol_step", "must be positive");
    if (m.contains("tol_grad")) cfg.method.tol_grad = need_number(m["tol_grad"], "method.tol_grad");
    if (cfg.method.tol_grad <= 0.0) cfg_fail("method.tol_grad", "must be positive");
    if (cfg.method.epsilon < 0.0) cfg_fail("method.epsilon", "must be non-negative");
    if (cfg.method.kind == MethodKind::PseudoNewton && cfg.method.epsilon == 0.0)
        cfg_fail("method.epsilon", "PseudoNewton needs a positive damping");

    if (!j.contains("x0") || !j["x0"].is_array() || j["x0"].empty())
        cfg_fail("x0", "expected a non-empty array");
    for (std::size_t i = 0; i < j["x0"].size(); ++i) {
        const json& e = j["x0"][i];
        const std::string key = "x0[" + std::to_string(i) + "]";
        if (e.is_number()) {
            cfg.x0.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            cfg.x0.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            cfg_fail(key, "expected a number or [re, im]");
        }
    }

    if (j.contains("integer_exclusion")) {
        cfg.integer_exclusion = need_number(j["integer_exclusion"], "integer_exclusion");
        if (cfg.integer_exclusion < 0.0) cfg_fail("integer_exclusion", "must be non-negative");
    }
    if (j.contains("dedup_tol")) {
        cfg.dedup_tol = need_number(j["dedup_tol"], "dedup_tol");
        if (cfg.dedup_tol <= 0.0) cfg_fail("dedup_tol", "must be positive");
    }
    if (j.contains("output")) {
        if (!j["output"].is_string()) cfg_fail("output", "expected a string");
        cfg.output = j["output"].get<std::string>();
    }

    if (!j.contains("alpha") || !j["alpha"].is_object()) cfg_fail("alpha", "missing object");
    const json& a = j["alpha"];
    check_keys(a, "alpha", {"list", "grid", "random"});
    if (a.size() != 1) cfg_fail("alpha", "expected exactly one of list, grid, random");
    if (a.contains("list")) {
        if (!a["list"].is_array()) cfg_fail("alpha.list", "expected an array");
        cfg.alpha_spec.mode = AlphaSpec::Mode::List;
        for (const json& e : a["list"])
            cfg.alpha_spec.list.push_back(need_number(e, "alpha.list[]"));
    } else if (a.contains("grid")) {
        const json& g = a["grid"];
        check_keys(g, "alpha.grid", {"lo", "hi", "count"});
        cfg.alpha_spec.mode = AlphaSpec::Mode::Grid;
        if (!g.contains("lo") || !g.contains("hi") || !g.contains("count"))
            cfg_fail("alpha.grid", "needs lo, hi and count");
        cfg.alpha_spec.lo = need_number(g["lo"], "alpha.grid.lo");
        cfg.alpha_spec.hi = need_number(g["hi"], "alpha.grid.hi");
        cfg.alpha_spec.count = need_int(g["count"], "alpha.grid.count");
    } else {
        const json& r = a["random"];
        check_keys(r, "alpha.random", {"lo", "hi", "count", "seed"});
        cfg.alpha_spec.mode = AlphaSpec::Mode::Random;
        if (!r.contains("lo") || !r.contains("hi") || !r.contains("count"))
            cfg_fail("alpha.random", "needs lo, hi and count");
        cfg.alpha_spec.lo = need_number(r["lo"], "alpha.random.lo");
        cfg.alpha_spec.hi = need_number(r["hi"], "alpha.random.hi");
        cfg.alpha_spec.count = need_int(r["count"], "alpha.random.count");
        if (r.contains("seed")) cfg.alpha_spec.seed = r["seed"].get<std::uint64_t>();
    }

    resolve_alphas(cfg);
    return cfg;
}

SweepConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config_text(os.str());
}

Problem load_problem(const SweepConfig& cfg) {
    if (cfg.problem == "builtin") return builtin_problem();
    std::ifstream in(cfg.problem);
    if (!in) throw ConfigError("problem: cannot open file '" + cfg.problem + "'");
    std::ostringstream os;
    os << in.rdbuf();
    try {
        return problem_from_system(parse_polynomial_system(os.str()));
    } catch (const ParseError& e) {
        throw ConfigError("problem: " + cfg.problem + ": " + e.what());
    } catch (const DimensionError& e) {
        throw ConfigError("problem: " + cfg.problem + ": " + e.what());
    }
}

namespace {

std::vector<IterationTrace> run_all(const Problem& prob, const SweepConfig& cfg, int jobs) {
    const std::size_t n = cfg.alphas.size();
    std::vector<IterationTrace> traces(n);
    auto run_one = [&](std::size_t i) {
        traces[i] = iterate(prob, cfg.method, FracOrder(cfg.alphas[i]), cfg.x0);
    };
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_one(i);
        return traces;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) run_one(i);
    };
    std::vector<std::jthread> pool;
    const int count = std::min<int>(jobs, static_cast<int>(n));
    pool.reserve(count);
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    return traces;
}

}  // namespace

SweepReport run_sweep(const SweepConfig& cfg, int jobs) {
    if (cfg.alphas.empty()) throw ConfigError("alpha: no orders to run");
    const Problem prob = load_problem(cfg);
    if (cfg.x0.size() != prob.dim) cfg_fail("x0", "dimension disagrees with the problem");
    if (cfg.method.kind == MethodKind::FracNewtonRaphson && !prob.poly_form)
        cfg_fail("method.kind", "FracNewtonRaphson requires a polynomial problem");

    const std::vector<IterationTrace> traces = run_all(prob, cfg, jobs);

    SweepReport rep;
    rep.config_echo = cfg;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const IterationTrace& tr = traces[i];
        if (tr.status != IterStatus::Converged) {
            rep.failures.push_back({cfg.alphas[i], tr.status});
            continue;
        }
        CriticalPointRecord rec;
        rec.point = tr.landing();
        rec.alpha = cfg.alphas[i];
        const Classification cls = classify(prob.hess(rec.point));
        rec.delta_d = cls.delta_d;
        rec.delta_t = cls.delta_t;
        rec.kind = cls.kind;
        rec.iterations = static_cast<int>(tr.iterations());
        rec.p_n = tr.p_final;
        rec.grad_norm = tr.grad_norms.back();
        rec.step_norm = tr.step_norms.empty() ? 0.0 : tr.step_norms.back();
        rep.records.push_back(std::move(rec));
    }
    bool any_p = false;
    for (const auto& r : rep.records)
        if (r.p_n) { any_p = true; break; }
    if (any_p) rep.mean_p = mean_order(rep.records);
    return rep;
}

std::string csv_text(const SweepReport& report) {
    const std::size_t dim = report.config_echo.x0.size();
    std::ostringstream os;
    os << "idx,alpha";
    for (std::size_t k = 1; k <= dim; ++k) os << ",re_" << k << ",im_" << k;
    os << ",step_norm,grad_norm,p_n,delta_d,delta_t,iters\n";
    int idx = 1;
    for (const auto& r : report.records) {
        os << idx++ << ',' << g8(r.alpha);
        for (const Complex& z : r.point) os << ',' << g8(z.real()) << ',' << g8(z.imag());
        os << ',' << g8(r.step_norm) << ',' << g8(r.grad_norm) << ',';
        if (r.p_n) os << g8(*r.p_n);
        os << ',' << r.delta_d << ',' << r.delta_t << ',' << r.iterations << '\n';
    }
    return os.str();
}

void emit_csv(const SweepReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("output: cannot open '" + path + "' for writing");
    out << csv_text(report);
}

std::string trajectories_text(const SweepConfig& cfg, int jobs) {
    if (cfg.alphas.empty()) throw ConfigError("alpha: no orders to run");
    const Problem prob = load_problem(cfg);
    if (cfg.x0.size() != prob.dim) cfg_fail("x0", "dimension disagrees with the problem");
    if (cfg.method.kind == MethodKind::FracNewtonRaphson && !prob.poly_form)
        cfg_fail("method.kind", "FracNewtonRaphson requires a polynomial problem");
    const std::vector<IterationTrace> traces = run_all(prob, cfg, jobs);

    std::ostringstream os;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const IterationTrace& tr = traces[i];
        if (i) os << '\n';
        os << "# alpha=" << g8(cfg.alphas[i]) << " status=" << to_string(tr.status) << '\n';
        os << 'i';
        for (std::size_t k = 1; k <= prob.dim; ++k) os << ",re_" << k << ",im_" << k;
        os << '\n';
        for (std::size_t s = 0; s < tr.iterates.size(); ++s) {
            os << s;
            for (const Complex& z : tr.iterates[s])
                os << ',' << g12(z.real()) << ',' << g12(z.imag());
            os << '\n';
        }
    }
    return os.str();
}

void emit_trajectories(const SweepConfig& cfg, const std::string& path, int jobs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("output: cannot open '" + path + "' for writing");
    out << trajectories_text(cfg, jobs);
}

CVector parse_point(const std::string& text) {
    CVector out;
    std::size_t i = 0;
    const auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    while (true) {
        skip_ws();
        if (i >= text.size()) throw ConfigError("point: expected a coordinate");
        if (text[i] == '(') {
            const std::size_t close = text.find(')', i);
            if (close == std::string::npos) throw ConfigError("point: unbalanced '('");
            const std::string pair = text.substr(i + 1, close - i - 1);
            const std::size_t comma = pair.find(',');
            if (comma == std::string::npos) throw ConfigError("point: expected '(re,im)'");
            try {
                out.emplace_back(std::stod(pair.substr(0, comma)),
                                 std::stod(pair.substr(comma + 1)));
            } catch (const std::exception&) {
                throw ConfigError("point: bad number in '(re,im)' pair");
            }
            i = close + 1;
        } else {
            std::size_t used = 0;
            double re = 0.0;
            try {
                re = std::stod(text.substr(i), &used);
            } catch (const std::exception&) {
                throw ConfigError("point: bad coordinate at '" + text.substr(i) + "'");
            }
            out.emplace_back(re, 0.0);
            i += used;
        }
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] != ',') throw ConfigError("point: expected ',' between coordinates");
        ++i;
    }
    if (out.empty()) throw ConfigError("point: empty");
    return out;
}

namespace {

const char* kTable1Config = R"json({
  "problem": "builtin",
  "method": {"kind": "QuasiNewton"},
  "x0": [5.21, 5.21],
  "alpha": {"list": [
    -0.530515, -0.516037, -0.472867, -0.440017, -0.372536, -0.359168,
    -0.317767, -0.175657, -0.174937, -0.167409, -0.165538, -0.162111,
    -0.148486, -0.141354, -0.140788, -0.125015, -0.119655, -0.092015,
    -0.081244, -0.075076, -0.073120, -0.056190, -0.052492, -0.052490,
    -0.037197, -0.030387]},
  "output": "table1.csv"
})json";

const char* kTable2Config = R"json({
  "problem": "builtin",
  "method": {"kind": "QuasiNewton", "hybrid_delta": 7.0},
  "x0": [4.78, 4.78],
  "alpha": {"list": [
    -0.991504, -0.985320, -0.977534, -0.957378, -0.931674, -0.910766,
    -0.902424, -0.796926, -0.747172, -0.739854, -0.734400, -0.718024,
    -0.691512, -0.654774, -0.639046, -0.616404, -0.598098, -0.591784,
    -0.531176, -0.527738, -0.511182, -0.503186, -0.490941, -0.490753,
    -0.470183, -0.468001, -0.463959, -0.458777, -0.437585, -0.429119,
    -0.417531, -0.321303, -0.295259, -0.287905, -0.278601, -0.264047,
    -0.263797, -0.242447, -0.240107, -0.235095, -0.212867, -0.211725,
    -0.209337, -0.204931, -0.181783, -0.181407, -0.178655, -0.175623,
    -0.125919, -0.092457, -0.076797]},
  "output": "table2.csv"
})json";

const char* kTable3Config = R"json({
  "problem": "builtin",
  "method": {"kind": "PseudoNewton", "epsilon": 1e-4, "hybrid_delta": 13.0},
  "x0": [14.55, 14.55],
  "alpha": {"list": [
    0.997025, 0.997053, 0.997061, 0.998113, 0.998133, 0.998185, 0.998189,
    0.998229, 0.998469, 0.999045, 0.999065, 0.999909, 0.999917, 0.999921,
    0.999925, 0.999929, 0.999937, 0.999941, 0.999945, 0.999953, 1.003393,
    1.004893, 1.004925, 1.004969, 1.005025, 1.005549, 1.005849, 1.005937,
    1.006421, 1.006437, 1.006465, 1.007481, 1.008713, 1.009697, 1.009817,
    1.009821, 1.009861, 1.010385, 1.908362, 1.913438, 1.918790, 1.920778,
    1.922506, 1.928090, 1.928198, 1.938338, 2.027490, 2.027714, 2.027802,
    2.028082, 2.050222, 2.892915, 2.979539, 2.979543, 2.983015, 2.983279,
    2.989991, 2.990235, 2.990955, 3.002283, 3.004719, 3.013455, 3.013911,
    3.014343, 3.982916, 3.982992, 3.983884, 3.990568, 3.990580, 3.991060]},
  "output": "table3.csv"
})json";

}  // namespace

const char* demo_config_text(const std::string& name) {
    if (name == "table1") return kTable1Config;
    if (name == "table2") return kTable2Config;
    if (name == "table3") return kTable3Config;
    return nullptr;
}

}  // namespace fracfix
