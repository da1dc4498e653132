// Acceptance suite: end-to-end checks of the benchmark reproductions and the
// property gates, one printed verdict line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "fracfix/sweep.hpp"
#include "oracle.hpp"

using namespace fracfix;

namespace {

void verdict(int id, const char* label, bool ok) {
    std::printf("criterion %d (%s): %s\n", id, label, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
}

SweepReport run_demo(const char* name, double* seconds = nullptr) {
    const SweepConfig cfg = parse_config_text(demo_config_text(name));
    const auto t0 = std::chrono::steady_clock::now();
    SweepReport rep = run_sweep(cfg);
    const auto t1 = std::chrono::steady_clock::now();
    if (seconds) *seconds = std::chrono::duration<double>(t1 - t0).count();
    return rep;
}

bool landing_contains(const SweepReport& rep, const CVector& want, double tol,
                      const CriticalPointRecord** found = nullptr) {
    for (const auto& r : rep.records) {
        if (r.point.size() != want.size()) continue;
        if (norm2(vsub(r.point, want)) <= tol) {
            if (found) *found = &r;
            return true;
        }
    }
    return false;
}

CVector conj_point(const CVector& v) {
    CVector c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = std::conj(v[i]);
    return c;
}

bool is_complex_point(const CVector& v) {
    for (const Complex& z : v)
        if (z.imag() != 0.0) return true;
    return false;
}

}  // namespace

TEST_CASE("criterion 1: gradient-norm golden values") {
    const Problem p = builtin_problem();
    const struct { double x, norm; } cases[] = {
        {5.21, 1289.4083}, {4.78, 770.4734}, {14.55, 65057.2221}};
    bool ok = true;
    for (const auto& c : cases) {
        const double got = norm2(p.grad({Complex(c.x, 0.0), Complex(c.x, 0.0)}));
        const bool here = std::abs(got - c.norm) <= 1e-4 * c.norm;
        CHECK(here);
        ok = ok && here;
    }
    verdict(1, "gradient-norm golden values", ok);
    CHECK(ok);
}

TEST_CASE("criterion 2: hybrid quasi-Newton benchmark reproduction") {
    double secs = 0.0;
    const SweepReport rep = run_demo("table2", &secs);
    const std::size_t total = rep.config_echo.alphas.size();

    const bool enough = rep.records.size() * 5 >= total * 4;  // >= 80%
    CHECK(enough);

    const Problem p = builtin_problem();
    bool all_certified = !rep.records.empty();
    for (const auto& r : rep.records)
        all_certified = all_certified && norm2(p.grad(r.point)) <= 1e-4;
    CHECK(all_certified);

    const CVector min_point = {Complex(3.98115471, 0.0), Complex(3.92170125, 0.0)};
    const CriticalPointRecord* min_rec = nullptr;
    const bool has_min = landing_contains(rep, min_point, 1e-5, &min_rec);
    CHECK(has_min);
    bool min_classified = false;
    if (min_rec) {
        min_classified = min_rec->delta_d == 1 && min_rec->delta_t == 2 &&
                         min_rec->kind == CriticalKind::Min;
        CHECK(min_classified);
    }
    const bool has_saddle = landing_contains(
        rep, {Complex(-0.20172521, 0.0), Complex(-2.13862013, 0.0)}, 1e-5);
    CHECK(has_saddle);

    bool band = false;
    if (rep.mean_p) band = *rep.mean_p >= 1.8 && *rep.mean_p <= 2.3;
    CHECK(band);

    const bool fast = secs < 30.0;
    CHECK(fast);

    const bool ok = enough && all_certified && has_min && min_classified && has_saddle &&
                    band && fast;
    std::printf("  table2: %zu/%zu converged, mean order %.4f, %.2fs\n", rep.records.size(),
                total, rep.mean_p.value_or(0.0), secs);
    verdict(2, "hybrid quasi-Newton benchmark", ok);
    CHECK(ok);
}

TEST_CASE("criterion 3: plain quasi-Newton benchmark mean order") {
    double secs = 0.0;
    const SweepReport rep = run_demo("table1", &secs);
    bool band = false;
    if (rep.mean_p) band = *rep.mean_p >= 0.9 && *rep.mean_p <= 1.1;
    CHECK(band);
    const bool enough = rep.records.size() >= 20;  // of 26
    CHECK(enough);
    const Problem p = builtin_problem();
    bool certified = true;
    for (const auto& r : rep.records) certified = certified && norm2(p.grad(r.point)) <= 1e-4;
    CHECK(certified);
    const bool fast = secs < 30.0;
    CHECK(fast);
    const bool ok = band && enough && certified && fast;
    std::printf("  table1: %zu/%zu converged, mean order %.4f, %.2fs\n", rep.records.size(),
                rep.config_echo.alphas.size(), rep.mean_p.value_or(0.0), secs);
    verdict(3, "plain quasi-Newton mean order", ok);
    CHECK(ok);
}

TEST_CASE("criterion 4: hybrid pseudo-Newton benchmark reproduction") {
    double secs = 0.0;
    const SweepReport rep = run_demo("table3", &secs);
    const std::size_t total = rep.config_echo.alphas.size();

    const bool enough = rep.records.size() * 5 >= total * 4;
    CHECK(enough);

    const bool has_min = landing_contains(
        rep, {Complex(3.98115471, 0.0), Complex(3.92170125, 0.0)}, 1e-4);
    CHECK(has_min);

    // Conjugate pairs reported by the benchmark run.
    const CVector pair_candidates[] = {
        {Complex(-3.75670368, 0.00677324), Complex(1.14479461, -0.90835133)},
        {Complex(1.52183063, -0.04852431), Complex(-1.07285283, -0.62177498)},
        {Complex(3.68514466, 0.05398708), Complex(-1.20114498, -1.03004629)},
        {Complex(-0.9615658, -0.5828065), Complex(1.85727226, -0.22306481)},
    };
    int pairs = 0;
    for (const CVector& half : pair_candidates) {
        if (landing_contains(rep, half, 1e-4) && landing_contains(rep, conj_point(half), 1e-4))
            ++pairs;
    }
    const bool enough_pairs = pairs >= 3;
    CHECK(enough_pairs);

    bool band = false;
    if (rep.mean_p) band = *rep.mean_p >= 1.8 && *rep.mean_p <= 2.3;
    CHECK(band);

    const bool fast = secs < 60.0;
    CHECK(fast);

    const bool ok = enough && has_min && enough_pairs && band && fast;
    std::printf("  table3: %zu/%zu converged, mean order %.4f, %d conjugate pairs, %.2fs\n",
                rep.records.size(), total, rep.mean_p.value_or(0.0), pairs, secs);
    verdict(4, "hybrid pseudo-Newton benchmark", ok);
    CHECK(ok);
}

TEST_CASE("criterion 5: operator property suite") {
    bool limits = true;
    for (int mu = 0; mu <= 4 && limits; ++mu) {
        for (double zr : {0.5, 1.0, 2.0, -1.5}) {
            const Complex z(zr, 0.0);
            const Complex classical =
                mu == 0 ? Complex(0.0, 0.0) : static_cast<double>(mu) * ipow(z, mu - 1);
            const Complex frac = rl_deriv_monomial(mu, 1.0 - 1e-8, z);
            if (!(std::abs(frac - classical) <= 1e-5 * (1.0 + std::abs(classical)))) {
                limits = false;
                break;
            }
        }
    }
    CHECK(limits);

    bool index_law = true;
    for (int mu : {2, 3, 4}) {
        for (double a : {0.25, 0.3, -0.4}) {
            for (double b : {0.25, -0.35}) {
                for (double x : {0.5, 2.0}) {
                    const double c = gamma_fn(mu + 1.0) / gamma_fn(mu - b + 1.0);
                    const double lhs = c * oracle::rl_closed_form(mu - b, a, x);
                    const double rhs = oracle::rl_closed_form(mu, a + b, x);
                    if (!(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs))))
                        index_law = false;
                }
            }
        }
    }
    CHECK(index_law);

    bool quadrature = true;
    for (int mu : {1, 2, 3}) {
        for (double alpha : {0.25, 0.5, -0.5}) {
            for (double x : {0.5, 1.0, 2.0}) {
                const double numeric = oracle::rl_deriv_monomial(mu, alpha, x);
                const Complex closed = rl_deriv_monomial(mu, alpha, Complex(x, 0.0));
                if (!(std::abs(closed.real() - numeric) <= 1e-4 * std::abs(numeric)))
                    quadrature = false;
            }
        }
    }
    CHECK(quadrature);

    bool recurrence = true;
    std::mt19937 rng(60902);
    std::uniform_real_distribution<double> dist(-20.0, 20.0);
    int checked = 0;
    while (checked < 200) {
        const double x = dist(rng);
        if (std::abs(x - std::round(x)) < 1e-3) continue;
        if (std::abs(x + 1.0 - std::round(x + 1.0)) < 1e-3) continue;
        const double lhs = gamma_fn(x + 1.0);
        const double rhs = x * gamma_fn(x);
        if (!(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs))) recurrence = false;
        ++checked;
    }
    CHECK(recurrence);

    const bool ok = limits && index_law && quadrature && recurrence;
    verdict(5, "operator property suite", ok);
    CHECK(ok);
}

TEST_CASE("criterion 6: fixed-point and classification property suite") {
    // Exact fixed points under every method.
    bool fixed_points = true;
    {
        const CVector root = {Complex(1.0, 0.0), Complex(2.0, 0.0)};
        Problem shifted;
        shifted.dim = 2;
        shifted.grad = [root](const CVector& x) { return vsub(x, root); };
        shifted.hess = [](const CVector&) { return CMatrix::identity(2); };
        const Problem poly = problem_from_system(parse_polynomial_system("x1 - 1\nx2 - 2"));
        MethodConfig cfg;
        for (double a : {0.5, -0.5, 1.3}) {
            for (MethodKind kind :
                 {MethodKind::QuasiNewton, MethodKind::PseudoNewton,
                  MethodKind::ClassicalNewton, MethodKind::FracNewtonRaphson}) {
                cfg.kind = kind;
                const Problem& p = kind == MethodKind::FracNewtonRaphson ? poly : shifted;
                const IterationTrace tr = iterate(p, cfg, FracOrder(a), root);
                if (tr.landing() != root || tr.status != IterStatus::Converged)
                    fixed_points = false;
            }
        }
    }
    CHECK(fixed_points);

    // Sign truth table on diagonal Hessians.
    bool table = true;
    {
        const struct { double a, b; int dd, dt; CriticalKind kind; } cases[] = {
            {2, 3, 1, 2, CriticalKind::Min},       {-1, -4, 1, -2, CriticalKind::Max},
            {1, -1, -1, 0, CriticalKind::Saddle},  {-2, 3, -1, 0, CriticalKind::Saddle},
            {5, 2, 1, 2, CriticalKind::Min},       {-2, -3, 1, -2, CriticalKind::Max},
            {0, 5, 0, 1, CriticalKind::Unclassified},
            {0, -5, 0, -1, CriticalKind::Unclassified},
            {0, 0, 0, 0, CriticalKind::Unclassified},
        };
        for (const auto& c : cases) {
            CMatrix h(2, 2);
            h(0, 0) = c.a;
            h(1, 1) = c.b;
            const Classification got = classify(h);
            if (got.delta_d != c.dd || got.delta_t != c.dt || got.kind != c.kind) table = false;
        }
    }
    CHECK(table);

    bool orders = true;
    for (double p : {1.0, 1.5, 2.0}) {
        const double c = 0.1;
        if (std::abs(order_estimate({std::pow(c, p), std::pow(c, p * p)}) - p) > 1e-9)
            orders = false;
    }
    CHECK(orders);

    // Conjugate closure over every complex landing of the benchmark runs.
    bool closure = true;
    const Problem builtin = builtin_problem();
    for (const char* name : {"table1", "table2", "table3"}) {
        const SweepReport rep = run_demo(name);
        for (const auto& r : rep.records) {
            if (!is_complex_point(r.point)) continue;
            if (norm2(builtin.grad(conj_point(r.point))) > 1e-4) closure = false;
        }
    }
    CHECK(closure);

    const bool ok = fixed_points && table && orders && closure;
    verdict(6, "fixed-point and classification properties", ok);
    CHECK(ok);
}

TEST_CASE("criterion 7: demo determinism") {
    // Library path: identical configs produce identical bytes.
    const SweepConfig cfg = parse_config_text(demo_config_text("table2"));
    const std::string first = csv_text(run_sweep(cfg));
    const std::string second = csv_text(run_sweep(cfg));
    bool ok = !first.empty() && first == second;
    CHECK(ok);

    // CLI path when the binary location is provided by the harness.
    if (const char* cli = std::getenv("FRACFIX_CLI")) {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path();
        const fs::path out1 = dir / "fracfix_accept_demo1.csv";
        const fs::path out2 = dir / "fracfix_accept_demo2.csv";
        const std::string base = std::string("\"") + cli + "\" demo table2 --quiet --output ";
        const int rc1 = std::system((base + "\"" + out1.string() + "\"").c_str());
        const int rc2 = std::system((base + "\"" + out2.string() + "\"").c_str());
        bool cli_ok = rc1 == 0 && rc2 == 0;
        if (cli_ok) {
            std::ifstream f1(out1, std::ios::binary), f2(out2, std::ios::binary);
            std::ostringstream s1, s2;
            s1 << f1.rdbuf();
            s2 << f2.rdbuf();
            cli_ok = !s1.str().empty() && s1.str() == s2.str() && s1.str() == first;
        }
        fs::remove(out1);
        fs::remove(out2);
        CHECK(cli_ok);
        ok = ok && cli_ok;
    }
    verdict(7, "demo determinism", ok);
    CHECK(ok);
}
