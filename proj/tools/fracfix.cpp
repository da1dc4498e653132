#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fracfix/sweep.hpp"

namespace {

using namespace fracfix;

void print_warnings(const SweepConfig& cfg, bool quiet) {
    if (quiet) return;
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
}

void print_summary(const SweepReport& rep, bool quiet) {
    if (quiet) return;
    std::printf("%zu orders: %zu converged, %zu failed", rep.config_echo.alphas.size(),
                rep.records.size(), rep.failures.size());
    if (rep.mean_p) std::printf(", mean order %.4f", *rep.mean_p);
    std::printf("\n");
    for (const auto& f : rep.failures)
        std::printf("  failed alpha=%.8g (%s)\n", f.alpha, to_string(f.status));
    if (!rep.records.empty()) {
        const auto distinct = dedup(rep.records, rep.config_echo.dedup_tol);
        std::printf("distinct landing points (tol %.3g):\n", rep.config_echo.dedup_tol);
        for (const auto& r : distinct) {
            std::printf("  (");
            for (std::size_t k = 0; k < r.point.size(); ++k) {
                if (k) std::printf(", ");
                if (r.point[k].imag() == 0.0) std::printf("%.8f", r.point[k].real());
                else std::printf("%.8f%+.8fi", r.point[k].real(), r.point[k].imag());
            }
            std::printf(")  %s  delta_d=%d delta_t=%d\n", to_string(r.kind), r.delta_d,
                        r.delta_t);
        }
    }
}

int run_report(const SweepConfig& cfg, int jobs, bool quiet) {
    print_warnings(cfg, quiet);
    const SweepReport rep = run_sweep(cfg, jobs);
    emit_csv(rep, cfg.output);
    print_summary(rep, quiet);
    if (!quiet) std::printf("wrote %s\n", cfg.output.c_str());
    if (rep.records.empty()) return 3;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional fixed-point solvers for critical points of scalar functions"};
    app.require_subcommand(1);
    app.fallthrough();  // accept --jobs/--quiet after the subcommand too

    int jobs = 1;
    bool quiet = false;
    app.add_option("--jobs", jobs, "Worker threads for independent orders")
        ->check(CLI::PositiveNumber);
    app.add_flag("--quiet", quiet, "Suppress the text summary");

    std::string config_path;
    std::string demo_name;
    std::string point_text;
    std::string output_override;

    auto* sweep = app.add_subcommand("sweep", "Run an order sweep from a config file");
    sweep->add_option("config", config_path, "JSON config file")->required();

    auto* traj = app.add_subcommand("trajectories", "Emit full iterate sequences per order");
    traj->add_option("config", config_path, "JSON config file")->required();

    auto* demo = app.add_subcommand("demo", "Run a built-in experiment (table1|table2|table3)");
    demo->add_option("name", demo_name, "table1, table2 or table3")->required();
    demo->add_option("--output", output_override, "Override the output path");

    auto* cls = app.add_subcommand("classify", "Classify a point under the configured problem");
    cls->add_option("config", config_path, "JSON config file")->required();
    cls->add_option("point", point_text, "Coordinates: re,re,... or (re,im),(re,im),...")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sweep->parsed()) {
            return run_report(parse_config(config_path), jobs, quiet);
        }
        if (traj->parsed()) {
            const SweepConfig cfg = parse_config(config_path);
            print_warnings(cfg, quiet);
            emit_trajectories(cfg, cfg.output, jobs);
            if (!quiet) std::printf("wrote %s\n", cfg.output.c_str());
            return 0;
        }
        if (demo->parsed()) {
            const char* text = demo_config_text(demo_name);
            if (!text) throw ConfigError("demo: unknown name '" + demo_name + "'");
            SweepConfig cfg = parse_config_text(text);
            if (!output_override.empty()) cfg.output = output_override;
            return run_report(cfg, jobs, quiet);
        }
        if (cls->parsed()) {
            const SweepConfig cfg = parse_config(config_path);
            const Problem prob = load_problem(cfg);
            const CVector x = parse_point(point_text);
            if (x.size() != prob.dim) throw ConfigError("point: dimension mismatch");
            const Classification c = classify(prob.hess(x));
            std::printf("grad_norm: %.8g\n", norm2(prob.grad(x)));
            std::printf("delta_d: %d\ndelta_t: %d\nkind: %s\n", c.delta_d, c.delta_t,
                        to_string(c.kind));
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
