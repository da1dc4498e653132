#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracfix/analysis.hpp"
#include "fracfix/methods.hpp"

namespace fracfix {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlphaSpec {
    enum class Mode { List, Grid, Random };
    Mode mode = Mode::List;
    std::vector<double> list;
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
    std::uint64_t seed = 0;
};

struct SweepConfig {
    std::string problem = "builtin";  // "builtin" or a polynomial file path
    MethodConfig method;
    CVector x0;
    AlphaSpec alpha_spec;
    double integer_exclusion = 0.01;
    double dedup_tol = 1e-4;
    std::string output = "sweep.csv";

    /// Materialized orders, every one satisfying the non-integer guard.
    std::vector<double> alphas;
    /// Notes produced while resolving the config (endpoint snaps etc.).
    std::vector<std::string> warnings;
};

struct SweepFailure {
    double alpha = 0.0;
    IterStatus status = IterStatus::MaxIter;
};

struct SweepReport {
    std::vector<CriticalPointRecord> records;  // converged runs, config order
    std::vector<SweepFailure> failures;
    std::optional<double> mean_p;
    SweepConfig config_echo;
};

/// Parses a JSON config file; see parse_config_text for the schema.
SweepConfig parse_config(const std::string& path);

/// Parses a JSON config document with keys problem, method.{kind, epsilon,
/// hybrid_delta, rnd_digits, grid_digits, max_iter, tol_step, tol_grad},
/// x0, alpha.{list | grid{lo,hi,count} | random{lo,hi,count,seed}},
/// integer_exclusion, dedup_tol, output. Orders are materialized here;
/// grid endpoints on an integer are snapped outward by integer_exclusion.
SweepConfig parse_config_text(const std::string& text);

Problem load_problem(const SweepConfig& cfg);

/// One iterate() call per order; converged traces become classified
/// records, everything else a failure. Deterministic for a fixed config,
/// regardless of the worker count.
SweepReport run_sweep(const SweepConfig& cfg, int jobs = 1);

/// Header `idx,alpha,re_1,im_1,...,step_norm,grad_norm,p_n,delta_d,delta_t,
/// iters`; values with 8 significant digits; byte-deterministic.
void emit_csv(const SweepReport& report, const std::string& path);
std::string csv_text(const SweepReport& report);

/// Per-order blocks of the full iterate sequence, annotated with the run
/// status, for external trajectory plotting.
void emit_trajectories(const SweepConfig& cfg, const std::string& path, int jobs = 1);
std::string trajectories_text(const SweepConfig& cfg, int jobs = 1);

/// Built-in experiment configs; name is one of table1, table2, table3.
/// Returns nullptr for unknown names.
const char* demo_config_text(const std::string& name);

/// Parses "re,re,..." or "(re,im),(re,im),..." point literals.
CVector parse_point(const std::string& text);

}  // namespace fracfix
