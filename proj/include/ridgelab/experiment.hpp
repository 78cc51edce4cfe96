#pragma once

// Node-sampling experiment: optimized distribution versus uniform random
// features, swept over the number of draws.
//
// Seeds: every (repetition, n, method) task draws from
// split_seed(seed, {repetition, n, method}), so results do not depend on
// the number of worker threads.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ridgelab/lottery.hpp"

namespace ridgelab {

struct ExperimentConfig {
    std::uint64_t p = 127;
    std::size_t d = 1;
    std::string target = "sine4pi";        // sine4pi | tanh-target | file:<dataset.csv>
    std::string activation = "ramp-relu";  // ramp-relu | tanh10 | file:<activation.csv>
    double lambda = 1e-4;
    double big_delta = 5.5e-5;
    double epsilon = 5e-2;
    double delta_fail = 0.05;
    double alpha = 4e21;
    double beta = 5.0;
    std::vector<std::size_t> n_grid = default_n_grid();
    std::size_t repetitions = 20;
    std::uint64_t seed = 1;
    std::string sampler = "alias";    // alias | rejection
    std::string baseline = "uniform"; // uniform | none
    std::size_t threads = 0;          // 0: hardware concurrency

    static std::vector<std::size_t> default_n_grid();
};

/// Sets one field from its textual form. Keys use the CLI spelling
/// (e.g. big-delta); underscores are accepted too. Throws ConfigError.
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Flat `key = value` lines; '#' starts a comment.
void apply_config_text(ExperimentConfig& cfg, std::istream& is);
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

/// Throws ConfigError naming the first offending key.
void validate_config(const ExperimentConfig& cfg);

/// Unit-norm sine4pi / tanh-target sampled on the grid, or a dataset file.
EmpiricalData make_dataset(const ExperimentConfig& cfg);
ActivationPair make_activation(const ExperimentConfig& cfg);

/// Target on Z_p^d: sin(4 pi s / p) with s = (x_0 + ... + x_{d-1}) mod p, unit norm.
GridFunction sine4pi_target(PrimeModulus p, std::size_t d);
/// tanh(10 (s - (p-1)/2) / p), same s, unit norm.
GridFunction tanh_target(PrimeModulus p, std::size_t d);

enum class Method { Optimized, Uniform };

const char* method_name(Method m) noexcept;

struct RunRecord {
    std::size_t n = 0;
    Method method = Method::Optimized;
    std::size_t repetition = 0;
    double risk = 0.0;
    std::size_t nodes_used = 0;
    std::uint64_t seed = 0;
};

struct SummaryRow {
    std::size_t n = 0;
    Method method = Method::Optimized;
    double mean_risk = 0.0;
    double std_risk = 0.0;  // unbiased; 0 for a single repetition
    std::size_t count = 0;
};

struct ExperimentResult {
    std::vector<RunRecord> records;   // ordered by n, method, repetition
    std::vector<SummaryRow> summary;  // ordered by n, method
    RidgeSolution ridge;
    OptimizedDistribution distribution;
    DecayClassParams params;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

/// runs.csv, summary.csv, distribution.csv (grid CSV of the node
/// probabilities; header only when absent) and plotdata.csv.
void emit_outputs(const std::vector<RunRecord>& records, const std::vector<SummaryRow>& summary,
                  const std::optional<RidgeletCoeffs>& distribution, const std::filesystem::path& out_dir);
void emit_outputs(const ExperimentResult& result, const std::filesystem::path& out_dir);

void write_runs_csv(std::ostream& os, const std::vector<RunRecord>& records);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& summary);
void write_plotdata_csv(std::ostream& os, const std::vector<SummaryRow>& summary);

std::vector<RunRecord> read_runs_csv(std::istream& is);

} // namespace ridgelab
