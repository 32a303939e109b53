#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bonesoup/merging.hpp"
#include "bonesoup/metrics.hpp"
#include "bonesoup/trainer.hpp"

namespace bonesoup {

inline constexpr const char* kToolVersion = "bonesoup 0.1.0";

struct GridSpec {
    // Exactly one of the step fields is set, or an explicit list is given.
    std::optional<double> two_obj_step;
    std::optional<double> three_obj_step;
    std::vector<Vec> explicit_points;
};

struct ExperimentConfig {
    World world;
    int objectives = 2;
    std::vector<MethodTag> methods;
    GridSpec grid;
    TrainerConfig trainer;
    std::vector<double> beta_candidates = {0.8, 0.7, 0.6};
    std::vector<double> alpha_candidates = {0.1, 0.2, 0.3, 0.4, 0.5};
    std::optional<Vec> hv_reference;  // nullopt means "auto"
    std::optional<GridSpec> validation_grid;
    long seed = 0;
    std::string output_dir = "out";

    void validate() const;
    std::vector<PreferenceVector> grid_points() const;
    std::vector<PreferenceVector> validation_points() const;
};

// 0.1-spaced simplex lattice: 11 points for n=2, 66 for n=3.
std::vector<PreferenceVector> generate_grid(int n, double step);

struct RowRecord {
    PreferenceVector preference;
    Vec coefficients;  // lambda used for merging
    Vec rewards;
};

struct MethodRun {
    MethodTag tag;
    std::vector<RowRecord> rows;
    // Overrides tag.name() for runs parsed back from CSV, where the original
    // tag is not reconstructed.
    std::string display_name;

    std::string name() const { return display_name.empty() ? tag.name() : display_name; }
    std::vector<FrontPoint> front() const;
};

struct SweepResult {
    std::vector<MethodRun> runs;
    std::vector<std::pair<std::string, MetricsReport>> reports;  // per method, run order
    Vec hv_reference_used;
    std::string config_echo;  // JSON text of the resolved config
    std::string tool_version = kToolVersion;
};

// Runs one method over the full preference grid.
MethodRun run_method(const MethodTag& method, const ExperimentConfig& config);

// Runs every method, computes all six metrics per method, deterministic.
SweepResult run_sweep(const ExperimentConfig& config);

// Writes fronts.csv, metrics.csv, result.json, plotdata/<method>.csv.
// Nothing is left behind on failure.
void emit_outputs(const SweepResult& result, const std::string& dir);

// Strict config parsing; unknown keys are a hard error.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

// Serialized forms used by emit_outputs, exposed for the CLI/tests.
std::string fronts_csv(const SweepResult& result);
std::string metrics_csv(const SweepResult& result);
std::string result_json(const SweepResult& result);

// Parses a fronts.csv back into per-method fronts (for the metrics command).
std::vector<MethodRun> parse_fronts_csv(const std::string& csv_text);

// Auto hypervolume reference: componentwise minimum over all fronts minus
// 0.1 of the componentwise range.
Vec auto_hv_reference(const std::vector<MethodRun>& runs);

}  // namespace bonesoup
