#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kmls/analysis.hpp"
#include "kmls/center_state.hpp"
#include "kmls/local_search.hpp"
#include "kmls/point_set.hpp"

namespace kmls {

enum class OptMode { none, planted, exact };
enum class ReportFormat { json, csv };

struct ExperimentConfig {
    // Exactly one of these two must be set.
    std::string input_path;
    std::string generator;

    std::size_t k = 0;
    // Exactly one of these two must be set; epsilon turns into
    // ceil(epsilon * k) steps.
    std::optional<double> epsilon;
    std::optional<std::size_t> steps;

    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::size_t lloyd_iters = 0;
    bool diagnostics = false;             // requires opt_mode != none
    bool diagnostics_every_step = false;  // snapshot after every step, not just {0, l/2, l}
    OptMode opt_mode = OptMode::none;
    ReportFormat format = ReportFormat::json;
    std::size_t threads = 1;
};

// Throws std::invalid_argument on any inconsistent combination.
void validate_config(const ExperimentConfig& cfg);

struct DiagnosticsSnapshot {
    std::size_t at_step = 0;
    StructureReport report;
};

struct TrialResult {
    std::size_t stream = 0;
    double seeding_cost = 0.0;
    RunTrajectory trajectory;
    double final_cost = 0.0;
    std::optional<double> search_cost;  // pre-refinement cost, set when Lloyd ran
    std::optional<ApproxFactor> factor;
    std::optional<double> seeding_factor;
    std::vector<DiagnosticsSnapshot> diagnostics;
    double elapsed_ms = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::size_t resolved_steps = 0;
    PointSet points;
    std::vector<std::size_t> labels;  // empty unless generated with planted clusters
    std::optional<OptClustering> reference;
    std::vector<TrialResult> trials;
};

// Runs the full experiment: one instance, `trials` independent seeding +
// local search runs (trial t draws from stream t of the configured seed), an
// optional reference for factors and diagnostics, optional Lloyd refinement.
// Trials may run on several threads; results are keyed by trial index, so
// the report does not depend on scheduling.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Lloyd iterations on top of a center state. Centers leave the
// point-index representation here: refined centers are arbitrary
// coordinates. A cluster that loses all points keeps its previous center.
// The cost never increases from one committed iteration to the next; the
// loop stops early at a fixed point.
struct LloydResult {
    PointSet centers;
    std::vector<std::size_t> assignment;
    double cost = 0.0;
    std::size_t iterations_run = 0;
};
LloydResult lloyd_refine(const PointSet& points, const CenterState& state, std::size_t iters);

// Serialization. JSON is a single stable-keyed document; CSV is one row per
// step. Rerunning the same config yields byte-identical output except for
// the *_ms timing fields.
void write_report(const ExperimentResult& result, std::ostream& out, ReportFormat format);
std::string report_string(const ExperimentResult& result, ReportFormat format);

} // namespace kmls
