#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmls/errors.hpp"
#include "kmls/experiment.hpp"
#include "kmls/io.hpp"
#include "kmls/random.hpp"
#include "kmls/seeding.hpp"
#include "oracles.hpp"

using namespace kmls;
using testutil::points_from;

namespace {

ExperimentConfig base_config() {
    ExperimentConfig cfg;
    cfg.generator = "gaussian_mixture:k=4,n=120,d=2,separation=15";
    cfg.k = 4;
    cfg.epsilon = 1.0;
    cfg.trials = 3;
    cfg.seed = 99;
    return cfg;
}

std::string scrub_timings(std::string text) {
    static const std::regex ms(R"(("elapsed_ms": )[-+0-9.eE]+)");
    return std::regex_replace(text, ms, "$1X");
}

} // namespace

TEST_SUITE("experiment") {

TEST_CASE("config validation") {
    ExperimentConfig cfg = base_config();
    CHECK_NOTHROW(validate_config(cfg));

    SUBCASE("source is required, but only one") {
        cfg.generator.clear();
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
        cfg.generator = "uniform_cube:n=5,d=1";
        cfg.input_path = "points.csv";
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    }
    SUBCASE("k must be positive") {
        cfg.k = 0;
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    }
    SUBCASE("exactly one step budget") {
        cfg.steps = 5;
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
        cfg.epsilon.reset();
        CHECK_NOTHROW(validate_config(cfg));
        cfg.steps.reset();
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    }
    SUBCASE("epsilon bounds") {
        cfg.epsilon = 0.0;
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
        cfg.epsilon = 1.5;
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    }
    SUBCASE("counts must be positive") {
        cfg.trials = 0;
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
        cfg.trials = 1;
        cfg.threads = 0;
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    }
    SUBCASE("diagnostics need a reference") {
        cfg.diagnostics = true;
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
        cfg.opt_mode = OptMode::planted;
        CHECK_NOTHROW(validate_config(cfg));
        cfg.diagnostics = false;
        cfg.diagnostics_every_step = true;
        CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    }
}

TEST_CASE("refinement fixed point") {
    const PointSet ps = points_from({{-1.0}, {0.0}, {1.0}});
    const CenterState st = CenterState::build(ps, std::vector<std::size_t>{1});
    const LloydResult lr = lloyd_refine(ps, st, 10);
    CHECK(lr.centers.row(0)[0] == 0.0);
    CHECK(lr.cost == 2.0);
    CHECK(lr.iterations_run <= 1);
    CHECK(lr.assignment == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("refinement keeps emptied slots in place") {
    const PointSet ps = points_from({{5.0}, {5.0}, {5.0}});
    const CenterState st = CenterState::build(ps, std::vector<std::size_t>{0, 1});
    const LloydResult lr = lloyd_refine(ps, st, 5);
    CHECK(lr.cost == 0.0);
    CHECK(lr.centers.row(0)[0] == 5.0);
    CHECK(lr.centers.row(1)[0] == 5.0); // slot 1 serves nobody yet stays put
}

TEST_CASE("refinement never raises the cost") {
    RandomSource rng(81, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const PointSet ps = testutil::random_points(rng, 100, 3);
        const CenterState st = kmeanspp_seed(ps, 5, rng);
        const LloydResult lr = lloyd_refine(ps, st, 10);
        CHECK(lr.cost <= st.total_cost());
        CHECK(lr.iterations_run <= 10);
        CHECK(lr.cost == cost(ps, lr.centers));
    }
}

TEST_CASE("experiment runs trials on independent streams") {
    ExperimentConfig cfg = base_config();
    cfg.opt_mode = OptMode::planted;
    cfg.diagnostics = true;
    const ExperimentResult res = run_experiment(cfg);

    CHECK(res.resolved_steps == 4);
    REQUIRE(res.trials.size() == 3);
    REQUIRE(res.reference.has_value());
    CHECK(res.reference->k() == 4);

    for (std::size_t t = 0; t < 3; ++t) {
        const TrialResult& tr = res.trials[t];
        CHECK(tr.stream == t);
        CHECK(tr.trajectory.records[0].cost == tr.seeding_cost);
        CHECK(tr.final_cost <= tr.seeding_cost);
        REQUIRE(tr.factor.has_value());
        CHECK(tr.factor->value == tr.final_cost / res.reference->total_cost);
        CHECK(tr.factor->is_upper_bound);
        REQUIRE(tr.seeding_factor.has_value());
        CHECK(*tr.seeding_factor == tr.seeding_cost / res.reference->total_cost);

        // Snapshots at start, midpoint, end of the step budget.
        REQUIRE(tr.diagnostics.size() == 3);
        CHECK(tr.diagnostics[0].at_step == 0);
        CHECK(tr.diagnostics[1].at_step == 2);
        CHECK(tr.diagnostics[2].at_step == 4);
    }
}

TEST_CASE("per-step diagnostics cover every record") {
    ExperimentConfig cfg = base_config();
    cfg.trials = 1;
    cfg.opt_mode = OptMode::planted;
    cfg.diagnostics = true;
    cfg.diagnostics_every_step = true;
    const ExperimentResult res = run_experiment(cfg);
    const TrialResult& tr = res.trials[0];
    CHECK(tr.diagnostics.size() == tr.trajectory.records.size());
    for (std::size_t i = 0; i < tr.diagnostics.size(); ++i)
        CHECK(tr.diagnostics[i].at_step == i);
}

TEST_CASE("steps can be given directly") {
    ExperimentConfig cfg = base_config();
    cfg.epsilon.reset();
    cfg.steps = 7;
    const ExperimentResult res = run_experiment(cfg);
    CHECK(res.resolved_steps == 7);
    CHECK(res.trials[0].trajectory.records.size() <= 8);
}

TEST_CASE("exact reference on a tiny instance") {
    ExperimentConfig cfg;
    cfg.generator = "uniform_cube:n=10,d=2";
    cfg.k = 2;
    cfg.steps = 2;
    cfg.opt_mode = OptMode::exact;
    const ExperimentResult res = run_experiment(cfg);
    REQUIRE(res.reference.has_value());
    CHECK(res.reference->is_exact);
    CHECK_FALSE(res.trials[0].factor->is_upper_bound);
    CHECK(res.trials[0].factor->value >= 1.0);
}

TEST_CASE("oracle overflow propagates") {
    ExperimentConfig cfg;
    cfg.generator = "uniform_cube:n=100,d=2";
    cfg.k = 2;
    cfg.steps = 1;
    cfg.opt_mode = OptMode::exact;
    CHECK_THROWS_AS((void)run_experiment(cfg), OracleTooLarge);
}

TEST_CASE("planted mode needs labels") {
    ExperimentConfig cfg;
    cfg.generator = "uniform_cube:n=30,d=2"; // no planted structure
    cfg.k = 2;
    cfg.steps = 1;
    cfg.opt_mode = OptMode::planted;
    CHECK_THROWS_AS((void)run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("file input feeds the experiment") {
    RandomSource rng(82, 0);
    const PointSet ps = testutil::random_points(rng, 40, 2);
    const std::string path = "experiment_input_test.csv";
    write_points(ps, path);

    ExperimentConfig cfg;
    cfg.input_path = path;
    cfg.k = 3;
    cfg.steps = 3;
    const ExperimentResult res = run_experiment(cfg);
    CHECK(res.points.data() == ps.data());
    CHECK(res.labels.empty());
    CHECK_FALSE(res.trials[0].factor.has_value());
    std::remove(path.c_str());
}

TEST_CASE("reports are byte-stable apart from timings") {
    ExperimentConfig cfg = base_config();
    cfg.opt_mode = OptMode::planted;
    cfg.diagnostics = true;
    const std::string a = scrub_timings(report_string(run_experiment(cfg), ReportFormat::json));
    const std::string b = scrub_timings(report_string(run_experiment(cfg), ReportFormat::json));
    CHECK(a == b);
    CHECK(a.find("\"elapsed_ms\": X") != std::string::npos);
}

TEST_CASE("thread count does not change the report") {
    // The echoed config legitimately differs, so mask it alongside timings.
    const std::regex echoed(R"(("threads": )\d+)");
    ExperimentConfig cfg = base_config();
    cfg.trials = 8;
    const std::string serial = std::regex_replace(
        scrub_timings(report_string(run_experiment(cfg), ReportFormat::json)), echoed, "$1T");
    cfg.threads = 4;
    const std::string parallel = std::regex_replace(
        scrub_timings(report_string(run_experiment(cfg), ReportFormat::json)), echoed, "$1T");
    CHECK(serial == parallel);
}

TEST_CASE("different seeds change the trajectories") {
    ExperimentConfig cfg = base_config();
    cfg.trials = 1;
    const ExperimentResult a = run_experiment(cfg);
    cfg.seed = 100;
    const ExperimentResult b = run_experiment(cfg);
    CHECK(a.trials[0].seeding_cost != b.trials[0].seeding_cost);
}

TEST_CASE("lloyd refinement feeds the reported costs and factors") {
    ExperimentConfig cfg = base_config();
    cfg.opt_mode = OptMode::planted;
    cfg.lloyd_iters = 5;
    const ExperimentResult res = run_experiment(cfg);
    for (const TrialResult& tr : res.trials) {
        REQUIRE(tr.search_cost.has_value());
        CHECK(tr.final_cost <= *tr.search_cost);
        CHECK(tr.factor->value == tr.final_cost / res.reference->total_cost);
    }
}

TEST_CASE("csv layout") {
    ExperimentConfig cfg = base_config();
    cfg.trials = 2;
    cfg.steps = 3;
    cfg.epsilon.reset();
    cfg.format = ReportFormat::csv;
    const std::string text = report_string(run_experiment(cfg), ReportFormat::csv);

    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 1 + 2 * 4); // header + two trials of steps 0..3
    CHECK(lines[0] == "trial,step,cost,accepted,sampled,removed");
    CHECK(lines[1].rfind("0,0,", 0) == 0);
    CHECK(lines[5].rfind("1,0,", 0) == 0);
    for (std::size_t i = 1; i < lines.size(); ++i)
        CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 5);
}

TEST_CASE("json document shape") {
    ExperimentConfig cfg = base_config();
    cfg.trials = 2;
    cfg.opt_mode = OptMode::planted;
    cfg.diagnostics = true;
    const std::string text = report_string(run_experiment(cfg), ReportFormat::json);
    for (const char* key :
         {"\"config\"", "\"trials\"", "\"summary\"", "\"seeding_cost\"", "\"final_cost\"",
          "\"factor\"", "\"swap_acceptance_rate\"", "\"chosen_beta\"", "\"matched\"",
          "\"lonely\"", "\"m_good_mass\"", "\"unsettled\"", "\"at_step\""})
        CHECK(text.find(key) != std::string::npos);
}

} // TEST_SUITE
