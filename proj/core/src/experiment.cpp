#include "kmls/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "kmls/errors.hpp"
#include "kmls/generator.hpp"
#include "kmls/geometry.hpp"
#include "kmls/io.hpp"
#include "kmls/sampling.hpp"
#include "kmls/seeding.hpp"

namespace kmls {

namespace {

using json = nlohmann::ordered_json;

// Stream id reserved for instance generation so trial streams stay 0-based.
constexpr std::uint64_t kInstanceStream = ~std::uint64_t{0};

double now_ms_since(const std::chrono::steady_clock::time_point& t0) {
    const std::chrono::duration<double, std::milli> dt =
        std::chrono::steady_clock::now() - t0;
    return dt.count();
}

} // namespace

void validate_config(const ExperimentConfig& cfg) {
    const bool has_input = !cfg.input_path.empty();
    const bool has_gen = !cfg.generator.empty();
    if (has_input == has_gen)
        throw std::invalid_argument("config: exactly one of input path / generator required");
    if (cfg.k == 0)
        throw std::invalid_argument("config: k must be positive");
    if (cfg.epsilon.has_value() == cfg.steps.has_value())
        throw std::invalid_argument("config: exactly one of epsilon / steps required");
    if (cfg.epsilon && (!(*cfg.epsilon > 0.0) || *cfg.epsilon > 1.0))
        throw std::invalid_argument("config: epsilon must be in (0, 1]");
    if (cfg.trials == 0)
        throw std::invalid_argument("config: trials must be positive");
    if (cfg.threads == 0)
        throw std::invalid_argument("config: threads must be positive");
    if (cfg.diagnostics && cfg.opt_mode == OptMode::none)
        throw std::invalid_argument("config: diagnostics need a reference (opt = exact or planted)");
    if (cfg.diagnostics_every_step && !cfg.diagnostics)
        throw std::invalid_argument("config: per-step diagnostics require diagnostics on");
}

LloydResult lloyd_refine(const PointSet& points, const CenterState& state, std::size_t iters) {
    const std::size_t n = points.size();
    const std::size_t k = state.k();
    const std::size_t d = points.dim();

    LloydResult res;
    std::vector<double> centers(k * d);
    for (std::size_t c = 0; c < k; ++c) {
        auto r = points.row(state.centers()[c]);
        std::copy(r.begin(), r.end(), centers.begin() + c * d);
    }
    res.assignment.assign(state.first_slots().begin(), state.first_slots().end());
    res.cost = state.total_cost();

    std::vector<double> next(k * d);
    std::vector<std::size_t> counts(k);
    std::vector<std::size_t> assign(n);
    for (std::size_t it = 0; it < iters; ++it) {
        // Means of the current clusters; an emptied cluster keeps its center.
        std::fill(next.begin(), next.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c = res.assignment[i];
            ++counts[c];
            auto r = points.row(i);
            for (std::size_t j = 0; j < d; ++j) next[c * d + j] += r[j];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0)
                std::copy(centers.begin() + c * d, centers.begin() + (c + 1) * d,
                          next.begin() + c * d);
            else
                for (std::size_t j = 0; j < d; ++j)
                    next[c * d + j] /= static_cast<double>(counts[c]);
        }

        double new_cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto r = points.row(i);
            double best = squared_distance(r, {next.data(), d});
            std::size_t best_c = 0;
            for (std::size_t c = 1; c < k; ++c) {
                const double d2 = squared_distance(r, {next.data() + c * d, d});
                if (d2 < best) {
                    best = d2;
                    best_c = c;
                }
            }
            assign[i] = best_c;
            new_cost += best;
        }

        // Guards: never commit a cost increase (possible only through
        // rounding), and stop once the assignment is stationary.
        if (new_cost > res.cost) break;
        centers = next;
        const bool stationary = assign == res.assignment;
        res.assignment = assign;
        res.cost = new_cost;
        ++res.iterations_run;
        if (stationary) break;
    }

    res.centers = PointSet::from_rows(std::move(centers), k, d);
    return res;
}

namespace {

std::vector<std::size_t> snapshot_steps(std::size_t budget, bool every_step) {
    std::vector<std::size_t> s;
    if (every_step) {
        for (std::size_t i = 0; i <= budget; ++i) s.push_back(i);
        return s;
    }
    s.push_back(0);
    if (budget / 2 != 0 && budget / 2 != budget) s.push_back(budget / 2);
    if (budget != 0) s.push_back(budget);
    return s;
}

TrialResult run_trial(const ExperimentConfig& cfg, const PointSet& points,
                      const std::optional<OptClustering>& ref, std::size_t trial,
                      std::size_t budget) {
    const auto t0 = std::chrono::steady_clock::now();
    RandomSource rng(cfg.seed, trial);

    TrialResult tr;
    tr.stream = trial;

    CenterState state = kmeanspp_seed(points, cfg.k, rng);
    tr.seeding_cost = state.total_cost();

    std::vector<std::size_t> snaps;
    if (cfg.diagnostics) snaps = snapshot_steps(budget, cfg.diagnostics_every_step);
    auto maybe_snapshot = [&](std::size_t at) {
        if (!cfg.diagnostics) return;
        if (std::find(snaps.begin(), snaps.end(), at) == snaps.end()) return;
        tr.diagnostics.push_back({at, structure_report(points, state, *ref)});
    };
    maybe_snapshot(0);

    tr.trajectory.records.push_back({0, state.total_cost(), false, npos, npos, 0.0});
    for (std::size_t s = 1; s <= budget; ++s) {
        const auto s0 = std::chrono::steady_clock::now();
        const SwapOutcome out = local_search_step(points, state, rng);
        tr.trajectory.records.push_back({s, out.new_cost, out.accepted, out.sampled_point,
                                         out.removed_slot, now_ms_since(s0)});
        maybe_snapshot(s);
        if (out.converged) {
            tr.trajectory.converged = true;
            break;
        }
    }
    tr.final_cost = tr.trajectory.final_cost();

    if (cfg.lloyd_iters > 0) {
        const LloydResult lr = lloyd_refine(points, state, cfg.lloyd_iters);
        tr.search_cost = tr.final_cost;
        tr.final_cost = lr.cost;
    }

    if (ref) {
        tr.seeding_factor = ref->total_cost > 0.0
                                ? tr.seeding_cost / ref->total_cost
                                : (tr.seeding_cost > 0.0
                                       ? std::numeric_limits<double>::infinity()
                                       : 1.0);
        ApproxFactor f = approximation_factor(state, *ref);
        if (cfg.lloyd_iters > 0) {
            // Same flags, but measured on the refined cost.
            if (ref->total_cost > 0.0) {
                f.value = tr.final_cost / ref->total_cost;
                f.is_infinite = false;
            } else if (tr.final_cost > 0.0) {
                f.value = std::numeric_limits<double>::infinity();
                f.is_infinite = true;
            } else {
                f.value = 1.0;
                f.is_infinite = false;
            }
        }
        tr.factor = f;
    }

    tr.elapsed_ms = now_ms_since(t0);
    return tr;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);

    ExperimentResult result;
    result.config = cfg;

    if (!cfg.input_path.empty()) {
        result.points = load_points(cfg.input_path);
    } else {
        RandomSource gen_rng(cfg.seed, kInstanceStream);
        GeneratedInstance inst = generate_instance(parse_generator_spec(cfg.generator), gen_rng);
        result.points = std::move(inst.points);
        result.labels = std::move(inst.labels);
    }

    // Reference before any trial: oracle feasibility errors must not wait for
    // the sampling work to finish.
    if (cfg.opt_mode == OptMode::exact) {
        result.reference = exact_opt(result.points, cfg.k);
    } else if (cfg.opt_mode == OptMode::planted) {
        if (result.labels.empty())
            throw std::invalid_argument(
                "config: opt = planted needs a generated instance with labels");
        result.reference = planted_reference(result.points, result.labels);
    }

    result.resolved_steps =
        cfg.steps ? *cfg.steps : steps_from_epsilon(*cfg.epsilon, cfg.k);

    result.trials.resize(cfg.trials);
    const std::size_t workers = std::min(cfg.threads, cfg.trials);
    if (workers <= 1) {
        for (std::size_t t = 0; t < cfg.trials; ++t)
            result.trials[t] =
                run_trial(cfg, result.points, result.reference, t, result.resolved_steps);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (std::size_t t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1))
                    result.trials[t] = run_trial(cfg, result.points, result.reference, t,
                                                 result.resolved_steps);
            });
        }
        for (auto& th : pool) th.join();
    }
    return result;
}

// ---- serialization ---------------------------------------------------------

namespace {

json stats_json(std::vector<double> v) {
    if (v.empty()) return nullptr;
    std::sort(v.begin(), v.end());
    double sum = 0.0;
    for (double x : v) sum += x;
    const std::size_t n = v.size();
    const double median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    return json{{"mean", sum / static_cast<double>(n)},
                {"median", median},
                {"min", v.front()},
                {"max", v.back()}};
}

json report_json(const StructureReport& rep) {
    json unsettled = json::object();
    for (auto [beta, count] : rep.unsettled)
        unsettled[std::to_string(static_cast<long long>(beta))] = count;
    json matched = json::array();
    for (auto [slot, cluster] : rep.matched) matched.push_back(json::array({slot, cluster}));
    json reassign = json::array();
    for (auto [slot, cost] : rep.reassign_costs) reassign.push_back(json::array({slot, cost}));
    return json{{"alpha", rep.alpha.is_infinite ? json(nullptr) : json(rep.alpha.value)},
                {"alpha_is_upper_bound", rep.alpha.is_upper_bound},
                {"alpha_infinite", rep.alpha.is_infinite},
                {"chosen_beta", rep.chosen_beta},
                {"beta_fallback", rep.beta_fallback},
                {"unsettled", unsettled},
                {"unsettled_at_chosen_beta", rep.unsettled_at_chosen},
                {"matched", matched},
                {"lonely", rep.lonely},
                {"reassign_costs", reassign},
                {"m_good", rep.m_good},
                {"l_good", rep.l_good},
                {"lonely_available", rep.lonely_available},
                {"m_good_mass", rep.m_good_mass},
                {"l_good_mass", rep.l_good_mass},
                {"m_mass_bound_held", rep.m_mass_bound_held},
                {"l_mass_bound_held", rep.l_mass_bound_held}};
}

json trial_json(const TrialResult& tr) {
    json steps = json::array();
    for (std::size_t i = 1; i < tr.trajectory.records.size(); ++i) {
        const StepRecord& r = tr.trajectory.records[i];
        steps.push_back(json{{"i", r.step},
                             {"cost", r.cost},
                             {"accepted", r.accepted},
                             {"sampled", r.sampled == npos ? json(nullptr) : json(r.sampled)},
                             {"removed", r.removed == npos ? json(nullptr) : json(r.removed)},
                             {"elapsed_ms", r.elapsed_ms}});
    }
    json t{{"stream", tr.stream},
           {"seeding_cost", tr.seeding_cost},
           {"steps", std::move(steps)},
           {"final_cost", tr.final_cost},
           {"converged", tr.trajectory.converged}};
    if (tr.search_cost) t["search_cost"] = *tr.search_cost;
    if (tr.factor) {
        t["factor"] = tr.factor->is_infinite ? json(nullptr) : json(tr.factor->value);
        t["factor_is_upper_bound"] = tr.factor->is_upper_bound;
        t["factor_infinite"] = tr.factor->is_infinite;
    }
    if (tr.seeding_factor) t["seeding_factor"] = *tr.seeding_factor;
    if (!tr.diagnostics.empty()) {
        json diags = json::array();
        for (const DiagnosticsSnapshot& s : tr.diagnostics) {
            json d = report_json(s.report);
            json with_step{{"at_step", s.at_step}};
            with_step.update(d);
            diags.push_back(std::move(with_step));
        }
        t["diagnostics"] = std::move(diags);
    }
    t["elapsed_ms"] = tr.elapsed_ms;
    return t;
}

json config_json(const ExperimentResult& result) {
    const ExperimentConfig& cfg = result.config;
    json c{{"source", cfg.input_path.empty() ? cfg.generator : cfg.input_path},
           {"source_kind", cfg.input_path.empty() ? "generator" : "file"},
           {"k", cfg.k},
           {"epsilon", cfg.epsilon ? json(*cfg.epsilon) : json(nullptr)},
           {"steps", result.resolved_steps},
           {"trials", cfg.trials},
           {"seed", cfg.seed},
           {"lloyd", cfg.lloyd_iters},
           {"diagnostics", cfg.diagnostics}};
    switch (cfg.opt_mode) {
        case OptMode::none: c["opt"] = "none"; break;
        case OptMode::planted: c["opt"] = "planted"; break;
        case OptMode::exact: c["opt"] = "exact"; break;
    }
    c["threads"] = cfg.threads;
    return c;
}

json summary_json(const ExperimentResult& result) {
    std::vector<double> seeding, finals, factors;
    std::size_t attempted = 0, accepted = 0, converged = 0;
    for (const TrialResult& tr : result.trials) {
        seeding.push_back(tr.seeding_cost);
        finals.push_back(tr.final_cost);
        if (tr.factor && !tr.factor->is_infinite) factors.push_back(tr.factor->value);
        attempted += tr.trajectory.records.size() - 1;
        for (std::size_t i = 1; i < tr.trajectory.records.size(); ++i)
            accepted += tr.trajectory.records[i].accepted ? 1 : 0;
        converged += tr.trajectory.converged ? 1 : 0;
    }
    json s{{"trials", result.trials.size()},
           {"seeding_cost", stats_json(std::move(seeding))},
           {"final_cost", stats_json(std::move(finals))},
           {"swap_acceptance_rate",
            attempted == 0 ? json(nullptr)
                           : json(static_cast<double>(accepted) / static_cast<double>(attempted))},
           {"converged_trials", converged}};
    if (!factors.empty()) s["factor"] = stats_json(std::move(factors));
    return s;
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

void write_csv(const ExperimentResult& result, std::ostream& out) {
    out << "trial,step,cost,accepted,sampled,removed\n";
    for (const TrialResult& tr : result.trials) {
        for (const StepRecord& r : tr.trajectory.records) {
            out << tr.stream << ',' << r.step << ',' << format_double(r.cost) << ','
                << (r.accepted ? 1 : 0) << ',';
            if (r.sampled != npos) out << r.sampled;
            out << ',';
            if (r.removed != npos) out << r.removed;
            out << '\n';
        }
    }
}

} // namespace

void write_report(const ExperimentResult& result, std::ostream& out, ReportFormat format) {
    if (format == ReportFormat::csv) {
        write_csv(result, out);
        return;
    }
    json doc{{"config", config_json(result)},
             {"trials", json::array()},
             {"summary", summary_json(result)}};
    for (const TrialResult& tr : result.trials) doc["trials"].push_back(trial_json(tr));
    out << doc.dump(2) << '\n';
}

std::string report_string(const ExperimentResult& result, ReportFormat format) {
    std::ostringstream out;
    write_report(result, out, format);
    return out.str();
}

} // namespace kmls
