#include "autoplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "autoplan/errors.hpp"
#include "autoplan/rng.hpp"

namespace autoplan {

namespace {

std::vector<double> normalize(Vec2 p, const Rect& region) {
    return {(p.x - region.xmin) / region.width(), (p.y - region.ymin) / region.height()};
}

BaseStation make_bs(const Candidate& c, const NewBsTemplate& tmpl) {
    BaseStation bs;
    bs.x = c.pos.x;
    bs.y = c.pos.y;
    bs.z = c.z;
    bs.tx_power_dbm = tmpl.tx_power_dbm;
    bs.antenna_gain_db = tmpl.antenna_gain_db;
    return bs;
}

bool same_position(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

bool is_excluded(Vec2 p, const std::vector<Vec2>& excluded) {
    for (const Vec2& e : excluded) {
        if (same_position(p, e)) return true;
    }
    return false;
}

// Evaluates the target of committed set + one extra BS by folding the extra
// field into a copy of the committed map; identical to a full re-solve.
class DrtEvaluator {
public:
    DrtEvaluator(const Scene& scene, const EngineConfig& config,
                 const MaterialParams& params, const Grid& grid, double alpha,
                 double r_th)
        : scene_(scene), config_(config), params_(params), grid_(grid), alpha_(alpha),
          r_th_(r_th) {
        base_ = solve_radiomap(scene_, config_, params_, scene_.existing_bs, grid_);
        next_index_ = static_cast<int>(scene_.existing_bs.size());
    }

    Metrics evaluate_with(const BaseStation& bs) {
        ++queries_;
        RadioMap map = base_;
        merge_field(map, rsrp_field(scene_, config_, params_, bs, grid_), next_index_);
        return target(map, alpha_, r_th_);
    }

    Metrics evaluate_with_group(const std::vector<BaseStation>& group) {
        ++queries_;
        RadioMap map = base_;
        int idx = next_index_;
        for (const BaseStation& bs : group) {
            merge_field(map, rsrp_field(scene_, config_, params_, bs, grid_), idx++);
        }
        return target(map, alpha_, r_th_);
    }

    void commit(const BaseStation& bs) {
        merge_field(base_, rsrp_field(scene_, config_, params_, bs, grid_), next_index_);
        ++next_index_;
    }

    Metrics committed_metrics() const { return target(base_, alpha_, r_th_); }
    long long queries() const { return queries_; }

private:
    const Scene& scene_;
    const EngineConfig& config_;
    const MaterialParams& params_;
    const Grid& grid_;
    double alpha_;
    double r_th_;
    RadioMap base_;
    int next_index_ = 0;
    long long queries_ = 0;
};

std::vector<Vec2> existing_positions(const Scene& scene) {
    std::vector<Vec2> out;
    out.reserve(scene.existing_bs.size());
    for (const BaseStation& bs : scene.existing_bs) out.push_back(bs.pos2());
    return out;
}

std::vector<int> available_indices(const std::vector<Candidate>& candidates,
                                   const std::vector<Vec2>& excluded) {
    std::vector<int> avail;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!is_excluded(candidates[i].pos, excluded)) avail.push_back(static_cast<int>(i));
    }
    return avail;
}

}  // namespace

int select_next(const GpModel& model, const std::vector<Candidate>& candidates,
                const std::vector<Vec2>& excluded, double t_best, double xi,
                const Rect& region) {
    int best = -1;
    double best_ei = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (is_excluded(candidates[i].pos, excluded)) continue;
        const double ei =
            expected_improvement(model, normalize(candidates[i].pos, region), t_best, xi);
        if (best < 0 || ei > best_ei) {
            best = static_cast<int>(i);
            best_ei = ei;
        }
    }
    if (best < 0) throw ValidationError("select_next: no feasible candidate remains");
    return best;
}

PlanReport plan(const Scene& scene, const EngineConfig& config,
                const MaterialParams& params, const std::vector<Candidate>& candidates,
                int n_new, const PlanBudget& budget, const Grid& grid, double alpha,
                double r_th, std::uint64_t seed, const NewBsTemplate& bs_template,
                const GpConfig& gp_config) {
    if (n_new < 1) throw std::invalid_argument("plan: n_new must be >= 1");
    if (budget.q_init < 1 || budget.q_bo < 0) {
        throw std::invalid_argument("plan: budget must have q_init >= 1, q_bo >= 0");
    }
    if (candidates.empty()) throw ValidationError("plan: empty candidate set");

    const auto t0 = std::chrono::steady_clock::now();
    DrtEvaluator drt(scene, config, params, grid, alpha, r_th);
    Rng rng(seed);

    PlanReport report;
    report.method = "bo";
    report.seed = seed;
    std::vector<Vec2> excluded = existing_positions(scene);

    for (int n = 1; n <= n_new; ++n) {
        const std::vector<int> avail = available_indices(candidates, excluded);
        if (avail.empty()) throw ValidationError("plan: no feasible candidate remains");

        RoundTrace trace;
        trace.bs_number = n;

        std::vector<GpObservation> observations;
        double t_best = -std::numeric_limits<double>::infinity();
        int best_candidate = -1;

        const auto evaluate = [&](int ci) {
            const Metrics m = drt.evaluate_with(make_bs(candidates[static_cast<std::size_t>(ci)],
                                                        bs_template));
            observations.push_back(
                {normalize(candidates[static_cast<std::size_t>(ci)].pos, scene.region),
                 m.target});
            if (m.target > t_best) {
                t_best = m.target;
                best_candidate = ci;
            }
            EvalRecord rec;
            rec.candidate = ci;
            rec.x = candidates[static_cast<std::size_t>(ci)].pos.x;
            rec.y = candidates[static_cast<std::size_t>(ci)].pos.y;
            rec.target = m.target;
            rec.incumbent = t_best;
            trace.evals.push_back(rec);
        };

        // Seeded-random phase: partial Fisher-Yates sample without replacement,
        // falling back to replacement if the pool is smaller than the budget.
        std::vector<int> pool = avail;
        const int n_init = budget.q_init;
        for (int q = 0; q < n_init; ++q) {
            if (static_cast<std::size_t>(q) < pool.size()) {
                const std::size_t j =
                    static_cast<std::size_t>(q) +
                    static_cast<std::size_t>(rng.integer(pool.size() - static_cast<std::size_t>(q)));
                std::swap(pool[static_cast<std::size_t>(q)], pool[j]);
                evaluate(pool[static_cast<std::size_t>(q)]);
            } else {
                evaluate(pool[static_cast<std::size_t>(rng.integer(pool.size()))]);
            }
        }

        // Length scale is selected once per round, then frozen.
        GpModel model = gp_fit(observations, gp_config);
        trace.length_scale = model.length_scale();

        for (int q = 0; q < budget.q_bo; ++q) {
            const double xi_raw = gp_config.xi * model.output_std();
            const int ci =
                select_next(model, candidates, excluded, t_best, xi_raw, scene.region);
            evaluate(ci);
            model = GpModel::fit(observations, trace.length_scale, gp_config.jitter);
        }

        const Candidate& chosen = candidates[static_cast<std::size_t>(best_candidate)];
        trace.chosen_candidate = best_candidate;
        trace.chosen_target = t_best;
        report.rounds.push_back(std::move(trace));

        const BaseStation bs = make_bs(chosen, bs_template);
        drt.commit(bs);
        report.new_bs.push_back(bs);
        excluded.push_back(chosen.pos);
    }

    report.final_metrics = drt.committed_metrics();
    report.drt_queries = drt.queries();
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

PlanReport baseline_random(const Scene& scene, const EngineConfig& config,
                           const MaterialParams& params,
                           const std::vector<Candidate>& candidates, int n_new,
                           int n_groups, const Grid& grid, double alpha, double r_th,
                           std::uint64_t seed, const NewBsTemplate& bs_template) {
    if (n_groups < 1) throw std::invalid_argument("baseline_random: n_groups must be >= 1");
    if (n_new < 1) throw std::invalid_argument("baseline_random: n_new must be >= 1");
    if (candidates.size() < static_cast<std::size_t>(n_new)) {
        throw ValidationError("baseline_random: candidate set smaller than n_new");
    }

    const auto t0 = std::chrono::steady_clock::now();
    DrtEvaluator drt(scene, config, params, grid, alpha, r_th);
    Rng rng(seed);

    PlanReport report;
    report.method = "rs";
    report.seed = seed;

    RoundTrace trace;
    trace.bs_number = 1;

    std::vector<int> best_group;
    double best_target = -std::numeric_limits<double>::infinity();
    std::vector<int> pool(candidates.size());
    std::iota(pool.begin(), pool.end(), 0);

    for (int g = 0; g < n_groups; ++g) {
        // Partial Fisher-Yates: first n_new entries form the group.
        for (int k = 0; k < n_new; ++k) {
            const std::size_t j =
                static_cast<std::size_t>(k) +
                static_cast<std::size_t>(rng.integer(pool.size() - static_cast<std::size_t>(k)));
            std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
        }
        std::vector<int> group(pool.begin(), pool.begin() + n_new);
        std::vector<BaseStation> group_bs;
        group_bs.reserve(group.size());
        for (const int ci : group) {
            group_bs.push_back(make_bs(candidates[static_cast<std::size_t>(ci)], bs_template));
        }
        const Metrics m = drt.evaluate_with_group(group_bs);
        if (m.target > best_target) {
            best_target = m.target;
            best_group = group;
        }
        EvalRecord rec;
        rec.candidate = group.front();
        rec.x = candidates[static_cast<std::size_t>(group.front())].pos.x;
        rec.y = candidates[static_cast<std::size_t>(group.front())].pos.y;
        rec.target = m.target;
        rec.incumbent = best_target;
        trace.evals.push_back(rec);
    }

    trace.chosen_candidate = best_group.front();
    trace.chosen_target = best_target;
    report.rounds.push_back(std::move(trace));

    for (const int ci : best_group) {
        const BaseStation bs = make_bs(candidates[static_cast<std::size_t>(ci)], bs_template);
        drt.commit(bs);
        report.new_bs.push_back(bs);
    }
    report.final_metrics = drt.committed_metrics();
    report.drt_queries = drt.queries();
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

PlanReport baseline_exhaustive(const Scene& scene, const EngineConfig& config,
                               const MaterialParams& params,
                               const std::vector<Candidate>& candidates, int n_new,
                               const Grid& grid, double alpha, double r_th,
                               const NewBsTemplate& bs_template) {
    if (n_new < 1) throw std::invalid_argument("baseline_exhaustive: n_new must be >= 1");
    if (candidates.empty()) throw ValidationError("baseline_exhaustive: empty candidate set");

    const auto t0 = std::chrono::steady_clock::now();
    DrtEvaluator drt(scene, config, params, grid, alpha, r_th);

    PlanReport report;
    report.method = "es";
    std::vector<Vec2> excluded = existing_positions(scene);

    for (int n = 1; n <= n_new; ++n) {
        RoundTrace trace;
        trace.bs_number = n;

        int best = -1;
        double best_target = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (is_excluded(candidates[i].pos, excluded)) continue;
            const Metrics m = drt.evaluate_with(make_bs(candidates[i], bs_template));
            if (m.target > best_target) {  // strict: lowest index wins ties
                best_target = m.target;
                best = static_cast<int>(i);
            }
            EvalRecord rec;
            rec.candidate = static_cast<int>(i);
            rec.x = candidates[i].pos.x;
            rec.y = candidates[i].pos.y;
            rec.target = m.target;
            rec.incumbent = best_target;
            trace.evals.push_back(rec);
        }
        if (best < 0) throw ValidationError("baseline_exhaustive: no candidate remains");

        trace.chosen_candidate = best;
        trace.chosen_target = best_target;
        report.rounds.push_back(std::move(trace));

        const BaseStation bs = make_bs(candidates[static_cast<std::size_t>(best)], bs_template);
        drt.commit(bs);
        report.new_bs.push_back(bs);
        excluded.push_back(candidates[static_cast<std::size_t>(best)].pos);
    }

    report.final_metrics = drt.committed_metrics();
    report.drt_queries = drt.queries();
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace autoplan
