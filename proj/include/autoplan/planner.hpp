#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "autoplan/gp.hpp"
#include "autoplan/radiomap.hpp"
#include "autoplan/scene.hpp"

namespace autoplan {

// Power/gain template applied to newly planned base stations.
struct NewBsTemplate {
    double tx_power_dbm = 43.0;
    double antenna_gain_db = 0.0;
};

struct PlanBudget {
    int q_init = 10;  // seeded-random evaluations per BS round
    int q_bo = 30;    // EI-driven evaluations per BS round
};

struct EvalRecord {
    int candidate = -1;  // index into the candidate list
    double x = 0.0;
    double y = 0.0;
    double target = 0.0;
    double incumbent = 0.0;  // running best within the round
};

struct RoundTrace {
    int bs_number = 0;  // 1-based
    std::vector<EvalRecord> evals;
    int chosen_candidate = -1;
    double chosen_target = 0.0;
    double length_scale = 0.0;  // 0 when no GP was fit (baselines)
};

struct PlanReport {
    std::string method;  // "bo", "rs" or "es"
    std::vector<BaseStation> new_bs;
    std::vector<RoundTrace> rounds;
    Metrics final_metrics;
    long long drt_queries = 0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
};

// Greedy argmax of EI over the candidate list, skipping positions already
// occupied by `excluded`; ties resolve to the lowest candidate index.
int select_next(const GpModel& model, const std::vector<Candidate>& candidates,
                const std::vector<Vec2>& excluded, double t_best, double xi,
                const Rect& region);

// Incremental BO placement: one fresh GP per new BS, q_init random then q_bo
// EI-driven DRT queries, best observed candidate committed.
PlanReport plan(const Scene& scene, const EngineConfig& config,
                const MaterialParams& params, const std::vector<Candidate>& candidates,
                int n_new, const PlanBudget& budget, const Grid& grid, double alpha,
                double r_th, std::uint64_t seed, const NewBsTemplate& bs_template = {},
                const GpConfig& gp_config = {});

// Uniformly samples n_groups groups of n_new distinct candidates and returns
// the group with the highest full-group target.
PlanReport baseline_random(const Scene& scene, const EngineConfig& config,
                           const MaterialParams& params,
                           const std::vector<Candidate>& candidates, int n_new,
                           int n_groups, const Grid& grid, double alpha, double r_th,
                           std::uint64_t seed, const NewBsTemplate& bs_template = {});

// Greedy-incremental exhaustive search: per round, evaluates every remaining
// candidate appended to the committed set and commits the argmax.
PlanReport baseline_exhaustive(const Scene& scene, const EngineConfig& config,
                               const MaterialParams& params,
                               const std::vector<Candidate>& candidates, int n_new,
                               const Grid& grid, double alpha, double r_th,
                               const NewBsTemplate& bs_template = {});

}  // namespace autoplan
