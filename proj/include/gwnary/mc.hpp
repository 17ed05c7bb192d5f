#pragma once

#include <cstdint>

#include "gwnary/offspring.hpp"
#include "gwnary/rng.hpp"

namespace gwnary {

enum class SubtreeOutcome { Yes, No, OutOfBudget };

struct McConfig {
    OffspringSpec spec;
    int n = 2;                             // subtree arity N
    int t = 1;                             // depth horizon
    std::int64_t n_trials = 100000;
    std::uint64_t seed = 1;
    std::int64_t node_budget = 10000000;   // offspring samples allowed per trial
};

struct McEstimate {
    double p_hat = 0.0;            // fraction of completed trials with no depth-t subtree
    std::int64_t n_trials = 0;     // completed trials, the denominator of p_hat
    double half_width_95 = 0.0;    // 1.96 sqrt(p(1-p)/n)
    std::int64_t budget_exceeded_count = 0;
};

/// Decides whether the root of a lazily sampled Galton-Watson tree carries a
/// complete N-ary subtree of depth t. Children are materialized on demand and
/// the recursion exits as soon as N successes are in hand or too few
/// candidates remain. The tree is keyed, not stored: node_key identifies the
/// root's random stream and child streams derive from it, so any evaluation
/// order sees the same tree. Decrements budget once per sampled node and
/// returns OutOfBudget when it runs dry.
SubtreeOutcome has_nary_subtree(const OffspringSpec& spec, int n, int t,
                                std::uint64_t node_key, std::int64_t& budget);

/// Monte Carlo estimate of gamma_{N,t} = P(no depth-t N-ary subtree).
/// Parallelized over trials with OpenMP when available; trial i draws its
/// tree from a key derived from (seed, i), so the result is bit-identical
/// across thread counts and matches estimate_gamma_nt_serial exactly.
/// Throws BudgetExceededError when more than 1% of trials hit the budget.
McEstimate estimate_gamma_nt(const McConfig& config);

/// Single-threaded reference implementation with the identical contract.
McEstimate estimate_gamma_nt_serial(const McConfig& config);

/// Stream key of trial i under the given seed (exposed so that alternative
/// evaluators can replay the exact trees the estimator saw).
std::uint64_t trial_key(std::uint64_t seed, std::int64_t trial_index);

}  // namespace gwnary
