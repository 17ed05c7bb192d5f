#include "gwnary/mc.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gwnary/errors.hpp"

namespace gwnary {

std::uint64_t trial_key(std::uint64_t seed, std::int64_t trial_index) {
    return CounterRng::derive(splitmix64_mix(seed), static_cast<std::uint64_t>(trial_index));
}

SubtreeOutcome has_nary_subtree(const OffspringSpec& spec, int n, int t,
                                std::uint64_t node_key, std::int64_t& budget) {
    if (t == 0) return SubtreeOutcome::Yes;
    if (budget <= 0) return SubtreeOutcome::OutOfBudget;
    --budget;
    CounterRng rng(node_key);
    const std::int64_t kids = sample(spec, rng);
    if (kids < n) return SubtreeOutcome::No;
    int successes = 0;
    for (std::int64_t child = 0; child < kids; ++child) {
        if (successes + (kids - child) < n) return SubtreeOutcome::No;
        const auto verdict =
            has_nary_subtree(spec, n, t - 1, CounterRng::derive(node_key, child), budget);
        if (verdict == SubtreeOutcome::OutOfBudget) return verdict;
        if (verdict == SubtreeOutcome::Yes && ++successes == n) return SubtreeOutcome::Yes;
    }
    return SubtreeOutcome::No;
}

namespace {

int thread_cap() {
#ifdef _OPENMP
    if (const char* env = std::getenv("GW_NARY_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) return std::min(cap, omp_get_max_threads());
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

McEstimate run_trials(const McConfig& config, bool parallel) {
    if (config.n < 1) throw std::domain_error("N must be at least 1");
    if (config.t < 0) throw std::domain_error("t must be nonnegative");
    if (config.n_trials < 1) throw std::domain_error("need at least one trial");
    if (config.node_budget < 1) throw std::domain_error("node budget must be positive");

    std::int64_t zeros = 0;
    std::int64_t exhausted = 0;
    [[maybe_unused]] const int threads = parallel ? thread_cap() : 1;

#pragma omp parallel for schedule(static) num_threads(threads) reduction(+ : zeros, exhausted)
    for (std::int64_t i = 0; i < config.n_trials; ++i) {
        std::int64_t budget = config.node_budget;
        switch (has_nary_subtree(config.spec, config.n, config.t,
                                 trial_key(config.seed, i), budget)) {
            case SubtreeOutcome::No: ++zeros; break;
            case SubtreeOutcome::OutOfBudget: ++exhausted; break;
            case SubtreeOutcome::Yes: break;
        }
    }

    if (exhausted * 100 > config.n_trials)
        throw BudgetExceededError(std::to_string(exhausted) + " of " +
                                  std::to_string(config.n_trials) +
                                  " trials exhausted the node budget; estimate untrustworthy");

    McEstimate estimate;
    estimate.n_trials = config.n_trials - exhausted;
    estimate.budget_exceeded_count = exhausted;
    estimate.p_hat = static_cast<double>(zeros) / static_cast<double>(estimate.n_trials);
    estimate.half_width_95 =
        1.96 * std::sqrt(estimate.p_hat * (1.0 - estimate.p_hat) /
                         static_cast<double>(estimate.n_trials));
    return estimate;
}

}  // namespace

McEstimate estimate_gamma_nt(const McConfig& config) { return run_trials(config, true); }

McEstimate estimate_gamma_nt_serial(const McConfig& config) { return run_trials(config, false); }

}  // namespace gwnary
