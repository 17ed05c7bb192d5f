#include <cmath>
#include <cstdlib>

#include <doctest.h>

#include "gwnary/errors.hpp"
#include "gwnary/mc.hpp"
#include "gwnary/survival.hpp"

using namespace gwnary;

namespace {

// Independent reference: walk the whole keyed tree with no pruning and no
// budget, counting children that carry complete subtrees. Any divergence
// from has_nary_subtree means the early exits change the decision.
bool exhaustive_subtree(const OffspringSpec& spec, int n, int t, std::uint64_t key) {
    if (t == 0) return true;
    CounterRng rng(key);
    const std::int64_t kids = sample(spec, rng);
    std::int64_t successes = 0;
    for (std::int64_t child = 0; child < kids; ++child)
        if (exhaustive_subtree(spec, n, t - 1, CounterRng::derive(key, child))) ++successes;
    return successes >= n;
}

}  // namespace

TEST_SUITE("mc") {

TEST_CASE("depth zero always succeeds") {
    const McConfig config{OffspringSpec::geometric(0.2), 3, 0, 500, 7, 1000};
    const auto estimate = estimate_gamma_nt(config);
    CHECK(estimate.p_hat == 0.0);
    CHECK(estimate.half_width_95 == 0.0);
    CHECK(estimate.n_trials == 500);
    CHECK(estimate.budget_exceeded_count == 0);
}

TEST_CASE("childless offspring never succeeds") {
    const McConfig config{OffspringSpec::finite({1.0}), 1, 1, 300, 7, 1000};
    const auto estimate = estimate_gamma_nt(config);
    CHECK(estimate.p_hat == 1.0);
    CHECK(estimate.half_width_95 == 0.0);
}

TEST_CASE("deterministic binary trees always carry the binary subtree") {
    const McConfig config{OffspringSpec::finite({0.0, 0.0, 1.0}), 2, 6, 200, 3, 1 << 20};
    const auto estimate = estimate_gamma_nt(config);
    CHECK(estimate.p_hat == 0.0);
    CHECK(estimate.budget_exceeded_count == 0);
}

TEST_CASE("single-step estimate matches g(0)") {
    // for one-or-many(8/9, 3) and N = 2, gamma_{2,1} = g(0) = 1 - p = 1/9
    const McConfig config{OffspringSpec::one_or_many(8.0 / 9.0, 3), 2, 1, 40000, 11, 1000};
    const auto estimate = estimate_gamma_nt(config);
    const double truth = 1.0 / 9.0;
    const double sigma = std::sqrt(truth * (1.0 - truth) / 40000.0);
    CHECK(std::abs(estimate.p_hat - truth) <= 4.0 * sigma);
}

TEST_CASE("deep estimate matches the iterated curve") {
    const OffspringSpec spec = OffspringSpec::geometric(0.9);
    const SubtreeGF gf(spec, 2);
    const auto root = smallest_root(gf);
    const auto curve = iterate_survival(gf, root, 8);
    const McConfig config{spec, 2, 8, 20000, 0xC0FFEEu, 10000000};
    const auto estimate = estimate_gamma_nt(config);
    const double truth = curve.gamma_seq[8];
    const double sigma = std::sqrt(truth * (1.0 - truth) / 20000.0);
    CHECK(std::abs(estimate.p_hat - truth) <= 4.0 * sigma);
    CHECK(estimate.half_width_95 == doctest::Approx(1.96 * sigma).epsilon(0.1));
}

TEST_CASE("early exits never change a decision") {
    struct Probe {
        OffspringSpec spec;
        int n;
        int t;
        int trials;
    };
    const Probe probes[] = {
        {OffspringSpec::geometric(0.6), 2, 5, 3000},
        {OffspringSpec::one_or_many(0.9, 3), 2, 4, 3000},
        {OffspringSpec::poisson(2.5), 2, 4, 2000},
        {OffspringSpec::binomial(9, 0.9), 8, 3, 400},
        {OffspringSpec::finite({0.3, 0.1, 0.2, 0.4}), 3, 4, 3000},
    };
    for (const auto& probe : probes) {
        CAPTURE(probe.spec.to_string());
        for (int i = 0; i < probe.trials; ++i) {
            const std::uint64_t key = trial_key(901u, i);
            std::int64_t budget = 1LL << 40;
            const auto pruned = has_nary_subtree(probe.spec, probe.n, probe.t, key, budget);
            const bool full = exhaustive_subtree(probe.spec, probe.n, probe.t, key);
            REQUIRE(pruned != SubtreeOutcome::OutOfBudget);
            if ((pruned == SubtreeOutcome::Yes) != full) {
                CAPTURE(i);
                FAIL("pruned and exhaustive evaluations disagree");
            }
        }
    }
}

TEST_CASE("estimates are deterministic in the seed") {
    const McConfig config{OffspringSpec::geometric(0.85), 2, 5, 5000, 99, 1000000};
    const auto first = estimate_gamma_nt(config);
    const auto second = estimate_gamma_nt(config);
    CHECK(first.p_hat == second.p_hat);
    CHECK(first.n_trials == second.n_trials);

    // a different seed rekeys every trial, so some verdict flips
    bool any_flip = false;
    for (int i = 0; i < 1000 && !any_flip; ++i) {
        std::int64_t b1 = 1000000, b2 = 1000000;
        any_flip = has_nary_subtree(config.spec, 2, 5, trial_key(99, i), b1) !=
                   has_nary_subtree(config.spec, 2, 5, trial_key(100, i), b2);
    }
    CHECK(any_flip);
}

TEST_CASE("parallel and serial estimators agree exactly") {
    const McConfig config{OffspringSpec::poisson(4.0), 2, 6, 8000, 1234, 10000000};
    const auto parallel = estimate_gamma_nt(config);
    const auto serial = estimate_gamma_nt_serial(config);
    CHECK(parallel.p_hat == serial.p_hat);
    CHECK(parallel.n_trials == serial.n_trials);
    CHECK(parallel.budget_exceeded_count == serial.budget_exceeded_count);
}

TEST_CASE("thread cap env var does not change results") {
    const McConfig config{OffspringSpec::geometric(0.85), 2, 5, 4000, 5, 1000000};
    const auto baseline = estimate_gamma_nt(config);
    setenv("GW_NARY_THREADS", "1", 1);
    const auto capped = estimate_gamma_nt(config);
    unsetenv("GW_NARY_THREADS");
    CHECK(capped.p_hat == baseline.p_hat);
}

TEST_CASE("budget exhaustion surfaces per trial and as a gate") {
    std::int64_t budget = 0;
    CHECK(has_nary_subtree(OffspringSpec::geometric(0.9), 2, 3, 42u, budget) ==
          SubtreeOutcome::OutOfBudget);

    budget = 1;
    bool saw_out_of_budget = false;
    for (std::uint64_t key = 0; key < 50 && !saw_out_of_budget; ++key) {
        std::int64_t b = 1;
        saw_out_of_budget = has_nary_subtree(OffspringSpec::geometric(0.9), 2, 3,
                                             trial_key(8u, key), b) ==
                            SubtreeOutcome::OutOfBudget;
    }
    CHECK(saw_out_of_budget);

    const McConfig starved{OffspringSpec::geometric(0.9), 2, 8, 500, 21, 3};
    CHECK_THROWS_AS(estimate_gamma_nt(starved), BudgetExceededError);
}

TEST_CASE("exhausted trials leave the denominator") {
    // budget large enough that only the heaviest trees trip it: those trials
    // are excluded from the estimate but counted, unless so many trip that
    // the gate fires, which is also a valid outcome of a tightened budget
    const OffspringSpec spec = OffspringSpec::geometric(0.9);
    McConfig config{spec, 2, 8, 4000, 77, 10000000};
    const auto unlimited = estimate_gamma_nt(config);
    CHECK(unlimited.budget_exceeded_count == 0);
    CHECK(unlimited.n_trials == 4000);
    config.node_budget = 40000;
    try {
        const auto limited = estimate_gamma_nt(config);
        CHECK(limited.n_trials == 4000 - limited.budget_exceeded_count);
        CHECK(limited.budget_exceeded_count * 100 <= 4000);
    } catch (const BudgetExceededError&) {
        // more than 1% exhausted: the estimate was rightly withheld
    }
}

TEST_CASE("configuration validation") {
    const OffspringSpec spec = OffspringSpec::geometric(0.5);
    CHECK_THROWS_AS(estimate_gamma_nt({spec, 0, 1, 100, 1, 100}), std::domain_error);
    CHECK_THROWS_AS(estimate_gamma_nt({spec, 2, -1, 100, 1, 100}), std::domain_error);
    CHECK_THROWS_AS(estimate_gamma_nt({spec, 2, 1, 0, 1, 100}), std::domain_error);
    CHECK_THROWS_AS(estimate_gamma_nt({spec, 2, 1, 100, 1, 0}), std::domain_error);
}

TEST_CASE("trial keys separate trials and seeds") {
    CHECK(trial_key(1, 0) != trial_key(1, 1));
    CHECK(trial_key(1, 0) != trial_key(2, 0));
    CHECK(trial_key(1, 5) == trial_key(1, 5));
}

}  // TEST_SUITE
