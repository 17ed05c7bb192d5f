#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gwnary {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Reproduction suite: nine numbered checks covering the solved examples,
/// the decay laws, the random-spec sweeps and the Monte Carlo cross-check,
/// each with pinned tolerances and a wall-clock budget.
std::vector<int> all_criteria();
CheckResult run_criterion(int id);
std::vector<CheckResult> run_criteria(const std::vector<int>& ids);

/// One line per check plus a total line; returns 0 iff everything passed
/// (including the overall time budget).
int print_suite_results(const std::vector<CheckResult>& results, std::ostream& out);

namespace detail {

/// Tolerance bookkeeping for a single criterion; records every comparison so
/// failures show the observed value, the target and the allowance.
class Checker {
public:
    void close_to(const std::string& label, double actual, double expected, double tol);
    void within_pct(const std::string& label, double actual, double expected, double pct);
    void is_true(const std::string& label, bool ok);
    void note(const std::string& label, double value);

    bool pass() const { return pass_; }
    const std::string& detail() const { return detail_; }

private:
    bool pass_ = true;
    std::string detail_;
};

}  // namespace detail

}  // namespace gwnary
