#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "gwnary/validate.hpp"

using namespace gwnary;

TEST_SUITE("validate") {

TEST_CASE("checker flags values outside the allowance") {
    detail::Checker good;
    good.close_to("x", 2.0 + 5e-9, 2.0, 1e-8);
    good.within_pct("y", 1.01, 1.0, 2.0);
    good.is_true("z", true);
    CHECK(good.pass());

    detail::Checker bad;
    bad.close_to("b", 2.02, 2.0, 1e-8);
    CHECK(!bad.pass());
    CHECK(bad.detail().find("!b") != std::string::npos);

    detail::Checker pct;
    pct.within_pct("c", 1.03, 1.0, 2.0);
    CHECK(!pct.pass());

    detail::Checker flag;
    flag.is_true("w", false);
    CHECK(!flag.pass());
    CHECK(flag.detail().find("!w") != std::string::npos);

    // one failure poisons the whole criterion, later passes cannot revive it
    detail::Checker mixed;
    mixed.close_to("u", 5.0, 2.0, 1e-8);
    mixed.close_to("v", 2.0, 2.0, 1e-8);
    CHECK(!mixed.pass());

    detail::Checker nan_case;
    nan_case.close_to("n", std::nan(""), 2.0, 1e30);
    CHECK(!nan_case.pass());
}

TEST_CASE("criteria catalogue") {
    const auto ids = all_criteria();
    REQUIRE(ids.size() == 9);
    for (int k = 0; k < 9; ++k) CHECK(ids[k] == k + 1);
    CHECK_THROWS_AS(run_criterion(42), std::out_of_range);
    CHECK_THROWS_AS(run_criterion(0), std::out_of_range);
}

TEST_CASE("cheap criterion runs clean through the runner") {
    const auto result = run_criterion(1);
    CHECK(result.id == 1);
    CHECK(result.name == "geometric-critical-point");
    CHECK(result.pass);
    CHECK(result.seconds < 5.0);
    CHECK(result.detail.find("gamma=") != std::string::npos);
}

TEST_CASE("suite printer reports per-line and total verdicts") {
    std::vector<CheckResult> results;
    results.push_back({1, "first", true, " x=1", 0.5});
    results.push_back({2, "second", true, " y=2", 0.25});
    std::ostringstream out;
    CHECK(print_suite_results(results, out) == 0);
    const std::string text = out.str();
    CHECK(text.find("PASS criterion 1 first") != std::string::npos);
    CHECK(text.find("PASS criterion 2 second") != std::string::npos);
    CHECK(text.find("PASS total") != std::string::npos);

    results[1].pass = false;
    std::ostringstream fail_out;
    CHECK(print_suite_results(results, fail_out) == 1);
    CHECK(fail_out.str().find("FAIL criterion 2") != std::string::npos);

    // blowing the wall-clock budget fails the suite even with passing checks
    results[1].pass = true;
    results[1].seconds = 500.0;
    std::ostringstream slow_out;
    CHECK(print_suite_results(results, slow_out) == 1);
    CHECK(slow_out.str().find("FAIL total") != std::string::npos);
}

}  // TEST_SUITE
