#pragma once

#include <string>
#include <utility>

#include "gwnary/solve.hpp"

namespace gwnary {

/// One-parameter slice through an offspring family, for threshold searches.
/// Geometric and Poisson vary their single parameter; OneOrMany varies p at
/// fixed r; Binomial varies p at fixed n. Finite laws have no canonical
/// parameter and are not sliceable.
class ParametricFamily {
public:
    static ParametricFamily geometric();
    static ParametricFamily poisson();
    static ParametricFamily one_or_many(int r);
    static ParametricFamily binomial(int n);

    OffspringSpec make(double theta) const;
    double mean_of(double theta) const;
    const char* param_name() const;
    std::string family_name() const;

    /// Search interval wide enough to straddle the threshold for moderate N.
    std::pair<double, double> default_range() const;

private:
    ParametricFamily(Family family, int fixed) : family_(family), fixed_(fixed) {}
    Family family_;
    int fixed_;  // r for OneOrMany, n for Binomial
};

struct CriticalReport {
    std::string param_name;
    double param_critical = 0.0;   // theta_c
    double mean_critical = 0.0;    // offspring mean at theta_c
    double gamma_critical = 0.0;   // root at theta_c
    double a_at_critical = 0.0;    // g'(gamma), 1 up to solver resolution
    double b_at_critical = 0.0;    // g''(gamma)
    double tol = 0.0;              // bound on |theta_c - true threshold|
};

/// Locates the parameter where the family crosses from degenerate to a
/// nontrivial root: bisection on the degeneracy predicate over [lo, hi],
/// then a damped two-variable Newton polish of the tangency system
/// { g(s; theta) = s, g'(s; theta) = 1 }.
CriticalReport find_critical(const ParametricFamily& family, int n,
                             std::pair<double, double> range, double tol = 1e-9);

CriticalReport find_critical(const ParametricFamily& family, int n, double tol = 1e-9);

/// Exact threshold for the OneOrMany family with r = N + 1:
/// p_c = (1 - 1/N) (1 - 1/N^2)^(-N) and gamma_c = 1/N^2. Requires N >= 2.
std::pair<double, double> one_or_many_closed_form(int n);

}  // namespace gwnary
