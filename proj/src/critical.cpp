#include "gwnary/critical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gwnary/errors.hpp"

namespace gwnary {

ParametricFamily ParametricFamily::geometric() { return {Family::Geometric, 0}; }
ParametricFamily ParametricFamily::poisson() { return {Family::Poisson, 0}; }

ParametricFamily ParametricFamily::one_or_many(int r) {
    if (r < 2) throw std::domain_error("one-or-many requires r >= 2");
    return {Family::OneOrMany, r};
}

ParametricFamily ParametricFamily::binomial(int n) {
    if (n < 1) throw std::domain_error("binomial requires n >= 1");
    return {Family::Binomial, n};
}

OffspringSpec ParametricFamily::make(double theta) const {
    switch (family_) {
        case Family::Geometric: return OffspringSpec::geometric(theta);
        case Family::Poisson: return OffspringSpec::poisson(theta);
        case Family::OneOrMany: return OffspringSpec::one_or_many(theta, fixed_);
        case Family::Binomial: return OffspringSpec::binomial(fixed_, theta);
        default: throw std::domain_error("family has no scalar parameter");
    }
}

double ParametricFamily::mean_of(double theta) const { return mean(make(theta)); }

const char* ParametricFamily::param_name() const {
    return family_ == Family::Poisson ? "m" : "p";
}

std::string ParametricFamily::family_name() const {
    switch (family_) {
        case Family::Geometric: return "geometric";
        case Family::Poisson: return "poisson";
        case Family::OneOrMany: return "one-or-many(r=" + std::to_string(fixed_) + ")";
        case Family::Binomial: return "binomial(n=" + std::to_string(fixed_) + ")";
        default: return "?";
    }
}

std::pair<double, double> ParametricFamily::default_range() const {
    switch (family_) {
        case Family::Geometric: return {0.4, 0.999};
        case Family::Poisson: return {0.5, 60.0};
        case Family::OneOrMany: return {0.05, 1.0 - 1e-9};
        case Family::Binomial: return {0.05, 0.999};
        default: return {0.0, 1.0};
    }
}

namespace {

bool nondegenerate(const ParametricFamily& family, int n, double theta) {
    return smallest_root(SubtreeGF(family.make(theta), n)).cls != Criticality::Degenerate;
}

/// Central finite difference in theta of g or g' at fixed s.
double theta_deriv(const ParametricFamily& family, int n, double s, double theta, bool of_slope) {
    double h = 1e-6 * std::max(1.0, std::abs(theta));
    for (int shrink = 0; shrink < 8; ++shrink) {
        try {
            const SubtreeGF plus(family.make(theta + h), n);
            const SubtreeGF minus(family.make(theta - h), n);
            return of_slope ? (plus.g_prime(s) - minus.g_prime(s)) / (2.0 * h)
                            : (plus.g(s) - minus.g(s)) / (2.0 * h);
        } catch (const std::domain_error&) {
            h *= 0.25;  // stepped outside the admissible parameter set
        }
    }
    throw SolverError("cannot differentiate in the family parameter near theta=" +
                      std::to_string(theta));
}

struct TangencyPoint {
    double s;
    double theta;
    double residual;
};

/// Damped Newton on the tangency system { g(s;theta) - s = 0, g'(s;theta) - 1 = 0 }.
/// The s-derivatives are analytic; the theta-derivatives use central differences.
TangencyPoint polish_tangency(const ParametricFamily& family, int n, double s, double theta) {
    auto residual = [&](double s_, double th_) {
        const SubtreeGF gf(family.make(th_), n);
        const double f1 = gf.g(s_) - s_;
        const double f2 = gf.g_prime(s_) - 1.0;
        return std::hypot(f1, f2);
    };

    TangencyPoint best{s, theta, residual(s, theta)};
    for (int iter = 0; iter < 100; ++iter) {
        const SubtreeGF gf(family.make(theta), n);
        const double f1 = gf.g(s) - s;
        const double f2 = gf.g_prime(s) - 1.0;
        const double j11 = gf.g_prime(s) - 1.0;
        const double j21 = gf.g_double_prime(s);
        const double j12 = theta_deriv(family, n, s, theta, false);
        const double j22 = theta_deriv(family, n, s, theta, true);
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-300) break;
        double ds = -(f1 * j22 - f2 * j12) / det;
        double dth = -(j11 * f2 - j21 * f1) / det;

        // damp until the step is admissible and does not grow the residual
        double scale = 1.0;
        double next_res = best.residual;
        double next_s = s, next_th = theta;
        bool accepted = false;
        for (int halve = 0; halve < 25; ++halve) {
            next_s = std::clamp(s + scale * ds, 0.0, 1.0);
            next_th = theta + scale * dth;
            try {
                next_res = residual(next_s, next_th);
            } catch (const std::domain_error&) {
                scale *= 0.5;
                continue;
            }
            if (next_res < best.residual) {
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if (!accepted) break;
        s = next_s;
        theta = next_th;
        best = {s, theta, next_res};
        if (next_res < 1e-13) break;
    }
    return best;
}

}  // namespace

CriticalReport find_critical(const ParametricFamily& family, int n,
                             std::pair<double, double> range, double tol) {
    if (n < 1) throw std::domain_error("N must be at least 1");
    if (tol <= 0.0) throw std::domain_error("tol must be positive");
    auto [lo, hi] = range;
    if (!(lo < hi)) throw std::domain_error("empty search range");

    bool lo_nd = nondegenerate(family, n, lo);
    bool hi_nd = nondegenerate(family, n, hi);
    if (lo_nd == hi_nd)
        throw NoSignChangeError("family " + family.family_name() + " with N=" + std::to_string(n) +
                                " is " + (lo_nd ? "nondegenerate" : "degenerate") +
                                " at both ends of [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");

    for (int iter = 0; iter < 40 && hi - lo > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (nondegenerate(family, n, mid) == lo_nd)
            lo = mid;
        else
            hi = mid;
    }
    const double theta_true = lo_nd ? lo : hi;  // the side that has a root
    const double gamma_seed = smallest_root(SubtreeGF(family.make(theta_true), n)).gamma;

    const auto polished = polish_tangency(family, n, gamma_seed, 0.5 * (lo + hi));

    CriticalReport report;
    report.param_name = family.param_name();
    report.tol = tol;
    if (polished.residual <= 1e-10) {
        const SubtreeGF gf(family.make(polished.theta), n);
        report.param_critical = polished.theta;
        report.mean_critical = family.mean_of(polished.theta);
        report.gamma_critical = polished.s;
        report.a_at_critical = gf.g_prime(polished.s);
        report.b_at_critical = gf.g_double_prime(polished.s);
        return report;
    }

    // Newton did not lock on; report the bisection estimate honestly
    const double theta_c = 0.5 * (lo + hi);
    const auto root = smallest_root(SubtreeGF(family.make(theta_true), n));
    report.param_critical = theta_c;
    report.mean_critical = family.mean_of(theta_c);
    report.gamma_critical = root.gamma;
    report.a_at_critical = root.a;
    report.b_at_critical = root.b;
    return report;
}

CriticalReport find_critical(const ParametricFamily& family, int n, double tol) {
    return find_critical(family, n, family.default_range(), tol);
}

std::pair<double, double> one_or_many_closed_form(int n) {
    if (n < 2) throw std::domain_error("closed form requires N >= 2");
    const double nn = n;
    const double p_c = (1.0 - 1.0 / nn) * std::pow(1.0 - 1.0 / (nn * nn), -nn);
    return {p_c, 1.0 / (nn * nn)};
}

}  // namespace gwnary
