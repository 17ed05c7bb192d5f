#include "gwnary/solve.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gwnary/errors.hpp"

namespace gwnary {

namespace {

constexpr int kGridPoints = 4096;        // uniform scan resolution on [0,1)
constexpr double kTangencyEps = 1e-9;    // |d| band treated as touching the diagonal
constexpr double kCriticalBand = 1e-6;   // |a-1| band classified as critical

Criticality classify_slope(double a, double tau) {
    if (a >= 1.0 + tau) return Criticality::Supercritical;
    if (a >= 1.0 - tau) return Criticality::Critical;
    return Criticality::Subcritical;
}

RootReport make_report(const SubtreeGF& gf, double gamma, double tau,
                       std::pair<double, double> bracket, double tol) {
    RootReport report;
    report.gamma = gamma;
    report.a = gf.g_prime(gamma);
    report.b = gf.g_double_prime(gamma);
    report.bracket = bracket;
    report.tol = tol;
    report.boundary = gamma == 0.0;
    if (gamma >= 1.0) {
        report.cls = std::abs(report.a - 1.0) <= tau ? Criticality::Critical
                                                     : Criticality::Degenerate;
    } else {
        report.cls = classify_slope(report.a, tau);
        if (report.cls == Criticality::Supercritical && !report.boundary)
            throw SolverError("slope " + std::to_string(report.a) + " above 1 at interior root " +
                              std::to_string(gamma) + "; not a smallest fixed point");
    }
    return report;
}

/// Bisection for d(s) = g(s) - s on [lo, hi] with d(lo) > 0 > d(hi), followed
/// by a few Newton steps inside the final bracket. The polish costs nothing
/// and pins the root to machine precision, which the survival fits rely on.
double bisect_and_polish(const SubtreeGF& gf, double lo, double hi, double tol) {
    for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (gf.g(mid) - mid > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 12; ++iter) {
        const double slope = gf.g_prime(x) - 1.0;
        if (std::abs(slope) < 1e-14) break;
        const double step = (gf.g(x) - x) / slope;
        const double next = std::clamp(x - step, lo, hi);
        if (next == x) break;
        x = next;
        if (std::abs(step) < 1e-17) break;
    }
    return x;
}

struct GoldenResult {
    double arg;
    double min;
    std::pair<double, double> bracket;
};

GoldenResult golden_min(const SubtreeGF& gf, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = gf.g(x1) - x1;
    double f2 = gf.g(x2) - x2;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = gf.g(x1) - x1;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = gf.g(x2) - x2;
        }
    }
    const double mid = 0.5 * (lo + hi);
    return {mid, gf.g(mid) - mid, {lo, hi}};
}

/// Newton on g'(s) = 1 starting from the golden-section minimizer. Returns
/// true only when it lands on a genuine tangency: slope pinned to 1 and the
/// curve within the tangency band of the diagonal. Subcritical families whose
/// d(s) -> 0 at the endpoint s = 1 fail the slope condition and fall through
/// to the degenerate verdict.
bool confirm_tangency(const SubtreeGF& gf, double seed, double* root) {
    double x = seed;
    for (int iter = 0; iter < 60; ++iter) {
        const double psi = gf.g_prime(x) - 1.0;
        const double curv = gf.g_double_prime(x);
        if (std::abs(curv) < 1e-12) break;
        const double next = std::clamp(x - psi / curv, 0.0, 1.0);
        if (next == x) break;
        x = next;
    }
    if (std::abs(gf.g_prime(x) - 1.0) > 1e-9) return false;
    if (std::abs(gf.g(x) - x) > kTangencyEps) return false;
    *root = x;
    return true;
}

}  // namespace

RootReport smallest_root(const SubtreeGF& gf, double tol) {
    if (tol <= 0.0) throw std::domain_error("tol must be positive");

    const double at_zero = gf.g(0.0);
    if (at_zero <= 0.0) {
        auto report = make_report(gf, 0.0, kCriticalBand, {0.0, 0.0}, tol);
        report.tol = std::max(tol, std::abs(at_zero));
        return report;
    }

    // scan [0,1) for the first grid cell where d drops below the tangency band,
    // remembering the interior minimum in case no crossing shows up
    std::vector<double> d(kGridPoints);
    int crossing = -1;
    int arg_min = 0;
    for (int i = 0; i < kGridPoints; ++i) {
        const double s = static_cast<double>(i) / kGridPoints;
        d[i] = gf.g(s) - s;
        if (d[i] < d[arg_min]) arg_min = i;
        if (d[i] < -kTangencyEps) {
            crossing = i;
            break;
        }
    }

    if (crossing > 0) {
        int left = crossing - 1;
        while (left > 0 && d[left] <= 0.0) --left;
        const double lo = static_cast<double>(left) / kGridPoints;
        const double hi = static_cast<double>(crossing) / kGridPoints;
        const double gamma = bisect_and_polish(gf, lo, hi, tol);
        auto report = make_report(gf, gamma, kCriticalBand, {lo, hi}, tol);
        report.tol = std::max(tol, std::abs(gf.g(gamma) - gamma));
        return report;
    }

    // no crossing on the grid: inspect the neighborhood of the grid minimum
    const double win_lo = static_cast<double>(std::max(arg_min - 1, 0)) / kGridPoints;
    const double win_hi = std::min(static_cast<double>(arg_min + 1) / kGridPoints, 1.0);
    const auto golden = golden_min(gf, win_lo, win_hi);

    if (golden.min < -kTangencyEps) {
        // a dip too narrow for the grid; walk left until d is positive again
        double lo = golden.bracket.first;
        while (lo > 0.0 && gf.g(lo) - lo <= 0.0)
            lo = std::max(lo - 1.0 / kGridPoints, 0.0);
        const double gamma = bisect_and_polish(gf, lo, golden.arg, tol);
        auto report = make_report(gf, gamma, kCriticalBand, {lo, golden.arg}, tol);
        report.tol = std::max(tol, std::abs(gf.g(gamma) - gamma));
        return report;
    }

    if (std::abs(golden.min) <= kTangencyEps) {
        double gamma = 0.0;
        if (confirm_tangency(gf, golden.arg, &gamma)) {
            auto report = make_report(gf, gamma, kCriticalBand, golden.bracket, tol);
            report.tol = std::max(tol, std::abs(gf.g(gamma) - gamma));
            return report;
        }
    }

    return make_report(gf, 1.0, kCriticalBand, {1.0, 1.0}, tol);
}

RootReport classify(const SubtreeGF& gf, double gamma, double tau) {
    if (gamma < 0.0 || gamma > 1.0) throw std::domain_error("gamma must lie in [0,1]");
    if (tau <= 0.0) throw std::domain_error("tau must be positive");
    auto report = make_report(gf, gamma, tau, {gamma, gamma}, 0.0);
    report.tol = std::abs(gf.g(gamma) - gamma);
    return report;
}

bool pemantle_bound(const SubtreeGF& gf, double s0) {
    if (s0 < 0.0 || s0 > 1.0) throw std::domain_error("s0 must lie in [0,1]");
    return gf.g(s0) <= s0;
}

}  // namespace gwnary
