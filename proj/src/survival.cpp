#include "gwnary/survival.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gwnary/errors.hpp"

namespace gwnary {

namespace {

/// Re-solve the fixed point in long double so the iteration converges onto
/// it instead of stalling at the double rounding of gamma. Critical roots are
/// tangencies, so they are pinned through the slope equation; subcritical
/// roots through the fixed-point equation itself.
long double refine_gamma(const SubtreeGF& gf, const RootReport& root) {
    const auto& spec = gf.spec();
    const int n = gf.n();
    long double x = root.gamma;
    if (root.cls == Criticality::Critical) {
        for (int iter = 0; iter < 60; ++iter) {
            const long double psi = detail::g_prime_eval<long double>(spec, n, x) - 1.0L;
            const long double curv = detail::g_double_prime_eval<long double>(spec, n, x);
            if (std::abs(curv) < 1e-30L) break;
            const long double next = std::clamp(x - psi / curv, 0.0L, 1.0L);
            if (next == x) break;
            x = next;
        }
    } else {
        for (int iter = 0; iter < 60; ++iter) {
            const long double slope = detail::g_prime_eval<long double>(spec, n, x) - 1.0L;
            if (std::abs(slope) < 1e-30L) break;
            const long double value = detail::g_eval<long double>(spec, n, x) - x;
            const long double next = std::clamp(x - value / slope, 0.0L, 1.0L);
            if (next == x) break;
            x = next;
        }
    }
    return x;
}

struct LineFit {
    double slope;
    double intercept;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    return {(n * sxy - sx * sy) / denom, (sy * sxx - sx * sxy) / denom};
}

}  // namespace

SurvivalCurve iterate_survival(const SubtreeGF& gf, const RootReport& root, int t_max) {
    if (t_max < 1) throw std::domain_error("t_max must be at least 1");
    if (root.cls == Criticality::Degenerate)
        throw DegenerateRootError(
            "gamma = 1: survival conditioned on extinction of the subtree is vacuous");
    if (root.gamma <= 0.0)
        throw DegenerateRootError(
            "gamma = 0: the subtree survives almost surely, nothing to condition on");

    const long double gamma = refine_gamma(gf, root);

    SurvivalCurve curve;
    curve.n = gf.n();
    curve.gamma = static_cast<double>(gamma);
    curve.cls = root.cls;
    curve.gamma_seq.reserve(t_max + 1);
    curve.cond_survival.reserve(t_max + 1);

    long double x = 0.0L;
    for (int t = 0; t <= t_max; ++t) {
        const long double gap = gamma - x;
        curve.gamma_seq.push_back(static_cast<double>(x));
        curve.cond_survival.push_back(static_cast<double>(gap / gamma));
        curve.t_max = t;
        if (gap < 1e-14L) break;
        if (t < t_max) x = detail::g_eval<long double>(gf.spec(), gf.n(), x);
    }
    return curve;
}

AsymptoteFit fit_asymptote(const SurvivalCurve& curve, const RootReport& root) {
    if (curve.cls != Criticality::Subcritical && curve.cls != Criticality::Critical)
        throw ClassMismatchError("no decay law for this criticality class");

    AsymptoteFit fit;
    if (curve.cls == Criticality::Subcritical) {
        // log cond is affine in t up to O(a^t) corrections; use the last
        // points that still carry more gap than the iteration stop level,
        // and never reach below t_max/2, where the corrections still bite
        int hi = curve.t_max;
        while (hi >= 0 && curve.cond_survival[hi] * curve.gamma <= 1e-12) --hi;
        const int lo = std::max({hi - 19, hi / 2, 1});
        if (hi - lo + 1 < 2)
            throw WindowTooSmallError("only " + std::to_string(hi - lo + 1) +
                                      " usable points for the subcritical fit");
        std::vector<double> ts, logs;
        for (int t = lo; t <= hi; ++t) {
            ts.push_back(static_cast<double>(t));
            logs.push_back(std::log(curve.cond_survival[t]));
        }
        const auto line = least_squares(ts, logs);
        fit.model = FitModel::Geometric;
        fit.rate = std::exp(line.slope);
        fit.d = std::exp(line.intercept);
        fit.fitted_constant = fit.d;
        fit.t_lo = lo;
        fit.t_hi = hi;
        for (int t = lo; t <= hi; ++t) {
            const double model = fit.d * std::pow(fit.rate, static_cast<double>(t));
            fit.max_rel_residual = std::max(
                fit.max_rel_residual, std::abs(model - curve.cond_survival[t]) / curve.cond_survival[t]);
        }
        return fit;
    }

    // critical: 1/(gamma - gamma_t) grows affinely with slope b/2
    const int hi = curve.t_max;
    const int lo = std::max(hi / 2, 1);
    if (hi - lo + 1 < 2)
        throw WindowTooSmallError("critical fit window [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "] has fewer than 2 points");
    std::vector<double> ts, recips;
    for (int t = lo; t <= hi; ++t) {
        ts.push_back(static_cast<double>(t));
        recips.push_back(1.0 / (curve.gamma * curve.cond_survival[t]));
    }
    const auto line = least_squares(ts, recips);
    fit.model = FitModel::CriticalReciprocal;
    fit.slope = line.slope;
    fit.fitted_constant = static_cast<double>(hi) * curve.cond_survival[hi];
    fit.t_lo = lo;
    fit.t_hi = hi;
    const double law = 2.0 / (curve.gamma * root.b);
    for (int t = lo; t <= hi; ++t) {
        const double model = law / static_cast<double>(t);
        fit.max_rel_residual = std::max(
            fit.max_rel_residual, std::abs(model - curve.cond_survival[t]) / curve.cond_survival[t]);
    }
    return fit;
}

}  // namespace gwnary
