#pragma once

#include <vector>

#include "gwnary/solve.hpp"

namespace gwnary {

/// Finite-horizon extinction sequence gamma_{N,t} = g_N(gamma_{N,t-1}) from
/// gamma_{N,0} = 0, together with the conditional survival probabilities
///
///   cond_survival[t] = P(horizon-t subtree exists | no infinite subtree)
///                    = (gamma - gamma_t) / gamma.
///
/// The iteration runs in extended precision: near the fixed point the gap
/// gamma - gamma_t shrinks to ~1e-12 while gamma stays O(1), so doubles
/// would leave only four meaningful digits in the gap.
struct SurvivalCurve {
    int n = 0;
    int t_max = 0;                      // last index actually computed
    double gamma = 1.0;
    Criticality cls = Criticality::Degenerate;
    std::vector<double> gamma_seq;      // gamma_{N,t}, t = 0 .. t_max
    std::vector<double> cond_survival;  // (gamma - gamma_t) / gamma
};

enum class FitModel { Geometric, CriticalReciprocal };

/// Subcritical roots decay like cond ~ d * rate^t with rate = a_N; critical
/// roots obey t * cond -> 2 / (gamma * b_N), fitted through the slope of
/// 1 / (gamma - gamma_t), which grows affinely with increment b_N / 2.
struct AsymptoteFit {
    FitModel model = FitModel::Geometric;
    double d = 0.0;                // Geometric: fitted prefactor
    double rate = 0.0;             // Geometric: fitted decay ratio
    double slope = 0.0;            // CriticalReciprocal: fitted b/2
    double fitted_constant = 0.0;  // Geometric: d; CriticalReciprocal: t*cond at window end
    int t_lo = 0;                  // fit window, inclusive
    int t_hi = 0;
    double max_rel_residual = 0.0;  // worst relative deviation from the model in the window
};

/// Runs the iteration up to t_max steps, stopping early once the gap drops
/// below 1e-14. Throws DegenerateRootError for degenerate roots (conditioning
/// event has probability zero against survival) and for boundary roots at
/// gamma = 0 (conditioning event has probability zero the other way round).
SurvivalCurve iterate_survival(const SubtreeGF& gf, const RootReport& root, int t_max);

/// Fits the decay law matching the curve's class. Subcritical: log-linear
/// least squares over the last 20 points with gap > 1e-12, starting no
/// earlier than halfway along the curve. Critical: least squares on the
/// reciprocal gap over [t_max/2, t_max].
AsymptoteFit fit_asymptote(const SurvivalCurve& curve, const RootReport& root);

}  // namespace gwnary
