#pragma once

#include <utility>

#include "gwnary/subtree_gf.hpp"

namespace gwnary {

/// Degenerate:    gamma = 1 and the N-ary event has probability zero.
/// Subcritical:   gamma < 1 with slope a = g'(gamma) < 1 (geometric decay regime).
/// Critical:      gamma < 1 (or = 1 for N = 1) with a = 1, a tangency of g with
///                the diagonal (algebraic 2/t decay regime).
/// Supercritical: only for boundary roots at gamma = 0 where a > 1; the local
///                expansion around the root does not apply there.
enum class Criticality { Degenerate, Subcritical, Critical, Supercritical };

struct RootReport {
    double gamma = 1.0;                       // least fixed point of g_N in [0,1]
    double a = 0.0;                           // g_N'(gamma)
    double b = 0.0;                           // g_N''(gamma)
    Criticality cls = Criticality::Degenerate;
    std::pair<double, double> bracket{0.0, 1.0};  // interval that witnessed the root
    double tol = 0.0;                         // bound on |g_N(gamma) - gamma|
    bool boundary = false;                    // gamma pinned at 0 by missing mass below N
};

/// Least s in [0,1] with g_N(s) = s. Scans a uniform grid for the first sign
/// change of d(s) = g_N(s) - s and bisects; if d never goes below -theta_t,
/// hunts for an interior tangency (minimum of d within theta_t of zero,
/// confirmed by a slope-1 point) before declaring the root degenerate at 1.
RootReport smallest_root(const SubtreeGF& gf, double tol = 1e-12);

/// Report for a root that is already known: fills a, b and classifies with
/// criticality band tau. Throws SolverError when gamma lies in (0,1) but
/// g'(gamma) > 1 + tau, which no genuine smallest root can do.
RootReport classify(const SubtreeGF& gf, double gamma, double tau = 1e-6);

/// True when g_N(s0) <= s0, which certifies gamma_N <= s0 without locating
/// the root (the fixed-point iteration from s0 is monotone decreasing).
bool pemantle_bound(const SubtreeGF& gf, double s0);

}  // namespace gwnary
