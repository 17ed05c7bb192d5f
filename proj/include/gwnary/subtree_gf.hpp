#pragma once

#include "gwnary/offspring.hpp"

namespace gwnary {

/// Generating function g_N for the event that the root of a Galton-Watson
/// tree fails to carry a complete N-ary subtree of the given depth horizon:
///
///   g_N(s) = sum_{j=0}^{N-1} (1-s)^j f^(j)(s) / j!
///
/// where f is the offspring pgf. Fixed points of g_N in [0,1] are the
/// extinction probabilities of the embedded N-ary structure; derivatives
/// come out in closed form,
///
///   g_N'(s)  = (1-s)^(N-1) f^(N)(s) / (N-1)!
///   g_N''(s) = (1-s)^(N-1) f^(N+1)(s)/(N-1)! - (N-1)(1-s)^(N-2) f^(N)(s)/(N-1)!
///
/// so every solver downstream works with exact slopes, not finite differences.
class SubtreeGF {
public:
    SubtreeGF(OffspringSpec spec, int n);

    double g(double s) const;
    double g_prime(double s) const;
    double g_double_prime(double s) const;

    const OffspringSpec& spec() const { return spec_; }
    int n() const { return n_; }

    /// Whether the offspring law puts any mass above N. When false, every
    /// node has at most N children, the N-ary event degenerates and the
    /// smallest fixed point sits at an endpoint of [0,1].
    bool support_above_n() const { return support_above_n_; }

private:
    OffspringSpec spec_;
    int n_;
    bool support_above_n_;
};

namespace detail {

template <class Real>
Real g_eval(const OffspringSpec& spec, int n, Real s);

template <class Real>
Real g_prime_eval(const OffspringSpec& spec, int n, Real s);

template <class Real>
Real g_double_prime_eval(const OffspringSpec& spec, int n, Real s);

extern template double g_eval<double>(const OffspringSpec&, int, double);
extern template long double g_eval<long double>(const OffspringSpec&, int, long double);
extern template double g_prime_eval<double>(const OffspringSpec&, int, double);
extern template long double g_prime_eval<long double>(const OffspringSpec&, int, long double);
extern template double g_double_prime_eval<double>(const OffspringSpec&, int, double);
extern template long double g_double_prime_eval<long double>(const OffspringSpec&, int, long double);

}  // namespace detail

}  // namespace gwnary
