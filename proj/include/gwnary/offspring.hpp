#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwnary/rng.hpp"

namespace gwnary {

enum class Family { Geometric, Poisson, OneOrMany, Binomial, Finite };

/// Offspring distribution of a branching process. Five families:
///   Geometric(p):   p_k = (1-p) p^k, k = 0,1,2,...
///   Poisson(m):     p_k = e^-m m^k / k!
///   OneOrMany(p,r): p_1 = 1-p, p_r = p
///   Binomial(n,p):  p_k = C(n,k) p^k (1-p)^(n-k)
///   Finite(w):      p_k = w[k], k < w.size()
/// Each carries closed-form expressions for the pgf and all of its
/// derivatives, so no numerical differentiation happens anywhere downstream.
class OffspringSpec {
public:
    static OffspringSpec geometric(double p);
    static OffspringSpec poisson(double m);
    static OffspringSpec one_or_many(double p, int r);
    static OffspringSpec binomial(int n, double p);
    static OffspringSpec finite(std::vector<double> weights);

    Family family() const { return family_; }
    double p() const { return p_; }
    double m() const { return m_; }
    int r() const { return r_; }
    int n() const { return n_; }
    const std::vector<double>& weights() const { return weights_; }

    /// P(X >= k), evaluated in closed form per family.
    double mass_at_least(int k) const;

    /// Canonical spec string, re-parseable by parse_spec().
    std::string to_string() const;

private:
    OffspringSpec() = default;

    Family family_ = Family::Finite;
    double p_ = 0.0;
    double m_ = 0.0;
    int r_ = 0;
    int n_ = 0;
    std::vector<double> weights_;

    // sampling constants, filled in by the factories
    double exp_neg_m_ = 0.0;            // Poisson, m <= 700
    std::vector<double> cum_weights_;   // Finite

    friend std::int64_t sample(const OffspringSpec&, CounterRng&);
};

/// f(s) for s in [0,1].
double pgf(const OffspringSpec& spec, double s);

/// j-th derivative of f at s, exact per family; j = 0 gives f itself.
double pgf_deriv(const OffspringSpec& spec, double s, int j);

/// E[X].
double mean(const OffspringSpec& spec);

/// One draw from the distribution, consuming the given stream.
std::int64_t sample(const OffspringSpec& spec, CounterRng& rng);

/// Parses "geometric:p=0.8", "poisson:m=3.3509", "one-or-many:p=0.8889,r=3",
/// "binomial:n=9,p=0.9", "finite:0.2,0.3,0.5". Throws ParseError.
OffspringSpec parse_spec(const std::string& text);

namespace detail {

/// f^(j)(s) / j! in the requested precision. This is the quantity the
/// subtree generating function needs; dividing by j! inside the closed
/// forms keeps every factor bounded instead of pairing a huge factorial
/// with a tiny power.
template <class Real>
Real pgf_term(const OffspringSpec& spec, Real s, int j);

extern template double pgf_term<double>(const OffspringSpec&, double, int);
extern template long double pgf_term<long double>(const OffspringSpec&, long double, int);

}  // namespace detail

}  // namespace gwnary
