#include "gwnary/subtree_gf.hpp"

#include <cmath>
#include <stdexcept>

namespace gwnary {

SubtreeGF::SubtreeGF(OffspringSpec spec, int n) : spec_(std::move(spec)), n_(n) {
    if (n < 1) throw std::domain_error("subtree arity N must be at least 1");
    support_above_n_ = spec_.mass_at_least(n + 1) > 0.0;
}

namespace detail {

template <class Real>
Real g_eval(const OffspringSpec& spec, int n, Real s) {
    const Real one_minus_s = 1 - s;
    Real pw = 1;
    Real acc = 0;
    Real comp = 0;  // Kahan compensation; N can be large and terms alternate in size
    for (int j = 0; j < n; ++j) {
        const Real term = pw * pgf_term<Real>(spec, s, j) - comp;
        const Real next = acc + term;
        comp = (next - acc) - term;
        acc = next;
        pw *= one_minus_s;
    }
    return acc;
}

template <class Real>
Real g_prime_eval(const OffspringSpec& spec, int n, Real s) {
    return std::pow(1 - s, static_cast<Real>(n - 1)) * n * pgf_term<Real>(spec, s, n);
}

template <class Real>
Real g_double_prime_eval(const OffspringSpec& spec, int n, Real s) {
    const Real one_minus_s = 1 - s;
    Real value = std::pow(one_minus_s, static_cast<Real>(n - 1)) *
                 (static_cast<Real>(n) * (n + 1)) * pgf_term<Real>(spec, s, n + 1);
    if (n >= 2)
        value -= std::pow(one_minus_s, static_cast<Real>(n - 2)) *
                 (static_cast<Real>(n) * (n - 1)) * pgf_term<Real>(spec, s, n);
    return value;
}

template double g_eval<double>(const OffspringSpec&, int, double);
template long double g_eval<long double>(const OffspringSpec&, int, long double);
template double g_prime_eval<double>(const OffspringSpec&, int, double);
template long double g_prime_eval<long double>(const OffspringSpec&, int, long double);
template double g_double_prime_eval<double>(const OffspringSpec&, int, double);
template long double g_double_prime_eval<long double>(const OffspringSpec&, int, long double);

}  // namespace detail

double SubtreeGF::g(double s) const {
    if (s < 0.0 || s > 1.0) throw std::domain_error("g argument must lie in [0,1]");
    return detail::g_eval<double>(spec_, n_, s);
}

double SubtreeGF::g_prime(double s) const {
    if (s < 0.0 || s > 1.0) throw std::domain_error("g argument must lie in [0,1]");
    return detail::g_prime_eval<double>(spec_, n_, s);
}

double SubtreeGF::g_double_prime(double s) const {
    if (s < 0.0 || s > 1.0) throw std::domain_error("g argument must lie in [0,1]");
    return detail::g_double_prime_eval<double>(spec_, n_, s);
}

}  // namespace gwnary
