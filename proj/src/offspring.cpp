#include "gwnary/offspring.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <system_error>

#include "gwnary/errors.hpp"

namespace gwnary {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

void check_s(double s) {
    require(s >= 0.0 && s <= 1.0, "pgf argument must lie in [0,1]");
}

std::string fmt(double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

}  // namespace

OffspringSpec OffspringSpec::geometric(double p) {
    require(p > 0.0 && p < 1.0, "geometric requires 0 < p < 1");
    OffspringSpec spec;
    spec.family_ = Family::Geometric;
    spec.p_ = p;
    return spec;
}

OffspringSpec OffspringSpec::poisson(double m) {
    require(m > 0.0 && std::isfinite(m), "poisson requires 0 < m < inf");
    OffspringSpec spec;
    spec.family_ = Family::Poisson;
    spec.m_ = m;
    spec.exp_neg_m_ = m <= 700.0 ? std::exp(-m) : 0.0;
    return spec;
}

OffspringSpec OffspringSpec::one_or_many(double p, int r) {
    require(p > 0.0 && p < 1.0, "one-or-many requires 0 < p < 1");
    require(r >= 2, "one-or-many requires r >= 2");
    OffspringSpec spec;
    spec.family_ = Family::OneOrMany;
    spec.p_ = p;
    spec.r_ = r;
    return spec;
}

OffspringSpec OffspringSpec::binomial(int n, double p) {
    require(n >= 1, "binomial requires n >= 1");
    require(p > 0.0 && p < 1.0, "binomial requires 0 < p < 1");
    OffspringSpec spec;
    spec.family_ = Family::Binomial;
    spec.n_ = n;
    spec.p_ = p;
    return spec;
}

OffspringSpec OffspringSpec::finite(std::vector<double> weights) {
    require(!weights.empty(), "finite requires at least one weight");
    double sum = 0.0;
    for (double w : weights) {
        require(w >= 0.0 && std::isfinite(w), "finite weights must be nonnegative");
        sum += w;
    }
    require(std::abs(sum - 1.0) <= 1e-12, "finite weights must sum to 1");
    OffspringSpec spec;
    spec.family_ = Family::Finite;
    spec.weights_ = std::move(weights);
    spec.cum_weights_.resize(spec.weights_.size());
    std::partial_sum(spec.weights_.begin(), spec.weights_.end(), spec.cum_weights_.begin());
    spec.cum_weights_.back() = 1.0;
    return spec;
}

double OffspringSpec::mass_at_least(int k) const {
    if (k <= 0) return 1.0;
    switch (family_) {
        case Family::Geometric:
            return std::pow(p_, k);
        case Family::Poisson: {
            // 1 - CDF(k-1), summed from the small end
            double term = exp_neg_m_;
            double cdf = 0.0;
            for (int j = 0; j < k; ++j) {
                cdf += term;
                term *= m_ / (j + 1);
            }
            return cdf < 1.0 ? 1.0 - cdf : 0.0;
        }
        case Family::OneOrMany:
            if (k <= 1) return 1.0;
            return k <= r_ ? p_ : 0.0;
        case Family::Binomial: {
            if (k > n_) return 0.0;
            double tail = 0.0;
            double term = std::pow(1.0 - p_, n_);  // P(X = 0)
            for (int j = 0; j <= n_; ++j) {
                if (j >= k) tail += term;
                term *= (static_cast<double>(n_ - j) / (j + 1)) * (p_ / (1.0 - p_));
            }
            return tail;
        }
        case Family::Finite: {
            double tail = 0.0;
            for (std::size_t j = k; j < weights_.size(); ++j) tail += weights_[j];
            return tail;
        }
    }
    return 0.0;
}

std::string OffspringSpec::to_string() const {
    switch (family_) {
        case Family::Geometric:
            return "geometric:p=" + fmt(p_);
        case Family::Poisson:
            return "poisson:m=" + fmt(m_);
        case Family::OneOrMany:
            return "one-or-many:p=" + fmt(p_) + ",r=" + std::to_string(r_);
        case Family::Binomial:
            return "binomial:n=" + std::to_string(n_) + ",p=" + fmt(p_);
        case Family::Finite: {
            std::string out = "finite:";
            for (std::size_t k = 0; k < weights_.size(); ++k) {
                if (k) out += ',';
                out += fmt(weights_[k]);
            }
            return out;
        }
    }
    return {};
}

namespace detail {

template <class Real>
static Real binom_coeff(int top, int j) {
    Real c = 1;
    for (int i = 1; i <= j; ++i) c *= static_cast<Real>(top - j + i) / i;
    return c;
}

template <class Real>
Real pgf_term(const OffspringSpec& spec, Real s, int j) {
    switch (spec.family()) {
        case Family::Geometric: {
            const Real p = static_cast<Real>(spec.p());
            const Real denom = 1 - p * s;
            return (1 - p) / denom * std::pow(p / denom, static_cast<Real>(j));
        }
        case Family::Poisson: {
            const Real m = static_cast<Real>(spec.m());
            Real coeff = std::exp(m * (s - 1));
            for (int i = 1; i <= j; ++i) coeff *= m / i;
            return coeff;
        }
        case Family::OneOrMany: {
            const Real p = static_cast<Real>(spec.p());
            const int r = spec.r();
            if (j == 0) return (1 - p) * s + p * std::pow(s, static_cast<Real>(r));
            if (j == 1) return (1 - p) + p * r * std::pow(s, static_cast<Real>(r - 1));
            if (j > r) return 0;
            return p * binom_coeff<Real>(r, j) * std::pow(s, static_cast<Real>(r - j));
        }
        case Family::Binomial: {
            const int n = spec.n();
            if (j > n) return 0;
            const Real p = static_cast<Real>(spec.p());
            const Real q = 1 - p + p * s;
            return binom_coeff<Real>(n, j) * std::pow(p, static_cast<Real>(j)) *
                   std::pow(q, static_cast<Real>(n - j));
        }
        case Family::Finite: {
            const auto& w = spec.weights();
            const int top = static_cast<int>(w.size()) - 1;
            if (j > top) return 0;
            // sum_{k>=j} w_k C(k,j) s^(k-j), built up term by term
            Real acc = 0;
            Real c = 1;       // C(k,j)
            Real pw = 1;      // s^(k-j)
            for (int k = j; k <= top; ++k) {
                acc += static_cast<Real>(w[k]) * c * pw;
                c *= static_cast<Real>(k + 1) / (k + 1 - j);
                pw *= s;
            }
            return acc;
        }
    }
    return 0;
}

template double pgf_term<double>(const OffspringSpec&, double, int);
template long double pgf_term<long double>(const OffspringSpec&, long double, int);

}  // namespace detail

double pgf(const OffspringSpec& spec, double s) {
    check_s(s);
    return detail::pgf_term<double>(spec, s, 0);
}

double pgf_deriv(const OffspringSpec& spec, double s, int j) {
    check_s(s);
    require(j >= 0, "derivative order must be nonnegative");
    double factorial = 1.0;
    for (int i = 2; i <= j; ++i) factorial *= i;
    return factorial * detail::pgf_term<double>(spec, s, j);
}

double mean(const OffspringSpec& spec) {
    switch (spec.family()) {
        case Family::Geometric:
            return spec.p() / (1.0 - spec.p());
        case Family::Poisson:
            return spec.m();
        case Family::OneOrMany:
            return (1.0 - spec.p()) + spec.p() * spec.r();
        case Family::Binomial:
            return spec.n() * spec.p();
        case Family::Finite: {
            double m = 0.0;
            for (std::size_t k = 1; k < spec.weights().size(); ++k) m += k * spec.weights()[k];
            return m;
        }
    }
    return 0.0;
}

namespace {

std::int64_t sample_poisson(double m, double exp_neg_m, CounterRng& rng) {
    // sequential inversion; safe because m <= 700 keeps e^-m normal
    const double u = rng.next_unit();
    double term = exp_neg_m;
    double cdf = term;
    std::int64_t k = 0;
    const std::int64_t cap = static_cast<std::int64_t>(m + 60.0 * std::sqrt(m) + 120.0);
    while (u > cdf && k < cap) {
        ++k;
        term *= m / k;
        cdf += term;
    }
    return k;
}

}  // namespace

std::int64_t sample(const OffspringSpec& spec, CounterRng& rng) {
    switch (spec.family()) {
        case Family::Geometric: {
            const double p = spec.p_;
            if (p <= 0.95) {
                const double u = rng.next_unit();
                double term = 1.0 - p;
                double cdf = term;
                std::int64_t k = 0;
                while (u > cdf) {
                    ++k;
                    term *= p;
                    cdf += term;
                }
                return k;
            }
            // heavy tail: direct inversion, P(X >= k) = p^k
            return static_cast<std::int64_t>(std::log1p(-rng.next_unit()) / std::log(p));
        }
        case Family::Poisson: {
            if (spec.m_ <= 700.0) return sample_poisson(spec.m_, spec.exp_neg_m_, rng);
            // split into chunks small enough that e^-chunk does not underflow
            const int chunks = static_cast<int>(spec.m_ / 700.0) + 1;
            const double part = spec.m_ / chunks;
            const double exp_neg_part = std::exp(-part);
            std::int64_t total = 0;
            for (int c = 0; c < chunks; ++c) total += sample_poisson(part, exp_neg_part, rng);
            return total;
        }
        case Family::OneOrMany:
            return rng.next_unit() < spec.p_ ? spec.r_ : 1;
        case Family::Binomial: {
            std::int64_t k = 0;
            for (int i = 0; i < spec.n_; ++i) k += rng.next_unit() < spec.p_;
            return k;
        }
        case Family::Finite: {
            const double u = rng.next_unit();
            const auto& cum = spec.cum_weights_;
            for (std::size_t k = 0; k + 1 < cum.size(); ++k)
                if (u <= cum[k]) return static_cast<std::int64_t>(k);
            return static_cast<std::int64_t>(cum.size()) - 1;
        }
    }
    return 0;
}

namespace {

double parse_number(std::string_view text, const std::string& context) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("bad number '" + std::string(text) + "' in " + context);
    return value;
}

int parse_int(std::string_view text, const std::string& context) {
    int value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("bad integer '" + std::string(text) + "' in " + context);
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

/// key=value pairs in any order; every listed key required, none repeated.
std::vector<std::string_view> parse_kv(std::string_view body,
                                       std::initializer_list<std::string_view> keys,
                                       const std::string& context) {
    std::vector<std::string_view> values(keys.size());
    std::vector<bool> seen(keys.size(), false);
    for (std::string_view part : split(body, ',')) {
        const std::size_t eq = part.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected key=value, got '" + std::string(part) + "' in " + context);
        const std::string_view key = part.substr(0, eq);
        std::size_t index = 0;
        for (std::string_view k : keys) {
            if (k == key) break;
            ++index;
        }
        if (index == keys.size())
            throw ParseError("unknown key '" + std::string(key) + "' in " + context);
        if (seen[index]) throw ParseError("repeated key '" + std::string(key) + "' in " + context);
        seen[index] = true;
        values[index] = part.substr(eq + 1);
    }
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!seen[i]) throw ParseError("missing key in " + context);
    return values;
}

}  // namespace

OffspringSpec parse_spec(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("offspring spec '" + text + "' lacks a ':'");
    const std::string_view family{text.data(), colon};
    const std::string_view body{text.data() + colon + 1, text.size() - colon - 1};

    try {
        if (family == "geometric") {
            auto v = parse_kv(body, {"p"}, text);
            return OffspringSpec::geometric(parse_number(v[0], text));
        }
        if (family == "poisson") {
            auto v = parse_kv(body, {"m"}, text);
            return OffspringSpec::poisson(parse_number(v[0], text));
        }
        if (family == "one-or-many") {
            auto v = parse_kv(body, {"p", "r"}, text);
            return OffspringSpec::one_or_many(parse_number(v[0], text), parse_int(v[1], text));
        }
        if (family == "binomial") {
            auto v = parse_kv(body, {"n", "p"}, text);
            return OffspringSpec::binomial(parse_int(v[0], text), parse_number(v[1], text));
        }
        if (family == "finite") {
            std::vector<double> weights;
            for (std::string_view part : split(body, ','))
                weights.push_back(parse_number(part, text));
            return OffspringSpec::finite(std::move(weights));
        }
    } catch (const std::domain_error& e) {
        throw ParseError("invalid parameters in '" + text + "': " + e.what());
    }
    throw ParseError("unknown family '" + std::string(family) + "'");
}

}  // namespace gwnary
