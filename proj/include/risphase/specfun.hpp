#pragma once

// Scalar special functions and discrete link-count distributions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

namespace risphase::specfun {

/// Bessel functions of the first kind of orders 0 and 1 (Boost.Math
/// rational-approximation kernels).
inline double bessel_j0(double x) { return boost::math::detail::bessel_j0(std::abs(x)); }
inline double bessel_j1(double x) {
    const double v = boost::math::detail::bessel_j1(std::abs(x));
    return x < 0.0 ? -v : v;
}

inline double bessel_j(int order, double x) {
    switch (order) {
    case 0:
        return bessel_j0(x);
    case 1:
        return bessel_j1(x);
    default:
        throw std::domain_error("bessel_j: order must be 0 or 1, got " + std::to_string(order));
    }
}

/// Exponentially scaled modified Bessel function, e^{-x} I0(x), for x >= 0.
///
/// Power series up to x = 30, Hankel asymptotic expansion beyond. Never
/// overflows, so products like e^{-(a^2+s)/n} I0(2a sqrt(s)/n) can be formed
/// as e^{-(sqrt(s)-a)^2/n} * bessel_i0_scaled(2a sqrt(s)/n).
inline double bessel_i0_scaled(double x) {
    if (!(x >= 0.0)) {
        throw std::domain_error("bessel_i0: argument must be nonnegative");
    }
    if (x <= 30.0) {
        const double q = 0.25 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < sum * 1e-17) {
                break;
            }
        }
        return sum * std::exp(-x);
    }
    // e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum_k ((2k-1)!!)^2 / (k! 8^k x^k)
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next > term) {
            break;
        }
        term = next;
        sum += term;
        if (term < sum * 1e-17) {
            break;
        }
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

/// Modified Bessel function I0(x) for 0 <= x <= ~709.
inline double bessel_i0(double x) {
    if (!(x >= 0.0)) {
        throw std::domain_error("bessel_i0: argument must be nonnegative");
    }
    return bessel_i0_scaled(x) * std::exp(x);
}

namespace detail {

// Modified Lentz evaluation of the continued fraction for e^t E1(t), t > 1.
inline double scaled_e1_continued_fraction(double t) {
    constexpr double tiny = 1e-300;
    double b = t + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) {
            break;
        }
    }
    return h;
}

inline double e1_series(double t) {
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -t / k;
        const double contrib = term / k;
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * std::abs(sum)) {
            break;
        }
    }
    return -std::numbers::egamma - std::log(t) - sum;
}

} // namespace detail

/// Exponential integral E1(t) = -Ei(-t) for t > 0.
inline double exp_int_e1(double t) {
    if (!(t > 0.0)) {
        throw std::domain_error("exp_int_e1: argument must be positive");
    }
    if (t <= 1.0) {
        return detail::e1_series(t);
    }
    return detail::scaled_e1_continued_fraction(t) * std::exp(-t);
}

/// Exponential integral Ei(x) for x < 0, via Ei(-t) = -E1(t).
inline double exp_int_ei(double x) {
    if (!(x < 0.0)) {
        throw std::domain_error("exp_int_ei: only negative arguments are supported");
    }
    return -exp_int_e1(-x);
}

/// E(x) = -e^x Ei(-x) = e^x E1(x), x > 0. Strictly decreasing from +inf to 0.
inline double cal_e(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("cal_e: argument must be positive");
    }
    if (x <= 1.0) {
        return std::exp(x) * detail::e1_series(x);
    }
    return detail::scaled_e1_continued_fraction(x);
}

/// Inverse of cal_e on (0, inf).
///
/// Brackets the root by doubling/halving and then bisects in log(x), which
/// keeps the relative step uniform for both tiny and huge x.
inline double cal_e_inverse(double y) {
    if (!(y > 0.0) || !std::isfinite(y)) {
        throw std::domain_error("cal_e_inverse: argument must be positive and finite");
    }
    double lo = 1.0;
    double hi = 1.0;
    while (cal_e(lo) <= y) {
        lo *= 0.5;
        if (lo < 1e-300) {
            throw std::domain_error("cal_e_inverse: argument too large");
        }
    }
    while (cal_e(hi) >= y) {
        hi *= 2.0;
        if (hi > 1e300) {
            throw std::domain_error("cal_e_inverse: argument too small");
        }
    }
    double log_lo = std::log(lo);
    double log_hi = std::log(hi);
    for (int it = 0; it < 200 && log_hi - log_lo > 1e-15 * std::max(1.0, std::abs(log_lo)); ++it) {
        const double mid = 0.5 * (log_lo + log_hi);
        if (cal_e(std::exp(mid)) > y) {
            log_lo = mid;
        } else {
            log_hi = mid;
        }
    }
    return std::exp(0.5 * (log_lo + log_hi));
}

namespace detail {

inline double log_poisson_pmf(int k, double mean) {
    if (mean == 0.0) {
        return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    return k * std::log(mean) - mean - std::lgamma(k + 1.0);
}

// sum_j Pois(j; lambda) * g(j), where g(j) = sum_{m<=j} Pois(m; x) (upper=false)
// or sum_{m>j} Pois(m; x) (upper=true). All terms are nonnegative; the upper
// tail is accumulated backwards so no subtraction is ever performed.
inline double poisson_mixture_of_poisson_cdf(double lambda, double x, bool upper) {
    const double width = 40.0 * std::sqrt(lambda + x) + 60.0;
    const auto j_max = static_cast<std::size_t>(std::max(lambda, x) + width);
    std::vector<double> g(j_max + 1);
    if (upper) {
        double tail = 0.0;
        for (std::size_t j = j_max + 1; j-- > 0;) {
            g[j] = tail;
            tail += std::exp(log_poisson_pmf(static_cast<int>(j), x));
        }
    } else {
        double head = 0.0;
        for (std::size_t j = 0; j <= j_max; ++j) {
            head += std::exp(log_poisson_pmf(static_cast<int>(j), x));
            g[j] = head;
        }
    }
    double total = 0.0;
    for (std::size_t j = 0; j <= j_max; ++j) {
        total += std::exp(log_poisson_pmf(static_cast<int>(j), lambda)) * std::min(g[j], 1.0);
    }
    return total;
}

} // namespace detail

/// Marcum Q-function of order one, Q1(a, b) = Pr(X > b^2) with X noncentral
/// chi-square, 2 degrees of freedom, noncentrality a^2.
///
/// Evaluated as the Poisson mixture Q1 = sum_j Pois(j; a^2/2) P(Pois(b^2/2) <= j),
/// which is the canonical Bessel series regrouped into nonnegative terms. For
/// b <= a the complement 1 - Q1 is summed instead.
inline double marcum_q1(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0)) {
        throw std::domain_error("marcum_q1: arguments must be nonnegative");
    }
    if (b == 0.0) {
        return 1.0;
    }
    const double lambda = 0.5 * a * a;
    const double x = 0.5 * b * b;
    if (a == 0.0) {
        return std::exp(-x);
    }
    if (b > a) {
        return std::clamp(detail::poisson_mixture_of_poisson_cdf(lambda, x, false), 0.0, 1.0);
    }
    const double complement = detail::poisson_mixture_of_poisson_cdf(lambda, x, true);
    return std::clamp(1.0 - complement, 0.0, 1.0);
}

/// Probability mass function over link counts {0, ..., N}.
class DiscreteDistribution {
public:
    DiscreteDistribution() : DiscreteDistribution(std::vector<double>{1.0}) {}

    explicit DiscreteDistribution(std::vector<double> pmf) : pmf_(std::move(pmf)) {
        if (pmf_.empty()) {
            throw std::invalid_argument("DiscreteDistribution: empty pmf");
        }
        cdf_.resize(pmf_.size());
        double acc = 0.0;
        for (std::size_t k = 0; k < pmf_.size(); ++k) {
            if (!(pmf_[k] >= 0.0 && pmf_[k] <= 1.0)) {
                throw std::domain_error("DiscreteDistribution: pmf entries must lie in [0,1]");
            }
            acc += pmf_[k];
            cdf_[k] = std::min(acc, 1.0);
        }
    }

    int support_max() const { return static_cast<int>(pmf_.size()) - 1; }
    std::span<const double> pmf() const { return pmf_; }
    std::span<const double> cdf() const { return cdf_; }

    double pmf(int k) const {
        return (k < 0 || k > support_max()) ? 0.0 : pmf_[static_cast<std::size_t>(k)];
    }

    /// Pr(K <= k).
    double cdf(int k) const {
        if (k < 0) {
            return 0.0;
        }
        if (k >= support_max()) {
            return cdf_.back();
        }
        return cdf_[static_cast<std::size_t>(k)];
    }

private:
    std::vector<double> pmf_;
    std::vector<double> cdf_;
};

/// Binomial(n, p) pmf, evaluated in log space so that n up to 1e4 and more
/// neither overflows the binomial coefficient nor underflows p^k prematurely.
inline DiscreteDistribution binomial(int n, double p) {
    if (n < 0) {
        throw std::domain_error("binomial: n must be nonnegative");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("binomial: p must lie in [0,1]");
    }
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
    if (p == 0.0) {
        pmf.front() = 1.0;
        return DiscreteDistribution(std::move(pmf));
    }
    if (p == 1.0) {
        pmf.back() = 1.0;
        return DiscreteDistribution(std::move(pmf));
    }
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    const double log_n_fact = std::lgamma(n + 1.0);
    for (int k = 0; k <= n; ++k) {
        const double log_choose = log_n_fact - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        pmf[static_cast<std::size_t>(k)] = std::exp(log_choose + k * log_p + (n - k) * log_q);
    }
    // lgamma rounding grows with n; renormalize so the total is exact to ulps.
    const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
    for (double& v : pmf) {
        v /= total;
    }
    return DiscreteDistribution(std::move(pmf));
}

/// Poisson-binomial pmf of the number of successes among independent
/// Bernoulli(p_i) trials, by the O(N^2) convolution recursion.
inline DiscreteDistribution poisson_binomial(std::span<const double> probs) {
    std::vector<double> pmf{1.0};
    pmf.reserve(probs.size() + 1);
    for (const double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::domain_error("poisson_binomial: probabilities must lie in [0,1]");
        }
        pmf.push_back(0.0);
        for (std::size_t k = pmf.size() - 1; k > 0; --k) {
            pmf[k] = pmf[k] * (1.0 - p) + pmf[k - 1] * p;
        }
        pmf[0] *= 1.0 - p;
    }
    return DiscreteDistribution(std::move(pmf));
}

/// Smallest k with cdf(k) > eps. With outages counted as Pr(C < R), this is
/// the index whose capacity attains the supremum in the eps-outage rate.
inline int quantile(const DiscreteDistribution& dist, double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw std::domain_error("quantile: eps must lie in [0,1)");
    }
    const auto cdf = dist.cdf();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), eps);
    if (it == cdf.end()) {
        return dist.support_max();
    }
    return static_cast<int>(it - cdf.begin());
}

} // namespace risphase::specfun
