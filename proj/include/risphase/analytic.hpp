#pragma once

// Ergodic capacities, outage probabilities of the four phase schemes,
// eps-outage capacities and the general-fading outage approximation.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hankel.hpp"
#include "model.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace risphase::analytic {

enum class CapacityMethod { ExactHankel, ApproxEi };

/// Right-continuous step cdf F(x) = Pr(X <= x) from samples or a table.
class EmpiricalCdf {
public:
    static EmpiricalCdf from_samples(std::vector<double> samples) {
        if (samples.empty()) {
            throw std::invalid_argument("EmpiricalCdf: no samples");
        }
        std::sort(samples.begin(), samples.end());
        const double n = static_cast<double>(samples.size());
        EmpiricalCdf out;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (!out.x_.empty() && out.x_.back() == samples[i]) {
                out.f_.back() = static_cast<double>(i + 1) / n;
            } else {
                out.x_.push_back(samples[i]);
                out.f_.push_back(static_cast<double>(i + 1) / n);
            }
        }
        out.f_.back() = 1.0;
        return out;
    }

    /// F(x) = f[i] for x[i] <= x < x[i+1]; zero below x[0].
    static EmpiricalCdf from_table(std::vector<double> x, std::vector<double> f) {
        if (x.empty() || x.size() != f.size()) {
            throw std::invalid_argument("EmpiricalCdf: table columns must be nonempty and equal length");
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!(f[i] >= 0.0 && f[i] <= 1.0)) {
                throw std::invalid_argument("EmpiricalCdf: table values must lie in [0,1]");
            }
            if (i > 0 && (!(x[i] > x[i - 1]) || f[i] < f[i - 1])) {
                throw std::invalid_argument("EmpiricalCdf: table must be strictly increasing in x "
                                            "and nondecreasing in F");
            }
        }
        EmpiricalCdf out;
        out.x_ = std::move(x);
        out.f_ = std::move(f);
        return out;
    }

    double operator()(double x) const {
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        if (it == x_.begin()) {
            return 0.0;
        }
        return f_[static_cast<std::size_t>(it - x_.begin()) - 1];
    }

    std::span<const double> knots() const { return x_; }
    std::span<const double> values() const { return f_; }

private:
    EmpiricalCdf() = default;
    std::vector<double> x_;
    std::vector<double> f_;
};

namespace detail {

inline double exact_nlos_capacity_uncached(int n) {
    const hankel::PhasorSumDistribution dist(n);
    return dist.expectation([](double s) { return std::log2(1.0 + s * s); });
}

// The exact capacity of n links is a pure function of n; computing it costs
// up to a second, so ladders share one process-wide table.
inline double exact_nlos_capacity(int n) {
    static std::mutex mutex;
    static std::map<int, double> table;
    {
        const std::lock_guard lock(mutex);
        if (const auto it = table.find(n); it != table.end()) {
            return it->second;
        }
    }
    const double value = exact_nlos_capacity_uncached(n);
    const std::lock_guard lock(mutex);
    table.emplace(n, value);
    return value;
}

} // namespace detail

/// Ergodic capacity in bits of n available NLOS links under phase hopping.
inline double erg_capacity_nlos(int n_avail, CapacityMethod method) {
    if (n_avail < 0) {
        throw std::domain_error("erg_capacity_nlos: link count must be >= 0");
    }
    if (n_avail == 0) {
        return 0.0;
    }
    if (method == CapacityMethod::ApproxEi) {
        return specfun::cal_e(1.0 / n_avail) / std::numbers::ln2;
    }
    return detail::exact_nlos_capacity(n_avail);
}

/// Ergodic capacity in bits with a LOS path of amplitude a, treating the RIS
/// sum as circular Gaussian with variance n (noncentral chi-square gain).
inline double erg_capacity_los(int n_avail, double a) {
    if (n_avail < 0) {
        throw std::domain_error("erg_capacity_los: link count must be >= 0");
    }
    if (!(a >= 0.0) || !std::isfinite(a)) {
        throw std::domain_error("erg_capacity_los: a must be finite and >= 0");
    }
    if (n_avail == 0) {
        return std::log2(1.0 + a * a);
    }
    if (a == 0.0) {
        return erg_capacity_nlos(n_avail, CapacityMethod::ApproxEi);
    }
    const double n = static_cast<double>(n_avail);
    // s = r^2; e^{-(a^2 + s)/n} I0(2 a r / n) = e^{-(r - a)^2/n} i0e(2 a r / n).
    auto integrand = [a, n](double r) {
        const double z = 2.0 * a * r / n;
        const double d = r - a;
        return 2.0 * r / n * std::log2(1.0 + r * r) * std::exp(-d * d / n) * specfun::bessel_i0_scaled(z);
    };
    const double width = std::sqrt(n) * std::log(1e10);
    const double upper = a + width;
    const double lo = std::max(0.0, a - width);
    double total = 0.0;
    if (lo > 0.0) {
        total += quad::adaptive(integrand, 0.0, lo, 1e-13);
    }
    total += quad::adaptive(integrand, lo, a, 1e-13);
    total += quad::adaptive(integrand, a, upper, 1e-13);
    return total;
}

/// C(0), ..., C(n_max) for the given LOS amplitude and method.
inline std::vector<double> capacity_ladder(int n_max, double a, CapacityMethod method) {
    std::vector<double> ladder(static_cast<std::size_t>(n_max) + 1);
    for (int i = 0; i <= n_max; ++i) {
        ladder[static_cast<std::size_t>(i)] =
            a == 0.0 ? erg_capacity_nlos(i, method) : erg_capacity_los(i, a);
    }
    return ladder;
}

namespace detail {

inline void check_rate(double rate, const char* what) {
    if (!(rate >= 0.0) || std::isnan(rate)) {
        throw std::domain_error(std::string(what) + ": rate must be >= 0");
    }
}

} // namespace detail

/// Step mixture sum_i u(R - C(i)) Pr(N~ = i) with u(0) = 0.
class HoppingOutage {
public:
    HoppingOutage(const Scenario& scenario, CapacityMethod method)
        : dist_(scenario.link_count_distribution()),
          ladder_(capacity_ladder(scenario.n_elements, scenario.los_amplitude, method)) {
        scenario.validate();
        if (scenario.scheme != Scheme::Hopping && scenario.scheme != Scheme::QuantizedHopping) {
            throw std::invalid_argument("outage_hopping: scenario scheme must be hopping or quantized");
        }
    }

    double operator()(double rate) const {
        detail::check_rate(rate, "outage_hopping");
        double total = 0.0;
        const auto pmf = dist_.pmf();
        for (std::size_t i = 0; i < ladder_.size(); ++i) {
            if (ladder_[i] < rate) {
                total += pmf[i];
            }
        }
        return std::min(total, 1.0);
    }

    std::span<const double> ladder() const { return ladder_; }
    const specfun::DiscreteDistribution& link_counts() const { return dist_; }

private:
    specfun::DiscreteDistribution dist_;
    std::vector<double> ladder_;
};

inline double outage_hopping(const Scenario& scenario, double rate, CapacityMethod method) {
    detail::check_rate(rate, "outage_hopping");
    return HoppingOutage(scenario, method)(rate);
}

/// Largest rate whose hopping outage does not exceed eps: C(k*) with k* the
/// smallest link count whose cdf exceeds eps.
inline double eps_capacity(const Scenario& scenario, double eps, CapacityMethod method) {
    scenario.validate();
    const int k = specfun::quantile(scenario.link_count_distribution(), eps);
    return scenario.los_amplitude == 0.0 ? erg_capacity_nlos(k, method)
                                         : erg_capacity_los(k, scenario.los_amplitude);
}

namespace detail {

inline double static_outage_approx(int n, double threshold, double a) {
    if (a == 0.0) {
        return -std::expm1(-threshold / n);
    }
    const double q = specfun::marcum_q1(std::sqrt(2.0 * a * a / n), std::sqrt(2.0 * threshold / n));
    return std::clamp(1.0 - q, 0.0, 1.0);
}

inline double zero_link_outage(double rate, double a) {
    return rate > std::log2(1.0 + a * a) ? 1.0 : 0.0;
}

} // namespace detail

/// Static-phase outage with exactly n available links.
inline double outage_static_fixed(int n_avail, double rate, double a, CapacityMethod mode) {
    detail::check_rate(rate, "outage_static_fixed");
    if (n_avail < 0) {
        throw std::domain_error("outage_static_fixed: link count must be >= 0");
    }
    if (!(a >= 0.0)) {
        throw std::domain_error("outage_static_fixed: a must be >= 0");
    }
    if (mode == CapacityMethod::ExactHankel && a > 0.0) {
        throw std::domain_error("outage_static_fixed: the exact mode requires a = 0");
    }
    if (n_avail == 0) {
        return detail::zero_link_outage(rate, a);
    }
    const double threshold = snr_threshold(rate);
    if (mode == CapacityMethod::ApproxEi) {
        return detail::static_outage_approx(n_avail, threshold, a);
    }
    const double x = std::sqrt(threshold);
    if (x >= n_avail) {
        return 1.0;
    }
    return hankel::phasor_cdf(hankel::PhasorSumDistribution(n_avail), x);
}

/// Mixture of the fixed-count static outages over the link-count law. The
/// phasor-sum laws are built once per count.
class StaticOutage {
public:
    StaticOutage(const Scenario& scenario, CapacityMethod mode)
        : dist_(scenario.link_count_distribution()), a_(scenario.los_amplitude), mode_(mode) {
        scenario.validate();
        if (mode == CapacityMethod::ExactHankel && a_ > 0.0) {
            throw std::domain_error("outage_static: the exact mode requires a = 0");
        }
        if (mode_ == CapacityMethod::ExactHankel) {
            for (int i = 1; i <= scenario.n_elements; ++i) {
                laws_.push_back(std::make_shared<const hankel::PhasorSumDistribution>(i));
            }
        }
    }

    double operator()(double rate) const {
        detail::check_rate(rate, "outage_static");
        const auto pmf = dist_.pmf();
        double total = pmf[0] * detail::zero_link_outage(rate, a_);
        const double threshold = snr_threshold(rate);
        const double x = std::sqrt(threshold);
        for (std::size_t i = 1; i < pmf.size(); ++i) {
            if (pmf[i] == 0.0) {
                continue;
            }
            const int n = static_cast<int>(i);
            double fixed = 0.0;
            if (mode_ == CapacityMethod::ApproxEi) {
                fixed = detail::static_outage_approx(n, threshold, a_);
            } else if (x >= n) {
                fixed = 1.0;
            } else {
                fixed = laws_[i - 1]->cdf(x);
            }
            total += pmf[i] * fixed;
        }
        return std::clamp(total, 0.0, 1.0);
    }

private:
    specfun::DiscreteDistribution dist_;
    double a_;
    CapacityMethod mode_;
    std::vector<std::shared_ptr<const hankel::PhasorSumDistribution>> laws_;
};

inline double outage_static(const Scenario& scenario, double rate, CapacityMethod mode) {
    detail::check_rate(rate, "outage_static");
    return StaticOutage(scenario, mode)(rate);
}

/// NLOS outage with perfect phase alignment, |H| = N~: the link-count cdf at
/// floor(sqrt(2^R - 1)).
inline double outage_perfect(const Scenario& scenario, double rate) {
    detail::check_rate(rate, "outage_perfect");
    scenario.validate();
    if (scenario.los_amplitude > 0.0) {
        throw std::domain_error("outage_perfect: only the NLOS case (a = 0) is supported");
    }
    const double x = snr_threshold(rate);
    if (!std::isfinite(x) || x >= static_cast<double>(scenario.n_elements) * scenario.n_elements) {
        return 1.0;
    }
    auto m = static_cast<long long>(std::floor(std::sqrt(x)));
    while (static_cast<double>(m + 1) * static_cast<double>(m + 1) <= x) {
        ++m;
    }
    while (m > 0 && static_cast<double>(m) * static_cast<double>(m) > x) {
        --m;
    }
    return std::min(scenario.link_count_distribution().cdf(static_cast<int>(m)), 1.0);
}

/// Outage under an arbitrary fading law of sigma^2 = (1/2) sum |h_i|^2 |g_i|^2:
/// F(1 / (2 E^{-1}(R ln 2))). No rate R <= 0 is ever in outage.
inline double outage_general_fading(double rate, const EmpiricalCdf& sigma2_cdf) {
    if (!(rate > 0.0)) {
        return 0.0;
    }
    const double x = specfun::cal_e_inverse(rate * std::numbers::ln2);
    return sigma2_cdf(1.0 / (2.0 * x));
}

/// sup{R : outage_perfect(R) <= eps} = log2(1 + k*^2), k* the eps-quantile of
/// the link count.
inline double eps_capacity_perfect(const Scenario& scenario, double eps) {
    scenario.validate();
    if (scenario.los_amplitude > 0.0) {
        throw std::domain_error("eps_capacity_perfect: only the NLOS case (a = 0) is supported");
    }
    const double k = specfun::quantile(scenario.link_count_distribution(), eps);
    return std::log2(1.0 + k * k);
}

/// Largest rate in [0, hi] with outage(R) <= eps for a nondecreasing outage
/// curve, by bisection to `tol`.
template <class F>
double largest_rate_within(F&& outage, double eps, double hi, double tol = 1e-12) {
    double lo = 0.0;
    if (outage(lo) > eps) {
        return 0.0;
    }
    if (outage(hi) <= eps) {
        return hi;
    }
    while (hi - lo > tol * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (outage(mid) <= eps ? lo : hi) = mid;
    }
    return lo;
}

inline double eps_capacity_static(const Scenario& scenario, double eps, CapacityMethod mode) {
    const StaticOutage curve(scenario, mode);
    const double top = scenario.los_amplitude + scenario.n_elements;
    return largest_rate_within(curve, eps, std::log2(1.0 + top * top), 1e-9);
}

/// Pr(N~ = 0) = prod_i (1 - p_i).
inline double min_outage(const Scenario& scenario) {
    scenario.validate();
    double out = 1.0;
    for (const double p : scenario.prob_vector()) {
        out *= 1.0 - p;
    }
    return out;
}

} // namespace risphase::analytic
