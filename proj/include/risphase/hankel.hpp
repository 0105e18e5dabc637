#pragma once

// Hankel transforms by Ogata's Bessel-zero quadrature and the exact law of
// the random phasor sum S_n = |sum_{i=1}^n exp(j U_i)|.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "quadrature.hpp"
#include "specfun.hpp"

namespace risphase::hankel {

struct HankelParams {
    int node_count = 1000;
    double step_h = 0.002;
    int order = 0;
    /// Gaussian damping e^{-delta t^2} applied to the integrand; the transform
    /// is extrapolated to delta -> 0 from `damping_levels` halvings. Zero
    /// disables damping and yields plain Ogata quadrature.
    double damping = 1e-2;
    int damping_levels = 4;

    void validate() const {
        if (node_count < 16) {
            throw std::invalid_argument("HankelParams: node_count must be >= 16");
        }
        if (!(step_h > 0.0 && step_h < 1.0)) {
            throw std::invalid_argument("HankelParams: step_h must lie in (0, 1)");
        }
        if (order != 0 && order != 1) {
            throw std::domain_error("HankelParams: order must be 0 or 1");
        }
        if (!(damping >= 0.0) || !std::isfinite(damping)) {
            throw std::invalid_argument("HankelParams: damping must be finite and >= 0");
        }
        if (damping_levels < 1 || damping_levels > 8) {
            throw std::invalid_argument("HankelParams: damping_levels must lie in [1, 8]");
        }
    }
};

struct HankelResult {
    double value = 0.0;
    /// Set when the last quadrature term is not negligible (> 1e-8) relative
    /// to the running sum, i.e. the node set was truncated too early.
    bool accuracy_warning = false;
};

namespace detail {

struct OgataRule {
    std::vector<double> x;      // abscissae pi psi(h xi_k) / h
    std::vector<double> weight; // pi w_k J_nu(x_k) psi'(h xi_k)
};

inline OgataRule make_ogata_rule(int order, int node_count, double h) {
    OgataRule rule;
    rule.x.reserve(static_cast<std::size_t>(node_count));
    rule.weight.reserve(static_cast<std::size_t>(node_count));
    constexpr double pi = std::numbers::pi;
    for (int k = 1; k <= node_count; ++k) {
        const double zero = boost::math::cyl_bessel_j_zero(static_cast<double>(order), k);
        const double jnext = boost::math::cyl_bessel_j(order + 1, zero);
        // Y_nu(j) / J_{nu+1}(j) at a zero of J_nu, via the Wronskian.
        const double w = 2.0 / (pi * zero * jnext * jnext);
        const double t = h * zero / pi;
        const double arg = 0.5 * pi * std::sinh(t);
        const double th = std::tanh(arg);
        const double psi = t * th;
        double dpsi = 1.0;
        if (arg < 350.0) {
            const double sech = 1.0 / std::cosh(arg);
            dpsi = th + t * 0.5 * pi * std::cosh(t) * sech * sech;
        }
        const double x = pi * psi / h;
        rule.x.push_back(x);
        rule.weight.push_back(pi * w * boost::math::cyl_bessel_j(order, x) * dpsi);
    }
    return rule;
}

} // namespace detail

/// int_0^inf f(t) J_order(s t) t dt.
///
/// Each damped transform is an Ogata sum over the zeros of J_order; the
/// damped values are combined by Richardson extrapolation in delta.
template <class F>
HankelResult hankel_transform(F&& f, double s, const HankelParams& params = {}) {
    params.validate();
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw std::domain_error("hankel_transform: s must be positive and finite");
    }
    const auto rule = detail::make_ogata_rule(params.order, params.node_count, params.step_h);
    const int levels = params.damping > 0.0 ? params.damping_levels : 1;
    std::vector<double> values(static_cast<std::size_t>(levels), 0.0);
    bool warning = false;
    const double inv_s2 = 1.0 / (s * s);
    double delta = params.damping;
    for (int level = 0; level < levels; ++level, delta *= 0.5) {
        double sum = 0.0;
        double last = 0.0;
        for (std::size_t k = 0; k < rule.x.size(); ++k) {
            const double t = rule.x[k] / s;
            const double fv = f(t);
            last = rule.weight[k] * fv * rule.x[k] * inv_s2 * std::exp(-delta * t * t);
            sum += last;
        }
        if (std::abs(last) > 1e-8 * std::abs(sum)) {
            warning = true;
        }
        values[static_cast<std::size_t>(level)] = sum;
    }
    return {quad::richardson(values), warning};
}

/// Signed n-th power of a Bessel value through n log|x|; underflow flushes
/// to zero instead of producing denormal noise.
inline double signed_power(double x, int n) {
    if (n == 0) {
        return 1.0;
    }
    if (x == 0.0) {
        return 0.0;
    }
    const double magnitude = std::exp(n * std::log(std::abs(x)));
    return (x < 0.0 && (n % 2 == 1)) ? -magnitude : magnitude;
}

/// Law of S_n = |sum of n unit phasors with independent uniform phases|.
///
/// pdf(s) = s int_0^inf t J0(s t) J0(t)^n dt and cdf(s) = s int_0^inf
/// J1(s t) J0(t)^n dt. Both integrals are only conditionally convergent for
/// small n, so they are evaluated with a Gaussian factor e^{-delta t^2}
/// (a smoothing of the law in s) on band-limited Gauss-Legendre panels and
/// extrapolated to delta -> 0. Close to the singular points s = n - 2k of
/// small-n laws the damping is shrunk with the distance to the singularity.
class PhasorSumDistribution {
public:
    explicit PhasorSumDistribution(int n_links, HankelParams params = {})
        : n_(n_links), params_(params) {
        if (n_links < 1) {
            throw std::domain_error("PhasorSumDistribution: n_links must be >= 1");
        }
        params_.validate();
        if (!(params_.damping > 0.0)) {
            throw std::invalid_argument("PhasorSumDistribution: damping must be positive");
        }
        if (n_ > 1) {
            default_grid_ = make_grid(params_.damping);
        }
    }

    int n_links() const { return n_; }
    const HankelParams& params() const { return params_; }

    double pdf(double s) const {
        check_domain(s, "phasor_pdf");
        if (n_ == 1) {
            return s < 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
        }
        if (s == 0.0) {
            return n_ == 2 ? 1.0 / std::numbers::pi : 0.0;
        }
        if (s == static_cast<double>(n_)) {
            if (n_ == 2) {
                return std::numeric_limits<double>::infinity();
            }
            if (n_ >= 4) {
                return 0.0;
            }
        }
        const double v = s * evaluate(s, 0);
        return v < 0.0 ? 0.0 : v;
    }

    double cdf(double s) const {
        check_domain(s, "phasor_cdf");
        if (n_ == 1) {
            return s < 1.0 ? 0.0 : 1.0;
        }
        if (s == 0.0) {
            return 0.0;
        }
        if (s == static_cast<double>(n_)) {
            return 1.0;
        }
        return std::clamp(s * evaluate(s, 1), 0.0, 1.0);
    }

    /// E[g(S_n)] for a smooth g defined on [0, n + 1].
    ///
    /// The damped density leaks slightly past s = n; g is integrated against
    /// it on [0, n + 10 sqrt(2 delta)] and the result extrapolated in delta,
    /// which is exact in the limit for any g smooth on that interval.
    template <class G>
    double expectation(G&& g) const {
        if (n_ == 1) {
            return g(1.0);
        }
        const Grid& grid = default_grid_;
        const double s_max = n_ + 10.0 * std::sqrt(2.0 * params_.damping);
        const auto outer = quad::gauss_legendre(0.0, s_max, 0.1);
        const auto levels = static_cast<std::size_t>(grid.levels);
        std::vector<double> totals(levels, 0.0);
        std::vector<double> inner(levels);
        std::vector<double> factors(levels);
        for (std::size_t i = 0; i < outer.size(); ++i) {
            const double s = outer.x[i];
            const double gs = g(s) * s * outer.w[i];
            if (gs == 0.0) {
                continue;
            }
            std::fill(inner.begin(), inner.end(), 0.0);
            for (std::size_t k = 0; k < grid.t.size(); ++k) {
                const double base = grid.weighted_power[k] * grid.t[k] *
                                    specfun::bessel_j0(s * grid.t[k]);
                grid.damping(k, factors.data());
                for (std::size_t l = 0; l < levels; ++l) {
                    inner[l] += base * factors[l];
                }
            }
            for (std::size_t l = 0; l < levels; ++l) {
                totals[l] += gs * inner[l];
            }
        }
        return quad::richardson(totals);
    }

private:
    struct Grid {
        std::vector<double> t;
        std::vector<double> weighted_power;  // w_k J0(t_k)^n
        std::vector<double> finest;          // e^{-delta_min t_k^2}
        int levels = 0;

        // e^{-delta_l t_k^2} for l = 0..levels-1; delta_l = delta_min 2^{levels-1-l}.
        void damping(std::size_t k, double* out) const {
            double f = finest[k];
            for (int l = levels - 1; l >= 0; --l) {
                out[l] = f;
                f *= f;
            }
        }
    };

    void check_domain(double s, const char* what) const {
        if (!(s >= 0.0 && s <= static_cast<double>(n_))) {
            throw std::domain_error(std::string(what) + ": s must lie in [0, " +
                                    std::to_string(n_) + "]");
        }
    }

    Grid make_grid(double delta0) const {
        Grid grid;
        const double delta_min = delta0 * std::ldexp(1.0, -(params_.damping_levels - 1));
        // e^{-delta_min T^2} = 1e-16
        double t_max = std::sqrt(std::log(1e16) / delta_min);
        // Beyond this |J0(t)|^n t is below 1e-18 and contributes nothing.
        const double n = static_cast<double>(n_);
        const double envelope_cut = std::pow(2.0 / std::numbers::pi, n / (n - 2.0)) *
                                    std::pow(1e18, 2.0 / (n - 2.0));
        if (n_ > 2 && envelope_cut < t_max) {
            t_max = envelope_cut;
        }
        auto rule = quad::gauss_legendre(0.0, t_max, std::min(1.0, 3.0 / (2.0 * n + 1.0)));
        grid.t = std::move(rule.x);
        grid.weighted_power.resize(grid.t.size());
        for (std::size_t k = 0; k < grid.t.size(); ++k) {
            grid.weighted_power[k] = rule.w[k] * signed_power(specfun::bessel_j0(grid.t[k]), n_);
        }
        grid.levels = params_.damping_levels;
        grid.finest.resize(grid.t.size());
        for (std::size_t k = 0; k < grid.t.size(); ++k) {
            grid.finest[k] = std::exp(-delta_min * grid.t[k] * grid.t[k]);
        }
        return grid;
    }

    double damping_for(double s) const {
        if (n_ > 8) {
            return params_.damping;
        }
        double distance = std::numeric_limits<double>::infinity();
        for (int k = 0; 2 * k <= n_; ++k) {
            distance = std::min(distance, std::abs(s - (n_ - 2.0 * k)));
        }
        const double wanted = std::max(distance * distance / 100.0, 1e-6);
        if (wanted >= params_.damping) {
            return params_.damping;
        }
        // Rounded down to delta0 2^-m so that nearby points share a grid.
        const int m = static_cast<int>(std::ceil(std::log2(params_.damping / wanted)));
        return std::ldexp(params_.damping, -m);
    }

    const Grid& grid_for(double delta0) const {
        if (delta0 == params_.damping) {
            return default_grid_;
        }
        std::lock_guard lock(*cache_mutex_);
        auto& slot = (*grid_cache_)[delta0];
        if (!slot) {
            slot = std::make_shared<const Grid>(make_grid(delta0));
        }
        return *slot;
    }

    // int_0^inf t^{1-order} J_order(s t) J0(t)^n dt, extrapolated in delta.
    double evaluate(double s, int order) const {
        const Grid& grid = grid_for(damping_for(s));
        std::vector<double> totals(static_cast<std::size_t>(grid.levels), 0.0);
        std::vector<double> factors(totals.size());
        for (std::size_t k = 0; k < grid.t.size(); ++k) {
            const double t = grid.t[k];
            const double base = order == 0 ? grid.weighted_power[k] * t * specfun::bessel_j0(s * t)
                                           : grid.weighted_power[k] * specfun::bessel_j1(s * t);
            grid.damping(k, factors.data());
            for (std::size_t l = 0; l < totals.size(); ++l) {
                totals[l] += base * factors[l];
            }
        }
        return quad::richardson(totals);
    }

    int n_;
    HankelParams params_;
    Grid default_grid_;
    // Grids for reduced damping near singular points, shared between copies.
    std::shared_ptr<std::map<double, std::shared_ptr<const Grid>>> grid_cache_ =
        std::make_shared<std::map<double, std::shared_ptr<const Grid>>>();
    std::shared_ptr<std::mutex> cache_mutex_ = std::make_shared<std::mutex>();
};

inline double phasor_pdf(const PhasorSumDistribution& dist, double s) { return dist.pdf(s); }
inline double phasor_cdf(const PhasorSumDistribution& dist, double s) { return dist.cdf(s); }

} // namespace risphase::hankel
