#pragma once

// Small quadrature toolkit shared by the transform and capacity code.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace risphase::quad {

/// Nodes and weights of a composite rule.
struct NodeSet {
    std::vector<double> x;
    std::vector<double> w;

    std::size_t size() const { return x.size(); }
};

inline constexpr unsigned panel_points = 10;

/// Composite 10-point Gauss-Legendre rule on [a, b] with panels no wider
/// than `max_width`. Appends to `out`.
inline void append_gauss_legendre(NodeSet& out, double a, double b, double max_width) {
    if (!(b > a)) {
        return;
    }
    using rule = boost::math::quadrature::gauss<double, panel_points>;
    const auto& abscissa = rule::abscissa();
    const auto& weights = rule::weights();
    const auto panels = static_cast<std::size_t>(std::ceil((b - a) / max_width));
    const double width = (b - a) / static_cast<double>(panels);
    out.x.reserve(out.x.size() + panels * panel_points);
    out.w.reserve(out.w.size() + panels * panel_points);
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + width * static_cast<double>(p);
        const double half = 0.5 * width;
        const double mid = lo + half;
        // Boost stores the nonnegative half of a symmetric rule; for an even
        // point count abscissa[0] != 0.
        for (std::size_t i = 0; i < abscissa.size(); ++i) {
            out.x.push_back(mid - half * abscissa[i]);
            out.w.push_back(half * weights[i]);
            out.x.push_back(mid + half * abscissa[i]);
            out.w.push_back(half * weights[i]);
        }
    }
}

inline NodeSet gauss_legendre(double a, double b, double max_width) {
    NodeSet out;
    append_gauss_legendre(out, a, b, max_width);
    return out;
}

/// Richardson extrapolation to h -> 0 of values computed at h, h/2, h/4, ...
/// assuming an error expansion in integer powers of h.
inline double richardson(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("richardson: no values");
    }
    std::vector<double> row(values.begin(), values.end());
    double factor = 1.0;
    for (std::size_t level = 1; level < values.size(); ++level) {
        factor *= 2.0;
        for (std::size_t i = 0; i + level < values.size(); ++i) {
            row[i] = (factor * row[i + 1] - row[i]) / (factor - 1.0);
        }
    }
    return row[0];
}

/// Adaptive Gauss-Kronrod (7/15) integral of f over [a, b].
template <class F>
double adaptive(F&& f, double a, double b, double tolerance = 1e-12, unsigned max_depth = 20) {
    double error = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, max_depth, tolerance, &error);
}

} // namespace risphase::quad
