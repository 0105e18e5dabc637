#pragma once

// Link configuration and the shared channel-model vocabulary.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "specfun.hpp"

namespace risphase {

enum class Scheme { Hopping, QuantizedHopping, Static, Perfect };

inline std::string_view to_string(Scheme scheme) {
    switch (scheme) {
    case Scheme::Hopping:
        return "hopping";
    case Scheme::QuantizedHopping:
        return "quantized";
    case Scheme::Static:
        return "static";
    case Scheme::Perfect:
        return "perfect";
    }
    return "unknown";
}

inline Scheme scheme_from_string(std::string_view name) {
    if (name == "hopping") {
        return Scheme::Hopping;
    }
    if (name == "quantized") {
        return Scheme::QuantizedHopping;
    }
    if (name == "static") {
        return Scheme::Static;
    }
    if (name == "perfect") {
        return Scheme::Perfect;
    }
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

/// One link configuration. A LOS amplitude of zero is the NLOS case.
struct Scenario {
    int n_elements = 20;
    /// Either one common availability probability or one per element.
    std::variant<double, std::vector<double>> link_probs = 0.5;
    double los_amplitude = 0.0;
    Scheme scheme = Scheme::Hopping;
    int quant_levels = 2;

    bool uniform() const { return std::holds_alternative<double>(link_probs); }

    /// Probability of element i being available.
    double prob(int i) const {
        if (uniform()) {
            return std::get<double>(link_probs);
        }
        return std::get<std::vector<double>>(link_probs).at(static_cast<std::size_t>(i));
    }

    std::vector<double> prob_vector() const {
        if (uniform()) {
            return std::vector<double>(static_cast<std::size_t>(std::max(n_elements, 0)),
                                       std::get<double>(link_probs));
        }
        return std::get<std::vector<double>>(link_probs);
    }

    void validate() const {
        if (n_elements < 1) {
            throw std::invalid_argument("scenario: n must be >= 1");
        }
        if (!uniform() && std::get<std::vector<double>>(link_probs).size() !=
                              static_cast<std::size_t>(n_elements)) {
            throw std::invalid_argument("scenario: probability vector length must equal n");
        }
        for (const double p : prob_vector()) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw std::invalid_argument("scenario: link probabilities must lie in [0,1]");
            }
        }
        if (!(los_amplitude >= 0.0) || !std::isfinite(los_amplitude)) {
            throw std::invalid_argument("scenario: a must be finite and >= 0");
        }
        if (scheme == Scheme::QuantizedHopping && quant_levels < 2) {
            throw std::invalid_argument("scenario: k must be >= 2");
        }
    }

    /// Law of the available-link count.
    specfun::DiscreteDistribution link_count_distribution() const {
        if (uniform()) {
            return specfun::binomial(n_elements, std::get<double>(link_probs));
        }
        const auto& p = std::get<std::vector<double>>(link_probs);
        return specfun::poisson_binomial(p);
    }
};

/// Quantities fixed over one codeword.
struct SlowRealization {
    std::vector<double> c;          // 0 or 1 per element
    std::vector<double> phi_tilde;  // [0, 2 pi)
    double phi_los = 0.0;

    int available() const {
        return static_cast<int>(std::count(c.begin(), c.end(), 1.0));
    }
};

enum class CurveKind { AnalyticStepMixture, McEcdf, AnalyticSmooth };

struct OutageCurve {
    std::vector<double> rates;
    std::vector<double> eps;
    CurveKind kind = CurveKind::AnalyticStepMixture;
};

/// a e^{j phi_los} + sum_i c_i e^{j (phi_tilde_i + theta_i)}.
inline std::complex<double> effective_channel(const SlowRealization& slow, std::span<const double> theta,
                                              double a) {
    if (slow.c.size() != slow.phi_tilde.size() || theta.size() != slow.c.size()) {
        throw std::invalid_argument("effective_channel: length mismatch between c (" +
                                    std::to_string(slow.c.size()) + "), phi_tilde (" +
                                    std::to_string(slow.phi_tilde.size()) + ") and theta (" +
                                    std::to_string(theta.size()) + ")");
    }
    double re = a * std::cos(slow.phi_los);
    double im = a * std::sin(slow.phi_los);
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (slow.c[i] != 0.0) {
            const double phase = slow.phi_tilde[i] + theta[i];
            re += slow.c[i] * std::cos(phase);
            im += slow.c[i] * std::sin(phase);
        }
    }
    return {re, im};
}

inline double instantaneous_capacity(std::complex<double> h) { return std::log2(1.0 + std::norm(h)); }

/// The SNR threshold 2^R - 1 with full relative precision for small R.
inline double snr_threshold(double rate) {
    return rate < 0.5 ? std::expm1(rate * std::numbers::ln2) : std::exp2(rate) - 1.0;
}

} // namespace risphase
