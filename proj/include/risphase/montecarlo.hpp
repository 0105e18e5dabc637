#pragma once

// Two-timescale Monte-Carlo simulator: slow draws of link availability and
// channel phases, fast per-symbol RIS phases.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "model.hpp"
#include "rng.hpp"

namespace risphase::mc {

struct McConfig {
    Scenario scenario;
    long long slow_samples = 2000;
    long long fast_samples = 10000;
    std::uint64_t seed = 1;

    void validate() const {
        scenario.validate();
        if (slow_samples < 1 || fast_samples < 1) {
            throw std::invalid_argument("mc: slow and fast sample counts must be >= 1");
        }
        if (static_cast<double>(slow_samples) * static_cast<double>(fast_samples) > 1e10) {
            throw std::overflow_error("mc: slow * fast must not exceed 1e10 (got " +
                                      std::to_string(slow_samples) + " * " +
                                      std::to_string(fast_samples) + ")");
        }
        if (slow_samples >= (1LL << 56)) {
            throw std::overflow_error("mc: slow sample count exceeds the counter space");
        }
    }
};

struct McResult {
    std::vector<double> per_slow_capacity;
    std::vector<int> per_slow_available;
    /// rates: sorted distinct capacities; eps[i] = fraction strictly below rates[i].
    OutageCurve ecdf;

    /// Fraction of slow realizations whose capacity is strictly below rate.
    double outage(double rate) const {
        const double n = static_cast<double>(sorted_.size());
        const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), rate);
        return static_cast<double>(it - sorted_.begin()) / n;
    }

    void finalize() {
        sorted_ = per_slow_capacity;
        std::sort(sorted_.begin(), sorted_.end());
        ecdf = {};
        ecdf.kind = CurveKind::McEcdf;
        const double n = static_cast<double>(sorted_.size());
        for (std::size_t i = 0; i < sorted_.size(); ++i) {
            if (i == 0 || sorted_[i] != sorted_[i - 1]) {
                ecdf.rates.push_back(sorted_[i]);
                ecdf.eps.push_back(static_cast<double>(i) / n);
            }
        }
    }

private:
    std::vector<double> sorted_;
};

/// Slow realization k of the configured stream.
inline SlowRealization draw_slow(const Scenario& scenario, const rng::Stream& stream, std::uint64_t k) {
    const auto n = static_cast<std::size_t>(scenario.n_elements);
    SlowRealization slow;
    slow.c.resize(n);
    slow.phi_tilde.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = stream.block(rng::Tag::Slow, k, 0, static_cast<std::uint32_t>(i));
        slow.c[i] = rng::to_unit(r[0], r[1]) < scenario.prob(static_cast<int>(i)) ? 1.0 : 0.0;
        slow.phi_tilde[i] = rng::to_unit(r[2], r[3]) * (2.0 * std::numbers::pi);
    }
    const auto r = stream.block(rng::Tag::Slow, k, 1, 0);
    slow.phi_los = rng::to_unit(r[0], r[1]) * (2.0 * std::numbers::pi);
    return slow;
}

namespace detail {

// Fast-fading average of log2(1 + |H|^2) for one slow realization.
inline double slow_capacity(const McConfig& cfg, const rng::Stream& stream, std::uint64_t k,
                            const SlowRealization& slow) {
    const Scenario& sc = cfg.scenario;
    const double a = sc.los_amplitude;
    const double los_re = a * std::cos(slow.phi_los);
    const double los_im = a * std::sin(slow.phi_los);
    const int available = slow.available();

    if (sc.scheme == Scheme::Perfect) {
        const double g = a + available;
        return std::log2(1.0 + g * g);
    }
    if (sc.scheme == Scheme::Static) {
        double re = los_re;
        double im = los_im;
        for (std::size_t i = 0; i < slow.c.size(); ++i) {
            if (slow.c[i] != 0.0) {
                re += std::cos(slow.phi_tilde[i]);
                im += std::sin(slow.phi_tilde[i]);
            }
        }
        return std::log2(1.0 + re * re + im * im);
    }
    if (available == 0) {
        return std::log2(1.0 + a * a);
    }

    // Draws stay tied to element indices so the stream does not depend on
    // which links happen to be available.
    std::vector<std::uint32_t> active;
    std::vector<double> base_re;
    std::vector<double> base_im;
    for (std::size_t i = 0; i < slow.c.size(); ++i) {
        if (slow.c[i] != 0.0) {
            active.push_back(static_cast<std::uint32_t>(i));
            base_re.push_back(std::cos(slow.phi_tilde[i]));
            base_im.push_back(std::sin(slow.phi_tilde[i]));
        }
    }
    const auto n_blocks = static_cast<std::uint32_t>((slow.c.size() + 3) / 4);
    std::vector<std::uint32_t> bits(static_cast<std::size_t>(n_blocks) * 4);

    const bool quantized = sc.scheme == Scheme::QuantizedHopping;
    const auto levels = static_cast<std::uint32_t>(sc.quant_levels);
    // e^{j (phi_tilde_i + 2 pi l / K)} for every active element and level.
    std::vector<double> table_re;
    std::vector<double> table_im;
    if (quantized) {
        table_re.resize(active.size() * levels);
        table_im.resize(active.size() * levels);
        for (std::size_t m = 0; m < active.size(); ++m) {
            for (std::uint32_t l = 0; l < levels; ++l) {
                const double phase = slow.phi_tilde[active[m]] + 2.0 * std::numbers::pi * l / levels;
                table_re[m * levels + l] = std::cos(phase);
                table_im[m * levels + l] = std::sin(phase);
            }
        }
    }

    double total = 0.0;
    for (long long j = 0; j < cfg.fast_samples; ++j) {
        const auto fast = static_cast<std::uint32_t>(j);
        for (std::uint32_t b = 0; b < n_blocks; ++b) {
            const auto r = stream.block(rng::Tag::Fast, k, fast, b);
            std::copy(r.begin(), r.end(), bits.begin() + 4 * b);
        }
        double re = los_re;
        double im = los_im;
        if (quantized) {
            for (std::size_t m = 0; m < active.size(); ++m) {
                const std::size_t idx = m * levels + rng::to_level(bits[active[m]], levels);
                re += table_re[idx];
                im += table_im[idx];
            }
        } else {
            for (std::size_t m = 0; m < active.size(); ++m) {
                const double theta = rng::to_phase(bits[active[m]]);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                re += base_re[m] * c - base_im[m] * s;
                im += base_re[m] * s + base_im[m] * c;
            }
        }
        total += std::log2(1.0 + re * re + im * im);
    }
    return total / static_cast<double>(cfg.fast_samples);
}

} // namespace detail

/// Runs the simulation; the result does not depend on `workers`.
inline McResult run(const McConfig& config, unsigned workers = 0) {
    config.validate();
    if (config.fast_samples > 0xFFFFFFFFLL &&
        (config.scenario.scheme == Scheme::Hopping || config.scenario.scheme == Scheme::QuantizedHopping)) {
        throw std::overflow_error("mc: fast sample count exceeds the counter space");
    }
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    const auto slow_count = static_cast<std::size_t>(config.slow_samples);
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, slow_count));
    const rng::Stream stream(config.seed);

    McResult result;
    result.per_slow_capacity.assign(slow_count, 0.0);
    result.per_slow_available.assign(slow_count, 0);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const auto slow = draw_slow(config.scenario, stream, k);
            result.per_slow_available[k] = slow.available();
            result.per_slow_capacity[k] = detail::slow_capacity(config, stream, k, slow);
        }
    };
    if (workers <= 1) {
        work(0, slow_count);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        const std::size_t chunk = (slow_count + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(slow_count, w * chunk);
            const std::size_t end = std::min(slow_count, begin + chunk);
            threads.emplace_back(work, begin, end);
        }
    }
    result.finalize();
    return result;
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Samples of sum_i cos(phi_i + theta_i) with phi_i uniform and theta_i
/// uniform on the K-level phase set.
inline std::vector<double> quantized_sum_samples(int n, int levels, long long samples, std::uint64_t seed) {
    if (n < 1 || levels < 2 || samples < 1) {
        throw std::invalid_argument("quantized_sum: need n >= 1, K >= 2 and samples >= 1");
    }
    const rng::Stream stream(seed);
    const auto k_levels = static_cast<std::uint32_t>(levels);
    std::vector<double> out(static_cast<std::size_t>(samples));
    for (long long j = 0; j < samples; ++j) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto r = stream.block(rng::Tag::Moments, static_cast<std::uint64_t>(j), 0,
                                        static_cast<std::uint32_t>(i));
            const double phi = rng::to_unit(r[0], r[1]) * (2.0 * std::numbers::pi);
            const double theta = 2.0 * std::numbers::pi * rng::to_level(r[2], k_levels) / levels;
            sum += std::cos(phi + theta);
        }
        out[static_cast<std::size_t>(j)] = sum;
    }
    return out;
}

inline Moments quantized_sum_moments(int n, int levels, long long samples, std::uint64_t seed) {
    const auto values = quantized_sum_samples(n, levels, samples, seed);
    // Welford
    double mean = 0.0;
    double m2 = 0.0;
    double count = 0.0;
    for (const double v : values) {
        count += 1.0;
        const double d = v - mean;
        mean += d / count;
        m2 += d * (v - mean);
    }
    return {mean, count > 1.0 ? m2 / (count - 1.0) : 0.0};
}

/// Kolmogorov-Smirnov distance of the samples to N(0, n/2).
inline double quantized_sum_ks_distance(int n, int levels, long long samples, std::uint64_t seed) {
    auto values = quantized_sum_samples(n, levels, samples, seed);
    std::sort(values.begin(), values.end());
    const double scale = std::sqrt(0.5 * n);
    const double count = static_cast<double>(values.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = 0.5 * std::erfc(-values[i] / (scale * std::numbers::sqrt2));
        worst = std::max({worst, std::abs(f - static_cast<double>(i) / count),
                          std::abs(static_cast<double>(i + 1) / count - f)});
    }
    return worst;
}

struct Histogram {
    std::vector<double> centers;
    std::vector<double> density;
};

/// Density histogram of the quantized cosine sum on [lo, hi).
inline Histogram quantized_sum_histogram(int n, int levels, long long samples, std::uint64_t seed, int bins,
                                         double lo, double hi) {
    if (bins < 1 || !(hi > lo)) {
        throw std::invalid_argument("quantized_sum_histogram: need bins >= 1 and hi > lo");
    }
    const auto values = quantized_sum_samples(n, levels, samples, seed);
    Histogram h;
    const double width = (hi - lo) / bins;
    std::vector<long long> counts(static_cast<std::size_t>(bins), 0);
    for (const double v : values) {
        if (v >= lo && v < hi) {
            const auto b = std::min(static_cast<std::size_t>((v - lo) / width), counts.size() - 1);
            ++counts[b];
        }
    }
    for (int b = 0; b < bins; ++b) {
        h.centers.push_back(lo + (b + 0.5) * width);
        h.density.push_back(static_cast<double>(counts[static_cast<std::size_t>(b)]) /
                            (static_cast<double>(values.size()) * width));
    }
    return h;
}

} // namespace risphase::mc
