#include <risphase/model.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace risphase;
using std::numbers::pi;

TEST(EffectiveChannel, LosOnly) {
    SlowRealization slow{{0.0, 0.0, 0.0}, {0.4, 1.2, 5.0}, 0.0};
    const std::vector<double> theta{0.1, 0.2, 0.3};
    const auto h = effective_channel(slow, theta, 3.0);
    EXPECT_DOUBLE_EQ(h.real(), 3.0);
    EXPECT_DOUBLE_EQ(h.imag(), 0.0);
}

TEST(EffectiveChannel, DestructivePair) {
    SlowRealization slow{{1.0, 1.0}, {0.0, 0.0}, 0.0};
    const std::vector<double> theta{0.0, pi};
    EXPECT_NEAR(std::abs(effective_channel(slow, theta, 0.0)), 0.0, 1e-15);
}

TEST(EffectiveChannel, PerfectAlignment) {
    SlowRealization slow{{1.0, 1.0}, {0.3, 1.1}, 0.0};
    const std::vector<double> theta{-0.3, -1.1};
    const auto h = effective_channel(slow, theta, 0.0);
    EXPECT_NEAR(h.real(), 2.0, 1e-15);
    EXPECT_NEAR(h.imag(), 0.0, 1e-15);
}

TEST(EffectiveChannel, LengthMismatch) {
    SlowRealization slow{{1.0, 1.0}, {0.3, 1.1}, 0.0};
    const std::vector<double> theta{0.0};
    EXPECT_THROW(effective_channel(slow, theta, 0.0), std::invalid_argument);
    SlowRealization bad{{1.0}, {0.3, 1.1}, 0.0};
    const std::vector<double> two{0.0, 0.0};
    EXPECT_THROW(effective_channel(bad, two, 0.0), std::invalid_argument);
}

TEST(EffectiveChannel, TriangleBoundAttainedByAlignment) {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
    std::bernoulli_distribution link(0.6);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(gen() % 30);
        SlowRealization slow;
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            slow.c.push_back(link(gen) ? 1.0 : 0.0);
            slow.phi_tilde.push_back(u(gen));
            total += slow.c.back();
        }
        slow.phi_los = u(gen);
        const double a = 2.0 * u(gen) / (2.0 * pi);
        std::vector<double> theta(static_cast<std::size_t>(n));
        for (auto& t : theta) {
            t = u(gen);
        }
        EXPECT_LE(std::abs(effective_channel(slow, theta, a)), a + total + 1e-12);
        for (int i = 0; i < n; ++i) {
            theta[static_cast<std::size_t>(i)] = slow.phi_los - slow.phi_tilde[static_cast<std::size_t>(i)];
        }
        EXPECT_NEAR(std::abs(effective_channel(slow, theta, a)), a + total, 1e-12);
    }
}

TEST(InstantaneousCapacity, ReferenceValues) {
    EXPECT_EQ(instantaneous_capacity({0.0, 0.0}), 0.0);
    EXPECT_DOUBLE_EQ(instantaneous_capacity({1.0, 0.0}), 1.0);
    EXPECT_DOUBLE_EQ(instantaneous_capacity(std::polar(1.0, 0.7)), 1.0);
    EXPECT_NEAR(instantaneous_capacity({3.0, 0.0}), 3.321928094887362, 1e-15);
}

TEST(InstantaneousCapacity, StrictlyIncreasing) {
    double prev = -1.0;
    for (double r = 0.0; r < 100.0; r += 0.01) {
        const double c = instantaneous_capacity({r, 0.0});
        EXPECT_GT(c, prev);
        prev = c;
    }
}

TEST(Scenario, Validation) {
    Scenario s;
    EXPECT_NO_THROW(s.validate());
    s.n_elements = 0;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {};
    s.link_probs = 1.5;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {};
    s.link_probs = std::vector<double>{0.1, 0.2};
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {};
    s.los_amplitude = -1.0;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {};
    s.scheme = Scheme::QuantizedHopping;
    s.quant_levels = 1;
    EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Scenario, LinkCountLaw) {
    Scenario s;
    s.n_elements = 2;
    s.link_probs = std::vector<double>{0.1, 0.9};
    const auto d = s.link_count_distribution();
    EXPECT_NEAR(d.pmf(1), 0.82, 1e-15);
    s.link_probs = 0.5;
    EXPECT_NEAR(s.link_count_distribution().pmf(1), 0.5, 1e-15);
}

TEST(Scheme, NamesRoundTrip) {
    for (auto sc : {Scheme::Hopping, Scheme::QuantizedHopping, Scheme::Static, Scheme::Perfect}) {
        EXPECT_EQ(scheme_from_string(to_string(sc)), sc);
    }
    EXPECT_THROW(scheme_from_string("random"), std::invalid_argument);
}

TEST(SnrThreshold, SmallRatePrecision) {
    EXPECT_EQ(snr_threshold(0.0), 0.0);
    EXPECT_NEAR(snr_threshold(1e-12) / (1e-12 * std::numbers::ln2), 1.0, 1e-11);
    EXPECT_DOUBLE_EQ(snr_threshold(1.0), 1.0);
    EXPECT_DOUBLE_EQ(snr_threshold(3.0), 7.0);
}
