// End-to-end acceptance checks, one test per criterion.

#include <risphase/risphase.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <vector>

using namespace risphase;
using analytic::CapacityMethod;

namespace {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Scenario make(int n, double p, double a = 0.0, Scheme scheme = Scheme::Hopping, int k = 2) {
    Scenario s;
    s.n_elements = n;
    s.link_probs = p;
    s.los_amplitude = a;
    s.scheme = scheme;
    s.quant_levels = k;
    return s;
}

double three_sigma(double eps, double samples) { return 3.0 * std::sqrt(eps * (1.0 - eps) / samples); }

// Rates half-way between consecutive approximate capacities C(i), C(i + 1)
// for i in [first, first + count).
std::vector<double> ladder_midpoints(const std::vector<double>& ladder, int first, int count) {
    std::vector<double> out;
    for (int i = first; i < first + count; ++i) {
        out.push_back(0.5 * (ladder[static_cast<std::size_t>(i)] + ladder[static_cast<std::size_t>(i + 1)]));
    }
    return out;
}

} // namespace

TEST(Acceptance, ApproximationErrorAtSixAndFiftyLinks) {
    const Stopwatch clock;
    const double exact6 = analytic::erg_capacity_nlos(6, CapacityMethod::ExactHankel);
    const double approx6 = analytic::erg_capacity_nlos(6, CapacityMethod::ApproxEi);
    const double exact50 = analytic::erg_capacity_nlos(50, CapacityMethod::ExactHankel);
    const double approx50 = analytic::erg_capacity_nlos(50, CapacityMethod::ApproxEi);
    const double gap6 = std::abs(exact6 - approx6);
    const double gap50 = std::abs(exact50 - approx50);
    std::printf("gap(6) = %.5f (%.3f%%), gap(50) = %.5f (%.4f%%)\n", gap6, 100.0 * gap6 / exact6, gap50,
                100.0 * gap50 / exact50);
    EXPECT_NEAR(gap6, 0.035, 0.005);
    EXPECT_NEAR(100.0 * gap6 / exact6, 1.5, 0.3);
    EXPECT_NEAR(gap50, 0.0064, 0.001);
    EXPECT_NEAR(100.0 * gap50 / exact50, 0.13, 0.03);
    EXPECT_LT(clock.seconds(), 30.0);
}

TEST(Acceptance, EpsCapacityTripleAtOneInHundredThousand) {
    const Stopwatch clock;
    const double eps = 1e-5;
    const double fixed =
        analytic::eps_capacity_static(make(20, 0.5, 0.0, Scheme::Static), eps, CapacityMethod::ExactHankel);
    const double hopping = analytic::eps_capacity(make(20, 0.5), eps, CapacityMethod::ApproxEi);
    const double perfect = analytic::eps_capacity_perfect(make(20, 0.5, 0.0, Scheme::Perfect), eps);
    std::printf("static %.6f, hopping %.6f, perfect %.6f\n", fixed, hopping, perfect);
    EXPECT_LT(fixed, 0.005);
    EXPECT_NEAR(hopping, 0.8603, 0.001);
    EXPECT_EQ(perfect, 1.0);
    EXPECT_LT(clock.seconds(), 10.0);
}

TEST(Acceptance, MinimumOutage) {
    EXPECT_EQ(analytic::min_outage(make(20, 0.5)), std::ldexp(1.0, -20));
    EXPECT_NEAR(analytic::min_outage(make(20, 0.5)), 9.5367e-7, 5e-12);
    EXPECT_NEAR(analytic::min_outage(make(20, 0.1)), std::pow(0.9, 20), 1e-15);
    EXPECT_NEAR(analytic::min_outage(make(20, 0.1)), 0.1216, 5e-5);
}

TEST(Acceptance, HoppingMonteCarloAgainstStepMixture) {
    const Stopwatch clock;
    const auto scenario = make(20, 0.5);
    const auto sim = mc::run({scenario, 500, 5000, 20240601});
    const analytic::HoppingOutage mixture(scenario, CapacityMethod::ApproxEi);
    const std::vector<double> ladder(mixture.ladder().begin(), mixture.ladder().end());

    const auto rates = ladder_midpoints(ladder, 0, 20);
    for (const double r : rates) {
        const double eps = mixture(r);
        EXPECT_LE(std::abs(sim.outage(r) - eps), three_sigma(eps, 500.0) + 1e-12)
            << "ECDF at rate " << r << ": mc " << sim.outage(r) << " vs mixture " << eps;
    }

    // Plateau of the ECDF for each available-link count with enough samples.
    std::map<int, std::vector<double>> groups;
    for (std::size_t k = 0; k < sim.per_slow_capacity.size(); ++k) {
        groups[sim.per_slow_available[k]].push_back(sim.per_slow_capacity[k]);
    }
    for (auto& [links, caps] : groups) {
        if (caps.size() < 5) {
            continue;
        }
        std::nth_element(caps.begin(), caps.begin() + caps.size() / 2, caps.end());
        const double plateau = caps[caps.size() / 2];
        const double target = ladder[static_cast<std::size_t>(links)];
        std::printf("links %2d: plateau %.4f, C_approx %.4f, offset %+.4f (%zu samples)\n", links, plateau, target,
                    plateau - target, caps.size());
        EXPECT_LE(std::abs(plateau - target), 0.02) << "plateau for " << links << " links";
    }
    EXPECT_LT(clock.seconds(), 60.0);
}

TEST(Acceptance, StaticExactFormulaAgainstMonteCarlo) {
    const Stopwatch clock;
    const auto scenario = make(20, 0.5, 0.0, Scheme::Static);
    const double samples = 1e5;
    const auto sim = mc::run({scenario, 100000, 1, 77});
    const analytic::StaticOutage exact(scenario, CapacityMethod::ExactHankel);
    for (int i = 1; i <= 20; ++i) {
        const double r = 0.25 * i;
        const double eps = exact(r);
        EXPECT_LE(std::abs(sim.outage(r) - eps), three_sigma(eps, samples) + 1e-9)
            << "rate " << r << ": mc " << sim.outage(r) << " vs exact " << eps;
    }
    EXPECT_LT(clock.seconds(), 60.0);
}

TEST(Acceptance, OneBitPhasesApproachContinuousPhases) {
    const Stopwatch clock;
    // Same seed for both phase models, so both see identical available-link draws.
    auto run_pair = [](int n) {
        const std::uint64_t seed = 4242;
        auto quantized = mc::run({make(n, 0.5, 0.0, Scheme::QuantizedHopping, 2), 500, 20000, seed});
        auto continuous = mc::run({make(n, 0.5), 500, 20000, seed});
        return std::pair{std::move(quantized), std::move(continuous)};
    };
    auto sup_distance = [](const mc::McResult& x, const mc::McResult& y, double hi) {
        double worst = 0.0;
        for (double r = 0.0; r <= hi; r += 1e-3) {
            worst = std::max(worst, std::abs(x.outage(r) - y.outage(r)));
        }
        return worst;
    };

    const auto [q16, c16] = run_pair(16);
    const auto [q64, c64] = run_pair(64);

    const analytic::HoppingOutage mixture(make(64, 0.5), CapacityMethod::ApproxEi);
    const std::vector<double> ladder(mixture.ladder().begin(), mixture.ladder().end());
    for (const double r : ladder_midpoints(ladder, 22, 20)) {
        const double eps = mixture(r);
        EXPECT_LE(std::abs(q64.outage(r) - eps), three_sigma(eps, 500.0) + 1e-12)
            << "rate " << r << ": mc " << q64.outage(r) << " vs mixture " << eps;
    }

    const double far = sup_distance(q16, c16, ladder.back() + 1.0);
    const double near = sup_distance(q64, c64, ladder.back() + 1.0);
    std::printf("sup distance to continuous phases: N = 16 %.4f, N = 64 %.4f\n", far, near);
    EXPECT_LT(near, far);
    EXPECT_LT(clock.seconds(), 120.0);
}

TEST(Acceptance, CosineSumMoments) {
    const Stopwatch clock;
    const auto m = mc::quantized_sum_moments(50, 4, 1000000, 31);
    std::printf("mean %.5f, variance %.4f\n", m.mean, m.variance);
    EXPECT_LT(std::abs(m.mean), 0.05);
    EXPECT_NEAR(m.variance, 25.0, 0.5);
    EXPECT_LT(clock.seconds(), 30.0);
}

TEST(AcceptanceProperties, HankelOraclePairs) {
    const hankel::HankelParams params;
    for (double s = 0.25; s <= 4.0; s += 0.25) {
        const double gauss = hankel::hankel_transform([](double t) { return std::exp(-0.5 * t * t); }, s, params).value;
        EXPECT_NEAR(gauss, std::exp(-0.5 * s * s), 1e-5) << s;
        const double expo = hankel::hankel_transform([](double t) { return std::exp(-t); }, s, params).value;
        EXPECT_NEAR(expo, std::pow(1.0 + s * s, -1.5), 1e-5) << s;
    }
    const hankel::PhasorSumDistribution two(2);
    for (double s = 0.05; s < 1.96; s += 0.05) {
        EXPECT_NEAR(two.pdf(s), 2.0 / (std::numbers::pi * std::sqrt(4.0 - s * s)), 1e-5) << s;
    }
}

TEST(AcceptanceProperties, PhasorCdfAgainstEmpiricalDeciles) {
    std::mt19937_64 gen(8675309);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    constexpr int samples = 1000000;
    for (const int n : {3, 5, 8}) {
        std::vector<double> values(samples);
        for (auto& v : values) {
            double re = 0.0;
            double im = 0.0;
            for (int i = 0; i < n; ++i) {
                const double u = phase(gen);
                re += std::cos(u);
                im += std::sin(u);
            }
            v = std::hypot(re, im);
        }
        std::sort(values.begin(), values.end());
        const hankel::PhasorSumDistribution law(n);
        for (int d = 1; d <= 9; ++d) {
            const double q = values[static_cast<std::size_t>(d) * samples / 10];
            const double p = d / 10.0;
            EXPECT_LE(std::abs(law.cdf(q) - p), three_sigma(p, samples)) << "n = " << n << ", decile " << d;
        }
    }
}

TEST(AcceptanceProperties, ApproximationBelowExact) {
    for (int n = 1; n <= 50; ++n) {
        EXPECT_LE(analytic::erg_capacity_nlos(n, CapacityMethod::ApproxEi),
                  analytic::erg_capacity_nlos(n, CapacityMethod::ExactHankel) + 1e-3)
            << n;
    }
}

TEST(AcceptanceProperties, OutageMonotoneInRateAndProbability) {
    const std::vector<double> probs{0.1, 0.3, 0.5, 0.7, 0.9};
    auto check = [&](const char* name, auto&& outage, double step) {
        for (std::size_t j = 0; j < probs.size(); ++j) {
            double prev = 0.0;
            for (double r = 0.0; r <= 6.0; r += step) {
                const double e = outage(probs[j], r);
                EXPECT_GE(e, prev - 1e-12) << name << " in R at p = " << probs[j] << ", R = " << r;
                prev = e;
                if (j + 1 < probs.size()) {
                    EXPECT_LE(outage(probs[j + 1], r), e + 1e-12) << name << " in p at p = " << probs[j] << ", R = " << r;
                }
            }
        }
    };
    std::map<double, analytic::HoppingOutage> hopping;
    std::map<double, analytic::StaticOutage> fixed;
    std::map<double, analytic::StaticOutage> fixed_approx;
    for (const double p : probs) {
        hopping.emplace(p, analytic::HoppingOutage(make(20, p), CapacityMethod::ApproxEi));
        fixed.emplace(p, analytic::StaticOutage(make(20, p, 0.0, Scheme::Static), CapacityMethod::ExactHankel));
        fixed_approx.emplace(p, analytic::StaticOutage(make(20, p, 0.0, Scheme::Static), CapacityMethod::ApproxEi));
    }
    check("hopping", [&](double p, double r) { return hopping.at(p)(r); }, 0.01);
    check("static approx", [&](double p, double r) { return fixed_approx.at(p)(r); }, 0.01);
    check("static exact", [&](double p, double r) { return fixed.at(p)(r); }, 0.25);
    check("perfect", [&](double p, double r) { return analytic::outage_perfect(make(20, p, 0.0, Scheme::Perfect), r); },
          0.01);
}

TEST(AcceptanceProperties, SchemeDominanceOnComparisonGrid) {
    const auto ds = report::build_figure(report::FigureId::SchemeComparison);
    const auto& rate = ds.column("rate");
    const auto& hopping = ds.column("hopping");
    const auto& fixed = ds.column("static");
    const auto& perfect = ds.column("perfect");
    int perfect_violations = 0;
    int static_violations = 0;
    for (std::size_t i = 0; i < rate.size(); ++i) {
        if (perfect[i] > hopping[i]) {
            ++perfect_violations;
            if (perfect_violations <= 3) {
                ADD_FAILURE() << "perfect > hopping at R = " << rate[i] << ": " << perfect[i] << " > " << hopping[i];
            }
        }
        if (hopping[i] > fixed[i]) {
            ++static_violations;
            if (static_violations <= 3) {
                ADD_FAILURE() << "hopping > static at R = " << rate[i] << ": " << hopping[i] << " > " << fixed[i];
            }
        }
    }
    std::printf("violations on %zu grid points: perfect > hopping %d, hopping > static %d\n", rate.size(),
                perfect_violations, static_violations);
    EXPECT_EQ(perfect_violations, 0);
    EXPECT_EQ(static_violations, 0);
}

TEST(AcceptanceProperties, GeneralFadingMatchesIntermittentMixture) {
    for (const double p : {0.1, 0.5, 0.9}) {
        const auto scenario = make(20, p);
        const auto dist = scenario.link_count_distribution();
        // sigma^2 = N~ / 2 under unit-gain intermittent links.
        std::vector<double> x;
        std::vector<double> f;
        for (int i = 0; i <= 20; ++i) {
            x.push_back(0.5 * i);
            f.push_back(dist.cdf(i));
        }
        const auto sigma2 = analytic::EmpiricalCdf::from_table(x, f);
        const analytic::HoppingOutage mixture(scenario, CapacityMethod::ApproxEi);
        for (double r = 0.0; r <= 5.0; r += 0.0137) {
            EXPECT_NEAR(analytic::outage_general_fading(r, sigma2), mixture(r), 1e-12) << "p = " << p << ", R = " << r;
        }
    }
}

TEST(AcceptanceProperties, CalEInverseRoundTrip) {
    for (double y = 1e-6; y < 50.0; y *= 1.07) {
        const double x = specfun::cal_e_inverse(y);
        EXPECT_NEAR(specfun::cal_e(x), y, 1e-8 * y) << y;
    }
    for (double x = 1e-4; x < 1e4; x *= 1.13) {
        EXPECT_NEAR(specfun::cal_e_inverse(specfun::cal_e(x)), x, 1e-8 * x) << x;
    }
}

TEST(AcceptanceProperties, MonteCarloDeterministicAcrossWorkers) {
    for (const auto scheme : {Scheme::Hopping, Scheme::QuantizedHopping, Scheme::Static, Scheme::Perfect}) {
        const mc::McConfig cfg{make(20, 0.5, 0.5, scheme, 3), 256, 400, 99};
        const auto one = mc::run(cfg, 1);
        const auto eight = mc::run(cfg, 8);
        ASSERT_EQ(one.per_slow_capacity.size(), eight.per_slow_capacity.size());
        for (std::size_t k = 0; k < one.per_slow_capacity.size(); ++k) {
            EXPECT_EQ(std::bit_cast<std::uint64_t>(one.per_slow_capacity[k]),
                      std::bit_cast<std::uint64_t>(eight.per_slow_capacity[k]));
        }
    }
}

TEST(Acceptance, LosZeroOutageCapacity) {
    for (const double p : {0.0, 0.5, 1.0}) {
        EXPECT_EQ(analytic::outage_hopping(make(20, p, 3.0), 3.32, CapacityMethod::ApproxEi), 0.0) << p;
    }
    EXPECT_EQ(analytic::outage_hopping(make(20, 0.0, 3.0), 3.33, CapacityMethod::ApproxEi), 1.0);
}
