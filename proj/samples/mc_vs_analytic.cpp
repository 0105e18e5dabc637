// Monte-Carlo ECDF of the hopping scheme against the step mixture.

#include <risphase/risphase.hpp>

#include <cstdio>

using namespace risphase;

int main() {
    mc::McConfig cfg;
    cfg.scenario.n_elements = 20;
    cfg.scenario.link_probs = 0.5;
    cfg.slow_samples = 500;
    cfg.fast_samples = 5000;
    cfg.seed = 2024;

    const auto sim = mc::run(cfg);
    const analytic::HoppingOutage theory(cfg.scenario, analytic::CapacityMethod::ApproxEi);

    std::printf("%6s %12s %12s\n", "rate", "analytic", "mc");
    for (double r = 1.5; r <= 4.0; r += 0.125) {
        std::printf("%6.3f %12.5e %12.5e\n", r, theory(r), sim.outage(r));
    }
}
