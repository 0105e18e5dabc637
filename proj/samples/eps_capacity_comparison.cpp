// eps-outage capacities of the three phase schemes for N = 20, p = 0.5.

#include <risphase/risphase.hpp>

#include <cstdio>

using namespace risphase;

int main() {
    Scenario s;
    s.n_elements = 20;
    s.link_probs = 0.5;
    Scenario st = s;
    st.scheme = Scheme::Static;
    Scenario pf = s;
    pf.scheme = Scheme::Perfect;

    const double eps = 1e-5;
    const double hopping = analytic::eps_capacity(s, eps, analytic::CapacityMethod::ApproxEi);
    const double fixed = analytic::eps_capacity_static(st, eps, analytic::CapacityMethod::ExactHankel);
    const double perfect = analytic::eps_capacity_perfect(pf, eps);

    std::printf("eps = %g, N = 20, p = 0.5\n", eps);
    std::printf("  static   %.3g\n", fixed);
    std::printf("  hopping  %.4f\n", hopping);
    std::printf("  perfect  %.4f\n", perfect);
    std::printf("minimum outage Pr(no links) = %.5e\n", analytic::min_outage(s));
}
