// Exact law of |sum of n random unit phasors| and the exact ergodic capacity
// next to the large-n approximation.

#include <risphase/risphase.hpp>

#include <cstdio>

using namespace risphase;

int main() {
    const hankel::PhasorSumDistribution law(5);
    std::printf("n = 5\n%6s %12s %12s\n", "s", "pdf", "cdf");
    for (double s = 0.0; s <= 5.0; s += 0.5) {
        std::printf("%6.2f %12.6f %12.6f\n", s, law.pdf(s), law.cdf(s));
    }

    std::printf("\n%4s %10s %10s %10s\n", "n", "exact", "approx", "gap");
    for (const int n : {1, 2, 4, 6, 10, 20}) {
        const double exact = analytic::erg_capacity_nlos(n, analytic::CapacityMethod::ExactHankel);
        const double approx = analytic::erg_capacity_nlos(n, analytic::CapacityMethod::ApproxEi);
        std::printf("%4d %10.6f %10.6f %10.6f\n", n, exact, approx, exact - approx);
    }
}
