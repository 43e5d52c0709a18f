// Prints S2(theta) at phi = 0 for a k = 20 torus with two block sizes, plus a
// crude ASCII profile. The maximum visibly sits near theta = pi and drifts
// right as L grows.

#include <cstdio>
#include <numbers>
#include <string>

#include "tcbloch/purity.hpp"
#include "tcbloch/topo.hpp"

using namespace tcbloch;

int main() {
    const int k = 20;
    const double pi = std::numbers::pi;

    for (int L : {2, 10}) {
        std::printf("k = %d, L = %d\n", k, L);
        std::printf("%10s %12s\n", "theta", "S2");
        double s2max = 4.0 * L - 1.0;
        for (int i = 0; i <= 24; ++i) {
            double theta = pi * i / 24;
            double s2 = purity_block(k, L, BlochAngles(theta, 0.0)).s2_d();
            int bar = int(40.0 * s2 / s2max + 0.5);
            std::printf("%10.6f %12.6f |%s\n", theta, s2, std::string(bar, '#').c_str());
        }
        EntropyMax em = find_entropy_max(k, L, 0.0);
        std::printf("maximum: S2 = %.9f at theta = %.9f  (pi - theta = %.3e)\n\n", em.s2_max,
                    em.theta_max, pi - em.theta_max);
    }
    return 0;
}
