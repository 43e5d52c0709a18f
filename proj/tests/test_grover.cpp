#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "tcbloch/grover.hpp"

using namespace tcbloch;

namespace {

double state_distance(const TwoLevelState& a, const TwoLevelState& b) {
    return std::sqrt(std::norm(a.amp0 - b.amp0) + std::norm(a.amp1 - b.amp1));
}

double norm_sq(const TwoLevelState& s) { return std::norm(s.amp0) + std::norm(s.amp1); }

} // namespace

TEST_CASE("base angle") {
    // |G| = 4: theta_tilde = 2 arcsin(1/2) = pi/3
    GroverParams p = GroverParams::for_log2_group(2);
    CHECK(abs(p.theta_tilde() - Real::pi(p.theta_tilde().prec()) / 3.0) <
          mul_2si(Real(1L, 64), -180));
    CHECK_THROWS_AS(GroverParams::for_log2_group(0), std::invalid_argument);

    // series branch (log2 G > 100) agrees with direct evaluation
    GroverParams big = GroverParams::for_log2_group(150);
    Real direct = mul_2si(asin(sqrt(mul_2si(Real(1L, 256), -150))), 1);
    CHECK(abs(big.theta_tilde() - direct) < mul_2si(Real(1L, 64), -200));
}

TEST_CASE("initial state and single-step search at |G| = 4") {
    GroverParams p = GroverParams::for_log2_group(2);
    TwoLevelState s0 = psi0(p);
    CHECK(std::abs(s0.amp0.real() - 0.5) < 1e-15); // sin(pi/6)
    CHECK(std::abs(s0.amp1.real() - std::sqrt(3.0) / 2) < 1e-15);
    CHECK(std::abs(norm_sq(s0) - 1.0) < 1e-14);

    // one kernel application lands exactly on |0bar>
    TwoLevelState s1 = closed_form_iterate(p, 1);
    CHECK(std::abs(std::norm(s1.amp0) - 1.0) < 1e-12);
    CHECK(state_distance(s1, apply_kernel(s0, p, 1)) < 1e-14);

    TwoLevelState pz = product_zero();
    CHECK(pz.amp0 == std::complex<double>(1.0, 0.0));
}

TEST_CASE("closed form equals literal iteration") {
    GroverParams p = GroverParams::for_log2_group(8);
    TwoLevelState s = psi0(p);
    for (long long m = 0; m <= 100; ++m) {
        TwoLevelState closed = closed_form_iterate(p, m);
        INFO("m = " << m);
        CHECK(state_distance(closed, s) < 1e-12);
        s = apply_kernel(s, p, 1);
    }
}

TEST_CASE("kernel group law and inverse") {
    GroverParams p = GroverParams::for_log2_group(8);
    TwoLevelState s0 = psi0(p);
    CHECK(state_distance(apply_kernel(apply_kernel(s0, p, 3), p, 5),
                         apply_kernel(s0, p, 8)) < 1e-13);
    CHECK(state_distance(apply_kernel(apply_kernel(s0, p, 7), p, -7), s0) < 1e-13);
    CHECK(state_distance(apply_kernel(s0, p, 0), s0) == 0.0);
}

TEST_CASE("unitarity holds over a million iterations") {
    GroverParams p = GroverParams::for_log2_group(8);
    TwoLevelState far = apply_kernel(psi0(p), p, 1000000);
    CHECK(std::abs(norm_sq(far) - 1.0) < 1e-12);
    CHECK(state_distance(apply_kernel(far, p, -1000000), psi0(p)) < 1e-12);

    // beyond the literal-iteration cap the single-rotation path takes over and
    // must agree with the closed form
    CHECK(state_distance(apply_kernel(psi0(p), p, 2000001),
                         closed_form_iterate(p, 2000001)) < 1e-12);
}

TEST_CASE("optimal iteration count") {
    GroverParams p4 = GroverParams::for_log2_group(2);
    OptimalIterations o4 = optimal_iterations(p4);
    CHECK(o4.m_star == 1);
    CHECK(o4.success_prob == 1.0); // the rotation lands exactly on target
    // residual is at worst a few ulps of the working precision (-inf if exact)
    CHECK(o4.log2_infidelity < -300.0);

    GroverParams p256 = GroverParams::for_log2_group(8);
    OptimalIterations o256 = optimal_iterations(p256);
    CHECK(o256.m_star == 12);
    CHECK(o256.success_prob >= 0.9999);
    CHECK(std::abs(o256.success_prob - 0.99994704) < 1e-6);

    GroverParams p32k = GroverParams::for_log2_group(15);
    CHECK(optimal_iterations(p32k).m_star == 142);

    // k = 20 scale: m* ~ (pi/4) 2^{199.5} overflows any machine integer
    GroverParams giant = GroverParams::for_log2_group(399);
    OptimalIterations og = optimal_iterations(giant);
    CHECK(og.m_star > (mpz_class(1) << 197));
    CHECK(og.success_prob == 1.0); // rounds to 1 in doubles
    CHECK(og.log2_infidelity < -390.0);
}

TEST_CASE("inverse preparation infidelity is bounded by 1/|G|") {
    for (long g : {2L, 3L, 8L, 15L}) {
        GroverParams p = GroverParams::for_log2_group(g);
        InversePreparation ip = inverse_prepare(p);
        INFO("log2 G = " << g);
        CHECK(ip.infidelity <= std::ldexp(1.0, -int(g)));
        CHECK(ip.m >= 0);
        // the best integer is the rounded optimum or its neighbor
        mpz_class diff = ip.m - optimal_iterations(p).m_star;
        CHECK(abs(diff) <= 1);
        // running the inverse kernel that many times from |0bar> really lands
        // near |Psi0>
        if (ip.m.fits_slong_p()) {
            TwoLevelState prep = apply_kernel(product_zero(), p, -ip.m.get_si());
            TwoLevelState target = psi0(p);
            double overlap =
                std::norm(std::conj(prep.amp0) * target.amp0 + std::conj(prep.amp1) * target.amp1);
            CHECK(std::abs((1.0 - overlap) - ip.infidelity) < 1e-12);
        }
    }
}

TEST_CASE("fractional kernel powers") {
    GroverParams p = GroverParams::for_log2_group(8);
    TwoLevelState s0 = psi0(p);

    CHECK(state_distance(fractional_power(p, 1.0, s0), apply_kernel(s0, p, 1)) < 1e-13);
    TwoLevelState half_twice = fractional_power(p, 0.5, fractional_power(p, 0.5, s0));
    CHECK(state_distance(half_twice, apply_kernel(s0, p, 1)) < 1e-12);
    CHECK(state_distance(fractional_power(p, -1.0, apply_kernel(s0, p, 1)), s0) < 1e-12);
    CHECK(state_distance(fractional_power(p, 0.0, s0), s0) < 1e-15);

    // a global phase is fine; it is restored on output
    TwoLevelState phased{std::complex<double>(0.0, 0.6), std::complex<double>(0.0, 0.8)};
    TwoLevelState out = fractional_power(p, 2.0, phased);
    CHECK(std::abs(norm_sq(out) - 1.0) < 1e-13);
    CHECK(std::abs(out.amp0.real()) < 1e-13); // still purely imaginary
    CHECK(std::abs(out.amp1.real()) < 1e-13);

    // a relative phase off the rotation plane is rejected
    TwoLevelState off_plane{std::complex<double>(std::sqrt(0.5), 0.0),
                            std::complex<double>(0.0, std::sqrt(0.5))};
    CHECK_THROWS_AS(fractional_power(p, 0.5, off_plane), NotInPlane);
    // relative phase pi (opposite reals) stays in the plane
    TwoLevelState anti{std::complex<double>(std::sqrt(0.5), 0.0),
                       std::complex<double>(-std::sqrt(0.5), 0.0)};
    CHECK_NOTHROW(fractional_power(p, 0.5, anti));

    CHECK_THROWS_AS(fractional_power(p, 0.5, TwoLevelState{{0.0, 0.0}, {0.0, 0.0}}),
                    std::invalid_argument);
}
