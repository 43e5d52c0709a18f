#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "tcbloch/bloch.hpp"

using namespace tcbloch;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("angle validation and normalization") {
    CHECK_THROWS_AS(BlochAngles(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(BlochAngles(3.2, 0.0), std::invalid_argument);
    CHECK_NOTHROW(BlochAngles(0.0, 0.0));
    // theta = pi must be accepted at any working precision
    CHECK_NOTHROW(BlochAngles(Real::pi(128), Real(0L, 128)));
    CHECK_NOTHROW(BlochAngles(Real::pi(1024), Real(0L, 1024)));

    CHECK(std::abs(BlochAngles(1.0, -1.0).phi_d() - (2 * pi - 1.0)) < 1e-14);
    CHECK(std::abs(BlochAngles(1.0, 7.0).phi_d() - (7.0 - 2 * pi)) < 1e-14);
    CHECK(BlochAngles(1.0, 0.0).phi.is_zero());
    CHECK(BlochAngles(0.5, 0.25).theta_d() == 0.5);
}

TEST_CASE("toric point angles") {
    // 2 arccos(2^{-1/2}) = pi/2 and 2 arccos(2^{-1}) = 2 pi/3
    BlochAngles t1 = toric_angles(1);
    CHECK(abs(t1.theta - mul_2si(Real::pi(t1.theta.prec()), -1)) <
          mul_2si(Real(1L, 64), -300));
    BlochAngles t2 = toric_angles(2);
    CHECK(abs(t2.theta - mul_2si(Real::pi(t2.theta.prec()), 1) / 3.0) <
          mul_2si(Real(1L, 64), -300));
    CHECK(t2.phi.is_zero());

    // k = 20: the gap to pi is ~2^{-198.5}, far below double resolution
    BlochAngles big = toric_angles(399);
    Real gap = Real::pi(big.theta.prec()) - big.theta;
    CHECK(gap.sign() > 0);
    CHECK(gap < mul_2si(Real(1L, 64), -190));
    CHECK(gap > mul_2si(Real(1L, 64), -205));

    // asymptote branch: pi - theta0 = 2 * 2^{-g/2}
    BlochAngles huge = toric_angles(1500);
    Real gap2 = Real::pi(huge.theta.prec()) - huge.theta;
    CHECK(abs(gap2 - mul_2si(Real(1L, huge.theta.prec()), -749)) <
          mul_2si(Real(1L, 64), -1400));

    CHECK_THROWS_AS(toric_angles(0), std::invalid_argument);
}

TEST_CASE("named states") {
    CHECK(named_state(NamedTag::ProductZero, 8).angles.theta.is_zero());
    NamedState one = named_state(NamedTag::OrthogonalOne, 8);
    CHECK(std::abs(one.angles.theta_d() - pi) < 1e-15);

    NamedState ground = named_state(NamedTag::ToricGround, 8);
    NamedState anti = named_state(NamedTag::ToricAntipode, 8);
    Real sum = ground.angles.theta + anti.angles.theta;
    CHECK(abs(sum - Real::pi(sum.prec())) < mul_2si(Real(1L, 64), -250));
    CHECK(std::abs(anti.angles.phi_d() - pi) < 1e-15);
}

TEST_CASE("superposition coefficients over the non-orthogonal pair") {
    // at the toric point the state is |Psi0> itself: a = 0, b = 1
    long g = 8;
    SuperpositionCoefficients at_toric = coefficients(toric_angles(g), g);
    CHECK(std::abs(at_toric.a) < 1e-12);
    CHECK(std::abs(at_toric.b - 1.0) < 1e-12);

    // at the pole the state is the product state: a = 1, b = 0
    SuperpositionCoefficients at_pole = coefficients(BlochAngles(0.0, 0.0), g);
    CHECK(std::abs(at_pole.a - 1.0) < 1e-14);
    CHECK(std::abs(at_pole.b) < 1e-14);

    // reconstruction: a + b/sqrt|G| = cos(t/2), b sqrt((|G|-1)/|G|) = e^{i phi} sin(t/2)
    long g4 = 4;
    BlochAngles angles(1.1, 0.7);
    auto [a, b] = coefficients(angles, g4);
    std::complex<double> e(std::cos(0.7), std::sin(0.7));
    CHECK(std::abs(a + b / 4.0 - std::cos(0.55)) < 1e-14);
    CHECK(std::abs(b * std::sqrt(15.0 / 16.0) - e * std::sin(0.55)) < 1e-14);

    CHECK_THROWS_AS(coefficients(angles, 61), ScaleTooLarge);
    CHECK_THROWS_AS(coefficients(angles, 0), std::invalid_argument);
}

TEST_CASE("orthogonal two-level amplitudes") {
    auto [a0, a1] = two_level_amplitudes(BlochAngles(2.2, 5.0));
    CHECK(std::abs(std::norm(a0) + std::norm(a1) - 1.0) < 1e-14);
    CHECK(std::abs(a0 - std::cos(1.1)) < 1e-14);
    CHECK(std::abs(a1 - std::polar(std::sin(1.1), 5.0)) < 1e-13);
}
