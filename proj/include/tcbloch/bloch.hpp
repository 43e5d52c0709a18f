#pragma once

#include <cmath>
#include <complex>

#include "tcbloch/bigfloat.hpp"
#include "tcbloch/errors.hpp"

namespace tcbloch {

// A pure state cos(theta/2)|0bar> + e^{i phi} sin(theta/2)|1bar>.
//
// Angles are kept in multiprecision because the toric point theta0 sits
// 2^{-log2_G/2} away from pi: at k = 20 (|G| = 2^399) that distance is far
// below double resolution, yet every closed form downstream needs it resolved.
struct BlochAngles {
    Real theta;
    Real phi;

    BlochAngles(double theta_, double phi_, mpfr_prec_t bits = 320)
        : BlochAngles(Real(theta_, bits), Real(phi_, bits)) {}

    BlochAngles(Real theta_, Real phi_) : theta(std::move(theta_)), phi(std::move(phi_)) {
        if (theta.sign() < 0 || theta > Real::pi_up(theta.prec()))
            throw std::invalid_argument("BlochAngles: theta outside [0, pi]");
        Real two_pi = mul_2si(Real::pi(phi.prec()), 1);
        phi = fmod(phi, two_pi);
        if (phi.sign() < 0)
            phi += two_pi;
    }

    double theta_d() const { return theta.to_double(); }
    double phi_d() const { return phi.to_double(); }
};

enum class NamedTag { ProductZero, OrthogonalOne, ToricGround, ToricAntipode };

struct NamedState {
    NamedTag tag;
    BlochAngles angles;
};

// theta0 = 2 arccos(|G|^{-1/2}), phi0 = 0: where the sphere touches the toric
// code ground state. Past log2_G = 1000 the arccos argument is swapped for its
// asymptote pi - 2*2^{-log2_G/2} to dodge needless precision blowup.
inline BlochAngles toric_angles(long log2_g) {
    if (log2_g < 1)
        throw std::invalid_argument("toric_angles: log2_G must be >= 1");
    mpfr_prec_t bits = std::max<long>(320, log2_g + 64);
    Real x = sqrt(mul_2si(Real(1L, bits), -log2_g)); // 2^{-log2_G/2}
    Real theta0 = log2_g > 1000 ? Real::pi(bits) - mul_2si(x, 1) : mul_2si(acos(x), 1);
    return BlochAngles(std::move(theta0), Real(0L, bits));
}

inline NamedState named_state(NamedTag tag, long log2_g) {
    switch (tag) {
    case NamedTag::ProductZero:
        return {tag, BlochAngles(0.0, 0.0)};
    case NamedTag::OrthogonalOne:
        return {tag, BlochAngles(Real::pi(320), Real(0L, 320))};
    case NamedTag::ToricGround:
        return {tag, toric_angles(log2_g)};
    case NamedTag::ToricAntipode: {
        BlochAngles g = toric_angles(log2_g);
        return {tag, BlochAngles(Real::pi(g.theta.prec()) - g.theta, Real::pi(g.theta.prec()))};
    }
    }
    throw std::invalid_argument("named_state: bad tag");
}

// Amplitudes of the same state in the non-orthogonal {|0bar>, |Psi0>} pair:
// a = cos(theta/2) - e^{i phi} sin(theta/2)/sqrt(|G|-1), b = e^{i phi} sin(theta/2) sqrt(|G|/(|G|-1)).
// Doubles only; past |G| = 2^60 the pieces underflow and the closed forms never
// need them, so bigger groups are rejected.
struct SuperpositionCoefficients {
    std::complex<double> a;
    std::complex<double> b;
};

inline SuperpositionCoefficients coefficients(const BlochAngles& angles, long log2_g) {
    if (log2_g < 1)
        throw std::invalid_argument("coefficients: log2_G must be >= 1");
    if (log2_g > 60)
        throw ScaleTooLarge("coefficients: log2_G > 60 is not representable in doubles");
    double n = std::ldexp(1.0, static_cast<int>(log2_g));
    double m = n - 1.0;
    double th = angles.theta_d(), ph = angles.phi_d();
    std::complex<double> e(std::cos(ph), std::sin(ph));
    double c = std::cos(th / 2), s = std::sin(th / 2);
    return {c - e * s / std::sqrt(m), e * s * std::sqrt(n / m)};
}

inline std::pair<std::complex<double>, std::complex<double>>
two_level_amplitudes(const BlochAngles& angles) {
    double th = angles.theta_d(), ph = angles.phi_d();
    return {std::complex<double>(std::cos(th / 2), 0.0),
            std::complex<double>(std::cos(ph), std::sin(ph)) * std::sin(th / 2)};
}

} // namespace tcbloch
