#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "tcbloch/bigfloat.hpp"
#include "tcbloch/errors.hpp"

namespace tcbloch {

// State in the 2D invariant subspace, basis {|0bar>, |1bar>}.
struct TwoLevelState {
    std::complex<double> amp0;
    std::complex<double> amp1;
};

// In this basis the Grover kernel K = (2|Psi0><Psi0| - I) O with O = diag(-1, 1)
// is exactly the rotation
//
//     K = [  cos tt   sin tt ]        tt = 2 arcsin(|G|^{-1/2}),
//         [ -sin tt   cos tt ],       |Psi0> = (sin(tt/2), cos(tt/2)),
//
// i.e. each step turns the state by tt toward |0bar>. Everything below is that
// geometry; theta_tilde is kept in high precision because at k=20 scale it is
// ~2^{-198.5}, far below double resolution.
class GroverParams {
  public:
    static GroverParams for_log2_group(long log2_g) {
        if (log2_g < 1)
            throw std::invalid_argument("GroverParams: log2_G must be >= 1");
        const mpfr_prec_t bits = std::max<long>(192, log2_g + 64);
        Real x = sqrt(mul_2si(Real(1L, bits), -log2_g)); // |G|^{-1/2}
        Real tt(bits);
        if (log2_g > 100) {
            // arcsin series: asin(x) = x + x^3/6 + 3x^5/40 + ...; x^2 = 2^{-log2_G}
            Real x2 = mul_2si(Real(1L, bits), -log2_g);
            tt = mul_2si(x * (Real(1L, bits) + x2 / 6.0 + x2 * x2 * (3.0 / 40.0)), 1);
        } else {
            tt = mul_2si(asin(x), 1);
        }
        return GroverParams(log2_g, std::move(tt));
    }

    long log2_g() const { return log2_g_; }
    const Real& theta_tilde() const { return theta_tilde_; }
    double theta_tilde_d() const { return theta_tilde_.to_double(); }

  private:
    GroverParams(long g, Real tt) : log2_g_(g), theta_tilde_(std::move(tt)) {}
    long log2_g_;
    Real theta_tilde_;
};

inline TwoLevelState psi0(const GroverParams& params) {
    Real half = mul_2si(params.theta_tilde(), -1);
    return {std::complex<double>(sin(half, 64).to_double(), 0.0),
            std::complex<double>(cos(half, 64).to_double(), 0.0)};
}

inline TwoLevelState product_zero() { return {{1.0, 0.0}, {0.0, 0.0}}; }

namespace detail {

// Single rotation by `angle` (a Real, any magnitude; mpfr does the argument
// reduction) applied in long double to keep the drift budget.
inline TwoLevelState rotate_once(const TwoLevelState& s, const Real& angle) {
    long double c = cos(angle, 64).to_long_double();
    long double sn = sin(angle, 64).to_long_double();
    std::complex<long double> a0(s.amp0.real(), s.amp0.imag());
    std::complex<long double> a1(s.amp1.real(), s.amp1.imag());
    std::complex<long double> b0 = c * a0 + sn * a1;
    std::complex<long double> b1 = -sn * a0 + c * a1;
    return {{double(b0.real()), double(b0.imag())}, {double(b1.real()), double(b1.imag())}};
}

} // namespace detail

// K^m (inverse rotation for negative m). Literal 2x2 iteration up to |m| = 1e6
// in long double (double alone drifts past the 1e-12 unitarity budget by then);
// larger |m| collapses to the single rotation by m*theta_tilde.
inline TwoLevelState apply_kernel(const TwoLevelState& state, const GroverParams& params,
                                  long long m) {
    if (m == 0)
        return state;
    if (std::llabs(m) > 1000000)
        return detail::rotate_once(state, Real(mpz_class(long(m)), params.theta_tilde().prec()) *
                                              params.theta_tilde());

    long double c = cos(params.theta_tilde(), 64).to_long_double();
    long double sn = sin(params.theta_tilde(), 64).to_long_double();
    if (m < 0)
        sn = -sn; // transpose = inverse rotation
    std::complex<long double> a0(state.amp0.real(), state.amp0.imag());
    std::complex<long double> a1(state.amp1.real(), state.amp1.imag());
    for (long long i = std::llabs(m); i > 0; --i) {
        std::complex<long double> b0 = c * a0 + sn * a1;
        a1 = -sn * a0 + c * a1;
        a0 = b0;
    }
    return {{double(a0.real()), double(a0.imag())}, {double(a1.real()), double(a1.imag())}};
}

// K^m |Psi0> = sin((2m+1)/2 tt)|0bar> + cos((2m+1)/2 tt)|1bar>.
inline TwoLevelState closed_form_iterate(const GroverParams& params, long long m) {
    Real ang = mul_2si(Real(mpz_class(long(m)) * 2 + 1, params.theta_tilde().prec()) *
                           params.theta_tilde(),
                       -1);
    return {std::complex<double>(sin(ang, 64).to_double(), 0.0),
            std::complex<double>(cos(ang, 64).to_double(), 0.0)};
}

struct OptimalIterations {
    mpz_class m_star;       // ~ (pi/4) sqrt|G|; overflows int64 at k = 20 scale
    double success_prob;    // sin^2((2m*+1) tt / 2); rounds to 1.0 for huge |G|
    double log2_infidelity; // log2(1 - success), exact even when success == 1.0
};

namespace detail {

// Residual rotation away from pi/2 after m steps: (2m+1)tt/2 - pi/2 = r*tt
// with r = pi/(2 tt) - 1/2 - m the fractional overshoot.
inline Real half_step_residual(const GroverParams& params, const mpz_class& m) {
    const Real& tt = params.theta_tilde();
    Real ratio = Real::pi(tt.prec()) / mul_2si(tt, 1) - 0.5;
    return (ratio - Real(m, tt.prec())) * tt;
}

} // namespace detail

inline OptimalIterations optimal_iterations(const GroverParams& params) {
    const Real& tt = params.theta_tilde();
    Real ratio = Real::pi(tt.prec()) / mul_2si(tt, 1) - 0.5;
    mpz_class m = round_to_integer(ratio);
    if (m < 0)
        m = 0;
    Real resid = abs(sin(detail::half_step_residual(params, m)));
    double success = (1.0 - resid * resid).to_double();
    double log2_inf = resid.is_zero() ? -std::numeric_limits<double>::infinity()
                                      : mul_2si(log2(resid), 1).to_double();
    return OptimalIterations{std::move(m), success, log2_inf};
}

struct InversePreparation {
    mpz_class m;            // iterations of K^{-1} taking |0bar> closest to |Psi0>
    double infidelity;      // 1 - |<Psi0|K^{-m}|0bar>|^2 <= 1/|G|
    double log2_infidelity;
};

// |<Psi0|K^{-m}|0bar>| = |sin((2m+1)tt/2)|: the inverse preparation lands as
// close to the toric state as the forward search lands on |0bar>. The rounded
// optimum is checked against its integer neighbors rather than trusted.
inline InversePreparation inverse_prepare(const GroverParams& params) {
    const Real& tt = params.theta_tilde();
    Real ratio = Real::pi(tt.prec()) / mul_2si(tt, 1) - 0.5;
    mpz_class center = round_to_integer(ratio);

    bool have = false;
    mpz_class best_m;
    Real best_resid(tt.prec());
    for (int d = -1; d <= 1; ++d) {
        mpz_class cand = center + d;
        if (cand < 0)
            continue;
        Real resid = abs(sin(detail::half_step_residual(params, cand)));
        if (!have || resid < best_resid) {
            have = true;
            best_m = cand;
            best_resid = std::move(resid);
        }
    }
    double infid = (best_resid * best_resid).to_double();
    double log2_inf = best_resid.is_zero() ? -std::numeric_limits<double>::infinity()
                                           : mul_2si(log2(best_resid), 1).to_double();
    return InversePreparation{std::move(best_m), infid, log2_inf};
}

// K^e for real e: rotation by e*tt on the X-Z plane. Input must lie on that
// plane (real amplitudes up to one global phase); the global phase is factored
// off, the real pair is rotated, and the phase is restored.
inline TwoLevelState fractional_power(const GroverParams& params, double exponent,
                                      const TwoLevelState& state) {
    double n0 = std::abs(state.amp0), n1 = std::abs(state.amp1);
    if (n0 < 1e-12 && n1 < 1e-12)
        throw std::invalid_argument("fractional_power: state amplitude ~0");
    if (n0 > 1e-12 && n1 > 1e-12) {
        double rel = std::arg(state.amp1 / state.amp0);
        if (std::min(std::abs(rel), std::abs(std::abs(rel) - std::numbers::pi)) > 1e-9)
            throw NotInPlane("fractional_power: relative phase away from {0, pi}");
    }
    std::complex<double> phase =
        n0 >= n1 ? state.amp0 / n0 : state.amp1 / n1; // e^{i chi}, global
    double r0 = (state.amp0 / phase).real();
    double r1 = (state.amp1 / phase).real();

    Real ang = Real(exponent, params.theta_tilde().prec()) * params.theta_tilde();
    double c = cos(ang, 64).to_double();
    double sn = sin(ang, 64).to_double();
    return {phase * (c * r0 + sn * r1), phase * (-sn * r0 + c * r1)};
}

} // namespace tcbloch
