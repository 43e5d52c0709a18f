#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "tcbloch/bigfloat.hpp"
#include "tcbloch/bloch.hpp"
#include "tcbloch/errors.hpp"
#include "tcbloch/purity.hpp"

namespace tcbloch {

// Large-k limit of the block purity (k^2 >> 1 drops the -1 in 2^{k^2-1}-1 and
// the cross term): phi-independent three-term form.
inline PurityValue approx_large_k(int L, const BlochAngles& angles, PrecisionPolicy policy = {}) {
    policy.validate();
    if (L < 1)
        throw std::invalid_argument("approx_large_k: L must be positive");
    const long bits = policy.bits;
    const long boundary = 4 * long(L);      // Sigma_AB
    const long bulk = long(L) * L;          // Sigma_A
    Real half = mul_2si(angles.theta, -1);
    Real s = sin(half, bits), c = cos(half, bits);
    Real s2 = s * s, c2 = c * c;
    Real sum = mul_2si(s2 * s2, 1 - boundary) + mul_2si(2.0 * s2 * c2, 1 - bulk - boundary) +
               c2 * c2;
    return PurityValue::from_purity(std::move(sum));
}

// Additionally L^2 >> L >> 1: only the boundary term and the product term survive.
inline PurityValue approx_large_L(int L, const BlochAngles& angles, PrecisionPolicy policy = {}) {
    policy.validate();
    if (L < 1)
        throw std::invalid_argument("approx_large_L: L must be positive");
    const long bits = policy.bits;
    Real half = mul_2si(angles.theta, -1);
    Real s = sin(half, bits), c = cos(half, bits);
    Real s2 = s * s, c2 = c * c;
    Real sum = mul_2si(s2 * s2, 1 - 4 * long(L)) + c2 * c2;
    return PurityValue::from_purity(std::move(sum));
}

// Distance from the product pole parameterized as epsilon = cos^4(theta/2).
struct Perturbation {
    double epsilon;

    explicit Perturbation(double eps) : epsilon(eps) {
        if (!(eps > 0.0) || !(eps < 1.0))
            throw std::invalid_argument("Perturbation: epsilon must lie in (0, 1)");
    }
};

inline BlochAngles epsilon_to_theta(const Perturbation& p) {
    const mpfr_prec_t bits = 384;
    Real root = sqrt(sqrt(Real(p.epsilon, bits))); // epsilon^{1/4}
    return BlochAngles(mul_2si(acos(root), 1), Real(0L, bits));
}

struct PerturbedEntropy {
    Real value;              // 4L - 1 + 2 sqrt(eps)/ln 2
    bool condition_violated; // eps >= 2^{-4L}: outside the expansion's stated regime
};

inline PerturbedEntropy perturbed_entropy(int L, const Perturbation& p, PrecisionPolicy policy = {}) {
    policy.validate();
    if (L < 1)
        throw std::invalid_argument("perturbed_entropy: L must be positive");
    const long bits = policy.bits;
    Real eps(p.epsilon, bits);
    Real value = Real(4 * long(L) - 1, bits) + mul_2si(sqrt(eps) / Real::ln2(bits), 1);
    bool violated = eps >= mul_2si(Real(1L, bits), -4 * long(L));
    return PerturbedEntropy{std::move(value), violated};
}

enum class FitMode { TwoTerm, ThreeTerm };

struct FitResult {
    double alpha;    // area-law slope, bits per unit L
    double s_gamma;  // constant term
    double residual; // max |fit - data|
    FitMode mode;
};

// Least-squares fit of S2(L) = alpha L + S_gamma (+ c/L in three-term mode) at
// fixed angles; the constant term is the topological contribution.
inline FitResult extract_sgamma(int k, const BlochAngles& angles, const std::vector<int>& l_values,
                                FitMode mode, PrecisionPolicy policy = {}) {
    policy.validate();
    const size_t need = mode == FitMode::TwoTerm ? 2 : 3;
    if (l_values.size() < need)
        throw InsufficientPoints("extract_sgamma: need at least " + std::to_string(need) +
                                 " L values");
    if (std::set<int>(l_values.begin(), l_values.end()).size() != l_values.size())
        throw InsufficientPoints("extract_sgamma: L values must be distinct");

    const size_t n = l_values.size();
    const size_t params = need;
    Eigen::MatrixXd design(n, params);
    Eigen::VectorXd rhs(n);
    for (size_t i = 0; i < n; ++i) {
        double L = l_values[i];
        rhs(i) = purity_block(k, l_values[i], angles, policy).s2_d();
        design(i, 0) = L;
        design(i, 1) = 1.0;
        if (params == 3)
            design(i, 2) = 1.0 / L;
    }
    Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
    double residual = (design * coef - rhs).cwiseAbs().maxCoeff();
    return FitResult{coef(0), coef(1), residual, mode};
}

struct EntropyMax {
    double theta_max;
    double s2_max;
};

// Max of S2 over theta in (0, pi) at fixed phi: a 128-point pre-scan brackets
// the grid minimum of the purity, then golden-section refines to 1e-10 in
// theta. Purity values are compared at full policy precision because at k=20
// the curve is flat to ~2^{-200} near its extremum in double terms.
inline EntropyMax find_entropy_max(int k, int L, double phi, PrecisionPolicy policy = {}) {
    policy.validate();
    block_sigma(k, L);
    const double pi = std::numbers::pi;
    auto purity_at = [&](double theta) { return purity_block(k, L, BlochAngles(theta, phi), policy).purity; };

    constexpr int pre = 128;
    int best = 0;
    Real best_val = purity_at(pi / (pre + 1));
    for (int i = 1; i < pre; ++i) {
        Real v = purity_at(pi * (i + 1) / (pre + 1));
        if (v < best_val) {
            best_val = std::move(v);
            best = i;
        }
    }
    double lo = best == 0 ? pi / (pre + 1) / 1024 : pi * best / (pre + 1);
    double hi = best == pre - 1 ? pi : pi * (best + 2) / (pre + 1);

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c1 = hi - invphi * (hi - lo);
    double c2 = lo + invphi * (hi - lo);
    Real f1 = purity_at(c1), f2 = purity_at(c2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            hi = c2;
            c2 = c1;
            f2 = std::move(f1);
            c1 = hi - invphi * (hi - lo);
            f1 = purity_at(c1);
        } else {
            lo = c1;
            c1 = c2;
            f1 = std::move(f2);
            c2 = lo + invphi * (hi - lo);
            f2 = purity_at(c2);
        }
    }
    double theta_max = (lo + hi) / 2;
    return EntropyMax{theta_max, purity_block(k, L, BlochAngles(theta_max, phi), policy).s2_d()};
}

// max - min of S2 over a 64-point phi grid at fixed theta.
inline double phi_variation(int k, int L, double theta, PrecisionPolicy policy = {}) {
    policy.validate();
    block_sigma(k, L);
    constexpr int n = 64;
    Real lo(0L, 64), hi(0L, 64);
    for (int j = 0; j < n; ++j) {
        Real s2 = purity_block(k, L, BlochAngles(theta, 2.0 * std::numbers::pi * j / n), policy).renyi2;
        if (j == 0) {
            lo = s2;
            hi = s2;
        } else if (s2 < lo) {
            lo = std::move(s2);
        } else if (s2 > hi) {
            hi = std::move(s2);
        }
    }
    return (hi - lo).to_double();
}

} // namespace tcbloch
