#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "tcbloch/bigfloat.hpp"
#include "tcbloch/bloch.hpp"
#include "tcbloch/errors.hpp"
#include "tcbloch/lattice.hpp"

namespace tcbloch {

struct PrecisionPolicy {
    int bits = 256;

    void validate() const {
        if (bits < 64)
            throw std::invalid_argument("PrecisionPolicy: bits must be >= 64");
    }
};

struct PurityValue {
    Real purity;      // tr(rho_A^2), in (0, 1]
    Real log2_purity; // <= 0
    Real renyi2;      // S2 = -log2 purity, in bits

    double purity_d() const { return purity.to_double(); }
    double s2_d() const { return renyi2.to_double(); }

    static PurityValue from_purity(Real p) {
        if (p.sign() <= 0)
            throw PrecisionTooLow("purity evaluated non-positive; raise PrecisionPolicy::bits");
        if (p > 1.0) {
            // only rounding fuzz may poke above 1
            if (p - 1.0 > mul_2si(Real(1L, p.prec()), -(long(p.prec()) - 16)))
                throw Error("purity exceeds 1 beyond rounding tolerance: " + p.str());
            p = Real(1L, p.prec());
        }
        Real lg = log2(p);
        Real s2 = lg.is_zero() ? Real(0L, lg.prec()) : -lg;
        return PurityValue{std::move(p), std::move(lg), std::move(s2)};
    }
};

namespace detail {

// Fewer than 10 significant bits left after cancellation => the requested
// precision cannot support the answer.
inline void check_significance(const Real& sum, const Real& magnitude, long bits) {
    if (sum.sign() <= 0 || sum < mul_2si(magnitude, -(bits - 10)))
        throw PrecisionTooLow("cancellation exhausted the working precision; raise bits");
}

} // namespace detail

// Block closed form:
//
//   tr rho_A^2 = sin^4(t/2) * [2^{2k^2-4L-1} - (2^{L^2+1}-1)(2^{S_B+1}-1)] / (2^{k^2-1}-1)^2
//              + 4 cos(phi) sin^3(t/2) cos(t/2) * (2^{L^2}-1)(2^{S_B}-1) / (2^{k^2-1}-1)^{3/2}
//              + 2 sin^2(t/2) cos^2(t/2) * (2^{L^2} + 2^{S_B} - 2) / (2^{k^2-1}-1)
//              + cos^4(t/2),            with S_B = k^2 - L^2 - 4L.
//
// The power-of-two polynomials are exact big integers (the leading numerator is
// a difference of near-equal 2^{~2k^2} terms, so machine floats are hopeless);
// only the final combination with the trig factors rounds, at policy precision.
// The half-integer denominator power is n * sqrt(n).
inline PurityValue purity_block(int k, int L, const BlochAngles& angles,
                                PrecisionPolicy policy = {}) {
    policy.validate();
    block_sigma(k, L); // validates (k, L), throws BlockTooLarge
    const long bits = policy.bits;
    const long ks = long(k) * k;
    const long ll = long(L) * L;
    const long sb = ks - ll - 4 * L;

    const mpz_class one = 1;
    const mpz_class n1 = (one << (2 * ks - 4 * L - 1)) - ((one << (ll + 1)) - 1) * ((one << (sb + 1)) - 1);
    const mpz_class n2 = ((one << ll) - 1) * ((one << sb) - 1);
    const mpz_class n3 = (one << ll) + (one << sb) - 2;
    const mpz_class den = (one << (ks - 1)) - 1;

    Real half = mul_2si(angles.theta, -1);
    Real s = sin(half, bits), c = cos(half, bits);
    Real cphi = cos(angles.phi, bits);
    Real s2 = s * s, c2 = c * c;
    Real d(den, bits);

    Real t1 = s2 * s2 * Real(n1, bits) / Real(den * den, bits);
    Real t2 = 4.0 * cphi * s2 * s * c * Real(n2, bits) / (d * sqrt(d));
    Real t3 = 2.0 * s2 * c2 * Real(n3, bits) / d;
    Real t4 = c2 * c2;

    Real sum = t1 + t2 + t3 + t4;
    detail::check_significance(sum, abs(t1) + abs(t2) + abs(t3) + abs(t4), bits);
    return PurityValue::from_purity(std::move(sum));
}

// General-subset closed form, ten terms over the (a, b) decomposition:
//
//   tr rho_A^2 = |a|^4 + |b|^4 d_A/f + [(a*b)^2 + (ab*)^2]/|G| + 2|a|^2|b|^2/f
//              + 2|a|^2 (a*b + ab*)/sqrt|G| + 2 (a*b + ab*)|b|^2 d_A/(f sqrt|G|)
//              + 2|a|^2|b|^2 d_A/|G|
//
// expanded analytically in (theta, phi) so a and b never materialize as floats
// (individually they underflow once |G| ~ 2^399):
//   |a|^2    = cos^2 + sin^2/M - 2 sin cos cos(phi)/sqrt(M)
//   |b|^2    = sin^2 N/M
//   a* b     = sin cos sqrt(N/M) e^{i phi} - sin^2 sqrt(N)/M,   M = N-1
// (half-angle sin/cos throughout). The conjugate-pair terms are still assembled
// as complex values and the imaginary residue of the sum is checked to vanish.
inline PurityValue purity_general(const RegionCombinatorics& comb, const BlochAngles& angles,
                                  PrecisionPolicy policy = {}) {
    policy.validate();
    if (comb.log2_g < 1)
        throw std::invalid_argument("purity_general: log2_G must be >= 1");
    if (comb.log2_da < 0 || comb.log2_db < 0 || comb.log2_f < 0 ||
        comb.log2_f != comb.log2_g - comb.log2_db)
        throw std::invalid_argument("purity_general: inconsistent RegionCombinatorics");

    const long bits = policy.bits;
    const long g = comb.log2_g;
    const long da_over_f = comb.log2_da - comb.log2_f;

    Real m((mpz_class(1) << g) - 1, bits);
    Real sqrt_m = sqrt(m);
    Real sqrt_n = sqrt(mul_2si(Real(1L, bits), g));

    Real half = mul_2si(angles.theta, -1);
    Real s = sin(half, bits), c = cos(half, bits);
    Real x = cos(angles.phi, bits), y = sin(angles.phi, bits);
    Real s2 = s * s, cs = c * s;

    Real u = c * c + s2 / m - 2.0 * cs * x / sqrt_m; // |a|^2
    Real v = mul_2si(s2 / m, g);                     // |b|^2
    Real p = cs * (sqrt_n / sqrt_m) * x - s2 * sqrt_n / m; // Re(a* b)
    Real q = cs * (sqrt_n / sqrt_m) * y;                   // Im(a* b)

    const Real zero(0L, bits);
    struct C {
        Real re, im;
    };
    // (a*b)^2/|G| and its conjugate, the 2|a|^2(a*b)/sqrt|G| pair, and the
    // 2(a*b)|b|^2 d_A/(f sqrt|G|) pair carry the only imaginary parts.
    const C terms[10] = {
        {u * u, zero},
        {mul_2si(v * v, da_over_f), zero},
        {mul_2si(p * p - q * q, -g), mul_2si(2.0 * p * q, -g)},
        {mul_2si(p * p - q * q, -g), mul_2si(-2.0 * p * q, -g)},
        {mul_2si(2.0 * u * v, -comb.log2_f), zero},
        {2.0 * u * p / sqrt_n, 2.0 * u * q / sqrt_n},
        {2.0 * u * p / sqrt_n, -2.0 * u * q / sqrt_n},
        {mul_2si(2.0 * v * p / sqrt_n, da_over_f), mul_2si(2.0 * v * q / sqrt_n, da_over_f)},
        {mul_2si(2.0 * v * p / sqrt_n, da_over_f), mul_2si(-2.0 * v * q / sqrt_n, da_over_f)},
        {mul_2si(2.0 * u * v, comb.log2_da - g), zero},
    };

    Real sum = zero, imag = zero, mag = zero;
    for (const C& t : terms) {
        sum += t.re;
        imag += t.im;
        mag += abs(t.re);
    }
    if (abs(imag) > mul_2si(Real(1L, bits), -bits / 2))
        throw NonRealResidue("purity_general: imaginary residue " + imag.str(6));
    detail::check_significance(sum, mag, bits);
    return PurityValue::from_purity(std::move(sum));
}

struct SweepRow {
    double theta;
    double phi;
    double s2;
    double log2_purity;
};

// Row-major (theta outer, phi inner) grid of S2 values; cells fan out across
// hardware threads, results land by index so the table order is deterministic.
inline std::vector<SweepRow> sweep(int k, int L, const std::vector<double>& theta_grid,
                                   const std::vector<double>& phi_grid,
                                   PrecisionPolicy policy = {}) {
    policy.validate();
    block_sigma(k, L);
    if (theta_grid.empty() || phi_grid.empty())
        throw std::invalid_argument("sweep: empty grid");

    const size_t cells = theta_grid.size() * phi_grid.size();
    std::vector<SweepRow> out(cells);
    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                       static_cast<unsigned>(cells)));
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto work = [&](unsigned w) {
        try {
            for (size_t i = w; i < cells; i += workers) {
                double th = theta_grid[i / phi_grid.size()];
                double ph = phi_grid[i % phi_grid.size()];
                PurityValue pv = purity_block(k, L, BlochAngles(th, ph), policy);
                out[i] = SweepRow{th, ph, pv.s2_d(), pv.log2_purity.to_double()};
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error)
                first_error = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
        for (auto& t : pool)
            t.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);
    return out;
}

} // namespace tcbloch
