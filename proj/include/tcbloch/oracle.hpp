#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "tcbloch/bigfloat.hpp"
#include "tcbloch/bloch.hpp"
#include "tcbloch/errors.hpp"
#include "tcbloch/lattice.hpp"

// Ground truth by explicit state vectors at small k. Everything here is plain
// double arithmetic over at most 2^8 + 1 amplitudes; the closed forms elsewhere
// are tested against these numbers, never the other way around.
namespace tcbloch::oracle {

struct PauliXMask {
    uint64_t mask = 0;
};

struct PauliZMask {
    uint64_t mask = 0;
};

namespace detail {

inline uint64_t small_mask(const std::array<int, 4>& links) {
    uint64_t m = 0;
    for (int l : links)
        m ^= uint64_t(1) << l;
    return m;
}

inline void require_small(int k, const char* who) {
    if (k < 2)
        throw std::invalid_argument(std::string(who) + ": k must be >= 2");
    if (2 * k * k > 50)
        throw ScaleTooLarge(std::string(who) + ": masks are 64-bit, k must be <= 5");
}

} // namespace detail

inline std::vector<PauliXMask> star_masks(int k) {
    detail::require_small(k, "star_masks");
    TorusLattice lat(k);
    std::vector<PauliXMask> out;
    for (int y = 0; y < k; ++y)
        for (int x = 0; x < k; ++x)
            out.push_back({detail::small_mask(lat.star_links(x, y))});
    return out;
}

inline std::vector<PauliZMask> plaquette_masks(int k) {
    detail::require_small(k, "plaquette_masks");
    TorusLattice lat(k);
    std::vector<PauliZMask> out;
    for (int y = 0; y < k; ++y)
        for (int x = 0; x < k; ++x) {
            std::array<int, 4> links = {
                lat.link_index(LinkDir::H, x, y), lat.link_index(LinkDir::H, x, y + 1),
                lat.link_index(LinkDir::V, x, y), lat.link_index(LinkDir::V, x + 1, y)};
            out.push_back({detail::small_mask(links)});
        }
    return out;
}

// GF(2) span of all stars but the last; 2^{k^2-1} elements.
inline std::vector<PauliXMask> build_group(int k) {
    if (k > 4)
        throw ScaleTooLarge("build_group: capped at k = 4 (2^15 masks)");
    auto stars = star_masks(k);
    std::vector<PauliXMask> group(size_t(1) << (k * k - 1));
    for (size_t bits = 0; bits < group.size(); ++bits) {
        uint64_t m = 0;
        for (int i = 0; i < k * k - 1; ++i)
            if (bits >> i & 1)
                m ^= stars[i].mask;
        group[bits].mask = m;
    }
    return group;
}

struct SparseStateVector {
    int num_links = 0;
    std::map<uint64_t, std::complex<double>> entries;

    double norm_sq() const {
        double s = 0;
        for (auto& [_, amp] : entries)
            s += std::norm(amp);
        return s;
    }
};

inline std::complex<double> inner(const SparseStateVector& bra, const SparseStateVector& ket) {
    std::complex<double> s = 0;
    for (auto& [basis, amp] : ket.entries) {
        auto it = bra.entries.find(basis);
        if (it != bra.entries.end())
            s += std::conj(it->second) * amp;
    }
    return s;
}

// sigma_x on the masked links permutes the basis; diagonal-free, so this is a
// key relabeling.
inline SparseStateVector apply_x(const SparseStateVector& state, PauliXMask g) {
    SparseStateVector out{state.num_links, {}};
    for (auto& [basis, amp] : state.entries)
        out.entries[basis ^ g.mask] = amp;
    return out;
}

// sigma_z on the masked links multiplies by the parity of the overlap.
inline SparseStateVector apply_z(const SparseStateVector& state, PauliZMask g) {
    SparseStateVector out{state.num_links, {}};
    for (auto& [basis, amp] : state.entries)
        out.entries[basis] = __builtin_parityll(basis & g.mask) ? -amp : amp;
    return out;
}

inline double distance(const SparseStateVector& a, const SparseStateVector& b) {
    double s = 0;
    for (auto& [basis, amp] : a.entries) {
        auto it = b.entries.find(basis);
        s += std::norm(amp - (it == b.entries.end() ? 0.0 : it->second));
    }
    for (auto& [basis, amp] : b.entries)
        if (!a.entries.count(basis))
            s += std::norm(amp);
    return std::sqrt(s);
}

inline double star_expectation(const SparseStateVector& state, PauliXMask g) {
    return inner(state, apply_x(state, g)).real();
}

inline SparseStateVector ground_state(int k) {
    if (k > 3)
        throw ScaleTooLarge("ground_state: capped at k = 3 for dense partial traces");
    auto group = build_group(k);
    SparseStateVector st{2 * k * k, {}};
    double amp = 1.0 / std::sqrt(double(group.size()));
    for (auto g : group)
        st.entries[g.mask] = amp;
    return st;
}

// cos(t/2)|0bar> + e^{i phi} sin(t/2)|1bar>, expanded over the group orbit.
inline SparseStateVector bloch_state(int k, const BlochAngles& angles) {
    if (k > 3)
        throw ScaleTooLarge("bloch_state: capped at k = 3 for dense partial traces");
    auto group = build_group(k);
    SparseStateVector st{2 * k * k, {}};
    double th = angles.theta_d(), ph = angles.phi_d();
    std::complex<double> other =
        std::complex<double>(std::cos(ph), std::sin(ph)) * std::sin(th / 2) /
        std::sqrt(double(group.size()) - 1.0);
    for (auto g : group)
        st.entries[g.mask] = g.mask == 0 ? std::complex<double>(std::cos(th / 2), 0.0) : other;
    return st;
}

struct ReducedDensity {
    std::vector<int> subset; // sorted link indices of A
    Eigen::MatrixXcd matrix; // 2^{|subset|} square, Hermitian, unit trace

    double purity() const { return matrix.squaredNorm(); } // tr rho^2, rho Hermitian
};

inline ReducedDensity reduced_density(const SparseStateVector& state,
                                      const std::vector<int>& subset_in) {
    std::vector<int> subset = subset_in;
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    if (subset.size() > 12)
        throw SubsetTooLarge("reduced_density: dense matrices capped at 12 sites");
    uint64_t amask = 0;
    for (int l : subset) {
        if (l < 0 || l >= state.num_links)
            throw std::invalid_argument("reduced_density: link index out of range");
        amask |= uint64_t(1) << l;
    }

    auto akey = [&](uint64_t basis) {
        uint64_t key = 0;
        for (size_t i = 0; i < subset.size(); ++i)
            key |= (basis >> subset[i] & 1) << i;
        return key;
    };

    // group support strings by their B-restriction; each bucket contributes a
    // rank-1 block <a|rho|a'> += amp conj(amp')
    std::map<uint64_t, std::vector<std::pair<uint64_t, std::complex<double>>>> buckets;
    for (auto& [basis, amp] : state.entries)
        buckets[basis & ~amask].push_back({akey(basis), amp});

    Eigen::Index dim = Eigen::Index(1) << subset.size();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (auto& [_, bucket] : buckets)
        for (auto& [ai, vi] : bucket)
            for (auto& [aj, vj] : bucket)
                rho(Eigen::Index(ai), Eigen::Index(aj)) += vi * std::conj(vj);
    return ReducedDensity{std::move(subset), std::move(rho)};
}

inline double oracle_purity(int k, const std::vector<int>& subset, const BlochAngles& angles) {
    return reduced_density(bloch_state(k, angles), subset).purity();
}

struct GroundReport {
    double max_star_deviation = 0;      // max_s || A_s psi - psi ||
    double max_plaquette_deviation = 0; // max_p || B_p psi - psi ||
};

inline GroundReport verify_ground(int k) {
    auto psi = ground_state(k);
    GroundReport rep;
    for (auto s : star_masks(k))
        rep.max_star_deviation = std::max(rep.max_star_deviation, distance(apply_x(psi, s), psi));
    for (auto p : plaquette_masks(k))
        rep.max_plaquette_deviation =
            std::max(rep.max_plaquette_deviation, distance(apply_z(psi, p), psi));
    return rep;
}

struct IdentityCheck {
    std::string name;
    double deviation;
    bool pass;
};

struct IdentityReport {
    long group_a_size = 0; // |G_A| = d_A
    long f = 0;            // |G| / d_B
    std::vector<IdentityCheck> checks;
    bool all_pass = true;
    static constexpr double tolerance = 1e-10;

    void add(std::string name, double deviation) {
        bool ok = deviation <= tolerance;
        all_pass = all_pass && ok;
        checks.push_back({std::move(name), deviation, ok});
    }
};

// The reduced toric ground state rho_A^0 = (d_A/f) P_A with P_A a projector of
// trace f/d_A; |phi_A> = sum over the subgroup supported inside A of g_A|0_A>.
// Every identity the derivation leans on, checked densely.
inline IdentityReport verify_reduced_state_identities(int k, const std::vector<int>& subset) {
    TorusLattice lat(k);
    auto comb = subset_combinatorics(lat, subset);
    auto rd = reduced_density(ground_state(k), subset);
    const Eigen::MatrixXcd& rho = rd.matrix;
    const Eigen::Index dim = rho.rows();

    IdentityReport rep;
    rep.group_a_size = 1L << comb.log2_da;
    rep.f = 1L << comb.log2_f;
    const double da_over_f = std::ldexp(1.0, int(comb.log2_da - comb.log2_f));

    uint64_t amask = 0;
    for (int l : rd.subset)
        amask |= uint64_t(1) << l;
    auto akey = [&](uint64_t basis) {
        uint64_t key = 0;
        for (size_t i = 0; i < rd.subset.size(); ++i)
            key |= (basis >> rd.subset[i] & 1) << i;
        return key;
    };

    Eigen::VectorXcd zero_a = Eigen::VectorXcd::Zero(dim);
    zero_a(0) = 1.0;
    Eigen::VectorXcd phi_a = Eigen::VectorXcd::Zero(dim);
    for (auto g : build_group(k))
        if ((g.mask & ~amask) == 0) // g in G_A: acts inside A only
            phi_a(Eigen::Index(akey(g.mask))) += 1.0;

    rep.add("<0_A|0_A> = 1", std::abs(zero_a.squaredNorm() - 1.0));
    rep.add("<phi_A|phi_A> = |G_A|", std::abs(phi_a.squaredNorm() - double(rep.group_a_size)));
    rep.add("<phi_A|0_A> = 1", std::abs(phi_a.dot(zero_a) - std::complex<double>(1.0)));
    rep.add("rho0|0_A> = |phi_A>/f",
            (rho * zero_a - phi_a / double(rep.f)).norm());
    rep.add("rho0^2 = (d_A/f) rho0", (rho * rho - da_over_f * rho).norm());
    rep.add("tr rho0 = 1", std::abs(rho.trace() - std::complex<double>(1.0)));
    rep.add("<0_A|rho0|0_A> = 1/f",
            std::abs(zero_a.dot(rho * zero_a) - std::complex<double>(1.0 / double(rep.f))));
    rep.add("<0_A|rho0|phi_A> = |G_A|/f",
            std::abs(zero_a.dot(rho * phi_a) -
                     std::complex<double>(double(rep.group_a_size) / double(rep.f))));

    Eigen::MatrixXcd proj = rho / da_over_f; // P_A = (f/d_A) rho0
    rep.add("P_A^2 = P_A", (proj * proj - proj).norm());
    rep.add("tr P_A = f/d_A", std::abs(proj.trace() - std::complex<double>(1.0 / da_over_f)));

    // spectrum: f/d_A eigenvalues equal to d_A/f, the rest zero
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    const auto& ev = es.eigenvalues();
    long expected_rank = std::lround(1.0 / da_over_f);
    long rank = 0;
    double spectrum_dev = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > da_over_f / 2) {
            ++rank;
            spectrum_dev = std::max(spectrum_dev, std::abs(ev(i) - da_over_f));
        } else {
            spectrum_dev = std::max(spectrum_dev, std::abs(ev(i)));
        }
    }
    rep.add("rank(rho0) = f/d_A", rank == expected_rank ? 0.0 : 1.0);
    rep.add("nonzero eigenvalues all d_A/f", spectrum_dev);
    return rep;
}

} // namespace tcbloch::oracle
