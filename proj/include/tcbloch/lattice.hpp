#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcbloch/errors.hpp"

namespace tcbloch {

enum class LinkDir : int { H = 0, V = 1 };

struct LinkId {
    LinkDir dir;
    int x;
    int y;

    std::string str() const {
        return (dir == LinkDir::H ? "h:" : "v:") + std::to_string(x) + "," + std::to_string(y);
    }
    friend bool operator==(const LinkId&, const LinkId&) = default;
};

// k x k square lattice on a torus, qubits on the 2k^2 links.
//
// Link ordering is row-major by vertex, horizontal before vertical:
// index(h(x,y)) = 2(yk+x), index(v(x,y)) = 2(yk+x)+1. Star s(x,y) touches
// h(x,y), h(x-1,y), v(x,y), v(x,y-1) (coordinates mod k).
class TorusLattice {
  public:
    explicit TorusLattice(int k) : k_(k) {
        if (k < 2)
            throw std::invalid_argument("TorusLattice: k must be >= 2 "
                                        "(k=1 links touch the same star twice)");
    }

    int k() const { return k_; }
    int num_links() const { return 2 * k_ * k_; }
    int num_stars() const { return k_ * k_; }

    int link_index(LinkDir d, int x, int y) const {
        int xm = mod(x), ym = mod(y);
        return 2 * (ym * k_ + xm) + static_cast<int>(d);
    }

    LinkId link_at(int index) const {
        if (index < 0 || index >= num_links())
            throw std::invalid_argument("link index out of range");
        int v = index / 2;
        return LinkId{index % 2 == 0 ? LinkDir::H : LinkDir::V, v % k_, v / k_};
    }

    // The four links incident to vertex (x,y).
    std::array<int, 4> star_links(int x, int y) const {
        return {link_index(LinkDir::H, x, y), link_index(LinkDir::H, x - 1, y),
                link_index(LinkDir::V, x, y), link_index(LinkDir::V, x, y - 1)};
    }

    std::vector<uint64_t> star_mask_words(int x, int y) const {
        std::vector<uint64_t> w((num_links() + 63) / 64, 0);
        for (int l : star_links(x, y))
            w[l / 64] ^= uint64_t(1) << (l % 64);
        return w;
    }

  private:
    int mod(int a) const {
        int r = a % k_;
        return r < 0 ? r + k_ : r;
    }
    int k_;
};

struct SigmaCounts {
    int sigma_a = 0;  // stars acting only inside A
    int sigma_b = 0;  // stars acting only inside B
    int sigma_ab = 0; // boundary stars
    friend bool operator==(const SigmaCounts&, const SigmaCounts&) = default;
};

struct BlockRegion {
    int side = 0;
    std::vector<int> links; // sorted link indices
};

// Everything the closed-form purity needs, as base-2 exponents:
// |G| = 2^log2_g, d_A = 2^log2_da, d_B = 2^log2_db, f = |G|/d_B = 2^log2_f.
struct RegionCombinatorics {
    long log2_g = 0;
    long log2_da = 0;
    long log2_db = 0;
    long log2_f = 0;
    friend bool operator==(const RegionCombinatorics&, const RegionCombinatorics&) = default;
};

// Sigma counts for an L x L block: (L^2, k^2-L^2-4L, 4L). The block owns every
// link incident to one of its vertices, so its boundary is the ring of 4L stars
// just outside; that geometry needs k >= L+2 (no wrap-around) and a non-negative
// remainder of bulk-B stars.
inline SigmaCounts block_sigma(int k, int L) {
    if (k < 1 || L < 1)
        throw std::invalid_argument("block_sigma: k and L must be positive");
    if (k < L + 2 || k * k - L * L - 4 * L < 0)
        throw BlockTooLarge("block_sigma: need k >= L+2 and k^2-L^2-4L >= 0 (k=" +
                            std::to_string(k) + ", L=" + std::to_string(L) + ")");
    return SigmaCounts{L * L, k * k - L * L - 4 * L, 4 * L};
}

inline BlockRegion enumerate_block_links(int k, int L) {
    block_sigma(k, L); // validate
    TorusLattice lat(k);
    std::vector<int> links;
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x)
            for (int l : lat.star_links(x, y))
                links.push_back(l);
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
    return BlockRegion{L, std::move(links)};
}

namespace detail {

inline std::vector<uint64_t> subset_words(const TorusLattice& lat, const std::vector<int>& subset) {
    std::vector<uint64_t> w((lat.num_links() + 63) / 64, 0);
    for (int l : subset) {
        if (l < 0 || l >= lat.num_links())
            throw std::invalid_argument("subset link index out of range");
        w[l / 64] |= uint64_t(1) << (l % 64);
    }
    return w;
}

inline int gf2_rank(std::vector<std::vector<uint64_t>> rows) {
    std::vector<std::vector<uint64_t>> pivots;
    std::vector<size_t> pivot_bit;
    for (auto& row : rows) {
        for (size_t p = 0; p < pivots.size(); ++p) {
            size_t b = pivot_bit[p];
            if (row[b / 64] >> (b % 64) & 1)
                for (size_t w = 0; w < row.size(); ++w)
                    row[w] ^= pivots[p][w];
        }
        size_t bit = row.size() * 64;
        for (size_t w = 0; w < row.size() && bit == row.size() * 64; ++w)
            if (row[w])
                bit = w * 64 + static_cast<size_t>(__builtin_ctzll(row[w]));
        if (bit != row.size() * 64) {
            pivots.push_back(row);
            pivot_bit.push_back(bit);
        }
    }
    return static_cast<int>(pivots.size());
}

} // namespace detail

// Classify each star by how its four links fall across the cut.
inline SigmaCounts classify_stars(const TorusLattice& lat, const std::vector<int>& subset) {
    auto words = detail::subset_words(lat, subset);
    SigmaCounts out;
    for (int y = 0; y < lat.k(); ++y)
        for (int x = 0; x < lat.k(); ++x) {
            int inside = 0;
            for (int l : lat.star_links(x, y))
                inside += static_cast<int>(words[l / 64] >> (l % 64) & 1);
            if (inside == 4)
                ++out.sigma_a;
            else if (inside == 0)
                ++out.sigma_b;
            else
                ++out.sigma_ab;
        }
    return out;
}

inline RegionCombinatorics combinatorics(const SigmaCounts& s) {
    long ns = long(s.sigma_a) + s.sigma_b + s.sigma_ab;
    return RegionCombinatorics{ns - 1, s.sigma_a, s.sigma_b, long(s.sigma_ab) - 1 + s.sigma_a};
}

// Subgroup exponents for an arbitrary link subset A, by GF(2) rank of the star
// generators restricted to the complement: the elements acting trivially on B
// form the null space of that restriction, and d_A = 2^{dim null}. The group is
// spanned by all stars but the last (the product of all stars is the identity).
inline RegionCombinatorics subset_combinatorics(const TorusLattice& lat,
                                                const std::vector<int>& subset) {
    auto amask = detail::subset_words(lat, subset);
    size_t nw = amask.size();
    std::vector<std::vector<uint64_t>> in_a, in_b;
    int ns = lat.num_stars();
    int built = 0;
    for (int y = 0; y < lat.k() && built < ns - 1; ++y)
        for (int x = 0; x < lat.k() && built < ns - 1; ++x, ++built) {
            auto star = lat.star_mask_words(x, y);
            std::vector<uint64_t> ra(nw), rb(nw);
            for (size_t w = 0; w < nw; ++w) {
                ra[w] = star[w] & amask[w];
                rb[w] = star[w] & ~amask[w];
            }
            in_a.push_back(std::move(ra));
            in_b.push_back(std::move(rb));
        }
    long g = ns - 1;
    long da = g - detail::gf2_rank(std::move(in_b));
    long db = g - detail::gf2_rank(std::move(in_a));
    return RegionCombinatorics{g, da, db, g - db};
}

} // namespace tcbloch
