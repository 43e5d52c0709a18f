// Acceptance gate: one line per criterion, exit code = number of failures.
// Everything here goes through the public headers only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tcbloch/bloch.hpp"
#include "tcbloch/gridspec.hpp"
#include "tcbloch/grover.hpp"
#include "tcbloch/lattice.hpp"
#include "tcbloch/oracle.hpp"
#include "tcbloch/purity.hpp"
#include "tcbloch/topo.hpp"

using namespace tcbloch;

namespace {

const double pi = std::numbers::pi;
int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail, double seconds) {
    std::printf("%s  %2d  %-28s %s  (%.1fs)\n", ok ? "PASS" : "FAIL", id, name,
                detail.c_str(), seconds);
    if (!ok)
        ++failures;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// fixed pseudo-random link subsets, deterministic across runs
std::vector<std::vector<int>> sample_subsets(int k, const std::vector<int>& sizes,
                                             unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<std::vector<int>> out;
    for (int size : sizes) {
        std::set<int> picked;
        std::uniform_int_distribution<int> dist(0, 2 * k * k - 1);
        while (int(picked.size()) < size)
            picked.insert(dist(rng));
        out.emplace_back(picked.begin(), picked.end());
    }
    return out;
}

void criterion_1() {
    Timer t;
    auto block = enumerate_block_links(3, 1);
    double max_dev = 0;
    for (double th : linspace({0.0, pi, 9}))
        for (double ph : linspace({0.0, 2 * pi, 8})) {
            BlochAngles angles(th, ph);
            double closed = purity_block(3, 1, angles).purity_d();
            double brute = oracle::oracle_purity(3, block.links, angles);
            max_dev = std::max(max_dev, std::abs(closed - brute));
        }
    report(1, "oracle equivalence (blocks)", max_dev <= 1e-10,
           fmt("max |closed - oracle| = %.2e", max_dev), t.elapsed());
}

void criterion_2() {
    Timer t;
    std::vector<std::pair<double, double>> angles = {
        {0.4, 0.0}, {pi / 3, pi / 5}, {1.3, 2.0}, {2.2, 4.4}, {3.0, 5.9}};
    double max_dev = 0;
    auto check = [&](int k, const std::vector<int>& subset) {
        TorusLattice lat(k);
        auto comb = subset_combinatorics(lat, subset);
        for (auto [th, ph] : angles) {
            BlochAngles a(th, ph);
            double closed = purity_general(comb, a).purity_d();
            double brute = oracle::oracle_purity(k, subset, a);
            max_dev = std::max(max_dev, std::abs(closed - brute));
        }
    };
    auto star = TorusLattice(2).star_links(0, 0);
    check(2, {star.begin(), star.end()});
    for (auto& s : sample_subsets(2, {3, 4, 5, 6, 6}, 20260814u))
        check(2, s);
    check(3, enumerate_block_links(3, 1).links);
    for (auto& s : sample_subsets(3, {5, 7, 8}, 20260815u))
        check(3, s);
    report(2, "oracle equivalence (subsets)", max_dev <= 1e-10,
           fmt("max |closed - oracle| = %.2e", max_dev), t.elapsed());
}

void criterion_3() {
    Timer t;
    double small = purity_block(3, 1, toric_angles(8)).s2_d();
    double big = purity_block(20, 10, toric_angles(399), PrecisionPolicy{256}).s2_d();
    bool ok = std::abs(small - 3.0) <= 1e-12 && std::abs(big - 39.0) <= 1e-9;
    report(3, "toric-point exactness", ok,
           fmt("|S2 - 3| = %.2e", std::abs(small - 3.0)) +
               fmt(", |S2 - 39| = %.2e", std::abs(big - 39.0)),
           t.elapsed());
}

void criterion_4() {
    Timer t;
    FitResult fit = extract_sgamma(12, toric_angles(143), {1, 2, 3}, FitMode::TwoTerm);
    bool ok = std::abs(fit.alpha - 4.0) <= 1e-6 && std::abs(fit.s_gamma + 1.0) <= 1e-6 &&
              fit.residual <= 1e-9;
    report(4, "topological contribution", ok,
           fmt("alpha = %.9f", fit.alpha) + fmt(", S_gamma = %.9f", fit.s_gamma) +
               fmt(", residual = %.1e", fit.residual),
           t.elapsed());
}

void criterion_5() {
    Timer t;
    BlochAngles toric = toric_angles(15); // k = 4
    double theta0 = toric.theta_d();
    std::vector<int> ls = {1, 2};

    double at_toric = extract_sgamma(4, toric, ls, FitMode::TwoTerm).s_gamma;
    bool ok = std::abs(at_toric + 1.0) <= 1e-6;

    double min_far = 1e9, max_jump = 0, prev = 0;
    for (int j = 1; j <= 314; ++j) {
        double th = 0.01 * j;
        double sg = extract_sgamma(4, BlochAngles(th, 0.0), ls, FitMode::TwoTerm).s_gamma;
        if (std::abs(th - theta0) >= 0.05)
            min_far = std::min(min_far, std::abs(sg + 1.0));
        if (j > 1)
            max_jump = std::max(max_jump, std::abs(sg - prev));
        prev = sg;
    }
    ok = ok && min_far > 1e-6 && max_jump < 0.1;
    report(5, "S_gamma departs off-toric", ok,
           fmt("|S_gamma(theta0)+1| = %.1e", std::abs(at_toric + 1.0)) +
               fmt(", min far-zone |S_gamma+1| = %.1e", min_far) +
               fmt(", max step = %.3f", max_jump),
           t.elapsed());
}

void criterion_6() {
    Timer t;
    Perturbation p(1e-20);
    PrecisionPolicy policy{256};
    Real exact = purity_block(30, 6, epsilon_to_theta(p), policy).renyi2;
    PerturbedEntropy closed = perturbed_entropy(6, p, policy);
    double dev = std::abs((exact - closed.value).to_double());
    report(6, "near-pole perturbation law", dev <= 1e-12 && !closed.condition_violated,
           fmt("|S2 - (4L-1 + 2 sqrt(eps)/ln 2)| = %.2e", dev), t.elapsed());
}

void criterion_7() {
    Timer t;
    double worst_large = 0;
    for (double th : {pi / 4, pi / 2, 3 * pi / 4})
        worst_large = std::max(worst_large, phi_variation(20, 10, th, PrecisionPolicy{256}));
    double small_k = phi_variation(4, 1, pi / 2);
    report(7, "phi dependence scaling", worst_large <= 1e-9 && small_k > 1e-12,
           fmt("max variation at k=20: %.1e", worst_large) +
               fmt(", at k=4: %.1e", small_k),
           t.elapsed());
}

void criterion_8() {
    Timer t;
    EntropyMax m2 = find_entropy_max(20, 2, 0.0);
    EntropyMax m4 = find_entropy_max(20, 4, 0.0);
    report(8, "maximum drifts with L", m4.theta_max > m2.theta_max,
           fmt("theta_max(L=2) = %.9f", m2.theta_max) +
               fmt(", theta_max(L=4) = %.9f", m4.theta_max),
           t.elapsed());
}

void criterion_9() {
    Timer t;
    bool ok = true;
    std::string note;

    GroverParams p4 = GroverParams::for_log2_group(2);
    double hit = std::norm(closed_form_iterate(p4, 1).amp0);
    ok = ok && std::abs(hit - 1.0) <= 1e-12;
    note += fmt("|P(m=1) - 1| = %.1e", std::abs(hit - 1.0));

    GroverParams p256 = GroverParams::for_log2_group(8);
    TwoLevelState s = psi0(p256);
    double max_dev = 0;
    for (long long m = 0; m <= 100; ++m) {
        TwoLevelState c = closed_form_iterate(p256, m);
        max_dev = std::max(max_dev, std::abs(c.amp0 - s.amp0));
        max_dev = std::max(max_dev, std::abs(c.amp1 - s.amp1));
        s = apply_kernel(s, p256, 1);
    }
    ok = ok && max_dev <= 1e-12;
    note += fmt(", closed vs iterated = %.1e", max_dev);

    OptimalIterations opt = optimal_iterations(p256);
    ok = ok && opt.m_star == 12 && opt.success_prob >= 0.9999;
    note += fmt(", m* = %.0f", opt.m_star.get_d());
    note += fmt(", P = %.6f", opt.success_prob);

    double worst_ratio = 0;
    for (long g : {2L, 3L, 8L, 15L}) {
        InversePreparation ip = inverse_prepare(GroverParams::for_log2_group(g));
        worst_ratio = std::max(worst_ratio, ip.infidelity * std::ldexp(1.0, int(g)));
        ok = ok && ip.infidelity <= std::ldexp(1.0, -int(g));
    }
    note += fmt(", worst infidelity*|G| = %.3f", worst_ratio);
    report(9, "grover kernel dynamics", ok, note, t.elapsed());
}

void criterion_10() {
    Timer t;
    auto rows = sweep(20, 10, linspace({0.0, pi, 64}), linspace({0.0, 2 * pi, 16}),
                      PrecisionPolicy{256});
    bool pole_exact = true, positive = true;
    double min_pos = 1e300;
    for (const auto& r : rows) {
        if (r.theta == 0.0)
            pole_exact = pole_exact && r.s2 == 0.0;
        else {
            positive = positive && r.s2 > 0.0;
            min_pos = std::min(min_pos, r.s2);
        }
    }
    report(10, "single separable point", pole_exact && positive,
           fmt("min S2 off the pole = %.2e", min_pos) +
               (pole_exact ? ", S2(0) = 0 exactly" : ", pole not exact"),
           t.elapsed());
}

void criterion_11() {
    Timer t;
    auto star = TorusLattice(2).star_links(0, 0);
    oracle::IdentityReport a =
        oracle::verify_reduced_state_identities(2, {star.begin(), star.end()});
    oracle::IdentityReport b =
        oracle::verify_reduced_state_identities(3, enumerate_block_links(3, 1).links);
    double worst = 0;
    for (const auto& r : {a, b})
        for (const auto& c : r.checks)
            worst = std::max(worst, c.deviation);
    report(11, "reduced-state identity suite", a.all_pass && b.all_pass,
           fmt("worst deviation = %.2e", worst) +
               fmt(" over %.0f checks", double(a.checks.size() + b.checks.size())),
           t.elapsed());
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("%d/11 criteria passed\n", 11 - failures);
    return failures;
}
