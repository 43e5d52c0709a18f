#pragma once

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "tcbloch/bloch.hpp"
#include "tcbloch/errors.hpp"
#include "tcbloch/gridspec.hpp"
#include "tcbloch/grover.hpp"
#include "tcbloch/lattice.hpp"
#include "tcbloch/oracle.hpp"
#include "tcbloch/purity.hpp"
#include "tcbloch/topo.hpp"

namespace tcbloch::cli {

using ordered_json = nlohmann::ordered_json;

enum class Command { Sweep, Curve, Gamma, Grover, Verify, Classify, MaxDrift };
enum class Format { Csv, Json };

struct RunConfig {
    Command command = Command::Sweep;
    int k = 3;
    int L = 1;
    GridSpec theta_grid{0.0, std::numbers::pi, 33};
    GridSpec phi_grid{0.0, 2 * std::numbers::pi, 33};
    double theta = 0.0; // scalar angle (curve/gamma/verify)
    double phi = 0.0;
    bool theta_at_toric = false;
    std::vector<int> l_values;
    FitMode fit_mode = FitMode::TwoTerm;
    long log2_g = 8; // grover group size exponent
    long long iterations = 0;
    bool optimal = false;
    bool inverse = false;
    bool has_fractional = false;
    double fractional = 0.0;
    std::string subset_spec; // "block:1" | "star:0,0" | "links:h:0,0;v:1,1"
    int bits = 256;
    std::string output; // empty or "-" => stdout
    Format format = Format::Csv;
};

namespace detail {

inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// temp file + rename, so readers never observe a half-written table
inline void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::invalid_argument("cannot open output file: " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw std::invalid_argument("short write to: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::invalid_argument("cannot rename into place: " + path);
}

inline std::vector<int> parse_links(const std::string& list, const TorusLattice& lat) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos < list.size()) {
        size_t next = list.find(';', pos);
        std::string tok = list.substr(pos, next == std::string::npos ? next : next - pos);
        pos = next == std::string::npos ? list.size() : next + 1;
        if (tok.size() < 4 || (tok[0] != 'h' && tok[0] != 'v') || tok[1] != ':')
            throw std::invalid_argument("bad link '" + tok + "', want h:x,y or v:x,y");
        size_t comma = tok.find(',', 2);
        if (comma == std::string::npos)
            throw std::invalid_argument("bad link '" + tok + "', want h:x,y or v:x,y");
        int x = std::stoi(tok.substr(2, comma - 2));
        int y = std::stoi(tok.substr(comma + 1));
        if (x < 0 || x >= lat.k() || y < 0 || y >= lat.k())
            throw std::invalid_argument("link coordinates out of range in '" + tok + "'");
        out.push_back(lat.link_index(tok[0] == 'h' ? LinkDir::H : LinkDir::V, x, y));
    }
    if (out.empty())
        throw std::invalid_argument("empty link list");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<int> parse_subset(const std::string& spec, int k) {
    TorusLattice lat(k);
    if (spec.rfind("block:", 0) == 0) {
        int L = std::stoi(spec.substr(6));
        return enumerate_block_links(k, L).links;
    }
    if (spec.rfind("star:", 0) == 0) {
        size_t comma = spec.find(',', 5);
        if (comma == std::string::npos)
            throw std::invalid_argument("star subset wants star:x,y");
        int x = std::stoi(spec.substr(5, comma - 5));
        int y = std::stoi(spec.substr(comma + 1));
        if (x < 0 || x >= k || y < 0 || y >= k)
            throw std::invalid_argument("star coordinates out of range");
        auto links = lat.star_links(x, y);
        std::vector<int> out(links.begin(), links.end());
        std::sort(out.begin(), out.end());
        return out;
    }
    if (spec.rfind("links:", 0) == 0)
        return parse_links(spec.substr(6), lat);
    throw std::invalid_argument("subset must be block:L, star:x,y or links:<l;l;...>");
}

inline ordered_json json_complex(const std::complex<double>& z) {
    return ordered_json::array({z.real(), z.imag()});
}

inline ordered_json json_mpz(const mpz_class& z) {
    if (z.fits_slong_p())
        return ordered_json(z.get_si());
    return ordered_json(z.get_str());
}

inline BlochAngles resolve_angles(const RunConfig& cfg) {
    if (cfg.theta_at_toric) {
        BlochAngles toric = toric_angles(long(cfg.k) * cfg.k - 1);
        return BlochAngles(toric.theta, Real(cfg.phi, toric.theta.prec()));
    }
    return BlochAngles(cfg.theta, cfg.phi);
}

inline int run_sweep(const RunConfig& cfg) {
    auto rows = sweep(cfg.k, cfg.L, linspace(cfg.theta_grid), linspace(cfg.phi_grid),
                      PrecisionPolicy{cfg.bits});
    std::string text;
    if (cfg.format == Format::Csv) {
        text = "theta,phi,S2\n";
        for (const auto& r : rows)
            text += g17(r.theta) + "," + g17(r.phi) + "," + g17(r.s2) + "\n";
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows)
            arr.push_back({{"theta", r.theta},
                           {"phi", r.phi},
                           {"S2", r.s2},
                           {"log2_purity", r.log2_purity}});
        text = arr.dump(2) + "\n";
    }
    write_text(cfg.output, text);
    return 0;
}

inline int run_curve(const RunConfig& cfg) {
    auto rows =
        sweep(cfg.k, cfg.L, linspace(cfg.theta_grid), {cfg.phi}, PrecisionPolicy{cfg.bits});
    std::string text;
    if (cfg.format == Format::Csv) {
        text = "theta,S2\n";
        for (const auto& r : rows)
            text += g17(r.theta) + "," + g17(r.s2) + "\n";
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows)
            arr.push_back({{"theta", r.theta}, {"S2", r.s2}, {"log2_purity", r.log2_purity}});
        text = arr.dump(2) + "\n";
    }
    write_text(cfg.output, text);
    return 0;
}

inline int run_gamma(const RunConfig& cfg) {
    BlochAngles angles = resolve_angles(cfg);
    FitResult fit = extract_sgamma(cfg.k, angles, cfg.l_values, cfg.fit_mode,
                                   PrecisionPolicy{cfg.bits});
    ordered_json j{{"k", cfg.k},
                   {"theta", angles.theta_d()},
                   {"theta_at", cfg.theta_at_toric ? "toric" : "value"},
                   {"phi", cfg.phi},
                   {"L_values", cfg.l_values},
                   {"alpha", fit.alpha},
                   {"s_gamma", fit.s_gamma},
                   {"residual", fit.residual},
                   {"fit_mode", fit.mode == FitMode::TwoTerm ? "two-term" : "three-term"}};
    write_text(cfg.output, j.dump(2) + "\n");
    return 0;
}

inline int run_grover(const RunConfig& cfg) {
    GroverParams params = GroverParams::for_log2_group(cfg.log2_g);
    ordered_json j{{"log2_g", cfg.log2_g}, {"theta_tilde", params.theta_tilde_d()}};
    if (cfg.optimal) {
        auto oi = optimal_iterations(params);
        j["mode"] = "optimal";
        j["m"] = json_mpz(oi.m_star);
        j["success_prob"] = oi.success_prob;
        j["log2_infidelity"] = oi.log2_infidelity;
    } else if (cfg.inverse) {
        auto ip = inverse_prepare(params);
        j["mode"] = "inverse";
        j["m"] = json_mpz(ip.m);
        j["infidelity"] = ip.infidelity;
        j["log2_infidelity"] = ip.log2_infidelity;
    } else if (cfg.has_fractional) {
        TwoLevelState s = fractional_power(params, cfg.fractional, psi0(params));
        j["mode"] = "fractional";
        j["exponent"] = cfg.fractional;
        j["amp0"] = json_complex(s.amp0);
        j["amp1"] = json_complex(s.amp1);
    } else {
        TwoLevelState s = closed_form_iterate(params, cfg.iterations);
        j["mode"] = "iterate";
        j["m"] = cfg.iterations;
        j["amp0"] = json_complex(s.amp0);
        j["amp1"] = json_complex(s.amp1);
        j["success_prob"] = std::norm(s.amp0);
    }
    write_text(cfg.output, j.dump(2) + "\n");
    return 0;
}

inline int run_verify(const RunConfig& cfg) {
    TorusLattice lat(cfg.k);
    std::vector<int> subset = parse_subset(cfg.subset_spec, cfg.k);
    BlochAngles angles(cfg.theta, cfg.phi);
    PrecisionPolicy policy{cfg.bits};

    auto comb = subset_combinatorics(lat, subset);
    auto id_report = oracle::verify_reduced_state_identities(cfg.k, subset);
    auto ground = oracle::verify_ground(cfg.k);
    double oracle_p = oracle::oracle_purity(cfg.k, subset, angles);
    double general_p = purity_general(comb, angles, policy).purity_d();

    const double tol = 1e-10;
    ordered_json checks = ordered_json::array();
    bool all_pass = true;
    auto add = [&](const std::string& name, double deviation) {
        bool ok = deviation <= tol;
        all_pass = all_pass && ok;
        checks.push_back({{"check_name", name}, {"deviation", deviation}, {"pass", ok}});
    };
    add("ground state stabilized by stars", ground.max_star_deviation);
    add("ground state stabilized by plaquettes", ground.max_plaquette_deviation);
    for (const auto& c : id_report.checks) {
        all_pass = all_pass && c.pass;
        checks.push_back({{"check_name", c.name}, {"deviation", c.deviation}, {"pass", c.pass}});
    }
    add("closed form vs oracle purity", std::abs(general_p - oracle_p));
    ordered_json j{{"k", cfg.k},
                   {"subset", ordered_json::array()},
                   {"theta", cfg.theta},
                   {"phi", cfg.phi},
                   {"log2_g", comb.log2_g},
                   {"log2_dA", comb.log2_da},
                   {"log2_dB", comb.log2_db},
                   {"log2_f", comb.log2_f},
                   {"oracle_purity", oracle_p},
                   {"general_purity", general_p}};
    for (int l : subset)
        j["subset"].push_back(lat.link_at(l).str());
    if (cfg.subset_spec.rfind("block:", 0) == 0) {
        int L = std::stoi(cfg.subset_spec.substr(6));
        double block_p = purity_block(cfg.k, L, angles, policy).purity_d();
        j["block_purity"] = block_p;
        add("block form vs oracle purity", std::abs(block_p - oracle_p));
    }
    j["checks"] = checks;
    j["all_pass"] = all_pass;
    write_text(cfg.output, j.dump(2) + "\n");
    return all_pass ? 0 : 4;
}

inline int run_classify(const RunConfig& cfg) {
    auto thetas = linspace(cfg.theta_grid);
    auto phis = linspace(cfg.phi_grid);
    auto rows = sweep(cfg.k, cfg.L, thetas, phis, PrecisionPolicy{cfg.bits});

    bool have_pole = false, have_positive = false;
    double pole_max = 0.0, min_positive = 0.0;
    for (const auto& r : rows) {
        if (r.theta == 0.0) {
            pole_max = std::max(pole_max, std::abs(r.s2));
            have_pole = true;
        } else {
            min_positive = have_positive ? std::min(min_positive, r.s2) : r.s2;
            have_positive = true;
        }
    }
    bool consistent = (!have_pole || pole_max == 0.0) && (!have_positive || min_positive > 0.0);
    ordered_json j{{"k", cfg.k},
                   {"L", cfg.L},
                   {"theta_points", int(thetas.size())},
                   {"phi_points", int(phis.size())},
                   {"s2_at_pole", have_pole ? ordered_json(pole_max) : ordered_json(nullptr)},
                   {"min_s2_theta_positive",
                    have_positive ? ordered_json(min_positive) : ordered_json(nullptr)},
                   {"surface_class4_consistent", consistent},
                   {"disclaimer", "surface states only; interior (mixed) states are not scanned "
                                  "and their classification is not re-derived here"}};
    write_text(cfg.output, j.dump(2) + "\n");
    return 0;
}

inline int run_maxdrift(const RunConfig& cfg) {
    if (cfg.l_values.empty())
        throw std::invalid_argument("maxdrift needs at least one L value");
    ordered_json results = ordered_json::array();
    bool increasing = true;
    double prev = 0.0;
    for (size_t i = 0; i < cfg.l_values.size(); ++i) {
        EntropyMax em =
            find_entropy_max(cfg.k, cfg.l_values[i], cfg.phi, PrecisionPolicy{cfg.bits});
        results.push_back(
            {{"L", cfg.l_values[i]}, {"theta_max", em.theta_max}, {"s2_max", em.s2_max}});
        if (i > 0 && em.theta_max <= prev)
            increasing = false;
        prev = em.theta_max;
    }
    ordered_json j{{"k", cfg.k},
                   {"phi", cfg.phi},
                   {"results", results},
                   {"theta_max_increasing", increasing}};
    write_text(cfg.output, j.dump(2) + "\n");
    return 0;
}

} // namespace detail

// Exit codes: 0 ok; 2 validation; 3 numerical (precision/realness); 4 oracle
// mismatch in verify.
inline int run(const RunConfig& cfg) {
    try {
        switch (cfg.command) {
        case Command::Sweep:
            return detail::run_sweep(cfg);
        case Command::Curve:
            return detail::run_curve(cfg);
        case Command::Gamma:
            return detail::run_gamma(cfg);
        case Command::Grover:
            return detail::run_grover(cfg);
        case Command::Verify:
            return detail::run_verify(cfg);
        case Command::Classify:
            return detail::run_classify(cfg);
        case Command::MaxDrift:
            return detail::run_maxdrift(cfg);
        }
        std::cerr << "error: unknown command\n";
        return 2;
    } catch (const PrecisionTooLow& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const NonRealResidue& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const BlockTooLarge& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ScaleTooLarge& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const SubsetTooLarge& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const InsufficientPoints& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NotInPlane& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace tcbloch::cli
