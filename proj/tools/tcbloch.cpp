#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "tcbloch/cli.hpp"
#include "tcbloch/gridspec.hpp"

using tcbloch::parse_angle;
using tcbloch::parse_grid;
namespace cli = tcbloch::cli;

int main(int argc, char** argv) {
    CLI::App app{"exact 2-Renyi entropy and Grover dynamics on the toric-code Bloch sphere"};
    app.require_subcommand(1);

    cli::RunConfig cfg;
    std::string format_str = "csv", fit_str = "two";
    std::vector<std::string> l_list;

    auto add_common = [&](CLI::App* sub, bool with_format) {
        sub->add_option("--bits", cfg.bits, "working precision in bits (>= 64)")
            ->envname("TCBLOCH_BITS")
            ->capture_default_str();
        sub->add_option("-o,--output", cfg.output, "output file ('-' or empty for stdout)");
        if (with_format)
            sub->add_option("--format", format_str, "output format")
                ->check(CLI::IsMember({"csv", "json"}))
                ->capture_default_str();
    };

    // each subcommand keeps its own angle strings: defaults differ and only the
    // parsed subcommand's values may reach the conversion step below
    std::string sw_theta = "0:pi:33", sw_phi = "0:2pi:33";
    auto* sweep = app.add_subcommand("sweep", "S2 over a (theta, phi) grid, CSV theta,phi,S2");
    sweep->add_option("--k", cfg.k, "lattice size")->capture_default_str();
    sweep->add_option("--L", cfg.L, "block side")->capture_default_str();
    sweep->add_option("--theta", sw_theta, "grid start:stop:steps, e.g. 0:pi:64")
        ->capture_default_str();
    sweep->add_option("--phi", sw_phi, "grid start:stop:steps, e.g. 0:2pi:64")
        ->capture_default_str();
    add_common(sweep, true);

    std::string cv_theta = "0:pi:257", cv_phi = "0";
    auto* curve = app.add_subcommand("curve", "S2 over a theta grid at fixed phi, CSV theta,S2");
    curve->add_option("--k", cfg.k, "lattice size")->capture_default_str();
    curve->add_option("--L", cfg.L, "block side")->capture_default_str();
    curve->add_option("--theta", cv_theta, "grid start:stop:steps")->capture_default_str();
    curve->add_option("--phi", cv_phi, "fixed angle (accepts pi expressions)")
        ->capture_default_str();
    add_common(curve, true);

    std::string gm_theta, gm_phi = "0", theta_at;
    auto* gamma = app.add_subcommand("gamma", "area-law fit S2(L) = alpha*L + S_gamma, JSON");
    gamma->add_option("--k", cfg.k, "lattice size")->capture_default_str();
    gamma->add_option("--L", l_list, "comma-separated block sides, e.g. 1,2,3")
        ->delimiter(',')
        ->required();
    gamma->add_option("--theta", gm_theta, "polar angle (accepts pi expressions)");
    gamma->add_option("--theta-at", theta_at, "'toric' pins theta to the toric-code point");
    gamma->add_option("--phi", gm_phi, "azimuthal angle")->capture_default_str();
    gamma->add_option("--fit", fit_str, "two (alpha*L + c) or three (adds 1/L)")
        ->check(CLI::IsMember({"two", "three"}))
        ->capture_default_str();
    add_common(gamma, false);

    auto* grover = app.add_subcommand("grover", "Grover kernel runs on the two-level subspace");
    grover->add_option("--log2-g", cfg.log2_g, "log2 of the search-space size |G|")
        ->capture_default_str();
    auto* it_opt = grover->add_option("--iterations", cfg.iterations, "apply K^m to |Psi0>");
    auto* opt_opt = grover->add_flag("--optimal", cfg.optimal, "report the optimal m and success");
    auto* inv_opt =
        grover->add_flag("--inverse", cfg.inverse, "prepare |Psi0> from |0bar> with K^{-1}");
    auto* frac_opt =
        grover->add_option("--fractional", cfg.fractional, "apply K^e for real e to |Psi0>");
    add_common(grover, false);

    std::string vf_theta = "0", vf_phi = "0";
    auto* verify = app.add_subcommand("verify",
                                      "brute-force oracle vs closed forms on a small lattice");
    verify->add_option("--k", cfg.k, "lattice size (2..4; state vector is 4^(k*k))")
        ->capture_default_str();
    verify->add_option("--subset", cfg.subset_spec, "block:L | star:x,y | links:h:0,0;v:1,1")
        ->required();
    verify->add_option("--theta", vf_theta, "polar angle")->capture_default_str();
    verify->add_option("--phi", vf_phi, "azimuthal angle")->capture_default_str();
    add_common(verify, false);

    std::string cl_theta = "0:pi:64", cl_phi = "0:2pi:16";
    auto* classify = app.add_subcommand(
        "classify", "surface scan for the one-separable-state (class 4) structure");
    classify->add_option("--k", cfg.k, "lattice size")->capture_default_str();
    classify->add_option("--L", cfg.L, "block side")->capture_default_str();
    classify->add_option("--theta", cl_theta, "grid start:stop:steps")->capture_default_str();
    classify->add_option("--phi", cl_phi, "grid start:stop:steps")->capture_default_str();
    add_common(classify, false);

    std::string md_phi = "0";
    auto* maxdrift =
        app.add_subcommand("maxdrift", "locate the S2 maximum over theta for each L");
    maxdrift->add_option("--k", cfg.k, "lattice size")->capture_default_str();
    maxdrift->add_option("--L", l_list, "comma-separated block sides")
        ->delimiter(',')
        ->required();
    maxdrift->add_option("--phi", md_phi, "azimuthal angle")->capture_default_str();
    add_common(maxdrift, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cfg.format = format_str == "json" ? cli::Format::Json : cli::Format::Csv;
        cfg.fit_mode = fit_str == "three" ? tcbloch::FitMode::ThreeTerm
                                          : tcbloch::FitMode::TwoTerm;
        for (const auto& s : l_list)
            cfg.l_values.push_back(std::stoi(s));

        if (*sweep) {
            cfg.command = cli::Command::Sweep;
            cfg.theta_grid = parse_grid(sw_theta);
            cfg.phi_grid = parse_grid(sw_phi);
        } else if (*curve) {
            cfg.command = cli::Command::Curve;
            cfg.theta_grid = parse_grid(cv_theta);
            cfg.phi = parse_angle(cv_phi);
        } else if (*gamma) {
            cfg.command = cli::Command::Gamma;
            cfg.phi = parse_angle(gm_phi);
            bool theta_given = gamma->count("--theta") > 0;
            bool at_given = gamma->count("--theta-at") > 0;
            if (at_given && theta_at != "toric")
                throw std::invalid_argument("--theta-at only understands 'toric'");
            if (at_given && theta_given)
                throw std::invalid_argument("--theta and --theta-at are mutually exclusive");
            cfg.theta_at_toric = !theta_given; // default: toric point
            if (theta_given)
                cfg.theta = parse_angle(gm_theta);
        } else if (*grover) {
            cfg.command = cli::Command::Grover;
            cfg.has_fractional = frac_opt->count() > 0;
            int modes = int(it_opt->count() > 0) + int(opt_opt->count() > 0) +
                        int(inv_opt->count() > 0) + int(cfg.has_fractional);
            if (modes > 1)
                throw std::invalid_argument(
                    "--iterations, --optimal, --inverse and --fractional are mutually exclusive");
        } else if (*verify) {
            cfg.command = cli::Command::Verify;
            cfg.theta = parse_angle(vf_theta);
            cfg.phi = parse_angle(vf_phi);
        } else if (*classify) {
            cfg.command = cli::Command::Classify;
            cfg.theta_grid = parse_grid(cl_theta);
            cfg.phi_grid = parse_grid(cl_phi);
        } else if (*maxdrift) {
            cfg.command = cli::Command::MaxDrift;
            cfg.phi = parse_angle(md_phi);
        }
    } catch (const std::exception& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    }

    return cli::run(cfg);
}
