//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file cwscat_main.cpp
//! \brief Command-line runner for the scattering-probability scans.
//----------------------------------------------------------------------------//
#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cwscat/errors.hpp"
#include "cwscat/scan.hpp"
#include "cwscat/version.hpp"

namespace
{

//! Keys shared by every subcommand, with their CLI spellings and help text.
struct KeyFlag
{
    char const* key;
    char const* flag;
    char const* help;
};

constexpr KeyFlag key_flags[] = {
    {"eta", "--eta", "interaction strength (default 22.8)"},
    {"eps", "--eps", "momentum resolution sigma_p/p in (0, 0.1]"},
    {"beta", "--beta", "impact parameter in units of sigma_x"},
    {"phi_b", "--phi-b", "azimuth of the impact-parameter vector [rad]"},
    {"theta", "--theta", "scattering angle [rad]"},
    {"delta", "--delta", "time-shift coordinate"},
    {"z1", "--z1", "target atomic number (physical_map)"},
    {"z2", "--z2", "projectile atomic number (physical_map)"},
    {"energy_mev", "--energy", "kinetic energy [MeV] (physical_map)"},
    {"mass_mev", "--mass", "projectile mass [MeV] (physical_map)"},
    {"axis", "--axis", "sweep variable (fixed per command)"},
    {"axis_lo", "--axis-lo", "sweep lower bound"},
    {"axis_hi", "--axis-hi", "sweep upper bound"},
    {"axis_steps", "--axis-steps", "sweep point count (>= 2)"},
    {"phi_steps", "--phi-steps", "azimuthal rows of beta_phi_profile"},
    {"l_stride", "--l-stride", "row thinning of lm_density"},
    {"delta_policy", "--delta-policy",
     "zero | maximize_origin | maximize_per_point | fixed[:<value>]"},
    {"d_source", "--d-source", "exact | small_angle | uniform_m0"},
    {"window_sigmas", "--window-sigmas", "l-window half-width (>= 4)"},
    {"m_cut", "--m-cut", "magnetic cutoff; -1 = automatic"},
    {"term_floor", "--term-floor", "drop terms below this Gaussian weight"},
    {"beta_max", "--beta-max", "impact-plane quadrature radius"},
    {"n_beta", "--n-beta", "radial quadrature nodes (>= 2)"},
    {"n_phi", "--n-phi", "azimuthal quadrature nodes (>= 9)"},
    {"out", "--out", "output CSV path ('' = no files)"},
    {"format", "--format", "csv | csv+svg"},
    {"threads", "--threads", "worker threads (0 = all cores)"},
};

struct SubState
{
    CLI::App* app{nullptr};
    std::string config_path;
    std::map<std::string, std::string> flag_values;
};

void print_physical_map(cwscat::ScanResult const& res)
{
    if (res.rows.empty())
    {
        return;
    }
    auto const& r = res.rows.front();
    std::printf("eta               = %.10g\n", r[0]);
    std::printf("p momentum [MeV]  = %.10g\n", r[1]);
    std::printf("sigma_x [Angstrom] = %.10g\n", r[2]);
    std::printf("R [Angstrom]      = %.10g\n", r[3]);
    std::printf("deviation angle   = %.10g rad\n", r[4]);
    std::printf("unity-ratio angle = %.10g rad\n", r[5]);
    std::printf("delta(T=0)        = %.10g\n", r[6]);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{
        "Coulomb wavepacket scattering probabilities: partial-wave scans "
        "over angle, impact parameter, and time shift"};
    app.set_version_flag("--version", std::string(cwscat::version_string));
    app.require_subcommand(1);

    std::vector<cwscat::Command> const commands{
        cwscat::Command::shadow_zone,     cwscat::Command::forward_vs_beta,
        cwscat::Command::lm_density,      cwscat::Command::beta_phi_profile,
        cwscat::Command::averaged_points, cwscat::Command::physical_map,
    };
    char const* descriptions[] = {
        "model vs classical probability over theta at fixed beta",
        "forward-direction probability over beta (>= 10)",
        "|phi_free|^2 channel density over (l, m)",
        "probability over the (beta, phi) impact plane at fixed theta",
        "impact-averaged probability and classical ratio over theta",
        "map laboratory inputs to the dimensionless parameters",
    };

    std::map<std::string, SubState> subs;
    for (std::size_t i = 0; i < commands.size(); ++i)
    {
        std::string name = cwscat::to_string(commands[i]);
        auto& state = subs[name];
        state.app = app.add_subcommand(name, descriptions[i]);
        state.app->add_option("--config", state.config_path,
                              "key=value parameter file (flags override)");
        for (auto const& kf : key_flags)
        {
            state.app->add_option(kf.flag, state.flag_values[kf.key],
                                  kf.help);
        }
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int code = app.exit(e);
        // Help/version requests exit 0; anything else is a usage error.
        return code == 0 ? 0 : 1;
    }

    try
    {
        for (auto const& [name, state] : subs)
        {
            if (!state.app->parsed())
            {
                continue;
            }
            cwscat::Command command = cwscat::command_from_string(name);
            cwscat::ConfigStore store;
            if (state.app->count("--config") > 0)
            {
                store = cwscat::parse_config(state.config_path);
            }
            for (auto const& kf : key_flags)
            {
                if (state.app->count(kf.flag) > 0)
                {
                    store.set_from_flag(kf.key,
                                        state.flag_values.at(kf.key));
                }
            }
            cwscat::ScanSpec spec = cwscat::resolve_spec(command, store);
            cwscat::ScanResult res = cwscat::run_scan(spec, &store);
            if (command == cwscat::Command::physical_map)
            {
                print_physical_map(res);
            }
            if (!res.csv_path.empty())
            {
                std::printf("wrote %s (%zu rows)\n", res.csv_path.c_str(),
                            res.rows.size());
                std::printf("wrote %s\n", res.meta_path.c_str());
                if (!res.svg_path.empty())
                {
                    std::printf("wrote %s\n", res.svg_path.c_str());
                }
            }
        }
        return 0;
    }
    catch (cwscat::ScenarioError const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (cwscat::RegimeError const& e)
    {
        std::cerr << "regime error: " << e.what() << "\n";
        return 2;
    }
    catch (std::exception const& e)
    {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    }
}
