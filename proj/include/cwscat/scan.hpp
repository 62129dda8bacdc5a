//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file cwscat/scan.hpp
//! \brief Scan runner: config parsing, parameter grids, CSV/SVG emission.
//----------------------------------------------------------------------------//
#pragma once

#include <map>
#include <string>
#include <vector>

#include "averaging.hpp"
#include "partialwave.hpp"

namespace cwscat
{

//! Scan families; each regenerates one reference curve or map.
enum class Command
{
    shadow_zone,  //!< model vs classical probability over theta at fixed beta
    forward_vs_beta,  //!< forward-direction probability over beta
    lm_density,  //!< |phi_free|^2 channel density grid
    beta_phi_profile,  //!< probability over (beta, phi) at fixed theta
    averaged_points,  //!< impact-averaged probability over theta
    physical_map  //!< laboratory-input mapping summary
};

std::string to_string(Command c);
Command command_from_string(std::string const& name);

enum class OutputFormat
{
    csv,
    csv_svg
};

//! Key-value parameter store with provenance tracking.
//!
//! Values arrive from a config file and/or CLI flags; flags override file
//! entries; defaults fill the remainder at resolve time. Unknown keys and
//! duplicate config keys are rejected with line numbers.
class ConfigStore
{
  public:
    //! Register a config-file entry (throws on duplicates/unknown keys).
    void set_from_config(std::string const& key, std::string const& value,
                         int line);
    //! Register a CLI flag value (overrides any config entry).
    void set_from_flag(std::string const& key, std::string const& value);

    bool has(std::string const& key) const;
    std::string const& get(std::string const& key) const;
    //! "config(line N)", "flag", or "default".
    std::string origin(std::string const& key) const;
    //! Record a default applied at resolve time (no-op if key present).
    void note_default(std::string const& key, std::string const& value);

    std::map<std::string, std::string> const& values() const
    {
        return values_;
    }

    //! True iff the key is in the registry of legal keys.
    static bool known_key(std::string const& key);

  private:
    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> origins_;
    std::map<std::string, int> config_lines_;
};

//! Parse a flat key=value config file ('#' comments, blank lines allowed).
//! Throws ScenarioError with line numbers on syntax errors, unknown keys,
//! or duplicate keys.
ConfigStore parse_config(std::string const& path);

//! Fully resolved scan request.
struct ScanSpec
{
    Command command{Command::shadow_zone};

    // Scenario fields (grid axes override the swept one per point).
    double eta{22.8};
    double eps{1e-3};
    double beta{0.0};
    double phi_b{0.0};
    double theta{0.1};
    double delta{0.0};

    // Physical inputs (physical_map).
    int z1{79};
    int z2{2};
    double energy_mev{4.8};
    double mass_mev{3727.379};

    // Grid.
    std::string axis;  //!< swept variable; fixed per command
    double axis_lo{0};
    double axis_hi{0};
    int axis_steps{0};
    int phi_steps{16};  //!< azimuthal rows of beta_phi_profile
    int l_stride{10};  //!< row thinning of lm_density output

    DeltaPolicy delta_policy{};
    DSource d_source{DSource::exact};
    TruncationPolicy trunc{};
    QuadratureSpec quad{};

    std::string out_path;
    OutputFormat format{OutputFormat::csv};
    int threads{0};
};

//! Apply per-command defaults and validate; records applied defaults in the
//! store (for the metadata sidecar). Throws ScenarioError naming the
//! offending field on violations.
ScanSpec resolve_spec(Command command, ConfigStore& store);

//! Scan outcome: the emitted table plus the file paths written.
struct ScanResult
{
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::string csv_path;  //!< empty when nothing was written
    std::string meta_path;
    std::string svg_path;
};

//! Execute a scan: compute all grid rows (worker pool, rows emitted in grid
//! order), write the CSV, metadata sidecar, and optional SVG plot.
//! Pass an empty out_path to compute without writing files.
//! The store, when given, is recorded in the sidecar with provenance.
ScanResult run_scan(ScanSpec const& spec, ConfigStore const* store = nullptr);

//! Serialize one value the way CSV rows are written (17 significant digits).
std::string format_csv_value(double v);

}  // namespace cwscat
