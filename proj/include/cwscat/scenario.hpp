//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file cwscat/scenario.hpp
//! \brief Dimensionless parameter set and the physical-input mapping.
//----------------------------------------------------------------------------//
#pragma once

#include <string>

namespace cwscat
{

//! hbar*c in MeV*fm, used for all natural-unit/length conversions.
inline constexpr double hbar_c_mev_fm = 197.3269804;
//! Fine-structure constant.
inline constexpr double alpha_fs = 7.2973525693e-3;
//! 1 fm expressed in Angstrom.
inline constexpr double fm_to_angstrom = 1e-5;

//! Dimensionless parameter tuple that fully determines one probability.
struct Scenario
{
    double eta{0};  //!< interaction strength (includes the charge product)
    double eps{0};  //!< momentum resolution sigma_p / p, in (0, 0.1]
    double beta{0};  //!< impact parameter in units of sigma_x, >= 0
    double phi_b{0};  //!< azimuth of the impact-parameter vector, radians
    double theta{0};  //!< scattering angle, radians in [0, pi]
    double delta{0};  //!< dimensionless time-shift coordinate

    //! Derived classical angular-momentum center beta / (2 eps).
    double bp() const { return beta / (2.0 * eps); }
};

//! Throw ScenarioError if any Scenario invariant is violated
//! (eps in (0, 0.1], beta >= 0, beta <= 1/sqrt(eps), theta in [0, pi]).
void validate(Scenario const& s);

//! Laboratory inputs determining a Scenario and the derived lengths.
struct PhysicalParams
{
    int z1{0};  //!< target atomic number
    int z2{0};  //!< projectile atomic number
    double kinetic_energy{0};  //!< MeV
    double projectile_mass{0};  //!< MeV
    double eps{0};  //!< momentum resolution sigma_p / p

    //! True when kinetic_energy / projectile_mass < 0.01.
    bool nonrelativistic() const
    {
        return kinetic_energy < 0.01 * projectile_mass;
    }
};

//! Scenario plus the dimensionful quantities derived from physical inputs.
struct PhysicalMap
{
    Scenario scenario;
    double p_momentum{0};  //!< MeV
    double sigma_x{0};  //!< Angstrom
    double big_r{0};  //!< optimal starting separation R = sigma_x/sqrt(eps), Angstrom
};

//! Map laboratory inputs to the dimensionless scenario and derived lengths.
//!
//! p = sqrt(2 m0 E) (nonrelativistic); eta = Z1 Z2 alpha m0 / p;
//! sigma_x = 1/(2 eps p) converted to Angstrom; R = sigma_x / sqrt(eps).
//! Throws RegimeError for relativistic inputs (E/m0 >= 0.01) and
//! ScenarioError for non-positive fields.
PhysicalMap scenario_from_physical(PhysicalParams const& p);

//! ln(2 p R) expressed through the resolution alone: -(3/2) ln(eps).
double ln_2pR(Scenario const& s);

//! Time-shift coordinate of an interaction time T (natural MeV units):
//! delta = (p T / m0 - 2 R) / sigma_x, lengths taken from the physical map.
double delta_of_time(double t_interaction, PhysicalMap const& map,
                     PhysicalParams const& params);

//! Human-readable classification used in output metadata:
//! "time delay" (delta > 0), "advancement" (delta < 0), "centered" (0).
std::string time_shift_label(double delta);

}  // namespace cwscat
