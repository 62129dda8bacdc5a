//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file scenario.cpp
//----------------------------------------------------------------------------//
#include "cwscat/scenario.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cwscat/errors.hpp"

namespace cwscat
{

//----------------------------------------------------------------------------//
void validate(Scenario const& s)
{
    if (!(s.eps > 0.0) || s.eps > 0.1)
    {
        std::ostringstream os;
        os << "scenario: eps = " << s.eps << " outside (0, 0.1]";
        throw ScenarioError(os.str());
    }
    if (!(s.beta >= 0.0))
    {
        std::ostringstream os;
        os << "scenario: beta = " << s.beta << " must be >= 0";
        throw ScenarioError(os.str());
    }
    double beta_bound = 1.0 / std::sqrt(s.eps);
    if (s.beta > beta_bound * (1.0 + 1e-12))
    {
        std::ostringstream os;
        os << "scenario: beta = " << s.beta
           << " exceeds the wavepacket-coherence bound 1/sqrt(eps) = "
           << beta_bound;
        throw ScenarioError(os.str());
    }
    if (!(s.theta >= 0.0) || s.theta > std::numbers::pi * (1.0 + 1e-12))
    {
        std::ostringstream os;
        os << "scenario: theta = " << s.theta << " outside [0, pi]";
        throw ScenarioError(os.str());
    }
}

//----------------------------------------------------------------------------//
PhysicalMap scenario_from_physical(PhysicalParams const& p)
{
    if (p.z1 == 0 || p.z2 == 0)
    {
        throw ScenarioError("physical map: both charge numbers must be nonzero");
    }
    if (!(p.kinetic_energy > 0.0) || !(p.projectile_mass > 0.0))
    {
        throw ScenarioError(
            "physical map: kinetic energy and mass must be positive");
    }
    if (!(p.eps > 0.0) || p.eps > 0.1)
    {
        std::ostringstream os;
        os << "physical map: eps = " << p.eps << " outside (0, 0.1]";
        throw ScenarioError(os.str());
    }
    if (!p.nonrelativistic())
    {
        std::ostringstream os;
        os << "physical map: kinetic energy / mass = "
           << p.kinetic_energy / p.projectile_mass
           << " >= 0.01; the p = sqrt(2 m0 E) mapping is nonrelativistic";
        throw RegimeError(os.str());
    }

    PhysicalMap map;
    map.p_momentum = std::sqrt(2.0 * p.projectile_mass * p.kinetic_energy);
    double eta = static_cast<double>(p.z1) * p.z2 * alpha_fs
                 * p.projectile_mass / map.p_momentum;
    double sigma_x_natural = 1.0 / (2.0 * p.eps * map.p_momentum);  // 1/MeV
    map.sigma_x = sigma_x_natural * hbar_c_mev_fm * fm_to_angstrom;
    map.big_r = map.sigma_x / std::sqrt(p.eps);
    map.scenario = Scenario{eta, p.eps, 0.0, 0.0, 0.0, 0.0};
    return map;
}

//----------------------------------------------------------------------------//
double ln_2pR(Scenario const& s)
{
    if (!(s.eps > 0.0))
    {
        throw ScenarioError("ln_2pR requires eps > 0");
    }
    return -1.5 * std::log(s.eps);
}

//----------------------------------------------------------------------------//
double delta_of_time(double t_interaction, PhysicalMap const& map,
                     PhysicalParams const& params)
{
    // Work in natural units throughout: v T has dimension 1/MeV, as do
    // sigma_x and R before length conversion.
    double sigma_x_natural = 1.0 / (2.0 * params.eps * map.p_momentum);
    double big_r_natural = sigma_x_natural / std::sqrt(params.eps);
    double travel = map.p_momentum * t_interaction / params.projectile_mass;
    return (travel - 2.0 * big_r_natural) / sigma_x_natural;
}

//----------------------------------------------------------------------------//
std::string time_shift_label(double delta)
{
    if (delta > 0.0)
    {
        return "time delay";
    }
    if (delta < 0.0)
    {
        return "advancement";
    }
    return "centered";
}

}  // namespace cwscat
