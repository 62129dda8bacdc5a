//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file cwscat/rutherford.hpp
//! \brief Classical reference formulas for comparison curves.
//----------------------------------------------------------------------------//
#pragma once

namespace cwscat
{

//! One comparison sample of the model against the classical value.
struct ComparisonPoint
{
    double theta{0};
    double p_model{0};
    double p_ruth{0};
    double ratio{0};  //!< p_model / p_ruth where p_ruth > 0
};

//! Classical differential cross section
//! Z1^2 Z2^2 alpha^2 / (16 E^2 sin^4(theta/2)) in natural units
//! (1/MeV^2 per steradian); E is the incident kinetic energy in MeV.
//! Throws ScenarioError at theta = 0 or non-positive energy.
double rutherford_cross_section(double theta, int z1, int z2, double energy);

}  // namespace cwscat
