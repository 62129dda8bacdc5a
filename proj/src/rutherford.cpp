//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file rutherford.cpp
//----------------------------------------------------------------------------//
#include "cwscat/rutherford.hpp"

#include <cmath>
#include <numbers>

#include "cwscat/errors.hpp"
#include "cwscat/scenario.hpp"

namespace cwscat
{

//----------------------------------------------------------------------------//
double rutherford_cross_section(double theta, int z1, int z2, double energy)
{
    if (!(theta > 0.0) || theta > std::numbers::pi * (1.0 + 1e-12))
    {
        throw ScenarioError(
            "classical cross section requires theta in (0, pi]");
    }
    if (!(energy > 0.0))
    {
        throw ScenarioError("classical cross section requires energy > 0");
    }
    double s = std::sin(0.5 * theta);
    double num = static_cast<double>(z1) * z1 * static_cast<double>(z2) * z2
                 * alpha_fs * alpha_fs;
    return num / (16.0 * energy * energy * s * s * s * s);
}

}  // namespace cwscat
