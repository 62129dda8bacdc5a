//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file cwscat/averaging.hpp
//! \brief Impact-parameter-plane averaging of the transition probability.
//!
//! Averages P over the scaled impact-parameter disc beta <= beta_max with
//! the normalization (1/pi) int beta d beta int d phi P, which calibrates
//! the average directly against the classical comparison value.
//----------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <vector>

#include "partialwave.hpp"

namespace cwscat
{

//! How the time-shift coordinate is chosen across the quadrature grid.
enum class DeltaPolicyKind
{
    zero,  //!< delta = 0 everywhere
    maximize_origin,  //!< maximize at (beta=0, phi=0), hold fixed (default)
    maximize_per_point,  //!< maximize at every quadrature node
    fixed  //!< caller-specified value
};

struct DeltaPolicy
{
    DeltaPolicyKind kind{DeltaPolicyKind::maximize_origin};
    double fixed_value{0};
};

//! Which probability kernel the averaging loop evaluates.
enum class AveragingKernel
{
    automatic,  //!< small_angle for theta <= 0.5, general otherwise
    small_angle,
    general
};

//! Impact-plane quadrature controls.
struct QuadratureSpec
{
    double beta_max{3.0};
    int n_beta{32};  //!< Gauss-Legendre nodes on [0, beta_max]
    int n_phi{16};  //!< uniform azimuthal nodes
    DeltaPolicy delta_policy{};

    //! Throw ScenarioError unless n_phi >= 9, n_beta >= 2, and
    //! beta_max <= 1/sqrt(eps).
    void validate(double eps) const;
};

//! Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre_nodes(int n, double a, double b, std::vector<double>& x,
                          std::vector<double>& w);

//! Quadrature core: (1/pi) int_0^beta_max beta d beta int_0^{2pi} d phi f.
//! Exposed for direct verification against closed-form integrands.
double integrate_impact_plane(QuadratureSpec const& quad,
                              std::function<double(double, double)> const& f);

//! Impact-parameter-averaged probability at a scattering angle.
//!
//! delta_used reports the held value under the origin policy (or the fixed /
//! zero value); under maximize_per_point it reports the (beta=0, phi=0)
//! maximizer for reference while each node uses its own maximizer.
ProbabilityResult average_over_impact(double theta, double eta, double eps,
                                      QuadratureSpec const& quad = {},
                                      TruncationPolicy const& policy = {},
                                      AveragingKernel kernel
                                      = AveragingKernel::automatic,
                                      int threads = 0);

//! Right-angle consistency report: the azimuth-averaged beta-profile of the
//! general probability is fitted to A e^{-c beta^2} and compared against the
//! classical value; also runs the quadrature on a closed-form Gaussian
//! integrand as a pure-quadrature self-test.
struct IdentityReport
{
    double a_fit{0};  //!< fitted amplitude A
    double c_fit{0};  //!< fitted decay constant c
    double a_over_ruth{0};  //!< A / classical comparison value
    double delta_used{0};  //!< time shift held during the profile
    bool pass_amplitude{false};  //!< a_over_ruth in [0.95, 1.05]
    bool pass_exponent{false};  //!< c_fit in [0.95, 1.05]
    std::vector<double> betas;  //!< profile abscissae
    std::vector<double> profile;  //!< azimuth-averaged probabilities
    double quadrature_check_rel{0};  //!< |quad - closed form| / closed form
};

IdentityReport averaging_identity_check(double eta, double eps,
                                        int threads = 0);

}  // namespace cwscat
