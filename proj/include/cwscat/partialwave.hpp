//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file cwscat/partialwave.hpp
//! \brief Phase-shift tables and the wavepacket transition probability.
//!
//! Evaluates the probability in its general form (coherent sum over angular
//! momentum and both magnetic indices), its forward form (theta = 0), and a
//! specialized small-angle form whose magnetic sums are expanded into a
//! seven-term azimuthal bracket; plus the time-shift maximization procedure
//! and the classical comparison quantities.
//----------------------------------------------------------------------------//
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "scenario.hpp"
#include "specfun.hpp"

namespace cwscat
{

//! Series truncation controls for the partial-wave sums.
struct TruncationPolicy
{
    //! Half-width of the l-window in units of 1/(2 eps).
    double window_sigmas{6.0};
    //! Magnetic-index cutoff; negative means "auto": max(2, ceil(4 beta/sqrt 2)).
    int m_cut{-1};
    //! Drop terms whose Gaussian l-weight falls below this floor.
    double term_floor{1e-14};

    //! Resolve the automatic m_cut rule for a given beta.
    int resolved_m_cut(double beta) const;

    //! Throw ScenarioError unless window_sigmas >= 4 and m_cut sane.
    void validate() const;
};

//! Inclusive l-window [lo, hi] of the Gaussian wavepacket weight:
//! [0, w/(2 eps)] for beta = 0, else centered on bp = beta/(2 eps).
std::pair<std::int64_t, std::int64_t>
l_window(double beta, double eps, double window_sigmas);

//! Precomputed Coulomb phases sigma_l and time-shift centers xi_l over an
//! l-window at fixed (eta, eps):
//! xi_l = 4 eps eta (ln(2pR) - 1 - d sigma_l / d eta).
struct PhaseShiftTable
{
    double eta{0};
    double eps{0};
    std::int64_t l_lo{0};
    std::int64_t l_hi{0};
    std::vector<double> sigma_l;  //!< indexed by l - l_lo
    std::vector<double> xi_l;  //!< indexed by l - l_lo

    double sigma(std::int64_t l) const
    {
        return sigma_l[static_cast<std::size_t>(l - l_lo)];
    }
    double xi(std::int64_t l) const
    {
        return xi_l[static_cast<std::size_t>(l - l_lo)];
    }
};

//! Build the phase table over the l-window selected by (beta, policy).
PhaseShiftTable build_phase_table(double eta, double eps, double beta,
                                  TruncationPolicy const& policy = {});

//! Build the phase table over an explicit inclusive l-range (used to share
//! one table across many windows, e.g. all quadrature nodes of an average).
PhaseShiftTable build_phase_table_range(double eta, double eps,
                                        std::int64_t l_lo, std::int64_t l_hi);

//! Which d-matrix evaluation feeds the general probability sum.
enum class DSource
{
    exact,  //!< stable recursion, any theta, l <= 5000
    small_angle,  //!< Bessel form, theta <= 0.5, any index pair
    uniform_m0  //!< uniform large-l form, theta <= 0.5, m_f = 0 columns only
};

//! Probability value plus evaluation provenance.
struct ProbabilityResult
{
    double value{0};
    double delta_used{0};
    std::pair<std::int64_t, std::int64_t> l_window{0, 0};
    int m_cut_used{0};
    double truncation_estimate{0};
};

//! Free-wavepacket amplitude in the (l, m) channel:
//! 2 eps sqrt(l+1/2) [(l+|m|)!/(l-|m|)!]^{1/2} lambda^{-|m|}
//!   e^{-eps^2 (lambda - bp)^2} mu_{|m|}(2 eps^2 lambda bp),
//! using the log-space factorial ratio; the scaled Bessel factor switches
//! from mu_exact to mu_asymptotic at argument 50.
double phi_free(std::int64_t l, int m, Scenario const& s);

//! Precomputes per-l complex coefficients of the probability sum at fixed
//! (scenario minus delta), so many delta values can be evaluated cheaply:
//! P(delta) = |sum_l c_l e^{-(delta - xi_l)^2 / 8}|^2.
class ProbabilityEvaluator
{
  public:
    //! General form: full double magnetic sum with the chosen d-source.
    //! A prebuilt shared d-table may be passed for the exact source; it must
    //! cover m_cut and the window's l_hi.
    ProbabilityEvaluator(Scenario const& s, PhaseShiftTable const& table,
                         TruncationPolicy const& policy, DSource d_source,
                         specfun::WignerDTable const* shared = nullptr);

    //! Small-angle bracket form (theta <= 0.5, beta <= 3): the double
    //! magnetic sum expanded into a seven-term azimuthal bracket over
    //! J_0..J_4(l theta). With literal_envelope the channel products use the
    //! common prefactor 4 eps^2 (l+1/2) e^{-2 eps^2 (l-bp)^2} and
    //! mu_n(eps l beta) factors; otherwise exact phi_free products.
    static ProbabilityEvaluator bracket_form(Scenario const& s,
                                             PhaseShiftTable const& table,
                                             TruncationPolicy const& policy,
                                             bool literal_envelope = false);

    //! Probability at a given time-shift coordinate.
    double at_delta(double delta) const;

    //! Probability plus provenance at a given time-shift coordinate.
    ProbabilityResult result_at(double delta) const;

    std::pair<std::int64_t, std::int64_t> window() const
    {
        return {l_lo_, l_hi_};
    }
    int m_cut_used() const { return m_cut_; }

  private:
    ProbabilityEvaluator() = default;

    std::int64_t l_lo_{0};
    std::int64_t l_hi_{0};
    int m_cut_{0};
    double angle_factor_{1.0};  //!< theta/sin(theta) for the bracket forms
    std::vector<std::complex<double>> coeff_;  //!< c_l, indexed l - l_lo
    std::vector<double> xi_;  //!< xi_l, indexed l - l_lo
    double edge_amp_{0};  //!< |c| at the window edges, for tail bounds
    double tail_scale_{0};  //!< geometric tail factor of the l-window
};

//! General probability at s.delta via the coherent double-magnetic sum.
ProbabilityResult probability_general(Scenario const& s,
                                      PhaseShiftTable const& table,
                                      TruncationPolicy const& policy = {},
                                      DSource d_source = DSource::exact,
                                      specfun::WignerDTable const* shared
                                      = nullptr);

//! Small-angle probability (theta <= 0.5, beta <= 3) via the seven-term
//! azimuthal bracket with exact channel-amplitude products.
ProbabilityResult probability_small_angle(Scenario const& s,
                                          PhaseShiftTable const& table,
                                          TruncationPolicy const& policy = {});

//! Same bracket with its literal envelope ingredients: the common prefactor
//! 4 eps^2 (l+1/2) e^{-2 eps^2 (l - bp)^2} and mu_n(eps l beta) factors
//! (mu_asymptotic for argument >= 50, mu_exact below). Documents the
//! accuracy of that shorthand; a few-permille approximation of the exact
//! ingredient products.
ProbabilityResult probability_small_angle_literal(
    Scenario const& s, PhaseShiftTable const& table,
    TruncationPolicy const& policy = {});

//! Forward-direction probability for beta >= 10:
//! |sum_l 4 eps^2 (l+1/2) e^{-2 eps^2 (l-bp)^2} / sqrt(8 pi eps^2 l bp)
//!   e^{i 2 sigma_l} e^{-(delta - xi_l)^2/8}|^2. Throws RegimeError below
//! beta = 10 (use probability_general with theta = 0 there).
ProbabilityResult probability_forward(double eta, double beta, double eps,
                                      double delta = 0.0,
                                      TruncationPolicy const& policy = {});

//! Search controls for the time-shift maximization.
struct DeltaSearch
{
    double lo{-2.0};
    double hi{2.0};
    double coarse_step{0.05};
};

//! Result of the time-shift maximization.
struct DeltaMaxResult
{
    double delta_max{0};
    double p_max{0};
    bool flat{false};  //!< grid max/min < 1 + 1e-12: no usable structure
};

//! Coarse grid scan plus golden-section refinement to |d delta| <= 1e-4;
//! ties broken toward smaller |delta|.
DeltaMaxResult find_delta_max(std::function<double(double)> const& evaluator,
                              DeltaSearch const& search = {});

//! Dimensionless classical comparison value 4 eps^4 eta^2 / sin^4(theta/2);
//! may exceed 1. Throws ScenarioError at theta = 0.
double rutherford_probability(double theta, double eta, double eps);

//! Map a probability to a differential cross section p^2/(16 sigma_p^4) P,
//! in natural units (1/MeV^2 per steradian).
double cross_section_from_probability(double p_value, double p_momentum,
                                      double sigma_p);

//! Exact inverse of cross_section_from_probability.
double probability_from_cross_section(double xsec, double p_momentum,
                                      double sigma_p);

//! Natural-unit area conversions for cross sections.
double mev2_inv_to_angstrom2(double x);
double mev2_inv_to_barn(double x);

//! Angular size of the deviation region: 4 eps |eta|.
double theta_deviation(double eta, double eps);

//! Dense |phi_free|^2 grid over the l-window and |m| <= m_cut.
struct LMDensity
{
    std::int64_t l_lo{0};
    std::int64_t l_hi{0};
    int m_cut{0};
    //! Row-major [l - l_lo][m + m_cut].
    std::vector<double> density;

    double at(std::int64_t l, int m) const
    {
        auto cols = static_cast<std::size_t>(2 * m_cut + 1);
        return density[static_cast<std::size_t>(l - l_lo) * cols
                       + static_cast<std::size_t>(m + m_cut)];
    }
};

//! Channel probability density of the free wavepacket (peaks at l ~= bp, m=0).
LMDensity lm_density(Scenario const& s, TruncationPolicy const& policy = {});

}  // namespace cwscat
