//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file cwscat/specfun.hpp
//! \brief Special functions underpinning the probability formulas.
//!
//! Complex log-gamma and digamma (Coulomb phases and their eta-derivative),
//! Bessel J, the exponentially scaled modified Bessel mu_m(z) = e^{-z} I_m(z),
//! and Wigner rotation matrix elements: an exact stable recursion plus the
//! two approximations used inside the long partial-wave sums (a uniform
//! large-l form for the m->0 column and a small-angle Bessel form for
//! general index pairs).
//----------------------------------------------------------------------------//
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace cwscat::specfun
{

//! Index triple for a Wigner rotation matrix element d^l_{m1,m2}.
struct WignerIndex
{
    std::int64_t l{0};
    int m1{0};
    int m2{0};

    //! Throw RegimeError unless l >= 0, |m1| <= l, and |m2| <= l.
    void validate() const;
};

//! Effective Bessel-argument scale and sign factor of the uniform d-matrix
//! approximation: lambda = sqrt((l+1/2)^2 - m^2/3 + 1/12), and
//! phi_sign = (-1)^m for m >= 0, +1 for m < 0.
struct LambdaPhi
{
    double lambda{0};
    int phi_sign{1};
};

//! Compute the (lambda, sign) pair for an (l, m) channel.
LambdaPhi lambda_phi(std::int64_t l, int m);

//! Principal-branch log-gamma for Re z > 0 (relative accuracy ~1e-13).
std::complex<double> log_gamma_complex(std::complex<double> z);

//! Coulomb phase shift: sigma_l(eta) = Im ln Gamma(l+1 + i eta).
double coulomb_phase(std::int64_t l, double eta);

//! d sigma_l / d eta = Re psi(l+1 + i eta), psi the digamma function.
double coulomb_phase_deriv(std::int64_t l, double eta);

//! Bessel function of the first kind, integer order n >= 0, x >= 0.
double bessel_j(int n, double x);

//! Fill out[0..n_max] with J_0(x) .. J_{n_max}(x).
//!
//! Uses upward recurrence from J_0, J_1 where stable (x well above n_max)
//! and direct evaluation otherwise; accuracy matches bessel_j.
void bessel_j_multi(double x, int n_max, double* out);

//! Exponentially scaled modified Bessel mu_m(z) = e^{-z} I_m(z), in [0, 1].
//!
//! Ascending series for z < 30; normalized downward (Miller-type) ratio
//! recursion for z >= 30. Relative accuracy ~1e-12 for z <= 1e5, m <= 64.
double mu_exact(int m, double z);

//! Large-z approximation mu_m(z) ~= e^{-(m^2 - 1/4)/(2z)} / sqrt(2 pi z),
//! uniform in m; intended regime z >= 50.
double mu_asymptotic(int m, double z);

//! Uniform large-l approximation of d^l_{m,0}(theta) for theta <= 0.5:
//! phi_sign * [(l+|m|)!/(l-|m|)!]^{1/2} * lambda^{-|m|} * J_{|m|}(lambda theta)
//! * sqrt(theta/sin theta), with the factorial ratio computed in log space.
double wigner_d_m0_uniform(std::int64_t l, int m, double theta);

//! Small-angle approximation of d^l_{m_i,m_f}(theta) for 0 < theta <= 0.5:
//! (-1)^{m_i-m_f} sqrt(theta/sin theta) J_{m_i-m_f}(l theta) for m_i >= m_f,
//! extended to m_i < m_f by the row-swap symmetry (sign-free).
double wigner_d_small_angle(std::int64_t l, int m_i, int m_f, double theta);

//! Exact d^l_{m1,m2}(theta) by stable three-term recursion in l,
//! seeded at l = max(|m1|,|m2|). Stability-tested range l <= 5000.
double wigner_d_exact(std::int64_t l, int m1, int m2, double theta);

//! Column of exact values d^l_{m1,m2}(theta) for l = 0..l_max
//! (zero below the seed l = max(|m1|,|m2|)).
std::vector<double> wigner_d_column(int m1, int m2, double theta, std::int64_t l_max);

//! Dense table of exact d^l_{m1,m2}(theta) for all |m1|,|m2| <= m_cut and
//! l = 0..l_max, built once per angle and shared read-only across threads.
class WignerDTable
{
  public:
    WignerDTable(double theta, int m_cut, std::int64_t l_max);

    double operator()(std::int64_t l, int m1, int m2) const
    {
        return columns_[column_index(m1, m2)][static_cast<std::size_t>(l)];
    }

    //! Contiguous column over l for a fixed index pair.
    std::vector<double> const& column(int m1, int m2) const
    {
        return columns_[column_index(m1, m2)];
    }

    double theta() const { return theta_; }
    int m_cut() const { return m_cut_; }
    std::int64_t l_max() const { return l_max_; }

  private:
    std::size_t column_index(int m1, int m2) const;

    double theta_;
    int m_cut_;
    std::int64_t l_max_;
    std::vector<std::vector<double>> columns_;
};

}  // namespace cwscat::specfun
