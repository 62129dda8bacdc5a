//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file specfun.cpp
//----------------------------------------------------------------------------//
#include "cwscat/specfun.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>

#include "cwscat/errors.hpp"

namespace cwscat::specfun
{
namespace
{

constexpr double half_log_two_pi = 0.91893853320467274178032973640562;

//! Stirling tail coefficients B_{2k} / (2k (2k-1)) for log-gamma.
constexpr double lgamma_tail[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
};

//! Asymptotic tail coefficients B_{2k} / (2k) for digamma.
constexpr double digamma_tail[] = {
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
};

//! Minimum real part at which the asymptotic tails are applied directly.
constexpr double asymptotic_edge = 15.0;

std::complex<double> digamma_complex(std::complex<double> z)
{
    std::complex<double> shift{0.0, 0.0};
    while (z.real() < asymptotic_edge)
    {
        shift += 1.0 / z;
        z += 1.0;
    }
    std::complex<double> inv = 1.0 / z;
    std::complex<double> inv2 = inv * inv;
    std::complex<double> sum{0.0, 0.0};
    std::complex<double> power = inv2;
    for (double c : digamma_tail)
    {
        sum += c * power;
        power *= inv2;
    }
    return std::log(z) - 0.5 * inv - sum - shift;
}

double parity_sign(int k)
{
    return (k % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

//----------------------------------------------------------------------------//
void WignerIndex::validate() const
{
    if (l < 0 || std::abs(m1) > l || std::abs(m2) > l)
    {
        throw RegimeError("wigner index out of range: |m| must not exceed l");
    }
}

//----------------------------------------------------------------------------//
LambdaPhi lambda_phi(std::int64_t l, int m)
{
    LambdaPhi lp;
    double lh = static_cast<double>(l) + 0.5;
    lp.lambda = std::sqrt(lh * lh - static_cast<double>(m) * m / 3.0
                          + 1.0 / 12.0);
    lp.phi_sign = (m >= 0 && m % 2 != 0) ? -1 : 1;
    return lp;
}

//----------------------------------------------------------------------------//
std::complex<double> log_gamma_complex(std::complex<double> z)
{
    if (!(z.real() > 0.0))
    {
        throw RegimeError("log_gamma_complex requires Re z > 0");
    }
    std::complex<double> shift{0.0, 0.0};
    while (z.real() < asymptotic_edge)
    {
        shift += std::log(z);
        z += 1.0;
    }
    std::complex<double> inv = 1.0 / z;
    std::complex<double> inv2 = inv * inv;
    std::complex<double> tail{0.0, 0.0};
    std::complex<double> power = inv;
    for (double c : lgamma_tail)
    {
        tail += c * power;
        power *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + half_log_two_pi + tail - shift;
}

//----------------------------------------------------------------------------//
double coulomb_phase(std::int64_t l, double eta)
{
    if (l < 0)
    {
        throw RegimeError("coulomb_phase requires l >= 0");
    }
    return log_gamma_complex({static_cast<double>(l) + 1.0, eta}).imag();
}

//----------------------------------------------------------------------------//
double coulomb_phase_deriv(std::int64_t l, double eta)
{
    if (l < 0)
    {
        throw RegimeError("coulomb_phase_deriv requires l >= 0");
    }
    return digamma_complex({static_cast<double>(l) + 1.0, eta}).real();
}

//----------------------------------------------------------------------------//
double bessel_j(int n, double x)
{
    if (n < 0 || x < 0.0)
    {
        throw RegimeError("bessel_j requires n >= 0 and x >= 0");
    }
    return std::cyl_bessel_j(static_cast<double>(n), x);
}

//----------------------------------------------------------------------------//
void bessel_j_multi(double x, int n_max, double* out)
{
    if (n_max < 0 || x < 0.0)
    {
        throw RegimeError("bessel_j_multi requires n_max >= 0 and x >= 0");
    }
    if (x == 0.0)
    {
        out[0] = 1.0;
        for (int n = 1; n <= n_max; ++n)
        {
            out[n] = 0.0;
        }
        return;
    }
    if (n_max >= 2 && x >= 10.0 && x >= 2.0 * n_max)
    {
        // Upward recurrence is stable while the order stays well below x.
        out[0] = std::cyl_bessel_j(0.0, x);
        out[1] = std::cyl_bessel_j(1.0, x);
        for (int n = 1; n < n_max; ++n)
        {
            out[n + 1] = (2.0 * n / x) * out[n] - out[n - 1];
        }
        return;
    }
    for (int n = 0; n <= n_max; ++n)
    {
        out[n] = std::cyl_bessel_j(static_cast<double>(n), x);
    }
}

//----------------------------------------------------------------------------//
double mu_exact(int m, double z)
{
    if (m < 0 || z < 0.0)
    {
        throw RegimeError("mu_exact requires m >= 0 and z >= 0");
    }
    if (z == 0.0)
    {
        return m == 0 ? 1.0 : 0.0;
    }
    if (z < 30.0)
    {
        // Ascending series of I_m, all terms positive, scaled by e^{-z}.
        double log_t0 = m * std::log(0.5 * z) - std::lgamma(m + 1.0) - z;
        double term = std::exp(log_t0);
        double sum = term;
        double q = 0.25 * z * z;
        for (int k = 1; k <= 1000; ++k)
        {
            term *= q / (static_cast<double>(k) * (k + m));
            sum += term;
            if (term < sum * 1e-18)
            {
                break;
            }
        }
        return sum;
    }

    // Normalized downward ratio recursion. t_n = I_n/I_{n-1} from the
    // three-term recurrence, seeded far enough above both m and the width
    // sqrt(z) that the seed error and the normalization tail are below
    // double precision: e^{-(M^2 - m^2)/z} with (M^2 - m^2)/z >= 83.
    double md = static_cast<double>(m);
    auto top = static_cast<int>(std::ceil(std::sqrt(md * md + 83.0 * z))) + 20;
    std::vector<double> t(static_cast<std::size_t>(top) + 1, 0.0);
    double t_up = 0.0;
    for (int n = top; n >= 1; --n)
    {
        t_up = 1.0 / (2.0 * n / z + t_up);
        t[static_cast<std::size_t>(n)] = t_up;
    }
    // Normalization: sum_{k=-inf}^{inf} I_k(z) = e^z, so
    // mu_0 (1 + 2 sum_{k>=1} prod_{j<=k} t_j) = 1.
    double norm = 1.0;
    double prod = 1.0;
    for (int k = 1; k <= top; ++k)
    {
        prod *= t[static_cast<std::size_t>(k)];
        norm += 2.0 * prod;
        if (prod < 1e-20)
        {
            break;
        }
    }
    double mu = 1.0 / norm;
    for (int j = 1; j <= m && j <= top; ++j)
    {
        mu *= t[static_cast<std::size_t>(j)];
    }
    return m <= top ? mu : 0.0;
}

//----------------------------------------------------------------------------//
double mu_asymptotic(int m, double z)
{
    if (m < 0 || !(z > 0.0))
    {
        throw RegimeError("mu_asymptotic requires m >= 0 and z > 0");
    }
    double md = static_cast<double>(m);
    return std::exp(-(md * md - 0.25) / (2.0 * z))
           / std::sqrt(2.0 * std::numbers::pi * z);
}

//----------------------------------------------------------------------------//
double wigner_d_m0_uniform(std::int64_t l, int m, double theta)
{
    if (std::abs(m) > l)
    {
        throw RegimeError("wigner_d_m0_uniform requires |m| <= l");
    }
    int am = std::abs(m);
    LambdaPhi lp = lambda_phi(l, m);
    double log_fac = 0.5
                     * (std::lgamma(static_cast<double>(l) + am + 1.0)
                        - std::lgamma(static_cast<double>(l) - am + 1.0));
    double angle = theta == 0.0 ? 1.0 : std::sqrt(theta / std::sin(theta));
    double amp = std::exp(log_fac - am * std::log(lp.lambda));
    return lp.phi_sign * amp * bessel_j(am, lp.lambda * theta) * angle;
}

//----------------------------------------------------------------------------//
double wigner_d_small_angle(std::int64_t l, int m_i, int m_f, double theta)
{
    if (std::abs(m_i) > l || std::abs(m_f) > l)
    {
        throw RegimeError("wigner_d_small_angle requires |m| <= l");
    }
    if (!(theta > 0.0) || theta > 0.5)
    {
        throw RegimeError("wigner_d_small_angle requires 0 < theta <= 0.5");
    }
    int dm = m_i - m_f;
    double sign = dm >= 0 ? parity_sign(dm) : 1.0;
    return sign * std::sqrt(theta / std::sin(theta))
           * bessel_j(std::abs(dm), static_cast<double>(l) * theta);
}

//----------------------------------------------------------------------------//
std::vector<double>
wigner_d_column(int m1, int m2, double theta, std::int64_t l_max)
{
    if (l_max < 0)
    {
        throw RegimeError("wigner_d_column requires l_max >= 0");
    }
    if (l_max > 5000)
    {
        throw RegimeError(
            "wigner_d_column: l_max exceeds the stability-tested range 5000");
    }
    std::vector<double> col(static_cast<std::size_t>(l_max) + 1, 0.0);

    // Map to canonical indices (a, b) with a = max(|m1|,|m2|) >= |b|, a >= 0,
    // tracking the sign of the row-swap and index-negation symmetries. Both
    // symmetry steps carry the same parity factor (-1)^(m1-m2).
    double sign = 1.0;
    int a = m1;
    int b = m2;
    if (std::abs(a) < std::abs(b))
    {
        std::swap(a, b);
        sign *= parity_sign(m1 - m2);
    }
    if (a < 0)
    {
        a = -a;
        b = -b;
        sign *= parity_sign(a - b);
    }
    std::int64_t j0 = a;
    if (j0 > l_max)
    {
        return col;
    }

    if (theta == 0.0)
    {
        if (m1 == m2)
        {
            for (std::int64_t l = j0; l <= l_max; ++l)
            {
                col[static_cast<std::size_t>(l)] = 1.0;
            }
        }
        return col;
    }

    double ct = std::cos(theta);
    double st2 = std::sin(0.5 * theta);
    double ct2 = std::cos(0.5 * theta);

    // Seed at the lowest l carrying this index pair: for a = j0 the element
    // has the closed binomial form; j0 = 0 seeds the scalar 1.
    double cur;
    if (j0 == 0)
    {
        cur = 1.0;
    }
    else
    {
        double lb = 0.5
                    * (std::lgamma(2.0 * j0 + 1.0)
                       - std::lgamma(static_cast<double>(j0) - b + 1.0)
                       - std::lgamma(static_cast<double>(j0) + b + 1.0));
        cur = parity_sign(static_cast<int>(j0) - b)
              * std::exp(lb + (static_cast<double>(j0) + b) * std::log(ct2)
                         + (static_cast<double>(j0) - b) * std::log(st2));
    }
    col[static_cast<std::size_t>(j0)] = sign * cur;

    double prev = 0.0;
    double ab = static_cast<double>(a) * b;
    double a2 = static_cast<double>(a) * a;
    double b2 = static_cast<double>(b) * b;
    for (std::int64_t j = j0; j < l_max; ++j)
    {
        double jj = static_cast<double>(j);
        double nxt;
        if (j == 0)
        {
            // The three-term coefficient vanishes at j = 0; the first step
            // is the closed form d^1_{00} = cos(theta).
            nxt = ct;
        }
        else
        {
            double c_prev = (jj + 1.0)
                            * std::sqrt(std::max(
                                (jj * jj - a2) * (jj * jj - b2), 0.0));
            double c_cur = (2.0 * jj + 1.0) * (jj * (jj + 1.0) * ct - ab);
            double c_nxt = jj
                           * std::sqrt(((jj + 1.0) * (jj + 1.0) - a2)
                                       * ((jj + 1.0) * (jj + 1.0) - b2));
            nxt = (c_cur * cur - c_prev * prev) / c_nxt;
        }
        col[static_cast<std::size_t>(j) + 1] = sign * nxt;
        prev = cur;
        cur = nxt;
    }
    return col;
}

//----------------------------------------------------------------------------//
double wigner_d_exact(std::int64_t l, int m1, int m2, double theta)
{
    WignerIndex{l, m1, m2}.validate();
    auto col = wigner_d_column(m1, m2, theta, l);
    return col[static_cast<std::size_t>(l)];
}

//----------------------------------------------------------------------------//
WignerDTable::WignerDTable(double theta, int m_cut, std::int64_t l_max)
    : theta_(theta), m_cut_(m_cut), l_max_(l_max)
{
    if (m_cut < 0)
    {
        throw RegimeError("WignerDTable requires m_cut >= 0");
    }
    auto span = static_cast<std::size_t>(2 * m_cut + 1);
    columns_.resize(span * span);
    for (int m1 = -m_cut; m1 <= m_cut; ++m1)
    {
        for (int m2 = -m_cut; m2 <= m_cut; ++m2)
        {
            columns_[column_index(m1, m2)]
                = wigner_d_column(m1, m2, theta, l_max);
        }
    }
}

std::size_t WignerDTable::column_index(int m1, int m2) const
{
    auto span = static_cast<std::size_t>(2 * m_cut_ + 1);
    return static_cast<std::size_t>(m1 + m_cut_) * span
           + static_cast<std::size_t>(m2 + m_cut_);
}

}  // namespace cwscat::specfun
