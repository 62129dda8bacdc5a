//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file averaging.cpp
//----------------------------------------------------------------------------//
#include "cwscat/averaging.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "cwscat/errors.hpp"
#include "cwscat/parallel.hpp"

namespace cwscat
{
namespace
{

//! Evaluator factory over the two averaging kernels.
ProbabilityEvaluator make_node_evaluator(Scenario const& s,
                                         PhaseShiftTable const& table,
                                         TruncationPolicy const& policy,
                                         AveragingKernel kernel,
                                         specfun::WignerDTable const* shared)
{
    if (kernel == AveragingKernel::small_angle)
    {
        return ProbabilityEvaluator::bracket_form(s, table, policy);
    }
    return ProbabilityEvaluator(s, table, policy, DSource::exact, shared);
}

}  // namespace

//----------------------------------------------------------------------------//
void QuadratureSpec::validate(double eps) const
{
    if (!(eps > 0.0))
    {
        throw ScenarioError("quadrature: eps must be positive");
    }
    if (n_beta < 2)
    {
        throw ScenarioError("quadrature: n_beta must be >= 2");
    }
    if (n_phi < 9)
    {
        std::ostringstream os;
        os << "quadrature: n_phi = " << n_phi
           << " must be >= 9 (the integrand carries azimuthal harmonics "
              "through order 8)";
        throw ScenarioError(os.str());
    }
    if (!(beta_max > 0.0))
    {
        throw ScenarioError("quadrature: beta_max must be positive");
    }
    double bound = 1.0 / std::sqrt(eps);
    if (beta_max > bound * (1.0 + 1e-12))
    {
        std::ostringstream os;
        os << "quadrature: beta_max = " << beta_max
           << " exceeds the wavepacket-coherence bound 1/sqrt(eps) = "
           << bound;
        throw ScenarioError(os.str());
    }
}

//----------------------------------------------------------------------------//
void gauss_legendre_nodes(int n, double a, double b, std::vector<double>& x,
                          std::vector<double>& w)
{
    if (n < 1)
    {
        throw ScenarioError("gauss_legendre_nodes requires n >= 1");
    }
    x.assign(static_cast<std::size_t>(n), 0.0);
    w.assign(static_cast<std::size_t>(n), 0.0);
    int m = (n + 1) / 2;
    double xm = 0.5 * (b + a);
    double xl = 0.5 * (b - a);
    for (int i = 1; i <= m; ++i)
    {
        // Chebyshev estimate of the i-th root, polished by Newton.
        double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j)
            {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15)
            {
                break;
            }
        }
        x[static_cast<std::size_t>(i - 1)] = xm - xl * z;
        x[static_cast<std::size_t>(n - i)] = xm + xl * z;
        double wi = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        w[static_cast<std::size_t>(i - 1)] = wi;
        w[static_cast<std::size_t>(n - i)] = wi;
    }
}

//----------------------------------------------------------------------------//
double integrate_impact_plane(QuadratureSpec const& quad,
                              std::function<double(double, double)> const& f)
{
    if (quad.n_beta < 1 || quad.n_phi < 1 || !(quad.beta_max > 0.0))
    {
        throw ScenarioError(
            "impact-plane quadrature requires positive node counts and "
            "beta_max");
    }
    std::vector<double> bx;
    std::vector<double> bw;
    gauss_legendre_nodes(quad.n_beta, 0.0, quad.beta_max, bx, bw);
    double dphi = 2.0 * std::numbers::pi / quad.n_phi;
    double total = 0.0;
    for (int i = 0; i < quad.n_beta; ++i)
    {
        double ring = 0.0;
        for (int j = 0; j < quad.n_phi; ++j)
        {
            ring += f(bx[static_cast<std::size_t>(i)], j * dphi);
        }
        total += bw[static_cast<std::size_t>(i)]
                 * bx[static_cast<std::size_t>(i)] * ring * dphi;
    }
    return total / std::numbers::pi;
}

//----------------------------------------------------------------------------//
ProbabilityResult average_over_impact(double theta, double eta, double eps,
                                      QuadratureSpec const& quad,
                                      TruncationPolicy const& policy,
                                      AveragingKernel kernel, int threads)
{
    quad.validate(eps);
    policy.validate();
    if (!(theta > 0.0) || theta > std::numbers::pi * (1.0 + 1e-12))
    {
        throw ScenarioError(
            "impact-plane average requires theta in (0, pi]");
    }

    AveragingKernel resolved = kernel;
    if (resolved == AveragingKernel::automatic)
    {
        resolved = theta <= 0.5 ? AveragingKernel::small_angle
                                : AveragingKernel::general;
    }
    if (resolved == AveragingKernel::small_angle)
    {
        if (theta > 0.5)
        {
            throw RegimeError(
                "small-angle averaging kernel requires theta <= 0.5");
        }
        if (quad.beta_max > 3.0 * (1.0 + 1e-12))
        {
            throw RegimeError(
                "small-angle averaging kernel requires beta_max <= 3");
        }
    }

    std::vector<double> bx;
    std::vector<double> bw;
    gauss_legendre_nodes(quad.n_beta, 0.0, quad.beta_max, bx, bw);

    // Master l-range: union of every node window plus the origin window.
    auto [lo_m, hi_m] = l_window(0.0, eps, policy.window_sigmas);
    int mc_max = policy.resolved_m_cut(0.0);
    for (double b : bx)
    {
        auto [lo, hi] = l_window(b, eps, policy.window_sigmas);
        lo_m = std::min(lo_m, lo);
        hi_m = std::max(hi_m, hi);
        mc_max = std::max(mc_max, policy.resolved_m_cut(b));
    }
    PhaseShiftTable table = build_phase_table_range(eta, eps, lo_m, hi_m);

    std::unique_ptr<specfun::WignerDTable> dtab;
    if (resolved == AveragingKernel::general)
    {
        dtab = std::make_unique<specfun::WignerDTable>(theta, mc_max, hi_m);
    }

    // Hold value of the time-shift coordinate.
    double delta_hold = 0.0;
    if (quad.delta_policy.kind == DeltaPolicyKind::fixed)
    {
        delta_hold = quad.delta_policy.fixed_value;
    }
    else if (quad.delta_policy.kind == DeltaPolicyKind::maximize_origin
             || quad.delta_policy.kind == DeltaPolicyKind::maximize_per_point)
    {
        Scenario origin{eta, eps, 0.0, 0.0, theta, 0.0};
        auto ev = make_node_evaluator(origin, table, policy, resolved,
                                      dtab.get());
        delta_hold = find_delta_max([&](double d) { return ev.at_delta(d); })
                         .delta_max;
    }
    bool per_point
        = quad.delta_policy.kind == DeltaPolicyKind::maximize_per_point;

    auto n_nodes = static_cast<std::size_t>(quad.n_beta)
                   * static_cast<std::size_t>(quad.n_phi);
    std::vector<double> node_p(n_nodes, 0.0);
    std::vector<double> node_trunc(n_nodes, 0.0);
    double dphi = 2.0 * std::numbers::pi / quad.n_phi;

    parallel_for(quad.n_beta, threads, [&](std::int64_t i) {
        double beta = bx[static_cast<std::size_t>(i)];
        for (int j = 0; j < quad.n_phi; ++j)
        {
            Scenario s{eta, eps, beta, j * dphi, theta, 0.0};
            auto ev = make_node_evaluator(s, table, policy, resolved,
                                          dtab.get());
            double delta = delta_hold;
            if (per_point)
            {
                delta = find_delta_max([&](double d) { return ev.at_delta(d); })
                            .delta_max;
            }
            auto r = ev.result_at(delta);
            auto slot = static_cast<std::size_t>(i) * quad.n_phi
                        + static_cast<std::size_t>(j);
            node_p[slot] = r.value;
            node_trunc[slot] = r.truncation_estimate;
        }
    });

    // Sequential reduction in fixed node order keeps the result independent
    // of the thread count.
    double total = 0.0;
    double trunc = 0.0;
    for (int i = 0; i < quad.n_beta; ++i)
    {
        double ring_p = 0.0;
        double ring_t = 0.0;
        for (int j = 0; j < quad.n_phi; ++j)
        {
            auto slot = static_cast<std::size_t>(i) * quad.n_phi
                        + static_cast<std::size_t>(j);
            ring_p += node_p[slot];
            ring_t += node_trunc[slot];
        }
        double scale = bw[static_cast<std::size_t>(i)]
                       * bx[static_cast<std::size_t>(i)] * dphi;
        total += scale * ring_p;
        trunc += scale * ring_t;
    }

    ProbabilityResult r;
    r.value = total / std::numbers::pi;
    r.delta_used = delta_hold;
    r.l_window = {lo_m, hi_m};
    r.m_cut_used = resolved == AveragingKernel::small_angle
                       ? std::min(2, mc_max)
                       : mc_max;
    r.truncation_estimate = trunc / std::numbers::pi;
    return r;
}

//----------------------------------------------------------------------------//
IdentityReport averaging_identity_check(double eta, double eps, int threads)
{
    double theta = 0.5 * std::numbers::pi;
    TruncationPolicy policy;
    IdentityReport rep;
    rep.betas = {0.5, 1.0, 1.5, 2.0};

    // Master range and shared tables across the profile points.
    auto [lo_m, hi_m] = l_window(0.0, eps, policy.window_sigmas);
    int mc_max = 0;
    for (double b : rep.betas)
    {
        auto [lo, hi] = l_window(b, eps, policy.window_sigmas);
        lo_m = std::min(lo_m, lo);
        hi_m = std::max(hi_m, hi);
        mc_max = std::max(mc_max, policy.resolved_m_cut(b));
    }
    PhaseShiftTable table = build_phase_table_range(eta, eps, lo_m, hi_m);
    specfun::WignerDTable dtab(theta, mc_max, hi_m);

    // Hold the origin maximizer of the time shift across the profile.
    Scenario origin{eta, eps, 0.0, 0.0, theta, 0.0};
    ProbabilityEvaluator origin_ev(origin, table, policy, DSource::exact,
                                   &dtab);
    rep.delta_used
        = find_delta_max([&](double d) { return origin_ev.at_delta(d); })
              .delta_max;

    int const n_phi = 16;
    rep.profile.assign(rep.betas.size(), 0.0);
    parallel_for(static_cast<std::int64_t>(rep.betas.size()), threads,
                 [&](std::int64_t i) {
                     double sum = 0.0;
                     for (int j = 0; j < n_phi; ++j)
                     {
                         Scenario s{eta,
                                    eps,
                                    rep.betas[static_cast<std::size_t>(i)],
                                    j * 2.0 * std::numbers::pi / n_phi,
                                    theta,
                                    rep.delta_used};
                         sum += probability_general(s, table, policy,
                                                    DSource::exact, &dtab)
                                    .value;
                     }
                     rep.profile[static_cast<std::size_t>(i)] = sum / n_phi;
                 });

    // Least-squares fit of ln P against beta^2: ln P = ln A - c beta^2.
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    auto n = static_cast<double>(rep.betas.size());
    for (std::size_t i = 0; i < rep.betas.size(); ++i)
    {
        double xv = rep.betas[i] * rep.betas[i];
        double yv = std::log(rep.profile[i]);
        sx += xv;
        sy += yv;
        sxx += xv * xv;
        sxy += xv * yv;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double intercept = (sy - slope * sx) / n;
    rep.c_fit = -slope;
    rep.a_fit = std::exp(intercept);
    rep.a_over_ruth = rep.a_fit / rutherford_probability(theta, eta, eps);
    rep.pass_amplitude = rep.a_over_ruth >= 0.95 && rep.a_over_ruth <= 1.05;
    rep.pass_exponent = rep.c_fit >= 0.95 && rep.c_fit <= 1.05;

    // Pure-quadrature self-test on the closed-form Gaussian profile.
    QuadratureSpec quad;
    double closed = 1.0 - std::exp(-quad.beta_max * quad.beta_max);
    double numeric = integrate_impact_plane(
        quad, [](double b, double) { return std::exp(-b * b); });
    rep.quadrature_check_rel = std::abs(numeric - closed) / closed;
    return rep;
}

}  // namespace cwscat
