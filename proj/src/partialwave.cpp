//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file partialwave.cpp
//----------------------------------------------------------------------------//
#include "cwscat/partialwave.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>

#include "cwscat/errors.hpp"

namespace cwscat
{
namespace
{

//! Compensated accumulator for long ascending partial-wave sums.
struct KahanSum
{
    double sum{0};
    double carry{0};

    void add(double x)
    {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

//! Thread-local cache of J_0..J_4(l theta) rows, reused across evaluators
//! built at the same angle (e.g. all quadrature nodes of an average).
std::array<double, 5> const& bracket_j_row(double theta, std::int64_t l)
{
    struct Cache
    {
        double theta{-1.0};
        std::vector<std::array<double, 5>> rows;
    };
    thread_local Cache cache;
    if (cache.theta != theta)
    {
        cache.theta = theta;
        cache.rows.clear();
    }
    if (static_cast<std::size_t>(l) >= cache.rows.size())
    {
        std::size_t old = cache.rows.size();
        cache.rows.resize(static_cast<std::size_t>(l) + 1);
        for (std::size_t k = old; k < cache.rows.size(); ++k)
        {
            specfun::bessel_j_multi(static_cast<double>(k) * theta, 4,
                                    cache.rows[k].data());
        }
    }
    return cache.rows[static_cast<std::size_t>(l)];
}

//! Scaled modified Bessel factor with the same large-argument switch used
//! throughout the channel amplitudes.
double mu_switched(int m, double z)
{
    return z >= 50.0 ? specfun::mu_asymptotic(m, z) : specfun::mu_exact(m, z);
}

}  // namespace

//----------------------------------------------------------------------------//
int TruncationPolicy::resolved_m_cut(double beta) const
{
    if (m_cut >= 0)
    {
        return m_cut;
    }
    return std::max(2,
                    static_cast<int>(std::ceil(4.0 * beta / std::sqrt(2.0))));
}

void TruncationPolicy::validate() const
{
    if (!(window_sigmas >= 4.0))
    {
        std::ostringstream os;
        os << "truncation policy: window_sigmas = " << window_sigmas
           << " must be >= 4 to keep the l-window tail negligible";
        throw ScenarioError(os.str());
    }
    if (m_cut < -1)
    {
        throw ScenarioError(
            "truncation policy: m_cut must be >= 0, or -1 for automatic");
    }
    if (!(term_floor >= 0.0) || term_floor >= 1.0)
    {
        throw ScenarioError("truncation policy: term_floor must be in [0, 1)");
    }
}

//----------------------------------------------------------------------------//
std::pair<std::int64_t, std::int64_t>
l_window(double beta, double eps, double window_sigmas)
{
    if (!(eps > 0.0))
    {
        throw ScenarioError("l_window requires eps > 0");
    }
    if (!(beta >= 0.0))
    {
        throw ScenarioError("l_window requires beta >= 0");
    }
    double half = window_sigmas / (2.0 * eps);
    if (beta == 0.0)
    {
        return {0, static_cast<std::int64_t>(std::floor(half))};
    }
    double bp = beta / (2.0 * eps);
    auto lo = static_cast<std::int64_t>(std::ceil(bp - half));
    auto hi = static_cast<std::int64_t>(std::floor(bp + half));
    return {std::max<std::int64_t>(0, lo), hi};
}

//----------------------------------------------------------------------------//
PhaseShiftTable build_phase_table(double eta, double eps, double beta,
                                  TruncationPolicy const& policy)
{
    policy.validate();
    auto [lo, hi] = l_window(beta, eps, policy.window_sigmas);
    return build_phase_table_range(eta, eps, lo, hi);
}

PhaseShiftTable build_phase_table_range(double eta, double eps,
                                        std::int64_t l_lo, std::int64_t l_hi)
{
    if (!(eps > 0.0) || l_lo < 0 || l_hi < l_lo)
    {
        throw ScenarioError("phase table requires eps > 0 and 0 <= l_lo <= l_hi");
    }
    PhaseShiftTable table;
    table.eta = eta;
    table.eps = eps;
    table.l_lo = l_lo;
    table.l_hi = l_hi;
    auto n = static_cast<std::size_t>(l_hi - l_lo + 1);
    table.sigma_l.resize(n);
    table.xi_l.resize(n);
    double ln_pr = -1.5 * std::log(eps);
    for (std::int64_t l = l_lo; l <= l_hi; ++l)
    {
        auto i = static_cast<std::size_t>(l - l_lo);
        table.sigma_l[i] = specfun::coulomb_phase(l, eta);
        table.xi_l[i] = 4.0 * eps * eta
                        * (ln_pr - 1.0 - specfun::coulomb_phase_deriv(l, eta));
    }
    return table;
}

//----------------------------------------------------------------------------//
double phi_free(std::int64_t l, int m, Scenario const& s)
{
    int am = std::abs(m);
    if (am > l)
    {
        throw RegimeError("phi_free requires |m| <= l");
    }
    if (!(s.eps > 0.0) || !(s.beta >= 0.0))
    {
        throw ScenarioError("phi_free requires eps > 0 and beta >= 0");
    }
    auto lp = specfun::lambda_phi(l, m);
    double bp = s.bp();
    double z = 2.0 * s.eps * s.eps * lp.lambda * bp;
    double log_fac = 0.5
                     * (std::lgamma(static_cast<double>(l) + am + 1.0)
                        - std::lgamma(static_cast<double>(l) - am + 1.0));
    double gap = lp.lambda - bp;
    return 2.0 * s.eps * std::sqrt(static_cast<double>(l) + 0.5)
           * std::exp(log_fac - am * std::log(lp.lambda)
                      - s.eps * s.eps * gap * gap)
           * mu_switched(am, z);
}

//----------------------------------------------------------------------------//
ProbabilityEvaluator::ProbabilityEvaluator(Scenario const& s,
                                           PhaseShiftTable const& table,
                                           TruncationPolicy const& policy,
                                           DSource d_source,
                                           specfun::WignerDTable const* shared)
{
    cwscat::validate(s);
    policy.validate();
    if (table.eta != s.eta || table.eps != s.eps)
    {
        throw ScenarioError(
            "probability evaluator: phase table built for different "
            "(eta, eps)");
    }
    auto [lo, hi] = l_window(s.beta, s.eps, policy.window_sigmas);
    if (lo < table.l_lo || hi > table.l_hi)
    {
        throw ScenarioError(
            "probability evaluator: phase table does not cover the l-window");
    }
    int mc = policy.resolved_m_cut(s.beta);
    bool single_channel = (s.beta == 0.0 || mc == 0);

    switch (d_source)
    {
        case DSource::exact:
            if (hi > 5000)
            {
                std::ostringstream os;
                os << "exact d-matrix source: l_window upper edge " << hi
                   << " exceeds the stability-tested range 5000";
                throw RegimeError(os.str());
            }
            break;
        case DSource::small_angle:
            if (!(s.theta > 0.0) || s.theta > 0.5)
            {
                throw RegimeError(
                    "small-angle d-matrix source requires 0 < theta <= 0.5");
            }
            break;
        case DSource::uniform_m0:
            if (s.theta > 0.5)
            {
                throw RegimeError(
                    "uniform-m0 d-matrix source requires theta <= 0.5");
            }
            if (!single_channel)
            {
                throw RegimeError(
                    "uniform-m0 d-matrix source only provides m = 0 columns; "
                    "requires beta = 0 or m_cut = 0");
            }
            break;
    }
    if (shared != nullptr)
    {
        if (d_source != DSource::exact)
        {
            throw ScenarioError(
                "shared d-table is only meaningful for the exact source");
        }
        if (shared->theta() != s.theta || shared->m_cut() < mc
            || shared->l_max() < hi)
        {
            throw ScenarioError(
                "shared d-table does not cover (theta, m_cut, l_window)");
        }
    }

    l_lo_ = lo;
    l_hi_ = hi;
    m_cut_ = single_channel ? 0 : mc;
    angle_factor_ = 1.0;

    // Enumerate the active (m_i, m_f) pairs with their azimuthal phases and
    // d-matrix columns.
    struct Pair
    {
        int mi;
        int mf;
        std::complex<double> az;
        double const* col;  //!< exact column, indexed by l (may be null)
    };
    std::vector<Pair> pairs;
    std::vector<std::vector<double>> own_cols;
    double half_pi_minus_phi = 0.5 * std::numbers::pi - s.phi_b;
    int span = single_channel ? 0 : mc;
    for (int mi = -span; mi <= span; ++mi)
    {
        for (int mf = -span; mf <= span; ++mf)
        {
            Pair p;
            p.mi = mi;
            p.mf = mf;
            double arg = (mi - mf) * half_pi_minus_phi;
            p.az = {std::cos(arg), std::sin(arg)};
            p.col = nullptr;
            if (d_source == DSource::exact)
            {
                if (shared != nullptr)
                {
                    p.col = shared->column(mi, mf).data();
                }
                else
                {
                    own_cols.push_back(
                        specfun::wigner_d_column(mi, mf, s.theta, hi));
                }
            }
            pairs.push_back(p);
        }
    }
    if (d_source == DSource::exact && shared == nullptr)
    {
        for (std::size_t i = 0; i < pairs.size(); ++i)
        {
            pairs[i].col = own_cols[i].data();
        }
    }

    auto n = static_cast<std::size_t>(hi - lo + 1);
    coeff_.resize(n);
    xi_.resize(n);

    double bp = s.bp();
    double angle = s.theta == 0.0 ? 1.0
                                  : std::sqrt(s.theta / std::sin(s.theta));
    std::vector<double> amp(static_cast<std::size_t>(span) + 1);
    std::vector<double> jrow(static_cast<std::size_t>(2 * span) + 1);
    for (std::int64_t l = lo; l <= hi; ++l)
    {
        auto i = static_cast<std::size_t>(l - lo);
        xi_[i] = table.xi(l);
        double gap = static_cast<double>(l) - bp;
        if (std::exp(-2.0 * s.eps * s.eps * gap * gap) < policy.term_floor)
        {
            coeff_[i] = {0.0, 0.0};
            continue;
        }
        for (int m = 0; m <= span; ++m)
        {
            amp[static_cast<std::size_t>(m)]
                = m <= l ? phi_free(l, m, s) : 0.0;
        }
        if (d_source == DSource::small_angle)
        {
            specfun::bessel_j_multi(static_cast<double>(l) * s.theta,
                                    2 * span, jrow.data());
        }
        std::complex<double> inner{0.0, 0.0};
        for (auto const& p : pairs)
        {
            double a_prod = amp[static_cast<std::size_t>(std::abs(p.mi))]
                            * amp[static_cast<std::size_t>(std::abs(p.mf))];
            if (a_prod == 0.0)
            {
                continue;
            }
            double d;
            switch (d_source)
            {
                case DSource::exact:
                    d = p.col[static_cast<std::size_t>(l)];
                    break;
                case DSource::small_angle: {
                    int dm = p.mi - p.mf;
                    double sign = (dm >= 0 && dm % 2 != 0) ? -1.0 : 1.0;
                    d = sign * angle * jrow[static_cast<std::size_t>(std::abs(dm))];
                    break;
                }
                case DSource::uniform_m0:
                default:
                    d = specfun::wigner_d_m0_uniform(l, 0, s.theta);
                    break;
            }
            inner += p.az * (a_prod * d);
        }
        double two_sigma = 2.0 * table.sigma(l);
        inner *= std::complex<double>{std::cos(two_sigma),
                                      std::sin(two_sigma)};
        coeff_[i] = inner;
    }

    edge_amp_ = std::abs(coeff_.back()) + (lo > 0 ? std::abs(coeff_.front()) : 0.0);
    tail_scale_ = 1.0 / (2.0 * s.eps * policy.window_sigmas);
}

//----------------------------------------------------------------------------//
ProbabilityEvaluator
ProbabilityEvaluator::bracket_form(Scenario const& s,
                                   PhaseShiftTable const& table,
                                   TruncationPolicy const& policy,
                                   bool literal_envelope)
{
    cwscat::validate(s);
    policy.validate();
    if (table.eta != s.eta || table.eps != s.eps)
    {
        throw ScenarioError(
            "bracket evaluator: phase table built for different (eta, eps)");
    }
    if (!(s.theta > 0.0) || s.theta > 0.5)
    {
        throw RegimeError("bracket form requires 0 < theta <= 0.5");
    }
    if (s.beta > 3.0 * (1.0 + 1e-12))
    {
        throw RegimeError(
            "bracket form requires beta <= 3 (magnetic sums truncated at 2)");
    }
    auto [lo, hi] = l_window(s.beta, s.eps, policy.window_sigmas);
    if (lo < table.l_lo || hi > table.l_hi)
    {
        throw ScenarioError(
            "bracket evaluator: phase table does not cover the l-window");
    }
    int mc = std::min(2, policy.resolved_m_cut(s.beta));

    ProbabilityEvaluator ev;
    ev.l_lo_ = lo;
    ev.l_hi_ = hi;
    ev.m_cut_ = mc;
    ev.angle_factor_ = s.theta / std::sin(s.theta);
    auto n = static_cast<std::size_t>(hi - lo + 1);
    ev.coeff_.resize(n);
    ev.xi_.resize(n);

    double bp = s.bp();
    double c1 = std::cos(s.phi_b);
    double c2 = std::cos(2.0 * s.phi_b);
    double c3 = std::cos(3.0 * s.phi_b);
    double c4 = std::cos(4.0 * s.phi_b);
    for (std::int64_t l = lo; l <= hi; ++l)
    {
        auto i = static_cast<std::size_t>(l - lo);
        ev.xi_[i] = table.xi(l);
        double gap = static_cast<double>(l) - bp;
        double envelope = std::exp(-2.0 * s.eps * s.eps * gap * gap);
        if (envelope < policy.term_floor)
        {
            ev.coeff_[i] = {0.0, 0.0};
            continue;
        }
        double p00;
        double p10;
        double p11;
        double p20;
        double p21;
        double p22;
        if (literal_envelope)
        {
            double z = s.eps * static_cast<double>(l) * s.beta;
            double pref = 4.0 * s.eps * s.eps
                          * (static_cast<double>(l) + 0.5) * envelope;
            double m0 = mu_switched(0, z);
            double m1 = mc >= 1 ? mu_switched(1, z) : 0.0;
            double m2 = mc >= 2 ? mu_switched(2, z) : 0.0;
            p00 = pref * m0 * m0;
            p10 = pref * m1 * m0;
            p11 = pref * m1 * m1;
            p20 = pref * m2 * m0;
            p21 = pref * m2 * m1;
            p22 = pref * m2 * m2;
        }
        else
        {
            double a0 = phi_free(l, 0, s);
            double a1 = (mc >= 1 && l >= 1) ? phi_free(l, 1, s) : 0.0;
            double a2 = (mc >= 2 && l >= 2) ? phi_free(l, 2, s) : 0.0;
            p00 = a0 * a0;
            p10 = a1 * a0;
            p11 = a1 * a1;
            p20 = a2 * a0;
            p21 = a2 * a1;
            p22 = a2 * a2;
        }
        auto const& j = bracket_j_row(s.theta, l);
        std::complex<double> bracket{
            j[0] * (p00 + 2.0 * p11 + 2.0 * p22)
                - (4.0 * p20 + 2.0 * p11) * j[2] * c2 + 2.0 * j[4] * p22 * c4,
            -4.0 * j[1] * (p21 + p10) * c1 + 4.0 * j[3] * p21 * c3};
        double two_sigma = 2.0 * table.sigma(l);
        ev.coeff_[i] = bracket
                       * std::complex<double>{std::cos(two_sigma),
                                              std::sin(two_sigma)};
    }

    ev.edge_amp_ = std::abs(ev.coeff_.back())
                   + (lo > 0 ? std::abs(ev.coeff_.front()) : 0.0);
    ev.tail_scale_ = 1.0 / (2.0 * s.eps * policy.window_sigmas);
    return ev;
}

//----------------------------------------------------------------------------//
double ProbabilityEvaluator::at_delta(double delta) const
{
    KahanSum re;
    KahanSum im;
    for (std::size_t i = 0; i < coeff_.size(); ++i)
    {
        double gap = delta - xi_[i];
        double w = std::exp(-0.125 * gap * gap);
        re.add(coeff_[i].real() * w);
        im.add(coeff_[i].imag() * w);
    }
    return angle_factor_ * (re.sum * re.sum + im.sum * im.sum);
}

//----------------------------------------------------------------------------//
ProbabilityResult ProbabilityEvaluator::result_at(double delta) const
{
    KahanSum re;
    KahanSum im;
    for (std::size_t i = 0; i < coeff_.size(); ++i)
    {
        double gap = delta - xi_[i];
        double w = std::exp(-0.125 * gap * gap);
        re.add(coeff_[i].real() * w);
        im.add(coeff_[i].imag() * w);
    }
    double amp = std::hypot(re.sum, im.sum);
    double tail = edge_amp_ * tail_scale_;

    ProbabilityResult r;
    r.value = angle_factor_ * (re.sum * re.sum + im.sum * im.sum);
    r.delta_used = delta;
    r.l_window = {l_lo_, l_hi_};
    r.m_cut_used = m_cut_;
    r.truncation_estimate = angle_factor_ * (2.0 * amp * tail + tail * tail);
    return r;
}

//----------------------------------------------------------------------------//
ProbabilityResult probability_general(Scenario const& s,
                                      PhaseShiftTable const& table,
                                      TruncationPolicy const& policy,
                                      DSource d_source,
                                      specfun::WignerDTable const* shared)
{
    return ProbabilityEvaluator(s, table, policy, d_source, shared)
        .result_at(s.delta);
}

//----------------------------------------------------------------------------//
ProbabilityResult probability_small_angle(Scenario const& s,
                                          PhaseShiftTable const& table,
                                          TruncationPolicy const& policy)
{
    return ProbabilityEvaluator::bracket_form(s, table, policy, false)
        .result_at(s.delta);
}

//----------------------------------------------------------------------------//
ProbabilityResult probability_small_angle_literal(Scenario const& s,
                                                  PhaseShiftTable const& table,
                                                  TruncationPolicy const& policy)
{
    return ProbabilityEvaluator::bracket_form(s, table, policy, true)
        .result_at(s.delta);
}

//----------------------------------------------------------------------------//
ProbabilityResult probability_forward(double eta, double beta, double eps,
                                      double delta,
                                      TruncationPolicy const& policy)
{
    // The coherence bound beta <= 1/sqrt(eps) constrains the magnetic-sum
    // truncation of the general form; the forward form has no magnetic sums,
    // so only the resolution range and the stationary-phase regime apply.
    if (!(eps > 0.0) || eps > 0.1)
    {
        throw ScenarioError("forward probability requires eps in (0, 0.1]");
    }
    policy.validate();
    if (beta < 10.0)
    {
        std::ostringstream os;
        os << "forward probability requires beta >= 10 (stationary-phase "
              "collapse of the magnetic sums); got beta = "
           << beta << " -- use probability_general at theta = 0 instead";
        throw RegimeError(os.str());
    }
    double bp = beta / (2.0 * eps);
    double half = policy.window_sigmas / (2.0 * eps);
    auto lo = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(bp - half)));
    auto hi = static_cast<std::int64_t>(std::floor(bp + half));
    PhaseShiftTable table = build_phase_table(eta, eps, beta, policy);

    KahanSum re;
    KahanSum im;
    double edge_first = 0.0;
    double edge_last = 0.0;
    for (std::int64_t l = lo; l <= hi; ++l)
    {
        double gap = static_cast<double>(l) - bp;
        double envelope = std::exp(-2.0 * eps * eps * gap * gap);
        if (envelope < policy.term_floor)
        {
            continue;
        }
        double t = 4.0 * eps * eps * (static_cast<double>(l) + 0.5) * envelope
                   / std::sqrt(8.0 * std::numbers::pi * eps * eps
                               * static_cast<double>(l) * bp);
        double dgap = delta - table.xi(l);
        double w = std::exp(-0.125 * dgap * dgap);
        double two_sigma = 2.0 * table.sigma(l);
        re.add(t * w * std::cos(two_sigma));
        im.add(t * w * std::sin(two_sigma));
        if (l == lo)
        {
            edge_first = t;
        }
        edge_last = t;
    }
    double amp = std::hypot(re.sum, im.sum);
    double tail = ((lo > 1 ? edge_first : 0.0) + edge_last)
                  / (2.0 * eps * policy.window_sigmas);

    ProbabilityResult r;
    r.value = re.sum * re.sum + im.sum * im.sum;
    r.delta_used = delta;
    r.l_window = {lo, hi};
    r.m_cut_used = 0;
    r.truncation_estimate = 2.0 * amp * tail + tail * tail;
    return r;
}

//----------------------------------------------------------------------------//
DeltaMaxResult find_delta_max(std::function<double(double)> const& evaluator,
                              DeltaSearch const& search)
{
    if (!(search.hi > search.lo) || !(search.coarse_step > 0.0))
    {
        throw ScenarioError("delta search requires hi > lo and a positive step");
    }
    std::vector<double> deltas;
    for (double d = search.lo; d <= search.hi + 0.5 * search.coarse_step;
         d += search.coarse_step)
    {
        deltas.push_back(d);
    }
    std::vector<double> vals(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i)
    {
        vals[i] = evaluator(deltas[i]);
    }
    double vmax = *std::max_element(vals.begin(), vals.end());
    double vmin = *std::min_element(vals.begin(), vals.end());

    DeltaMaxResult out;
    out.flat = vmin > 0.0 ? (vmax / vmin < 1.0 + 1e-12) : (vmax == vmin);

    // Among near-maximal grid points, prefer the smallest |delta|,
    // breaking exact |delta| ties toward the smaller delta.
    auto rank = [](double d) { return std::make_pair(std::abs(d), d); };
    std::size_t best = 0;
    bool have = false;
    for (std::size_t i = 0; i < deltas.size(); ++i)
    {
        if (vals[i] >= vmax * (1.0 - 1e-12)
            && (!have || rank(deltas[i]) < rank(deltas[best])))
        {
            best = i;
            have = true;
        }
    }
    double a = std::max(search.lo, deltas[best] - search.coarse_step);
    double b = std::min(search.hi, deltas[best] + search.coarse_step);

    // Golden-section refinement (maximization).
    constexpr double gr = 0.6180339887498948482;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = evaluator(c);
    double fd = evaluator(d);
    int guard = 0;
    while (b - a > 1e-4 && guard++ < 200)
    {
        if (fc > fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = evaluator(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = evaluator(d);
        }
    }
    out.delta_max = 0.5 * (a + b);
    out.p_max = evaluator(out.delta_max);
    return out;
}

//----------------------------------------------------------------------------//
double rutherford_probability(double theta, double eta, double eps)
{
    if (!(theta > 0.0) || theta > std::numbers::pi * (1.0 + 1e-12))
    {
        throw ScenarioError(
            "classical comparison probability requires theta in (0, pi]");
    }
    if (!(eps > 0.0))
    {
        throw ScenarioError("classical comparison probability requires eps > 0");
    }
    double s = std::sin(0.5 * theta);
    double e2 = eps * eps;
    return 4.0 * e2 * e2 * eta * eta / (s * s * s * s);
}

//----------------------------------------------------------------------------//
double cross_section_from_probability(double p_value, double p_momentum,
                                      double sigma_p)
{
    if (!(p_momentum > 0.0) || !(sigma_p > 0.0))
    {
        throw ScenarioError("cross-section map requires p > 0 and sigma_p > 0");
    }
    double s2 = sigma_p * sigma_p;
    return p_momentum * p_momentum / (16.0 * s2 * s2) * p_value;
}

double probability_from_cross_section(double xsec, double p_momentum,
                                      double sigma_p)
{
    if (!(p_momentum > 0.0) || !(sigma_p > 0.0))
    {
        throw ScenarioError("cross-section map requires p > 0 and sigma_p > 0");
    }
    double s2 = sigma_p * sigma_p;
    return xsec * 16.0 * s2 * s2 / (p_momentum * p_momentum);
}

double mev2_inv_to_angstrom2(double x)
{
    double f = hbar_c_mev_fm * fm_to_angstrom;
    return x * f * f;
}

double mev2_inv_to_barn(double x)
{
    // 1/MeV^2 = (hbar c)^2 fm^2; 1 barn = 100 fm^2.
    return x * hbar_c_mev_fm * hbar_c_mev_fm * 0.01;
}

//----------------------------------------------------------------------------//
double theta_deviation(double eta, double eps)
{
    if (!(eps > 0.0))
    {
        throw ScenarioError("deviation angle requires eps > 0");
    }
    return 4.0 * eps * std::abs(eta);
}

//----------------------------------------------------------------------------//
LMDensity lm_density(Scenario const& s, TruncationPolicy const& policy)
{
    cwscat::validate(s);
    policy.validate();
    LMDensity out;
    auto [lo, hi] = l_window(s.beta, s.eps, policy.window_sigmas);
    out.l_lo = lo;
    out.l_hi = hi;
    out.m_cut = policy.resolved_m_cut(s.beta);
    auto cols = static_cast<std::size_t>(2 * out.m_cut + 1);
    out.density.assign(static_cast<std::size_t>(hi - lo + 1) * cols, 0.0);
    for (std::int64_t l = lo; l <= hi; ++l)
    {
        for (int m = -out.m_cut; m <= out.m_cut; ++m)
        {
            if (std::abs(m) > l)
            {
                continue;
            }
            double a = phi_free(l, m, s);
            out.density[static_cast<std::size_t>(l - lo) * cols
                        + static_cast<std::size_t>(m + out.m_cut)] = a * a;
        }
    }
    return out;
}

}  // namespace cwscat
