// Tests for the impact-plane averaging layer: Gauss-Legendre quadrature,
// the disc integral, delta policies, kernel selection, and the right-angle
// Gaussian-profile identity check.
#include <doctest.h>

#include <cwscat/averaging.hpp>
#include <cwscat/errors.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace cwscat;

namespace {

constexpr double pi = std::numbers::pi;

double rel_err(double got, double want)
{
    return std::abs(got - want) / std::abs(want);
}

} // namespace

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly")
{
    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre_nodes(8, -1.0, 1.0, x, w);
    REQUIRE(x.size() == 8);
    REQUIRE(w.size() == 8);

    // Exact for degree <= 2n-1 = 15: check moments against closed forms.
    for (int k = 0; k <= 15; ++k) {
        double got = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            got += w[i] * std::pow(x[i], k);
        }
        double const want = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
        CHECK(std::abs(got - want) < 1e-14);
    }

    // Weights sum to the interval length on a shifted range.
    gauss_legendre_nodes(32, 0.0, 3.0, x, w);
    double wsum = 0.0;
    for (double v : w) { wsum += v; }
    CHECK(rel_err(wsum, 3.0) < 1e-14);
    for (double v : x) {
        CHECK(v > 0.0);
        CHECK(v < 3.0);
    }
}

TEST_CASE("disc quadrature reproduces the closed-form Gaussian integral")
{
    // (1/pi) int beta e^{-beta^2} dbeta dphi over beta <= 3
    // = 1 - e^{-9} exactly.
    QuadratureSpec quad;
    double const got = integrate_impact_plane(
        quad, [](double beta, double) { return std::exp(-beta * beta); });
    CHECK(rel_err(got, 1.0 - std::exp(-9.0)) < 1e-10);

    // A phi-dependent integrand with a known integral:
    // f = beta^2 cos^2(phi) -> (1/pi) * (beta_max^4/4) * pi = beta_max^4/4.
    double const got2 = integrate_impact_plane(
        quad, [](double beta, double phi) {
            double const c = std::cos(phi);
            return beta * beta * c * c;
        });
    CHECK(rel_err(got2, 81.0 / 4.0) < 1e-12);
}

TEST_CASE("quadrature spec validation")
{
    QuadratureSpec quad;
    CHECK_NOTHROW(quad.validate(1e-3));
    quad.n_phi = 8;
    CHECK_THROWS_AS(quad.validate(1e-3), ScenarioError);
    quad = QuadratureSpec{};
    quad.n_beta = 1;
    CHECK_THROWS_AS(quad.validate(1e-3), ScenarioError);
    quad = QuadratureSpec{};
    quad.beta_max = 35.0; // exceeds 1/sqrt(1e-3) = 31.62
    CHECK_THROWS_AS(quad.validate(1e-3), ScenarioError);
    quad.beta_max = 0.0;
    CHECK_THROWS_AS(quad.validate(1e-3), ScenarioError);
}

TEST_CASE("azimuthal resolution beyond the magnetic bandwidth changes nothing")
{
    // The integrand is a trigonometric polynomial of bounded degree in phi,
    // so 16 uniform azimuths already integrate it exactly; doubling them
    // must reproduce the same average to rounding.
    QuadratureSpec q16;
    q16.n_beta = 8;
    q16.n_phi = 16;
    QuadratureSpec q32 = q16;
    q32.n_phi = 32;
    double const p16 = average_over_impact(0.15, 22.8, 1e-3, q16).value;
    double const p32 = average_over_impact(0.15, 22.8, 1e-3, q32).value;
    CHECK(rel_err(p32, p16) < 1e-12);
}

TEST_CASE("radial resolution is converged at the default node count")
{
    QuadratureSpec q32;
    q32.n_phi = 9;
    QuadratureSpec q64 = q32;
    q64.n_beta = 64;
    double const p32 = average_over_impact(0.15, 22.8, 1e-3, q32).value;
    double const p64 = average_over_impact(0.15, 22.8, 1e-3, q64).value;
    CHECK(rel_err(p64, p32) < 1e-6);
}

TEST_CASE("the disc cutoff leaves only an exponentially small tail")
{
    QuadratureSpec full;
    full.n_beta = 16;
    full.n_phi = 9;
    QuadratureSpec trimmed = full;
    trimmed.beta_max = 2.5;
    double const p_full = average_over_impact(0.15, 22.8, 1e-3, full).value;
    double const p_trim = average_over_impact(0.15, 22.8, 1e-3, trimmed).value;
    CHECK(std::abs(p_trim / p_full - 1.0) < 5e-2);
}

TEST_CASE("averaged probabilities match reference values at automatic kernel")
{
    struct Case { double theta, value, ratio, delta; };
    // theta, averaged P, averaged P / classical, held delta
    Case const cases[] = {
        {0.1, 3.3201104846426174e-4, 0.9962744292235417, 0.295313566619082},
        {0.2, 2.0976576271107057e-5, 1.0020944524771558, 0.35844118075729964},
    };
    QuadratureSpec quad;
    quad.delta_policy.kind = DeltaPolicyKind::maximize_per_point;
    for (auto const& c : cases) {
        auto const r = average_over_impact(c.theta, 22.8, 1e-3, quad);
        CHECK(rel_err(r.value, c.value) < 1e-8);
        double const ruth = rutherford_probability(c.theta, 22.8, 1e-3);
        CHECK(rel_err(r.value / ruth, c.ratio) < 1e-8);
        CHECK(std::abs(r.delta_used - c.delta) < 2e-4);
    }
}

TEST_CASE("right-angle average with held delta matches the reference")
{
    QuadratureSpec quad;
    quad.delta_policy.kind = DeltaPolicyKind::maximize_origin;
    auto const r = average_over_impact(pi / 2.0, 22.8, 1e-3, quad);
    CHECK(rel_err(r.value, 8.316448326915414e-9) < 1e-8);
    CHECK(std::abs(r.delta_used - 0.5369910099907489) < 2e-4);
    double const ruth = rutherford_probability(pi / 2.0, 22.8, 1e-3);
    CHECK(rel_err(r.value / ruth, 0.9998807718378983) < 1e-7);
}

TEST_CASE("delta policies: zero equals fixed zero; per-point dominates held")
{
    QuadratureSpec zero;
    zero.n_beta = 6;
    zero.n_phi = 9;
    zero.delta_policy.kind = DeltaPolicyKind::zero;
    QuadratureSpec fixed0 = zero;
    fixed0.delta_policy.kind = DeltaPolicyKind::fixed;
    fixed0.delta_policy.fixed_value = 0.0;
    double const theta = 0.15;
    double const p_zero = average_over_impact(theta, 22.8, 1e-3, zero).value;
    double const p_fixed = average_over_impact(theta, 22.8, 1e-3, fixed0).value;
    CHECK(p_zero == p_fixed);

    QuadratureSpec held = zero;
    held.delta_policy.kind = DeltaPolicyKind::maximize_origin;
    QuadratureSpec per = zero;
    per.delta_policy.kind = DeltaPolicyKind::maximize_per_point;
    double const p_held = average_over_impact(theta, 22.8, 1e-3, held).value;
    double const p_per = average_over_impact(theta, 22.8, 1e-3, per).value;
    CHECK(p_per >= p_held * (1.0 - 1e-12));
    CHECK(p_held > p_zero); // optimizing the origin shift helps
}

TEST_CASE("kernel selection is consistent and guards its regime")
{
    QuadratureSpec quad;
    quad.n_beta = 6;
    quad.n_phi = 9;
    quad.delta_policy.kind = DeltaPolicyKind::fixed;
    quad.delta_policy.fixed_value = 0.3;

    double const theta = 0.12;
    double const p_auto = average_over_impact(theta, 22.8, 1e-3, quad).value;
    double const p_small = average_over_impact(theta, 22.8, 1e-3, quad, {},
                                               AveragingKernel::small_angle).value;
    double const p_general = average_over_impact(theta, 22.8, 1e-3, quad, {},
                                                 AveragingKernel::general).value;
    CHECK(p_auto == p_small); // automatic resolves to small_angle here
    CHECK(rel_err(p_small, p_general) < 2e-2); // d-approximation level

    // Beyond theta = 0.5 the automatic kernel must take the general route.
    double const p_auto_wide =
        average_over_impact(0.7, 22.8, 1e-3, quad).value;
    double const p_general_wide = average_over_impact(0.7, 22.8, 1e-3, quad, {},
                                                      AveragingKernel::general).value;
    CHECK(p_auto_wide == p_general_wide);

    // The small-angle kernel refuses angles beyond its validity.
    CHECK_THROWS_AS(average_over_impact(0.7, 22.8, 1e-3, quad, {},
                                        AveragingKernel::small_angle),
                    RegimeError);

    // ... and discs wider than its impact-parameter bound.
    QuadratureSpec wide = quad;
    wide.beta_max = 4.0;
    CHECK_THROWS_AS(average_over_impact(0.12, 22.8, 1e-3, wide, {},
                                        AveragingKernel::small_angle),
                    RegimeError);

    CHECK_THROWS_AS(average_over_impact(0.0, 22.8, 1e-3, quad), ScenarioError);
}

TEST_CASE("thread count does not change the result bit-for-bit")
{
    QuadratureSpec quad;
    quad.n_beta = 6;
    quad.n_phi = 9;
    double const theta = 0.15;
    double const p1 = average_over_impact(theta, 22.8, 1e-3, quad, {},
                                          AveragingKernel::automatic, 1).value;
    double const p2 = average_over_impact(theta, 22.8, 1e-3, quad, {},
                                          AveragingKernel::automatic, 2).value;
    double const p4 = average_over_impact(theta, 22.8, 1e-3, quad, {},
                                          AveragingKernel::automatic, 4).value;
    CHECK(p1 == p2);
    CHECK(p1 == p4);
}

TEST_CASE("right-angle identity: the averaged profile is Gaussian at the classical level")
{
    auto const report = averaging_identity_check(22.8, 1e-3);
    CHECK(report.pass_amplitude);
    CHECK(report.pass_exponent);
    CHECK(std::abs(report.a_over_ruth - 1.0) < 0.02);
    CHECK(std::abs(report.c_fit - 1.0) < 0.02);
    CHECK(std::abs(report.delta_used - 0.53699) < 2e-4);
    CHECK(report.quadrature_check_rel < 1e-10);
    REQUIRE(report.betas.size() == report.profile.size());
    REQUIRE(report.betas.size() >= 4);
    // The profile itself must decay like exp(-beta^2) within a few percent.
    for (std::size_t i = 0; i < report.betas.size(); ++i) {
        double const law = report.a_fit *
                           std::exp(-report.c_fit * report.betas[i] * report.betas[i]);
        CHECK(rel_err(report.profile[i], law) < 0.05);
    }
}
