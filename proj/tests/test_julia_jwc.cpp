#include "plurikernel/julia_jwc.hpp"

#include <gtest/gtest.h>

using namespace plurikernel;

namespace {

const CVec one = scalar_point(1.0);
const CVec e1 = basis_vector(2, 0);

CVec vec2(Complex a, Complex b)
{
    CVec v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST(Maps, AnalyticJacobiansMatchContourDifferences)
{
    Rng rng(1);
    const std::vector<HolomorphicMap> maps{
        HolomorphicMap::blaschke(Complex(0.3, -0.2)),
        HolomorphicMap::power(3),
        HolomorphicMap::product({HolomorphicMap::blaschke(0.5), HolomorphicMap::power(2)}),
        HolomorphicMap::compose({HolomorphicMap::power(2), HolomorphicMap::blaschke(0.25)}),
        HolomorphicMap::ball_automorphism(vec2(0.2, Complex(0.1, 0.3))),
        HolomorphicMap::diag(vec2(1.0, Complex(0.0, 0.5))),
        HolomorphicMap::compose({HolomorphicMap::ball_automorphism(vec2(0.4, 0.0)), HolomorphicMap::diag(vec2(0.5, 0.9))}),
    };
    for (const auto& f : maps) {
        ASSERT_TRUE(f.analytic_jacobian());
        for (int i = 0; i < 5; ++i) {
            const CVec z = random_ball_point(f.source_dimension(), rng, 0.8);
            const CMat fd = contour_difference_jacobian([&](const CVec& w) { return f(w); }, z, f.target_dimension());
            EXPECT_LT((f.jacobian(z) - fd).norm(), 1e-9) << f.name();
            EXPECT_LT(f(z).norm(), 1.0) << f.name();
        }
    }
    const auto g = HolomorphicMap::from_function("square", 1, 1, [](const CVec& z) { return scalar_point(z(0) * z(0)); });
    EXPECT_FALSE(g.analytic_jacobian());
    EXPECT_NEAR(std::abs(g.jacobian(scalar_point(0.3)).value() - 0.6), 0.0, 1e-12);
    EXPECT_THROW(HolomorphicMap::blaschke(1.0), Error);
    EXPECT_THROW(HolomorphicMap::compose({HolomorphicMap::power(2), HolomorphicMap::identity(2)}), Error);
}

TEST(Lambda, Examples)
{
    const auto id = lambda_estimate(HolomorphicMap::identity(2), e1, e1);
    EXPECT_TRUE(id.finite);
    EXPECT_NEAR(id.lambda_estimate, 1.0, 1e-12);
    EXPECT_NEAR(id.normal_ray_limit, 1.0, 1e-12);

    const auto b = lambda_estimate(HolomorphicMap::blaschke(0.5), one, one);
    EXPECT_NEAR(b.lambda_estimate, 1.0 / 3.0, 1e-6);
    EXPECT_NEAR(b.normal_ray_limit, 1.0 / 3.0, 1e-6);

    const auto proj = lambda_estimate(HolomorphicMap::diag(vec2(1.0, 0.0)), e1, e1);
    EXPECT_NEAR(proj.lambda_estimate, 1.0, 1e-9);
    EXPECT_NEAR(proj.normal_ray_limit, 1.0, 1e-9);
}

TEST(Lambda, RayLimitBelowGridSupBelowOracle)
{
    // z^2 at 1: ratio |1 + z|^2 / (1 + |z|^2) < 2, supremum reached only at the boundary.
    const auto r = lambda_estimate(HolomorphicMap::power(2), one, one);
    EXPECT_NEAR(r.normal_ray_limit, 2.0, 1e-8);
    EXPECT_LE(r.lambda_estimate, 2.0 + 1e-6);
    EXPECT_LE(r.normal_ray_limit, r.lambda_estimate + 1e-6);
    const auto d = lambda_estimate(HolomorphicMap::diag(vec2(1.0, 0.5)), e1, e1);
    EXPECT_NEAR(d.normal_ray_limit, 1.0, 1e-9);
    EXPECT_LE(d.lambda_estimate, 1.0 + 1e-6);
}

TEST(Lambda, CompositionMultiplies)
{
    for (double a : {0.3, -0.4, 0.8}) {
        const auto g = HolomorphicMap::blaschke(a);
        const double lg = (1.0 - a) / (1.0 + a);
        for (const auto& f : {HolomorphicMap::power(2), HolomorphicMap::blaschke(0.5)}) {
            const double lf = lambda_estimate(f, one, one).normal_ray_limit;
            const double lfg = lambda_estimate(HolomorphicMap::compose({f, g}), one, one).normal_ray_limit;
            EXPECT_NEAR(lfg, lf * lg, 1e-6) << f.name() << ' ' << a;
        }
    }
}

TEST(Lambda, UniqueBoundaryPoint)
{
    const auto f = HolomorphicMap::blaschke(0.5);
    for (Complex qq : {Complex(-1.0), Complex(0.0, 1.0), std::polar(1.0, 0.1)}) {
        const auto r = lambda_estimate(f, one, scalar_point(qq));
        EXPECT_FALSE(r.finite);
        EXPECT_GT(r.ray_samples.back().second, 1e6);
    }
}

TEST(Lambda, ConstantMapIsInfinite)
{
    const auto r = lambda_estimate(HolomorphicMap::constant(1, scalar_point(0.3)), one, one);
    EXPECT_FALSE(r.finite);
    EXPECT_FALSE(std::isfinite(r.lambda_estimate));
    const auto rb = lambda_estimate(HolomorphicMap::diag(vec2(0.5, 0.5)), e1, e1);
    EXPECT_FALSE(rb.finite);
}

TEST(Lambda, RangeViolationReported)
{
    const auto bad = HolomorphicMap::from_function("dilate", 1, 1, [](const CVec& z) { return CVec(2.0 * z); });
    EXPECT_THROW(lambda_estimate(bad, one, one), Error);
}

TEST(ESequence, TransportedToTarget)
{
    const auto vals = e_sequence_kernel_values(HolomorphicMap::blaschke(0.5), one, one);
    for (std::size_t k = 1; k < vals.size(); ++k) EXPECT_LT(vals[k], vals[k - 1]);
    EXPECT_LT(vals.back(), -1e5);
    const auto vb = e_sequence_kernel_values(HolomorphicMap::diag(vec2(1.0, 0.5)), e1, e1, 5, 20);
    for (std::size_t k = 1; k < vb.size(); ++k) EXPECT_LT(vb[k], vb[k - 1]);
}

TEST(Horoball, MembershipDiscAndBall)
{
    const Horoball h(DomainSpec::disc(), one, 1.0);
    // horocycle of radius 1/2 centred at 1/2
    EXPECT_TRUE(h.contains(scalar_point(0.5)));
    EXPECT_TRUE(h.contains(scalar_point(0.01)));
    EXPECT_FALSE(h.contains(scalar_point(-0.01)));
    EXPECT_FALSE(h.contains(scalar_point(Complex(0.5, 0.55))));
    EXPECT_THROW(Horoball(DomainSpec::disc(), scalar_point(0.5), 1.0), Error);
    EXPECT_THROW(Horoball(DomainSpec::disc(), one, 0.0), Error);

    Rng rng(2);
    for (double R : {0.1, 1.0, 10.0}) {
        const Horoball hb(DomainSpec::unit_ball(2), unitary_sending_e1_to(random_unit_vector(2, rng)) * e1, R);
        for (const auto& z : sample_horoball(hb, 200, rng)) {
            EXPECT_LT(z.squaredNorm(), 1.0);
            EXPECT_LT(omega_ball(hb.pole, z).value(), -1.0 / R);
        }
    }
}

TEST(Horoball, SamplerCoversBoundingRegion)
{
    // Every interior point of H(e1, R) lies in the sampling box, so accepted
    // samples cover points close to the horosphere.
    Rng rng(3);
    const Horoball h(DomainSpec::unit_ball(2), e1, 1.0);
    const auto zs = sample_horoball(h, 2000, rng);
    double closest = 1.0;
    for (const auto& z : zs) closest = std::min(closest, -1.0 / h.radius - omega_ball(e1, z).value());
    EXPECT_LT(closest, 0.05);
}

TEST(Horoball, EllipsoidIntervalMembership)
{
    RVec a(2);
    a << 1.0, 2.0;
    const auto d = DomainSpec::ellipsoid(a);
    const CVec z = 0.5 * e1;  // Omega in [-3, -2]
    EXPECT_EQ(Horoball(d, e1, 1.0).classify(z), Membership::inside);
    EXPECT_EQ(Horoball(d, e1, 0.25).classify(z), Membership::outside);
    EXPECT_EQ(Horoball(d, e1, 0.4).classify(z), Membership::undetermined);
}

TEST(HoroballInclusion, AutomorphismAndNegativeTest)
{
    const auto f = HolomorphicMap::blaschke(0.5);
    const auto ok = horoball_inclusion_check(f, one, one, 1.0 / 3.0, {0.1, 1.0, 10.0}, 500);
    EXPECT_EQ(ok.samples, 1500u);
    EXPECT_TRUE(ok.violations.empty());
    EXPECT_GE(ok.min_relative_margin, -1e-12);

    const auto bad = horoball_inclusion_check(f, one, one, 1.0 / 6.0, {0.1, 1.0, 10.0}, 500);
    EXPECT_FALSE(bad.violations.empty());
    for (const auto& v : bad.violations) EXPECT_LT(v.margin, 0.0);

    const auto id = horoball_inclusion_check(HolomorphicMap::identity(2), e1, e1, 1.0, {0.1, 1.0, 10.0}, 200);
    EXPECT_TRUE(id.violations.empty());
}

TEST(HoroballInclusion, TightAlongNormalRay)
{
    // The horocycle E(1, R) meets the real axis at x_R = (1 - R)/(1 + R); its image
    // lies on the boundary of E(1, R/3), so the margin vanishes as z -> x_R.
    const auto f = HolomorphicMap::blaschke(0.5);
    const double lambda = 1.0 / 3.0;
    for (double R : {0.1, 1.0, 10.0}) {
        const double xR = (1.0 - R) / (1.0 + R);
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 4; k <= 20; k += 4) {
            const CVec z = scalar_point(xR + std::ldexp(1.0, -k));
            const double margin = -1.0 / (lambda * R) - omega_ball(one, f(z)).value();
            EXPECT_GT(margin, 0.0);
            EXPECT_LT(margin, prev);
            prev = margin;
        }
        EXPECT_LT(prev * lambda * R, 1e-4);
    }
}

TEST(Probes, Identity)
{
    const auto rep = jwc_derivative_probes(HolomorphicMap::identity(2), e1, e1, 1.0);
    EXPECT_NEAR(rep.probes[0].limit.real(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(rep.probes[1].limit), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(rep.probes[2].limit), 0.0, 1e-12);
    EXPECT_EQ(rep.directions, 5u);
}

TEST(Probes, RegisteredMapsAgainstOracles)
{
    struct Case {
        HolomorphicMap f;
        CVec p;
        double lambda;
    };
    const std::vector<Case> cases{{HolomorphicMap::blaschke(0.5), one, 1.0 / 3.0},
                                  {HolomorphicMap::power(2), one, 2.0},
                                  {HolomorphicMap::diag(vec2(1.0, 0.5)), e1, 1.0},
                                  {HolomorphicMap::compose({HolomorphicMap::power(2), HolomorphicMap::blaschke(0.3)}), one,
                                   2.0 * 0.7 / 1.3}};
    for (const auto& c : cases) {
        const auto rep = jwc_derivative_probes(c.f, c.p, c.p, 0.5);
        EXPECT_NEAR(rep.probes[0].limit.real(), c.lambda, 1e-5) << c.f.name();
        EXPECT_NEAR(rep.probes[0].limit.imag(), 0.0, 1e-5) << c.f.name();
        EXPECT_LT(rep.probes[0].cone_spread, 1e-5) << c.f.name();
        EXPECT_LT(std::abs(rep.probes[1].values.back()), 1e-4);
        EXPECT_LT(std::abs(rep.probes[2].values.back()), 1e-4);
        EXPECT_TRUE(std::isfinite(rep.probes[0].max_abs));
        EXPECT_NEAR(rep.lambda, c.lambda, 1e-6);
    }
}

TEST(Probes, DiagonalBallMap)
{
    const auto rep = jwc_derivative_probes(HolomorphicMap::diag(vec2(1.0, 0.5)), e1, e1, 1.0);
    EXPECT_NEAR(std::abs(rep.probes[2].limit), 0.0, 1e-12);
    EXPECT_LE(rep.probes[3].max_abs, 0.5 + 1e-12);
    EXPECT_NEAR(rep.probes[3].values.back().real(), 0.5, 1e-12);
    EXPECT_TRUE(rep.probes[2].applicable);
}

TEST(Probes, NontrivialTangentialTerms)
{
    // f = phi_a o diag with a off the complex line through e1: probes 2 and 3 are nonzero
    // inside but must still vanish at p.
    const CVec a = vec2(0.0, 0.3);
    const auto f = HolomorphicMap::compose({HolomorphicMap::ball_automorphism(a), HolomorphicMap::diag(vec2(1.0, 0.6))});
    const CVec q = f(0.999999 * e1).normalized();
    const auto rep = jwc_derivative_probes(f, e1, mobius_ball(a, e1), 0.5);
    EXPECT_LT((q - mobius_ball(a, e1)).norm(), 1e-5);
    EXPECT_GT(rep.probes[1].max_abs + rep.probes[2].max_abs, 1e-3);
    // decay like |1 - <z, p>|^(1/2): extrapolated limits vanish
    EXPECT_LT(std::abs(rep.probes[1].values.back()), 1e-3);
    EXPECT_LT(std::abs(rep.probes[2].values.back()), 1e-3);
    EXPECT_LT(std::abs(rep.probes[1].limit), 1e-5);
    EXPECT_LT(std::abs(rep.probes[2].limit), 1e-5);
    EXPECT_NEAR(rep.probes[0].limit.real(), rep.lambda, 1e-5);
}

TEST(Probes, RefusedAndRejected)
{
    try {
        jwc_derivative_probes(HolomorphicMap::constant(1, scalar_point(0.2)), one, one, 0.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("infinite"), std::string::npos);
    }
    const Complex I(0.0, 1.0);
    EXPECT_THROW(jwc_derivative_probes(HolomorphicMap::identity(2), e1, e1, 0.5, 2, 20, {CVec(I * e1)}), Error);
    EXPECT_THROW(jwc_derivative_probes(HolomorphicMap::identity(2), e1, e1, 0.5, 2, 20, {basis_vector(2, 1)}), Error);
}

TEST(Conditions, FiniteMaps)
{
    const CVec z1 = scalar_point(0.0), z2 = CVec::Zero(2);
    const std::vector<std::pair<HolomorphicMap, double>> finite{
        {HolomorphicMap::identity(1), 1.0},
        {HolomorphicMap::blaschke(0.5), 1.0 / 3.0},
        {HolomorphicMap::power(2), 2.0},
        {HolomorphicMap::identity(2), 1.0},
        {HolomorphicMap::diag(vec2(1.0, 0.5)), 1.0},
    };
    for (const auto& [f, lam] : finite) {
        const CVec p = f.source_dimension() == 1 ? one : e1;
        const CVec z0 = f.source_dimension() == 1 ? z1 : z2;
        const auto rep = condition_equivalence_check(f, p, z0, z0);
        EXPECT_TRUE(rep.agree) << f.name();
        EXPECT_TRUE(rep.values_consistent) << f.name();
        EXPECT_NEAR(rep.lambda.limit, lam, 1e-6) << f.name();
        EXPECT_NEAR(rep.distance_ratio.limit, lam, 1e-6) << f.name();
    }
    const auto sq = condition_equivalence_check(HolomorphicMap::power(2), one, z1, z1);
    EXPECT_NEAR(sq.kobayashi_gap.limit, 0.5 * std::log(2.0), 1e-8);

    // other base points: still finite
    const auto off = condition_equivalence_check(HolomorphicMap::power(2), one, scalar_point(0.3), scalar_point(-0.2));
    EXPECT_TRUE(off.agree);
    EXPECT_TRUE(off.kobayashi_gap.finite);
}

TEST(Conditions, InfiniteMaps)
{
    const auto c = condition_equivalence_check(HolomorphicMap::constant(1, scalar_point(Complex(0.2, 0.1))), one,
                                               scalar_point(0.0), scalar_point(0.0));
    EXPECT_TRUE(c.agree);
    EXPECT_FALSE(c.lambda.finite);
    EXPECT_FALSE(c.kobayashi_gap.finite);
    EXPECT_FALSE(c.distance_ratio.finite);
    const auto d = condition_equivalence_check(HolomorphicMap::diag(vec2(0.5, 0.5)), e1, CVec::Zero(2), CVec::Zero(2));
    EXPECT_TRUE(d.agree);
    EXPECT_FALSE(d.distance_ratio.finite);
}
