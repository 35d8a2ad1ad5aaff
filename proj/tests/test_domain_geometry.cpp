#include "plurikernel/domain_geometry.hpp"

#include <gtest/gtest.h>

using namespace plurikernel;

namespace {

CVec c2(Complex a, Complex b)
{
    CVec v(2);
    v << a, b;
    return v;
}

std::vector<DomainSpec> builtin_domains()
{
    RVec a(2);
    a << 1.0, 2.0;
    RVec a3(3);
    a3 << 1.0, 3.0, 0.5;
    return {DomainSpec::disc(), DomainSpec::unit_ball(2), DomainSpec::unit_ball(3),
            DomainSpec::ball(c2({0.5, 0.0}, {0.0, -0.2}), 0.7), DomainSpec::ellipsoid(a), DomainSpec::ellipsoid(a3)};
}

}  // namespace

TEST(PsiJet, UnitBallAtOrigin)
{
    const auto jet = psi_jet(DomainSpec::unit_ball(2), CVec::Zero(2));
    EXPECT_DOUBLE_EQ(jet.value, -1.0);
    EXPECT_LT(jet.gradient.norm(), 1e-15);
    EXPECT_TRUE(jet.hessian.isApprox(CMat::Identity(2, 2)));
}

TEST(PsiJet, EllipsoidAtE1)
{
    RVec a(2);
    a << 1.0, 2.0;
    const auto jet = psi_jet(DomainSpec::ellipsoid(a), basis_vector(2, 0));
    EXPECT_NEAR(jet.value, 0.0, 1e-15);
    // d/dz1 (z1 conj z1) = conj z1 = 1
    EXPECT_NEAR(std::abs(jet.gradient(0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(jet.gradient(1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(jet.hessian(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(jet.hessian(1, 1) - 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(jet.hessian(0, 1)), 0.0, 1e-15);
}

TEST(PsiJet, DiscValue)
{
    EXPECT_DOUBLE_EQ(psi_jet(DomainSpec::disc(), scalar_point(0.5)).value, -0.75);
}

TEST(PsiJet, NonFiniteCustomRejected)
{
    const auto d = DomainSpec::custom_expression(1, "abs(z1)^2 - 1", scalar_point(0.0));
    const auto bad = DomainSpec::custom(
        1, [](const CVec& z) { return std::abs(z(0)) > 2 ? std::nan("") : std::norm(z(0)) - 1.0; }, scalar_point(0.0),
        "nan outside");
    EXPECT_NO_THROW(psi_jet(d, scalar_point(3.0)));
    try {
        psi_jet(bad, scalar_point(3.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::malformed_function);
    }
}

TEST(PsiJet, CustomHessianMatchesBuiltin)
{
    RVec a(2);
    a << 1.0, 2.0;
    const auto builtin = DomainSpec::ellipsoid(a);
    const auto custom = DomainSpec::custom_expression(2, "abs(z1)^2 + 2*abs(z2)^2 - 1", CVec::Zero(2));
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        const CVec z = random_ball_point(2, rng, 0.9);
        const auto jb = psi_jet(builtin, z);
        const auto jc = psi_jet(custom, z);
        EXPECT_LT((jb.hessian - jc.hessian).norm() / jb.hessian.norm(), 1e-6);
        EXPECT_LT((jb.gradient - jc.gradient).norm(), 1e-8);
    }
}

TEST(BoundaryFrame, Examples)
{
    const auto f = boundary_frame(DomainSpec::unit_ball(2), basis_vector(2, 0));
    EXPECT_LT((f.nu - basis_vector(2, 0)).norm(), 1e-15);
    EXPECT_NEAR(std::abs(f.levi(0, 0) - 1.0), 0.0, 1e-15);

    RVec a(2);
    a << 1.0, 2.0;
    const auto g = boundary_frame(DomainSpec::ellipsoid(a), basis_vector(2, 0));
    EXPECT_LT((g.nu - basis_vector(2, 0)).norm(), 1e-15);
    EXPECT_NEAR(std::abs(g.levi(0, 0) - 2.0), 0.0, 1e-14);

    const auto d = boundary_frame(DomainSpec::disc(), scalar_point(1.0));
    EXPECT_NEAR(std::abs(d.nu(0) - 1.0), 0.0, 1e-15);
    EXPECT_EQ(d.tangent_basis.cols(), 0);
}

TEST(BoundaryFrame, RejectsInteriorPoint)
{
    try {
        boundary_frame(DomainSpec::unit_ball(2), CVec::Zero(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_on_boundary);
    }
}

TEST(BoundaryFrame, RejectsZeroGradient)
{
    // psi = (|z|^2 - 1)^2 - 0 has zero gradient on its zero set; shift so the reference is inside.
    const auto d = DomainSpec::custom(
        1, [](const CVec& z) { const double s = std::norm(z(0)) - 1.0; return s * s * s; }, scalar_point(0.0),
        "cubed");
    try {
        boundary_frame(d, scalar_point(1.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::degenerate_geometry);
    }
}

TEST(BoundaryFrame, RandomSamplesOrthogonalAndPositive)
{
    Rng rng(11);
    for (const auto& d : builtin_domains()) {
        for (int i = 0; i < 100; ++i) {
            const CVec p = sample_boundary(d, rng);
            const auto f = boundary_frame(d, p);
            EXPECT_NEAR(f.nu.norm(), 1.0, 1e-12);
            EXPECT_NEAR(std::abs(f.theta(f.nu) - 1.0), 0.0, 1e-12);
            for (Eigen::Index j = 0; j < f.tangent_basis.cols(); ++j) {
                EXPECT_LT(std::abs(herm(f.nu, f.tangent_basis.col(j))), 1e-10);
                EXPECT_LT(std::abs(f.theta(f.tangent_basis.col(j))), 1e-10);
            }
            if (f.levi.size() > 0) {
                Eigen::SelfAdjointEigenSolver<CMat> es(f.levi);
                EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
            }
        }
    }
}

TEST(LeviDensity, Examples)
{
    EXPECT_NEAR(levi_density(DomainSpec::unit_ball(2), basis_vector(2, 1)), 2.0, 1e-14);
    EXPECT_NEAR(levi_density(DomainSpec::disc(), scalar_point(Complex(0.6, 0.8))), 1.0, 1e-14);
    EXPECT_NEAR(levi_density(DomainSpec::unit_ball(3), basis_vector(3, 2)), 8.0, 1e-13);
}

TEST(LeviDensity, ScaleInvariantForCustom)
{
    const CVec p = c2(Complex(0.6, 0.0), Complex(0.0, 0.8 / std::sqrt(2.0)));
    const auto d1 = DomainSpec::custom_expression(2, "abs(z1)^2 + 2*abs(z2)^2 - 1", CVec::Zero(2));
    for (double c : {0.5, 3.0, 10.0}) {
        const auto dc = DomainSpec::custom(
            2, [c](const CVec& z) { return c * (std::norm(z(0)) + 2.0 * std::norm(z(1)) - 1.0); }, CVec::Zero(2),
            "scaled");
        EXPECT_NEAR(levi_density(dc, p), levi_density(d1, p), 1e-5);
    }
}

TEST(LeviDensity, DegenerateLeviRejected)
{
    // Real hyperplane-like boundary near p: psi = Re z1 + |z1|^2 / 4 ... use a flat piece: psi = x1 - 0.5 (bounded not required here).
    const auto d = DomainSpec::custom(
        2, [](const CVec& z) { return z(0).real() - 0.5; }, CVec::Zero(2), "flat");
    try {
        levi_density(d, c2(0.5, 0.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::degenerate_geometry);
    }
}

TEST(OsculatingRadii, Examples)
{
    auto r = osculating_radii(DomainSpec::unit_ball(2), basis_vector(2, 0));
    EXPECT_NEAR(r.r_in, 1.0, 1e-14);
    EXPECT_NEAR(r.r_out, 1.0, 1e-14);
    EXPECT_FALSE(r.local_only);

    RVec a(2);
    a << 1.0, 2.0;
    r = osculating_radii(DomainSpec::ellipsoid(a), basis_vector(2, 0));
    EXPECT_NEAR(r.r_in, 0.5, 1e-14);
    EXPECT_NEAR(r.r_out, 1.0, 1e-14);
    EXPECT_TRUE(r.inner_certified);
    EXPECT_TRUE(r.outer_certified);

    r = osculating_radii(DomainSpec::disc(), scalar_point(1.0));
    EXPECT_NEAR(r.r_in, 1.0, 1e-14);
    EXPECT_NEAR(r.r_out, 1.0, 1e-14);
}

TEST(OsculatingRadii, GeneralBallEverywhere)
{
    const auto d = DomainSpec::ball(c2({0.5, 0.1}, {-0.3, 0.0}), 0.35);
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const auto r = osculating_radii(d, sample_boundary(d, rng));
        EXPECT_NEAR(r.r_in, 0.35, 1e-12);
        EXPECT_NEAR(r.r_out, 0.35, 1e-12);
    }
}

TEST(OsculatingRadii, CustomIsLocalOnly)
{
    const auto d = DomainSpec::custom_expression(2, "abs(z1)^2 + abs(z2)^2 - 1", CVec::Zero(2));
    const auto r = osculating_radii(d, basis_vector(2, 0));
    EXPECT_TRUE(r.local_only);
    EXPECT_NEAR(r.r_in, 1.0, 1e-6);
}

TEST(TangentBalls, EllipsoidContainmentIsSharp)
{
    RVec a(2);
    a << 1.0, 2.0;
    const auto d = DomainSpec::ellipsoid(a);
    const auto f = boundary_frame(d, basis_vector(2, 0));
    EXPECT_TRUE(tangent_ball_inside(d, f, 0.5));
    EXPECT_FALSE(tangent_ball_inside(d, f, 0.51));
    EXPECT_TRUE(tangent_ball_contains(d, f, 1.0));
    EXPECT_FALSE(tangent_ball_contains(d, f, 0.99));
}

TEST(TangentBalls, SecularSolverAgainstSampling)
{
    Rng rng(5);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        RVec q(4), b(4);
        for (int i = 0; i < 4; ++i) {
            q(i) = u(rng);
            b(i) = u(rng) - 1.0;
        }
        const double best = max_convex_quadratic_on_unit_ball(q, b);
        double sampled = -1e300;
        for (int s = 0; s < 4000; ++s) {
            const CVec c = random_unit_vector(2, rng);
            const RVec y = to_real(c);
            sampled = std::max(sampled, (q.array() * y.array().square()).sum() - 2.0 * b.dot(y));
        }
        EXPECT_GE(best, sampled - 1e-12);
        EXPECT_LE(best - sampled, 0.05);
    }
}

TEST(SignedDistance, Examples)
{
    EXPECT_DOUBLE_EQ(signed_boundary_distance(DomainSpec::unit_ball(2), 0.5 * basis_vector(2, 0)), -0.5);
    EXPECT_DOUBLE_EQ(signed_boundary_distance(DomainSpec::ball(0.5 * basis_vector(2, 0), 0.5), 0.5 * basis_vector(2, 0)),
                     -0.5);
    RVec a(2);
    a << 1.0, 2.0;
    EXPECT_NEAR(signed_boundary_distance(DomainSpec::ellipsoid(a), CVec::Zero(2)), -1.0 / std::sqrt(2.0), 1e-12);
}

TEST(SignedDistance, EllipsoidSignsAndBoundary)
{
    RVec a(2);
    a << 1.0, 2.0;
    const auto d = DomainSpec::ellipsoid(a);
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
        const CVec p = sample_boundary(d, rng);
        const auto f = boundary_frame(d, p);
        // Along the normal, close to the boundary the distance is the normal offset.
        EXPECT_NEAR(signed_boundary_distance(d, p - 1e-3 * f.nu), -1e-3, 1e-8);
        EXPECT_NEAR(signed_boundary_distance(d, p + 1e-3 * f.nu), 1e-3, 1e-8);
    }
}

TEST(SignedDistance, CustomMatchesBuiltin)
{
    const auto d = DomainSpec::custom_expression(2, "abs(z1)^2 + 2*abs(z2)^2 - 1", CVec::Zero(2));
    EXPECT_NEAR(signed_boundary_distance(d, CVec::Zero(2)), -1.0 / std::sqrt(2.0), 1e-7);
}

TEST(DomainSpec, RejectsBadParameters)
{
    EXPECT_THROW(DomainSpec::unit_ball(0), Error);
    EXPECT_THROW(DomainSpec::ball(CVec::Zero(2), -1.0), Error);
    RVec a(2);
    a << 1.0, -2.0;
    EXPECT_THROW(DomainSpec::ellipsoid(a), Error);
    EXPECT_THROW(DomainSpec::custom_expression(1, "abs(z1)^2 + 1", scalar_point(0.0)), Error);
}
