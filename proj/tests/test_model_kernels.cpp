#include "plurikernel/model_kernels.hpp"

#include <gtest/gtest.h>

using namespace plurikernel;

namespace {

// Independent reference: Omega_{B, e1}(w) = -(1 - |w|^2) / |1 - w_1|^2, moved to pole p by a unitary.
double reference_ball_kernel(const CVec& p, const CVec& z)
{
    const CMat U = unitary_sending_e1_to(p);
    const CVec w = U.adjoint() * z;
    return -(1.0 - w.squaredNorm()) / std::norm(1.0 - w(0));
}

}  // namespace

TEST(PoissonDisc, Examples)
{
    EXPECT_DOUBLE_EQ(poisson_disc(1.0, 0.0), -1.0);
    for (double r : {0.1, 0.5, 0.9, 0.999})
        EXPECT_NEAR(poisson_disc(1.0, r), -(1.0 + r) / (1.0 - r), 1e-12 * (1.0 + r) / (1.0 - r));
    EXPECT_THROW(poisson_disc(1.0, 1.0), Error);
}

TEST(PoissonDisc, RadialLimit)
{
    for (int k = 10; k <= 30; k += 5) {
        const double t = 1.0 - std::ldexp(1.0, -k);
        EXPECT_NEAR(poisson_disc(1.0, t) * (1.0 - t), -(1.0 + t), 1e-15 / (1.0 - t));
        EXPECT_NEAR(poisson_disc(1.0, t) * (1.0 - t), -2.0, 2.0 * (1.0 - t));
    }
}

TEST(OmegaBall, Examples)
{
    const CVec e1 = basis_vector(2, 0);
    EXPECT_DOUBLE_EQ(omega_ball(e1, CVec::Zero(2)).value(), -1.0);
    EXPECT_EQ(omega_ball(e1, CVec::Zero(2)).provenance, Provenance::closed_form);
    for (double t : {0.2, 0.7, 0.99})
        EXPECT_NEAR(omega_ball(e1, t * e1).value() * (1.0 - t), -(1.0 + t), 1e-12);
    EXPECT_NEAR(omega_general_ball(0.5 * e1, 0.5, e1, 0.5 * e1).value(), -2.0, 1e-15);
}

TEST(OmegaBall, MatchesUnitaryTransportedFormula)
{
    Rng rng(1);
    for (int n : {1, 2, 3}) {
        for (int i = 0; i < 100; ++i) {
            const CVec p = random_unit_vector(n, rng);
            const CVec z = random_ball_point(n, rng, 0.95);
            EXPECT_NEAR(omega_ball(p, z).value(), reference_ball_kernel(p, z), 1e-10 * std::abs(reference_ball_kernel(p, z)));
        }
    }
}

TEST(OmegaBall, NegativeInsideZeroOnBoundary)
{
    Rng rng(2);
    const CVec p = random_unit_vector(2, rng);
    for (int i = 0; i < 100; ++i) {
        const CVec z = random_ball_point(2, rng, 0.999);
        EXPECT_LT(omega_ball(p, z).value(), 0.0);
        const CVec q = random_unit_vector(2, rng);
        EXPECT_EQ(omega_ball(p, q).value(), 0.0);
        // approach q radially
        EXPECT_GT(omega_ball(p, (1.0 - 1e-9) * q).value(), -1e-6);
    }
    EXPECT_THROW(omega_ball(p, p), Error);
    EXPECT_THROW(omega_ball(p, 1.1 * p), Error);
}

TEST(OmegaBall, RestrictionToRadialDiscIsPoisson)
{
    const CVec e1 = basis_vector(3, 0);
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const Complex zeta = random_ball_point(1, rng, 0.999)(0);
        const double lhs = omega_ball(e1, zeta * e1).value();
        EXPECT_NEAR(lhs, poisson_disc(1.0, zeta), 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST(OmegaBall, CoupleRescalingIsExact)
{
    for (double rho : {0.5, 2.0, 7.0}) {
        EXPECT_DOUBLE_EQ(rescale_couple(-3.0, rho), -3.0 / rho);
        EXPECT_DOUBLE_EQ(rescale_couple(rescale_couple(-3.0, rho), 1.0 / rho), -3.0);
    }
    EXPECT_THROW(rescale_couple(-1.0, 0.0), Error);
}

TEST(Mobius, Properties)
{
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const CVec a = random_ball_point(3, rng, 0.95);
        const CVec w = random_ball_point(3, rng, 1.0);
        EXPECT_LT(mobius_ball(a, a).norm(), 1e-14);
        EXPECT_LT((mobius_ball(a, mobius_ball(a, w)) - w).norm(), 1e-10);
        const CVec s = random_unit_vector(3, rng);
        EXPECT_NEAR(mobius_ball(a, s).norm(), 1.0, 1e-12);
    }
    const CVec w = random_ball_point(2, rng);
    EXPECT_LT((mobius_ball(CVec::Zero(2), w) + w).norm(), 1e-16);
    EXPECT_THROW(mobius_ball(basis_vector(2, 0), w), Error);
}

TEST(Mobius, DerivativeMatchesFiniteDifference)
{
    Rng rng(6);
    for (int i = 0; i < 20; ++i) {
        const CVec a = random_ball_point(2, rng, 0.9);
        const CVec w = random_ball_point(2, rng, 0.9);
        const CVec v = random_unit_vector(2, rng);
        const double h = 1e-6;
        const CVec fd = (mobius_ball(a, w + h * v) - mobius_ball(a, w - h * v)) / (2.0 * h);
        EXPECT_LT((fd - mobius_ball_derivative(a, w, v)).norm(), 1e-7);
    }
}

TEST(Kobayashi, Examples)
{
    Rng rng(7);
    const auto disc = DomainSpec::disc();
    const auto ball = DomainSpec::unit_ball(2);
    for (double r : {0.0, 0.3, 0.9, 0.999999})
        EXPECT_NEAR(kobayashi(disc, scalar_point(0.0), scalar_point(r)), std::atanh(r), 1e-10);
    for (int i = 0; i < 50; ++i) {
        const CVec z = random_ball_point(2, rng, 0.95), w = random_ball_point(2, rng, 0.95);
        const CVec u = random_ball_point(2, rng, 0.9);
        EXPECT_NEAR(kobayashi(ball, z, z), 0.0, 1e-12);
        const double k = kobayashi(ball, z, w);
        EXPECT_NEAR(kobayashi(ball, mobius_ball(u, z), mobius_ball(u, w)), k, 1e-9 * std::max(1.0, k));
        EXPECT_NEAR(kobayashi(ball, w, z), k, 1e-10 * std::max(1.0, k));
    }
    RVec a(2);
    a << 1.0, 2.0;
    EXPECT_THROW(kobayashi(DomainSpec::ellipsoid(a), CVec::Zero(2), CVec::Zero(2)), Error);
}

TEST(Kobayashi, DiscPoincareFormula)
{
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        const Complex z = random_ball_point(1, rng, 0.99)(0), w = random_ball_point(1, rng, 0.99)(0);
        const double m = std::abs((z - w) / (1.0 - std::conj(w) * z));
        EXPECT_NEAR(kobayashi_ball(scalar_point(z), scalar_point(w)), 0.5 * std::log((1 + m) / (1 - m)), 1e-10);
    }
}

TEST(Green, Examples)
{
    Rng rng(9);
    for (int i = 0; i < 100; ++i) {
        const CVec w = random_ball_point(2, rng, 0.999);
        EXPECT_NEAR(green_ball(CVec::Zero(2), w).value(), std::log(w.norm()), 1e-12);
    }
    EXPECT_TRUE(green_ball(CVec::Zero(2), CVec::Zero(2)).is_negative_infinity());
    const CVec z = random_ball_point(2, rng, 0.5);
    EXPECT_TRUE(green_ball(z, z).is_negative_infinity());
}

TEST(Green, BoundaryNormalizationAndSymmetry)
{
    Rng rng(10);
    for (int i = 0; i < 100; ++i) {
        const CVec z = random_ball_point(2, rng, 0.9), w = random_ball_point(2, rng, 0.9);
        EXPECT_NEAR(green_ball(z, w).value(), green_ball(w, z).value(), 1e-10);
        EXPECT_LT(green_ball(z, w).value(), 0.0);
        const CVec u = random_unit_vector(2, rng);
        EXPECT_GT(green_ball(z, (1.0 - 1e-10) * u).value(), -1e-8);
        // invariance under automorphisms
        const CVec a = random_ball_point(2, rng, 0.8);
        EXPECT_NEAR(green_ball(mobius_ball(a, z), mobius_ball(a, w)).value(), green_ball(z, w).value(), 1e-9);
    }
}

TEST(Green, SubMeanValueOnComplexLines)
{
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        const CVec pole = random_ball_point(2, rng, 0.5);
        const CVec w0 = random_ball_point(2, rng, 0.5);
        const CVec v = random_unit_vector(2, rng);
        const double r = 0.3;
        const int m = 512;
        double mean = 0.0;
        for (int k = 0; k < m; ++k) {
            const Complex e = std::polar(r, two_pi * k / m);
            const ExtReal g = green_ball(pole, w0 + e * v);
            mean += g.value() / m;
        }
        EXPECT_LE(green_ball(pole, w0).value(), mean + 1e-9);
    }
}

TEST(BoundaryLimit, Examples)
{
    const auto ball = DomainSpec::unit_ball(2);
    const CVec e1 = basis_vector(2, 0);
    const auto frame = boundary_frame(ball, e1);
    auto kernel = [&](const CVec& z) { return omega_ball(e1, z).value(); };

    BoundaryCurve radial{[&](double t) { return CVec(t * e1); }, e1};
    auto r = boundary_limit(kernel, frame, radial);
    EXPECT_NEAR(r.estimate, -2.0, 1e-9);
    EXPECT_DOUBLE_EQ(r.predicted, -2.0);

    // gamma(t) = e1 - 2(1 - t) e1 + (1 - t)^2 e2 / 2 has gamma'(1) = 2 e1
    BoundaryCurve fast{[&](double t) {
                           const double s = 1.0 - t;
                           CVec z = (1.0 - 2.0 * s) * e1;
                           z(1) = 0.5 * s * s;
                           return z;
                       },
                       2.0 * e1};
    r = boundary_limit(kernel, frame, fast, 3, 20);
    EXPECT_NEAR(r.estimate, -1.0, 1e-8);
    EXPECT_DOUBLE_EQ(r.predicted, -1.0);

    const auto disc = DomainSpec::disc();
    const auto dframe = boundary_frame(disc, scalar_point(1.0));
    BoundaryCurve sigma{[](double t) { return scalar_point(t); }, scalar_point(1.0)};
    r = boundary_limit([](const CVec& z) { return poisson_disc(1.0, z(0)); }, dframe, sigma);
    EXPECT_NEAR(r.estimate, -2.0, 1e-9);
}

TEST(BoundaryLimit, TangentialCurveRejected)
{
    const auto ball = DomainSpec::unit_ball(2);
    const CVec e1 = basis_vector(2, 0);
    const auto frame = boundary_frame(ball, e1);
    BoundaryCurve tangential{[&](double) { return CVec(e1); }, basis_vector(2, 1)};
    EXPECT_THROW(boundary_limit([&](const CVec& z) { return omega_ball(e1, z).value(); }, frame, tangential), Error);
}

TEST(BoundaryLimit, RandomTransversalCurves)
{
    Rng rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {1, 2}) {
        for (int i = 0; i < 20; ++i) {
            const CVec p = random_unit_vector(n, rng);
            const auto frame = boundary_frame(DomainSpec::unit_ball(n), p);
            // gamma(t) = p - s v + s^2 c with Re<v, p> > 0; stays inside for small s when c is mild.
            CVec v = random_unit_vector(n, rng);
            const Complex pv = herm(v, p);
            v += (0.5 + std::abs(pv) - pv.real()) * p;  // make Re<v,p> >= 0.5
            const CVec c = 0.1 * random_unit_vector(n, rng);
            BoundaryCurve curve{[=](double t) {
                                    const double s = 1.0 - t;
                                    CVec z = p - s * v + s * s * c;
                                    const double nz = z.norm();
                                    if (nz >= 1.0) z *= (1.0 - 1e-15) / nz;
                                    return z;
                                },
                                v};
            auto kernel = [&](const CVec& z) { return omega_ball(p, z).value(); };
            const auto r = boundary_limit(kernel, frame, curve, 6, 24);
            EXPECT_NEAR(r.estimate, r.predicted, 1e-6) << "n=" << n << " i=" << i;
        }
    }
}

TEST(Pullback, IdentityAndUnitary)
{
    Rng rng(13);
    const CVec q = random_unit_vector(2, rng);
    auto kq = [q](const CVec& z) { return omega_ball(q, z).value(); };
    const CVec theta_q = q.conjugate();
    const auto id = pullback_kernel(Biholomorphism::identity(2), kq, q, theta_q);
    const CMat U = unitary_sending_e1_to(random_unit_vector(2, rng));
    const auto pu = pullback_kernel(Biholomorphism::unitary(U), kq, q, theta_q);
    EXPECT_LT((pu.pole - U.adjoint() * q).norm(), 1e-14);
    EXPECT_NEAR(pu.couple_scale(pu.pole), 1.0, 1e-12);
    for (int i = 0; i < 50; ++i) {
        const CVec z = random_ball_point(2, rng, 0.95);
        EXPECT_DOUBLE_EQ(id.evaluate(z), kq(z));
        EXPECT_NEAR(pu.evaluate(z), omega_ball(pu.pole, z).value(), 1e-10 * std::abs(pu.evaluate(z)));
    }
}

TEST(Pullback, AutomorphismRenormalized)
{
    Rng rng(14);
    for (int trial = 0; trial < 5; ++trial) {
        const CVec q = random_unit_vector(2, rng);
        const CVec z0 = random_ball_point(2, rng, 0.8);
        const auto F = Biholomorphism::ball_automorphism(z0);
        const auto pb = pullback_kernel(F, [q](const CVec& z) { return omega_ball(q, z).value(); }, q, q.conjugate());
        EXPECT_LT((pb.pole - mobius_ball(z0, q)).norm(), 1e-12);
        const double rho = pb.couple_scale(pb.pole);  // pole is on the sphere, nu = pole
        EXPECT_GT(rho, 0.0);
        for (int i = 0; i < 100; ++i) {
            const CVec z = random_ball_point(2, rng, 0.95);
            const double renormalized = rho * pb.evaluate(z);  // Omega^{theta} = rho * Omega^{rho theta}
            const double direct = omega_ball(pb.pole, z).value();
            EXPECT_NEAR(renormalized, direct, 1e-9 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST(Pullback, AffineMapsBallToGeneralBall)
{
    const CVec c = 0.5 * basis_vector(2, 0);
    const auto F = Biholomorphism::affine(c, 0.5, CMat::Identity(2, 2));
    const CVec q = basis_vector(2, 0);  // boundary of ball(c, 0.5)
    const auto pb = pullback_kernel(F, [&](const CVec& z) { return omega_general_ball(c, 0.5, q, z).value(); }, q,
                                    q.conjugate());
    const double rho = pb.couple_scale(pb.pole);
    EXPECT_NEAR(rho, 0.5, 1e-15);
    Rng rng(15);
    for (int i = 0; i < 20; ++i) {
        const CVec z = random_ball_point(2, rng, 0.9);
        EXPECT_NEAR(rho * pb.evaluate(z), omega_ball(pb.pole, z).value(), 1e-12);
    }
}
