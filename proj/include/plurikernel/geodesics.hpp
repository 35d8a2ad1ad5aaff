#pragma once

// Complex geodesics of balls through a boundary pole.
//
// Every geodesic here has the linear-fractional form
//   phi(zeta) = c0 + r (U + zeta V) / (c + d zeta)
// for the ball B(c0, r), which gives closed forms for phi, phi', phi''.

#include "plurikernel/core.hpp"
#include "plurikernel/domain_geometry.hpp"
#include "plurikernel/model_kernels.hpp"

#include <array>
#include <vector>

namespace plurikernel {

/// Disc automorphism zeta -> (m[0] zeta + m[1]) / (m[2] zeta + m[3]).
struct DiscMobius {
    std::array<Complex, 4> m{1.0, 0.0, 0.0, 1.0};

    Complex operator()(Complex z) const { return (m[0] * z + m[1]) / (m[2] * z + m[3]); }
    DiscMobius inverse() const { return {{m[3], -m[1], -m[2], m[0]}}; }

    /// Automorphisms fixing 1, in half-plane form w -> alpha w + i beta.
    static DiscMobius fixing_one(double alpha, double beta)
    {
        const Complex ib(0.0, beta);
        return {{alpha - ib + 1.0, alpha + ib - 1.0, alpha - ib - 1.0, alpha + ib + 1.0}};
    }
};

class GeodesicDisc;
inline GeodesicDisc make_geodesic(const CVec& center, const CVec& p, double radius, const CVec& z, bool normalize_chl);

class GeodesicDisc {
public:
    CVec phi(Complex zeta) const { return center_ + radius_ * ((U_ + zeta * V_) / (c_ + d_ * zeta)); }

    CVec phi_prime(Complex zeta) const
    {
        const Complex den = c_ + d_ * zeta;
        return radius_ * (V_ * c_ - U_ * d_) / (den * den);
    }

    CVec phi_second(Complex zeta) const
    {
        const Complex den = c_ + d_ * zeta;
        return -2.0 * radius_ * d_ * (V_ * c_ - U_ * d_) / (den * den * den);
    }

    /// Left inverse: rho_tilde(phi(zeta)) = zeta.
    Complex left_inverse(const CVec& w) const
    {
        const CVec wu = (w - center_) / radius_;
        if (wu.squaredNorm() >= 1.0) fail(ErrorKind::invalid_argument, "left inverse requires an interior point");
        return h_.inverse()(herm(mobius_ball(anchor_, wu), transported_pole_));
    }

    /// Lempert projection rho = phi o rho_tilde.
    CVec projection(const CVec& w) const { return phi(left_inverse(w)); }

    const CVec& pole() const { return pole_; }
    const CVec& normal() const { return nu_; }
    bool chl() const { return chl_; }
    /// Unit direction v with phi'(1) = <v, nu> v (meaningful when chl()).
    CVec direction() const
    {
        const CVec d1 = phi_prime(1.0);
        return d1 / d1.norm();
    }
    /// Disc reparametrization applied to the transported radial disc.
    const DiscMobius& reparametrization() const { return h_; }

private:
    friend GeodesicDisc make_geodesic(const CVec&, const CVec&, double, const CVec&, bool);

    CVec center_;
    double radius_ = 1.0;
    CVec anchor_;            // unit-ball coordinates of the through-point
    CVec transported_pole_;  // phi_anchor(pole) in unit-ball coordinates
    CVec pole_;
    CVec nu_;
    CVec U_, V_;
    Complex c_, d_;
    DiscMobius h_;
    bool chl_ = false;
};

/// Geodesic of ball(center, radius) through interior z and boundary p.
inline GeodesicDisc make_geodesic(const CVec& center, const CVec& p, double radius, const CVec& z, bool normalize_chl)
{
    const int n = static_cast<int>(p.size());
    if (z.size() != n || center.size() != n) fail(ErrorKind::invalid_argument, "geodesic: dimension mismatch");
    const CVec pu = (p - center) / radius;
    const CVec zu = (z - center) / radius;
    if (std::abs(pu.norm() - 1.0) > boundary_tolerance) fail(ErrorKind::not_on_boundary, "geodesic pole is not on the boundary");
    if (!(zu.squaredNorm() < 1.0)) fail(ErrorKind::invalid_argument, "geodesic through-point must be interior");

    GeodesicDisc g;
    g.center_ = center;
    g.radius_ = radius;
    g.anchor_ = zu;
    g.pole_ = p;
    g.nu_ = pu / pu.norm();
    g.transported_pole_ = mobius_ball(zu, pu);
    g.transported_pole_ /= g.transported_pole_.norm();

    // eta(zeta) = phi_z(zeta p') = (a - zeta B) / (1 - zeta beta)
    const double aa = zu.squaredNorm();
    CVec B;
    if (aa == 0.0) {
        B = g.transported_pole_;
    } else {
        const double s = std::sqrt(1.0 - aa);
        const CVec proj = (herm(g.transported_pole_, zu) / aa) * zu;
        B = proj + s * (g.transported_pole_ - proj);
    }
    const Complex beta = herm(g.transported_pole_, zu);

    auto assemble = [&](const DiscMobius& h) {
        const auto& m = h.m;
        g.h_ = h;
        g.U_ = zu * m[3] - B * m[1];
        g.V_ = zu * m[2] - B * m[0];
        g.c_ = m[3] - beta * m[1];
        g.d_ = m[2] - beta * m[0];
    };
    assemble(DiscMobius{});

    if (normalize_chl) {
        const CVec d1 = g.phi_prime(1.0);
        const CVec d2 = g.phi_second(1.0);
        const Complex t1 = herm(d1, g.nu_);
        if (!(t1.real() > 0.0)) fail(ErrorKind::numerical_failure, "geodesic is not transversal at the pole");
        const double hp = t1.real() / d1.squaredNorm();  // required h'(1)
        const double alpha = 1.0 / hp;
        const double beta_shift = -herm(d2, g.nu_).imag() / t1.real();
        assemble(DiscMobius::fixing_one(alpha, beta_shift));
        g.chl_ = true;
    }
    return g;
}

/// Geodesic of the unit ball through z and p.
inline GeodesicDisc geodesic_through(const CVec& z, const CVec& p, bool normalize_chl)
{
    return make_geodesic(CVec::Zero(p.size()), p, 1.0, z, normalize_chl);
}

/// Geodesic of a round domain through z and p.
inline GeodesicDisc geodesic_through(const DomainSpec& domain, const CVec& z, const CVec& p, bool normalize_chl)
{
    if (!domain.is_round()) fail(ErrorKind::unsupported, "geodesics are available for the disc and balls only");
    return make_geodesic(domain.center(), p, domain.radius(), z, normalize_chl);
}

/// CHL geodesic of ball(center, radius) leaving p in direction v, |v| = 1, <v, nu_p> > 0.
inline GeodesicDisc chl_geodesic(const CVec& center, double radius, const CVec& p, const CVec& v)
{
    const CVec nu = (p - center) / (p - center).norm();
    if (std::abs(v.norm() - 1.0) > 1e-12) fail(ErrorKind::invalid_argument, "CHL direction must be a unit vector");
    const Complex vn = herm(v, nu);
    if (!(vn.real() > 1e-12) || std::abs(vn.imag()) > 1e-12 * std::max(1.0, vn.real()))
        fail(ErrorKind::invalid_argument, "CHL direction must satisfy <v, nu_p> > 0");
    // Center of the slice {p + lambda v} of the ball.
    const CVec z = p - radius * vn.real() * v;
    return make_geodesic(center, p, radius, z, true);
}

inline GeodesicDisc chl_geodesic(const CVec& p, const CVec& v) { return chl_geodesic(CVec::Zero(p.size()), 1.0, p, v); }

inline Complex lempert_left_inverse(const GeodesicDisc& g, const CVec& w) { return g.left_inverse(w); }
inline CVec lempert_projection(const GeodesicDisc& g, const CVec& w) { return g.projection(w); }

/// Largest violation of the CHL conditions at 1.
inline double chl_defect(const GeodesicDisc& g)
{
    const CVec d1 = g.phi_prime(1.0);
    const CVec v = g.direction();
    const Complex vn = herm(v, g.normal());
    double defect = (g.phi(1.0) - g.pole()).norm();
    defect = std::max(defect, (d1 - vn * v).norm());
    defect = std::max(defect, std::abs(vn.imag()));
    defect = std::max(defect, std::abs(herm(g.phi_second(1.0), g.normal()).imag()));
    return defect;
}

/// Polar sample grid in the disc of radius r_max (radii exclude 0 and r_max is the last ring).
inline std::vector<Complex> disc_grid(int rings, int rays, double r_max = 0.9)
{
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(rings * rays));
    for (int i = 1; i <= rings; ++i)
        for (int j = 0; j < rays; ++j) pts.push_back(std::polar(r_max * i / rings, two_pi * (j + 0.5 * (i % 2)) / rays));
    return pts;
}

/// max over the grid of |Omega_p(phi(zeta)) - Re(1/theta(phi'(1))) P(zeta)| for ball(center, radius).
inline double restriction_identity_check(const CVec& center, double radius, const CVec& p, const GeodesicDisc& g,
                                         const std::vector<Complex>& grid)
{
    if ((g.phi(1.0) - p).norm() > 1e-8 * std::max(1.0, radius))
        fail(ErrorKind::invalid_argument, "geodesic is not anchored at the pole");
    const CVec nu = (p - center) / (p - center).norm();
    const Complex theta = herm(g.phi_prime(1.0), nu);
    const double factor = (1.0 / theta).real();
    double dev = 0.0;
    for (Complex zeta : grid) {
        const double lhs = omega_general_ball(center, radius, p, g.phi(zeta)).value();
        dev = std::max(dev, std::abs(lhs - factor * poisson_disc(1.0, zeta)));
    }
    return dev;
}

inline double restriction_identity_check(const CVec& p, const GeodesicDisc& g, const std::vector<Complex>& grid)
{
    return restriction_identity_check(CVec::Zero(p.size()), 1.0, p, g, grid);
}

}  // namespace plurikernel
