// A short walk through the library: kernels, bounds, geodesics, Green
// functions, boundary quadrature and the Julia-type coefficient.

#include "plurikernel/plurikernel.hpp"

#include <cstdio>

using namespace plurikernel;

int main()
{
    const DomainSpec ball = DomainSpec::unit_ball(2);
    const CVec e1 = basis_vector(2, 0);

    std::printf("Omega_{B^2,e1}(0)            = %.6f\n", omega_round(ball, e1, CVec::Zero(2)).value());
    std::printf("Omega_{B^2,e1}(0.5 e1)       = %.6f\n", omega_round(ball, e1, 0.5 * e1).value());

    RVec a(2);
    a << 1.0, 2.0;
    const DomainSpec ellipsoid = DomainSpec::ellipsoid(a);
    const KernelValue kv = sandwich_bounds(ellipsoid, e1, 0.5 * e1);
    std::printf("ellipsoid (1,2), z = 0.5 e1  in [%.6f, %.6f] (%s)\n", kv.lo, kv.hi, to_string(kv.provenance));

    CVec v(2);
    v << 1.0, Complex(0.0, 0.4);
    const GeodesicDisc g = chl_geodesic(e1, v.normalized());
    std::printf("restriction identity defect  = %.3e\n", restriction_identity_check(e1, g, disc_grid(10, 20)));

    CVec z(2);
    z << 0.2, Complex(0.1, 0.1);
    const auto dn = normal_derivative_green(ball, z, e1, {});
    std::printf("-dG/dnu at e1                = %.10f (Omega = %.10f)\n", dn.value, omega_round(ball, e1, z).value());

    const QuadratureRule rule = sphere_quadrature(2, 64);
    const ScalarField f = [](const CVec& w) { return (w(0) * w(1)).real(); };
    std::printf("reproduce Re(z1 z2) at z     = %.12f (direct %.12f)\n", reproduce(f, z, rule), f(z));

    const auto blaschke = HolomorphicMap::blaschke(0.5);
    const CVec one = scalar_point(1.0);
    const JuliaReport rep = lambda_estimate(blaschke, one, one);
    std::printf("lambda for (z+1/2)/(1+z/2)   = %.10f\n", rep.normal_ray_limit);
    const auto inc = horoball_inclusion_check(blaschke, one, one, rep.normal_ray_limit, {0.1, 1.0, 10.0}, 200);
    std::printf("horoball inclusion           = %zu violations in %zu samples\n", inc.violations.size(), inc.samples);
    return 0;
}
