#pragma once

#include "plurikernel/core.hpp"
#include "plurikernel/domain_geometry.hpp"
#include "plurikernel/model_kernels.hpp"
#include "plurikernel/parallel.hpp"

#include <functional>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

namespace plurikernel {

using ScalarField = std::function<double(const CVec&)>;

/// Gauss-Legendre nodes and weights on [a, b] (Newton iteration on P_m).
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m, double a = -1.0, double b = 1.0)
{
    if (m < 1) fail(ErrorKind::invalid_argument, "gauss_legendre: need at least one node");
    std::vector<double> x(m), w(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double t = std::cos(pi * (i + 0.75) / (m + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (m == 1) p0 = 1.0;
            const double pm = m == 1 ? t : p1;
            const double pm1 = m == 1 ? 1.0 : p0;
            dp = m * (t * pm - pm1) / (t * t - 1.0);
            const double dt = pm / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        const double wi = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;
        x[m - 1 - i] = t;
        w[i] = w[m - 1 - i] = wi;
    }
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < m; ++i) {
        x[i] = mid + half * x[i];
        w[i] *= half;
    }
    return {x, w};
}

struct QuadratureRule {
    std::vector<CVec> nodes;
    std::vector<double> weights;  // include the boundary-measure density and surface element
    int dimension = 0;
    int resolution = 0;
    CVec center;
    double radius = 1.0;
    std::string descriptor;

    double total_weight() const
    {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }
};

/// Quadrature for the boundary measure of the unit sphere in C^n, n in {1, 2}.
/// n = 1: m-point trapezoid rule. n = 2: Hopf coordinates
/// (cos eta e^{i t1}, sin eta e^{i t2}), m-point Gauss-Legendre in eta times m x m trapezoid.
inline QuadratureRule sphere_quadrature(int n, int m)
{
    if (m < 4) fail(ErrorKind::invalid_argument, "sphere_quadrature: resolution must be at least 4");
    QuadratureRule rule;
    rule.dimension = n;
    rule.resolution = m;
    rule.center = CVec::Zero(n);
    if (n == 1) {
        rule.descriptor = "trapezoid circle m=" + std::to_string(m);
        for (int k = 0; k < m; ++k) {
            rule.nodes.push_back(scalar_point(std::polar(1.0, two_pi * k / m)));
            rule.weights.push_back(two_pi / m);
        }
        return rule;
    }
    if (n != 2) fail(ErrorKind::unsupported, "sphere_quadrature supports n = 1 and n = 2 only");
    rule.descriptor = "hopf gauss-legendre x trapezoid^2 m=" + std::to_string(m);
    const auto [eta, weta] = gauss_legendre(m, 0.0, 0.5 * pi);
    const double dt = two_pi / m;
    const double levi = 2.0;  // Levi density of the unit sphere in C^2
    rule.nodes.reserve(static_cast<std::size_t>(m) * m * m);
    rule.weights.reserve(static_cast<std::size_t>(m) * m * m);
    for (int i = 0; i < m; ++i) {
        const double c = std::cos(eta[i]), s = std::sin(eta[i]);
        const double w = levi * c * s * weta[i] * dt * dt;
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < m; ++k) {
                CVec x(2);
                x << std::polar(c, dt * j), std::polar(s, dt * k);
                rule.nodes.push_back(std::move(x));
                rule.weights.push_back(w);
            }
        }
    }
    return rule;
}

/// Quadrature for a round domain: the sphere rule moved to center + radius * xi, weights times radius^n.
inline QuadratureRule boundary_quadrature(const DomainSpec& domain, int m)
{
    if (!domain.is_round()) fail(ErrorKind::unsupported, "boundary quadrature is available for the disc and balls");
    QuadratureRule rule = sphere_quadrature(domain.dimension(), m);
    const double scale = std::pow(domain.radius(), domain.dimension());
    for (auto& x : rule.nodes) x = domain.center() + domain.radius() * x;
    for (auto& w : rule.weights) w *= scale;
    rule.center = domain.center();
    rule.radius = domain.radius();
    return rule;
}

inline void check_rule_matches(const DomainSpec& domain, const QuadratureRule& rule)
{
    if (!domain.is_round() || rule.dimension != domain.dimension() || rule.radius != domain.radius() ||
        (rule.center - domain.center()).norm() != 0.0)
        fail(ErrorKind::invalid_argument, "quadrature rule was not built for this domain");
}

/// Deterministic sum over nodes: fixed blocks evaluated in parallel, block sums added in order.
template <class F>
double ordered_node_sum(std::size_t count, F&& term)
{
    constexpr std::size_t block = 4096;
    const std::size_t blocks = (count + block - 1) / block;
    const auto partial = parallel_map<double>(blocks, [&](std::size_t b) {
        double s = 0.0, c = 0.0;  // Kahan
        const std::size_t hi = std::min(count, (b + 1) * block);
        for (std::size_t i = b * block; i < hi; ++i) {
            const double y = term(i) - c;
            const double t = s + y;
            c = (t - s) - y;
            s = t;
        }
        return s;
    });
    double s = 0.0;
    for (double v : partial) s += v;
    return s;
}

/// (2 pi)^{-n} sum_i f(xi_i) |Omega_{xi_i}(z)|^n w_i.
inline double reproduce(const DomainSpec& domain, const ScalarField& f, const CVec& z, const QuadratureRule& rule)
{
    check_rule_matches(domain, rule);
    if (!(domain.psi(z) < 0.0)) fail(ErrorKind::invalid_argument, "reproduce: z must be interior");
    const int n = domain.dimension();
    const double sum = ordered_node_sum(rule.nodes.size(), [&](std::size_t i) {
        const double k = -omega_round(domain, rule.nodes[i], z).value();
        return f(rule.nodes[i]) * std::pow(k, n) * rule.weights[i];
    });
    return sum / std::pow(two_pi, n);
}

inline double reproduce(const ScalarField& f, const CVec& z, const QuadratureRule& rule)
{
    return reproduce(rule.dimension == 1 ? DomainSpec::disc() : DomainSpec::unit_ball(rule.dimension), f, z, rule);
}

// ---------------------------------------------------------------------------
// n = 1: Riesz form of the representation formula
//   f(z) = (2 pi)^{-1} int f |P| dtheta - (2 pi)^{-1} int_D |G(z, w)| Laplacian f(w) dA(w),
// i.e. dd^c f is identified with (Laplacian f) dA in this normalization.

struct RieszResult {
    double boundary_term = 0.0;
    double correction = 0.0;  // (2 pi)^{-1} int |G(z, w)| Laplacian f(w) dA(w)
    double result = 0.0;      // boundary_term - correction
};

struct PolarGrid {
    int radial = 200;
    int angular = 200;
};

inline RieszResult riesz_correction_1d(const ScalarField& f, const ScalarField& laplacian, const CVec& z,
                                       const QuadratureRule& rule, PolarGrid grid = {})
{
    if (rule.dimension != 1) fail(ErrorKind::invalid_argument, "riesz_correction_1d requires n = 1");
    if (z.size() != 1 || !(std::abs(z(0)) < 1.0)) fail(ErrorKind::invalid_argument, "z must be a point of the disc");
    if (grid.radial < 2 || grid.angular < 4) fail(ErrorKind::invalid_argument, "polar grid too coarse");
    RieszResult out;
    out.boundary_term = reproduce(DomainSpec::disc(), f, z, rule);

    // Substituting w = phi_z(u) puts the logarithmic singularity at u = 0:
    // int |log|u|| Laplacian f(phi_z(u)) |phi_z'(u)|^2 dA(u).
    const Complex a = z(0);
    const auto [r, wr] = gauss_legendre(grid.radial, 0.0, 1.0);
    const double dt = two_pi / grid.angular;
    const double jac0 = (1.0 - std::norm(a)) * (1.0 - std::norm(a));
    const double sum = ordered_node_sum(static_cast<std::size_t>(grid.radial) * grid.angular, [&](std::size_t idx) {
        const int i = static_cast<int>(idx / grid.angular);
        const int j = static_cast<int>(idx % grid.angular);
        const Complex u = std::polar(r[i], dt * j);
        const Complex den = 1.0 - std::conj(a) * u;
        const Complex w = (a - u) / den;
        const double jac = jac0 / std::norm(den * den);
        return -std::log(r[i]) * laplacian(scalar_point(w)) * jac * r[i] * wr[i] * dt;
    });
    out.correction = sum / two_pi;
    out.result = out.boundary_term - out.correction;
    return out;
}

/// Five-point finite-difference Laplacian of a field on C.
inline ScalarField finite_difference_laplacian(ScalarField f, double h = 1e-4)
{
    return [f = std::move(f), h](const CVec& w) {
        const Complex c = w(0);
        const double center = f(w);
        const double s = f(scalar_point(c + h)) + f(scalar_point(c - h)) + f(scalar_point(c + Complex(0, h))) +
                         f(scalar_point(c - Complex(0, h)));
        return (s - 4.0 * center) / (h * h);
    };
}

/// CSV export: re/im of each node coordinate, then the weight.
inline void write_quadrature_csv(std::ostream& os, const QuadratureRule& rule)
{
    for (int j = 1; j <= rule.dimension; ++j) os << "re_z" << j << ",im_z" << j << ',';
    os << "weight\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        for (int j = 0; j < rule.dimension; ++j) os << rule.nodes[i](j).real() << ',' << rule.nodes[i](j).imag() << ',';
        os << rule.weights[i] << '\n';
    }
}

}  // namespace plurikernel
