#pragma once

#include "plurikernel/core.hpp"
#include "plurikernel/domain_geometry.hpp"
#include "plurikernel/extrapolation.hpp"

#include <functional>
#include <string>
#include <vector>

namespace plurikernel {

enum class Provenance { closed_form, sandwich_interval, envelope_lower_bound };

inline const char* to_string(Provenance p)
{
    switch (p) {
    case Provenance::closed_form: return "closed_form";
    case Provenance::sandwich_interval: return "sandwich_interval";
    case Provenance::envelope_lower_bound: return "envelope_lower_bound";
    }
    return "unknown";
}

/// A kernel evaluation: an exact value (lo == hi) or an enclosing interval.
struct KernelValue {
    double lo = 0.0;
    double hi = 0.0;
    Provenance provenance = Provenance::closed_form;

    static KernelValue exact(double v) { return {v, v, Provenance::closed_form}; }

    static KernelValue interval(double lo, double hi, Provenance prov)
    {
        if (!(lo <= hi)) fail(ErrorKind::numerical_failure, "kernel interval with lo > hi");
        return {lo, hi, prov};
    }

    bool is_exact() const { return lo == hi; }
    double value() const { return is_exact() ? lo : 0.5 * (lo + hi); }
};

// ---------------------------------------------------------------------------
// Disc

/// Negative Poisson kernel of the unit disc, -(1 - |zeta|^2) / |p - zeta|^2.
inline double poisson_disc(Complex p, Complex zeta)
{
    if (std::abs(std::abs(p) - 1.0) > boundary_tolerance)
        fail(ErrorKind::not_on_boundary, "poisson_disc: pole is not unimodular");
    if (!(std::abs(zeta) < 1.0)) fail(ErrorKind::invalid_argument, "poisson_disc: |zeta| >= 1");
    return -(1.0 - std::norm(zeta)) / std::norm(p - zeta);
}

// ---------------------------------------------------------------------------
// Balls

namespace detail {

inline double omega_unit_ball_raw(const CVec& p, const CVec& z)
{
    const double zz = z.squaredNorm();
    if (zz > 1.0 + boundary_tolerance) fail(ErrorKind::invalid_argument, "kernel point lies outside the closed ball");
    const double den = std::norm(1.0 - herm(z, p));
    if (den == 0.0) fail(ErrorKind::invalid_argument, "kernel evaluated at its pole");
    const double gap = 1.0 - zz;
    // Points within rounding of the sphere are boundary points, where the kernel extends by 0.
    if (gap <= 8.0 * std::numeric_limits<double>::epsilon()) return 0.0;
    return -gap / den;
}

inline void check_pole(const CVec& p, const CVec& z)
{
    if (p.size() != z.size()) fail(ErrorKind::invalid_argument, "pole and point dimensions differ");
    if (std::abs(p.norm() - 1.0) > boundary_tolerance) fail(ErrorKind::not_on_boundary, "pole is not on the unit sphere");
}

}  // namespace detail

/// Pluricomplex Poisson kernel of the unit ball with the standard couple.
inline KernelValue omega_ball(const CVec& p, const CVec& z)
{
    detail::check_pole(p, z);
    return KernelValue::exact(detail::omega_unit_ball_raw(p, z));
}

inline KernelValue omega_general_ball(const CVec& center, double radius, const CVec& p, const CVec& z)
{
    if (!(radius > 0.0)) fail(ErrorKind::invalid_argument, "ball radius must be positive");
    const CVec pu = (p - center) / radius;
    const CVec zu = (z - center) / radius;
    detail::check_pole(pu, zu);
    return KernelValue::exact(detail::omega_unit_ball_raw(pu, zu) / radius);
}

/// Closed-form kernel for round domains (disc, unit ball, ball).
inline KernelValue omega_round(const DomainSpec& domain, const CVec& p, const CVec& z)
{
    if (!domain.is_round()) fail(ErrorKind::unsupported, "closed-form kernel requires a disc or ball");
    return omega_general_ball(domain.center(), domain.radius(), p, z);
}

/// Kernel for the couple rho * theta: Omega^{rho theta} = Omega^{theta} / rho.
inline double rescale_couple(double value, double rho)
{
    if (!(rho > 0.0)) fail(ErrorKind::invalid_argument, "couple scale must be positive");
    return value / rho;
}

/// Involutive automorphism phi_a of the ball: phi_a(a) = 0, phi_0(w) = -w.
inline CVec mobius_ball(const CVec& a, const CVec& w)
{
    if (a.size() != w.size()) fail(ErrorKind::invalid_argument, "mobius_ball: dimension mismatch");
    const double aa = a.squaredNorm();
    if (!(aa < 1.0)) fail(ErrorKind::invalid_argument, "mobius_ball: anchor must lie inside the ball");
    const Complex den = 1.0 - herm(w, a);
    if (aa == 0.0) return -w;
    const Complex wa = herm(w, a);
    const CVec proj = (wa / aa) * a;
    const double s = std::sqrt(1.0 - aa);
    return (a - proj - s * (w - proj)) / den;
}

/// Derivative of phi_a at w applied to v.
inline CVec mobius_ball_derivative(const CVec& a, const CVec& w, const CVec& v)
{
    const double aa = a.squaredNorm();
    if (aa == 0.0) return -v;
    const double s = std::sqrt(1.0 - aa);
    auto A = [&](const CVec& x) {
        const CVec proj = (herm(x, a) / aa) * a;
        return CVec(proj + s * (x - proj));
    };
    const Complex den = 1.0 - herm(w, a);
    return (-A(v) * den + (a - A(w)) * herm(v, a)) / (den * den);
}

/// 1 - |phi_z(w)|^2 computed without cancellation.
inline double mobius_complement(const CVec& z, const CVec& w)
{
    return (1.0 - z.squaredNorm()) * (1.0 - w.squaredNorm()) / std::norm(1.0 - herm(w, z));
}

/// Kobayashi distance of the disc or unit ball: artanh |phi_z(w)|.
inline double kobayashi_ball(const CVec& z, const CVec& w)
{
    if (z.size() != w.size()) fail(ErrorKind::invalid_argument, "kobayashi: dimension mismatch");
    if (!(z.squaredNorm() < 1.0) || !(w.squaredNorm() < 1.0))
        fail(ErrorKind::invalid_argument, "kobayashi: points must be interior");
    const double c = mobius_complement(z, w);
    const double m = std::sqrt(std::max(0.0, 1.0 - c));
    return std::log1p(m) - 0.5 * std::log(c);
}

inline double kobayashi(const DomainSpec& domain, const CVec& z, const CVec& w)
{
    if (domain.kind() != DomainKind::disc && domain.kind() != DomainKind::unit_ball)
        fail(ErrorKind::unsupported, "kobayashi distance is available for the disc and the unit ball");
    return kobayashi_ball(z, w);
}

/// Pluricomplex Green function of the unit ball, log |phi_z(w)|.
inline ExtReal green_ball(const CVec& z, const CVec& w)
{
    if (z.size() != w.size()) fail(ErrorKind::invalid_argument, "green: dimension mismatch");
    if (!(z.squaredNorm() < 1.0) || w.squaredNorm() > 1.0 + boundary_tolerance)
        fail(ErrorKind::invalid_argument, "green: pole must be interior and the point in the closed ball");
    if (z == w) return ExtReal::negative_infinity();
    const double c = std::min(1.0, std::max(0.0, mobius_complement(z, w)));
    if (c >= 1.0) return ExtReal::negative_infinity();
    return 0.5 * std::log1p(-c);
}

// ---------------------------------------------------------------------------
// Boundary limits along curves

struct BoundaryCurve {
    std::function<CVec(double)> gamma;
    CVec gamma_prime_at_1;
};

struct BoundaryLimit {
    double estimate = 0.0;
    double error_estimate = 0.0;
    double predicted = 0.0;  // -2 Re[theta(gamma'(1))]^{-1}
    std::vector<double> t;
    std::vector<double> samples;  // kernel(gamma(t)) * (1 - t)
};

/// Richardson estimate of lim kernel(gamma(t)) (1 - t) on t_k = 1 - 2^{-k}.
inline BoundaryLimit boundary_limit(const std::function<double(const CVec&)>& kernel, const BoundaryFrame& frame,
                                    const BoundaryCurve& curve, int k_first = 2, int k_last = 20)
{
    if (k_first < 1 || k_last > 40 || k_last <= k_first)
        fail(ErrorKind::invalid_argument, "boundary_limit: need 1 <= k_first < k_last <= 40");
    const Complex th = frame.theta(curve.gamma_prime_at_1);
    if (!(th.real() > 1e-12))
        fail(ErrorKind::invalid_argument, "boundary_limit: curve is not transversal (Re theta(gamma'(1)) <= 0)");
    BoundaryLimit out;
    out.predicted = -2.0 * (1.0 / th).real();
    out.t = geometric_t_grid(k_first, k_last);
    for (double t : out.t) out.samples.push_back(kernel(curve.gamma(t)) * (1.0 - t));
    const Extrapolated ex = richardson_limit(out.samples, 1.0);
    out.estimate = ex.limit;
    out.error_estimate = ex.error_estimate;
    return out;
}

// ---------------------------------------------------------------------------
// Biholomorphisms and pullbacks

/// Registered biholomorphisms with boundary extension.
class Biholomorphism {
public:
    using Map = std::function<CVec(const CVec&)>;
    using Jacobian = std::function<CMat(const CVec&)>;

    static Biholomorphism identity(int n)
    {
        return {"identity", [](const CVec& z) { return z; }, [n](const CVec&) { return CMat(CMat::Identity(n, n)); },
                [](const CVec& w) { return w; }};
    }

    static Biholomorphism unitary(const CMat& U)
    {
        if (U.rows() != U.cols() || !(U.adjoint() * U).isIdentity(1e-10))
            fail(ErrorKind::invalid_argument, "unitary biholomorphism requires a unitary matrix");
        return {"unitary", [U](const CVec& z) { return CVec(U * z); }, [U](const CVec&) { return U; },
                [U](const CVec& w) { return CVec(U.adjoint() * w); }};
    }

    /// phi_a on the unit ball (an involution).
    static Biholomorphism ball_automorphism(const CVec& a)
    {
        if (!(a.squaredNorm() < 1.0)) fail(ErrorKind::invalid_argument, "automorphism anchor must be interior");
        const int n = static_cast<int>(a.size());
        return {"ball_auto", [a](const CVec& z) { return mobius_ball(a, z); },
                [a, n](const CVec& z) {
                    CMat J(n, n);
                    for (int j = 0; j < n; ++j) J.col(j) = mobius_ball_derivative(a, z, basis_vector(n, j));
                    return J;
                },
                [a](const CVec& w) { return mobius_ball(a, w); }};
    }

    /// z -> c + r U z, mapping the unit ball onto ball(c, r).
    static Biholomorphism affine(const CVec& c, double r, const CMat& U)
    {
        if (!(r > 0.0)) fail(ErrorKind::invalid_argument, "affine biholomorphism requires r > 0");
        if (U.rows() != c.size() || !(U.adjoint() * U).isIdentity(1e-10))
            fail(ErrorKind::invalid_argument, "affine biholomorphism requires a unitary linear part");
        return {"affine", [c, r, U](const CVec& z) { return CVec(c + r * (U * z)); },
                [r, U](const CVec&) { return CMat(r * U); },
                [c, r, U](const CVec& w) { return CVec(U.adjoint() * (w - c) / r); }};
    }

    const std::string& name() const { return name_; }
    CVec operator()(const CVec& z) const { return map_(z); }
    CMat jacobian(const CVec& z) const { return jac_(z); }
    CVec inverse(const CVec& w) const { return inv_(w); }

private:
    Biholomorphism(std::string name, Map map, Jacobian jac, Map inv)
        : name_(std::move(name)), map_(std::move(map)), jac_(std::move(jac)), inv_(std::move(inv))
    {
    }

    std::string name_;
    Map map_;
    Jacobian jac_;
    Map inv_;
};

struct PulledBackKernel {
    std::function<double(const CVec&)> evaluate;  // z -> Omega_{D', q}(F(z))
    CVec pole;                                    // F^{-1}(q)
    CVec theta_coeffs;                            // F^*(theta): v -> theta_q(dF v)

    /// Scale rho with F^*(theta) = rho * theta_std at the pulled-back pole.
    double couple_scale(const CVec& nu_pole) const { return (theta_coeffs.transpose() * nu_pole).value().real(); }
};

inline PulledBackKernel pullback_kernel(const Biholomorphism& F, std::function<double(const CVec&)> kernel_q,
                                        const CVec& q, const CVec& theta_q)
{
    PulledBackKernel out;
    out.pole = F.inverse(q);
    const CMat J = F.jacobian(out.pole);
    out.theta_coeffs = J.transpose() * theta_q;
    out.evaluate = [F, kernel_q = std::move(kernel_q)](const CVec& z) { return kernel_q(F(z)); };
    return out;
}

}  // namespace plurikernel
