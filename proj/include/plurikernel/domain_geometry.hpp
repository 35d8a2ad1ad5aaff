#pragma once

// Strongly pseudoconvex domains given by defining functions, and the
// boundary differential data derived from them: outward normals, complex
// tangent frames, Levi forms, boundary measure densities, curvature radii and
// distances to the boundary.

#include "plurikernel/core.hpp"
#include "plurikernel/expression.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace plurikernel {

// ---------------------------------------------------------------------------
// Real/complex coordinate conversion: z_j = x_j + i y_j  <->  (x_1, y_1, x_2, y_2, ...)

inline RVec to_real(const CVec& z)
{
    RVec x(2 * z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        x(2 * j) = z(j).real();
        x(2 * j + 1) = z(j).imag();
    }
    return x;
}

inline CVec to_complex(const RVec& x)
{
    CVec z(x.size() / 2);
    for (Eigen::Index j = 0; j < z.size(); ++j) z(j) = Complex(x(2 * j), x(2 * j + 1));
    return z;
}

enum class DomainKind { disc, unit_ball, ball, ellipsoid, custom };

inline const char* to_string(DomainKind kind)
{
    switch (kind) {
    case DomainKind::disc: return "disc";
    case DomainKind::unit_ball: return "unit_ball";
    case DomainKind::ball: return "ball";
    case DomainKind::ellipsoid: return "ellipsoid";
    case DomainKind::custom: return "custom";
    }
    return "unknown";
}

/// Value, real gradient and real Hessian of the defining function in the
/// coordinates (x_1, y_1, ..., x_n, y_n).
struct RealJet {
    double value = 0.0;
    RVec gradient;
    RMat hessian;
};

/// Value, complex gradient (d psi / d z_j) and complex Hessian
/// (d^2 psi / d z_i d conj(z_j)).
struct PsiJet {
    double value = 0.0;
    CVec gradient;
    CMat hessian;
};

/// Finite-difference steps used for custom defining functions.
struct DifferenceSteps {
    double gradient = 1e-6;
    double hessian = 1e-4;
};

class DomainSpec {
public:
    using ScalarField = std::function<double(const CVec&)>;

    static DomainSpec disc()
    {
        DomainSpec d(DomainKind::disc, 1);
        d.center_ = CVec::Zero(1);
        return d;
    }

    static DomainSpec unit_ball(int n)
    {
        if (n < 1) fail(ErrorKind::invalid_argument, "unit_ball: dimension must be positive");
        DomainSpec d(DomainKind::unit_ball, n);
        d.center_ = CVec::Zero(n);
        return d;
    }

    static DomainSpec ball(const CVec& center, double radius)
    {
        if (center.size() < 1) fail(ErrorKind::invalid_argument, "ball: empty center");
        if (!(radius > 0.0) || !std::isfinite(radius))
            fail(ErrorKind::invalid_argument, "ball: radius must be positive");
        DomainSpec d(DomainKind::ball, static_cast<int>(center.size()));
        d.center_ = center;
        d.radius_ = radius;
        return d;
    }

    /// Axis-aligned ellipsoid sum_j a_j |z_j|^2 < 1.
    static DomainSpec ellipsoid(const RVec& a)
    {
        if (a.size() < 1) fail(ErrorKind::invalid_argument, "ellipsoid: no coefficients");
        for (Eigen::Index j = 0; j < a.size(); ++j)
            if (!(a(j) > 0.0) || !std::isfinite(a(j)))
                fail(ErrorKind::invalid_argument, "ellipsoid: coefficients must be positive");
        DomainSpec d(DomainKind::ellipsoid, static_cast<int>(a.size()));
        d.center_ = CVec::Zero(a.size());
        d.axes_ = a;
        return d;
    }

    /// Custom domain {psi < 0}; `reference` must be an interior point.
    static DomainSpec custom(int n, ScalarField psi, const CVec& reference, std::string description,
                             DifferenceSteps steps = {})
    {
        if (n < 1) fail(ErrorKind::invalid_argument, "custom: dimension must be positive");
        if (reference.size() != n) fail(ErrorKind::invalid_argument, "custom: reference point has wrong dimension");
        DomainSpec d(DomainKind::custom, n);
        d.center_ = reference;
        d.psi_ = std::make_shared<ScalarField>(std::move(psi));
        d.description_ = std::move(description);
        d.steps_ = steps;
        const double v = d.psi(reference);
        if (!(v < 0.0))
            fail(ErrorKind::invalid_argument, "custom: defining function is not negative at the reference point",
                 d.description_);
        return d;
    }

    static DomainSpec custom_expression(int n, const std::string& psi_text, const CVec& reference)
    {
        auto expr = std::make_shared<Expression>(Expression::parse(psi_text, n));
        return custom(
            n, [expr](const CVec& z) { return expr->evaluate_real(z); }, reference, psi_text);
    }

    DomainKind kind() const { return kind_; }
    int dimension() const { return n_; }
    bool is_round() const { return kind_ == DomainKind::disc || kind_ == DomainKind::unit_ball || kind_ == DomainKind::ball; }
    bool is_builtin() const { return kind_ != DomainKind::custom; }

    /// Center for round kinds; reference interior point otherwise.
    const CVec& center() const { return center_; }
    CVec reference_point() const { return center_; }
    double radius() const { return radius_; }
    const RVec& axes() const { return axes_; }
    const std::string& description() const { return description_; }
    const DifferenceSteps& steps() const { return steps_; }

    double psi(const CVec& z) const
    {
        check_dim(z);
        double v = 0.0;
        switch (kind_) {
        case DomainKind::disc:
        case DomainKind::unit_ball: v = z.squaredNorm() - 1.0; break;
        case DomainKind::ball: v = (z - center_).squaredNorm() - radius_ * radius_; break;
        case DomainKind::ellipsoid:
            for (int j = 0; j < n_; ++j) v += axes_(j) * std::norm(z(j));
            v -= 1.0;
            break;
        case DomainKind::custom: v = (*psi_)(z); break;
        }
        if (!std::isfinite(v))
            fail(ErrorKind::malformed_function, "defining function is not finite", description_);
        return v;
    }

    RealJet real_jet(const CVec& z) const
    {
        check_dim(z);
        const int m = 2 * n_;
        RealJet jet;
        jet.value = psi(z);
        if (kind_ == DomainKind::custom) return finite_difference_jet(z, jet.value);

        const RVec x = to_real(z);
        const RVec c = to_real(center_);
        jet.gradient = RVec(m);
        jet.hessian = RMat::Zero(m, m);
        for (int k = 0; k < m; ++k) {
            const double w = kind_ == DomainKind::ellipsoid ? axes_(k / 2) : 1.0;
            jet.gradient(k) = 2.0 * w * (x(k) - c(k));
            jet.hessian(k, k) = 2.0 * w;
        }
        return jet;
    }

private:
    DomainSpec(DomainKind kind, int n) : kind_(kind), n_(n) {}

    void check_dim(const CVec& z) const
    {
        if (z.size() != n_)
            fail(ErrorKind::invalid_argument, "point dimension " + std::to_string(z.size()) +
                                                  " does not match domain dimension " + std::to_string(n_));
    }

    RealJet finite_difference_jet(const CVec& z, double value) const
    {
        const int m = 2 * n_;
        const RVec x = to_real(z);
        auto f = [&](const RVec& y) { return psi(to_complex(y)); };
        RealJet jet;
        jet.value = value;
        jet.gradient = RVec(m);
        jet.hessian = RMat(m, m);

        const double hg = steps_.gradient;
        for (int k = 0; k < m; ++k) {
            RVec xp = x, xm = x;
            xp(k) += hg;
            xm(k) -= hg;
            jet.gradient(k) = (f(xp) - f(xm)) / (2.0 * hg);
        }
        const double h = steps_.hessian;
        for (int k = 0; k < m; ++k) {
            RVec xp = x, xm = x;
            xp(k) += h;
            xm(k) -= h;
            jet.hessian(k, k) = (f(xp) - 2.0 * value + f(xm)) / (h * h);
            for (int l = k + 1; l < m; ++l) {
                RVec pp = x, pm = x, mp = x, mm = x;
                pp(k) += h; pp(l) += h;
                pm(k) += h; pm(l) -= h;
                mp(k) -= h; mp(l) += h;
                mm(k) -= h; mm(l) -= h;
                const double d = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
                jet.hessian(k, l) = d;
                jet.hessian(l, k) = d;
            }
        }
        return jet;
    }

    DomainKind kind_;
    int n_;
    CVec center_;
    double radius_ = 1.0;
    RVec axes_;
    std::shared_ptr<const ScalarField> psi_;
    std::string description_;
    DifferenceSteps steps_;
};

// ---------------------------------------------------------------------------
// psi_jet

inline PsiJet psi_jet(const DomainSpec& domain, const CVec& z)
{
    const RealJet rj = domain.real_jet(z);
    const int n = domain.dimension();
    PsiJet jet;
    jet.value = rj.value;
    jet.gradient = CVec(n);
    jet.hessian = CMat(n, n);
    for (int j = 0; j < n; ++j)
        jet.gradient(j) = 0.5 * Complex(rj.gradient(2 * j), -rj.gradient(2 * j + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double xx = rj.hessian(2 * i, 2 * j);
            const double yy = rj.hessian(2 * i + 1, 2 * j + 1);
            const double xy = rj.hessian(2 * i, 2 * j + 1);
            const double yx = rj.hessian(2 * i + 1, 2 * j);
            jet.hessian(i, j) = 0.25 * Complex(xx + yy, xy - yx);
        }
    }
    if (!jet.gradient.allFinite() || !jet.hessian.allFinite())
        fail(ErrorKind::malformed_function, "defining function derivatives are not finite", domain.description());
    return jet;
}

// ---------------------------------------------------------------------------
// Boundary frames

/// Boundary data at p. The defining couple is the canonical one,
/// theta_p(v) = <v, nu_p>, whose coefficients are conj(nu_p).
struct BoundaryFrame {
    CVec p;
    CVec nu;
    CMat tangent_basis;  // n x (n-1), orthonormal columns spanning the complex tangent space
    CMat levi;           // (n-1) x (n-1) Hermitian
    CVec theta_coeffs;   // theta(v) = sum_j theta_coeffs(j) * v(j)
    double gradient_norm = 0.0;  // |d psi| at p

    Complex theta(const CVec& v) const { return theta_coeffs.transpose() * v; }
};

inline void require_boundary(const DomainSpec& domain, const CVec& p, double tol)
{
    const double v = domain.psi(p);
    if (std::abs(v) >= tol) {
        std::ostringstream ctx;
        ctx << "psi(p) = " << v << ", tolerance " << tol;
        fail(ErrorKind::not_on_boundary, "point is not on the boundary", ctx.str());
    }
}

/// Orthonormal basis (columns) of the Hermitian orthogonal complement of the unit vector nu.
inline CMat complex_orthogonal_complement(const CVec& nu)
{
    const int n = static_cast<int>(nu.size());
    CMat basis(n, std::max(0, n - 1));
    int filled = 0;
    for (int k = 0; k < n && filled < n - 1; ++k) {
        CVec v = basis_vector(n, k);
        v -= herm(v, nu) * nu;
        for (int j = 0; j < filled; ++j) v -= herm(v, basis.col(j)) * basis.col(j);
        const double vn = v.norm();
        if (vn < 1e-8) continue;
        basis.col(filled++) = v / vn;
    }
    return basis;
}

inline BoundaryFrame boundary_frame(const DomainSpec& domain, const CVec& p, double tol = boundary_tolerance)
{
    require_boundary(domain, p, tol);
    const RealJet rj = domain.real_jet(p);
    const double gnorm = rj.gradient.norm();
    if (!(gnorm > 1e-8))
        fail(ErrorKind::degenerate_geometry, "defining function has zero gradient on the boundary");

    const PsiJet jet = psi_jet(domain, p);
    BoundaryFrame frame;
    frame.p = p;
    frame.gradient_norm = gnorm;
    frame.nu = to_complex(rj.gradient) / gnorm;
    frame.tangent_basis = complex_orthogonal_complement(frame.nu);
    // Levi(u) = sum H_ij u_i conj(u_j); in the basis T: M = T^T H conj(T).
    frame.levi = frame.tangent_basis.transpose() * jet.hessian * frame.tangent_basis.conjugate();
    frame.levi = 0.5 * (frame.levi + frame.levi.adjoint()).eval();
    frame.theta_coeffs = frame.nu.conjugate();
    return frame;
}

/// Density of the boundary measure omega against surface volume:
/// 4^{n-1} (n-1)! det(Levi psi) / |d psi|^{n-1}.
inline double levi_density(const DomainSpec& domain, const CVec& p, double tol = boundary_tolerance)
{
    const BoundaryFrame frame = boundary_frame(domain, p, tol);
    const int n = domain.dimension();
    double det = 1.0;
    if (n > 1) {
        Eigen::SelfAdjointEigenSolver<CMat> es(frame.levi);
        const RVec ev = es.eigenvalues();
        if (ev.minCoeff() <= 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff()))
            fail(ErrorKind::degenerate_geometry, "Levi form is not positive definite (strong pseudoconvexity fails)");
        det = ev.prod();
    }
    double factorial = 1.0;
    for (int k = 2; k <= n - 1; ++k) factorial *= k;
    return std::pow(4.0, n - 1) * factorial * det / std::pow(frame.gradient_norm, n - 1);
}

// ---------------------------------------------------------------------------
// Tangent balls and osculating radii

/// Maximum of sum q_i y_i^2 - 2 sum b_i y_i over the closed unit ball, q_i >= 0.
/// Solved through the secular equation of the trust-region problem, including
/// the degenerate ("hard") case.
inline double max_convex_quadratic_on_unit_ball(const RVec& q, const RVec& b)
{
    const Eigen::Index m = q.size();
    const double qmax = q.maxCoeff();
    const double scale = std::max(1.0, qmax);
    auto in_top = [&](Eigen::Index i) { return q(i) >= qmax - 1e-14 * scale; };

    double top_b2 = 0.0;
    double s_rest = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        if (in_top(i)) top_b2 += b(i) * b(i);
        else s_rest += b(i) * b(i) / ((qmax - q(i)) * (qmax - q(i)));
    }
    auto objective = [&](const RVec& y) { return (q.array() * y.array().square()).sum() - 2.0 * b.dot(y); };

    if (top_b2 <= 1e-30 && s_rest <= 1.0) {
        RVec y = RVec::Zero(m);
        Eigen::Index top = 0;
        for (Eigen::Index i = 0; i < m; ++i) {
            if (in_top(i)) top = i;
            else y(i) = -b(i) / (qmax - q(i));
        }
        y(top) = std::sqrt(std::max(0.0, 1.0 - s_rest));
        return objective(y);
    }

    auto secular = [&](double mu) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) s += b(i) * b(i) / ((mu - q(i)) * (mu - q(i)));
        return s;
    };
    double lo = qmax;
    double hi = qmax + b.norm() + 1.0;
    for (int it = 0; it < 400 && hi - lo > 1e-16 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (secular(mid) > 1.0) lo = mid;
        else hi = mid;
    }
    const double mu = hi;
    RVec y(m);
    for (Eigen::Index i = 0; i < m; ++i) y(i) = -b(i) / (mu - q(i));
    return objective(y);
}

/// Whether the ball of radius r internally tangent to the boundary at p lies in
/// the closed domain. Exact for round kinds and ellipsoids.
inline bool tangent_ball_inside(const DomainSpec& domain, const BoundaryFrame& frame, double r, double rel_tol = 1e-10)
{
    if (domain.is_round()) return r <= domain.radius() * (1.0 + rel_tol);
    if (domain.kind() != DomainKind::ellipsoid)
        fail(ErrorKind::containment_not_certified, "tangent ball containment is only certified for balls and ellipsoids");
    const RVec c = to_real(frame.p - r * frame.nu);
    const int m = static_cast<int>(c.size());
    RVec q(m), b(m);
    double base = 0.0;
    for (int k = 0; k < m; ++k) {
        const double a = domain.axes()(k / 2);
        q(k) = r * r * a;
        b(k) = -r * a * c(k);
        base += a * c(k) * c(k);
    }
    return base + max_convex_quadratic_on_unit_ball(q, b) <= 1.0 + rel_tol;
}

/// Whether the ball of radius R tangent at p (center p - R nu) contains the domain.
inline bool tangent_ball_contains(const DomainSpec& domain, const BoundaryFrame& frame, double R, double rel_tol = 1e-10)
{
    if (domain.is_round()) return R >= domain.radius() * (1.0 - rel_tol);
    if (domain.kind() != DomainKind::ellipsoid)
        fail(ErrorKind::containment_not_certified, "tangent ball containment is only certified for balls and ellipsoids");
    const RVec c = to_real(frame.p - R * frame.nu);
    const int m = static_cast<int>(c.size());
    RVec q(m), b(m);
    for (int k = 0; k < m; ++k) {
        const double a = domain.axes()(k / 2);
        q(k) = 1.0 / a;
        b(k) = c(k) / std::sqrt(a);
    }
    return c.squaredNorm() + max_convex_quadratic_on_unit_ball(q, b) <= R * R * (1.0 + rel_tol);
}

struct OsculatingRadii {
    double r_in = 0.0;
    double r_out = 0.0;  // +infinity when some normal curvature is not positive
    bool local_only = true;   // true unless both tangent balls are certified globally
    bool inner_certified = false;
    bool outer_certified = false;
};

/// Principal curvatures of the boundary at p (eigenvalues of the second
/// fundamental form, positive for convex boundaries), ascending.
inline RVec principal_curvatures(const DomainSpec& domain, const CVec& p, double tol = boundary_tolerance)
{
    require_boundary(domain, p, tol);
    const RealJet rj = domain.real_jet(p);
    const double gnorm = rj.gradient.norm();
    if (!(gnorm > 1e-8))
        fail(ErrorKind::degenerate_geometry, "defining function has zero gradient on the boundary");
    const RVec normal = rj.gradient / gnorm;
    const int m = static_cast<int>(normal.size());
    // Householder reflection sending the normal to the last axis; its first m-1 columns span the tangent space.
    RVec w = normal - RVec::Unit(m, m - 1);
    RMat Q = RMat::Identity(m, m);
    if (w.norm() > 1e-14) {
        w.normalize();
        Q -= 2.0 * w * w.transpose();
    }
    const RMat T = Q.leftCols(m - 1);
    RMat S = T.transpose() * rj.hessian * T / gnorm;
    S = 0.5 * (S + S.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<RMat> es(S);
    return es.eigenvalues();
}

inline OsculatingRadii osculating_radii(const DomainSpec& domain, const CVec& p, double tol = boundary_tolerance)
{
    const RVec kappa = principal_curvatures(domain, p, tol);
    OsculatingRadii out;
    const double kmax = kappa.maxCoeff();
    const double kmin = kappa.minCoeff();
    if (!(kmax > 0.0))
        fail(ErrorKind::degenerate_geometry, "boundary has no positive normal curvature at p");
    out.r_in = 1.0 / kmax;
    out.r_out = kmin > 0.0 ? 1.0 / kmin : std::numeric_limits<double>::infinity();
    if (domain.is_round() || domain.kind() == DomainKind::ellipsoid) {
        const BoundaryFrame frame = boundary_frame(domain, p, tol);
        out.inner_certified = tangent_ball_inside(domain, frame, out.r_in);
        out.outer_certified = std::isfinite(out.r_out) && tangent_ball_contains(domain, frame, out.r_out);
    }
    out.local_only = !(out.inner_certified && out.outer_certified);
    return out;
}

// ---------------------------------------------------------------------------
// Boundary sampling and distance

/// Boundary point on the ray origin + s*dir, s > 0, for origin inside the domain.
inline CVec boundary_along_ray(const DomainSpec& domain, const CVec& origin, const CVec& dir)
{
    if (!(domain.psi(origin) < 0.0)) fail(ErrorKind::invalid_argument, "ray origin is not inside the domain");
    double lo = 0.0, hi = 1e-3;
    int guard = 0;
    while (domain.psi(origin + hi * dir) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 80) fail(ErrorKind::numerical_failure, "domain appears unbounded along the ray");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (domain.psi(origin + mid * dir) < 0.0) lo = mid;
        else hi = mid;
    }
    // Choose the endpoint with the smaller |psi|.
    const CVec a = origin + lo * dir, b = origin + hi * dir;
    return std::abs(domain.psi(a)) <= std::abs(domain.psi(b)) ? a : b;
}

inline CVec sample_boundary(const DomainSpec& domain, Rng& rng)
{
    const int n = domain.dimension();
    const CVec u = random_unit_vector(n, rng);
    switch (domain.kind()) {
    case DomainKind::disc:
    case DomainKind::unit_ball:
    case DomainKind::ball: return domain.center() + domain.radius() * u;
    case DomainKind::ellipsoid: {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += domain.axes()(j) * std::norm(u(j));
        return u / std::sqrt(s);
    }
    case DomainKind::custom: return boundary_along_ray(domain, domain.reference_point(), u);
    }
    return u;
}

/// Nearest boundary point by Newton iteration on the Lagrange system
/// x - z = mu grad psi(x), psi(x) = 0, started from several ray projections.
inline CVec nearest_boundary_point(const DomainSpec& domain, const CVec& z)
{
    const int n = domain.dimension();
    const int m = 2 * n;
    const RVec zr = to_real(z);

    std::vector<RVec> starts;
    const bool inside = domain.psi(z) < 0.0;
    const CVec origin = inside ? z : domain.reference_point();
    for (int k = 0; k < m; ++k) {
        for (double sgn : {1.0, -1.0}) {
            RVec d = RVec::Zero(m);
            d(k) = sgn;
            starts.push_back(to_real(boundary_along_ray(domain, origin, to_complex(d))));
        }
    }
    const CVec radial = z - domain.reference_point();
    if (radial.norm() > 1e-12)
        starts.push_back(to_real(boundary_along_ray(domain, domain.reference_point(), radial / radial.norm())));

    std::ostringstream trace;
    double best = std::numeric_limits<double>::infinity();
    RVec best_x;
    for (std::size_t s = 0; s < starts.size(); ++s) {
        RVec x = starts[s];
        RealJet jet = domain.real_jet(to_complex(x));
        double mu = (x - zr).dot(jet.gradient) / std::max(1e-300, jet.gradient.squaredNorm());
        bool converged = false;
        double res = 0.0;
        for (int it = 0; it < 100; ++it) {
            RVec F(m + 1);
            F.head(m) = x - zr - mu * jet.gradient;
            F(m) = jet.value;
            res = F.norm();
            if (res < 1e-13 * std::max(1.0, zr.norm())) {
                converged = true;
                break;
            }
            RMat J = RMat::Zero(m + 1, m + 1);
            J.topLeftCorner(m, m) = RMat::Identity(m, m) - mu * jet.hessian;
            J.topRightCorner(m, 1) = -jet.gradient;
            J.bottomLeftCorner(1, m) = jet.gradient.transpose();
            const RVec step = J.fullPivLu().solve(-F);
            double lambda = 1.0;
            for (int bt = 0; bt < 30; ++bt) {
                const RVec xn = x + lambda * step.head(m);
                const double mun = mu + lambda * step(m);
                const RealJet jn = domain.real_jet(to_complex(xn));
                RVec Fn(m + 1);
                Fn.head(m) = xn - zr - mun * jn.gradient;
                Fn(m) = jn.value;
                if (Fn.norm() < res || bt == 29) {
                    x = xn;
                    mu = mun;
                    jet = jn;
                    break;
                }
                lambda *= 0.5;
            }
        }
        trace << "start " << s << ": residual " << res << (converged ? " (converged)" : " (no convergence)") << "; ";
        if (converged) {
            const double d = (x - zr).norm();
            if (d < best) {
                best = d;
                best_x = x;
            }
        }
    }
    if (!std::isfinite(best))
        fail(ErrorKind::numerical_failure, "nearest boundary point iteration did not converge", trace.str());
    return to_complex(best_x);
}

/// Signed Euclidean distance to the boundary: negative inside, zero on the boundary.
inline double signed_boundary_distance(const DomainSpec& domain, const CVec& z)
{
    if (domain.is_round()) return (z - domain.center()).norm() - domain.radius();
    const double v = domain.psi(z);
    if (v == 0.0) return 0.0;
    const double d = (nearest_boundary_point(domain, z) - z).norm();
    return v < 0.0 ? -d : d;
}

}  // namespace plurikernel
