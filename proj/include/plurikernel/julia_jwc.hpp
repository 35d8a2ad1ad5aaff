#pragma once

// Boundary dilation coefficients, horoball inclusion and
// Julia-Wolff-Caratheodory probes for maps between the disc and unit balls.
// Kernels use the couple theta_p(v) = <v, p>; the compatible geodesic at p is
// zeta -> zeta p with left inverse z -> <z, p>.

#include "plurikernel/core.hpp"
#include "plurikernel/domain_geometry.hpp"
#include "plurikernel/envelope_bounds.hpp"
#include "plurikernel/extrapolation.hpp"
#include "plurikernel/holomorphic_map.hpp"
#include "plurikernel/model_kernels.hpp"
#include "plurikernel/parallel.hpp"

#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace plurikernel {

inline constexpr double divergence_threshold = 1e6;

/// Limit of a sequence sampled at s_k = 2^{-k}; finite only when the tail is Cauchy and bounded.
struct RayLimit {
    bool finite = false;
    double limit = std::numeric_limits<double>::infinity();
    double error_estimate = std::numeric_limits<double>::infinity();
    std::vector<double> s;
    std::vector<double> samples;
};

inline RayLimit classify_ray_sequence(std::vector<double> s, std::vector<double> samples, double exponent_step = 1.0)
{
    RayLimit out;
    out.s = std::move(s);
    out.samples = std::move(samples);
    const auto& v = out.samples;
    if (v.size() < 3) fail(ErrorKind::invalid_argument, "ray sequence needs at least three samples");
    for (double x : v)
        if (!std::isfinite(x)) return out;
    const double last = v.back();
    const double step = std::abs(v[v.size() - 1] - v[v.size() - 2]);
    if (std::abs(last) > divergence_threshold || step > 1e-4 * std::max(1.0, std::abs(last))) return out;
    const Extrapolated ex = richardson_limit(v, exponent_step);
    out.finite = true;
    out.limit = ex.limit;
    out.error_estimate = ex.error_estimate;
    return out;
}

inline void require_unit_sphere_point(const CVec& p, int n, const char* what)
{
    if (p.size() != n) fail(ErrorKind::invalid_argument, std::string(what) + " has the wrong dimension");
    if (std::abs(p.norm() - 1.0) > boundary_tolerance)
        fail(ErrorKind::not_on_boundary, std::string(what) + " is not on the unit sphere");
}

/// Omega_{D, p}(z) / Omega_{D', q}(f(z)).
inline double kernel_ratio(const HolomorphicMap& f, const CVec& p, const CVec& q, const CVec& z)
{
    const double num = omega_ball(p, z).value();
    const double den = omega_ball(q, f.checked(z)).value();
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

// ---------------------------------------------------------------------------
// Horoballs

enum class Membership { inside, outside, undetermined };

inline const char* to_string(Membership m)
{
    switch (m) {
    case Membership::inside: return "inside";
    case Membership::outside: return "outside";
    case Membership::undetermined: return "undetermined";
    }
    return "undetermined";
}

/// H(p, R) = {z : Omega_p(z) < -1/R}.
struct Horoball {
    DomainSpec domain;
    CVec pole;
    double radius = 1.0;

    Horoball(DomainSpec d, CVec p, double R) : domain(std::move(d)), pole(std::move(p)), radius(R)
    {
        if (!(R > 0.0)) fail(ErrorKind::invalid_argument, "horoball radius must be positive");
        require_boundary(domain, pole, boundary_tolerance);
    }

    /// Exact for round domains; for ellipsoids decided by the sandwich interval.
    Membership classify(const CVec& z) const
    {
        if (!(domain.psi(z) < 0.0)) return Membership::outside;
        const KernelValue k = sandwich_bounds(domain, pole, z);
        const double level = -1.0 / radius;
        if (k.hi < level) return Membership::inside;
        if (k.lo >= level) return Membership::outside;
        return Membership::undetermined;
    }

    bool contains(const CVec& z) const { return classify(z) == Membership::inside; }
};

/// Uniform samples of a horoball of the disc or unit ball by rejection from its
/// bounding box: in coordinates with p = e1 the horoball is
/// (1 + R)|z1 - 1/(1+R)|^2 + R|z'|^2 < R^2/(1+R).
inline std::vector<CVec> sample_horoball(const Horoball& h, std::size_t count, Rng& rng)
{
    const auto kind = h.domain.kind();
    if (kind != DomainKind::disc && kind != DomainKind::unit_ball)
        fail(ErrorKind::unsupported, "horoball sampling is available for the disc and the unit ball");
    const int n = h.domain.dimension();
    const double R = h.radius;
    const double c = 1.0 / (1.0 + R), rho = R / (1.0 + R), rho_t = std::sqrt(R / (1.0 + R));
    const CMat U = unitary_sending_e1_to(h.pole);
    std::vector<CVec> out;
    out.reserve(count);
    std::size_t attempts = 0;
    while (out.size() < count) {
        if (++attempts > 1000 * (count + 10)) fail(ErrorKind::numerical_failure, "horoball rejection sampling stalled");
        CVec w(n);
        w(0) = c + rho * random_ball_point(1, rng)(0);
        if (n > 1) w.tail(n - 1) = random_ball_point(n - 1, rng, rho_t);
        const CVec z = U * w;
        if (h.classify(z) == Membership::inside) out.push_back(z);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Boundary dilation coefficient

struct SamplingPlan {
    int k_first = 1;
    int k_last = 20;       // grid radii 1 - 2^{-k}
    int directions = 32;   // grid directions besides p
    std::uint64_t seed = 1;
    int ray_k_first = 2;   // normal ray z_k = p - 2^{-k} nu_p
    int ray_k_last = 20;
};

struct JuliaReport {
    double lambda_estimate = 0.0;  // sup of the kernel ratio over the grid and the normal ray
    double normal_ray_limit = std::numeric_limits<double>::infinity();
    double normal_ray_error = std::numeric_limits<double>::infinity();
    bool finite = false;
    CVec q;
    std::size_t grid_points = 0;
    std::vector<std::pair<double, double>> ray_samples;  // (s, ratio)
    std::vector<std::string> inclusion_violations;
    std::size_t undetermined_count = 0;
};

inline RayLimit normal_ray_ratio(const HolomorphicMap& f, const CVec& p, const CVec& q, int k_first = 2, int k_last = 20)
{
    std::vector<double> s, v;
    for (int k = k_first; k <= k_last; ++k) {
        s.push_back(std::ldexp(1.0, -k));
        v.push_back(kernel_ratio(f, p, q, (1.0 - s.back()) * p));
    }
    return classify_ray_sequence(std::move(s), std::move(v));
}

inline JuliaReport lambda_estimate(const HolomorphicMap& f, const CVec& p, const CVec& q, SamplingPlan plan = {})
{
    const int n = f.source_dimension(), m = f.target_dimension();
    require_unit_sphere_point(p, n, "p");
    require_unit_sphere_point(q, m, "q");
    if (plan.k_first < 1 || plan.k_last < plan.k_first || plan.k_last > 40 || plan.directions < 0)
        fail(ErrorKind::invalid_argument, "invalid sampling plan");

    std::vector<CVec> dirs{p};
    if (n == 1) {
        for (int j = 1; j <= plan.directions; ++j) dirs.push_back(p * std::polar(1.0, two_pi * j / (plan.directions + 1)));
    } else {
        Rng rng(plan.seed);
        for (int j = 0; j < plan.directions; ++j) dirs.push_back(random_unit_vector(n, rng));
    }
    std::vector<CVec> grid;
    grid.push_back(CVec::Zero(n));
    for (int k = plan.k_first; k <= plan.k_last; ++k)
        for (const auto& u : dirs) grid.push_back((1.0 - std::ldexp(1.0, -k)) * u);

    const auto ratios = parallel_map<double>(grid.size(), [&](std::size_t i) { return kernel_ratio(f, p, q, grid[i]); });

    JuliaReport r;
    r.q = q;
    r.grid_points = grid.size();
    for (double x : ratios) r.lambda_estimate = std::max(r.lambda_estimate, x);
    const RayLimit ray = normal_ray_ratio(f, p, q, plan.ray_k_first, plan.ray_k_last);
    for (std::size_t i = 0; i < ray.s.size(); ++i) {
        r.ray_samples.emplace_back(ray.s[i], ray.samples[i]);
        r.lambda_estimate = std::max(r.lambda_estimate, ray.samples[i]);
    }
    r.finite = ray.finite;
    r.normal_ray_limit = ray.limit;
    r.normal_ray_error = ray.error_estimate;
    if (!r.finite) r.lambda_estimate = std::numeric_limits<double>::infinity();
    return r;
}

// ---------------------------------------------------------------------------
// Horoball inclusion f(H(p, R)) in H(q, lambda R)

struct InclusionViolation {
    CVec z;
    double R = 0.0;
    double margin = 0.0;  // -1/(lambda R) - Omega_q(f(z)); negative means violated
};

struct InclusionReport {
    std::size_t samples = 0;
    std::vector<InclusionViolation> violations;
    std::size_t undetermined_count = 0;
    double min_relative_margin = std::numeric_limits<double>::infinity();  // margin * lambda R
};

inline InclusionReport horoball_inclusion_check(const HolomorphicMap& f, const CVec& p, const CVec& q, double lambda,
                                                const std::vector<double>& radii, std::size_t samples_per_horoball,
                                                std::uint64_t seed = 1)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda)) fail(ErrorKind::invalid_argument, "lambda must be finite and positive");
    require_unit_sphere_point(p, f.source_dimension(), "p");
    require_unit_sphere_point(q, f.target_dimension(), "q");
    InclusionReport rep;
    Rng rng(seed);
    for (double R : radii) {
        const Horoball h(f.source(), p, R);
        const auto zs = sample_horoball(h, samples_per_horoball, rng);
        const auto margins = parallel_map<double>(zs.size(), [&](std::size_t i) {
            return -1.0 / (lambda * R) - omega_ball(q, f.checked(zs[i])).value();
        });
        for (std::size_t i = 0; i < zs.size(); ++i) {
            const double rel = margins[i] * lambda * R;
            rep.min_relative_margin = std::min(rep.min_relative_margin, rel);
            if (rel < -1e-12) rep.violations.push_back({zs[i], R, margins[i]});
        }
        rep.samples += zs.size();
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Julia-Wolff-Caratheodory probes

struct ProbeTrace {
    std::string name;
    bool applicable = true;
    std::vector<double> t;
    std::vector<Complex> values;  // complex for probes 1 and 3, norms for 2 and 4
    double max_abs = 0.0;         // over every approach direction
    Complex limit = 0.0;          // along the normal direction (probes 1-3)
    double limit_error = 0.0;
    double cone_spread = 0.0;     // largest distance between direction-wise limits
};

struct JwcProbeReport {
    std::array<ProbeTrace, 4> probes;
    double lambda = 0.0;
    std::size_t directions = 0;
};

/// Directions p - s d in a Euclidean cone with slope `aperture` around the inward normal.
inline std::vector<CVec> cone_directions(const CVec& p, double aperture)
{
    const int n = static_cast<int>(p.size());
    const Complex I(0.0, 1.0);
    std::vector<CVec> dirs{p};
    if (aperture > 0.0) {
        dirs.push_back(p + aperture * I * p);
        dirs.push_back(p - aperture * I * p);
        if (n > 1) {
            const CMat T = complex_orthogonal_complement(p);
            dirs.push_back(p + aperture * T.col(0));
            dirs.push_back(p - aperture * T.col(0));
        }
    }
    return dirs;
}

inline JwcProbeReport jwc_derivative_probes(const HolomorphicMap& f, const CVec& p, const CVec& q, double aperture,
                                            int k_first = 2, int k_last = 20, std::vector<CVec> directions = {})
{
    const int n = f.source_dimension();
    require_unit_sphere_point(p, n, "p");
    require_unit_sphere_point(q, f.target_dimension(), "q");
    if (!(aperture >= 0.0)) fail(ErrorKind::invalid_argument, "aperture must be nonnegative");
    if (k_first < 1 || k_last - k_first < 3 || k_last > 40) fail(ErrorKind::invalid_argument, "invalid t-grid");

    const RayLimit lam = normal_ray_ratio(f, p, q, k_first, k_last);
    if (!lam.finite) {
        std::ostringstream ctx;
        ctx << "last kernel ratio " << lam.samples.back();
        fail(ErrorKind::invalid_argument, "boundary dilation coefficient is infinite; probes refused", ctx.str());
    }
    if (directions.empty()) directions = cone_directions(p, aperture);
    for (const auto& d : directions) {
        if (!(herm(d, p).real() > 1e-12))
            fail(ErrorKind::invalid_argument, "approach direction is tangential to the boundary (Re theta(d) <= 0)");
    }

    const CMat T = n > 1 ? complex_orthogonal_complement(p) : CMat(n, 0);
    const CVec tau = n > 1 ? CVec(T.col(0)) : CVec();

    JwcProbeReport rep;
    rep.lambda = lam.limit;
    rep.directions = directions.size();
    const char* names[4] = {"d(rho_q o f)(v_p)", "|1-rho_p|^(1/2) d(f - pi_q f)(v_p)",
                            "|1-rho_p|^(-1/2) d(rho_q o f)(tau_p)", "d(f - pi_q f)(tau_p)"};
    for (int j = 0; j < 4; ++j) {
        rep.probes[j].name = names[j];
        rep.probes[j].applicable = j < 2 || n > 1;
    }

    for (std::size_t di = 0; di < directions.size(); ++di) {
        std::array<std::vector<Complex>, 4> vals;
        std::vector<double> ts;
        for (int k = k_first; k <= k_last; ++k) {
            const double s = std::ldexp(1.0, -k);
            const CVec z = p - s * directions[di];
            if (!(z.squaredNorm() < 1.0))
                fail(ErrorKind::invalid_argument, "approach point leaves the domain; reduce the aperture");
            const CMat J = f.jacobian(z);
            (void)f.checked(z);
            const double gap = std::abs(1.0 - herm(z, p));
            const CVec Jv = J * p;
            const Complex a1 = herm(Jv, q);
            vals[0].push_back(a1);
            vals[1].push_back(std::sqrt(gap) * (Jv - a1 * q).norm());
            if (n > 1) {
                const CVec Jt = J * tau;
                const Complex a3 = herm(Jt, q);
                vals[2].push_back(a3 / std::sqrt(gap));
                vals[3].push_back((Jt - a3 * q).norm());
            } else {
                vals[2].push_back(0.0);
                vals[3].push_back(0.0);
            }
            ts.push_back(1.0 - s);
        }
        for (int j = 0; j < 4; ++j) {
            auto& pr = rep.probes[j];
            for (const auto& v : vals[j]) pr.max_abs = std::max(pr.max_abs, std::abs(v));
            if (j == 3) {
                if (di == 0) {
                    pr.t = ts;
                    pr.values = vals[j];
                }
                continue;
            }
            std::vector<double> re, im;
            for (const auto& v : vals[j]) {
                re.push_back(v.real());
                im.push_back(v.imag());
            }
            const double step = j == 0 ? 1.0 : 0.5;
            const Extrapolated er = richardson_limit(re, step), ei = richardson_limit(im, step);
            const Complex lim(er.limit, ei.limit);
            if (di == 0) {
                pr.t = ts;
                pr.values = vals[j];
                pr.limit = lim;
                pr.limit_error = std::hypot(er.error_estimate, ei.error_estimate);
            } else {
                pr.cone_spread = std::max(pr.cone_spread, std::abs(lim - pr.limit));
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Equivalence of the three boundary conditions

struct ConditionReport {
    RayLimit lambda;          // (1) kernel ratio along the normal ray
    RayLimit kobayashi_gap;   // (2) k_D(z0, z) - k_D'(f(z), z0')
    RayLimit distance_ratio;  // (3) dist(f(z), bD') / dist(z, bD)
    bool agree = false;       // all finite or all infinite
    bool values_consistent = false;  // finite case: (3) = lambda, and exp(2 (2)) = lambda when z0 = z0' = 0
};

inline ConditionReport condition_equivalence_check(const HolomorphicMap& f, const CVec& p, const CVec& z0,
                                                   const CVec& z0_target, int k_first = 2, int k_last = 20,
                                                   double rel_tol = 1e-4)
{
    const int n = f.source_dimension();
    require_unit_sphere_point(p, n, "p");
    if (z0.size() != n || !(z0.squaredNorm() < 1.0) || z0_target.size() != f.target_dimension() ||
        !(z0_target.squaredNorm() < 1.0))
        fail(ErrorKind::invalid_argument, "base points must be interior points of the source and target");

    std::vector<double> s, gap, dist;
    std::vector<CVec> images;
    for (int k = k_first; k <= k_last; ++k) {
        s.push_back(std::ldexp(1.0, -k));
        const CVec z = (1.0 - s.back()) * p;
        const CVec w = f.checked(z);
        images.push_back(w);
        gap.push_back(kobayashi_ball(z0, z) - kobayashi_ball(w, z0_target));
        const double zd = (1.0 - z.squaredNorm()) / (1.0 + z.norm());
        const double wd = (1.0 - w.squaredNorm()) / (1.0 + w.norm());
        dist.push_back(wd / zd);
    }

    ConditionReport rep;
    // The boundary point q is the limit of f along the ray.
    const CVec w_last = images.back();
    const bool reaches_boundary = 1.0 - w_last.norm() < 1e-3;
    if (reaches_boundary) {
        const CVec q = w_last / w_last.norm();
        rep.lambda = normal_ray_ratio(f, p, q, k_first, k_last);
    } else {
        rep.lambda.s = s;
        rep.lambda.finite = false;
    }
    rep.kobayashi_gap = classify_ray_sequence(s, gap);
    rep.distance_ratio = classify_ray_sequence(s, dist);
    const bool all_finite = rep.lambda.finite && rep.kobayashi_gap.finite && rep.distance_ratio.finite;
    const bool all_infinite = !rep.lambda.finite && !rep.kobayashi_gap.finite && !rep.distance_ratio.finite;
    rep.agree = all_finite || all_infinite;
    if (all_finite) {
        const double lam = rep.lambda.limit;
        bool ok = std::abs(rep.distance_ratio.limit - lam) <= rel_tol * lam;
        if (z0.norm() == 0.0 && z0_target.norm() == 0.0)
            ok = ok && std::abs(std::exp(2.0 * rep.kobayashi_gap.limit) - lam) <= rel_tol * lam;
        rep.values_consistent = ok;
    } else {
        rep.values_consistent = all_infinite;
    }
    return rep;
}

/// Omega_q(f(z_k)) along z_k = p - 2^{-k} nu_p.
inline std::vector<double> e_sequence_kernel_values(const HolomorphicMap& f, const CVec& p, const CVec& q, int k_first = 1,
                                                    int k_last = 20)
{
    std::vector<double> out;
    for (int k = k_first; k <= k_last; ++k) out.push_back(omega_ball(q, f.checked((1.0 - std::ldexp(1.0, -k)) * p)).value());
    return out;
}

}  // namespace plurikernel
