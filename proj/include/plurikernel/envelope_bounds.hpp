#pragma once

// Two-sided bounds for the pluricomplex Poisson kernel of convex domains:
// explicit members of the defining family give lower bounds, tangent balls
// give an enclosing interval.

#include "plurikernel/core.hpp"
#include "plurikernel/domain_geometry.hpp"
#include "plurikernel/extrapolation.hpp"
#include "plurikernel/model_kernels.hpp"
#include "plurikernel/parallel.hpp"

#include <functional>
#include <string>
#include <vector>

namespace plurikernel {

enum class CandidateKind { peak_poisson, ball_restriction };

inline const char* to_string(CandidateKind k)
{
    return k == CandidateKind::peak_poisson ? "peak_poisson" : "ball_restriction";
}

struct CandidateMember {
    std::function<double(const CVec&)> evaluate;
    CandidateKind kind = CandidateKind::peak_poisson;
    CVec pole;
    std::string metadata;
};

inline bool is_convex_kind(const DomainSpec& d) { return d.kind() != DomainKind::custom; }

/// u(z) = P(exp(<z - p, nu_p>)), the disc Poisson kernel with pole 1 composed with a peak function at p.
inline CandidateMember peak_candidate(const DomainSpec& domain, const CVec& p)
{
    if (!is_convex_kind(domain))
        fail(ErrorKind::unsupported, "peak candidate requires a convex built-in domain (ball or ellipsoid)");
    const BoundaryFrame frame = boundary_frame(domain, p);
    CandidateMember m;
    m.kind = CandidateKind::peak_poisson;
    m.pole = p;
    m.metadata = "h(z) = exp(<z - p, nu_p>), peak slope 1";
    m.evaluate = [p, nu = frame.nu](const CVec& z) {
        const Complex h = std::exp(herm(z - p, nu));
        if (!(std::abs(h) < 1.0)) {
            if (std::abs(h - 1.0) == 0.0) fail(ErrorKind::invalid_argument, "peak candidate evaluated at its pole");
            if (std::abs(h) > 1.0 + 1e-12) fail(ErrorKind::invalid_argument, "peak candidate evaluated outside the domain");
            return 0.0;
        }
        return -(1.0 - std::norm(h)) / std::norm(1.0 - h);
    };
    return m;
}

// ---------------------------------------------------------------------------
// Certified tangent balls

struct TangentBalls {
    double r_in = 0.0;
    double r_out = 0.0;
    CVec center_in;
    CVec center_out;
    CVec nu;
};

/// Tangent balls at p certified to satisfy B_in in closure(D) in B_out. Starts from
/// the osculating radii and shrinks (grows) them when global containment fails.
inline TangentBalls certified_tangent_balls(const DomainSpec& domain, const CVec& p)
{
    if (!is_convex_kind(domain))
        fail(ErrorKind::containment_not_certified,
             "tangent ball containment cannot be certified for custom domains; use lower_envelope");
    const BoundaryFrame frame = boundary_frame(domain, p);
    const OsculatingRadii osc = osculating_radii(domain, p);
    double r_in = osc.r_in;
    if (!osc.inner_certified) {
        double lo = 0.0, hi = r_in;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (tangent_ball_inside(domain, frame, mid, 0.0)) lo = mid;
            else hi = mid;
        }
        r_in = lo;
    }
    double r_out = osc.r_out;
    if (!osc.outer_certified) {
        double lo = std::isfinite(r_out) ? r_out : 1.0;
        double hi = lo;
        while (!tangent_ball_contains(domain, frame, hi, 0.0)) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e12) fail(ErrorKind::containment_not_certified, "no circumscribed tangent ball found");
        }
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (tangent_ball_contains(domain, frame, mid, 0.0)) hi = mid;
            else lo = mid;
        }
        r_out = hi;
    }
    if (!(r_in > 0.0)) fail(ErrorKind::containment_not_certified, "no inscribed tangent ball found");
    return {r_in, r_out, p - r_in * frame.nu, p - r_out * frame.nu, frame.nu};
}

/// Restriction of the circumscribed tangent ball's kernel, a member of the family for D.
inline CandidateMember ball_restriction_candidate(const DomainSpec& domain, const CVec& p)
{
    const TangentBalls tb = certified_tangent_balls(domain, p);
    CandidateMember m;
    m.kind = CandidateKind::ball_restriction;
    m.pole = p;
    m.metadata = "circumscribed tangent ball radius " + std::to_string(tb.r_out);
    m.evaluate = [p, c = tb.center_out, r = tb.r_out](const CVec& z) { return omega_general_ball(c, r, p, z).value(); };
    return m;
}

inline double lower_envelope(const std::vector<CandidateMember>& candidates, const CVec& z)
{
    if (candidates.empty()) fail(ErrorKind::invalid_argument, "lower_envelope: empty candidate list");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) best = std::max(best, c.evaluate(z));
    return best;
}

inline double lower_envelope(const DomainSpec& domain, const CVec& p, const CVec& z,
                             const std::vector<CandidateMember>& candidates)
{
    if (!(domain.psi(z) < 0.0)) fail(ErrorKind::invalid_argument, "lower_envelope: z must be interior");
    for (const auto& c : candidates)
        if ((c.pole - p).norm() > 1e-12) fail(ErrorKind::invalid_argument, "candidate has a different pole");
    return lower_envelope(candidates, z);
}

/// The upper bound g(z, p): kernel of the inscribed tangent ball inside it, 0 outside.
inline double inscribed_upper_bound(const TangentBalls& tb, const CVec& p, const CVec& z)
{
    if ((z - tb.center_in).norm() >= tb.r_in) return 0.0;
    return omega_general_ball(tb.center_in, tb.r_in, p, z).value();
}

inline double inscribed_upper_bound(const DomainSpec& domain, const CVec& p, const CVec& z)
{
    return inscribed_upper_bound(certified_tangent_balls(domain, p), p, z);
}

/// Enclosing interval [Omega_{B_out}(z), g(z, p)] for Omega_{D, p}(z).
inline KernelValue sandwich_bounds(const DomainSpec& domain, const CVec& p, const CVec& z)
{
    if (!(domain.psi(z) < 0.0)) fail(ErrorKind::invalid_argument, "sandwich_bounds: z must be interior");
    if (domain.is_round()) return omega_round(domain, p, z);
    const TangentBalls tb = certified_tangent_balls(domain, p);
    const double lo = omega_general_ball(tb.center_out, tb.r_out, p, z).value();
    const double hi = inscribed_upper_bound(tb, p, z);
    return KernelValue::interval(lo, hi, Provenance::sandwich_interval);
}

/// Richardson limit of candidate(p - s nu) * s as s -> 0 (s = 2^{-k}).
inline Extrapolated candidate_normal_limit(const CandidateMember& c, const CVec& nu, int k_first = 2, int k_last = 20)
{
    std::vector<double> samples;
    for (int k = k_first; k <= k_last; ++k) {
        const double s = std::ldexp(1.0, -k);
        samples.push_back(c.evaluate(c.pole - s * nu) * s);
    }
    return richardson_limit(samples, 1.0);
}

/// max over (z, p) in K x P of |peak_candidate(p)(z)|; bounds sup_p |Omega_p(z)| on K.
inline double uniform_bound_check(const DomainSpec& domain, const std::vector<CVec>& K, const std::vector<CVec>& P)
{
    if (K.empty() || P.empty()) fail(ErrorKind::invalid_argument, "uniform_bound_check: empty grid or sample");
    for (const auto& z : K)
        if (!(domain.psi(z) < -boundary_tolerance)) fail(ErrorKind::invalid_argument, "compact set K touches the boundary");
    std::vector<CandidateMember> peaks;
    peaks.reserve(P.size());
    for (const auto& p : P) peaks.push_back(peak_candidate(domain, p));
    const auto per_z = parallel_map<double>(K.size(), [&](std::size_t i) {
        double m = 0.0;
        for (const auto& c : peaks) m = std::max(m, std::abs(c.evaluate(K[i])));
        return m;
    });
    double best = 0.0;
    for (double v : per_z) best = std::max(best, v);
    return best;
}

}  // namespace plurikernel
