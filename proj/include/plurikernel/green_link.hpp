#pragma once

#include "plurikernel/core.hpp"
#include "plurikernel/domain_geometry.hpp"
#include "plurikernel/extrapolation.hpp"
#include "plurikernel/model_kernels.hpp"
#include "plurikernel/parallel.hpp"

#include <functional>
#include <sstream>
#include <utility>
#include <vector>

namespace plurikernel {

struct NormalDerivativeResult {
    double value = 0.0;  // -dG/dnu_p, extrapolated
    double error_estimate = 0.0;
    std::vector<std::pair<double, double>> step_sequence;  // (h, G(z, p - h nu) / h)
    double lipschitz_estimate = 0.0;  // max |q(h) - q(h/2)| / h
};

struct NormalDerivativeOptions {
    double h0 = 1e-3;
    int halvings = 8;
};

/// Green function of a round domain with pole z evaluated at w.
inline ExtReal green_round(const DomainSpec& domain, const CVec& z, const CVec& w)
{
    if (!domain.is_round()) fail(ErrorKind::unsupported, "closed-form Green function requires the disc or a ball");
    return green_ball((z - domain.center()) / domain.radius(), (w - domain.center()) / domain.radius());
}

/// Limit of q(h) = g(h)/h as h -> 0+, with h = h0 2^{-k}, k = 0..halvings.
/// Fails with a numerical error when successive differences do not contract.
inline NormalDerivativeResult one_sided_quotient_limit(const std::function<double(double)>& g,
                                                       NormalDerivativeOptions opt = {})
{
    if (!(opt.h0 > 0.0) || opt.halvings < 2) fail(ErrorKind::invalid_argument, "need h0 > 0 and at least 2 halvings");
    NormalDerivativeResult out;
    std::vector<double> q;
    for (int k = 0; k <= opt.halvings; ++k) {
        const double h = std::ldexp(opt.h0, -k);
        q.push_back(g(h) / h);
        out.step_sequence.emplace_back(h, q.back());
    }

    // First-order convergence: successive differences shrink roughly by half.
    std::vector<double> diffs;
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
        diffs.push_back(std::abs(q[k] - q[k + 1]));
        out.lipschitz_estimate = std::max(out.lipschitz_estimate, diffs.back() / out.step_sequence[k].first);
    }
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(q.back()) / out.step_sequence.back().first;
    for (std::size_t k = 0; k + 1 < diffs.size(); ++k) {
        if (!std::isfinite(diffs[k + 1]) || diffs[k + 1] > 0.75 * diffs[k] + noise) {
            std::ostringstream ctx;
            ctx << "differences";
            for (double d : diffs) ctx << ' ' << d;
            fail(ErrorKind::numerical_failure, "normal difference quotients are not Cauchy", ctx.str());
        }
    }
    const Extrapolated ex = richardson_limit(q, 1.0);
    out.value = ex.limit;
    out.error_estimate = ex.error_estimate;
    return out;
}

/// -dG(z, .)/dnu_p from one-sided quotients G(z, p - h nu)/h, Richardson-extrapolated.
inline NormalDerivativeResult normal_derivative_green(const DomainSpec& domain, const CVec& z, const CVec& p,
                                                      NormalDerivativeOptions opt = {})
{
    if (!domain.is_round()) fail(ErrorKind::unsupported, "normal_derivative_green requires the disc or a ball");
    if (!(domain.psi(z) < 0.0)) fail(ErrorKind::invalid_argument, "pole z must be interior");
    const BoundaryFrame frame = boundary_frame(domain, p);
    if ((z - p).norm() <= opt.h0) fail(ErrorKind::invalid_argument, "pole z is too close to p for the initial step");
    return one_sided_quotient_limit(
        [&](double h) { return green_round(domain, z, p - h * frame.nu).value(); }, opt);
}

/// max |(-dG/dnu_p)(z) - Omega_p(z)| over (z, p) samples.
inline double green_omega_identity_check(const DomainSpec& domain, const std::vector<std::pair<CVec, CVec>>& samples,
                                         NormalDerivativeOptions opt = {})
{
    const auto dev = parallel_map<double>(samples.size(), [&](std::size_t i) {
        const auto& [z, p] = samples[i];
        const double lhs = normal_derivative_green(domain, z, p, opt).value;
        return std::abs(lhs - omega_round(domain, p, z).value());
    });
    double worst = 0.0;
    for (double d : dev) worst = std::max(worst, d);
    return worst;
}

/// Density of the Demailly measure of G(z, .) against surface volume at p:
/// (dG/dnu_p)^n times the Levi density.
inline double demailly_density(const DomainSpec& domain, const CVec& z, const CVec& p, NormalDerivativeOptions opt = {})
{
    const double dn = -normal_derivative_green(domain, z, p, opt).value;
    if (!(dn > 0.0)) fail(ErrorKind::numerical_failure, "normal derivative of the Green function is not positive");
    return std::pow(dn, domain.dimension()) * levi_density(domain, p);
}

/// The same density from the closed-form kernel, |Omega_p(z)|^n times the Levi density.
inline double demailly_density_closed(const DomainSpec& domain, const CVec& z, const CVec& p)
{
    return std::pow(std::abs(omega_round(domain, p, z).value()), domain.dimension()) * levi_density(domain, p);
}

}  // namespace plurikernel
