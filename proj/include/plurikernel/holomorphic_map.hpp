#pragma once

// Holomorphic maps between the disc / unit balls, built from registered
// primitives and composition. Jacobians are analytic for every primitive;
// maps supplied as plain functions get a four-point contour difference.

#include "plurikernel/core.hpp"
#include "plurikernel/domain_geometry.hpp"
#include "plurikernel/model_kernels.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace plurikernel {

/// The disc for n = 1, the unit ball otherwise.
inline DomainSpec standard_domain(int n) { return n == 1 ? DomainSpec::disc() : DomainSpec::unit_ball(n); }

/// Jacobian of f at z by the contour rule f'(z) ~ (1/4h) sum_k i^{-k} f(z + i^k h), error O(h^4).
inline CMat contour_difference_jacobian(const std::function<CVec(const CVec&)>& f, const CVec& z, int target_dim,
                                        double h = 1e-3)
{
    const int n = static_cast<int>(z.size());
    CMat J = CMat::Zero(target_dim, n);
    const Complex I(0.0, 1.0);
    for (int j = 0; j < n; ++j) {
        Complex step = h;
        for (int k = 0; k < 4; ++k) {
            CVec zk = z;
            zk(j) += step;
            J.col(j) += f(zk) / step;
            step *= I;
        }
        J.col(j) /= 4.0;
    }
    return J;
}

class HolomorphicMap {
public:
    using Eval = std::function<CVec(const CVec&)>;
    using Jac = std::function<CMat(const CVec&)>;

    HolomorphicMap(std::string name, int source_dim, int target_dim, Eval f, Jac jac, bool analytic)
        : name_(std::move(name)), n_(source_dim), m_(target_dim), f_(std::move(f)), jac_(std::move(jac)),
          analytic_(analytic)
    {
        if (n_ < 1 || m_ < 1) fail(ErrorKind::invalid_argument, "map dimensions must be positive");
    }

    /// A map given only by its values; the Jacobian is taken by contour differences.
    static HolomorphicMap from_function(std::string name, int source_dim, int target_dim, Eval f)
    {
        auto shared = std::make_shared<Eval>(std::move(f));
        return HolomorphicMap(
            std::move(name), source_dim, target_dim, [shared](const CVec& z) { return (*shared)(z); },
            [shared, target_dim](const CVec& z) { return contour_difference_jacobian(*shared, z, target_dim); },
            false);
    }

    static HolomorphicMap identity(int n)
    {
        return HolomorphicMap(
            "identity", n, n, [](const CVec& z) { return z; }, [n](const CVec&) { return CMat(CMat::Identity(n, n)); },
            true);
    }

    /// Disc automorphism (z + a) / (1 + conj(a) z).
    static HolomorphicMap blaschke(Complex a)
    {
        if (!(std::abs(a) < 1.0)) fail(ErrorKind::invalid_argument, "blaschke: |a| must be < 1");
        return HolomorphicMap(
            "blaschke", 1, 1, [a](const CVec& z) { return scalar_point((z(0) + a) / (1.0 + std::conj(a) * z(0))); },
            [a](const CVec& z) {
                const Complex d = 1.0 + std::conj(a) * z(0);
                CMat J(1, 1);
                J(0, 0) = (1.0 - std::norm(a)) / (d * d);
                return J;
            },
            true);
    }

    static HolomorphicMap power(int k)
    {
        if (k < 1) fail(ErrorKind::invalid_argument, "power: exponent must be a positive integer");
        return HolomorphicMap(
            "power", 1, 1, [k](const CVec& z) { return scalar_point(std::pow(z(0), k)); },
            [k](const CVec& z) {
                CMat J(1, 1);
                J(0, 0) = static_cast<double>(k) * (k == 1 ? Complex(1.0) : std::pow(z(0), k - 1));
                return J;
            },
            true);
    }

    /// z -> (d_1 z_1, ..., d_n z_n) with |d_j| <= 1.
    static HolomorphicMap diag(const CVec& d)
    {
        for (int j = 0; j < d.size(); ++j)
            if (std::abs(d(j)) > 1.0) fail(ErrorKind::invalid_argument, "diag: entries must satisfy |d_j| <= 1");
        const int n = static_cast<int>(d.size());
        return HolomorphicMap(
            "diag", n, n, [d](const CVec& z) { return CVec(d.cwiseProduct(z)); },
            [d](const CVec&) { return CMat(d.asDiagonal()); }, true);
    }

    /// Involutive ball automorphism exchanging the anchor and 0.
    static HolomorphicMap ball_automorphism(const CVec& anchor)
    {
        if (!(anchor.squaredNorm() < 1.0)) fail(ErrorKind::invalid_argument, "ball_auto: anchor must be interior");
        const int n = static_cast<int>(anchor.size());
        return HolomorphicMap(
            "ball_auto", n, n, [anchor](const CVec& z) { return mobius_ball(anchor, z); },
            [anchor, n](const CVec& z) {
                CMat J(n, n);
                for (int j = 0; j < n; ++j) J.col(j) = mobius_ball_derivative(anchor, z, basis_vector(n, j));
                return J;
            },
            true);
    }

    static HolomorphicMap constant(int source_dim, const CVec& c)
    {
        if (!(c.squaredNorm() < 1.0)) fail(ErrorKind::invalid_argument, "constant: value must be interior");
        const int m = static_cast<int>(c.size());
        return HolomorphicMap(
            "constant", source_dim, m, [c](const CVec&) { return c; },
            [m, source_dim](const CVec&) { return CMat(CMat::Zero(m, source_dim)); }, true);
    }

    /// maps[0] o maps[1] o ... o maps[k-1].
    static HolomorphicMap compose(const std::vector<HolomorphicMap>& maps)
    {
        if (maps.empty()) fail(ErrorKind::invalid_argument, "compose: empty list");
        for (std::size_t i = 0; i + 1 < maps.size(); ++i)
            if (maps[i].source_dimension() != maps[i + 1].target_dimension())
                fail(ErrorKind::invalid_argument, "compose: dimension mismatch between " + maps[i].name() + " and " +
                                                      maps[i + 1].name());
        std::string name = "compose(";
        bool analytic = true;
        for (std::size_t i = 0; i < maps.size(); ++i) {
            name += (i ? "," : "") + maps[i].name();
            analytic = analytic && maps[i].analytic_jacobian();
        }
        name += ")";
        return HolomorphicMap(
            name, maps.back().source_dimension(), maps.front().target_dimension(),
            [maps](const CVec& z) {
                CVec w = z;
                for (auto it = maps.rbegin(); it != maps.rend(); ++it) w = (*it)(w);
                return w;
            },
            [maps](const CVec& z) {
                CVec w = z;
                CMat J = CMat::Identity(z.size(), z.size());
                for (auto it = maps.rbegin(); it != maps.rend(); ++it) {
                    J = it->jacobian(w) * J;
                    w = (*it)(w);
                }
                return J;
            },
            analytic);
    }

    /// Pointwise product of disc self-maps.
    static HolomorphicMap product(const std::vector<HolomorphicMap>& maps)
    {
        if (maps.empty()) fail(ErrorKind::invalid_argument, "product: empty list");
        for (const auto& g : maps)
            if (g.source_dimension() != 1 || g.target_dimension() != 1)
                fail(ErrorKind::invalid_argument, "product: factors must be disc self-maps");
        std::string name = "product(";
        for (std::size_t i = 0; i < maps.size(); ++i) name += (i ? "," : "") + maps[i].name();
        name += ")";
        return HolomorphicMap(
            name, 1, 1,
            [maps](const CVec& z) {
                Complex v = 1.0;
                for (const auto& g : maps) v *= g(z)(0);
                return scalar_point(v);
            },
            [maps](const CVec& z) {
                std::vector<Complex> vals, ders;
                for (const auto& g : maps) {
                    vals.push_back(g(z)(0));
                    ders.push_back(g.jacobian(z)(0, 0));
                }
                Complex d = 0.0;
                for (std::size_t i = 0; i < maps.size(); ++i) {
                    Complex t = ders[i];
                    for (std::size_t j = 0; j < maps.size(); ++j)
                        if (j != i) t *= vals[j];
                    d += t;
                }
                CMat J(1, 1);
                J(0, 0) = d;
                return J;
            },
            true);
    }

    CVec operator()(const CVec& z) const
    {
        if (z.size() != n_) fail(ErrorKind::invalid_argument, name_ + ": expected a point of dimension " + std::to_string(n_));
        return f_(z);
    }

    CMat jacobian(const CVec& z) const
    {
        if (z.size() != n_) fail(ErrorKind::invalid_argument, name_ + ": expected a point of dimension " + std::to_string(n_));
        return jac_(z);
    }

    /// f(z), failing when it leaves the open target ball.
    CVec checked(const CVec& z) const
    {
        const CVec w = (*this)(z);
        if (!w.allFinite() || !(w.squaredNorm() < 1.0))
            fail(ErrorKind::malformed_function, name_ + ": f(z) exits the target domain");
        return w;
    }

    const std::string& name() const { return name_; }
    int source_dimension() const { return n_; }
    int target_dimension() const { return m_; }
    DomainSpec source() const { return standard_domain(n_); }
    DomainSpec target() const { return standard_domain(m_); }
    bool analytic_jacobian() const { return analytic_; }

private:
    std::string name_;
    int n_ = 1;
    int m_ = 1;
    Eval f_;
    Jac jac_;
    bool analytic_ = true;
};

/// Largest |f(z)| over sample points; < 1 certifies the range on those samples.
inline double range_check(const HolomorphicMap& f, const std::vector<CVec>& samples)
{
    double worst = 0.0;
    for (const auto& z : samples) worst = std::max(worst, f(z).norm());
    return worst;
}

}  // namespace plurikernel
