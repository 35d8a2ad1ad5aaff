#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace plurikernel {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Default tolerance below which |psi(p)| counts as "on the boundary".
inline constexpr double boundary_tolerance = 1e-9;

/// Standard Hermitian product <a, b> = sum a_j conj(b_j); C-linear in a.
inline Complex herm(const CVec& a, const CVec& b) { return b.dot(a); }

inline CVec basis_vector(int n, int j)
{
    CVec e = CVec::Zero(n);
    e(j) = 1.0;
    return e;
}

inline CVec scalar_point(Complex z)
{
    CVec v(1);
    v(0) = z;
    return v;
}

// ---------------------------------------------------------------------------
// Errors

enum class ErrorKind {
    invalid_argument,     // malformed input, violated precondition
    not_on_boundary,
    malformed_function,   // non-finite defining function or field
    degenerate_geometry,  // zero gradient, degenerate Levi form
    numerical_failure,    // non-convergent iteration, non-Cauchy differences
    containment_not_certified,
    unsupported,
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::not_on_boundary: return "not_on_boundary";
    case ErrorKind::malformed_function: return "malformed_function";
    case ErrorKind::degenerate_geometry: return "degenerate_geometry";
    case ErrorKind::numerical_failure: return "numerical_failure";
    case ErrorKind::containment_not_certified: return "containment_not_certified";
    case ErrorKind::unsupported: return "unsupported";
    }
    return "unknown";
}

/// Numerical failures (as opposed to bad input) are the ones the CLI maps to exit status 3.
inline bool is_numerical(ErrorKind kind)
{
    return kind == ErrorKind::numerical_failure || kind == ErrorKind::containment_not_certified;
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::string context = {})
        : std::runtime_error(message), kind_(kind), context_(std::move(context))
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& context() const noexcept { return context_; }

private:
    ErrorKind kind_;
    std::string context_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message, std::string context = {})
{
    throw Error(kind, message, std::move(context));
}

// ---------------------------------------------------------------------------
// Extended reals

/// A real number or negative infinity. Green functions at their pole and
/// kernel limits at the pole produce the sentinel instead of a floating-point -inf.
class ExtReal {
public:
    ExtReal(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

    static ExtReal negative_infinity() { return ExtReal(); }

    bool is_finite() const { return value_.has_value(); }
    bool is_negative_infinity() const { return !value_.has_value(); }

    double value() const
    {
        if (!value_)
            fail(ErrorKind::invalid_argument, "value requested from negative-infinity sentinel");
        return *value_;
    }

    /// Floating-point view; only for output and plotting.
    double to_double() const { return value_ ? *value_ : -std::numeric_limits<double>::infinity(); }

    friend bool operator==(const ExtReal& a, const ExtReal& b) { return a.value_ == b.value_; }

private:
    ExtReal() = default;
    std::optional<double> value_;
};

// ---------------------------------------------------------------------------
// Random sampling helpers (deterministic given the engine state)

using Rng = std::mt19937_64;

inline CVec random_gaussian_vector(int n, Rng& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    CVec v(n);
    for (int j = 0; j < n; ++j) v(j) = Complex(g(rng), g(rng));
    return v;
}

inline CVec random_unit_vector(int n, Rng& rng)
{
    CVec v = random_gaussian_vector(n, rng);
    return v / v.norm();
}

/// Uniform point in the ball of radius `max_radius` centred at 0.
inline CVec random_ball_point(int n, Rng& rng, double max_radius = 1.0)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = max_radius * std::pow(u(rng), 1.0 / (2.0 * n));
    return r * random_unit_vector(n, rng);
}

/// Unitary matrix mapping e_1 to the unit vector `p` (Householder reflection
/// with a phase fix).
inline CMat unitary_sending_e1_to(const CVec& p)
{
    const int n = static_cast<int>(p.size());
    const CVec e1 = basis_vector(n, 0);
    const Complex p1 = p(0);
    const Complex phase = std::abs(p1) > 0 ? p1 / std::abs(p1) : Complex(1.0);
    // Reflect e1 onto conj(phase) p, then multiply by phase.
    const CVec target = std::conj(phase) * p;
    CVec w = e1 - target;
    const double wn = w.norm();
    CMat h = CMat::Identity(n, n);
    if (wn > 1e-14) {
        w /= wn;
        h -= 2.0 * w * w.adjoint();
    }
    return phase * h;
}

}  // namespace plurikernel
