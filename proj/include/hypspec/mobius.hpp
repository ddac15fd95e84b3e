#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "hypspec/errors.hpp"

namespace hypspec {

using complexd = std::complex<double>;

constexpr double kDetTol = 1e-12;          // determinant-one slack
constexpr double kHyperbolicTol = 1e-10;   // |tr|-2 classification margin

/// Point in the upper half-plane.
struct Vec2 {
    double x = 0.0, y = 0.0;
    complexd z() const { return {x, y}; }
    static Vec2 from(complexd w) { return {w.real(), w.imag()}; }
};

inline double cosh_dist(const Vec2& p, const Vec2& q) {
    const double dx = p.x - q.x, dy = p.y - q.y;
    return 1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y);
}

/// Hyperbolic distance in the half-plane model.
inline double hyp_dist(const Vec2& p, const Vec2& q) {
    const double c = cosh_dist(p, q);
    // acosh(1+t) computed stably for small t
    const double t = c - 1.0;
    return std::log1p(t + std::sqrt(t * (t + 2.0)));
}

enum class IsometryType { Identity, Hyperbolic, Parabolic, Elliptic };

/// Real 2x2 determinant-one matrix acting on the half-plane by Moebius maps.
struct GroupElement {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    GroupElement() = default;
    GroupElement(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
        if (std::abs(det() - 1.0) > 1e-9)
            throw ConfigError("GroupElement: determinant " + std::to_string(det()) + " != 1");
    }
    static GroupElement identity() { return GroupElement(); }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }

    GroupElement operator*(const GroupElement& o) const {
        GroupElement r;
        r.a = a * o.a + b * o.c;
        r.b = a * o.b + b * o.d;
        r.c = c * o.a + d * o.c;
        r.d = c * o.b + d * o.d;
        return r;
    }
    GroupElement inverse() const {
        GroupElement r;
        r.a = d;
        r.b = -b;
        r.c = -c;
        r.d = a;
        return r;
    }
    /// Rescale so det is exactly 1 again (long products drift in the last bits).
    GroupElement renormalized() const {
        const double s = 1.0 / std::sqrt(det());
        GroupElement r;
        r.a = a * s;
        r.b = b * s;
        r.c = c * s;
        r.d = d * s;
        return r;
    }

    complexd apply(complexd z) const { return (a * z + b) / (c * z + d); }
    Vec2 apply(const Vec2& p) const { return Vec2::from(apply(p.z())); }

    /// Complex derivative of the Moebius map (det = 1).
    complexd deriv(complexd z) const {
        const complexd den = c * z + d;
        return 1.0 / (den * den);
    }
    complexd deriv2(complexd z) const {
        const complexd den = c * z + d;
        return -2.0 * c / (den * den * den);
    }
    complexd deriv3(complexd z) const {
        const complexd den = c * z + d;
        return 6.0 * c * c / (den * den * den * den);
    }

    /// Pushforward of a tangent vector at p (conformal action).
    complexd push_dir(const Vec2& p, complexd v) const { return deriv(p.z()) * v; }

    IsometryType classify() const {
        const double t = std::abs(trace());
        if (std::abs(a - 1) < 1e-14 && std::abs(d - 1) < 1e-14 && std::abs(b) < 1e-14 &&
            std::abs(c) < 1e-14)
            return IsometryType::Identity;
        if (t > 2.0 + kHyperbolicTol) return IsometryType::Hyperbolic;
        if (t < 2.0 - kHyperbolicTol) return IsometryType::Elliptic;
        return IsometryType::Parabolic;
    }
    bool is_hyperbolic() const { return classify() == IsometryType::Hyperbolic; }

    bool near_identity(double tol) const {
        // identity in PSL(2,R): matrix equals +-Id
        const double s = (a + d >= 0) ? 1.0 : -1.0;
        return std::abs(s * a - 1) < tol && std::abs(s * d - 1) < tol && std::abs(s * b) < tol &&
               std::abs(s * c) < tol;
    }
};

/// Length of the closed geodesic represented by a hyperbolic element
/// (constant-curvature value): 2*acosh(|tr|/2).
inline double translation_length(const GroupElement& m) {
    const double t = std::abs(m.trace());
    if (t <= 2.0 + kHyperbolicTol)
        throw NumericalError("translation_length: element not hyperbolic (|tr| = " +
                             std::to_string(t) + ")");
    return 2.0 * std::acosh(t / 2.0);
}

/// Unit tangent stored as base point plus direction angle (Euclidean angle of
/// the direction; the metric normalizes the length).
struct UnitTangent {
    Vec2 p;
    double theta = 0.0;  // radians, atan2 convention
    complexd dir() const { return {std::cos(theta), std::sin(theta)}; }
};

/// Axis data of a hyperbolic element: attracting/repelling fixed points on
/// the boundary and a seed tangent on the axis oriented toward the attractor.
struct AxisData {
    bool vertical = false;
    double fixed_attracting = 0.0;  // +-inf allowed when vertical
    double fixed_repelling = 0.0;
    UnitTangent seed;
};

inline AxisData axis_of(const GroupElement& m) {
    if (!m.is_hyperbolic()) throw NumericalError("axis_of: element not hyperbolic");
    AxisData ax;
    const double tr = m.trace();
    const double s = std::sqrt(tr * tr - 4.0);
    // eigenvalues (tr +- s)/2; |lam_u| > 1 attracting
    double lam_u = (tr + (tr > 0 ? s : -s)) / 2.0;
    double lam_s = 1.0 / lam_u;
    // eigenvector (b, lam - a) or (lam - d, c)
    auto fixed_point = [&](double lam) -> std::array<double, 2> {
        // Moebius fixed point t = v1/v2 for eigenvector (v1, v2)
        double v1 = m.b, v2 = lam - m.a;
        if (std::abs(v2) < 1e-13 * (std::abs(v1) + 1.0)) {
            v1 = lam - m.d;
            v2 = m.c;
        }
        return {v1, v2};
    };
    auto fu = fixed_point(lam_u);
    auto fs = fixed_point(lam_s);
    const bool u_inf = std::abs(fu[1]) < 1e-13 * (std::abs(fu[0]) + 1.0);
    const bool s_inf = std::abs(fs[1]) < 1e-13 * (std::abs(fs[0]) + 1.0);
    if (u_inf && s_inf) throw NumericalError("axis_of: degenerate fixed points");

    if (u_inf || s_inf) {
        ax.vertical = true;
        const double xf = u_inf ? fs[0] / fs[1] : fu[0] / fu[1];
        ax.fixed_attracting = u_inf ? std::numeric_limits<double>::infinity() : fu[0] / fu[1];
        ax.fixed_repelling = s_inf ? std::numeric_limits<double>::infinity() : fs[0] / fs[1];
        ax.seed.p = {xf, 1.0};
        ax.seed.theta = u_inf ? M_PI / 2.0 : -M_PI / 2.0;  // up toward infinity, else down
        return ax;
    }
    const double pu = fu[0] / fu[1];
    const double ps = fs[0] / fs[1];
    ax.fixed_attracting = pu;
    ax.fixed_repelling = ps;
    // half-circle over [min,max]; seed at the summit, oriented toward pu
    const double mid = 0.5 * (pu + ps);
    const double rad = 0.5 * std::abs(pu - ps);
    ax.seed.p = {mid, rad};
    ax.seed.theta = (pu > ps) ? 0.0 : M_PI;
    return ax;
}

}  // namespace hypspec
