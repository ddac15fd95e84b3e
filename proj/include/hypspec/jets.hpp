#pragma once

#include <functional>

#include "hypspec/mobius.hpp"

namespace hypspec {

/// Value and derivatives to second order of a scalar function of (x, y).
struct Jet2 {
    double v = 0.0;
    double dx = 0.0, dy = 0.0;
    double dxx = 0.0, dxy = 0.0, dyy = 0.0;

    Jet2& operator+=(const Jet2& o) {
        v += o.v;
        dx += o.dx;
        dy += o.dy;
        dxx += o.dxx;
        dxy += o.dxy;
        dyy += o.dyy;
        return *this;
    }
    Jet2 operator*(double s) const { return {v * s, dx * s, dy * s, dxx * s, dxy * s, dyy * s}; }
    Jet2 operator+(const Jet2& o) const {
        Jet2 r = *this;
        r += o;
        return r;
    }
};

/// Leibniz product to second order.
inline Jet2 jet_mul(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.v = a.v * b.v;
    r.dx = a.dx * b.v + a.v * b.dx;
    r.dy = a.dy * b.v + a.v * b.dy;
    r.dxx = a.dxx * b.v + 2.0 * a.dx * b.dx + a.v * b.dxx;
    r.dxy = a.dxy * b.v + a.dx * b.dy + a.dy * b.dx + a.v * b.dxy;
    r.dyy = a.dyy * b.v + 2.0 * a.dy * b.dy + a.v * b.dyy;
    return r;
}

/// Jet of F(x,y) = G(u,v) where u + iv = m(x + iy) is holomorphic with
/// m' = p and m'' = q at the evaluation point. The inner jet is in (u,v).
inline Jet2 compose_holomorphic(const Jet2& G, complexd p, complexd q) {
    const double p1 = p.real(), p2 = p.imag();
    const double q1 = q.real(), q2 = q.imag();
    Jet2 F;
    F.v = G.v;
    F.dx = G.dx * p1 + G.dy * p2;
    F.dy = -G.dx * p2 + G.dy * p1;
    F.dxx = G.dxx * p1 * p1 + 2.0 * G.dxy * p1 * p2 + G.dyy * p2 * p2 + G.dx * q1 + G.dy * q2;
    F.dxy = -G.dxx * p1 * p2 + G.dxy * (p1 * p1 - p2 * p2) + G.dyy * p1 * p2 - G.dx * q2 +
            G.dy * q1;
    F.dyy = G.dxx * p2 * p2 - 2.0 * G.dxy * p1 * p2 + G.dyy * p1 * p1 - G.dx * q1 - G.dy * q2;
    return F;
}

/// Jets of the entries of the real 2x2 matrix J(z) representing complex
/// multiplication by m'(z): J = [[Re p, -Im p], [Im p, Re p]]. Uses m'' and
/// m''' for the derivatives. Returns {jet(Re p), jet(Im p)}.
inline void mobius_deriv_jets(complexd p, complexd q, complexd r, Jet2& re_p, Jet2& im_p) {
    re_p = {p.real(), q.real(), -q.imag(), r.real(), -r.imag(), -r.real()};
    im_p = {p.imag(), q.imag(), q.real(), r.imag(), r.real(), -r.imag()};
}

/// Five-point finite-difference jet of a scalar callable, O(h^4) on axis
/// derivatives, O(h^2) on the cross term.
inline Jet2 stencil_jet2(const std::function<double(Vec2)>& f, const Vec2& at, double h) {
    auto F = [&](double dx, double dy) { return f({at.x + dx, at.y + dy}); };
    const double f0 = F(0, 0);
    const double fx1 = F(h, 0), fx_1 = F(-h, 0), fx2 = F(2 * h, 0), fx_2 = F(-2 * h, 0);
    const double fy1 = F(0, h), fy_1 = F(0, -h), fy2 = F(0, 2 * h), fy_2 = F(0, -2 * h);
    Jet2 j;
    j.v = f0;
    j.dx = (-fx2 + 8 * fx1 - 8 * fx_1 + fx_2) / (12 * h);
    j.dy = (-fy2 + 8 * fy1 - 8 * fy_1 + fy_2) / (12 * h);
    j.dxx = (-fx2 + 16 * fx1 - 30 * f0 + 16 * fx_1 - fx_2) / (12 * h * h);
    j.dyy = (-fy2 + 16 * fy1 - 30 * f0 + 16 * fy_1 - fy_2) / (12 * h * h);
    j.dxy = (F(h, h) - F(h, -h) - F(-h, h) + F(-h, -h)) / (4 * h * h);
    return j;
}

/// Three-point jet, O(h^2) everywhere; used by refinement tests that must
/// exhibit second-order decay.
inline Jet2 stencil_jet2_order2(const std::function<double(Vec2)>& f, const Vec2& at, double h) {
    auto F = [&](double dx, double dy) { return f({at.x + dx, at.y + dy}); };
    const double f0 = F(0, 0);
    const double fx1 = F(h, 0), fx_1 = F(-h, 0);
    const double fy1 = F(0, h), fy_1 = F(0, -h);
    Jet2 j;
    j.v = f0;
    j.dx = (fx1 - fx_1) / (2 * h);
    j.dy = (fy1 - fy_1) / (2 * h);
    j.dxx = (fx1 - 2 * f0 + fx_1) / (h * h);
    j.dyy = (fy1 - 2 * f0 + fy_1) / (h * h);
    j.dxy = (F(h, h) - F(h, -h) - F(-h, h) + F(-h, -h)) / (4 * h * h);
    return j;
}

}  // namespace hypspec
