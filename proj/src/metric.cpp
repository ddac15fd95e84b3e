#include "hypspec/metric.hpp"

#include <cmath>
#include <cstring>

namespace hypspec {

Vec2 geodesic_polar_point(const Vec2& center, double rho, double theta) {
    // exp_i(rho, up) = i e^rho; rotate the tangent by (theta - pi/2) about i,
    // then translate i -> center.
    const double alpha = 0.5 * (theta - M_PI / 2.0);
    const GroupElement rot(std::cos(alpha), std::sin(alpha), -std::sin(alpha), std::cos(alpha));
    const Vec2 at_i = rot.apply(Vec2{0.0, std::exp(rho)});
    const double sy = std::sqrt(center.y);
    const GroupElement translate(sy, center.x / sy, 0.0, 1.0 / sy);
    return translate.apply(at_i);
}

MetricField MetricField::hyperbolic(std::shared_ptr<const FuchsianGroup> G) {
    MetricField m;
    m.group_ = std::move(G);
    m.kind_ = PerturbationKind::None;
    m.negativity_state_ = std::make_shared<std::atomic<int>>(0);
    return m;
}

MetricField MetricField::conformal(std::shared_ptr<const FuchsianGroup> G, TensorPtr phi,
                                   int derivative_order) {
    if (phi->rank() != 0) throw ConfigError("MetricField::conformal: phi must be a scalar field");
    MetricField m;
    m.group_ = std::move(G);
    m.kind_ = PerturbationKind::Conformal;
    m.phi_ = std::move(phi);
    m.deriv_order_ = derivative_order;
    m.negativity_state_ = std::make_shared<std::atomic<int>>(0);
    return m;
}

MetricField MetricField::general(std::shared_ptr<const FuchsianGroup> G, TensorPtr h,
                                 int derivative_order) {
    if (h->rank() != 2) throw ConfigError("MetricField::general: h must be a rank-2 field");
    MetricField m;
    m.group_ = std::move(G);
    m.kind_ = PerturbationKind::General;
    m.h_ = std::move(h);
    m.deriv_order_ = derivative_order;
    m.negativity_state_ = std::make_shared<std::atomic<int>>(0);
    return m;
}

bool MetricField::is_unperturbed_hyperbolic() const { return kind_ == PerturbationKind::None; }

void MetricField::components(const Vec2& p, double g[3]) const {
    if (p.y <= 0.0) throw NumericalError("MetricField: point below the real axis");
    const double w0 = 1.0 / (p.y * p.y);
    switch (kind_) {
        case PerturbationKind::None:
            g[0] = w0;
            g[1] = 0.0;
            g[2] = w0;
            break;
        case PerturbationKind::Conformal: {
            const double w = std::exp(2.0 * phi_->value(p)) * w0;
            g[0] = w;
            g[1] = 0.0;
            g[2] = w;
            break;
        }
        case PerturbationKind::General: {
            double h[3];
            h_->comps(p, h);
            g[0] = w0 + h[0];
            g[1] = h[1];
            g[2] = w0 + h[2];
            break;
        }
    }
    if (g[0] <= 0.0 || g[0] * g[2] - g[1] * g[1] <= 0.0)
        throw NumericalError("MetricField: metric not positive definite at (" +
                             std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
}

void MetricField::inverse(const Vec2& p, double gi[3]) const {
    double g[3];
    components(p, g);
    const double det = g[0] * g[2] - g[1] * g[1];
    gi[0] = g[2] / det;
    gi[1] = -g[1] / det;
    gi[2] = g[0] / det;
}

double MetricField::sqrt_det(const Vec2& p) const {
    double g[3];
    components(p, g);
    return std::sqrt(g[0] * g[2] - g[1] * g[1]);
}

double MetricField::norm(const Vec2& p, complexd v) const {
    double g[3];
    components(p, g);
    const double vx = v.real(), vy = v.imag();
    return std::sqrt(g[0] * vx * vx + 2.0 * g[1] * vx * vy + g[2] * vy * vy);
}

complexd MetricField::normalized(const Vec2& p, complexd v) const { return v / norm(p, v); }

void MetricField::orthonormal_frame(const Vec2& p, complexd& e1, complexd& e2) const {
    double g[3];
    components(p, g);
    // Gram-Schmidt of (1,0), (0,1)
    const double n1 = std::sqrt(g[0]);
    e1 = complexd(1.0 / n1, 0.0);
    // e2 = (0,1) - <(0,1), e1> e1, normalized
    const double inner = g[1] / n1;  // g((0,1), e1)
    complexd v2 = complexd(0.0, 1.0) - inner * e1;
    e2 = v2 / norm(p, v2);
}

namespace {

// hyperbolic base Christoffels and their coordinate derivatives
inline void base_christoffel(double y, double G[2][2][2]) {
    const double iy = 1.0 / y;
    G[0][0][0] = 0.0;
    G[0][0][1] = G[0][1][0] = -iy;
    G[0][1][1] = 0.0;
    G[1][0][0] = iy;
    G[1][0][1] = G[1][1][0] = 0.0;
    G[1][1][1] = -iy;
}

inline void base_christoffel_jet(double y, double G[2][2][2], double dG[2][2][2][2]) {
    base_christoffel(y, G);
    const double iy2 = 1.0 / (y * y);
    for (int l = 0; l < 2; ++l)
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) dG[l][k][i][j] = 0.0;
    // only d_y of the 1/y entries
    dG[1][0][0][1] = dG[1][0][1][0] = iy2;
    dG[1][1][0][0] = -iy2;
    dG[1][1][1][1] = iy2;
}

}  // namespace

void MetricField::christoffel(const Vec2& p, double G[2][2][2]) const {
    switch (kind_) {
        case PerturbationKind::None:
            base_christoffel(p.y, G);
            return;
        case PerturbationKind::Conformal: {
            base_christoffel(p.y, G);
            Jet2 f;
            phi_->jets(p, &f);
            const double d[2] = {f.dx, f.dy};
            for (int k = 0; k < 2; ++k)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        double extra = 0.0;
                        if (k == i) extra += d[j];
                        if (k == j) extra += d[i];
                        if (i == j) extra -= d[k];
                        G[k][i][j] += extra;
                    }
            return;
        }
        case PerturbationKind::General: {
            Jet2 hj[3];
            h_->jets(p, hj);
            // metric component jets: g = g0 + h
            const double y = p.y;
            double gj[3][3];  // [comp][0]=value, [1]=dx, [2]=dy
            const double w0 = 1.0 / (y * y), dw0 = -2.0 / (y * y * y);
            gj[0][0] = w0 + hj[0].v;
            gj[0][1] = hj[0].dx;
            gj[0][2] = dw0 + hj[0].dy;
            gj[1][0] = hj[1].v;
            gj[1][1] = hj[1].dx;
            gj[1][2] = hj[1].dy;
            gj[2][0] = w0 + hj[2].v;
            gj[2][1] = hj[2].dx;
            gj[2][2] = dw0 + hj[2].dy;
            auto comp_index = [](int i, int j) { return i + j; };  // xx=0, xy=1, yy=2
            const double det = gj[0][0] * gj[2][0] - gj[1][0] * gj[1][0];
            const double gi[2][2] = {{gj[2][0] / det, -gj[1][0] / det},
                                     {-gj[1][0] / det, gj[0][0] / det}};
            auto dg = [&](int l, int i, int j) { return gj[comp_index(i, j)][1 + l]; };
            for (int k = 0; k < 2; ++k)
                for (int i = 0; i < 2; ++i)
                    for (int j = i; j < 2; ++j) {
                        double s = 0.0;
                        for (int l = 0; l < 2; ++l)
                            s += gi[k][l] * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
                        G[k][i][j] = G[k][j][i] = 0.5 * s;
                    }
            return;
        }
    }
}

void MetricField::christoffel_jet(const Vec2& p, double G[2][2][2], double dG[2][2][2][2]) const {
    switch (kind_) {
        case PerturbationKind::None:
            base_christoffel_jet(p.y, G, dG);
            return;
        case PerturbationKind::Conformal: {
            base_christoffel_jet(p.y, G, dG);
            Jet2 f;
            phi_->jets(p, &f);
            const double d[2] = {f.dx, f.dy};
            const double dd[2][2] = {{f.dxx, f.dxy}, {f.dxy, f.dyy}};
            for (int k = 0; k < 2; ++k)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        double extra = 0.0;
                        if (k == i) extra += d[j];
                        if (k == j) extra += d[i];
                        if (i == j) extra -= d[k];
                        G[k][i][j] += extra;
                        for (int l = 0; l < 2; ++l) {
                            double de = 0.0;
                            if (k == i) de += dd[l][j];
                            if (k == j) de += dd[l][i];
                            if (i == j) de -= dd[l][k];
                            dG[l][k][i][j] += de;
                        }
                    }
            return;
        }
        case PerturbationKind::General: {
            // finite-difference the exact-value christoffel
            const double h = 1e-4;
            christoffel(p, G);
            for (int l = 0; l < 2; ++l) {
                Vec2 pp = p, pm = p;
                (l == 0 ? pp.x : pp.y) += h;
                (l == 0 ? pm.x : pm.y) -= h;
                double Gp[2][2][2], Gm[2][2][2];
                christoffel(pp, Gp);
                christoffel(pm, Gm);
                for (int k = 0; k < 2; ++k)
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j)
                            dG[l][k][i][j] = (Gp[k][i][j] - Gm[k][i][j]) / (2.0 * h);
            }
            return;
        }
    }
}

namespace {

// Brioschi formula for K from the jets of (E, F, G) = (g_xx, g_xy, g_yy)
double brioschi(const Jet2& E, const Jet2& F, const Jet2& G) {
    const double m1[3][3] = {
        {-0.5 * E.dyy + F.dxy - 0.5 * G.dxx, 0.5 * E.dx, F.dx - 0.5 * E.dy},
        {F.dy - 0.5 * G.dx, E.v, F.v},
        {0.5 * G.dy, F.v, G.v}};
    const double m2[3][3] = {
        {0.0, 0.5 * E.dy, 0.5 * G.dx}, {0.5 * E.dy, E.v, F.v}, {0.5 * G.dx, F.v, G.v}};
    auto det3 = [](const double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double den = E.v * G.v - F.v * F.v;
    return (det3(m1) - det3(m2)) / (den * den);
}

// jets of the base metric components
inline Jet2 base_comp_jet(double y) {
    return Jet2{1.0 / (y * y), 0.0, -2.0 / (y * y * y), 0.0, 0.0, 6.0 / (y * y * y * y)};
}

}  // namespace

double MetricField::curvature(const Vec2& p) const {
    switch (kind_) {
        case PerturbationKind::None:
            return -1.0;
        case PerturbationKind::Conformal: {
            Jet2 f;
            phi_->jets(p, &f);
            const double lap0 = p.y * p.y * (f.dxx + f.dyy);
            return std::exp(-2.0 * f.v) * (-1.0 - lap0);
        }
        case PerturbationKind::General: {
            Jet2 hj[3];
            h_->jets(p, hj);
            const Jet2 b = base_comp_jet(p.y);
            return brioschi(hj[0] + b, hj[1], hj[2] + b);
        }
    }
    return 0.0;
}

double MetricField::curvature_brioschi_fd(const Vec2& p, double h) const {
    auto comp = [this](int k, const Vec2& q) {
        double g[3];
        components(q, g);
        return g[k];
    };
    Jet2 j[3];
    for (int k = 0; k < 3; ++k)
        j[k] = stencil_jet2([&, k](Vec2 q) { return comp(k, q); }, p, h);
    return brioschi(j[0], j[1], j[2]);
}

CurvatureData MetricField::curvature_data(const Vec2& p) const {
    CurvatureData c;
    c.K = curvature(p);
    double g[3];
    components(p, g);
    for (int k = 0; k < 3; ++k) c.ric[k] = c.K * g[k];
    c.scal = 2.0 * c.K;
    return c;
}

MetricField::NegativityReport MetricField::check_negative_curvature(int grid,
                                                                    double margin_min) const {
    const Vec2 center = group_->dirichlet_center();
    auto scan = [&](int n) {
        double worst = -1e300;
        Vec2 worst_p = center;
        for (int ir = 0; ir < n; ++ir) {
            // cluster radii toward the domain boundary where bumps distort most
            const double rho = 2.55 * (ir + 0.5) / n;
            const int nth = std::max(8, (int)std::llround(2.0 * n * std::sinh(rho) / rho));
            for (int it = 0; it < nth; ++it) {
                const double th = 2.0 * M_PI * (it + 0.5) / nth;
                const Vec2 q = geodesic_polar_point(center, rho, th);
                if (!group_->in_domain(q, 1e-9)) continue;
                const double K = curvature(q);
                if (K > worst) {
                    worst = K;
                    worst_p = q;
                }
            }
        }
        const double Kc = curvature(center);
        if (Kc > worst) {
            worst = Kc;
            worst_p = center;
        }
        return std::make_pair(worst, worst_p);
    };
    auto [worst, worst_p] = scan(grid);
    auto [worst2, worst_p2] = scan(2 * grid);
    NegativityReport rep;
    rep.worst_K = std::max(worst, worst2);
    rep.worst_point = (worst2 > worst) ? worst_p2 : worst_p;
    rep.margin = -worst;
    rep.refined_margin = -worst2;
    rep.passed = std::min(rep.margin, rep.refined_margin) >= margin_min;
    if (negativity_state_) negativity_state_->store(rep.passed ? 1 : 2);
    if (!rep.passed)
        throw CurvatureSignError("check_negative_curvature: max K = " +
                                     std::to_string(rep.worst_K) + " violates margin " +
                                     std::to_string(margin_min),
                                 rep.worst_point.x, rep.worst_point.y, rep.worst_K);
    return rep;
}

std::uint64_t MetricField::structure_hash() const {
    // FNV-1a over kind + field samples on a coarse grid
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double v) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        h ^= bits;
        h *= 1099511628211ull;
    };
    mix(static_cast<double>(static_cast<int>(kind_)));
    const Vec2 c = group_->dirichlet_center();
    for (int ir = 0; ir < 4; ++ir)
        for (int it = 0; it < 8; ++it) {
            const Vec2 q = geodesic_polar_point(c, 0.4 + 0.5 * ir, 2 * M_PI * it / 8.0);
            double g[3];
            components(q, g);
            mix(g[0]);
            mix(g[1]);
            mix(g[2]);
        }
    return h;
}

}  // namespace hypspec
