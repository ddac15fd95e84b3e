#include "hypspec/tensor_ops.hpp"

#include <cmath>

namespace hypspec {

namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

double pi_star_comps(const double* comps, int rank, complexd v) {
    const double vx = v.real(), vy = v.imag();
    double out = 0.0;
    for (int j = 0; j <= rank; ++j)
        out += binom(rank, j) * comps[j] * std::pow(vx, rank - j) * std::pow(vy, j);
    return out;
}

double pi_star(const TensorField& S, const MetricField& g, const Vec2& p, complexd v) {
    const double n = g.norm(p, v);
    if (std::abs(n - 1.0) > 1e-10)
        throw ContractViolation("pi_star: |v|_g = " + std::to_string(n) + " is not 1");
    double c[8];
    S.comps(p, c);
    return pi_star_comps(c, S.rank(), v);
}

double pi_star(const TensorField& S, const MetricField& g, const UnitTangent& v) {
    const complexd u = g.normalized(v.p, v.dir());
    double c[8];
    S.comps(v.p, c);
    return pi_star_comps(c, S.rank(), u);
}

double trace_g(const TensorField& S, const MetricField& g, const Vec2& p) {
    if (S.rank() < 2) throw ContractViolation("trace_g: rank must be >= 2");
    double c[8], gi[3];
    S.comps(p, c);
    g.inverse(p, gi);
    if (S.rank() == 2) return gi[0] * c[0] + 2.0 * gi[1] * c[1] + gi[2] * c[2];
    throw CapabilityError("trace_g: rank > 2 not implemented");
}

double trace_decompose(const TensorField& S, const MetricField& g, const Vec2& p, double S2[3]) {
    if (S.rank() != 2) throw ContractViolation("trace_decompose: rank-2 field required");
    double c[3], gm[3];
    S.comps(p, c);
    g.components(p, gm);
    const double S0 = trace_g(S, g, p) / 2.0;
    for (int k = 0; k < 3; ++k) S2[k] = c[k] - S0 * gm[k];
    return S0;
}

double inner_g(const double* A, const double* B, int rank, const MetricField& g, const Vec2& p) {
    double gi[3];
    g.inverse(p, gi);
    switch (rank) {
        case 0:
            return A[0] * B[0];
        case 1:
            return gi[0] * A[0] * B[0] + gi[1] * (A[0] * B[1] + A[1] * B[0]) +
                   gi[2] * A[1] * B[1];
        case 2: {
            // tr(Gi A Gi B)
            const double Gi[2][2] = {{gi[0], gi[1]}, {gi[1], gi[2]}};
            const double Am[2][2] = {{A[0], A[1]}, {A[1], A[2]}};
            const double Bm[2][2] = {{B[0], B[1]}, {B[1], B[2]}};
            double M1[2][2] = {}, M2[2][2] = {};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k) M1[i][j] += Gi[i][k] * Am[k][j];
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k) M2[i][j] += Gi[i][k] * Bm[k][j];
            double tr = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k) tr += M1[i][k] * M2[k][i];
            return tr;
        }
        default:
            throw CapabilityError("inner_g: rank > 2 not implemented");
    }
}

CovDeriv covariant_derivative(const TensorField& S, const MetricField& g, const Vec2& p) {
    const int m = S.rank();
    if (m > 6) throw CapabilityError("covariant_derivative: rank too large");
    Jet2 js[8];
    S.jets(p, js);
    double G[2][2][2], dG[2][2][2][2];
    g.christoffel_jet(p, G, dG);

    auto comp = [&](int j) -> double { return (j < 0 || j > m) ? 0.0 : js[j].v; };
    auto dcomp = [&](int b, int j) -> double {
        if (j < 0 || j > m) return 0.0;
        return b == 0 ? js[j].dx : js[j].dy;
    };
    auto ddcomp = [&](int b, int a, int j) -> double {
        if (j < 0 || j > m) return 0.0;
        if (a == 0 && b == 0) return js[j].dxx;
        if (a == 1 && b == 1) return js[j].dyy;
        return js[j].dxy;
    };

    CovDeriv cd;
    cd.rank = m;
    for (int a = 0; a < 2; ++a)
        for (int j = 0; j <= m; ++j) {
            double v = dcomp(a, j);
            v -= (m - j) * (G[0][a][0] * comp(j) + G[1][a][0] * comp(j + 1));
            v -= j * (G[0][a][1] * comp(j - 1) + G[1][a][1] * comp(j));
            cd.A[a][j] = v;
            for (int b = 0; b < 2; ++b) {
                double dv = ddcomp(b, a, j);
                dv -= (m - j) * (dG[b][0][a][0] * comp(j) + G[0][a][0] * dcomp(b, j) +
                                 dG[b][1][a][0] * comp(j + 1) + G[1][a][0] * dcomp(b, j + 1));
                dv -= j * (dG[b][0][a][1] * comp(j - 1) + G[0][a][1] * dcomp(b, j - 1) +
                           dG[b][1][a][1] * comp(j) + G[1][a][1] * dcomp(b, j));
                cd.dA[b][a][j] = dv;
            }
        }
    return cd;
}

void sym_derivative(const TensorField& S, const MetricField& g, const Vec2& p, double* out) {
    const CovDeriv cd = covariant_derivative(S, g, p);
    const int m = cd.rank;
    for (int J = 0; J <= m + 1; ++J) {
        double v = 0.0;
        if (J <= m) v += (m + 1 - J) * cd.A[0][J];
        if (J >= 1) v += J * cd.A[1][J - 1];
        out[J] = v / (m + 1);
    }
}

void divergence(const TensorField& S, const MetricField& g, const Vec2& p, double* out) {
    if (S.rank() < 1) throw ContractViolation("divergence: rank must be >= 1");
    const CovDeriv cd = covariant_derivative(S, g, p);
    const int m = cd.rank;
    double gi[3];
    g.inverse(p, gi);
    for (int j = 0; j <= m - 1; ++j)
        out[j] = -(gi[0] * cd.A[0][j] + gi[1] * (cd.A[0][j + 1] + cd.A[1][j]) +
                   gi[2] * cd.A[1][j + 1]);
}

void rough_laplacian(const TensorField& S, const MetricField& g, const Vec2& p, double* out) {
    if (g.derivative_order() < 2)
        throw CapabilityError("rough_laplacian: derivative_order >= 2 required");
    const CovDeriv cd = covariant_derivative(S, g, p);
    const int m = cd.rank;
    double G[2][2][2];
    g.christoffel(p, G);
    double gi[3];
    g.inverse(p, gi);
    auto A = [&](int a, int j) -> double { return (j < 0 || j > m) ? 0.0 : cd.A[a][j]; };
    // second covariant derivative in the pair representation
    double B[2][2][8];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int j = 0; j <= m; ++j) {
                double v = cd.dA[a][b][j];
                for (int l = 0; l < 2; ++l) v -= G[l][a][b] * A(l, j);
                v -= (m - j) * (G[0][a][0] * A(b, j) + G[1][a][0] * A(b, j + 1));
                v -= j * (G[0][a][1] * A(b, j - 1) + G[1][a][1] * A(b, j));
                B[a][b][j] = v;
            }
    for (int j = 0; j <= m; ++j)
        out[j] = -(gi[0] * B[0][0][j] + gi[1] * (B[0][1][j] + B[1][0][j]) + gi[2] * B[1][1][j]);
}

void lichnerowicz(const TensorField& S, const MetricField& g, const Vec2& p, double* out) {
    if (S.rank() != 2) throw ContractViolation("lichnerowicz: rank-2 field required");
    rough_laplacian(S, g, p, out);
    // dim-2 curvature terms: Ric = K g makes them 2nK S - 2K tr_g(S) g
    const double K = g.curvature(p);
    double c[3], gm[3];
    S.comps(p, c);
    g.components(p, gm);
    const double tr = trace_g(S, g, p);
    for (int k = 0; k < 3; ++k) out[k] += 4.0 * K * c[k] - 2.0 * K * tr * gm[k];
}

void lichnerowicz_hyperbolic(const TensorField& S, const MetricField& g0, const Vec2& p,
                             double* out) {
    if (!g0.is_unperturbed_hyperbolic())
        throw ContractViolation("lichnerowicz_hyperbolic: base metric must be unperturbed");
    rough_laplacian(S, g0, p, out);
    double c[3], gm[3];
    S.comps(p, c);
    g0.components(p, gm);
    const double tr = trace_g(S, g0, p);
    for (int k = 0; k < 3; ++k) out[k] += -4.0 * c[k] + 2.0 * tr * gm[k];
}

void operator_R(const TensorField& S, const MetricField& g0, const Vec2& p, double* out) {
    if (!g0.is_unperturbed_hyperbolic())
        throw ContractViolation("operator_R: defined at the unperturbed metric only");
    if (S.rank() != 2) throw ContractViolation("operator_R: rank-2 field required");

    double lich[3];
    lichnerowicz_hyperbolic(S, g0, p, lich);

    const CovDeriv cd = covariant_derivative(S, g0, p);
    const double y = p.y, y2 = y * y;

    // q = D* S (1-form) and its coordinate derivatives; g0^{ab} = y^2 delta
    double q[2], dq[2][2];
    for (int j = 0; j < 2; ++j) {
        q[j] = -y2 * (cd.A[0][j] + cd.A[1][j + 1]);
        dq[0][j] = -y2 * (cd.dA[0][0][j] + cd.dA[0][1][j + 1]);
        dq[1][j] = -2.0 * y * (cd.A[0][j] + cd.A[1][j + 1]) -
                   y2 * (cd.dA[1][0][j] + cd.dA[1][1][j + 1]);
    }
    // D q with the base Christoffels
    double Dq[3];
    Dq[0] = dq[0][0] - (1.0 / y) * q[1];
    Dq[1] = 0.5 * (dq[0][1] + dq[1][0]) + (1.0 / y) * q[0];
    Dq[2] = dq[1][1] + (1.0 / y) * q[1];

    // Hessian of tr S = y^2 (S_xx + S_yy)
    Jet2 js[3];
    S.jets(p, js);
    const Jet2 sum = js[0] + js[2];
    double f_x = y2 * sum.dx;
    double f_y = 2.0 * y * sum.v + y2 * sum.dy;
    double f_xx = y2 * sum.dxx;
    double f_xy = 2.0 * y * sum.dx + y2 * sum.dxy;
    double f_yy = 2.0 * sum.v + 4.0 * y * sum.dy + y2 * sum.dyy;
    double hess[3];
    hess[0] = f_xx - f_y / y;
    hess[1] = f_xy + f_x / y;
    hess[2] = f_yy + f_y / y;

    for (int k = 0; k < 3; ++k)
        out[k] = 0.25 * lich[k] - 0.5 * Dq[k] - 0.25 * hess[k];
}

namespace {

class DerivedField : public TensorField {
  public:
    DerivedField(int rank, std::function<void(const Vec2&, double*)> fn)
        : rank_(rank), fn_(std::move(fn)) {}
    int rank() const override { return rank_; }
    void comps(const Vec2& p, double* out) const override { fn_(p, out); }

  private:
    int rank_;
    std::function<void(const Vec2&, double*)> fn_;
};

}  // namespace

TensorPtr sym_derivative_field(TensorPtr S, const MetricField& g) {
    const int r = S->rank() + 1;
    return std::make_shared<DerivedField>(
        r, [S = std::move(S), g](const Vec2& p, double* out) { sym_derivative(*S, g, p, out); });
}

TensorPtr divergence_field(TensorPtr S, const MetricField& g) {
    const int r = S->rank() - 1;
    return std::make_shared<DerivedField>(
        r, [S = std::move(S), g](const Vec2& p, double* out) { divergence(*S, g, p, out); });
}

TensorPtr rough_laplacian_field(TensorPtr S, const MetricField& g) {
    const int r = S->rank();
    return std::make_shared<DerivedField>(
        r, [S = std::move(S), g](const Vec2& p, double* out) { rough_laplacian(*S, g, p, out); });
}

TensorPtr operator_R_field(TensorPtr S, const MetricField& g0) {
    return std::make_shared<DerivedField>(
        2, [S = std::move(S), g0](const Vec2& p, double* out) { operator_R(*S, g0, p, out); });
}

}  // namespace hypspec
