#pragma once

#include "hypspec/metric.hpp"

namespace hypspec {

// Symmetric m-tensor calculus in collapsed components (index = number of
// y slots). All pointwise operators take the metric for Christoffels and
// index raising; derivative quality follows the field's jets().

/// S_x(v, ..., v) for a g-unit vector v; throws ContractViolation when
/// | |v|_g - 1 | > 1e-10.
double pi_star(const TensorField& S, const MetricField& g, const Vec2& p, complexd v);
double pi_star(const TensorField& S, const MetricField& g, const UnitTangent& v);
/// Same from precomputed components.
double pi_star_comps(const double* comps, int rank, complexd v);

/// tr_g for rank >= 2: contracts the first two slots.
double trace_g(const TensorField& S, const MetricField& g, const Vec2& p);

/// S = S2 + S0 g with tr_g(S2) = 0; returns S0 and writes the three
/// components of S2.
double trace_decompose(const TensorField& S, const MetricField& g, const Vec2& p, double S2[3]);

/// Pointwise g-inner product of equal-rank tensors (rank <= 2).
double inner_g(const double* A, const double* B, int rank, const MetricField& g, const Vec2& p);

/// Pair representation of the covariant derivative and its first coordinate
/// derivatives, for pointwise assembly of second-order operators.
struct CovDeriv {
    int rank = 0;                 // rank m of the input
    double A[2][8] = {};          // (nabla S)_{a, [j]}
    double dA[2][2][8] = {};      // d_b (nabla S)_{a, [j]}
};

CovDeriv covariant_derivative(const TensorField& S, const MetricField& g, const Vec2& p);

/// D = Sym(nabla): rank m -> m+1.
void sym_derivative(const TensorField& S, const MetricField& g, const Vec2& p, double* out);
/// D* = -tr_g(nabla): rank m -> m-1 (rank >= 1).
void divergence(const TensorField& S, const MetricField& g, const Vec2& p, double* out);
/// Rough Laplacian nabla* nabla (positive on functions): rank m -> m.
void rough_laplacian(const TensorField& S, const MetricField& g, const Vec2& p, double* out);

/// Lichnerowicz Laplacian on rank-2 fields. In dimension 2 the curvature
/// terms close to 2nK S - 2K tr_g(S) g pointwise, which reduces to the
/// hyperbolic form at K = -1.
void lichnerowicz(const TensorField& S, const MetricField& g, const Vec2& p, double* out);
/// Hyperbolic-metric form nabla*nabla S - 2n S + 2 tr(S) g0, valid at the
/// unperturbed metric only (the dual route for cross-checks).
void lichnerowicz_hyperbolic(const TensorField& S, const MetricField& g0, const Vec2& p,
                             double* out);

/// One half of the linearized Ricci operator at the hyperbolic metric:
/// R(S) = 1/4 Lich(S) - 1/2 D(D* S) - 1/4 Hess(tr S). Contract: the metric
/// must be the unperturbed hyperbolic one.
void operator_R(const TensorField& S, const MetricField& g0, const Vec2& p, double* out);

/// Lazy field wrappers around the pointwise operators (jets via stencils).
TensorPtr sym_derivative_field(TensorPtr S, const MetricField& g);
TensorPtr divergence_field(TensorPtr S, const MetricField& g);
TensorPtr rough_laplacian_field(TensorPtr S, const MetricField& g);
TensorPtr operator_R_field(TensorPtr S, const MetricField& g0);

}  // namespace hypspec
