#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

#include "hypspec/fields.hpp"

namespace hypspec {

enum class PerturbationKind { None, Conformal, General };

/// Pointwise curvature record (dim 2): Gaussian K, Ricci = K g, Scal = 2K.
struct CurvatureData {
    double K = 0.0;
    double ric[3] = {0, 0, 0};  // xx, xy, yy components
    double scal = 0.0;
};

/// Riemannian metric on the quotient surface: the hyperbolic half-plane
/// metric with an optional group-invariant perturbation, either conformal
/// (g = e^{2 phi} g0) or general (g = g0 + h). Immutable and shareable.
class MetricField {
  public:
    static MetricField hyperbolic(std::shared_ptr<const FuchsianGroup> G);
    static MetricField conformal(std::shared_ptr<const FuchsianGroup> G, TensorPtr phi,
                                 int derivative_order = 3);
    static MetricField general(std::shared_ptr<const FuchsianGroup> G, TensorPtr h,
                               int derivative_order = 3);

    PerturbationKind kind() const { return kind_; }
    int derivative_order() const { return deriv_order_; }
    const FuchsianGroup& group() const { return *group_; }
    std::shared_ptr<const FuchsianGroup> group_ptr() const { return group_; }
    TensorPtr conformal_factor() const { return phi_; }
    TensorPtr general_perturbation() const { return h_; }
    bool is_unperturbed_hyperbolic() const;

    /// Metric components (g_xx, g_xy, g_yy); positive definiteness is
    /// checked lazily and violations raise NumericalError.
    void components(const Vec2& p, double g[3]) const;
    void inverse(const Vec2& p, double gi[3]) const;
    double sqrt_det(const Vec2& p) const;

    double norm(const Vec2& p, complexd v) const;
    complexd normalized(const Vec2& p, complexd v) const;
    /// g-orthonormal frame (e1, e2) with e1 along the Euclidean x direction.
    void orthonormal_frame(const Vec2& p, complexd& e1, complexd& e2) const;

    /// Christoffel symbols G[k][i][j] = Gamma^k_ij (symmetric in i, j).
    void christoffel(const Vec2& p, double G[2][2][2]) const;
    /// Christoffels together with their coordinate derivatives
    /// dG[l][k][i][j] = d_l Gamma^k_ij.
    void christoffel_jet(const Vec2& p, double G[2][2][2], double dG[2][2][2][2]) const;

    /// Gaussian curvature: conformal closed form when available, otherwise
    /// the Brioschi formula on component jets.
    double curvature(const Vec2& p) const;
    /// Brioschi route forced through finite-difference component stencils of
    /// step h (the independent check for conformal metrics).
    double curvature_brioschi_fd(const Vec2& p, double h) const;
    CurvatureData curvature_data(const Vec2& p) const;

    struct NegativityReport {
        bool passed = false;
        double margin = 0.0;   // -max K over the grid
        double worst_K = 0.0;
        Vec2 worst_point;
        double refined_margin = 0.0;  // same on a doubled grid
    };
    /// Scans one fundamental domain (geodesic polar grid about the Dirichlet
    /// center). Throws CurvatureSignError when the margin is below
    /// margin_min. The result is cached so later flow computations can
    /// assert the precondition cheaply.
    NegativityReport check_negative_curvature(int grid = 48, double margin_min = 0.05) const;
    bool negativity_verified() const { return negativity_state_ && negativity_state_->load() == 1; }

    /// Stable hash of the construction (group, kind, perturbation samples);
    /// used for result caching.
    std::uint64_t structure_hash() const;

  private:
    MetricField() = default;
    std::shared_ptr<const FuchsianGroup> group_;
    PerturbationKind kind_ = PerturbationKind::None;
    TensorPtr phi_;  // conformal exponent
    TensorPtr h_;    // general perturbation
    int deriv_order_ = 3;
    // 0 unknown, 1 verified negative, 2 failed; shared across copies
    std::shared_ptr<std::atomic<int>> negativity_state_;
};

/// Geodesic polar coordinates about a center point: the point at hyperbolic
/// distance rho in tangent direction theta (Euclidean angle convention).
Vec2 geodesic_polar_point(const Vec2& center, double rho, double theta);

}  // namespace hypspec
