#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "hypspec/fuchsian.hpp"
#include "hypspec/jets.hpp"

namespace hypspec {

/// Symmetric rank-m tensor field on (a patch of or the quotient of) the
/// half-plane. Components are collapsed by symmetry: index k holds the value
/// on (m-k) x-slots and k y-slots, k = 0..m. Rank 0 is a scalar field.
class TensorField {
  public:
    virtual ~TensorField() = default;
    virtual int rank() const = 0;
    virtual void comps(const Vec2& p, double* out) const = 0;

    /// Per-component jets; the default differentiates comps() with a
    /// five-point stencil of step jet_h.
    virtual void jets(const Vec2& p, Jet2* out) const;
    virtual bool analytic_jets() const { return false; }

    int ncomps() const { return rank() + 1; }
    double value(const Vec2& p) const;  // rank 0 convenience
    Jet2 jet2(const Vec2& p) const;     // rank 0 convenience

    double jet_h = 1e-3;
};

using TensorPtr = std::shared_ptr<const TensorField>;

/// Smooth compactly supported bump, a function of hyperbolic distance to the
/// center: amplitude * exp(1 - 1/(1 - (Q/Qr)^2)) with Q = cosh(dist) - 1.
struct Bump {
    Vec2 center{0.0, 1.0};
    double radius = 1.0;  // hyperbolic support radius
    double amplitude = 0.1;
};

/// Jet (value, d/dQ, d2/dQ2) of the bump profile at deviation Q.
void bump_profile(double Q, double radius, double amplitude, double& h, double& h1, double& h2);

/// Jet of a single bump in half-plane coordinates (no group action).
Jet2 bump_jet(const Bump& b, const Vec2& at);

// ---------------------------------------------------------------------------
// group-invariant fields
// ---------------------------------------------------------------------------

/// Shared automorphization machinery: the finite set of group translates
/// whose pulled-back seed can reach the working region, deduplicated by
/// group element (distinct words may coincide in the group).
class Automorphizer {
  public:
    /// radius_max: largest bump support radius of the seed.
    Automorphizer(std::shared_ptr<const FuchsianGroup> group, double radius_max,
                  int truncation_length, double work_radius = 2.7);

    const std::vector<GroupElement>& terms() const { return terms_; }
    const FuchsianGroup& group() const { return *group_; }
    double work_radius() const { return work_radius_; }
    bool inside_work_region(const Vec2& p) const;
    int truncation_length() const { return trunc_len_; }

    /// Word-length truncation residual: largest seed reach of any element at
    /// word length L+1 beyond the inclusion threshold (negative margin means
    /// the term set is complete; construction throws when it is not).
    double completeness_margin() const { return completeness_margin_; }

  private:
    std::shared_ptr<const FuchsianGroup> group_;
    std::vector<GroupElement> terms_;
    double work_radius_;
    double completeness_margin_;
    int trunc_len_;
};

/// Group-invariant scalar field: constant + automorphized bump sum, with
/// analytic jets. Queries outside the working region are reduced first and
/// the jet pulled back through the reduction isometry.
class InvariantScalarField : public TensorField {
  public:
    InvariantScalarField(std::shared_ptr<const FuchsianGroup> group, std::vector<Bump> bumps,
                         double constant = 0.0, int truncation_length = 4);

    int rank() const override { return 0; }
    void comps(const Vec2& p, double* out) const override;
    void jets(const Vec2& p, Jet2* out) const override;
    bool analytic_jets() const override { return true; }

    const Automorphizer& automorphizer() const { return *autom_; }

  private:
    Jet2 local_jet(const Vec2& p) const;
    std::shared_ptr<Automorphizer> autom_;
    std::vector<Bump> bumps_;
    double constant_;
};

/// Group-invariant 1-form: automorphized bump-modulated coordinate 1-forms,
/// analytic jets (pullback convention).
class InvariantOneForm : public TensorField {
  public:
    /// comp_bumps[0] modulates dx, comp_bumps[1] modulates dy.
    InvariantOneForm(std::shared_ptr<const FuchsianGroup> group,
                     std::array<std::vector<Bump>, 2> comp_bumps, int truncation_length = 4);

    int rank() const override { return 1; }
    void comps(const Vec2& p, double* out) const override;
    void jets(const Vec2& p, Jet2* out) const override;
    bool analytic_jets() const override { return true; }

  private:
    void local_jets(const Vec2& p, Jet2* out) const;
    std::shared_ptr<Automorphizer> autom_;
    std::array<std::vector<Bump>, 2> comp_bumps_;
};

/// Group-invariant symmetric 2-tensor: automorphized bump-modulated
/// coordinate 2-tensors, optionally projected pointwise to the trace-free
/// part. Pointwise values are exact; jets come from stencils.
class InvariantRank2Field : public TensorField {
  public:
    /// comp_bumps = {xx, xy, yy} seeds.
    InvariantRank2Field(std::shared_ptr<const FuchsianGroup> group,
                        std::array<std::vector<Bump>, 3> comp_bumps, bool trace_free,
                        int truncation_length = 4);

    int rank() const override { return 2; }
    void comps(const Vec2& p, double* out) const override;

  private:
    void local_comps(const Vec2& p, double* out) const;
    std::shared_ptr<Automorphizer> autom_;
    std::array<std::vector<Bump>, 3> comp_bumps_;
    bool trace_free_;
};

// ---------------------------------------------------------------------------
// patch fields (no group invariance; analytic jets)
// ---------------------------------------------------------------------------

/// Scalar patch field from an explicit jet callable.
class CallableScalar : public TensorField {
  public:
    explicit CallableScalar(std::function<Jet2(Vec2)> f) : f_(std::move(f)) {}
    int rank() const override { return 0; }
    void comps(const Vec2& p, double* out) const override { out[0] = f_(p).v; }
    void jets(const Vec2& p, Jet2* out) const override { out[0] = f_(p); }
    bool analytic_jets() const override { return true; }

  private:
    std::function<Jet2(Vec2)> f_;
};

/// y^s on the half-plane (rough Laplacian closed form: s(1-s) y^s).
TensorPtr make_power_scalar(double s);

/// Sum of plain (non-automorphized) bumps.
TensorPtr make_patch_scalar(std::vector<Bump> bumps);

/// Re(q(z) dz^2) for a polynomial q: exactly trace-free and divergence-free
/// for the hyperbolic metric whenever q is holomorphic.
class HolomorphicQuadDiff : public TensorField {
  public:
    explicit HolomorphicQuadDiff(std::vector<complexd> coeffs) : coeffs_(std::move(coeffs)) {}
    int rank() const override { return 2; }
    void comps(const Vec2& p, double* out) const override;
    void jets(const Vec2& p, Jet2* out) const override;
    bool analytic_jets() const override { return true; }

  private:
    void eval(complexd z, complexd& q, complexd& q1, complexd& q2) const;
    std::vector<complexd> coeffs_;
};

/// Patch tensor of rank 1 or 2 with bump-modulated constant components.
class PatchBumpTensor : public TensorField {
  public:
    PatchBumpTensor(int rank, std::vector<std::vector<Bump>> comp_bumps);
    int rank() const override { return rank_; }
    void comps(const Vec2& p, double* out) const override;
    void jets(const Vec2& p, Jet2* out) const override;
    bool analytic_jets() const override { return true; }

  private:
    int rank_;
    std::vector<std::vector<Bump>> comp_bumps_;
};

// ---------------------------------------------------------------------------
// combinators
// ---------------------------------------------------------------------------

/// a*S + b*T (matching ranks).
TensorPtr linear_combination(double a, TensorPtr S, double b, TensorPtr T);

/// Multiple of the hyperbolic metric: f * g0 as a rank-2 field.
TensorPtr scalar_times_g0(TensorPtr f);

/// Force stencil jets of the given step (for refinement studies);
/// order = 2 uses three-point stencils, order = 4 five-point.
TensorPtr with_stencil_jets(TensorPtr S, double h, int order = 4);

}  // namespace hypspec
