#include "hypspec/fields.hpp"

#include <algorithm>
#include <cmath>

namespace hypspec {

void TensorField::jets(const Vec2& p, Jet2* out) const {
    const int n = ncomps();
    for (int k = 0; k < n; ++k) {
        const int kk = k;
        out[k] = stencil_jet2(
            [this, kk, n](Vec2 q) {
                double c[8];
                comps(q, c);
                return c[kk];
            },
            p, jet_h);
    }
}

double TensorField::value(const Vec2& p) const {
    double c[8];
    comps(p, c);
    return c[0];
}

Jet2 TensorField::jet2(const Vec2& p) const {
    Jet2 j[8];
    jets(p, j);
    return j[0];
}

void bump_profile(double Q, double radius, double amplitude, double& h, double& h1, double& h2) {
    const double Qr = std::cosh(radius) - 1.0;
    const double t = Q / Qr;
    if (t >= 1.0 - 1e-14 || Q < 0.0) {
        h = h1 = h2 = 0.0;
        return;
    }
    const double om = 1.0 - t * t;
    const double w = 1.0 / om;
    const double e = amplitude * std::exp(1.0 - w);
    const double wt = 2.0 * t * w * w;
    const double wtt = 2.0 * w * w + 8.0 * t * t * w * w * w;
    h = e;
    h1 = -e * wt / Qr;
    h2 = e * (wt * wt - wtt) / (Qr * Qr);
}

namespace {

// jet of Q(u,v) = cosh(dist((u,v), c)) - 1 in the (u,v) variables
Jet2 deviation_jet(const Vec2& at, const Vec2& c) {
    const double du = at.x - c.x, dv = at.y - c.y;
    const double v = at.y, cy = c.y;
    const double s = du * du + dv * dv;
    Jet2 q;
    q.v = s / (2.0 * v * cy);
    q.dx = du / (v * cy);
    q.dy = dv / (v * cy) - q.v / v;
    q.dxx = 1.0 / (v * cy);
    q.dxy = -du / (v * v * cy);
    q.dyy = 1.0 / (v * cy) - dv / (v * v * cy) - q.dy / v + q.v / (v * v);
    return q;
}

// jet of h(Q) from the profile at a point, in (u,v)
Jet2 bump_uv_jet(const Bump& b, const Vec2& at) {
    const Jet2 q = deviation_jet(at, b.center);
    double h, h1, h2;
    bump_profile(q.v, b.radius, b.amplitude, h, h1, h2);
    Jet2 g;
    g.v = h;
    g.dx = h1 * q.dx;
    g.dy = h1 * q.dy;
    g.dxx = h2 * q.dx * q.dx + h1 * q.dxx;
    g.dxy = h2 * q.dx * q.dy + h1 * q.dxy;
    g.dyy = h2 * q.dy * q.dy + h1 * q.dyy;
    return g;
}

bool bump_reaches(const Bump& b, const Vec2& p) {
    return cosh_dist(p, b.center) < std::cosh(b.radius);
}

}  // namespace

Jet2 bump_jet(const Bump& b, const Vec2& at) { return bump_uv_jet(b, at); }

// ---------------------------------------------------------------------------

Automorphizer::Automorphizer(std::shared_ptr<const FuchsianGroup> group, double radius_max,
                             int truncation_length, double work_radius)
    : group_(std::move(group)), work_radius_(work_radius), trunc_len_(truncation_length) {
    const Vec2 center = group_->dirichlet_center();
    const double reach = work_radius_ + radius_max + 0.05;

    // Word BFS up to truncation_length; keep elements whose pulled-back seed
    // can touch the working region. The group is torsion-free, so the orbit
    // point of the center identifies the element; orbit points are at least
    // one translation length apart, which makes the dedup unambiguous.
    struct Node {
        GroupElement g;
        int last;  // side-pairing index, -1 for root
    };
    std::vector<Vec2> term_points{center};
    terms_.push_back(GroupElement::identity());
    auto consider = [&](const GroupElement& g) -> double {
        const Vec2 q = g.inverse().apply(center);
        const double d = hyp_dist(q, center);
        if (d <= reach) {
            bool dup = false;
            for (const Vec2& tp : term_points)
                if (hyp_dist(tp, q) < 1.0) {
                    dup = true;
                    break;
                }
            if (!dup) {
                term_points.push_back(q);
                terms_.push_back(g);
            }
        }
        return d;
    };

    std::vector<Node> frontier{{GroupElement::identity(), -1}};
    completeness_margin_ = -1e9;
    const auto& moves = group_->side_pairings();
    const int rank = group_->rank();
    for (int len = 1; len <= trunc_len_ + 2; ++len) {
        std::vector<Node> next;
        next.reserve(frontier.size() * (2 * rank - 1));
        for (const Node& n : frontier) {
            for (std::size_t mi = 0; mi < moves.size(); ++mi) {
                if (n.last >= 0 && (int)mi == (n.last + rank) % (2 * rank)) continue;
                GroupElement g = n.g * moves[mi];
                const double d = (len <= trunc_len_)
                                     ? 0.0
                                     : hyp_dist(g.inverse().apply(center), center);
                if (len <= trunc_len_) {
                    consider(g);
                } else {
                    // truncation certificate: longer words must stay out of reach
                    completeness_margin_ = std::max(completeness_margin_, reach - d);
                    if (d <= reach)
                        throw ConfigError(
                            "Automorphizer: truncation length " + std::to_string(trunc_len_) +
                            " too small, a word of length " + std::to_string(len) +
                            " still reaches the working region (increase truncation_length "
                            "or shrink bump radii)");
                }
                next.push_back({g, (int)mi});
            }
        }
        frontier = std::move(next);
    }
}

bool Automorphizer::inside_work_region(const Vec2& p) const {
    return cosh_dist(p, group_->dirichlet_center()) <= std::cosh(work_radius_);
}

// ---------------------------------------------------------------------------

InvariantScalarField::InvariantScalarField(std::shared_ptr<const FuchsianGroup> group,
                                           std::vector<Bump> bumps, double constant,
                                           int truncation_length)
    : bumps_(std::move(bumps)), constant_(constant) {
    double rmax = 0.0;
    for (auto& b : bumps_) {
        // anchor bump centers inside the fundamental domain
        b.center = group->reduce_to_domain(b.center).first;
        rmax = std::max(rmax, b.radius);
    }
    autom_ = std::make_shared<Automorphizer>(std::move(group), rmax, truncation_length);
}

Jet2 InvariantScalarField::local_jet(const Vec2& p) const {
    Jet2 sum;
    sum.v = constant_;
    for (const GroupElement& w : autom_->terms()) {
        const Vec2 wp = w.apply(p);
        bool any = false;
        Jet2 guv;
        for (const Bump& b : bumps_) {
            if (!bump_reaches(b, wp)) continue;
            guv += bump_uv_jet(b, wp);
            any = true;
        }
        if (!any) continue;
        sum += compose_holomorphic(guv, w.deriv(p.z()), w.deriv2(p.z()));
    }
    return sum;
}

void InvariantScalarField::comps(const Vec2& p, double* out) const {
    Jet2 j;
    jets(p, &j);
    out[0] = j.v;
}

void InvariantScalarField::jets(const Vec2& p, Jet2* out) const {
    if (autom_->inside_work_region(p)) {
        out[0] = local_jet(p);
        return;
    }
    auto [pt, R] = autom_->group().reduce_to_domain(p);
    const Jet2 inner = local_jet(pt);
    out[0] = compose_holomorphic(inner, R.deriv(p.z()), R.deriv2(p.z()));
}

// ---------------------------------------------------------------------------

InvariantOneForm::InvariantOneForm(std::shared_ptr<const FuchsianGroup> group,
                                   std::array<std::vector<Bump>, 2> comp_bumps,
                                   int truncation_length)
    : comp_bumps_(std::move(comp_bumps)) {
    double rmax = 0.0;
    for (auto& comp : comp_bumps_)
        for (auto& b : comp) {
            b.center = group->reduce_to_domain(b.center).first;
            rmax = std::max(rmax, b.radius);
        }
    autom_ = std::make_shared<Automorphizer>(std::move(group), rmax, truncation_length);
}

namespace {

// jets of the pulled-back components of a rank-1 seed through the Moebius
// map w: comp = J^T seed(w z), J the real matrix of w'(z).
void pullback_oneform_jets(const GroupElement& w, const Vec2& p, const Jet2 seed_uv[2],
                           Jet2 out[2]) {
    const complexd z = p.z();
    Jet2 re_p, im_p;
    mobius_deriv_jets(w.deriv(z), w.deriv2(z), w.deriv3(z), re_p, im_p);
    Jet2 B[2];
    for (int j = 0; j < 2; ++j)
        B[j] = compose_holomorphic(seed_uv[j], w.deriv(z), w.deriv2(z));
    out[0] += jet_mul(re_p, B[0]) + jet_mul(im_p, B[1]);
    out[1] += jet_mul(im_p, B[0]) * (-1.0) + jet_mul(re_p, B[1]);
}

}  // namespace

void InvariantOneForm::local_jets(const Vec2& p, Jet2* out) const {
    out[0] = Jet2{};
    out[1] = Jet2{};
    for (const GroupElement& w : autom_->terms()) {
        const Vec2 wp = w.apply(p);
        Jet2 seed_uv[2];
        bool any = false;
        for (int j = 0; j < 2; ++j)
            for (const Bump& b : comp_bumps_[j]) {
                if (!bump_reaches(b, wp)) continue;
                seed_uv[j] += bump_uv_jet(b, wp);
                any = true;
            }
        if (!any) continue;
        pullback_oneform_jets(w, p, seed_uv, out);
    }
}

void InvariantOneForm::comps(const Vec2& p, double* out) const {
    Jet2 j[2];
    jets(p, j);
    out[0] = j[0].v;
    out[1] = j[1].v;
}

void InvariantOneForm::jets(const Vec2& p, Jet2* out) const {
    if (autom_->inside_work_region(p)) {
        local_jets(p, out);
        return;
    }
    auto [pt, R] = autom_->group().reduce_to_domain(p);
    Jet2 inner[2];
    local_jets(pt, inner);
    out[0] = Jet2{};
    out[1] = Jet2{};
    pullback_oneform_jets(R, p, inner, out);
}

// ---------------------------------------------------------------------------

InvariantRank2Field::InvariantRank2Field(std::shared_ptr<const FuchsianGroup> group,
                                         std::array<std::vector<Bump>, 3> comp_bumps,
                                         bool trace_free, int truncation_length)
    : comp_bumps_(std::move(comp_bumps)), trace_free_(trace_free) {
    double rmax = 0.0;
    for (auto& comp : comp_bumps_)
        for (auto& b : comp) {
            b.center = group->reduce_to_domain(b.center).first;
            rmax = std::max(rmax, b.radius);
        }
    autom_ = std::make_shared<Automorphizer>(std::move(group), rmax, truncation_length);
}

void InvariantRank2Field::local_comps(const Vec2& p, double* out) const {
    out[0] = out[1] = out[2] = 0.0;
    for (const GroupElement& w : autom_->terms()) {
        const Vec2 wp = w.apply(p);
        double s[3] = {0, 0, 0};
        bool any = false;
        for (int j = 0; j < 3; ++j)
            for (const Bump& b : comp_bumps_[j]) {
                if (!bump_reaches(b, wp)) continue;
                double h, h1, h2;
                bump_profile(cosh_dist(wp, b.center) - 1.0, b.radius, b.amplitude, h, h1, h2);
                s[j] += h;
                any = true;
            }
        if (!any) continue;
        // J^T S J with J = [[p1, -p2], [p2, p1]]
        const complexd dp = w.deriv(p.z());
        const double p1 = dp.real(), p2 = dp.imag();
        const double sxx = s[0], sxy = s[1], syy = s[2];
        out[0] += p1 * p1 * sxx + 2 * p1 * p2 * sxy + p2 * p2 * syy;
        out[1] += -p1 * p2 * sxx + (p1 * p1 - p2 * p2) * sxy + p1 * p2 * syy;
        out[2] += p2 * p2 * sxx - 2 * p1 * p2 * sxy + p1 * p1 * syy;
    }
}

void InvariantRank2Field::comps(const Vec2& p, double* out) const {
    if (autom_->inside_work_region(p)) {
        local_comps(p, out);
    } else {
        auto [pt, R] = autom_->group().reduce_to_domain(p);
        double s[3];
        local_comps(pt, s);
        const complexd dp = R.deriv(p.z());
        const double p1 = dp.real(), p2 = dp.imag();
        out[0] = p1 * p1 * s[0] + 2 * p1 * p2 * s[1] + p2 * p2 * s[2];
        out[1] = -p1 * p2 * s[0] + (p1 * p1 - p2 * p2) * s[1] + p1 * p2 * s[2];
        out[2] = p2 * p2 * s[0] - 2 * p1 * p2 * s[1] + p1 * p1 * s[2];
    }
    if (trace_free_) {
        // g0-trace-free projection is the Euclidean one in these coordinates
        const double half_tr = 0.5 * (out[0] + out[2]);
        out[0] -= half_tr;
        out[2] -= half_tr;
    }
}

// ---------------------------------------------------------------------------

TensorPtr make_power_scalar(double s) {
    return std::make_shared<CallableScalar>([s](Vec2 p) {
        Jet2 j;
        const double ys = std::pow(p.y, s);
        j.v = ys;
        j.dy = s * ys / p.y;
        j.dyy = s * (s - 1) * ys / (p.y * p.y);
        return j;
    });
}

namespace {

class PatchScalar : public TensorField {
  public:
    explicit PatchScalar(std::vector<Bump> bumps) : bumps_(std::move(bumps)) {}
    int rank() const override { return 0; }
    void comps(const Vec2& p, double* out) const override {
        Jet2 j;
        jets(p, &j);
        out[0] = j.v;
    }
    void jets(const Vec2& p, Jet2* out) const override {
        out[0] = Jet2{};
        for (const Bump& b : bumps_) out[0] += bump_uv_jet(b, p);
    }
    bool analytic_jets() const override { return true; }

  private:
    std::vector<Bump> bumps_;
};

}  // namespace

TensorPtr make_patch_scalar(std::vector<Bump> bumps) {
    return std::make_shared<PatchScalar>(std::move(bumps));
}

void HolomorphicQuadDiff::eval(complexd z, complexd& q, complexd& q1, complexd& q2) const {
    q = q1 = q2 = 0.0;
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
        q2 = q2 * z + q1 * 2.0;
        q1 = q1 * z + q;
        q = q * z + coeffs_[k];
    }
}

void HolomorphicQuadDiff::comps(const Vec2& p, double* out) const {
    complexd q, q1, q2;
    eval(p.z(), q, q1, q2);
    out[0] = q.real();
    out[1] = -q.imag();
    out[2] = -q.real();
}

void HolomorphicQuadDiff::jets(const Vec2& p, Jet2* out) const {
    complexd q, q1, q2;
    eval(p.z(), q, q1, q2);
    // Re q and Im q jets via Cauchy-Riemann
    const Jet2 re{q.real(), q1.real(), -q1.imag(), q2.real(), -q2.imag(), -q2.real()};
    const Jet2 im{q.imag(), q1.imag(), q1.real(), q2.imag(), q2.real(), -q2.imag()};
    out[0] = re;
    out[1] = im * (-1.0);
    out[2] = re * (-1.0);
}

PatchBumpTensor::PatchBumpTensor(int rank, std::vector<std::vector<Bump>> comp_bumps)
    : rank_(rank), comp_bumps_(std::move(comp_bumps)) {
    if (static_cast<int>(comp_bumps_.size()) != rank_ + 1)
        throw ConfigError("PatchBumpTensor: need rank+1 component seeds");
}

void PatchBumpTensor::comps(const Vec2& p, double* out) const {
    Jet2 j[8];
    jets(p, j);
    for (int k = 0; k <= rank_; ++k) out[k] = j[k].v;
}

void PatchBumpTensor::jets(const Vec2& p, Jet2* out) const {
    for (int k = 0; k <= rank_; ++k) {
        out[k] = Jet2{};
        for (const Bump& b : comp_bumps_[k]) out[k] += bump_uv_jet(b, p);
    }
}

// ---------------------------------------------------------------------------

namespace {

class LinComb : public TensorField {
  public:
    LinComb(double a, TensorPtr S, double b, TensorPtr T)
        : a_(a), S_(std::move(S)), b_(b), T_(std::move(T)) {
        if (S_->rank() != T_->rank()) throw ConfigError("linear_combination: rank mismatch");
    }
    int rank() const override { return S_->rank(); }
    void comps(const Vec2& p, double* out) const override {
        double cs[8], ct[8];
        S_->comps(p, cs);
        T_->comps(p, ct);
        for (int k = 0; k < ncomps(); ++k) out[k] = a_ * cs[k] + b_ * ct[k];
    }
    void jets(const Vec2& p, Jet2* out) const override {
        Jet2 js[8], jt[8];
        S_->jets(p, js);
        T_->jets(p, jt);
        for (int k = 0; k < ncomps(); ++k) out[k] = js[k] * a_ + jt[k] * b_;
    }
    bool analytic_jets() const override { return S_->analytic_jets() && T_->analytic_jets(); }

  private:
    double a_;
    TensorPtr S_;
    double b_;
    TensorPtr T_;
};

class ScalarTimesG0 : public TensorField {
  public:
    explicit ScalarTimesG0(TensorPtr f) : f_(std::move(f)) {
        if (f_->rank() != 0) throw ConfigError("scalar_times_g0: need a scalar field");
    }
    int rank() const override { return 2; }
    void comps(const Vec2& p, double* out) const override {
        const double w = f_->value(p) / (p.y * p.y);
        out[0] = w;
        out[1] = 0.0;
        out[2] = w;
    }
    void jets(const Vec2& p, Jet2* out) const override {
        Jet2 f;
        f_->jets(p, &f);
        const double y = p.y;
        // jet of 1/y^2
        const Jet2 inv_y2{1.0 / (y * y), 0.0, -2.0 / (y * y * y), 0.0, 0.0, 6.0 / (y * y * y * y)};
        out[0] = jet_mul(f, inv_y2);
        out[1] = Jet2{};
        out[2] = out[0];
    }
    bool analytic_jets() const override { return f_->analytic_jets(); }

  private:
    TensorPtr f_;
};

class StencilJets : public TensorField {
  public:
    StencilJets(TensorPtr S, double h, int order) : S_(std::move(S)), h_(h), order_(order) {}
    int rank() const override { return S_->rank(); }
    void comps(const Vec2& p, double* out) const override { S_->comps(p, out); }
    void jets(const Vec2& p, Jet2* out) const override {
        for (int k = 0; k < ncomps(); ++k) {
            auto f = [this, k](Vec2 q) {
                double c[8];
                S_->comps(q, c);
                return c[k];
            };
            out[k] = (order_ == 2) ? stencil_jet2_order2(f, p, h_) : stencil_jet2(f, p, h_);
        }
    }

  private:
    TensorPtr S_;
    double h_;
    int order_;
};

}  // namespace

TensorPtr linear_combination(double a, TensorPtr S, double b, TensorPtr T) {
    return std::make_shared<LinComb>(a, std::move(S), b, std::move(T));
}

TensorPtr scalar_times_g0(TensorPtr f) { return std::make_shared<ScalarTimesG0>(std::move(f)); }

TensorPtr with_stencil_jets(TensorPtr S, double h, int order) {
    return std::make_shared<StencilJets>(std::move(S), h, order);
}

}  // namespace hypspec
