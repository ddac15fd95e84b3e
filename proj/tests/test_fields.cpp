#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hypspec/fields.hpp"

using namespace hypspec;

namespace {

std::shared_ptr<const FuchsianGroup> octagon() {
    static auto G = std::make_shared<FuchsianGroup>(make_genus2_octagon_group());
    return G;
}

void check_jets_against_stencil(const TensorField& F, const Vec2& p, double tol) {
    Jet2 a[8];
    F.jets(p, a);
    for (int k = 0; k < F.ncomps(); ++k) {
        const int kk = k;
        Jet2 s = stencil_jet2(
            [&](Vec2 q) {
                double c[8];
                F.comps(q, c);
                return c[kk];
            },
            p, 2e-4);
        CHECK(a[k].v == doctest::Approx(s.v).epsilon(1e-12));
        CHECK(a[k].dx - s.dx == doctest::Approx(0.0).epsilon(tol));
        CHECK(a[k].dy - s.dy == doctest::Approx(0.0).epsilon(tol));
        CHECK(a[k].dxx - s.dxx == doctest::Approx(0.0).epsilon(tol));
        CHECK(a[k].dxy - s.dxy == doctest::Approx(0.0).epsilon(tol));
        CHECK(a[k].dyy - s.dyy == doctest::Approx(0.0).epsilon(tol));
    }
}

}  // namespace

TEST_CASE("bump profile basics") {
    Bump b{{0.3, 1.2}, 0.8, 0.05};
    Jet2 at_center = bump_jet(b, b.center);
    CHECK(at_center.v == doctest::Approx(0.05).epsilon(1e-14));
    // support bound
    Vec2 outside = {0.3, 1.2 * std::exp(0.81)};
    CHECK(bump_jet(b, outside).v == 0.0);
    // positive inside
    Vec2 inside = {0.35, 1.25};
    CHECK(bump_jet(b, inside).v > 0.0);
    CHECK(bump_jet(b, inside).v < 0.05);
}

TEST_CASE("single bump analytic jets match stencils") {
    Bump b{{0.1, 1.0}, 0.9, 0.3};
    auto F = make_patch_scalar({b});
    check_jets_against_stencil(*F, {0.2, 1.1}, 1e-6);
    check_jets_against_stencil(*F, {-0.3, 0.8}, 1e-6);
}

TEST_CASE("invariant scalar field: exact invariance and jets") {
    auto G = octagon();
    auto phi = std::make_shared<InvariantScalarField>(G, std::vector<Bump>{{{0.0, 1.0}, 1.0, 0.05}},
                                                      0.0, 4);
    const Vec2 p{0.21, 0.93};
    const double v = phi->value(p);
    CHECK(v != 0.0);
    for (int i = 0; i < G->rank(); ++i) {
        const Vec2 q = G->generator(i).apply(p);
        CHECK(phi->value(q) == doctest::Approx(v).epsilon(1e-12));
        const Vec2 q2 = G->generator(i).inverse().apply(p);
        CHECK(phi->value(q2) == doctest::Approx(v).epsilon(1e-12));
    }
    // far translate through the reduction path
    const GroupElement far = G->evaluate_word("abcA");
    CHECK(phi->value(far.apply(p)) == doctest::Approx(v).epsilon(1e-11));

    check_jets_against_stencil(*phi, p, 1e-6);
    // jets at a far point (pullback path)
    check_jets_against_stencil(*phi, G->evaluate_word("ab").apply(p), 2e-5);
}

TEST_CASE("invariant scalar: constant plus bump") {
    auto G = octagon();
    auto phi = std::make_shared<InvariantScalarField>(G, std::vector<Bump>{}, 0.5 * std::log(2.0));
    CHECK(phi->value({1.0, 2.0}) == doctest::Approx(0.5 * std::log(2.0)));
    Jet2 j;
    phi->jets({1.0, 2.0}, &j);
    CHECK(j.dx == 0.0);
    CHECK(j.dxx == 0.0);
}

TEST_CASE("invariant one-form: pullback invariance and jets") {
    auto G = octagon();
    std::array<std::vector<Bump>, 2> seeds;
    seeds[0] = {{{0.1, 1.1}, 0.9, 0.2}};
    seeds[1] = {{{-0.2, 0.9}, 0.8, -0.15}};
    auto pfield = std::make_shared<InvariantOneForm>(G, seeds, 4);

    const Vec2 p{0.17, 1.05};
    double c[2];
    pfield->comps(p, c);
    CHECK((std::abs(c[0]) + std::abs(c[1])) > 1e-6);

    for (int i = 0; i < G->rank(); ++i) {
        const GroupElement& g = G->generator(i);
        const Vec2 q = g.apply(p);
        double cq[2];
        pfield->comps(q, cq);
        // pullback convention: p_p(u) = p_q(dg u), J the real matrix of g'(p)
        const complexd dp = g.deriv(p.z());
        const double p1 = dp.real(), p2 = dp.imag();
        const double pulled_x = p1 * cq[0] + p2 * cq[1];
        const double pulled_y = -p2 * cq[0] + p1 * cq[1];
        CHECK(pulled_x == doctest::Approx(c[0]).epsilon(1e-11));
        CHECK(pulled_y == doctest::Approx(c[1]).epsilon(1e-11));
    }
    check_jets_against_stencil(*pfield, p, 2e-6);
    check_jets_against_stencil(*pfield, G->evaluate_word("aC").apply(p), 5e-5);
}

TEST_CASE("invariant rank-2 field: pullback invariance and trace-free option") {
    auto G = octagon();
    std::array<std::vector<Bump>, 3> seeds;
    seeds[0] = {{{0.12, 1.04}, 0.9, 0.3}};
    seeds[1] = {{{-0.1, 1.2}, 0.8, 0.2}};
    seeds[2] = {{{0.0, 0.85}, 0.7, -0.25}};
    auto S = std::make_shared<InvariantRank2Field>(G, seeds, false, 4);

    const Vec2 p{0.05, 1.12};
    double c[3];
    S->comps(p, c);
    for (int i = 0; i < G->rank(); ++i) {
        const GroupElement& g = G->generator(i);
        const Vec2 q = g.apply(p);
        double cq[3];
        S->comps(q, cq);
        const complexd dp = g.deriv(p.z());
        const double p1 = dp.real(), p2 = dp.imag();
        const double pxx = p1 * p1 * cq[0] + 2 * p1 * p2 * cq[1] + p2 * p2 * cq[2];
        const double pxy = -p1 * p2 * cq[0] + (p1 * p1 - p2 * p2) * cq[1] + p1 * p2 * cq[2];
        const double pyy = p2 * p2 * cq[0] - 2 * p1 * p2 * cq[1] + p1 * p1 * cq[2];
        CHECK(pxx == doctest::Approx(c[0]).epsilon(1e-11));
        CHECK(pxy == doctest::Approx(c[1]).epsilon(1e-11));
        CHECK(pyy == doctest::Approx(c[2]).epsilon(1e-11));
    }

    auto Stf = std::make_shared<InvariantRank2Field>(G, seeds, true, 4);
    double ct[3];
    Stf->comps(p, ct);
    CHECK(ct[0] + ct[2] == doctest::Approx(0.0).epsilon(1e-14));  // g0-trace-free
}

TEST_CASE("holomorphic quadratic differential") {
    HolomorphicQuadDiff q({complexd(1.0, 0.5), complexd(0.0, 0.0), complexd(-0.3, 0.2)});
    const Vec2 p{0.4, 1.3};
    double c[3];
    q.comps(p, c);
    CHECK(c[0] + c[2] == doctest::Approx(0.0).epsilon(1e-15));  // trace-free by construction
    check_jets_against_stencil(q, p, 1e-7);
}

TEST_CASE("truncation guard rejects oversized bumps") {
    auto G = octagon();
    // radius large enough that length-(L+1) words still reach the region
    CHECK_THROWS_AS(InvariantScalarField(G, {{{0.0, 1.0}, 2.5, 0.1}}, 0.0, 1), ConfigError);
}

TEST_CASE("linear combination and scalar times g0") {
    auto f = make_patch_scalar({{{0.0, 1.0}, 0.8, 1.0}});
    auto Sg = scalar_times_g0(f);
    const Vec2 p{0.1, 1.1};
    double c[3];
    Sg->comps(p, c);
    CHECK(c[0] == doctest::Approx(f->value(p) / (p.y * p.y)));
    CHECK(c[1] == 0.0);
    check_jets_against_stencil(*Sg, p, 1e-6);

    auto two = linear_combination(1.0, Sg, 1.0, Sg);
    double c2[3];
    two->comps(p, c2);
    CHECK(c2[0] == doctest::Approx(2 * c[0]));
}
