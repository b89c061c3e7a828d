#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctrlk/errors.hpp"
#include "ctrlk/squeeze.hpp"
#include "generators.hpp"

using namespace ctrlk;
using namespace ctrlk::testing;

namespace {

const IntervalSpec I0{Rational(0)};
const LayerSchedule unit_sched{Rational(1)};

Matrix<Rational> one() {
    Matrix<Rational> m(1, 1);
    m.at(0, 0) = Rational(1);
    return m;
}

GeoModule midpoint_module() {
    GeoModule m(Group::InfiniteCyclic);
    m.add_orbit({0, Rational(1, 2), Rational(1)}, 1);
    return m;
}

GeoMorphism integer_shift() {
    GeoModule p(Group::InfiniteCyclic);
    p.add_orbit({0, Rational(0), Rational(1)}, 1);
    GeoMorphism g(p, p);
    g.add_block({0, Rational(0), Rational(1)}, {0, Rational(1), Rational(1)}, one());
    return g;
}

} // namespace

TEST_CASE("contraction map values") {
    // n = 1 is the identity
    for (long i = -5; i <= 5; ++i)
        CHECK(squeeze_x(I0, 1, Rational(i, 3)) == Rational(i, 3));

    CHECK(squeeze_x(I0, 2, Rational(1, 2)) == Rational(1, 2));
    CHECK(squeeze_x(I0, 2, Rational(1, 8)) == Rational(5, 16));

    // commutes with integer translation
    std::mt19937 rng(20260831);
    for (int i = 0; i < 50; ++i) {
        Rational x = rand_rational(rng, -20, 20, 12);
        int n = 1 + i % 6;
        CHECK(squeeze_x(I0, n, x + Rational(1)) == squeeze_x(I0, n, x) + Rational(1));
        CHECK(unsqueeze_x(I0, n, squeeze_x(I0, n, x)) == x);
    }

    // a shifted interval
    IntervalSpec I3{Rational(1, 3)};
    CHECK(squeeze_x(I3, 2, Rational(1, 3) + Rational(1, 2)) == Rational(1, 3) + Rational(1, 2));
    CHECK(unsqueeze_x(I3, 5, squeeze_x(I3, 5, Rational(2, 5))) == Rational(2, 5));

    // off the image
    CHECK_THROWS_AS(unsqueeze_x(I0, 3, Rational(1, 8)), UsageError);
}

TEST_CASE("first layer is the input") {
    std::mt19937 rng(20260832);
    for (int i = 0; i < 20; ++i) {
        GeoModule a = rand_interval_module(rng, 4, 2, 3);
        CHECK(squeeze_layer(a, I0, unit_sched, 1) == a);
        GeoMorphism f = rand_endo(rng, a, 4, 0);
        CHECK(squeeze_layer(f, I0, unit_sched, 1) == f);
    }
}

TEST_CASE("layer relocation") {
    GeoModule a = midpoint_module();
    GeoModule s3 = squeeze_layer(a, I0, unit_sched, 3);
    CHECK(s3.rank_at({0, Rational(1, 2), Rational(3)}) == 1);
    CHECK(s3.orbit_data().size() == 1);

    // squeezed supports live at height >= tau(n), inside the image band
    std::mt19937 rng(20260833);
    for (int i = 0; i < 30; ++i) {
        GeoModule m = rand_interval_module(rng, 4, 2, 3);
        int n = 2 + i % 5;
        GeoModule sn = squeeze_layer(m, I0, unit_sched, n);
        for (const auto& [rep, rank] : sn.orbit_data()) {
            CHECK(rep.t >= unit_sched.tau(n));
            CHECK((rep.x - Rational(1, 2)).abs() < Rational(1, 2 * static_cast<long>(n)));
        }
    }
}

TEST_CASE("horizontal size contracts exactly") {
    std::mt19937 rng(20260834);
    for (int i = 0; i < 40; ++i) {
        GeoModule a = rand_interval_module(rng, 4, 2, 2);
        GeoMorphism f = rand_endo(rng, a, 5, 0);
        int n = 1 + i % 6;
        GeoMorphism sn = squeeze_layer(f, I0, unit_sched, n);
        CHECK(sn.sizes().hsize == f.sizes().hsize / Rational(n));
        CHECK(sn.sizes().vsize == f.sizes().vsize);
    }
}

TEST_CASE("squeezing is functorial") {
    std::mt19937 rng(20260835);
    for (int i = 0; i < 40; ++i) {
        GeoModule a = rand_interval_module(rng, 3, 2, 2);
        GeoModule b = rand_interval_module(rng, 3, 2, 2);
        GeoModule c = rand_interval_module(rng, 3, 2, 2);
        GeoMorphism f = rand_morphism(rng, a, b, 4, 0);
        GeoMorphism g = rand_morphism(rng, b, c, 4, 0);
        int n = 1 + i % 6;
        CHECK(squeeze_layer(compose(g, f), I0, unit_sched, n) ==
              compose(squeeze_layer(g, I0, unit_sched, n), squeeze_layer(f, I0, unit_sched, n)));
        CHECK(squeeze_layer(GeoMorphism::identity(a), I0, unit_sched, n) ==
              GeoMorphism::identity(squeeze_layer(a, I0, unit_sched, n)));
    }
}

TEST_CASE("total squeezing") {
    GeoModule a = midpoint_module();
    LayerSum s = squeeze_total(a, I0, unit_sched, 3);
    REQUIRE(s.count() == 3);
    for (int n = 1; n <= 3; ++n)
        CHECK(s.layer(n).rank_at({0, Rational(1, 2), Rational(n)}) == 1);

    // S applied to an identity is an identity, any truncation
    std::mt19937 rng(20260836);
    GeoModule b = rand_interval_module(rng, 4, 2, 2);
    for (int N : {1, 4, 7}) {
        auto sid = squeeze_total(GeoMorphism::identity(b), I0, unit_sched, N);
        CHECK(sid == LayerMorphism::identity(squeeze_total(b, I0, unit_sched, N)));
    }

    // N = 1 is the morphism itself
    GeoMorphism f = rand_endo(rng, b, 4, 0);
    auto s1 = squeeze_total(f, I0, unit_sched, 1);
    CHECK(s1.block(1, 1) == f);
}

TEST_CASE("layer isomorphisms") {
    GeoModule a = midpoint_module();
    CHECK(layer_iso(a, I0, unit_sched, 2, 2) ==
          GeoMorphism::identity(squeeze_layer(a, I0, unit_sched, 2)));

    GeoMorphism i12 = layer_iso(a, I0, unit_sched, 1, 2);
    CHECK(i12.block_at({0, Rational(1, 2), Rational(1)}, {0, Rational(1, 2), Rational(2)}) ==
          one());

    std::mt19937 rng(20260837);
    GeoModule b = rand_interval_module(rng, 4, 2, 2);
    // iso(i,j) . iso(k,i) = iso(k,j)
    CHECK(compose(layer_iso(b, I0, unit_sched, 3, 5), layer_iso(b, I0, unit_sched, 2, 3)) ==
          layer_iso(b, I0, unit_sched, 2, 5));
    // and inverses compose to the identity
    CHECK(compose(layer_iso(b, I0, unit_sched, 4, 2), layer_iso(b, I0, unit_sched, 2, 4)) ==
          GeoMorphism::identity(squeeze_layer(b, I0, unit_sched, 2)));
}

TEST_CASE("layer conjugation identity") {
    // iso back-conjugation carries each layer's squeeze to its neighbor's
    std::mt19937 rng(20260838);
    for (int i = 0; i < 20; ++i) {
        GeoModule a = rand_interval_module(rng, 3, 2, 2);
        GeoMorphism f = rand_endo(rng, a, 4, 0);
        int base = 1 + i % 5;
        int next = base + 1;
        GeoMorphism lhs = compose(layer_iso(a, I0, unit_sched, next, base),
                                  compose(squeeze_layer(f, I0, unit_sched, next),
                                          layer_iso(a, I0, unit_sched, base, next)));
        CHECK(lhs == squeeze_layer(f, I0, unit_sched, base));
    }
}

TEST_CASE("total squeezing is functorial") {
    std::mt19937 rng(20260843);
    for (int i = 0; i < 15; ++i) {
        GeoModule a = rand_interval_module(rng, 3, 2, 2);
        GeoModule b = rand_interval_module(rng, 3, 2, 2);
        GeoModule c = rand_interval_module(rng, 3, 2, 2);
        GeoMorphism f = rand_morphism(rng, a, b, 4, 0);
        GeoMorphism g = rand_morphism(rng, b, c, 4, 0);
        const int N = 5;
        CHECK(squeeze_total(compose(g, f), I0, unit_sched, N) ==
              compose(squeeze_total(g, I0, unit_sched, N),
                      squeeze_total(f, I0, unit_sched, N)));
    }
}

TEST_CASE("flasque witness") {
    // empty base: both maps empty
    GeoModule empty(Group::InfiniteCyclic);
    auto fp = flasque_iso(empty, I0, 4);
    CHECK(fp.fwd.blocks().empty());
    CHECK(fp.bwd.blocks().empty());

    // one-point base, N = 4: the extra copy feeds layer 1, layer n feeds n+1
    GeoModule a = midpoint_module();
    auto fa = flasque_iso(a, I0, 4);
    CHECK(fa.fwd.blocks().count({1, 5}) == 1);
    CHECK(fa.fwd.blocks().count({2, 1}) == 1);
    CHECK(fa.fwd.blocks().count({4, 3}) == 1);
    CHECK(fa.fwd.blocks().count({5, 4}) == 0);

    CHECK(compose(fa.fwd, fa.bwd) == LayerMorphism::identity(fa.stack));
    auto back = compose(fa.bwd, fa.fwd);
    Rational cut(39, 10); // strictly below tau(4)
    CHECK(back.below(cut) == LayerMorphism::identity(fa.stack_plus).below(cut));
    CHECK(back != LayerMorphism::identity(fa.stack_plus)); // truncation visible at the top

    // random bases, N = 8, identity below tau(8)
    std::mt19937 rng(20260839);
    for (int i = 0; i < 15; ++i) {
        GeoModule b = rand_interval_module(rng, 5, 3, 2);
        auto fb = flasque_iso(b, I0, 8);
        CHECK(compose(fb.fwd, fb.bwd) == LayerMorphism::identity(fb.stack));
        Rational lim(7999, 1000);
        CHECK(compose(fb.bwd, fb.fwd).below(lim) ==
              LayerMorphism::identity(fb.stack_plus).below(lim));
    }
}

TEST_CASE("band subspaces") {
    SubspaceSpec u = subspace_U(I0);
    CHECK(u.contains({0, Rational(1, 3), Rational(1)}));
    CHECK(u.contains({0, Rational(1, 2), Rational(17)}));
    CHECK(u.contains({0, Rational(7, 3), Rational(1)})); // periodic translate
    CHECK_FALSE(u.contains({0, Rational(1, 4), Rational(1)}));

    SubspaceSpec v = subspace_V(I0, unit_sched, 4);
    // n = 2 box is [1/2 - 1/12, 1/2 + 1/12] x [2, 3)
    CHECK(v.contains({0, Rational(1, 2) - Rational(1, 12), Rational(2)}));
    CHECK(v.contains({0, Rational(1, 2) + Rational(1, 12), Rational(5, 2)}));
    CHECK_FALSE(v.contains({0, Rational(1, 2) + Rational(1, 12), Rational(3)})); // level 3 narrower
    CHECK(v.contains({0, Rational(1, 2) + Rational(1, 18), Rational(3)}));
    CHECK_FALSE(v.contains({0, Rational(1, 2) - Rational(1, 4), Rational(2)}));
    // terminal box keeps width 1/(6N) upward
    CHECK(v.contains({0, Rational(1, 2) + Rational(1, 24), Rational(100)}));
    CHECK_FALSE(v.contains({0, Rational(1, 2) + Rational(1, 12), Rational(100)}));

    // V lies inside U
    std::mt19937 rng(20260840);
    for (int i = 0; i < 200; ++i) {
        Point p{0, rand_rational(rng, -12, 12, 12), Rational(1 + i % 9)};
        if (v.contains(p)) CHECK(u.contains(p));
    }
}

TEST_CASE("lemma identity check") {
    Window w;
    w.x_lo = Rational(-2);
    w.x_hi = Rational(2);
    w.t_hi = Rational(9);

    // identity morphism passes
    GeoModule a = midpoint_module();
    CHECK(lemma_identity_check(GeoMorphism::identity(a), I0, unit_sched, 5, w));

    // identity on U plus arbitrary blocks away from U still passes
    std::mt19937 rng(20260841);
    SubspaceSpec u = subspace_U(I0);
    int done = 0;
    while (done < 20) {
        GeoModule b = rand_interval_module(rng, 4, 2, 2);
        GeoMorphism gamma = GeoMorphism::zero(b, b);
        for (const auto& [rep, rank] : b.orbit_data())
            if (u.contains(rep))
                gamma.add_block(rep, rep,
                                Matrix<Rational>::identity(static_cast<std::size_t>(rank)));
        GeoMorphism junk = rand_endo(rng, b, 4, 0);
        for (const auto& [key, m] : junk.blocks())
            if (!u.contains(key.first) && !u.contains(key.second))
                gamma.add_block(key.first, key.second, m);
        if (!is_identity_on(gamma, u)) continue;
        ++done;
        CHECK(lemma_identity_check(gamma, I0, unit_sched, 5, w));
    }

    // precondition violation is reported distinctly
    GeoModule c(Group::InfiniteCyclic);
    c.add_orbit({0, Rational(1, 2), Rational(1)}, 1);
    GeoMorphism bad(c, c);
    Matrix<Rational> two(1, 1);
    two.at(0, 0) = Rational(2);
    bad.add_block({0, Rational(1, 2), Rational(1)}, {0, Rational(1, 2), Rational(1)}, two);
    CHECK_THROWS_AS(lemma_identity_check(bad, I0, unit_sched, 3, w), PreconditionError);
}

TEST_CASE("clip and interval restriction") {
    GeoMorphism g = integer_shift();
    CHECK_FALSE(restricts_to_interval(g, I0)); // support on the boundary
    CHECK(clip(g, I0).is_zero());              // the only block crosses cells

    // clip removes exactly the wrap-around block of a shifted cycle
    GeoModule q(Group::InfiniteCyclic);
    long n = 3;
    Rational off(1, 2 * n);
    for (long j = 0; j < n; ++j) q.add_orbit({0, Rational(j, n) + off, Rational(1)}, 1);
    GeoMorphism xi(q, q);
    for (long j = 0; j < n; ++j)
        xi.add_block({0, Rational(j, n) + off, Rational(1)},
                     {0, Rational(j + 1, n) + off, Rational(1)}, one());
    CHECK(restricts_to_interval(xi, I0) == false); // wrap block crosses the cell edge
    GeoMorphism clipped = clip(xi, I0);
    CHECK(clipped.blocks().size() == xi.blocks().size() - 1);
    CHECK(clipped.sizes().hsize <= xi.sizes().hsize);
    CHECK(restricts_to_interval(clipped, I0));

    // idempotence, and fixed points are exactly the restricting morphisms
    std::mt19937 rng(20260842);
    for (int i = 0; i < 50; ++i) {
        GeoModule a = rand_interval_module(rng, 4, 2, 2);
        GeoMorphism f = rand_endo(rng, a, 5, 1);
        GeoMorphism cf = clip(f, I0);
        CHECK(clip(cf, I0) == cf);
        CHECK((cf == f) == restricts_to_interval(f, I0));
        CHECK(restricts_to_interval(cf, I0));
    }
}

TEST_CASE("squeeze rejects boundary-supported input") {
    GeoMorphism g = integer_shift();
    CHECK_THROWS_AS(squeeze_layer(g, I0, unit_sched, 2), PreconditionError);

    // dihedral squeezing requires a reflection-compatible interval
    GeoModule d(Group::InfiniteDihedral);
    d.add_orbit({0, Rational(1, 2), Rational(1)}, 1);
    GeoMorphism id = GeoMorphism::identity(d);
    CHECK_THROWS_AS(squeeze_layer(id, IntervalSpec{Rational(1, 4)}, unit_sched, 2),
                    PreconditionError);
    GeoMorphism s2 = squeeze_layer(id, I0, unit_sched, 2);
    CHECK(s2 == GeoMorphism::identity(squeeze_layer(d, I0, unit_sched, 2)));
}
