#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ctrlk/errors.hpp"
#include "ctrlk/json_io.hpp"
#include "ctrlk/render.hpp"
#include "ctrlk/reps.hpp"
#include "generators.hpp"

using namespace ctrlk;
using namespace ctrlk::testing;

namespace {

Window view(long x0, long x1, long t0, long t1) {
    Window w;
    w.x_lo = Rational(x0);
    w.x_hi = Rational(x1);
    w.t_lo = Rational(t0);
    w.t_hi = Rational(t1);
    return w;
}

} // namespace

TEST_CASE("rational strings") {
    CHECK(rational_json(Rational(-3, 7)) == Json("-3/7"));
    CHECK(rational_from(Json("22/7")) == Rational(22, 7));
    CHECK(rational_from(Json(5)) == Rational(5));
    CHECK_THROWS_AS(rational_from(Json("x")), ParseError);
    CHECK_THROWS_AS(rational_from(Json::object()), ParseError);
}

TEST_CASE("ring element round trips") {
    std::mt19937 rng(20260861);
    for (int i = 0; i < 50; ++i) {
        LaurentPoly p;
        for (int k = 0; k < 3; ++k)
            p += LaurentPoly::monomial(rand_rational(rng), (i * k) % 7 - 3);
        CHECK(laurent_from(laurent_json(p)) == p);

        DihedralElem e;
        for (int k = 0; k < 3; ++k)
            e += DihedralElem::term(rand_rational(rng), {(i + k) % 5 - 2, k % 2});
        CHECK(dihedral_from(dihedral_json(e)) == e);
    }
}

TEST_CASE("document round trips") {
    std::mt19937 rng(20260862);
    for (int i = 0; i < 30; ++i) {
        Group group = i % 2 ? Group::InfiniteDihedral : Group::InfiniteCyclic;
        GeoModule m = rand_module(rng, group, 4, 3, 2);
        Document dm = make_module_document(m);
        Document dm2 = parse_document(emit_document(dm));
        CHECK(dm2 == dm);
        CHECK(module_from(dm2.payload) == m);

        GeoMorphism f = rand_endo(rng, m, 5);
        Document df = make_morphism_document(f);
        Document df2 = parse_document(emit_document(df));
        CHECK(df2 == df);
        CHECK(morphism_from(df2.payload) == f);
    }

    Matrix<LaurentPoly> a(2, 2);
    a.at(0, 1) = LaurentPoly::t(3);
    a.at(1, 0) = LaurentPoly(Rational(-1, 2));
    Document dl = make_laurent_matrix_document(a);
    CHECK(parse_document(emit_document(dl)) == dl);
    CHECK(laurent_matrix_from(dl.payload) == a);

    Matrix<DihedralElem> d(1, 1);
    d.at(0, 0) = DihedralElem::s() + DihedralElem::r(2);
    Document dd = make_dihedral_matrix_document(d);
    CHECK(parse_document(emit_document(dd)) == dd);
    CHECK(dihedral_matrix_from(dd.payload) == d);

    Document dr = make_report_document(Json{{"type", "custom"}, {"value", 3}});
    CHECK(parse_document(emit_document(dr)) == dr);
}

TEST_CASE("parse failures carry context") {
    CHECK_THROWS_AS(parse_document("not json"), ParseError);
    CHECK_THROWS_AS(parse_document("{\"kind\":\"widget\",\"version\":1,\"payload\":{}}"),
                    ParseError);
    CHECK_THROWS_AS(parse_document("{\"kind\":\"module\",\"version\":2,\"payload\":{}}"),
                    ParseError);
    CHECK_THROWS_AS(parse_document("{\"kind\":\"module\",\"version\":1,\"payload\":{}}"),
                    ParseError); // missing fields
    // rank 0 is invalid module data
    CHECK_THROWS_AS(
        parse_document("{\"kind\":\"module\",\"version\":1,\"payload\":{\"group\":"
                       "\"infinite_cyclic\",\"orbit_data\":[{\"copy\":0,\"x\":\"0\",\"t\":"
                       "\"1\",\"rank\":0}]}}"),
        ParseError);
}

TEST_CASE("rep bundle report") {
    RepBundle b = xi_rep(3);
    Json j = rep_bundle_json(b, 8);
    CHECK(j["family"] == "xi");
    CHECK(j["determinant_matches_class"] == true);
    CHECK(j["witness_verifies"] == true);
    CHECK(j["sizes"]["forward"]["size"] == "1/3");
    auto [fwd, inv] = bundle_pair_from(j);
    CHECK(fwd == b.fwd);
    CHECK(inv == b.inv);

    RepBundle s = s_rep();
    Json js = rep_bundle_json(s, 8);
    CHECK(js["group_word"] == "s");
    CHECK_FALSE(js.contains("determinant")); // reflection entries have no commutative det
}

TEST_CASE("svg rendering is deterministic") {
    GeoModule m(Group::InfiniteCyclic);
    m.add_orbit({0, Rational(1, 2), Rational(1)}, 1);
    std::string one = render_module_svg(m, view(-2, 2, 1, 5));
    std::string two = render_module_svg(m, view(-2, 2, 1, 5));
    CHECK(one == two);
    CHECK(one.find("<svg") == 0);
    CHECK(one.find("<circle") != std::string::npos);

    std::string empty = render_module_svg(GeoModule(Group::InfiniteCyclic), view(-2, 2, 1, 5));
    CHECK(empty.find("<circle") == std::string::npos); // axes only
    CHECK(empty.find("<line") != std::string::npos);

    GeoMorphism f = GeoMorphism::identity(m);
    std::string fm = render_morphism_svg(f, view(-2, 2, 1, 5));
    CHECK(fm.find("circle") != std::string::npos);

    RepBundle xi = xi_rep(3);
    std::string xim = render_morphism_svg(xi.fwd, view(0, 2, 1, 3));
    CHECK(xim.find("marker-end") != std::string::npos);

    // a squeezed stack renders bands and the converging marks
    LayerSchedule sched{Rational(1)};
    IntervalSpec I{Rational(0)};
    Json stack = stack_json(squeeze_total(m, I, sched, 5), I, sched);
    std::string sv = render_stack_svg(stack, view(-1, 2, 1, 6));
    CHECK(sv.find("<rect") != std::string::npos);
    CHECK(sv == render_stack_svg(stack, view(-1, 2, 1, 6)));

    CHECK_THROWS_AS(render_module_svg(m, view(2, -2, 1, 5)), UsageError);
}

TEST_CASE("vanish report serialization") {
    VanishReport r;
    r.input_hsize = Rational(1, 31);
    r.input_inv_hsize = Rational(1, 31);
    r.schedule_step = Rational(1);
    r.layers = 16;
    r.window = view(-2, 2, 1, 10);
    r.beta_matches_closed_form = true;
    r.beta_restricts = true;
    r.beta_identity_on_v = true;
    r.eta_mu_invertible = false;
    r.counterexamples.push_back({"eta_mu_invertible", 2, 1, Point{0, Rational(1, 4), Rational(1)},
                                 Point{0, Rational(1, 2), Rational(2)},
                                 Matrix<Rational>::identity(1), "sample"});
    Json j = vanish_report_json(r);
    CHECK(j["all_ok"] == false);
    CHECK(j["beta_identity_on_V"] == true);
    CHECK(j["counterexamples"].size() == 1);
    CHECK(j["counterexamples"][0]["from"]["x"] == "1/4");
}
