#include "ctrlk/json_io.hpp"

#include <cstdlib>

#include "ctrlk/errors.hpp"
#include "ctrlk/functors.hpp"

namespace ctrlk {

namespace {

long long_from_string(const std::string& s) {
    errno = 0;
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (errno != 0 || end == nullptr || *end != '\0')
        throw ParseError("bad integer: '" + s + "'");
    return v;
}

const Json& field(const Json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
    return *it;
}

int int_field(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_number_integer()) throw ParseError(std::string("field '") + name + "' must be an integer");
    return v.get<int>();
}

} // namespace

Json rational_json(const Rational& r) {
    return Json(r.str());
}

Rational rational_from(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw ParseError("expected a rational \"p/q\" string");
    return Rational::parse(j.get<std::string>());
}

Json laurent_json(const LaurentPoly& p) {
    Json j = Json::object();
    for (const auto& [k, c] : p.coeffs()) j[std::to_string(k)] = c.str();
    return j;
}

LaurentPoly laurent_from(const Json& j) {
    if (!j.is_object()) throw ParseError("expected a Laurent coefficient object");
    LaurentPoly p;
    for (const auto& [key, value] : j.items())
        p += LaurentPoly::monomial(rational_from(value), long_from_string(key));
    return p;
}

Json dihedral_json(const DihedralElem& e) {
    Json j = Json::object();
    for (const auto& [key, c] : e.coeffs())
        j[std::to_string(key.first) + "," + std::to_string(key.second)] = c.str();
    return j;
}

DihedralElem dihedral_from(const Json& j) {
    if (!j.is_object()) throw ParseError("expected a dihedral coefficient object");
    DihedralElem e;
    for (const auto& [key, value] : j.items()) {
        auto comma = key.find(',');
        if (comma == std::string::npos) throw ParseError("bad dihedral key: '" + key + "'");
        long m = long_from_string(key.substr(0, comma));
        long n = long_from_string(key.substr(comma + 1));
        if (n != 0 && n != 1) throw ParseError("dihedral flip must be 0 or 1");
        e += DihedralElem::term(rational_from(value), {m, static_cast<int>(n)});
    }
    return e;
}

namespace {

template <typename R, typename EntryOut>
Json matrix_json_impl(const Matrix<R>& m, EntryOut entry) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(entry(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

template <typename R, typename EntryIn>
Matrix<R> matrix_from_impl(const Json& j, EntryIn entry) {
    std::size_t rows = static_cast<std::size_t>(int_field(j, "rows"));
    std::size_t cols = static_cast<std::size_t>(int_field(j, "cols"));
    const Json& e = field(j, "entries");
    if (!e.is_array() || e.size() != rows) throw ParseError("matrix row count mismatch");
    Matrix<R> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!e[i].is_array() || e[i].size() != cols)
            throw ParseError("matrix column count mismatch");
        for (std::size_t k = 0; k < cols; ++k) m.at(i, k) = entry(e[i][k]);
    }
    return m;
}

} // namespace

Json scalar_matrix_json(const Matrix<Rational>& m) {
    return matrix_json_impl(m, [](const Rational& r) { return rational_json(r); });
}
Matrix<Rational> scalar_matrix_from(const Json& j) {
    return matrix_from_impl<Rational>(j, [](const Json& v) { return rational_from(v); });
}
Json laurent_matrix_json(const Matrix<LaurentPoly>& m) {
    return matrix_json_impl(m, [](const LaurentPoly& p) { return laurent_json(p); });
}
Matrix<LaurentPoly> laurent_matrix_from(const Json& j) {
    return matrix_from_impl<LaurentPoly>(j, [](const Json& v) { return laurent_from(v); });
}
Json dihedral_matrix_json(const Matrix<DihedralElem>& m) {
    return matrix_json_impl(m, [](const DihedralElem& e) { return dihedral_json(e); });
}
Matrix<DihedralElem> dihedral_matrix_from(const Json& j) {
    return matrix_from_impl<DihedralElem>(j, [](const Json& v) { return dihedral_from(v); });
}

Json point_json(const Point& p) {
    return Json{{"copy", p.copy}, {"x", p.x.str()}, {"t", p.t.str()}};
}

Point point_from(const Json& j) {
    return {int_field(j, "copy"), rational_from(field(j, "x")), rational_from(field(j, "t"))};
}

Json module_json(const GeoModule& m) {
    Json orbits = Json::array();
    for (const auto& [rep, rank] : m.orbit_data()) {
        Json o = point_json(rep);
        o["rank"] = rank;
        orbits.push_back(std::move(o));
    }
    return Json{{"group", group_name(m.group())}, {"orbit_data", std::move(orbits)}};
}

GeoModule module_from(const Json& j) {
    GeoModule m(group_from_name(field(j, "group").get<std::string>()));
    const Json& orbits = field(j, "orbit_data");
    if (!orbits.is_array()) throw ParseError("orbit_data must be an array");
    try {
        for (const auto& o : orbits) m.add_orbit(point_from(o), int_field(o, "rank"));
    } catch (const UsageError& e) {
        throw ParseError(std::string("invalid module: ") + e.what());
    }
    return m;
}

Json morphism_json(const GeoMorphism& f) {
    Json blocks = Json::array();
    for (const auto& [key, mat] : f.blocks())
        blocks.push_back(Json{{"from", point_json(key.first)},
                              {"to", point_json(key.second)},
                              {"matrix", scalar_matrix_json(mat)}});
    return Json{{"source", module_json(f.source())},
                {"target", module_json(f.target())},
                {"blocks", std::move(blocks)}};
}

GeoMorphism morphism_from(const Json& j) {
    GeoMorphism f(module_from(field(j, "source")), module_from(field(j, "target")));
    const Json& blocks = field(j, "blocks");
    if (!blocks.is_array()) throw ParseError("blocks must be an array");
    try {
        for (const auto& b : blocks)
            f.add_block(point_from(field(b, "from")), point_from(field(b, "to")),
                        scalar_matrix_from(field(b, "matrix")));
    } catch (const UsageError& e) {
        throw ParseError(std::string("invalid morphism: ") + e.what());
    }
    return f;
}

std::string emit_document(const Document& d) {
    Json j{{"kind", d.kind}, {"version", 1}, {"payload", d.payload}};
    return j.dump(2) + "\n";
}

namespace {

bool known_kind(const std::string& kind) {
    return kind == "module" || kind == "morphism" || kind == "laurent-matrix" ||
           kind == "dihedral-matrix" || kind == "report";
}

} // namespace

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    Document d;
    d.kind = field(j, "kind").get<std::string>();
    if (!known_kind(d.kind)) throw ParseError("unknown document kind: '" + d.kind + "'");
    if (int_field(j, "version") != 1) throw ParseError("unsupported document version");
    d.payload = field(j, "payload");
    // validate typed payloads eagerly so parse errors carry exit code 2
    if (d.kind == "module") module_from(d.payload);
    if (d.kind == "morphism") morphism_from(d.payload);
    if (d.kind == "laurent-matrix") laurent_matrix_from(d.payload);
    if (d.kind == "dihedral-matrix") dihedral_matrix_from(d.payload);
    return d;
}

Document make_module_document(const GeoModule& m) {
    return {"module", module_json(m)};
}
Document make_morphism_document(const GeoMorphism& f) {
    return {"morphism", morphism_json(f)};
}
Document make_laurent_matrix_document(const Matrix<LaurentPoly>& m) {
    return {"laurent-matrix", laurent_matrix_json(m)};
}
Document make_dihedral_matrix_document(const Matrix<DihedralElem>& m) {
    return {"dihedral-matrix", dihedral_matrix_json(m)};
}
Document make_report_document(Json payload) {
    return {"report", std::move(payload)};
}

namespace {

Json sizes_json(const Sizes& s) {
    return Json{{"size", s.size.str()}, {"hsize", s.hsize.str()}, {"vsize", s.vsize.str()}};
}

Json witness_json(const ElementaryWitness<LaurentPoly>& w) {
    Json factors = Json::array();
    for (const auto& f : w.factors) {
        if (const auto* e = std::get_if<ElementaryFactor<LaurentPoly>>(&f)) {
            factors.push_back(Json{{"kind", "elementary"},
                                   {"i", e->i + 1},
                                   {"j", e->j + 1},
                                   {"a", laurent_json(e->a)}});
        } else {
            const auto& d = std::get<DiagonalFactor<LaurentPoly>>(f);
            Json diag = Json::array();
            for (const auto& u : d.diag) diag.push_back(laurent_json(u));
            factors.push_back(Json{{"kind", "residual"}, {"diag", std::move(diag)}});
        }
    }
    return Json{{"dim", w.dim}, {"factors", std::move(factors)}};
}

DihedralElem laurent_as_translation(const LaurentPoly& p) {
    DihedralElem e;
    for (const auto& [k, c] : p.coeffs()) e += DihedralElem::term(c, {k, 0});
    return e;
}

} // namespace

Json rep_bundle_json(const RepBundle& b, int det_bound) {
    Json j{{"type", "rep-bundle"}, {"family", b.family}};
    if (!b.group_word.empty()) j["group_word"] = b.group_word;
    j["claimed_class"] =
        Json{{"t_exponent", b.t_exponent}, {"unit_det", b.unit_det.str()}};
    j["sizes"] = Json{{"forward", sizes_json(b.fwd_sizes)}, {"inverse", sizes_json(b.inv_sizes)}};

    if (b.fwd.group() == Group::InfiniteCyclic) {
        Matrix<LaurentPoly> u = to_laurent_matrix(b.fwd);
        j["u_matrix"] = Json{{"ring", "laurent"}, {"matrix", laurent_matrix_json(u)}};
        LaurentPoly d = det(u, det_bound);
        j["determinant"] = laurent_json(d);
        j["determinant_text"] = d.str();
        j["determinant_matches_class"] =
            d == LaurentPoly::monomial(b.unit_det, b.t_exponent);
    } else {
        Matrix<DihedralElem> u = to_dihedral_matrix(b.fwd);
        j["u_matrix"] = Json{{"ring", "dihedral"}, {"matrix", dihedral_matrix_json(u)}};
        bool translation_only = true;
        for (std::size_t r = 0; r < u.rows() && translation_only; ++r)
            for (std::size_t c = 0; c < u.cols(); ++c)
                if (!u.at(r, c).is_translation_only()) {
                    translation_only = false;
                    break;
                }
        if (translation_only) {
            LaurentPoly d = det(translation_part_as_laurent(u), det_bound);
            DihedralElem dd = laurent_as_translation(d);
            j["determinant"] = dihedral_json(dd);
            j["determinant_text"] = dd.str();
        }
    }
    j["forward"] = morphism_json(b.fwd);
    j["inverse"] = morphism_json(b.inv);
    if (b.witness) {
        j["witness"] = witness_json(*b.witness);
        Matrix<LaurentPoly> u = to_laurent_matrix(b.fwd);
        Matrix<LaurentPoly> nu_inv = Matrix<LaurentPoly>::identity(u.rows());
        if (u.rows() > 0) nu_inv.at(0, 0) = LaurentPoly::t(-1);
        j["witness_verifies"] = verify_witness(*b.witness, u * nu_inv);
    }
    return j;
}

std::pair<GeoMorphism, GeoMorphism> bundle_pair_from(const Json& payload) {
    return {morphism_from(field(payload, "forward")), morphism_from(field(payload, "inverse"))};
}

Json vanish_report_json(const VanishReport& r) {
    Json counterexamples = Json::array();
    for (const auto& c : r.counterexamples)
        counterexamples.push_back(Json{{"flag", c.flag},
                                       {"target_layer", c.target_layer},
                                       {"source_layer", c.source_layer},
                                       {"from", point_json(c.from)},
                                       {"to", point_json(c.to)},
                                       {"matrix", scalar_matrix_json(c.mat)},
                                       {"note", c.note}});
    return Json{{"type", "vanish-report"},
                {"input_hsize", r.input_hsize.str()},
                {"input_inv_hsize", r.input_inv_hsize.str()},
                {"schedule_step", r.schedule_step.str()},
                {"layers", r.layers},
                {"window",
                 Json{{"x_lo", r.window.x_lo.str()},
                      {"x_hi", r.window.x_hi.str()},
                      {"t_lo", r.window.t_lo.str()},
                      {"t_hi", r.window.t_hi.str()}}},
                {"beta_matches_closed_form", r.beta_matches_closed_form},
                {"beta_restricts", r.beta_restricts},
                {"beta_identity_on_V", r.beta_identity_on_v},
                {"eta_mu_invertible", r.eta_mu_invertible},
                {"all_ok", r.all_ok()},
                {"counterexamples", std::move(counterexamples)}};
}

namespace {

Json stack_header(const IntervalSpec& I, const LayerSchedule& sched, int layers) {
    return Json{{"type", "squeezed-stack"},
                {"interval_a", I.a.str()},
                {"step", sched.step().str()},
                {"layers", layers}};
}

} // namespace

Json stack_json(const LayerSum& s, const IntervalSpec& I, const LayerSchedule& sched) {
    Json j = stack_header(I, sched, s.count());
    j["content"] = "module";
    Json mods = Json::array();
    for (const auto& m : s.layers) mods.push_back(module_json(m));
    j["layer_modules"] = std::move(mods);
    return j;
}

Json stack_json(const LayerMorphism& f, const IntervalSpec& I, const LayerSchedule& sched) {
    Json j = stack_header(I, sched, f.source().count());
    j["content"] = "morphism";
    Json mods = Json::array();
    for (const auto& m : f.source().layers) mods.push_back(module_json(m));
    j["layer_modules"] = std::move(mods);
    Json blocks = Json::array();
    for (const auto& [key, g] : f.blocks())
        blocks.push_back(Json{{"target_layer", key.first},
                              {"source_layer", key.second},
                              {"morphism", morphism_json(g)}});
    j["layer_blocks"] = std::move(blocks);
    return j;
}

} // namespace ctrlk
