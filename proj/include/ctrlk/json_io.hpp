#pragma once

#include <json.hpp>

#include <string>

#include "ctrlk/geometry.hpp"
#include "ctrlk/reps.hpp"
#include "ctrlk/squeeze.hpp"
#include "ctrlk/vanish.hpp"

namespace ctrlk {

using Json = nlohmann::ordered_json;

/// On-disk envelope: {"kind": ..., "version": 1, "payload": ...}.
/// Kinds: module, morphism, laurent-matrix, dihedral-matrix, report.
struct Document {
    std::string kind;
    Json payload;

    friend bool operator==(const Document& a, const Document& b) {
        return a.kind == b.kind && a.payload == b.payload;
    }
};

std::string emit_document(const Document& d);
Document parse_document(const std::string& text); // throws ParseError

// scalar and ring element codecs ("p/q" strings, exponent-keyed maps)
Json rational_json(const Rational& r);
Rational rational_from(const Json& j);
Json laurent_json(const LaurentPoly& p);
LaurentPoly laurent_from(const Json& j);
Json dihedral_json(const DihedralElem& e);
DihedralElem dihedral_from(const Json& j);

Json scalar_matrix_json(const Matrix<Rational>& m);
Matrix<Rational> scalar_matrix_from(const Json& j);
Json laurent_matrix_json(const Matrix<LaurentPoly>& m);
Matrix<LaurentPoly> laurent_matrix_from(const Json& j);
Json dihedral_matrix_json(const Matrix<DihedralElem>& m);
Matrix<DihedralElem> dihedral_matrix_from(const Json& j);

Json point_json(const Point& p);
Point point_from(const Json& j);
Json module_json(const GeoModule& m);
GeoModule module_from(const Json& j);
Json morphism_json(const GeoMorphism& f);
GeoMorphism morphism_from(const Json& j);

Document make_module_document(const GeoModule& m);
Document make_morphism_document(const GeoMorphism& f);
Document make_laurent_matrix_document(const Matrix<LaurentPoly>& m);
Document make_dihedral_matrix_document(const Matrix<DihedralElem>& m);
Document make_report_document(Json payload);

/// Report payload of a representative bundle: both morphisms, sizes, the
/// group-ring matrix, its determinant certificate, and the witness if any.
Json rep_bundle_json(const RepBundle& b, int det_bound);
/// Reads back the two morphisms of a rep-bundle report.
std::pair<GeoMorphism, GeoMorphism> bundle_pair_from(const Json& payload);

Json vanish_report_json(const VanishReport& r);

/// Squeezed-stack report payload: schedule metadata plus per-layer data.
Json stack_json(const LayerSum& s, const IntervalSpec& I, const LayerSchedule& sched);
Json stack_json(const LayerMorphism& f, const IntervalSpec& I, const LayerSchedule& sched);

} // namespace ctrlk
