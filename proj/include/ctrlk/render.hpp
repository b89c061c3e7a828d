#pragma once

#include <string>

#include "ctrlk/geometry.hpp"
#include "ctrlk/json_io.hpp"

namespace ctrlk {

/// Deterministic SVG support diagrams: x runs horizontally, height upward.
/// Support points are dots (filled for copy 0, outlined for copy 1),
/// morphism components are arrows (loops for same-point blocks), squeezed
/// stacks additionally get shaded per-layer bands around the cell midpoints.
std::string render_module_svg(const GeoModule& m, const Window& w);
std::string render_morphism_svg(const GeoMorphism& f, const Window& w);
std::string render_stack_svg(const Json& stack_payload, const Window& w);

/// Dispatches on the document kind (module, morphism, or a squeezed-stack
/// report). Throws UsageError for other documents or an empty window.
std::string render_document_svg(const Document& d, const Window& w);

} // namespace ctrlk
