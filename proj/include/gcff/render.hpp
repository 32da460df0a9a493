#pragma once

#include <string>

#include "gcff/params.hpp"
#include "gcff/scene.hpp"
#include "gcff/solver.hpp"

namespace gcff {

// Static SVG of one solved frame: oriented person glyphs (class "person"),
// transactional centres ("segment"), o-space centres of detected groups
// ("ospace") and member hulls ("hull"). Output is byte-stable for equal input.
std::string render_svg(const Scene& scene, const Detection& detection,
                       const Params& params);

}  // namespace gcff
