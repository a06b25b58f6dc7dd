#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "framemul/certify.hpp"
#include "framemul/multiplier.hpp"
#include "framemul/perturbation.hpp"
#include "framemul/sequences.hpp"

namespace framemul {

// Insertion-ordered JSON keeps report layout stable byte for byte.
using json = nlohmann::ordered_json;

// Complex numbers are always serialized as [re, im] pairs.
json to_json(const cx& z);
json to_json(const CVector& v);
json to_json(const LinOperator& o);      // {"rows", "cols", "entries"}
json to_json(const VectorFamily& f);     // {"dim", "vectors", "labels"?}
json to_json(const Symbol& m);           // {"entries"}
json to_json(const BoundCertificate& c); // {"name", "claimed", "measured", "margin", "holds"}
json to_json(const FrameReport& r);
json to_json(const ConvergenceTable& t); // rows {"l", "epsilon", "measured", "bound", "margin"}
json to_json(const SimilarityReport& s);

cx cx_from_json(const json& j);
CVector cvector_from_json(const json& j);
LinOperator operator_from_json(const json& j);
VectorFamily family_from_json(const json& j);
Symbol symbol_from_json(const json& j);

// Parse failures surface the position nlohmann reports (line/column).
json load_json(const std::filesystem::path& path);
VectorFamily load_family(const std::filesystem::path& path);
Symbol load_symbol(const std::filesystem::path& path);
LinOperator load_operator(const std::filesystem::path& path);

// Temp file in the target directory, then rename.
void save_json_atomic(const std::filesystem::path& path, const json& j);

// Human-readable rendering of a report object; a view over the JSON,
// never a separate computation path.
std::string render_text(const json& report);

} // namespace framemul
