#pragma once

#include "graphflow/poisson_lab.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphflow {

// Model file: `key: value` lines, `#` comments.
//   name: so3
//   dim: 3
//   parameters: t          (optional, comma separated)
//   functions: f           (optional)
//   P12: x3                (one line per i < j; missing pairs are 0)
// or, in dimension 3, `a:` and `rho:` lines for a Nambu model.
PoissonModel parse_model(std::string_view text);
std::string format_model(const PoissonModel& m);
PoissonModel read_model(const std::string& path);
void write_model(const std::string& path, const PoissonModel& m);

std::vector<std::string> builtin_model_names();
std::optional<PoissonModel> builtin_model(const std::string& name);

/// A built-in name or a model file path.
PoissonModel load_model(const std::string& name_or_path);

/// Structure constants from "i j k c; ..." (1-based indices), the reverse
/// pair filled in by antisymmetry.
StructureConstants parse_structure_constants(std::string_view text, int dim);

}  // namespace graphflow
