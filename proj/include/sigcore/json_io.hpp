#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sigcore/lifetimes.hpp"
#include "sigcore/structure.hpp"

namespace sigcore {

/// Structure description parsed from JSON. Minimal path sets are kept
/// when the input provided them, so simulation can evaluate the life
/// function directly on the paths.
struct ParsedSystem {
  StructureFunction phi;
  std::optional<PathSetSystem> paths;
};

/// Accepts {"n": int, "structure": {...}} with structure one of
///   {"type":"series"} | {"type":"parallel"} | {"type":"k_out_of_n","k":k}
///   {"type":"paths","minimal_path_sets":[[1,4],[2,5],...]}   (1-based)
///   {"type":"table","bits":"0101..."}                        (index = mask)
ParsedSystem parse_system_json(const std::string& text);

/// Accepts {"type":"iid"|"exchangeable"} (optional "n"),
///   {"type":"weibull","alpha":a,"lambda":[...]},
///   {"type":"independent","marginals":[{"dist":...},...]},
///   {"type":"order_probs","probs":[{"perm":[...],"p":...},...]}.
LifetimeModel parse_model_json(const std::string& text);

/// A dense real table over subset masks. Accepts three shapes:
///   {"n": n, "values": [2^n floats]}            raw table
///   a structure file                             its 0/1 truth table
///   {"n": n, "q": [{"set":[...],"value":v},...]} a quality output file
struct RealTable {
  int n = 0;
  std::vector<double> values;
};
RealTable parse_real_table_json(const std::string& text);

}  // namespace sigcore
