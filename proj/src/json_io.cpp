#include "sigcore/json_io.hpp"

#include <json.hpp>

namespace sigcore {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw_parse("input is not valid JSON");
  return j;
}

int get_n(const json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw_parse("missing integer field \"n\"");
  const int n = j["n"].get<int>();
  require_component_count(n);
  return n;
}

mask_t mask_from_index_array(const json& arr, int n, const char* what) {
  if (!arr.is_array()) throw_parse(std::string(what) + " must be an array of component indices");
  std::vector<int> indices;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw_parse(std::string(what) + " entries must be integers");
    indices.push_back(v.get<int>());
  }
  return SubsetMask::from_indices(n, indices).bits;
}

double get_number(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number())
    throw_parse(std::string("missing numeric field \"") + field + "\"");
  return j[field].get<double>();
}

Marginal parse_marginal(const json& j) {
  if (!j.contains("dist") || !j["dist"].is_string())
    throw_parse("marginal needs a string field \"dist\"");
  const std::string dist = j["dist"].get<std::string>();
  if (dist == "weibull") return Marginal::weibull(get_number(j, "alpha"), get_number(j, "rate"));
  if (dist == "exponential") return Marginal::exponential(get_number(j, "rate"));
  if (dist == "uniform") return Marginal::uniform(get_number(j, "a"), get_number(j, "b"));
  if (dist == "lognormal") return Marginal::lognormal(get_number(j, "mu"), get_number(j, "sigma"));
  throw_parse("unknown marginal \"" + dist +
              "\"; expected weibull, exponential, uniform or lognormal");
}

}  // namespace

ParsedSystem parse_system_json(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object()) throw_parse("system file must be a JSON object");
  const int n = get_n(j);
  if (!j.contains("structure") || !j["structure"].is_object())
    throw_parse("missing object field \"structure\"");
  const json& s = j["structure"];
  if (!s.contains("type") || !s["type"].is_string())
    throw_parse("structure needs a string field \"type\"");
  const std::string type = s["type"].get<std::string>();
  if (type == "series") return {StructureFunction::series(n), std::nullopt};
  if (type == "parallel") return {StructureFunction::parallel(n), std::nullopt};
  if (type == "k_out_of_n") {
    if (!s.contains("k") || !s["k"].is_number_integer())
      throw_parse("k_out_of_n needs an integer field \"k\"");
    return {StructureFunction::k_out_of_n(n, s["k"].get<int>()), std::nullopt};
  }
  if (type == "paths") {
    if (!s.contains("minimal_path_sets") || !s["minimal_path_sets"].is_array())
      throw_parse("paths structure needs an array field \"minimal_path_sets\"");
    std::vector<mask_t> masks;
    for (const auto& path : s["minimal_path_sets"])
      masks.push_back(mask_from_index_array(path, n, "path set"));
    auto ps = PathSetSystem::create(n, std::move(masks));
    auto phi = StructureFunction::from_path_sets(ps);
    return {std::move(phi), std::move(ps)};
  }
  if (type == "table") {
    if (!s.contains("bits") || !s["bits"].is_string())
      throw_parse("table structure needs a string field \"bits\"");
    const std::string bits = s["bits"].get<std::string>();
    if (bits.size() != table_size(n))
      throw_parse("bits string must have 2^n = " + std::to_string(table_size(n)) +
                  " characters, got " + std::to_string(bits.size()));
    std::vector<std::uint8_t> table(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1') throw_parse("bits string may contain only 0 and 1");
      table[i] = static_cast<std::uint8_t>(bits[i] - '0');
    }
    return {StructureFunction::from_table(n, std::move(table)), std::nullopt};
  }
  throw_parse("unknown structure type \"" + type +
              "\"; expected series, parallel, k_out_of_n, paths or table");
}

LifetimeModel parse_model_json(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object()) throw_parse("model file must be a JSON object");
  if (!j.contains("type") || !j["type"].is_string())
    throw_parse("model needs a string field \"type\"");
  const std::string type = j["type"].get<std::string>();
  const int n_opt = j.contains("n") ? get_n(j) : 0;
  if (type == "iid") return LifetimeModel::iid(n_opt);
  if (type == "exchangeable") return LifetimeModel::exchangeable(n_opt);
  if (type == "weibull") {
    if (!j.contains("lambda") || !j["lambda"].is_array())
      throw_parse("weibull model needs an array field \"lambda\"");
    std::vector<double> lambdas;
    for (const auto& v : j["lambda"]) {
      if (!v.is_number()) throw_parse("lambda entries must be numbers");
      lambdas.push_back(v.get<double>());
    }
    return LifetimeModel::weibull(get_number(j, "alpha"), std::move(lambdas));
  }
  if (type == "independent") {
    if (!j.contains("marginals") || !j["marginals"].is_array())
      throw_parse("independent model needs an array field \"marginals\"");
    std::vector<Marginal> marginals;
    for (const auto& m : j["marginals"]) marginals.push_back(parse_marginal(m));
    return LifetimeModel::independent(std::move(marginals));
  }
  if (type == "order_probs") {
    if (!j.contains("probs") || !j["probs"].is_array())
      throw_parse("order_probs model needs an array field \"probs\"");
    std::vector<std::pair<std::vector<int>, double>> probs;
    int n = n_opt;
    for (const auto& entry : j["probs"]) {
      if (!entry.is_object() || !entry.contains("perm") || !entry["perm"].is_array())
        throw_parse("order_probs entries need a \"perm\" array and a \"p\" number");
      std::vector<int> perm;
      for (const auto& v : entry["perm"]) {
        if (!v.is_number_integer()) throw_parse("permutation entries must be integers");
        perm.push_back(v.get<int>());
      }
      if (n == 0) n = static_cast<int>(perm.size());
      probs.emplace_back(std::move(perm), get_number(entry, "p"));
    }
    if (n == 0) throw_parse("order_probs model needs at least one permutation");
    return LifetimeModel::order_probabilities(n, probs);
  }
  throw_parse("unknown model type \"" + type +
              "\"; expected iid, exchangeable, weibull, independent or order_probs");
}

RealTable parse_real_table_json(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object()) throw_parse("table file must be a JSON object");
  // Structure files double as 0/1 tables.
  if (j.contains("structure")) {
    const ParsedSystem sys = parse_system_json(text);
    RealTable t;
    t.n = sys.phi.n();
    t.values.assign(sys.phi.table().begin(), sys.phi.table().end());
    return t;
  }
  const int n = get_n(j);
  RealTable t;
  t.n = n;
  if (j.contains("values")) {
    if (!j["values"].is_array() || j["values"].size() != table_size(n))
      throw_parse("\"values\" must be an array of 2^n numbers");
    for (const auto& v : j["values"]) {
      if (!v.is_number()) throw_parse("\"values\" entries must be numbers");
      t.values.push_back(v.get<double>());
    }
    return t;
  }
  if (j.contains("q")) {
    if (!j["q"].is_array()) throw_parse("\"q\" must be an array of {set, value} objects");
    t.values.assign(table_size(n), 0.0);
    std::vector<bool> seen(table_size(n), false);
    for (const auto& entry : j["q"]) {
      if (!entry.is_object() || !entry.contains("set"))
        throw_parse("\"q\" entries need a \"set\" array and a \"value\" number");
      const mask_t m = mask_from_index_array(entry["set"], n, "set");
      if (seen[m]) throw_parse("duplicate subset " + format_subset(m, n) + " in \"q\"");
      seen[m] = true;
      t.values[m] = get_number(entry, "value");
    }
    for (mask_t m = 0; m < seen.size(); ++m)
      if (!seen[m]) throw_parse("\"q\" is missing subset " + format_subset(m, n));
    return t;
  }
  throw_parse("table file needs a \"values\" array, a \"q\" array or a \"structure\" object");
}

}  // namespace sigcore
