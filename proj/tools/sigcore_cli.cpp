// Command-line front end for the sigcore shared library. Data goes to
// stdout, diagnostics to stderr. Exit codes: 0 success (check-weibull:
// compatible), 1 check-weibull incompatible, 2 parse/input error,
// 3 structure/model mismatch, 4 numerical failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sigcore.h"

namespace {

struct Fail {
  int exit_code;
  std::string message;
};

void check(sigcore_status st) {
  if (st == SIGCORE_OK) return;
  int code = 4;
  switch (st) {
    case SIGCORE_ERROR_PARSE:
    case SIGCORE_ERROR_DOMAIN: code = 2; break;
    case SIGCORE_ERROR_MISMATCH: code = 3; break;
    default: code = 4; break;
  }
  throw Fail{code, std::string(sigcore_status_name(st)) + ": " + sigcore_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Fail{2, "cannot open file: " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Floats are printed with 17 significant digits so emitted JSON/CSV
// round-trips to the exact double.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_doubles(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += fmt(values[i]);
  }
  return out + "]";
}

std::vector<int> mask_indices(std::uint32_t mask, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (mask & (std::uint32_t{1} << i)) out.push_back(i + 1);
  return out;
}

std::string json_set(std::uint32_t mask, int n) {
  std::string out = "[";
  bool first = true;
  for (int i : mask_indices(mask, n)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "]";
}

std::string csv_set(std::uint32_t mask, int n) {
  std::string out;
  for (int i : mask_indices(mask, n)) {
    if (!out.empty()) out += " ";
    out += std::to_string(i);
  }
  return out;
}

// Masks ordered by (cardinality, mask value) for table output.
std::vector<std::uint32_t> masks_by_level(int n) {
  std::vector<std::uint32_t> masks(std::size_t{1} << n);
  std::iota(masks.begin(), masks.end(), 0u);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    const int ca = __builtin_popcount(a), cb = __builtin_popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  return masks;
}

using structure_ptr = std::unique_ptr<sigcore_structure, decltype(&sigcore_structure_free)>;
using model_ptr = std::unique_ptr<sigcore_model, decltype(&sigcore_model_free)>;
using quality_ptr = std::unique_ptr<sigcore_quality, decltype(&sigcore_quality_free)>;

structure_ptr load_structure(const std::string& path) {
  sigcore_structure* raw = nullptr;
  check(sigcore_structure_from_json(read_file(path).c_str(), &raw));
  return {raw, &sigcore_structure_free};
}

model_ptr load_model(const std::string& path) {
  sigcore_model* raw = nullptr;
  check(sigcore_model_from_json(read_file(path).c_str(), &raw));
  return {raw, &sigcore_model_free};
}

sigcore_route parse_route(const std::string& name) {
  if (name == "auto") return SIGCORE_ROUTE_AUTO;
  if (name == "exchangeable") return SIGCORE_ROUTE_EXCHANGEABLE;
  if (name == "order-probs") return SIGCORE_ROUTE_ORDER_PROBS;
  if (name == "quadrature") return SIGCORE_ROUTE_QUADRATURE;
  if (name == "closed-form") return SIGCORE_ROUTE_WEIBULL_CLOSED_FORM;
  if (name == "difference") return SIGCORE_ROUTE_WEIBULL_DIFFERENCE;
  throw Fail{2, "unknown route '" + name +
                    "'; expected auto, quadrature, closed-form, order-probs, "
                    "difference or exchangeable"};
}

quality_ptr compute_quality(const model_ptr& model, int n, sigcore_route route, double tol,
                            bool normalize) {
  if (route == SIGCORE_ROUTE_WEIBULL_CLOSED_FORM ||
      (route == SIGCORE_ROUTE_AUTO &&
       std::string(sigcore_model_kind(model.get())) == "weibull")) {
    const int model_n = sigcore_model_n(model.get());
    if (model_n > 16)
      std::cerr << "warning: the closed form loses digits beyond n = 16 "
                   "(alternating sums); consider --route quadrature\n";
  }
  sigcore_quality* raw = nullptr;
  check(sigcore_quality_compute(model.get(), n, route, tol, &raw));
  quality_ptr q{raw, &sigcore_quality_free};
  if (normalize) {
    sigcore_quality* norm = nullptr;
    check(sigcore_quality_normalize_levels(q.get(), &norm));
    q.reset(norm);
  }
  return q;
}

// The signature command reports the design-only route as "boland"; the
// other routes keep the quality route name.
std::string signature_route_name(const quality_ptr& q) {
  const sigcore_route r = sigcore_quality_get_route(q.get());
  if (r == SIGCORE_ROUTE_EXCHANGEABLE) return "boland";
  return sigcore_route_name(r);
}

struct TableFile {
  int n = 0;
  std::vector<double> values;
};

// Accepts a raw {"n","values"} table, a structure file (its 0/1 table)
// or a quality output file ({"n","q":[{"set","value"}]}).
TableFile load_table(const std::string& path) {
  const std::string text = read_file(path);
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Fail{2, "file is not a JSON object: " + path};
  TableFile t;
  if (j.contains("structure")) {
    sigcore_structure* raw = nullptr;
    check(sigcore_structure_from_json(text.c_str(), &raw));
    structure_ptr s{raw, &sigcore_structure_free};
    t.n = sigcore_structure_n(s.get());
    std::vector<std::uint8_t> bits(std::size_t{1} << t.n);
    check(sigcore_structure_table(s.get(), bits.data()));
    t.values.assign(bits.begin(), bits.end());
    return t;
  }
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw Fail{2, "missing integer field \"n\" in " + path};
  t.n = j["n"].get<int>();
  if (t.n < 1 || t.n > 20) throw Fail{2, "component count out of range in " + path};
  const std::size_t size = std::size_t{1} << t.n;
  if (j.contains("values")) {
    if (!j["values"].is_array() || j["values"].size() != size)
      throw Fail{2, "\"values\" must hold 2^n numbers in " + path};
    for (const auto& v : j["values"]) {
      if (!v.is_number()) throw Fail{2, "\"values\" entries must be numbers in " + path};
      t.values.push_back(v.get<double>());
    }
    return t;
  }
  if (j.contains("q")) {
    t.values.assign(size, 0.0);
    std::vector<bool> seen(size, false);
    for (const auto& entry : j["q"]) {
      if (!entry.is_object() || !entry.contains("set") || !entry["set"].is_array() ||
          !entry.contains("value") || !entry["value"].is_number())
        throw Fail{2, "\"q\" entries need a \"set\" array and \"value\" number in " + path};
      std::uint32_t mask = 0;
      for (const auto& idx : entry["set"]) {
        if (!idx.is_number_integer()) throw Fail{2, "set indices must be integers in " + path};
        const int i = idx.get<int>();
        if (i < 1 || i > t.n) throw Fail{2, "set index out of range in " + path};
        mask |= std::uint32_t{1} << (i - 1);
      }
      if (seen[mask]) throw Fail{2, "duplicate subset in \"q\" in " + path};
      seen[mask] = true;
      t.values[mask] = entry["value"].get<double>();
    }
    for (std::size_t m = 0; m < size; ++m)
      if (!seen[m]) throw Fail{2, "\"q\" does not cover every subset in " + path};
    return t;
  }
  throw Fail{2, "expected \"values\", \"q\" or \"structure\" in " + path};
}

int run_signature(const std::string& system_path, const std::string& model_path,
                  const std::string& route_name, bool normalize, double tol, bool csv) {
  auto sys = load_structure(system_path);
  auto model = load_model(model_path);
  const int n = sigcore_structure_n(sys.get());
  auto q = compute_quality(model, n, parse_route(route_name), tol, normalize);
  std::vector<double> p(static_cast<std::size_t>(n));
  std::vector<double> tails(static_cast<std::size_t>(n) + 1);
  check(sigcore_signature_from_quality(sys.get(), q.get(), p.data(), tails.data()));
  double sum_p = 0.0, min_p = p[0];
  for (double v : p) {
    sum_p += v;
    min_p = std::min(min_p, v);
  }
  std::vector<double> reported = p;
  for (double& v : reported)
    if (v < 0.0 && v >= -1e-12) v = 0.0;
  const std::vector<double> tails_out(tails.begin(), tails.begin() + n);
  if (csv) {
    std::cout << "k,p,tail\n";
    for (int k = 0; k < n; ++k)
      std::cout << (k + 1) << "," << fmt(reported[static_cast<std::size_t>(k)]) << ","
                << fmt(tails_out[static_cast<std::size_t>(k)]) << "\n";
  } else {
    std::cout << "{\"p\":" << json_doubles(reported) << ",\"tails\":" << json_doubles(tails_out)
              << ",\"route\":\"" << signature_route_name(q) << "\""
              << ",\"checks\":{\"sum_p\":" << fmt(sum_p) << ",\"min_p\":" << fmt(min_p)
              << "}}\n";
  }
  return 0;
}

int run_quality(const std::string& model_path, const std::string& route_name, int n_flag,
                bool tilde_flag, bool normalize, double tol, bool csv) {
  auto model = load_model(model_path);
  auto q = compute_quality(model, n_flag, parse_route(route_name), tol, normalize);
  const int n = sigcore_quality_n(q.get());
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> values(size);
  check(sigcore_quality_values(q.get(), values.data()));
  std::vector<double> level_sums(static_cast<std::size_t>(n) + 1);
  check(sigcore_quality_level_sums(q.get(), level_sums.data()));
  std::vector<double> tilde_values;
  if (tilde_flag) {
    tilde_values.resize(size);
    check(sigcore_quality_tilde(q.get(), tilde_values.data()));
  }
  const auto order = masks_by_level(n);
  if (csv) {
    std::cout << (tilde_flag ? "cardinality,set,value,tilde\n" : "cardinality,set,value\n");
    for (std::uint32_t m : order) {
      std::cout << __builtin_popcount(m) << "," << csv_set(m, n) << "," << fmt(values[m]);
      if (tilde_flag) std::cout << "," << fmt(tilde_values[m]);
      std::cout << "\n";
    }
  } else {
    std::ostringstream out;
    out << "{\"n\":" << n << ",\"q\":[";
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i) out << ",";
      out << "{\"set\":" << json_set(order[i], n) << ",\"value\":" << fmt(values[order[i]])
          << "}";
    }
    out << "],\"level_sums\":[";
    for (int k = 1; k <= n; ++k) {
      if (k > 1) out << ",";
      out << fmt(level_sums[static_cast<std::size_t>(k)]);
    }
    out << "],\"route\":\"" << sigcore_route_name(sigcore_quality_get_route(q.get())) << "\"";
    if (tilde_flag) {
      out << ",\"q_tilde\":[";
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) out << ",";
        out << "{\"set\":" << json_set(order[i], n)
            << ",\"value\":" << fmt(tilde_values[order[i]]) << "}";
      }
      out << "]";
    }
    out << "}\n";
    std::cout << out.str();
  }
  return 0;
}

int run_project(const std::string& function_path, const std::string& weights_path) {
  const TableFile f = load_table(function_path);
  const TableFile w = load_table(weights_path);
  if (f.n != w.n)
    throw Fail{3, "arity mismatch: function has n=" + std::to_string(f.n) + ", weights n=" +
                      std::to_string(w.n)};
  double constant = 0.0, residual = 0.0;
  std::vector<double> c(static_cast<std::size_t>(f.n));
  check(sigcore_symmetric_projection(f.n, f.values.data(), w.values.data(), &constant,
                                     c.data(), &residual));
  std::cout << "{\"constant\":" << fmt(constant) << ",\"c\":" << json_doubles(c)
            << ",\"residual_orthogonality\":" << fmt(residual) << "}\n";
  return 0;
}

int run_simulate(const std::string& system_path, const std::string& model_path,
                 std::uint64_t samples, std::uint64_t seed, bool csv) {
  auto sys = load_structure(system_path);
  const std::string model_text = read_file(model_path);
  auto model = load_model(model_path);
  const int n = sigcore_structure_n(sys.get());
  std::vector<double> p_hat(static_cast<std::size_t>(n));
  std::vector<double> se(static_cast<std::size_t>(n));
  check(sigcore_monte_carlo_signature(sys.get(), model.get(), samples, seed, p_hat.data(),
                                      se.data()));
  if (csv) {
    std::cout << "k,p_hat,se\n";
    for (int k = 0; k < n; ++k)
      std::cout << (k + 1) << "," << fmt(p_hat[static_cast<std::size_t>(k)]) << ","
                << fmt(se[static_cast<std::size_t>(k)]) << "\n";
  } else {
    const std::string echo = nlohmann::json::parse(model_text).dump();
    std::cout << "{\"p_hat\":" << json_doubles(p_hat) << ",\"se\":" << json_doubles(se)
              << ",\"n_samples\":" << samples << ",\"seed\":" << seed << ",\"model\":" << echo
              << "}\n";
  }
  return 0;
}

int run_check_weibull(const std::string& quality_path, double tol) {
  const TableFile t = load_table(quality_path);
  sigcore_quality* raw = nullptr;
  check(sigcore_quality_from_values(t.n, t.values.data(), &raw));
  quality_ptr q{raw, &sigcore_quality_free};
  int compatible = 0;
  std::vector<double> rates(static_cast<std::size_t>(t.n));
  char reason[512] = {0};
  check(sigcore_check_weibull(q.get(), tol, &compatible, rates.data(), reason, sizeof reason));
  std::cout << "{\"compatible\":" << (compatible ? "true" : "false");
  if (compatible)
    std::cout << ",\"recovered_rates\":" << json_doubles(rates);
  else
    std::cout << ",\"recovered_rates\":null,\"reason\":\"" << reason << "\"";
  std::cout << "}\n";
  return compatible ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"system signatures, relative quality and symmetric projections "
               "for semicoherent systems"};
  app.require_subcommand(1);

  std::string system_path, model_path, function_path, weights_path, quality_path;
  std::string route = "auto";
  bool normalize = false, csv = false, tilde_flag = false;
  double tol = 1e-9;
  double check_tol = 1e-8;
  int n_flag = 0;
  std::uint64_t samples = 1000000, seed = 0;

  auto* sig = app.add_subcommand("signature", "signature p of a system under a lifetime model");
  sig->add_option("--system", system_path, "structure JSON file")->required();
  sig->add_option("--model", model_path, "lifetime model JSON file")->required();
  sig->add_option("--route", route,
                  "auto|quadrature|closed-form|order-probs|difference|exchangeable");
  sig->add_option("--tol", tol, "quadrature absolute tolerance per subset");
  sig->add_flag("--normalize-levels", normalize, "rescale each quality level to sum to 1");
  sig->add_flag("--csv", csv, "CSV instead of JSON");

  auto* qual = app.add_subcommand("quality", "relative quality table of a lifetime model");
  qual->add_option("--model", model_path, "lifetime model JSON file")->required();
  qual->add_option("--route", route,
                   "auto|quadrature|closed-form|order-probs|difference|exchangeable");
  qual->add_option("--n", n_flag, "component count for models that do not carry one");
  qual->add_option("--tol", tol, "quadrature absolute tolerance per subset");
  qual->add_flag("--tilde", tilde_flag, "also emit the level-size-scaled table");
  qual->add_flag("--normalize-levels", normalize, "rescale each level to sum to 1");
  qual->add_flag("--csv", csv, "CSV instead of JSON");

  auto* proj = app.add_subcommand("project",
                                  "best symmetric approximation of a pseudo-Boolean table");
  proj->add_option("--function", function_path, "real table / structure JSON file")->required();
  proj->add_option("--weights", weights_path, "positive weight table JSON file")->required();

  auto* sim = app.add_subcommand("simulate", "Monte Carlo signature estimate");
  sim->add_option("--system", system_path, "structure JSON file")->required();
  sim->add_option("--model", model_path, "samplable lifetime model JSON file")->required();
  sim->add_option("--samples", samples, "number of simulated lifetimes vectors");
  sim->add_option("--seed", seed, "RNG seed");
  sim->add_flag("--csv", csv, "CSV instead of JSON");

  auto* chk = app.add_subcommand("check-weibull",
                                 "test a quality table for Weibull compatibility");
  chk->add_option("--quality", quality_path, "quality table JSON file")->required();
  chk->add_option("--tol", check_tol, "acceptance tolerance for the reconstruction identity");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sig->parsed()) return run_signature(system_path, model_path, route, normalize, tol, csv);
    if (qual->parsed())
      return run_quality(model_path, route, n_flag, tilde_flag, normalize, tol, csv);
    if (proj->parsed()) return run_project(function_path, weights_path);
    if (sim->parsed()) return run_simulate(system_path, model_path, samples, seed, csv);
    if (chk->parsed()) return run_check_weibull(quality_path, check_tol);
  } catch (const Fail& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
