#include "sigcore.h"

#include <cstring>
#include <optional>
#include <string>

#include "sigcore/json_io.hpp"
#include "sigcore/oracle.hpp"
#include "sigcore/quality.hpp"
#include "sigcore/signature.hpp"
#include "sigcore/structure.hpp"

struct sigcore_structure {
  sigcore::StructureFunction phi;
  std::optional<sigcore::PathSetSystem> paths;
};

struct sigcore_model {
  sigcore::LifetimeModel model;
};

struct sigcore_quality {
  sigcore::QualityFunction q;
};

namespace {

thread_local std::string t_last_error;

sigcore_status status_from_errc(sigcore::errc code) {
  switch (code) {
    case sigcore::errc::parse: return SIGCORE_ERROR_PARSE;
    case sigcore::errc::domain: return SIGCORE_ERROR_DOMAIN;
    case sigcore::errc::mismatch: return SIGCORE_ERROR_MISMATCH;
    case sigcore::errc::numeric: return SIGCORE_ERROR_NUMERIC;
  }
  return SIGCORE_ERROR_INTERNAL;
}

template <typename Fn>
sigcore_status wrap(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return SIGCORE_OK;
  } catch (const sigcore::error& e) {
    t_last_error = e.what();
    return status_from_errc(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return SIGCORE_ERROR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return SIGCORE_ERROR_INTERNAL;
  }
}

sigcore_status null_error(const char* what) {
  t_last_error = std::string(what) + " must not be NULL";
  return SIGCORE_ERROR_NULL;
}

void copy_truncated(char* dst, size_t size, const std::string& src) {
  if (dst == nullptr || size == 0) return;
  const size_t len = src.size() < size - 1 ? src.size() : size - 1;
  std::memcpy(dst, src.data(), len);
  dst[len] = '\0';
}

sigcore_route from_core_route(sigcore::QualityRoute route) {
  switch (route) {
    case sigcore::QualityRoute::exchangeable: return SIGCORE_ROUTE_EXCHANGEABLE;
    case sigcore::QualityRoute::order_probs: return SIGCORE_ROUTE_ORDER_PROBS;
    case sigcore::QualityRoute::quadrature: return SIGCORE_ROUTE_QUADRATURE;
    case sigcore::QualityRoute::weibull_closed_form: return SIGCORE_ROUTE_WEIBULL_CLOSED_FORM;
    case sigcore::QualityRoute::weibull_difference: return SIGCORE_ROUTE_WEIBULL_DIFFERENCE;
    case sigcore::QualityRoute::external: return SIGCORE_ROUTE_AUTO;
  }
  return SIGCORE_ROUTE_AUTO;
}

int resolve_model_n(const sigcore::LifetimeModel& model, int n) {
  if (model.n != 0) {
    if (n != 0 && n != model.n)
      sigcore::throw_mismatch("requested n=" + std::to_string(n) +
                              " conflicts with the model's n=" + std::to_string(model.n));
    return model.n;
  }
  if (n == 0)
    sigcore::throw_mismatch("model '" + model.kind_name() +
                            "' does not pin a component count; pass n explicitly");
  sigcore::require_component_count(n);
  return n;
}

sigcore::QualityFunction compute_quality(const sigcore::LifetimeModel& model, int n,
                                         sigcore_route route, double tol) {
  using Kind = sigcore::LifetimeModel::Kind;
  if (tol <= 0.0) tol = 1e-9;
  if (route == SIGCORE_ROUTE_AUTO) {
    switch (model.kind) {
      case Kind::iid:
      case Kind::exchangeable: route = SIGCORE_ROUTE_EXCHANGEABLE; break;
      case Kind::weibull: route = SIGCORE_ROUTE_WEIBULL_CLOSED_FORM; break;
      case Kind::independent: route = SIGCORE_ROUTE_QUADRATURE; break;
      case Kind::order_probs: route = SIGCORE_ROUTE_ORDER_PROBS; break;
    }
  }
  switch (route) {
    case SIGCORE_ROUTE_EXCHANGEABLE:
      if (model.kind != Kind::iid && model.kind != Kind::exchangeable)
        sigcore::throw_mismatch("exchangeable route applies to iid/exchangeable models, not '" +
                                model.kind_name() + "'");
      return sigcore::quality_exchangeable(resolve_model_n(model, n));
    case SIGCORE_ROUTE_ORDER_PROBS:
      return sigcore::quality_from_order_probabilities(model);
    case SIGCORE_ROUTE_QUADRATURE:
      return sigcore::quality_independent_quadrature(model, tol);
    case SIGCORE_ROUTE_WEIBULL_CLOSED_FORM:
      if (model.kind != Kind::weibull)
        sigcore::throw_mismatch("closed-form route needs a weibull model, got '" +
                                model.kind_name() + "'");
      return sigcore::quality_weibull(model.alpha, model.lambdas);
    case SIGCORE_ROUTE_WEIBULL_DIFFERENCE:
      if (model.kind != Kind::weibull)
        sigcore::throw_mismatch("difference route needs a weibull model, got '" +
                                model.kind_name() + "'");
      return sigcore::quality_weibull_via_difference(model.alpha, model.lambdas);
    default:
      sigcore::throw_domain("unknown route value");
  }
}

}  // namespace

extern "C" {

const char* sigcore_version(void) { return "0.1.0"; }

const char* sigcore_status_name(sigcore_status status) {
  switch (status) {
    case SIGCORE_OK: return "ok";
    case SIGCORE_ERROR_PARSE: return "parse error";
    case SIGCORE_ERROR_DOMAIN: return "domain error";
    case SIGCORE_ERROR_MISMATCH: return "mismatch error";
    case SIGCORE_ERROR_NUMERIC: return "numeric error";
    case SIGCORE_ERROR_NULL: return "null argument";
    case SIGCORE_ERROR_INTERNAL: return "internal error";
  }
  return "?";
}

const char* sigcore_last_error(void) { return t_last_error.c_str(); }

const char* sigcore_route_name(sigcore_route route) {
  switch (route) {
    case SIGCORE_ROUTE_AUTO: return "auto";
    case SIGCORE_ROUTE_EXCHANGEABLE: return "exchangeable";
    case SIGCORE_ROUTE_ORDER_PROBS: return "order_probs";
    case SIGCORE_ROUTE_QUADRATURE: return "quadrature";
    case SIGCORE_ROUTE_WEIBULL_CLOSED_FORM: return "weibull_closed_form";
    case SIGCORE_ROUTE_WEIBULL_DIFFERENCE: return "weibull_difference";
  }
  return "?";
}

sigcore_status sigcore_structure_from_json(const char* json_text, sigcore_structure** out) {
  if (json_text == nullptr) return null_error("json_text");
  if (out == nullptr) return null_error("out");
  return wrap([&] {
    auto parsed = sigcore::parse_system_json(json_text);
    *out = new sigcore_structure{std::move(parsed.phi), std::move(parsed.paths)};
  });
}

sigcore_status sigcore_structure_series(int n, sigcore_structure** out) {
  if (out == nullptr) return null_error("out");
  return wrap([&] {
    *out = new sigcore_structure{sigcore::StructureFunction::series(n), std::nullopt};
  });
}

sigcore_status sigcore_structure_parallel(int n, sigcore_structure** out) {
  if (out == nullptr) return null_error("out");
  return wrap([&] {
    *out = new sigcore_structure{sigcore::StructureFunction::parallel(n), std::nullopt};
  });
}

sigcore_status sigcore_structure_k_out_of_n(int n, int k, sigcore_structure** out) {
  if (out == nullptr) return null_error("out");
  return wrap([&] {
    *out = new sigcore_structure{sigcore::StructureFunction::k_out_of_n(n, k), std::nullopt};
  });
}

sigcore_status sigcore_structure_from_paths(int n, const uint32_t* paths, size_t n_paths,
                                            sigcore_structure** out) {
  if (paths == nullptr) return null_error("paths");
  if (out == nullptr) return null_error("out");
  return wrap([&] {
    std::vector<sigcore::mask_t> masks(paths, paths + n_paths);
    auto ps = sigcore::PathSetSystem::create(n, std::move(masks));
    auto phi = sigcore::StructureFunction::from_path_sets(ps);
    *out = new sigcore_structure{std::move(phi), std::move(ps)};
  });
}

void sigcore_structure_free(sigcore_structure* s) { delete s; }

int sigcore_structure_n(const sigcore_structure* s) { return s == nullptr ? 0 : s->phi.n(); }

sigcore_status sigcore_structure_evaluate(const sigcore_structure* s, uint32_t subset,
                                          int* out_state) {
  if (s == nullptr) return null_error("structure");
  if (out_state == nullptr) return null_error("out_state");
  return wrap([&] {
    if (subset & ~sigcore::full_mask(s->phi.n()))
      sigcore::throw_mismatch("arity mismatch: subset uses components beyond n=" +
                              std::to_string(s->phi.n()));
    *out_state = s->phi(subset);
  });
}

sigcore_status sigcore_structure_table(const sigcore_structure* s, uint8_t* out_table) {
  if (s == nullptr) return null_error("structure");
  if (out_table == nullptr) return null_error("out_table");
  return wrap([&] {
    const auto& table = s->phi.table();
    std::memcpy(out_table, table.data(), table.size());
  });
}

sigcore_status sigcore_structure_is_semicoherent(const sigcore_structure* s, int* out_flag,
                                                 char* report, size_t report_size) {
  if (s == nullptr) return null_error("structure");
  if (out_flag == nullptr) return null_error("out_flag");
  return wrap([&] {
    const auto r = sigcore::is_semicoherent(s->phi);
    *out_flag = r.ok ? 1 : 0;
    copy_truncated(report, report_size, r.violation);
  });
}

sigcore_status sigcore_structure_minimal_path_sets(const sigcore_structure* s,
                                                   uint32_t* out_paths, size_t capacity,
                                                   size_t* out_count) {
  if (s == nullptr) return null_error("structure");
  if (out_count == nullptr) return null_error("out_count");
  return wrap([&] {
    const auto ps = sigcore::minimal_path_sets(s->phi);
    *out_count = ps.paths.size();
    if (out_paths != nullptr) {
      const size_t m = ps.paths.size() < capacity ? ps.paths.size() : capacity;
      for (size_t i = 0; i < m; ++i) out_paths[i] = ps.paths[i];
    }
  });
}

sigcore_status sigcore_model_from_json(const char* json_text, sigcore_model** out) {
  if (json_text == nullptr) return null_error("json_text");
  if (out == nullptr) return null_error("out");
  return wrap([&] { *out = new sigcore_model{sigcore::parse_model_json(json_text)}; });
}

void sigcore_model_free(sigcore_model* m) { delete m; }

int sigcore_model_n(const sigcore_model* m) { return m == nullptr ? 0 : m->model.n; }

int sigcore_model_is_samplable(const sigcore_model* m) {
  return (m != nullptr && m->model.samplable()) ? 1 : 0;
}

const char* sigcore_model_kind(const sigcore_model* m) {
  if (m == nullptr) return "";
  using Kind = sigcore::LifetimeModel::Kind;
  switch (m->model.kind) {
    case Kind::iid: return "iid";
    case Kind::exchangeable: return "exchangeable";
    case Kind::independent: return "independent";
    case Kind::weibull: return "weibull";
    case Kind::order_probs: return "order_probs";
  }
  return "?";
}

sigcore_status sigcore_quality_compute(const sigcore_model* m, int n, sigcore_route route,
                                       double tol, sigcore_quality** out) {
  if (m == nullptr) return null_error("model");
  if (out == nullptr) return null_error("out");
  return wrap([&] { *out = new sigcore_quality{compute_quality(m->model, n, route, tol)}; });
}

sigcore_status sigcore_quality_from_values(int n, const double* values, sigcore_quality** out) {
  if (values == nullptr) return null_error("values");
  if (out == nullptr) return null_error("out");
  return wrap([&] {
    std::vector<double> v(values, values + sigcore::table_size(n));
    *out = new sigcore_quality{sigcore::QualityFunction::from_values(n, std::move(v))};
  });
}

void sigcore_quality_free(sigcore_quality* q) { delete q; }

int sigcore_quality_n(const sigcore_quality* q) { return q == nullptr ? 0 : q->q.n(); }

sigcore_route sigcore_quality_get_route(const sigcore_quality* q) {
  return q == nullptr ? SIGCORE_ROUTE_AUTO : from_core_route(q->q.route());
}

sigcore_status sigcore_quality_values(const sigcore_quality* q, double* out) {
  if (q == nullptr) return null_error("quality");
  if (out == nullptr) return null_error("out");
  return wrap([&] {
    const auto& v = q->q.values();
    std::memcpy(out, v.data(), v.size() * sizeof(double));
  });
}

sigcore_status sigcore_quality_level_sums(const sigcore_quality* q, double* out) {
  if (q == nullptr) return null_error("quality");
  if (out == nullptr) return null_error("out");
  return wrap([&] {
    const auto sums = q->q.level_sums();
    std::memcpy(out, sums.data(), sums.size() * sizeof(double));
  });
}

sigcore_status sigcore_quality_normalize_levels(const sigcore_quality* q,
                                                sigcore_quality** out) {
  if (q == nullptr) return null_error("quality");
  if (out == nullptr) return null_error("out");
  return wrap([&] { *out = new sigcore_quality{sigcore::normalize_levels(q->q)}; });
}

sigcore_status sigcore_quality_tilde(const sigcore_quality* q, double* out) {
  if (q == nullptr) return null_error("quality");
  if (out == nullptr) return null_error("out");
  return wrap([&] {
    const auto t = sigcore::tilde(q->q);
    std::memcpy(out, t.values.data(), t.values.size() * sizeof(double));
  });
}

sigcore_status sigcore_check_weibull(const sigcore_quality* q, double tol, int* out_compatible,
                                     double* out_rates, char* reason, size_t reason_size) {
  if (q == nullptr) return null_error("quality");
  if (out_compatible == nullptr) return null_error("out_compatible");
  return wrap([&] {
    const auto check = sigcore::weibull_characterization_check(q->q, tol > 0.0 ? tol : 1e-8);
    *out_compatible = check.compatible ? 1 : 0;
    copy_truncated(reason, reason_size, check.reason);
    if (check.compatible && out_rates != nullptr) {
      const auto& rates = *check.recovered_rates;
      std::memcpy(out_rates, rates.data(), rates.size() * sizeof(double));
    }
  });
}

sigcore_status sigcore_shortest_lifetime_in_set(const sigcore_model* m, uint32_t subset,
                                                double* out) {
  if (m == nullptr) return null_error("model");
  if (out == nullptr) return null_error("out");
  return wrap([&] {
    if (m->model.kind != sigcore::LifetimeModel::Kind::weibull)
      sigcore::throw_mismatch("shortest-lifetime probability needs a weibull model");
    *out = sigcore::shortest_lifetime_in_set_probability(m->model.alpha, m->model.lambdas,
                                                         subset);
  });
}

sigcore_status sigcore_boland_signature(const sigcore_structure* s, double* out_p) {
  if (s == nullptr) return null_error("structure");
  if (out_p == nullptr) return null_error("out_p");
  return wrap([&] {
    const auto sig = sigcore::boland_signature(s->phi);
    std::memcpy(out_p, sig.p.data(), sig.p.size() * sizeof(double));
  });
}

sigcore_status sigcore_signature_from_quality(const sigcore_structure* s,
                                              const sigcore_quality* q, double* out_p,
                                              double* out_tails) {
  if (s == nullptr) return null_error("structure");
  if (q == nullptr) return null_error("quality");
  if (out_p == nullptr) return null_error("out_p");
  return wrap([&] {
    const auto tails = sigcore::tail_probabilities(s->phi, q->q);
    const auto sig = sigcore::signature_from_quality(s->phi, q->q);
    std::memcpy(out_p, sig.p.data(), sig.p.size() * sizeof(double));
    if (out_tails != nullptr)
      std::memcpy(out_tails, tails.values.data(), tails.values.size() * sizeof(double));
  });
}

sigcore_status sigcore_signature_via_rk(const sigcore_structure* s, const sigcore_quality* q,
                                        double* out_p) {
  if (s == nullptr) return null_error("structure");
  if (q == nullptr) return null_error("quality");
  if (out_p == nullptr) return null_error("out_p");
  return wrap([&] {
    const auto sig = sigcore::signature_via_rk(s->phi, q->q);
    std::memcpy(out_p, sig.p.data(), sig.p.size() * sizeof(double));
  });
}

sigcore_status sigcore_symmetric_projection(int n, const double* f, const double* w,
                                            double* out_constant, double* out_c,
                                            double* out_residual) {
  if (f == nullptr) return null_error("f");
  if (w == nullptr) return null_error("w");
  if (out_constant == nullptr) return null_error("out_constant");
  if (out_c == nullptr) return null_error("out_c");
  return wrap([&] {
    sigcore::require_component_count(n);
    std::vector<double> fv(f, f + sigcore::table_size(n));
    std::vector<double> wv(w, w + sigcore::table_size(n));
    const auto approx = sigcore::symmetric_projection(n, fv, wv);
    *out_constant = approx.constant;
    std::memcpy(out_c, approx.coefficients.data(),
                approx.coefficients.size() * sizeof(double));
    if (out_residual != nullptr)
      *out_residual = sigcore::projection_residual_check(n, fv, wv, approx);
  });
}

sigcore_status sigcore_permutation_signature(const sigcore_structure* s,
                                             const sigcore_model* m_or_null, double* out_p) {
  if (s == nullptr) return null_error("structure");
  if (out_p == nullptr) return null_error("out_p");
  return wrap([&] {
    std::optional<sigcore::LifetimeModel> model;
    if (m_or_null != nullptr) model = m_or_null->model;
    const auto sig = sigcore::permutation_signature(s->phi, model);
    std::memcpy(out_p, sig.p.data(), sig.p.size() * sizeof(double));
  });
}

sigcore_status sigcore_monte_carlo_signature(const sigcore_structure* s, const sigcore_model* m,
                                             uint64_t samples, uint64_t seed, double* out_p_hat,
                                             double* out_se) {
  if (s == nullptr) return null_error("structure");
  if (m == nullptr) return null_error("model");
  if (out_p_hat == nullptr) return null_error("out_p_hat");
  return wrap([&] {
    const sigcore::SimulationReport rep =
        s->paths.has_value()
            ? sigcore::monte_carlo_signature(*s->paths, m->model, samples, seed)
            : sigcore::monte_carlo_signature(s->phi, m->model, samples, seed);
    std::memcpy(out_p_hat, rep.estimates.data(), rep.estimates.size() * sizeof(double));
    if (out_se != nullptr)
      std::memcpy(out_se, rep.std_errors.data(), rep.std_errors.size() * sizeof(double));
  });
}

sigcore_status sigcore_monte_carlo_quality(const sigcore_model* m, int n, uint64_t samples,
                                           uint64_t seed, double* out_q_hat, double* out_se) {
  if (m == nullptr) return null_error("model");
  if (out_q_hat == nullptr) return null_error("out_q_hat");
  return wrap([&] {
    resolve_model_n(m->model, n);  // validates n against the model
    const auto rep = sigcore::monte_carlo_quality(m->model, samples, seed);
    std::memcpy(out_q_hat, rep.estimates.data(), rep.estimates.size() * sizeof(double));
    if (out_se != nullptr)
      std::memcpy(out_se, rep.std_errors.data(), rep.std_errors.size() * sizeof(double));
  });
}

}  // extern "C"
