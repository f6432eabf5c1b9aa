#pragma once

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "campaign.hpp"

namespace simpsonq {

using Json = nlohmann::ordered_json;

namespace detail {

inline void require_object(const Json& j, std::string_view ctx) {
  if (!j.is_object()) {
    throw SchemaError(std::string(ctx) + ": expected an object");
  }
}

/// Unknown fields are rejected so stored reports stay replayable.
inline void only_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                      std::string_view ctx) {
  require_object(j, ctx);
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw SchemaError(std::string(ctx) + ": unknown field '" + key + "'");
    }
  }
}

template <typename T>
T field(const Json& j, const char* key, std::string_view ctx) {
  if (!j.contains(key)) {
    throw SchemaError(std::string(ctx) + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string(ctx) + "." + key + ": " + e.what());
  }
}

template <typename T>
std::optional<T> nullable(const Json& j, const char* key, std::string_view ctx) {
  if (!j.contains(key)) {
    throw SchemaError(std::string(ctx) + ": missing field '" + key + "'");
  }
  if (j.at(key).is_null()) return std::nullopt;
  return field<T>(j, key, ctx);
}

template <typename T>
Json or_null(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline Json interval_json(const Interval& iv) { return Json::array({iv.a(), iv.b()}); }

inline Interval interval_from(const Json& j, std::string_view ctx) {
  if (!j.is_array() || j.size() != 2) {
    throw SchemaError(std::string(ctx) + ": interval must be [a, b]");
  }
  try {
    return {j[0].get<double>(), j[1].get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string(ctx) + ": " + e.what());
  }
}

inline QVerdict verdict_from(const std::string& s, std::string_view ctx) {
  for (auto v : {QVerdict::pass, QVerdict::fail, QVerdict::inconclusive}) {
    if (s == to_string(v)) return v;
  }
  throw SchemaError(std::string(ctx) + ": unknown verdict '" + s + "'");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Function specs
// ---------------------------------------------------------------------------

inline Json to_json(const FunctionSpec& s) {
  return Json{{"name", s.name},
              {"builtin", detail::or_null(s.builtin)},
              {"d2f_coefficients", s.d2f_coefficients},
              {"slope", s.slope},
              {"offset", s.offset},
              {"seed", detail::or_null(s.seed)}};
}

inline FunctionSpec function_spec_from(const Json& j) {
  constexpr std::string_view ctx = "function";
  detail::only_keys(j, {"name", "builtin", "d2f_coefficients", "slope", "offset", "seed"}, ctx);
  FunctionSpec s;
  s.name = detail::field<std::string>(j, "name", ctx);
  s.builtin = detail::nullable<std::string>(j, "builtin", ctx);
  s.d2f_coefficients = detail::field<std::vector<double>>(j, "d2f_coefficients", ctx);
  s.slope = detail::field<double>(j, "slope", ctx);
  s.offset = detail::field<double>(j, "offset", ctx);
  s.seed = detail::nullable<std::uint64_t>(j, "seed", ctx);
  return s;
}

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

inline std::string_view to_string(ReportFormat f) noexcept {
  return f == ReportFormat::json ? "json" : "csv";
}

inline ReportFormat report_format_from(std::string_view s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw SchemaError("unknown report format '" + std::string(s) + "' (expected json or csv)");
}

/// Content-affecting configuration; execution settings (out, format,
/// threads) are left out so reports compare equal across machines.
inline Json to_json(const CampaignConfig& c) {
  return Json{
      {"seed", c.seed},
      {"n_functions", c.n_functions},
      {"n_intervals", c.n_intervals},
      {"interval_range", Json::array({c.range_lo, c.range_hi})},
      {"q", c.q_values},
      {"partitions", c.partition_sizes},
      {"ref_tol", c.tolerances.ref_tol},
      {"check_slack", c.tolerances.check_slack},
      {"degree_budget", c.degree_budget},
      {"coeff_scale", c.coeff_scale},
      {"include_catalog", c.include_catalog},
      {"qcheck",
       {{"grid_x", c.qcheck.grid_x}, {"grid_t", c.qcheck.grid_t}, {"rel_tol", c.qcheck.rel_tol}}},
      {"sections",
       {{"identity", c.sections.identity},
        {"bounds", c.sections.bounds},
        {"composite", c.sections.composite}}},
  };
}

/// Overlays the keys present in `j` onto `base`. Every key is optional;
/// unknown keys are an error. Accepts the execution settings too, so the
/// same reader serves config files.
inline CampaignConfig config_from(const Json& j, CampaignConfig base = {}) {
  constexpr std::string_view ctx = "config";
  detail::only_keys(j,
                    {"seed", "n_functions", "n_intervals", "interval_range", "q", "partitions",
                     "ref_tol", "check_slack", "degree_budget", "coeff_scale", "include_catalog",
                     "qcheck", "sections", "out", "format", "threads"},
                    ctx);
  CampaignConfig c = std::move(base);
  const auto opt = [&]<typename T>(const char* key, T& dst) {
    if (j.contains(key)) dst = detail::field<T>(j, key, ctx);
  };
  opt("seed", c.seed);
  opt("n_functions", c.n_functions);
  opt("n_intervals", c.n_intervals);
  if (j.contains("interval_range")) {
    const auto iv = detail::interval_from(j.at("interval_range"), "config.interval_range");
    c.range_lo = iv.a();
    c.range_hi = iv.b();
  }
  opt("q", c.q_values);
  opt("partitions", c.partition_sizes);
  opt("ref_tol", c.tolerances.ref_tol);
  opt("check_slack", c.tolerances.check_slack);
  opt("degree_budget", c.degree_budget);
  opt("coeff_scale", c.coeff_scale);
  opt("include_catalog", c.include_catalog);
  opt("threads", c.threads);
  opt("out", c.output_path);
  if (j.contains("format")) {
    c.output_format = report_format_from(detail::field<std::string>(j, "format", ctx));
  }
  if (j.contains("qcheck")) {
    const Json& q = j.at("qcheck");
    detail::only_keys(q, {"grid_x", "grid_t", "rel_tol"}, "config.qcheck");
    if (q.contains("grid_x")) c.qcheck.grid_x = detail::field<int>(q, "grid_x", "config.qcheck");
    if (q.contains("grid_t")) c.qcheck.grid_t = detail::field<int>(q, "grid_t", "config.qcheck");
    if (q.contains("rel_tol"))
      c.qcheck.rel_tol = detail::field<double>(q, "rel_tol", "config.qcheck");
  }
  if (j.contains("sections")) {
    const Json& s = j.at("sections");
    detail::only_keys(s, {"identity", "bounds", "composite"}, "config.sections");
    if (s.contains("identity"))
      c.sections.identity = detail::field<bool>(s, "identity", "config.sections");
    if (s.contains("bounds")) c.sections.bounds = detail::field<bool>(s, "bounds", "config.sections");
    if (s.contains("composite"))
      c.sections.composite = detail::field<bool>(s, "composite", "config.sections");
  }
  return c;
}

inline CampaignConfig load_config_file(const std::filesystem::path& path,
                                       CampaignConfig base = {}) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file '" + path.string() + "'");
  }
  try {
    return config_from(Json::parse(in), std::move(base));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("config file '" + path.string() + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

inline Json to_json(const BoundValue& b) {
  return Json{{"value", b.value}, {"tightness", detail::or_null(b.tightness)}};
}

inline BoundValue bound_value_from(const Json& j, std::string_view ctx) {
  detail::only_keys(j, {"value", "tightness"}, ctx);
  return {detail::field<double>(j, "value", ctx), detail::nullable<double>(j, "tightness", ctx)};
}

inline Json to_json(const BoundSet& b) {
  Json t2 = Json::array();
  for (const auto& q : b.theorem2) {
    t2.push_back({{"q", q.q}, {"value", q.value}, {"tightness", detail::or_null(q.tightness)}});
  }
  std::optional<std::string> source;
  if (b.classical_m4_source) source = std::string(to_string(*b.classical_m4_source));
  return Json{
      {"defect", b.defect},
      {"theorem1", to_json(b.theorem1)},
      {"theorem2", t2},
      {"corollary1_midpoint", b.corollary1_midpoint ? to_json(*b.corollary1_midpoint) : Json()},
      {"classical", b.classical ? to_json(*b.classical) : Json()},
      {"classical_m4", detail::or_null(b.classical_m4)},
      {"classical_m4_source", detail::or_null(source)},
  };
}

inline BoundSet bound_set_from(const Json& j) {
  constexpr std::string_view ctx = "bounds";
  detail::only_keys(j,
                    {"defect", "theorem1", "theorem2", "corollary1_midpoint", "classical",
                     "classical_m4", "classical_m4_source"},
                    ctx);
  BoundSet b;
  b.defect = detail::field<double>(j, "defect", ctx);
  b.theorem1 = bound_value_from(detail::field<Json>(j, "theorem1", ctx), "bounds.theorem1");
  for (const auto& q : detail::field<Json>(j, "theorem2", ctx)) {
    detail::only_keys(q, {"q", "value", "tightness"}, "bounds.theorem2");
    b.theorem2.push_back({detail::field<double>(q, "q", "bounds.theorem2"),
                          detail::field<double>(q, "value", "bounds.theorem2"),
                          detail::nullable<double>(q, "tightness", "bounds.theorem2")});
  }
  if (auto m = detail::field<Json>(j, "corollary1_midpoint", ctx); !m.is_null())
    b.corollary1_midpoint = bound_value_from(m, "bounds.corollary1_midpoint");
  if (auto c = detail::field<Json>(j, "classical", ctx); !c.is_null())
    b.classical = bound_value_from(c, "bounds.classical");
  b.classical_m4 = detail::nullable<double>(j, "classical_m4", ctx);
  if (auto s = detail::nullable<std::string>(j, "classical_m4_source", ctx)) {
    if (*s == to_string(SupSource::supplied)) {
      b.classical_m4_source = SupSource::supplied;
    } else if (*s == to_string(SupSource::grid_sup)) {
      b.classical_m4_source = SupSource::grid_sup;
    } else {
      throw SchemaError("bounds.classical_m4_source: unknown value '" + *s + "'");
    }
  }
  return b;
}

inline Json to_json(const CompositeBoundRecord& r) {
  const auto pts = r.partition.points();
  return Json{{"partition", std::vector<double>(pts.begin(), pts.end())},
              {"error", r.error},
              {"proposition1", r.proposition1},
              {"proposition1_integral", r.proposition1_integral},
              {"classical_composite", detail::or_null(r.classical_composite)},
              {"m4", detail::or_null(r.m4)}};
}

inline CompositeBoundRecord composite_record_from(const Json& j) {
  constexpr std::string_view ctx = "record";
  detail::only_keys(j,
                    {"partition", "error", "proposition1", "proposition1_integral",
                     "classical_composite", "m4"},
                    ctx);
  CompositeBoundRecord r;
  r.partition = Partition(detail::field<std::vector<double>>(j, "partition", ctx));
  r.error = detail::field<double>(j, "error", ctx);
  r.proposition1 = detail::field<double>(j, "proposition1", ctx);
  r.proposition1_integral = detail::field<double>(j, "proposition1_integral", ctx);
  r.classical_composite = detail::nullable<double>(j, "classical_composite", ctx);
  r.m4 = detail::nullable<double>(j, "m4", ctx);
  return r;
}

inline Json to_json(const MembershipRecord& m) {
  return Json{{"q", m.q}, {"verdict", to_string(m.verdict)}, {"worst_margin", m.worst_margin}};
}

inline MembershipRecord membership_from(const Json& j) {
  constexpr std::string_view ctx = "membership";
  detail::only_keys(j, {"q", "verdict", "worst_margin"}, ctx);
  return {detail::field<double>(j, "q", ctx),
          detail::verdict_from(detail::field<std::string>(j, "verdict", ctx), ctx),
          detail::field<double>(j, "worst_margin", ctx)};
}

inline Json to_json(const IdentityTrial& t) {
  const auto& r = t.record;
  return Json{{"index", t.index},
              {"function", to_json(t.function)},
              {"interval", detail::interval_json(r.interval)},
              {"lhs_signed", r.lhs_signed},
              {"rhs_numeric", r.rhs_numeric},
              {"residual", r.residual},
              {"tol_used", r.tol_used},
              {"pass", r.pass},
              {"error", detail::or_null(t.error)}};
}

inline IdentityTrial identity_trial_from(const Json& j) {
  constexpr std::string_view ctx = "identity";
  detail::only_keys(j,
                    {"index", "function", "interval", "lhs_signed", "rhs_numeric", "residual",
                     "tol_used", "pass", "error"},
                    ctx);
  IdentityTrial t;
  t.index = detail::field<std::size_t>(j, "index", ctx);
  t.function = function_spec_from(detail::field<Json>(j, "function", ctx));
  t.record.function = t.function.name;
  t.record.interval = detail::interval_from(detail::field<Json>(j, "interval", ctx), ctx);
  t.record.lhs_signed = detail::field<double>(j, "lhs_signed", ctx);
  t.record.rhs_numeric = detail::field<double>(j, "rhs_numeric", ctx);
  t.record.residual = detail::field<double>(j, "residual", ctx);
  t.record.tol_used = detail::field<double>(j, "tol_used", ctx);
  t.record.pass = detail::field<bool>(j, "pass", ctx);
  t.error = detail::nullable<std::string>(j, "error", ctx);
  return t;
}

inline Json to_json(const BoundTrial& t) {
  Json membership = Json::array();
  for (const auto& m : t.membership) membership.push_back(to_json(m));
  return Json{{"index", t.index},
              {"function", to_json(t.function)},
              {"interval", detail::interval_json(t.interval)},
              {"expected_q_member", t.expected_q_member},
              {"membership", membership},
              {"bounds", t.bounds ? to_json(*t.bounds) : Json()},
              {"violated", t.violated},
              {"error", detail::or_null(t.error)}};
}

inline BoundTrial bound_trial_from(const Json& j) {
  constexpr std::string_view ctx = "bound trial";
  detail::only_keys(j,
                    {"index", "function", "interval", "expected_q_member", "membership", "bounds",
                     "violated", "error"},
                    ctx);
  BoundTrial t;
  t.index = detail::field<std::size_t>(j, "index", ctx);
  t.function = function_spec_from(detail::field<Json>(j, "function", ctx));
  t.interval = detail::interval_from(detail::field<Json>(j, "interval", ctx), ctx);
  t.expected_q_member = detail::field<bool>(j, "expected_q_member", ctx);
  for (const auto& m : detail::field<Json>(j, "membership", ctx))
    t.membership.push_back(membership_from(m));
  if (auto b = detail::field<Json>(j, "bounds", ctx); !b.is_null()) t.bounds = bound_set_from(b);
  t.violated = detail::field<std::vector<std::string>>(j, "violated", ctx);
  t.error = detail::nullable<std::string>(j, "error", ctx);
  if (!t.error && (t.membership.empty() || !t.bounds)) {
    throw SchemaError("bound trial " + std::to_string(t.index) +
                      ": membership and bounds are required unless error is set");
  }
  return t;
}

inline Json to_json(const CompositeTrial& t) {
  return Json{{"index", t.index},
              {"function", to_json(t.function)},
              {"interval", detail::interval_json(t.interval)},
              {"expected_q_member", t.expected_q_member},
              {"membership", to_json(t.membership)},
              {"record", t.record ? to_json(*t.record) : Json()},
              {"violated", t.violated},
              {"error", detail::or_null(t.error)}};
}

inline CompositeTrial composite_trial_from(const Json& j) {
  constexpr std::string_view ctx = "composite trial";
  detail::only_keys(j,
                    {"index", "function", "interval", "expected_q_member", "membership", "record",
                     "violated", "error"},
                    ctx);
  CompositeTrial t;
  t.index = detail::field<std::size_t>(j, "index", ctx);
  t.function = function_spec_from(detail::field<Json>(j, "function", ctx));
  t.interval = detail::interval_from(detail::field<Json>(j, "interval", ctx), ctx);
  t.expected_q_member = detail::field<bool>(j, "expected_q_member", ctx);
  t.membership = membership_from(detail::field<Json>(j, "membership", ctx));
  if (auto r = detail::field<Json>(j, "record", ctx); !r.is_null())
    t.record = composite_record_from(r);
  t.violated = detail::field<std::vector<std::string>>(j, "violated", ctx);
  t.error = detail::nullable<std::string>(j, "error", ctx);
  return t;
}

inline Json to_json(const CampaignSummary& s) {
  Json tight = Json::object();
  for (const auto& [k, v] : s.max_tightness) tight[k] = v;
  return Json{{"identity_trials", s.identity_trials},
              {"identity_failures", s.identity_failures},
              {"bound_trials", s.bound_trials},
              {"bound_certified", s.bound_certified},
              {"composite_trials", s.composite_trials},
              {"composite_certified", s.composite_certified},
              {"membership_failures", s.membership_failures},
              {"violations", s.violations},
              {"oracle_failures", s.oracle_failures},
              {"constant_failures", s.constant_failures},
              {"reduction_failures", s.reduction_failures},
              {"max_tightness", tight},
              {"passed", s.passed}};
}

inline Json to_json(const CampaignReport& r) {
  Json constants = Json::array();
  for (const auto& c : r.constants) {
    constants.push_back({{"name", c.name},
                         {"expression", c.expression},
                         {"closed_form", c.closed_form},
                         {"numeric", c.numeric},
                         {"delta", c.delta},
                         {"ok", c.ok}});
  }
  Json identity = Json::array();
  for (const auto& t : r.identity) identity.push_back(to_json(t));
  Json bounds = Json::array();
  for (const auto& t : r.bounds) bounds.push_back(to_json(t));
  Json composite = Json::array();
  for (const auto& t : r.composite) composite.push_back(to_json(t));
  return Json{{"schema_version", r.schema_version},
              {"config", to_json(r.config)},
              {"constants", constants},
              {"identity", identity},
              {"bounds", bounds},
              {"composite", composite},
              {"summary", to_json(r.summary)}};
}

/// Strict reader for a stored report. The summary is recomputed from the
/// trials and must agree with the stored one.
inline CampaignReport report_from(const Json& j) {
  constexpr std::string_view ctx = "report";
  detail::only_keys(
      j, {"schema_version", "config", "constants", "identity", "bounds", "composite", "summary"},
      ctx);
  CampaignReport r;
  r.schema_version = detail::field<int>(j, "schema_version", ctx);
  if (r.schema_version != kReportSchemaVersion) {
    throw SchemaError("unsupported report schema_version " + std::to_string(r.schema_version));
  }
  r.config = config_from(detail::field<Json>(j, "config", ctx));
  for (const auto& c : detail::field<Json>(j, "constants", ctx)) {
    detail::only_keys(c, {"name", "expression", "closed_form", "numeric", "delta", "ok"},
                      "constants");
    r.constants.push_back({detail::field<std::string>(c, "name", "constants"),
                           detail::field<std::string>(c, "expression", "constants"),
                           detail::field<double>(c, "closed_form", "constants"),
                           detail::field<double>(c, "numeric", "constants"),
                           detail::field<double>(c, "delta", "constants"),
                           detail::field<bool>(c, "ok", "constants")});
  }
  for (const auto& t : detail::field<Json>(j, "identity", ctx))
    r.identity.push_back(identity_trial_from(t));
  for (const auto& t : detail::field<Json>(j, "bounds", ctx))
    r.bounds.push_back(bound_trial_from(t));
  for (const auto& t : detail::field<Json>(j, "composite", ctx))
    r.composite.push_back(composite_trial_from(t));
  r.summary = summarize(r);
  const Json stored = detail::field<Json>(j, "summary", ctx);
  if (stored != to_json(r.summary)) {
    throw SchemaError("report summary does not match its trials");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

inline std::string render_json(const CampaignReport& r) { return to_json(r).dump(2) + "\n"; }

namespace detail {

inline std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_optional(const std::optional<double>& v) {
  return v ? csv_number(*v) : std::string();
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline constexpr std::string_view kCsvHeader =
    "function,kind,a,b,q,defect,bound,tightness,pass,certified";

/// One row per (trial, bound kind). Bound trials contribute theorem1, one
/// theorem2 row per q and classical; composite trials contribute
/// proposition1, proposition1_integral and classical_composite. Kinds that
/// do not apply still get a row (pass = "na"), so the row count is always
/// trials x kinds.
inline std::string render_csv(const CampaignReport& r) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  const double slack = r.config.tolerances.check_slack;
  const auto row = [&](const FunctionSpec& fn, std::string_view kind, const Interval& iv,
                       std::optional<double> q, std::optional<double> defect,
                       std::optional<double> bound, bool certified, bool errored) {
    std::string pass = "na";
    if (errored) {
      pass = "error";
    } else if (defect && bound) {
      pass = *defect <= *bound + slack ? "pass" : "fail";
    }
    std::optional<double> tight;
    if (defect && bound) tight = tightness(*defect, *bound);
    os << detail::csv_field(fn.name) << ',' << kind << ',' << detail::csv_number(iv.a()) << ','
       << detail::csv_number(iv.b()) << ',' << detail::csv_optional(q) << ','
       << detail::csv_optional(defect) << ',' << detail::csv_optional(bound) << ','
       << detail::csv_optional(tight) << ',' << pass << ',' << (certified ? "true" : "false")
       << '\n';
  };

  for (const auto& t : r.bounds) {
    const bool err = t.error.has_value() || !t.bounds;
    const auto member = [&](double q) {
      for (const auto& m : t.membership)
        if (m.q == q) return m.verdict == QVerdict::pass;
      return false;
    };
    std::optional<double> defect;
    if (!err) defect = t.bounds->defect;
    row(t.function, "theorem1", t.interval, std::nullopt, defect,
        err ? std::nullopt : std::optional(t.bounds->theorem1.value), member(1.0), err);
    for (std::size_t k = 0; k < r.config.q_values.size(); ++k) {
      const double q = r.config.q_values[k];
      std::optional<double> v;
      if (!err && k < t.bounds->theorem2.size()) v = t.bounds->theorem2[k].value;
      row(t.function, "theorem2", t.interval, q, defect, v, member(q), err);
    }
    std::optional<double> classical;
    if (!err && t.bounds->classical) classical = t.bounds->classical->value;
    row(t.function, "classical", t.interval, std::nullopt, defect, classical, member(1.0), err);
  }
  for (const auto& t : r.composite) {
    const bool err = t.error.has_value() || !t.record;
    const bool cert = t.membership.verdict == QVerdict::pass;
    std::optional<double> e;
    std::optional<double> p1;
    std::optional<double> p1i;
    std::optional<double> cc;
    if (!err) {
      e = t.record->error;
      p1 = t.record->proposition1;
      p1i = t.record->proposition1_integral;
      cc = t.record->classical_composite;
    }
    row(t.function, "proposition1", t.interval, std::nullopt, e, p1, cert, err);
    row(t.function, "proposition1_integral", t.interval, std::nullopt, e, p1i, cert, err);
    row(t.function, "classical_composite", t.interval, std::nullopt, e, cc, cert, err);
  }
  return os.str();
}

/// Number of CSV data rows render_csv produces.
inline std::size_t csv_row_count(const CampaignReport& r) {
  return r.bounds.size() * (2 + r.config.q_values.size()) + r.composite.size() * 3;
}

inline std::string render(const CampaignReport& r, ReportFormat format) {
  return format == ReportFormat::json ? render_json(r) : render_csv(r);
}

/// Writes the rendered report to `path`.
inline void emit_report(const CampaignReport& r, ReportFormat format,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open report output '" + path.string() + "' for writing");
  }
  out << render(r, format);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing report to '" + path.string() + "'");
  }
}

inline CampaignReport load_report_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open report '" + path.string() + "'");
  }
  try {
    return report_from(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("report '" + path.string() + "': " + e.what());
  }
}

}  // namespace simpsonq
