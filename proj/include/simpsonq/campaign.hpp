#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <sstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bounds.hpp"
#include "functions.hpp"
#include "identity.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace simpsonq {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { json, csv };

struct Tolerances {
  double ref_tol = kDefaultRefTol;
  double check_slack = 1e-10;
};

struct QCheckSettings {
  int grid_x = 17;
  int grid_t = 15;
  /// Absolute tolerance is rel_tol * max(1, max of the checked function on the grid).
  double rel_tol = 1e-12;
};

struct CampaignSections {
  bool identity = true;
  bool bounds = true;
  bool composite = true;
};

struct CampaignConfig {
  std::uint64_t seed = 42;
  int n_functions = 20;
  int n_intervals = 40;
  double range_lo = -5.0;
  double range_hi = 5.0;
  std::vector<double> q_values{1.0, 1.5, 2.0, 3.0, 10.0};
  std::vector<int> partition_sizes{1, 2, 3, 4, 8, 16, 32, 64};
  int degree_budget = 8;
  double coeff_scale = 1.0;
  bool include_catalog = true;
  Tolerances tolerances;
  QCheckSettings qcheck;
  CampaignSections sections;
  // Execution settings below do not affect report content and are not echoed.
  std::string output_path;
  ReportFormat output_format = ReportFormat::json;
  int threads = 1;

  void validate() const {
    if (n_functions < 1 || n_intervals < 1) {
      throw DomainError("n_functions and n_intervals must be at least 1");
    }
    if (!std::isfinite(range_lo) || !std::isfinite(range_hi) || !(range_lo < range_hi)) {
      throw DomainError("interval_range must be finite with min < max");
    }
    if (range_hi - range_lo <= kMinIntervalWidth) {
      throw DomainError("interval_range is narrower than the minimum trial width");
    }
    for (double q : q_values) {
      if (!(q >= 1.0) || !std::isfinite(q)) {
        throw DomainError("every q must be a finite real >= 1");
      }
    }
    for (int n : partition_sizes) {
      if (n < 1) {
        throw DomainError("partition sizes must be at least 1");
      }
    }
    if (partition_sizes.empty()) {
      throw DomainError("at least one partition size is required");
    }
    if (degree_budget < 2) {
      throw DomainError("degree_budget must be at least 2");
    }
    if (!(coeff_scale > 0.0)) {
      throw DomainError("coeff_scale must be positive");
    }
    if (!(tolerances.ref_tol > 0.0) || !(tolerances.check_slack >= 0.0)) {
      throw DomainError("ref_tol must be positive and check_slack nonnegative");
    }
    if (qcheck.grid_x < 3 || qcheck.grid_t < 3 || !(qcheck.rel_tol >= 0.0)) {
      throw DomainError("Q-check grid must be at least 3x3 with nonnegative tolerance");
    }
    if (threads < 1) {
      throw DomainError("threads must be at least 1");
    }
  }

  /// Random trial intervals narrower than this are redrawn.
  static constexpr double kMinIntervalWidth = 1e-3;
};

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

struct ConstantEntry {
  std::string name;
  std::string expression;
  double closed_form = 0.0;
  double numeric = 0.0;
  double delta = 0.0;
  bool ok = false;
};

struct MembershipRecord {
  double q = 1.0;  // the check was run on |f''|^q
  QVerdict verdict = QVerdict::pass;
  double worst_margin = 0.0;
};

struct IdentityTrial {
  std::size_t index = 0;
  FunctionSpec function;
  IdentityRecord record;
  std::optional<std::string> error;
};

struct BoundTrial {
  std::size_t index = 0;
  FunctionSpec function;
  Interval interval{0.0, 1.0};
  bool expected_q_member = true;
  /// q = 1 first, then each configured q != 1.
  std::vector<MembershipRecord> membership;
  std::optional<BoundSet> bounds;
  std::vector<std::string> violated;
  std::optional<std::string> error;
};

struct CompositeTrial {
  std::size_t index = 0;
  FunctionSpec function;
  Interval interval{0.0, 1.0};
  bool expected_q_member = true;
  MembershipRecord membership;
  std::optional<CompositeBoundRecord> record;
  std::vector<std::string> violated;
  std::optional<std::string> error;
};

struct CampaignSummary {
  std::size_t identity_trials = 0;
  std::size_t identity_failures = 0;
  std::size_t bound_trials = 0;
  std::size_t bound_certified = 0;
  std::size_t composite_trials = 0;
  std::size_t composite_certified = 0;
  std::size_t membership_failures = 0;
  std::size_t violations = 0;
  std::size_t oracle_failures = 0;
  std::size_t constant_failures = 0;
  /// Trials where theorem2 at q = 1 differs from theorem1 by more than 1e-12 relative.
  std::size_t reduction_failures = 0;
  std::map<std::string, double> max_tightness;
  bool passed = false;
};

struct CampaignReport {
  int schema_version = kReportSchemaVersion;
  CampaignConfig config;
  std::vector<ConstantEntry> constants;
  std::vector<IdentityTrial> identity;
  std::vector<BoundTrial> bounds;
  std::vector<CompositeTrial> composite;
  CampaignSummary summary;
};

// ---------------------------------------------------------------------------
// Pieces
// ---------------------------------------------------------------------------

inline constexpr double kConstantTolerance = 1e-10;

/// Closed-form moments and the bound constants with their quadrature cross-checks.
inline std::vector<ConstantEntry> constant_table(double oracle_tol = 1e-13) {
  std::vector<ConstantEntry> out;
  const auto add = [&](std::string name, std::string expr, double closed, double numeric) {
    const double delta = std::abs(closed - numeric);
    out.push_back({std::move(name), std::move(expr), closed, numeric, delta,
                   delta <= kConstantTolerance});
  };
  for (MomentWeight w : kAllWeights) {
    for (MomentRange r : kAllRanges) {
      add("moment(" + std::string(to_string(w)) + "," + std::string(to_string(r)) + ")",
          "integral of |6p(t)| w(t)", moment_closed(w, r), moment_numeric(w, r, oracle_tol));
    }
  }
  using enum MomentWeight;
  using enum MomentRange;
  add("abs_half", "1/27", 1.0 / 27.0, moment_numeric(one, left_half, oracle_tol));
  add("same_side", "5/24", 5.0 / 24.0, moment_numeric(inv_t, left_half, oracle_tol));
  add("cross_side", "6 ln 2 - 4 ln 3 + 7/24", 6.0 * kLn2 - 4.0 * kLn3 + 7.0 / 24.0,
      moment_numeric(inv_t, right_half, oracle_tol));
  add("q_bound_constant", "(12 ln 2 - 8 ln 3 + 1)/2", (12.0 * kLn2 - 8.0 * kLn3 + 1.0) / 2.0,
      moment_numeric(inv_t, full, oracle_tol));
  add("composite_constant", "(12 ln 2 - 8 ln 3 + 1)/12", (12.0 * kLn2 - 8.0 * kLn3 + 1.0) / 12.0,
      moment_numeric(inv_t, full, oracle_tol) / 6.0);
  add("constant_consistency", "5/24 + (6 ln 2 - 4 ln 3 + 7/24) vs (12 ln 2 - 8 ln 3 + 1)/2",
      (12.0 * kLn2 - 8.0 * kLn3 + 1.0) / 2.0, 5.0 / 24.0 + (6.0 * kLn2 - 4.0 * kLn3 + 7.0 / 24.0));
  return out;
}

/// Catalog entries (optional) followed by n_functions generated polynomials.
inline std::vector<TestFunction> campaign_functions(const CampaignConfig& cfg) {
  std::vector<TestFunction> out;
  if (cfg.include_catalog) {
    out = catalog();
  }
  for (int i = 0; i < cfg.n_functions; ++i) {
    out.push_back(generate_qclass_function(mix_seed(cfg.seed, static_cast<std::uint64_t>(i)),
                                           static_cast<unsigned>(cfg.degree_budget),
                                           cfg.coeff_scale));
  }
  return out;
}

/// Endpoints uniform in the configured range, widths below the minimum redrawn.
inline Interval draw_interval(Rng& rng, double lo, double hi) {
  for (;;) {
    double a = rng.uniform(lo, hi);
    double b = rng.uniform(lo, hi);
    if (a > b) {
      std::swap(a, b);
    }
    if (b - a >= CampaignConfig::kMinIntervalWidth) {
      return {a, b};
    }
  }
}

/// n panels with random widths; every panel is at least 1/10 of the largest.
inline Partition draw_partition(Rng& rng, const Interval& iv, int panels) {
  std::vector<double> weights(static_cast<std::size_t>(panels));
  double total = 0.0;
  for (double& w : weights) {
    w = rng.uniform(0.1, 1.0);
    total += w;
  }
  std::vector<double> pts{iv.a()};
  double acc = 0.0;
  for (int i = 0; i + 1 < panels; ++i) {
    acc += weights[static_cast<std::size_t>(i)];
    pts.push_back(iv.a() + iv.width() * (acc / total));
  }
  pts.push_back(iv.b());
  return Partition(std::move(pts));
}

/// Sampled membership of |f''|^q on iv.
inline MembershipRecord check_membership(const TestFunction& f, const Interval& iv, double q,
                                         const QCheckSettings& s) {
  const RealFunction g = [&f, q](double x) {
    const double v = std::abs(f.d2f(x));
    return q == 1.0 ? v : std::pow(v, q);
  };
  double scale = 1.0;
  for (int i = 0; i < s.grid_x; ++i) {
    const double x = iv.a() + iv.width() * static_cast<double>(i) / (s.grid_x - 1);
    scale = std::max(scale, std::abs(g(x)));
  }
  const auto rep = qclass_check(g, iv, s.grid_x, s.grid_t, s.rel_tol * scale);
  return {q, rep.verdict, rep.worst_margin};
}

namespace detail {

// Section tags keep the interval streams of different sections independent.
inline constexpr std::uint64_t kIdentityStream = 0x1D;
inline constexpr std::uint64_t kBoundStream = 0xB0;
inline constexpr std::uint64_t kCompositeStream = 0xC0;

template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline bool certified(const MembershipRecord& m) { return m.verdict == QVerdict::pass; }

// Tightness maxima only count bounds above the comparison slack: below it
// the defect is rounding noise and the ratio says nothing about the bound.
inline void update_max(std::map<std::string, double>& m, const std::string& key, double defect,
                       double bound, double slack) {
  if (!(bound > slack)) return;
  const auto value = tightness(defect, bound);
  if (!value) return;
  auto [it, inserted] = m.try_emplace(key, *value);
  if (!inserted) it->second = std::max(it->second, *value);
}

inline std::string q_label(double q) {
  std::ostringstream os;
  os << "theorem2(q=" << q << ")";
  return os.str();
}

}  // namespace detail

/// The function's replay record, or a name-only record for ad-hoc functions.
inline FunctionSpec replay_spec(const TestFunction& f) {
  if (f.spec) return *f.spec;
  FunctionSpec s;
  s.name = f.name;
  return s;
}

inline IdentityTrial run_identity_trial(const TestFunction& f, std::size_t index,
                                        const Interval& iv, const CampaignConfig& cfg) {
  IdentityTrial t;
  t.index = index;
  t.function = replay_spec(f);
  t.record.function = f.name;
  t.record.interval = iv;
  t.record.tol_used = cfg.tolerances.ref_tol;
  try {
    t.record = lemma1_residual(f, iv, cfg.tolerances.ref_tol);
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t;
}

inline BoundTrial run_bound_trial(const TestFunction& f, std::size_t index, const Interval& iv,
                                  const CampaignConfig& cfg) {
  BoundTrial t;
  t.index = index;
  t.function = replay_spec(f);
  t.interval = iv;
  t.expected_q_member = f.expected_q_member;
  try {
    t.membership.push_back(check_membership(f, iv, 1.0, cfg.qcheck));
    for (double q : cfg.q_values) {
      if (q != 1.0) t.membership.push_back(check_membership(f, iv, q, cfg.qcheck));
    }
    t.bounds = compute_bound_set(f, iv, cfg.q_values, cfg.tolerances.ref_tol);
    const auto& bs = *t.bounds;
    const double slack = cfg.tolerances.check_slack;
    const auto membership_for = [&](double q) {
      for (const auto& m : t.membership)
        if (m.q == q) return m;
      return t.membership.front();
    };
    if (detail::certified(t.membership.front())) {
      if (bs.defect > bs.theorem1.value + slack) t.violated.emplace_back("theorem1");
      if (bs.classical && bs.defect > bs.classical->value + slack)
        t.violated.emplace_back("classical");
      if (bs.corollary1_midpoint && bs.defect > bs.corollary1_midpoint->value + slack)
        t.violated.emplace_back("corollary1_midpoint");
    }
    for (const auto& qb : bs.theorem2) {
      if (detail::certified(membership_for(qb.q)) && bs.defect > qb.value + slack)
        t.violated.push_back(detail::q_label(qb.q));
    }
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t;
}

inline CompositeTrial run_composite_trial(const TestFunction& f, std::size_t index,
                                          const Interval& iv, const Partition& d,
                                          const CampaignConfig& cfg) {
  CompositeTrial t;
  t.index = index;
  t.function = replay_spec(f);
  t.interval = iv;
  t.expected_q_member = f.expected_q_member;
  try {
    t.membership = check_membership(f, iv, 1.0, cfg.qcheck);
    t.record = compute_composite_record(f, d, cfg.tolerances.ref_tol);
    const auto& r = *t.record;
    const double slack = cfg.tolerances.check_slack;
    if (detail::certified(t.membership)) {
      if (r.error > r.proposition1 + slack) t.violated.emplace_back("proposition1");
      if (r.error > r.proposition1_integral + slack)
        t.violated.emplace_back("proposition1_integral");
      if (r.classical_composite && r.error > *r.classical_composite + slack)
        t.violated.emplace_back("classical_composite");
    }
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t;
}

/// Recomputes the summary from the trial arrays.
inline CampaignSummary summarize(const CampaignReport& rep) {
  CampaignSummary s;
  const double slack = rep.config.tolerances.check_slack;
  for (const auto& c : rep.constants) {
    if (!c.ok) ++s.constant_failures;
  }
  s.identity_trials = rep.identity.size();
  for (const auto& t : rep.identity) {
    if (t.error) {
      ++s.oracle_failures;
    } else if (!t.record.pass) {
      ++s.identity_failures;
    }
  }
  s.bound_trials = rep.bounds.size();
  for (const auto& t : rep.bounds) {
    if (t.error) {
      ++s.oracle_failures;
      continue;
    }
    const bool cert = detail::certified(t.membership.front());
    if (!cert) {
      ++s.membership_failures;
    } else {
      ++s.bound_certified;
    }
    s.violations += t.violated.size();
    const auto& bs = *t.bounds;
    for (const auto& qb : bs.theorem2) {
      if (qb.q == 1.0 &&
          std::abs(qb.value - bs.theorem1.value) > 1e-12 * std::abs(bs.theorem1.value)) {
        ++s.reduction_failures;
      }
    }
    if (!cert) continue;
    detail::update_max(s.max_tightness, "theorem1", bs.defect, bs.theorem1.value, slack);
    for (const auto& qb : bs.theorem2) {
      const auto m = std::find_if(t.membership.begin(), t.membership.end(),
                                  [&](const auto& r) { return r.q == qb.q; });
      if (m != t.membership.end() && detail::certified(*m))
        detail::update_max(s.max_tightness, detail::q_label(qb.q), bs.defect, qb.value, slack);
    }
    if (bs.classical)
      detail::update_max(s.max_tightness, "classical", bs.defect, bs.classical->value, slack);
    if (bs.corollary1_midpoint)
      detail::update_max(s.max_tightness, "corollary1_midpoint", bs.defect,
                         bs.corollary1_midpoint->value, slack);
  }
  s.composite_trials = rep.composite.size();
  for (const auto& t : rep.composite) {
    if (t.error) {
      ++s.oracle_failures;
      continue;
    }
    if (!detail::certified(t.membership)) {
      ++s.membership_failures;
      continue;
    }
    ++s.composite_certified;
    s.violations += t.violated.size();
    const auto& r = *t.record;
    detail::update_max(s.max_tightness, "proposition1", r.error, r.proposition1, slack);
    detail::update_max(s.max_tightness, "proposition1_integral", r.error,
                       r.proposition1_integral, slack);
    if (r.classical_composite)
      detail::update_max(s.max_tightness, "classical_composite", r.error,
                         *r.classical_composite, slack);
  }
  s.passed = s.violations == 0 && s.oracle_failures == 0 && s.constant_failures == 0 &&
             s.identity_failures == 0 && s.reduction_failures == 0;
  return s;
}

/// Runs every enabled section. Deterministic in the config (thread count
/// included): trial i draws from its own stream mix_seed(seed ^ section, i)
/// and results land in slot i.
inline CampaignReport run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  CampaignReport rep;
  rep.config = cfg;
  rep.constants = constant_table();

  const auto functions = campaign_functions(cfg);
  const auto per_fn = static_cast<std::size_t>(cfg.n_intervals);
  const std::size_t n_trials = functions.size() * per_fn;
  const auto interval_for = [&](std::uint64_t stream, std::size_t i) {
    Rng rng(mix_seed(cfg.seed ^ stream, i));
    return std::pair{draw_interval(rng, cfg.range_lo, cfg.range_hi), std::move(rng)};
  };

  if (cfg.sections.identity) {
    rep.identity.resize(n_trials);
    detail::parallel_for(n_trials, cfg.threads, [&](std::size_t i) {
      auto [iv, rng] = interval_for(detail::kIdentityStream, i);
      rep.identity[i] = run_identity_trial(functions[i / per_fn], i, iv, cfg);
    });
  }
  if (cfg.sections.bounds) {
    rep.bounds.resize(n_trials);
    detail::parallel_for(n_trials, cfg.threads, [&](std::size_t i) {
      auto [iv, rng] = interval_for(detail::kBoundStream, i);
      rep.bounds[i] = run_bound_trial(functions[i / per_fn], i, iv, cfg);
    });
  }
  if (cfg.sections.composite) {
    rep.composite.resize(n_trials);
    detail::parallel_for(n_trials, cfg.threads, [&](std::size_t i) {
      auto [iv, rng] = interval_for(detail::kCompositeStream, i);
      const int panels = cfg.partition_sizes[i % cfg.partition_sizes.size()];
      const auto d = draw_partition(rng, iv, panels);
      rep.composite[i] = run_composite_trial(functions[i / per_fn], i, iv, d, cfg);
    });
  }
  rep.summary = summarize(rep);
  return rep;
}

}  // namespace simpsonq
