// Command-line front end: constant table, verification campaigns, report rendering.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <simpsonq/simpsonq.hpp>
#include <string>
#include <vector>

namespace {

struct CampaignFlags {
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<int> n_functions;
  std::optional<int> n_intervals;
  std::vector<double> q;
  std::vector<int> partitions;
  std::optional<double> ref_tol;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> threads;
};

void add_campaign_flags(CLI::App* cmd, CampaignFlags& f) {
  cmd->add_option("--config", f.config_file, "JSON config file; flags override its values")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "campaign seed");
  cmd->add_option("--n-functions", f.n_functions, "number of generated functions");
  cmd->add_option("--n-intervals", f.n_intervals, "random intervals per function");
  cmd->add_option("--q", f.q, "power-mean exponent q >= 1 (repeatable)")->take_all();
  cmd->add_option("--partitions", f.partitions, "composite panel count (repeatable)")->take_all();
  cmd->add_option("--ref-tol", f.ref_tol, "reference integration tolerance");
  cmd->add_option("--out", f.out, "report output path (default: stdout)");
  cmd->add_option("--format", f.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--threads", f.threads, "worker threads (does not change results)");
}

simpsonq::CampaignConfig resolve_config(const CampaignFlags& f, simpsonq::CampaignSections sections) {
  simpsonq::CampaignConfig cfg;
  cfg.sections = sections;
  if (!f.config_file.empty()) {
    cfg = simpsonq::load_config_file(f.config_file, cfg);
  }
  if (f.seed) cfg.seed = *f.seed;
  if (f.n_functions) cfg.n_functions = *f.n_functions;
  if (f.n_intervals) cfg.n_intervals = *f.n_intervals;
  if (!f.q.empty()) cfg.q_values = f.q;
  if (!f.partitions.empty()) cfg.partition_sizes = f.partitions;
  if (f.ref_tol) cfg.tolerances.ref_tol = *f.ref_tol;
  if (f.out) cfg.output_path = *f.out;
  if (f.format) cfg.output_format = simpsonq::report_format_from(*f.format);
  if (f.threads) cfg.threads = *f.threads;
  return cfg;
}

void print_summary(const simpsonq::CampaignReport& r, std::FILE* stream) {
  const auto& s = r.summary;
  std::fprintf(stream,
               "identity %zu (failures %zu) | bounds %zu (certified %zu) | composite %zu "
               "(certified %zu) | membership fails %zu | violations %zu | oracle failures %zu | "
               "%s\n",
               s.identity_trials, s.identity_failures, s.bound_trials, s.bound_certified,
               s.composite_trials, s.composite_certified, s.membership_failures, s.violations,
               s.oracle_failures, s.passed ? "PASS" : "FAIL");
  for (const auto& [kind, t] : s.max_tightness) {
    std::fprintf(stream, "  max tightness %-24s %.6g\n", kind.c_str(), t);
  }
}

int write_report(const simpsonq::CampaignReport& r, const std::string& path,
                 simpsonq::ReportFormat format) {
  if (path.empty() || path == "-") {
    std::cout << simpsonq::render(r, format);
    print_summary(r, stderr);
  } else {
    simpsonq::emit_report(r, format, path);
    print_summary(r, stdout);
  }
  return r.summary.passed ? 0 : 1;
}

int run_moments(const std::string& format) {
  const auto table = simpsonq::constant_table();
  if (format == "json") {
    simpsonq::Json j = simpsonq::Json::array();
    for (const auto& c : table) {
      j.push_back({{"name", c.name},
                   {"expression", c.expression},
                   {"closed_form", c.closed_form},
                   {"numeric", c.numeric},
                   {"delta", c.delta},
                   {"ok", c.ok}});
    }
    std::cout << j.dump(2) << '\n';
  } else {
    std::printf("%-36s %-22s %-22s %-10s %s\n", "name", "closed form", "numeric", "delta", "ok");
    for (const auto& c : table) {
      std::printf("%-36s %-22.17g %-22.17g %-10.2e %s\n", c.name.c_str(), c.closed_form,
                  c.numeric, c.delta, c.ok ? "yes" : "NO");
    }
  }
  bool ok = true;
  for (const auto& c : table) ok = ok && c.ok;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simpson quadrature error certificates for Q-class second derivatives"};
  app.require_subcommand(1);

  std::string moments_format = "text";
  auto* moments = app.add_subcommand("moments", "print the kernel moment / constant table");
  moments->add_option("--format", moments_format)->check(CLI::IsMember({"text", "json"}));

  CampaignFlags identity_flags;
  CampaignFlags bounds_flags;
  CampaignFlags composite_flags;
  CampaignFlags all_flags;
  auto* identity =
      app.add_subcommand("verify-identity", "check the kernel identity on random intervals");
  auto* bounds = app.add_subcommand("verify-bounds", "mean-scale bound validity campaign");
  auto* composite = app.add_subcommand("composite", "composite-rule bound validity campaign");
  auto* campaign = app.add_subcommand("campaign", "run every section");
  add_campaign_flags(identity, identity_flags);
  add_campaign_flags(bounds, bounds_flags);
  add_campaign_flags(composite, composite_flags);
  add_campaign_flags(campaign, all_flags);

  std::string report_in;
  std::string report_out;
  std::string report_format = "json";
  auto* report = app.add_subcommand("report", "validate and re-render a stored JSON report");
  report->add_option("input", report_in, "stored report")->required()->check(CLI::ExistingFile);
  report->add_option("--out", report_out, "output path (default: stdout)");
  report->add_option("--format", report_format)->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*moments) {
      return run_moments(moments_format);
    }
    if (*report) {
      const auto r = simpsonq::load_report_file(report_in);
      return write_report(r, report_out, simpsonq::report_format_from(report_format));
    }
    const CampaignFlags* flags = &all_flags;
    simpsonq::CampaignSections sections;
    if (*identity) {
      flags = &identity_flags;
      sections = {true, false, false};
    } else if (*bounds) {
      flags = &bounds_flags;
      sections = {false, true, false};
    } else if (*composite) {
      flags = &composite_flags;
      sections = {false, false, true};
    }
    const auto cfg = resolve_config(*flags, sections);
    const auto r = simpsonq::run_campaign(cfg);
    return write_report(r, cfg.output_path, cfg.output_format);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
