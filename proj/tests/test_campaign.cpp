#include <catch_amalgamated.hpp>

#include <filesystem>
#include <simpsonq/simpsonq.hpp>

using namespace simpsonq;

namespace {

CampaignConfig small_config() {
  CampaignConfig c;
  c.seed = 3;
  c.n_functions = 3;
  c.n_intervals = 5;
  c.q_values = {1.0, 2.0, 4.0};
  c.partition_sizes = {1, 3, 8};
  return c;
}

}  // namespace

TEST_CASE("campaign is deterministic in the seed", "[campaign]") {
  const auto cfg = small_config();
  const auto a = render_json(run_campaign(cfg));
  CHECK(a == render_json(run_campaign(cfg)));
  auto other = cfg;
  other.seed = 4;
  CHECK(a != render_json(run_campaign(other)));
}

TEST_CASE("thread count does not change the report", "[campaign]") {
  auto cfg = small_config();
  cfg.threads = 1;
  const auto one = render_json(run_campaign(cfg));
  cfg.threads = 4;
  CHECK(one == render_json(run_campaign(cfg)));
}

TEST_CASE("small campaign passes", "[campaign]") {
  const auto rep = run_campaign(small_config());
  const auto& s = rep.summary;
  const std::size_t n_fn = catalog().size() + 3;
  CHECK(s.identity_trials == n_fn * 5);
  CHECK(s.bound_trials == n_fn * 5);
  CHECK(s.composite_trials == n_fn * 5);
  CHECK(s.violations == 0);
  CHECK(s.oracle_failures == 0);
  CHECK(s.identity_failures == 0);
  CHECK(s.constant_failures == 0);
  CHECK(s.passed);
  for (const auto& t : rep.bounds) {
    REQUIRE(t.membership.size() == 3);
    CHECK(t.membership.front().q == 1.0);
  }
}

TEST_CASE("spike trials are excluded from the violation count", "[campaign]") {
  auto cfg = small_config();
  cfg.n_functions = 1;
  cfg.n_intervals = 40;
  const auto rep = run_campaign(cfg);
  std::size_t spike_failures = 0;
  for (const auto& t : rep.bounds) {
    if (t.function.builtin != std::optional<std::string>("gauss_spike")) continue;
    CHECK_FALSE(t.expected_q_member);
    if (t.membership.front().verdict == QVerdict::fail) ++spike_failures;
    if (t.membership.front().verdict != QVerdict::pass) CHECK(t.violated.empty());
  }
  CHECK(spike_failures > 0);
  CHECK(rep.summary.membership_failures > 0);
  CHECK(rep.summary.violations == 0);
}

TEST_CASE("catalog-only campaign has no violations", "[campaign]") {
  auto cfg = small_config();
  cfg.n_functions = 1;
  cfg.n_intervals = 10;
  const auto rep = run_campaign(cfg);
  CHECK(rep.summary.violations == 0);
  CHECK(rep.summary.passed);
}

TEST_CASE("empty campaign still reports the constant table", "[campaign]") {
  auto cfg = small_config();
  cfg.sections = {false, false, false};
  const auto rep = run_campaign(cfg);
  CHECK(rep.identity.empty());
  CHECK(rep.bounds.empty());
  CHECK(rep.composite.empty());
  CHECK(rep.summary.passed);
  bool has_q_constant = false;
  for (const auto& c : rep.constants) {
    CHECK(c.ok);
    if (c.name == "q_bound_constant") has_q_constant = true;
  }
  CHECK(has_q_constant);
  const auto j = Json::parse(render_json(rep));
  CHECK(j.at("identity").empty());
  CHECK(render_csv(rep) == std::string(kCsvHeader) + "\n");
}

TEST_CASE("csv has one row per certificate", "[campaign]") {
  const auto rep = run_campaign(small_config());
  const auto csv = render_csv(rep);
  const auto lines = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  CHECK(lines == csv_row_count(rep) + 1);
  CHECK(csv.starts_with(kCsvHeader));
}

TEST_CASE("json report round-trips byte for byte", "[campaign]") {
  const auto rep = run_campaign(small_config());
  const auto text = render_json(rep);
  const auto back = report_from(Json::parse(text));
  CHECK(render_json(back) == text);
  CHECK(render_csv(back) == render_csv(rep));
}

TEST_CASE("report loader is strict", "[campaign]") {
  auto cfg = small_config();
  cfg.sections.composite = false;
  cfg.n_intervals = 1;
  const auto j = to_json(run_campaign(cfg));

  auto extra = j;
  extra["surprise"] = 1;
  CHECK_THROWS_AS(report_from(extra), SchemaError);

  auto version = j;
  version["schema_version"] = 2;
  CHECK_THROWS_AS(report_from(version), SchemaError);

  auto nested = j;
  nested["bounds"][0]["unexpected"] = true;
  CHECK_THROWS_AS(report_from(nested), SchemaError);

  auto tampered = j;
  tampered["summary"]["violations"] = 5;
  CHECK_THROWS_AS(report_from(tampered), SchemaError);
}

TEST_CASE("a trial replays from its recorded function", "[campaign]") {
  const auto cfg = small_config();
  const auto rep = run_campaign(cfg);
  for (const auto& t : rep.bounds) {
    const auto f = make_function(t.function);
    const auto again = run_bound_trial(f, t.index, t.interval, cfg);
    REQUIRE(again.bounds);
    CHECK_THAT(again.bounds->defect, Catch::Matchers::WithinAbs(t.bounds->defect, 1e-12));
    CHECK_THAT(again.bounds->theorem1.value,
               Catch::Matchers::WithinRel(t.bounds->theorem1.value, 1e-12));
  }
  for (const auto& t : rep.composite) {
    const auto again =
        run_composite_trial(make_function(t.function), t.index, t.interval, t.record->partition, cfg);
    CHECK_THAT(again.record->error, Catch::Matchers::WithinAbs(t.record->error, 1e-12));
  }
}

TEST_CASE("config parsing", "[campaign]") {
  const auto j = Json::parse(R"({"seed": 9, "q": [1, 3], "partitions": [2], "threads": 3})");
  const auto c = config_from(j);
  CHECK(c.seed == 9);
  CHECK(c.q_values == std::vector<double>{1.0, 3.0});
  CHECK(c.partition_sizes == std::vector<int>{2});
  CHECK(c.threads == 3);
  CHECK(c.n_functions == CampaignConfig{}.n_functions);

  CHECK_THROWS_AS(config_from(Json::parse(R"({"n_function": 2})")), SchemaError);
  CHECK_THROWS_AS(config_from(Json::parse(R"({"seed": "x"})")), SchemaError);

  const auto round = config_from(to_json(small_config()));
  CHECK(to_json(round) == to_json(small_config()));
}

TEST_CASE("config validation", "[campaign]") {
  auto c = small_config();
  c.q_values = {0.5};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = small_config();
  c.n_intervals = 0;
  CHECK_THROWS_AS(run_campaign(c), DomainError);
  c = small_config();
  c.range_lo = 1.0;
  c.range_hi = 1.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = small_config();
  c.partition_sizes = {};
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("report output errors name the path", "[campaign]") {
  auto cfg = small_config();
  cfg.sections = {false, false, false};
  const auto rep = run_campaign(cfg);
  const std::filesystem::path bad = "/nonexistent-dir/report.json";
  try {
    emit_report(rep, ReportFormat::json, bad);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
  }
}
