#include <doctest.h>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "migraine/cli.hpp"
#include "support.hpp"

using namespace migraine;
using namespace migraine::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> argv) {
  std::ostringstream out, err;
  Run r;
  r.status = run_command(argv, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) { return read_file(p); }

std::size_t line_count(const fs::path& p) {
  std::ifstream f(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(f, line)) n += !line.empty();
  return n;
}

std::set<std::string> names_in(const fs::path& dir) {
  std::set<std::string> s;
  for (const auto& e : fs::directory_iterator(dir)) s.insert(e.path().filename().string());
  return s;
}

fs::path fixture_config(std::string_view name) { return testsupport::fixtures_dir() / name / "config.json"; }

void run_stages(const fs::path& config, const fs::path& out, const std::vector<std::string>& stages) {
  for (const auto& s : stages) {
    const auto r = run({s, "--config", config.string(), "--out", out.string()});
    INFO(s << ": " << r.err);
    REQUIRE(r.status == 0);
  }
}

// Minimal config with absolute paths, for validation tests.
nlohmann::json minimal_config() {
  const auto data = testsupport::data_dir();
  return {{"platform", "reddit"},
          {"seed", 1},
          {"paths",
           {{"raw_posts", (testsupport::fixtures_dir() / "reddit" / "raw_posts.jsonl").string()},
            {"sentiment_lexicon", (data / "sentiment_lexicon.tsv").string()}}}};
}

Run run_with_config(const testsupport::TempDir& dir, const nlohmann::json& cfg, const std::string& sub = "ingest") {
  const auto path = dir / "config.json";
  write_file_atomic(path, cfg.dump());
  return run({sub, "--config", path.string(), "--out", (dir / "out").string()});
}

}  // namespace

TEST_CASE("unknown subcommand exits nonzero with usage on stderr") {
  const auto r = run({"frobnicate", "--config", "x.json"});
  CHECK(r.status != 0);
  CHECK(r.err.find("frobnicate") != std::string::npos);
  CHECK(r.err.find("ingest") != std::string::npos);
  CHECK(r.out.empty());

  const auto none = run({});
  CHECK(none.status != 0);
  CHECK_FALSE(none.err.empty());

  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("missing --config is a usage error") {
  const auto r = run({"ingest"});
  CHECK(r.status == 2);
  CHECK(r.err.find("--config") != std::string::npos);
}

TEST_CASE("config validation failures name the field") {
  testsupport::TempDir dir("cfg");

  auto cfg = minimal_config();
  CHECK(run_with_config(dir, cfg).status == 0);

  cfg = minimal_config();
  cfg["platform"] = "myspace";
  auto r = run_with_config(dir, cfg);
  CHECK(r.status == 2);
  CHECK(r.err.find("platform") != std::string::npos);

  cfg = minimal_config();
  cfg["paths"]["raw_posts"] = (dir / "nope.jsonl").string();
  r = run_with_config(dir, cfg);
  CHECK(r.status == 2);
  CHECK(r.err.find("paths.raw_posts") != std::string::npos);

  cfg = minimal_config();
  cfg["classifier"] = {{"hyperparams", {{"hash_dim", 1000}}}};
  r = run_with_config(dir, cfg);
  CHECK(r.status == 2);
  CHECK(r.err.find("hash_dim") != std::string::npos);

  cfg = minimal_config();
  cfg["split"] = {{"trian", 0.64}};
  r = run_with_config(dir, cfg);
  CHECK(r.status == 2);
  CHECK(r.err.find("split.trian") != std::string::npos);

  cfg = minimal_config();
  cfg.erase("seed");
  r = run_with_config(dir, cfg);
  CHECK(r.status == 2);
  CHECK(r.err.find("seed") != std::string::npos);
  const auto path = dir / "config.json";
  CHECK(run({"ingest", "--config", path.string(), "--seed", "5", "--out", (dir / "out").string()}).status == 0);

  cfg = minimal_config();
  cfg["sentiment"] = {{"mode", "per_user_median"}};
  r = run_with_config(dir, cfg);
  CHECK(r.status == 2);
  CHECK(r.err.find("timelines") != std::string::npos);

  cfg = minimal_config();
  cfg["classifier"] = {{"source", "external"}};
  r = run_with_config(dir, cfg);
  CHECK(r.status == 2);
  CHECK(r.err.find("external_scores") != std::string::npos);

  write_file_atomic(path, "{ not json");
  CHECK(run({"ingest", "--config", path.string()}).status == 2);
}

TEST_CASE("flags override the config") {
  const auto cfg = load_config(fixture_config("reddit"), {.seed = 99, .mode = corpus::Platform::twitter, .out = "/tmp/x"});
  CHECK(cfg.seeds.split == 99);
  CHECK(cfg.seeds.train == 99);
  CHECK(cfg.seeds.bootstrap == 99);
  CHECK(cfg.seeds.bias == 99);
  CHECK(cfg.hp.seed == 99);
  CHECK(cfg.platform == corpus::Platform::twitter);
  CHECK(cfg.out_dir == fs::path("/tmp/x"));

  const auto plain = load_config(fixture_config("reddit"));
  CHECK(plain.seeds.split == 13);
  CHECK(plain.platform == corpus::Platform::reddit);
  CHECK(plain.sentiment_mode == sentiment::SentimentMode::per_post);
  CHECK(plain.out_dir == testsupport::fixtures_dir() / "reddit" / "out");
  CHECK(load_config(fixture_config("twitter")).sentiment_mode == sentiment::SentimentMode::per_user_median);
}

TEST_CASE("classify writes one record per input post") {
  testsupport::TempDir dir("classify");
  const auto config = fixture_config("reddit");
  run_stages(config, dir.path(), {"ingest", "split", "train"});

  std::vector<corpus::Post> input;
  for (int i = 0; i < 7; ++i) {
    input.push_back(testsupport::make_post("in" + std::to_string(i),
                                           i % 2 ? "I have a migraine again. Ugh." : "Migraine study published today.",
                                           corpus::Platform::reddit, "someone", 1000 * i));
  }
  corpus::write_posts(dir / "input.jsonl", input);
  const auto r = run({"classify", "--config", config.string(), "--out", dir.path().string(), "--input",
                      (dir / "input.jsonl").string()});
  INFO(r.err);
  REQUIRE(r.status == 0);
  CHECK(line_count(dir / "classify/predictions.jsonl") == 7);

  // default input is the test split
  run_stages(config, dir.path(), {"classify"});
  CHECK(line_count(dir / "classify/predictions.jsonl") == line_count(dir / "split/test.jsonl"));
}

TEST_CASE("stages report missing upstream outputs") {
  testsupport::TempDir dir("missing");
  const auto config = fixture_config("reddit");
  const auto r = run({"train", "--config", config.string(), "--out", dir.path().string()});
  CHECK(r.status == 1);
  CHECK(r.err.find("split") != std::string::npos);

  const auto rep = run({"report", "--config", config.string(), "--out", dir.path().string(), "--sections", "sentiment"});
  CHECK(rep.status == 1);
  CHECK(rep.err.find("sentiment") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "report"));
}

TEST_CASE("report bundle sections, manifest and plots") {
  testsupport::TempDir dir("report");
  const auto config = fixture_config("reddit");
  run_stages(config, dir.path(), {"ingest", "split", "train", "classify", "evaluate"});

  auto r = run({"report", "--config", config.string(), "--out", dir.path().string(), "--sections", "metrics"});
  INFO(r.err);
  REQUIRE(r.status == 0);
  CHECK(names_in(dir / "report") == std::set<std::string>{"metrics.csv", "manifest.json"});

  const auto manifest = nlohmann::json::parse(slurp(dir / "report/manifest.json"));
  CHECK(manifest["sections"] == nlohmann::json::array({"metrics"}));
  CHECK(manifest["seeds"]["split"] == 13);
  std::set<std::string> inputs;
  for (const auto& in : manifest["inputs"]) {
    CHECK(in["sha256"].get<std::string>().size() == 64);
    inputs.insert(in["path"].get<std::string>());
  }
  CHECK(inputs.contains("raw_posts.jsonl"));
  CHECK(inputs.contains("annotations.csv"));
  CHECK(manifest["files"].size() == 1);
  CHECK(manifest["files"][0]["sha256"] == sha256_file(dir / "report/metrics.csv"));

  // Rerunning without changes reproduces the manifest exactly.
  const auto first = slurp(dir / "report/manifest.json");
  REQUIRE(run({"report", "--config", config.string(), "--out", dir.path().string(), "--sections", "metrics"}).status ==
          0);
  CHECK(slurp(dir / "report/manifest.json") == first);

  run_stages(config, dir.path(), {"cohort", "sentiment"});
  r = run({"report", "--config", config.string(), "--out", dir.path().string(), "--sections", "sentiment,confidence"});
  REQUIRE(r.status == 0);
  const auto names = names_in(dir / "report");
  CHECK(names.contains("group_stats.csv"));
  CHECK(names.contains("bootstrap_ci.csv"));
  CHECK(names.contains("density_all.svg"));
  CHECK_FALSE(names.contains("metrics.csv"));

  CHECK(slurp(dir / "report/group_stats.csv").rfind("group,frequency,mean,median,std\n", 0) == 0);
  CHECK(slurp(dir / "report/density.csv").rfind("group,x,density\n", 0) == 0);

  std::size_t svgs = 0;
  for (const auto& name : names) {
    if (!name.ends_with(".svg")) continue;
    ++svgs;
    const auto svg = slurp(dir / "report" / name);
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, std::regex(R"re(data-x-min="([-0-9.]+)" data-x-max="([-0-9.]+)")re")));
    CHECK(std::stod(m[1]) <= -1.0);
    CHECK(std::stod(m[2]) >= 1.0);
    CHECK(svg.find("<polyline") != std::string::npos);
  }
  CHECK(svgs >= 2);
}

TEST_CASE("svg helpers") {
  CHECK(slug("CGRP monoclonal antibodies") == "cgrp_monoclonal_antibodies");
  CHECK(slug("Beta Blockers") == "beta_blockers");
  const auto svg = render_line_plot({{"a", {-1, 0, 1}, {0, 1, 0}}}, "t");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("data-x-min=\"-1.2\"") != std::string::npos);
  CHECK(render_line_plot({{"a", {-1, 0, 1}, {0, 1, 0}}}, "t") == svg);
}

TEST_CASE("staged directories replace atomically and never leave partial output") {
  testsupport::TempDir dir("staged");
  const auto target = dir / "stage";
  {
    StagedDirectory s(target);
    s.write("a.txt", "one");
    s.commit();
  }
  CHECK(slurp(target / "a.txt") == "one");
  {
    StagedDirectory s(target);
    s.write("a.txt", "two");
    s.write("b.txt", "partial");
    // destroyed without commit, as if the stage crashed
  }
  CHECK(slurp(target / "a.txt") == "one");
  CHECK_FALSE(fs::exists(target / "b.txt"));
  CHECK(names_in(dir.path()) == std::set<std::string>{"stage"});
  {
    StagedDirectory s(target);
    s.write("b.txt", "new");
    s.commit();
  }
  CHECK(names_in(target) == std::set<std::string>{"b.txt"});
}

TEST_CASE("full pipeline twice gives identical bundles") {
  const auto config = fixture_config("twitter");
  const std::vector<std::string> stages{"ingest", "split",     "train", "classify", "evaluate",
                                        "cohort", "sentiment", "bias",  "report"};
  testsupport::TempDir a("det-a"), b("det-b");
  run_stages(config, a.path(), stages);
  run_stages(config, b.path(), stages);
  const auto names = names_in(a / "report");
  REQUIRE(names == names_in(b / "report"));
  for (const auto& n : names) {
    INFO(n);
    CHECK(slurp(a / "report" / n) == slurp(b / "report" / n));
  }
  CHECK(fs::exists(a / "events.jsonl"));
  CHECK_FALSE(names.contains("events.jsonl"));

  // A different seed changes the split and therefore the manifest.
  testsupport::TempDir c("det-c");
  for (const auto& s : stages) {
    REQUIRE(run({s, "--config", config.string(), "--out", c.path().string(), "--seed", "7"}).status == 0);
  }
  CHECK(slurp(c / "report/manifest.json") != slurp(a / "report/manifest.json"));
}

TEST_CASE("bias needs the native classifier") {
  testsupport::TempDir dir("ext");
  const auto config = fixture_config("reddit_groups");
  run_stages(config, dir.path(), {"ingest", "cohort", "sentiment", "report"});
  CHECK(run({"bias", "--config", config.string(), "--out", dir.path().string()}).status != 0);
  CHECK(names_in(dir / "report").contains("group_stats.csv"));
}
