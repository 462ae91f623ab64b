#include <fmt/format.h>

#include <algorithm>
#include <json.hpp>

#include "migraine/cli.hpp"
#include "migraine/log.hpp"

namespace migraine::cli {

namespace {

struct Artifact {
  const char* stage;  // producing subcommand, for error messages
  fs::path source;
  std::string name;   // file name inside the bundle
};

std::vector<Artifact> artifacts_for(const PipelineConfig& cfg, const std::string& section) {
  const auto& o = cfg.out_dir;
  if (section == "metrics") return {{"evaluate", o / "evaluate" / "metrics.csv", "metrics.csv"}};
  if (section == "confidence") return {{"evaluate", o / "evaluate" / "bootstrap_ci.csv", "bootstrap_ci.csv"}};
  if (section == "agreement") return {{"evaluate", o / "evaluate" / "agreement.csv", "agreement.csv"}};
  if (section == "errors") return {{"evaluate", o / "evaluate" / "errors.jsonl", "errors.jsonl"}};
  if (section == "bias") {
    return {{"bias", o / "bias" / "summary.csv", "bias_summary.csv"},
            {"bias", o / "bias" / "records.jsonl", "bias_records.jsonl"},
            {"bias", o / "bias" / "occlusion.jsonl", "occlusion.jsonl"}};
  }
  if (section == "sentiment") {
    std::vector<Artifact> a{{"sentiment", o / "sentiment" / "group_stats.csv", "group_stats.csv"},
                            {"sentiment", o / "sentiment" / "entries.csv", "sentiment_entries.csv"},
                            {"sentiment", o / "sentiment" / "density.csv", "density.csv"}};
    if (fs::is_directory(o / "sentiment")) {
      std::vector<fs::path> svgs;
      for (const auto& e : fs::directory_iterator(o / "sentiment")) {
        if (e.path().extension() == ".svg") svgs.push_back(e.path());
      }
      std::sort(svgs.begin(), svgs.end());
      for (const auto& s : svgs) a.push_back({"sentiment", s, s.filename().string()});
    }
    return a;
  }
  throw ArgumentError(fmt::format("unknown report section '{}'", section));
}

std::string relative_to(const fs::path& p, const fs::path& base) {
  const auto rel = p.lexically_relative(base);
  return (rel.empty() ? p : rel).generic_string();
}

}  // namespace

fs::path emit_report(const PipelineConfig& cfg, const std::vector<std::string>& requested) {
  std::vector<std::string> sections;
  if (requested.empty()) {
    // Sections whose inputs are not configured are skipped only when the
    // caller did not ask for them explicitly.
    for (const auto& s : cfg.report_sections) {
      if (s == "agreement" && !cfg.annotations) continue;
      if (s == "bias" && cfg.classifier != ClassifierSource::native) continue;
      sections.push_back(s);
    }
  } else {
    for (const auto& s : requested) {
      if (std::find(all_report_sections().begin(), all_report_sections().end(), s) == all_report_sections().end()) {
        throw ArgumentError(fmt::format("unknown report section '{}'", s));
      }
      if (std::find(sections.begin(), sections.end(), s) == sections.end()) sections.push_back(s);
    }
  }

  std::vector<Artifact> artifacts;
  for (const auto& s : sections) {
    for (auto& a : artifacts_for(cfg, s)) {
      if (!fs::is_regular_file(a.source)) {
        throw Error(fmt::format("report section '{}' needs {} from stage '{}' (run `{}` first)", s,
                                a.source.string(), a.stage, a.stage));
      }
      artifacts.push_back(std::move(a));
    }
  }

  const auto final_dir = cfg.out_dir / "report";
  StagedDirectory dir(final_dir);
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  std::string digest_input;
  for (const auto& a : artifacts) {
    const auto contents = read_file(a.source);
    dir.write(a.name, contents);
    const auto sha = sha256_hex(contents);
    files.push_back({{"name", a.name}, {"sha256", sha}});
    digest_input += a.name + " " + sha + "\n";
  }

  nlohmann::ordered_json m;
  m["tool"] = "migraine-tool";
  m["version"] = "0.1.0";
  m["platform"] = corpus::to_string(cfg.platform);
  m["classifier"] = cfg.classifier == ClassifierSource::native ? "native" : "external";
  m["sentiment_mode"] = sentiment::to_string(cfg.sentiment_mode);
  m["misspelling_depth"] = cfg.misspelling_depth;
  m["seeds"] = {{"split", cfg.seeds.split},
                {"train", cfg.seeds.train},
                {"bootstrap", cfg.seeds.bootstrap},
                {"bias", cfg.seeds.bias}};
  m["split"] = {{"train", cfg.split.train}, {"validation", cfg.split.validation}, {"test", cfg.split.test}};
  m["hyperparams"] = nlohmann::ordered_json::parse(
      nlohmann::json::parse(classify::serialize_model({cfg.hp, {}, 0.0, {}}))["hyperparams"].dump());
  m["bootstrap"] = {{"resamples", cfg.bootstrap_resamples}, {"level", cfg.bootstrap_level}};
  m["sections"] = sections;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
  for (const auto& p : cfg.input_files()) {
    inputs.push_back({{"path", relative_to(p, cfg.base_dir)}, {"sha256", sha256_file(p)}});
  }
  m["inputs"] = std::move(inputs);
  m["files"] = std::move(files);
  m["bundle_sha256"] = sha256_hex(digest_input);
  dir.write("manifest.json", m.dump(2) + "\n");
  dir.commit();
  log::info(fmt::format("report: {} files in {}", artifacts.size() + 1, final_dir.string()));
  return final_dir;
}

}  // namespace migraine::cli
