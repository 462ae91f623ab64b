#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "migraine/classify.hpp"
#include "migraine/corpus.hpp"
#include "migraine/sentiment.hpp"

namespace migraine::cli {

namespace fs = std::filesystem;

enum class ClassifierSource { native, external };

struct Seeds {
  std::uint64_t split = 0;
  std::uint64_t train = 0;
  std::uint64_t bootstrap = 0;
  std::uint64_t bias = 0;
};

/// Everything a pipeline run depends on. Paths are absolute after loading
/// (relative entries are resolved against the config file's directory).
struct PipelineConfig {
  fs::path config_file;
  fs::path base_dir;
  fs::path out_dir;
  corpus::Platform platform = corpus::Platform::twitter;

  // inputs
  fs::path raw_posts;
  std::optional<fs::path> timelines;
  std::optional<fs::path> medications;
  std::optional<fs::path> smileys;
  std::optional<fs::path> abbreviations;
  std::optional<fs::path> keyboard;
  std::optional<fs::path> blocklist;
  std::optional<fs::path> swap_tables;
  fs::path sentiment_lexicon;
  std::optional<fs::path> emoji_lexicon;
  std::optional<fs::path> annotations;
  std::optional<fs::path> external_scores;

  int misspelling_depth = 1;
  bool dedup_exact_text = false;
  classify::SplitRatios split;
  ClassifierSource classifier = ClassifierSource::native;
  classify::Hyperparams hp;
  std::size_t bootstrap_resamples = 1000;
  double bootstrap_level = 0.95;
  sentiment::SentimentMode sentiment_mode = sentiment::SentimentMode::per_user_median;
  std::vector<std::string> bias_categories{"gender", "race"};
  double bias_sample_fraction = 1.0;
  std::size_t occlusion_limit = 20;
  Seeds seeds;
  std::vector<std::string> report_sections;

  /// Every input file, in a fixed order, for the manifest.
  std::vector<fs::path> input_files() const;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<corpus::Platform> mode;
  std::optional<fs::path> out;
};

/// Parses and validates the JSON config. Unknown keys, missing inputs and
/// out-of-range values raise ConfigError naming the field.
PipelineConfig load_config(const fs::path& path, const Overrides& overrides = {});
PipelineConfig parse_config(std::string_view json_text, const fs::path& path, const Overrides& overrides = {});

inline const std::vector<std::string>& all_report_sections() {
  static const std::vector<std::string> s{"metrics", "confidence", "agreement", "errors", "bias", "sentiment"};
  return s;
}

/// Runs one subcommand; argv excludes the program name. Returns the process
/// exit status (0 success, 1 runtime failure, 2 usage or config error).
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

// Stages; each reads its inputs from and writes its outputs under out_dir.
void stage_ingest(const PipelineConfig& cfg);
void stage_split(const PipelineConfig& cfg);
void stage_train(const PipelineConfig& cfg);
void stage_classify(const PipelineConfig& cfg, const std::optional<fs::path>& input);
void stage_evaluate(const PipelineConfig& cfg);
void stage_cohort(const PipelineConfig& cfg);
void stage_sentiment(const PipelineConfig& cfg);
void stage_bias(const PipelineConfig& cfg);

/// Assembles the report bundle under out_dir/report. Sections are taken from
/// `sections` (or the config when empty). Written to a staging directory and
/// renamed into place only when complete.
fs::path emit_report(const PipelineConfig& cfg, const std::vector<std::string>& sections = {});

/// Removes a stale staging directory from an interrupted run, writes every
/// file of a stage into a fresh staging directory, then swaps it into place.
class StagedDirectory {
 public:
  explicit StagedDirectory(fs::path final_dir);
  ~StagedDirectory();
  StagedDirectory(const StagedDirectory&) = delete;
  StagedDirectory& operator=(const StagedDirectory&) = delete;

  const fs::path& path() const { return staging_; }
  void write(const std::string& name, std::string_view contents);
  void commit();

 private:
  fs::path final_;
  fs::path staging_;
  bool committed_ = false;
};

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal line plot: axes with ticks, one polyline per series, a legend.
/// The x axis spans [x_min, x_max], which must cover [-1, 1] for scores.
std::string render_line_plot(const std::vector<SvgSeries>& series, const std::string& title, double x_min = -1.2,
                             double x_max = 1.2);

/// Lowercase ASCII letters/digits with '_' for anything else.
std::string slug(std::string_view name);

}  // namespace migraine::cli
