#include <fmt/format.h>

#include <json.hpp>
#include <set>

#include "migraine/cli.hpp"

namespace migraine::cli {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(std::string_view field, std::string_view what) {
  throw ConfigError(fmt::format("config field '{}': {}", field, what));
}

// Walks one JSON object, remembering which keys were consumed so leftovers
// can be reported as unknown fields.
class Section {
 public:
  Section(const json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
    if (!j_.is_object()) fail(prefix_.empty() ? "<root>" : prefix_, "must be an object");
  }

  std::string field(std::string_view key) const {
    return prefix_.empty() ? std::string(key) : prefix_ + "." + std::string(key);
  }

  const json* get(std::string_view key) {
    seen_.insert(std::string(key));
    const auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::optional<std::string> string(std::string_view key) {
    const auto* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail(field(key), "must be a string");
    return v->get<std::string>();
  }

  std::optional<double> number(std::string_view key) {
    const auto* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) fail(field(key), "must be a number");
    return v->get<double>();
  }

  std::optional<std::int64_t> integer(std::string_view key) {
    const auto* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) fail(field(key), "must be an integer");
    return v->get<std::int64_t>();
  }

  std::optional<std::uint64_t> seed(std::string_view key) {
    const auto* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_number_unsigned()) fail(field(key), "must be a non-negative integer");
    return v->get<std::uint64_t>();
  }

  std::optional<bool> boolean(std::string_view key) {
    const auto* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) fail(field(key), "must be true or false");
    return v->get<bool>();
  }

  std::optional<std::vector<std::string>> strings(std::string_view key) {
    const auto* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_array()) fail(field(key), "must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : *v) {
      if (!e.is_string()) fail(field(key), "must be an array of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  std::optional<Section> object(std::string_view key) {
    const auto* v = get(key);
    if (!v) return std::nullopt;
    return Section(*v, field(key));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail(field(it.key()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string prefix_;
  std::set<std::string> seen_;
};

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return (path.is_absolute() ? path : base / path).lexically_normal();
}

fs::path required_file(Section& s, std::string_view key, const fs::path& base) {
  const auto v = s.string(key);
  if (!v) fail(s.field(key), "is required");
  auto p = resolve(base, *v);
  if (!fs::is_regular_file(p)) fail(s.field(key), fmt::format("file not found: {}", p.string()));
  return p;
}

std::optional<fs::path> optional_file(Section& s, std::string_view key, const fs::path& base) {
  const auto v = s.string(key);
  if (!v) return std::nullopt;
  auto p = resolve(base, *v);
  if (!fs::is_regular_file(p)) fail(s.field(key), fmt::format("file not found: {}", p.string()));
  return p;
}

}  // namespace

std::vector<fs::path> PipelineConfig::input_files() const {
  std::vector<fs::path> files{config_file, raw_posts};
  for (const auto* p : {&medications, &smileys, &abbreviations, &keyboard, &blocklist, &swap_tables}) {
    if (*p) files.push_back(**p);
  }
  files.push_back(sentiment_lexicon);
  for (const auto* p : {&emoji_lexicon, &annotations, &external_scores}) {
    if (*p) files.push_back(**p);
  }
  if (timelines) {
    std::vector<fs::path> tl;
    for (const auto& e : fs::directory_iterator(*timelines / "timelines")) {
      if (e.is_regular_file() && e.path().extension() == ".jsonl") tl.push_back(e.path());
    }
    std::sort(tl.begin(), tl.end());
    files.insert(files.end(), tl.begin(), tl.end());
  }
  return files;
}

PipelineConfig parse_config(std::string_view json_text, const fs::path& path, const Overrides& overrides) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}: not valid JSON: {}", path.string(), e.what()));
  }

  PipelineConfig cfg;
  cfg.config_file = fs::absolute(path).lexically_normal();
  cfg.base_dir = cfg.config_file.parent_path();
  Section top(root, "");

  if (const auto p = top.string("platform")) {
    const auto platform = corpus::parse_platform(*p);
    if (!platform) fail("platform", "must be \"twitter\" or \"reddit\"");
    cfg.platform = *platform;
  }
  if (overrides.mode) cfg.platform = *overrides.mode;

  const auto base_seed = top.seed("seed");
  if (!base_seed && !overrides.seed) fail("seed", "is required (runs never use ambient randomness)");
  const std::uint64_t seed = overrides.seed ? *overrides.seed : *base_seed;
  cfg.seeds = {seed, seed, seed, seed};

  const auto out = top.string("out");
  cfg.out_dir = overrides.out ? fs::absolute(*overrides.out).lexically_normal()
                              : resolve(cfg.base_dir, out ? *out : std::string("out"));

  auto paths = top.object("paths");
  if (!paths) fail("paths", "is required");
  cfg.raw_posts = required_file(*paths, "raw_posts", cfg.base_dir);
  if (const auto t = paths->string("timelines")) {
    cfg.timelines = resolve(cfg.base_dir, *t);
    if (!fs::is_directory(*cfg.timelines / "timelines")) {
      fail("paths.timelines", fmt::format("expected a directory containing timelines/: {}", cfg.timelines->string()));
    }
  }
  cfg.medications = optional_file(*paths, "medications", cfg.base_dir);
  cfg.smileys = optional_file(*paths, "smileys", cfg.base_dir);
  cfg.abbreviations = optional_file(*paths, "abbreviations", cfg.base_dir);
  cfg.keyboard = optional_file(*paths, "keyboard", cfg.base_dir);
  cfg.blocklist = optional_file(*paths, "blocklist", cfg.base_dir);
  cfg.swap_tables = optional_file(*paths, "swap_tables", cfg.base_dir);
  cfg.sentiment_lexicon = required_file(*paths, "sentiment_lexicon", cfg.base_dir);
  cfg.emoji_lexicon = optional_file(*paths, "emoji_lexicon", cfg.base_dir);
  cfg.annotations = optional_file(*paths, "annotations", cfg.base_dir);
  cfg.external_scores = optional_file(*paths, "external_scores", cfg.base_dir);
  paths->finish();

  if (auto lex = top.object("lexicon")) {
    if (const auto d = lex->integer("misspelling_depth")) {
      if (*d < 0 || *d > 2) fail("lexicon.misspelling_depth", "must be 0, 1 or 2");
      cfg.misspelling_depth = static_cast<int>(*d);
    }
    lex->finish();
  }

  if (auto ing = top.object("ingest")) {
    if (const auto b = ing->boolean("dedup_exact_text")) cfg.dedup_exact_text = *b;
    ing->finish();
  }

  if (auto sp = top.object("split")) {
    if (const auto v = sp->number("train")) cfg.split.train = *v;
    if (const auto v = sp->number("validation")) cfg.split.validation = *v;
    if (const auto v = sp->number("test")) cfg.split.test = *v;
    sp->finish();
    try {
      classify::split_sizes(100, cfg.split);
    } catch (const ArgumentError& e) {
      fail("split", e.what());
    }
  }

  if (auto cl = top.object("classifier")) {
    if (const auto s = cl->string("source")) {
      if (*s == "native") {
        cfg.classifier = ClassifierSource::native;
      } else if (*s == "external") {
        cfg.classifier = ClassifierSource::external;
      } else {
        fail("classifier.source", "must be \"native\" or \"external\"");
      }
    }
    if (auto hp = cl->object("hyperparams")) {
      auto set_int = [&](const char* key, int& dst) {
        if (const auto v = hp->integer(key)) dst = static_cast<int>(*v);
      };
      set_int("word_ngram_min", cfg.hp.word_ngram_min);
      set_int("word_ngram_max", cfg.hp.word_ngram_max);
      set_int("char_ngram_min", cfg.hp.char_ngram_min);
      set_int("char_ngram_max", cfg.hp.char_ngram_max);
      set_int("epochs", cfg.hp.epochs);
      if (const auto v = hp->integer("hash_dim")) {
        if (*v <= 0 || *v > (std::int64_t{1} << 30)) fail("classifier.hyperparams.hash_dim", "out of range");
        cfg.hp.hash_dim = static_cast<std::uint32_t>(*v);
      }
      if (const auto v = hp->number("learning_rate")) cfg.hp.learning_rate = *v;
      if (const auto v = hp->number("l2")) cfg.hp.l2 = *v;
      if (const auto v = hp->number("threshold")) cfg.hp.threshold = *v;
      if (const auto v = hp->boolean("normalize_features")) cfg.hp.normalize_features = *v;
      if (const auto v = hp->integer("long_post_tokens")) {
        if (*v < 0) fail("classifier.hyperparams.long_post_tokens", "must be >= 0");
        cfg.hp.long_post_tokens = static_cast<std::size_t>(*v);
      }
      hp->finish();
    }
    cl->finish();
  }
  try {
    cfg.hp.validate();
  } catch (const ValidationError& e) {
    fail("classifier", e.what());
  }
  if (cfg.classifier == ClassifierSource::external && !cfg.external_scores) {
    fail("paths.external_scores", "is required when classifier.source is \"external\"");
  }

  if (auto ev = top.object("evaluate")) {
    if (const auto v = ev->integer("bootstrap_resamples")) {
      if (*v < 1) fail("evaluate.bootstrap_resamples", "must be >= 1");
      cfg.bootstrap_resamples = static_cast<std::size_t>(*v);
    }
    if (const auto v = ev->number("level")) {
      if (!(*v > 0 && *v < 1)) fail("evaluate.level", "must be in (0, 1)");
      cfg.bootstrap_level = *v;
    }
    ev->finish();
  }

  // The per-user median path belongs to the Twitter cohort analysis; Reddit
  // posts are scored individually.
  cfg.sentiment_mode = cfg.platform == corpus::Platform::reddit ? sentiment::SentimentMode::per_post
                                                                : sentiment::SentimentMode::per_user_median;
  if (auto se = top.object("sentiment")) {
    if (const auto m = se->string("mode")) {
      const auto mode = sentiment::parse_sentiment_mode(*m);
      if (!mode) fail("sentiment.mode", "must be \"per_user_median\" or \"per_post\"");
      cfg.sentiment_mode = *mode;
    }
    se->finish();
  }
  if (cfg.sentiment_mode == sentiment::SentimentMode::per_user_median && !cfg.timelines) {
    fail("paths.timelines", "is required for sentiment.mode \"per_user_median\"");
  }

  if (auto bi = top.object("bias")) {
    if (auto cats = bi->strings("categories")) {
      for (const auto& c : *cats) {
        if (c != "gender" && c != "race") fail("bias.categories", fmt::format("unknown category '{}'", c));
      }
      cfg.bias_categories = std::move(*cats);
    }
    if (const auto v = bi->number("sample_fraction")) {
      if (!(*v > 0 && *v <= 1)) fail("bias.sample_fraction", "must be in (0, 1]");
      cfg.bias_sample_fraction = *v;
    }
    if (const auto v = bi->integer("occlusion_limit")) {
      if (*v < 0) fail("bias.occlusion_limit", "must be >= 0");
      cfg.occlusion_limit = static_cast<std::size_t>(*v);
    }
    bi->finish();
  }

  if (auto sd = top.object("seeds")) {
    const auto split = sd->seed("split");
    const auto train = sd->seed("train");
    const auto boot = sd->seed("bootstrap");
    const auto bias = sd->seed("bias");
    sd->finish();
    // --seed replaces every stage seed; otherwise explicit stage seeds win.
    if (!overrides.seed) {
      if (split) cfg.seeds.split = *split;
      if (train) cfg.seeds.train = *train;
      if (boot) cfg.seeds.bootstrap = *boot;
      if (bias) cfg.seeds.bias = *bias;
    }
  }
  cfg.hp.seed = cfg.seeds.train;

  cfg.report_sections = all_report_sections();
  if (auto rp = top.object("report")) {
    if (auto secs = rp->strings("sections")) {
      for (const auto& s : *secs) {
        if (std::find(all_report_sections().begin(), all_report_sections().end(), s) == all_report_sections().end()) {
          fail("report.sections", fmt::format("unknown section '{}'", s));
        }
      }
      cfg.report_sections = std::move(*secs);
    }
    rp->finish();
  }

  top.finish();
  return cfg;
}

PipelineConfig load_config(const fs::path& path, const Overrides& overrides) {
  if (!fs::is_regular_file(path)) throw ConfigError(fmt::format("config file not found: {}", path.string()));
  return parse_config(read_file(path), path, overrides);
}

}  // namespace migraine::cli
