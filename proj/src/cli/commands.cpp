#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <set>

#include "migraine/bias.hpp"
#include "migraine/cli.hpp"
#include "migraine/evaluate.hpp"
#include "migraine/lexicon.hpp"
#include "migraine/log.hpp"
#include "migraine/post_source.hpp"

namespace migraine::cli {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

fs::path ingest_posts(const PipelineConfig& c) { return c.out_dir / "ingest" / "posts.jsonl"; }
fs::path split_file(const PipelineConfig& c, const char* part) { return c.out_dir / "split" / (std::string(part) + ".jsonl"); }
fs::path model_file(const PipelineConfig& c) { return c.out_dir / "model" / "model.json"; }
fs::path predictions_file(const PipelineConfig& c) { return c.out_dir / "classify" / "predictions.jsonl"; }
fs::path stage_dir(const PipelineConfig& c, const char* stage) { return c.out_dir / stage; }

void require(const fs::path& p, const char* stage) {
  if (!fs::exists(p)) {
    throw Error(fmt::format("missing output of stage '{}': {} (run `{}` first)", stage, p.string(), stage));
  }
}

void append_event(const PipelineConfig& cfg, std::string_view stage, std::string_view status, std::string_view detail) {
  fs::create_directories(cfg.out_dir);
  ojson j;
  const auto now = std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::now());
  j["time"] = corpus::Timestamp{now.time_since_epoch().count()}.to_iso();
  j["stage"] = stage;
  j["status"] = status;
  j["detail"] = detail;
  std::ofstream out(cfg.out_dir / "events.jsonl", std::ios::app | std::ios::binary);
  out << j.dump() << '\n';
}

text::SmileyTable smileys(const PipelineConfig& c) {
  return c.smileys ? text::SmileyTable::load(*c.smileys) : text::SmileyTable::defaults();
}

text::AbbreviationList abbreviations(const PipelineConfig& c) {
  return c.abbreviations ? text::AbbreviationList::load(*c.abbreviations) : text::AbbreviationList::defaults();
}

lexicon::MedicationLexicon medication_lexicon(const PipelineConfig& c) {
  const auto config = c.medications ? lexicon::MedicationConfig::load(*c.medications) : lexicon::MedicationConfig::defaults();
  auto filters = c.blocklist ? lexicon::MisspellingFilters::load_blocklist(*c.blocklist)
                             : lexicon::MisspellingFilters::defaults();
  const auto keyboard = c.keyboard ? lexicon::KeyboardLayout::load(*c.keyboard) : lexicon::KeyboardLayout::qwerty();
  return lexicon::MedicationLexicon::build(config, c.misspelling_depth, filters, keyboard);
}

bias::SwapTable swap_table(const PipelineConfig& c, const std::string& category) {
  if (c.swap_tables) {
    auto tables = bias::load_swap_tables(*c.swap_tables);
    const auto it = tables.find(category);
    if (it == tables.end()) {
      throw ConfigError(fmt::format("{}: no '{}' pairs", c.swap_tables->string(), category));
    }
    return it->second;
  }
  return bias::SwapTable::defaults(category);
}

std::string csv_row(std::initializer_list<std::string> fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out += ',';
    out += csv_escape(f);
    first = false;
  }
  out += '\n';
  return out;
}

std::string num(double v) { return format_fixed(v, 6); }

// --- predictions ------------------------------------------------------------

struct PredictionRecord {
  corpus::Post post;
  classify::Prediction prediction;
};

std::string serialize_prediction(const corpus::Post& post, const classify::Prediction& p) {
  ojson j;
  j["platform"] = corpus::to_string(post.platform);
  j["id"] = post.id;
  j["author_id"] = post.author_id;
  j["created_at"] = post.created_at.to_iso();
  j["label"] = p.label == Label::positive ? "Y" : "N";
  j["score"] = p.score;
  if (post.label) j["gold"] = *post.label == Label::positive ? "Y" : "N";
  if (!p.per_sentence.empty()) {
    auto arr = ojson::array();
    for (const auto& [sentence, score] : p.per_sentence) arr.push_back({{"text", sentence}, {"score", score}});
    j["sentences"] = std::move(arr);
  }
  j["text"] = post.text;
  return j.dump();
}

std::vector<PredictionRecord> read_predictions(const fs::path& path) {
  std::vector<PredictionRecord> out;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const auto j = json::parse(line);
      PredictionRecord r;
      const auto platform = corpus::parse_platform(j.at("platform").get<std::string>());
      if (!platform) throw ValidationError("unknown platform");
      r.post.platform = *platform;
      r.post.id = j.at("id").get<std::string>();
      r.post.author_id = j.at("author_id").get<std::string>();
      const auto ts = corpus::Timestamp::parse(j.at("created_at").get<std::string>());
      if (!ts) throw ValidationError("bad created_at");
      r.post.created_at = *ts;
      r.post.text = j.at("text").get<std::string>();
      if (j.contains("gold")) r.post.label = j["gold"] == "Y" ? Label::positive : Label::negative;
      r.prediction.label = j.at("label") == "Y" ? Label::positive : Label::negative;
      r.prediction.score = j.at("score").get<double>();
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ValidationError(fmt::format("{}:{}: bad prediction record: {}", path.string(), line_no, e.what()));
    }
  }
  return out;
}

std::vector<classify::Prediction> classify_all(const PipelineConfig& cfg, std::span<const corpus::Post> posts) {
  if (cfg.classifier == ClassifierSource::external) {
    return classify::ingest_external_scores(*cfg.external_scores, posts, cfg.hp.threshold);
  }
  require(model_file(cfg), "train");
  const auto model = classify::load_model(model_file(cfg));
  const auto sm = smileys(cfg);
  const auto ab = abbreviations(cfg);
  std::vector<classify::Prediction> out;
  out.reserve(posts.size());
  for (const auto& p : posts) out.push_back(classify::classify_post(model, p, sm, ab));
  return out;
}

std::vector<corpus::Post> labeled_only(std::vector<corpus::Post> posts) {
  std::erase_if(posts, [](const corpus::Post& p) { return !p.label; });
  return posts;
}

// --- annotations ------------------------------------------------------------

// Wide CSV: "id,<annotator>,<annotator>,..." with Y/N cells.
std::vector<eval::Annotator> read_annotations(const fs::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw ValidationError(fmt::format("{}: empty annotation file", path.string()));
  const auto header = parse_csv_line(lines[0]);
  if (header.size() < 3 || trim(header[0]) != "id") {
    throw ValidationError(fmt::format("{}: header must be id,<annotator>,<annotator>[,...]", path.string()));
  }
  std::vector<eval::Annotator> annotators;
  for (std::size_t k = 1; k < header.size(); ++k) annotators.push_back({std::string(trim(header[k])), {}});
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto cells = parse_csv_line(lines[i]);
    if (cells.size() != header.size()) {
      throw ValidationError(fmt::format("{}:{}: expected {} columns", path.string(), i + 1, header.size()));
    }
    for (std::size_t k = 1; k < cells.size(); ++k) {
      const auto v = trim(cells[k]);
      if (v != "Y" && v != "N") throw ValidationError(fmt::format("{}:{}: label must be Y or N", path.string(), i + 1));
      annotators[k - 1].labels.push_back(v == "Y" ? Label::positive : Label::negative);
    }
  }
  return annotators;
}

}  // namespace

// --- staging -----------------------------------------------------------------

StagedDirectory::StagedDirectory(fs::path final_dir) : final_(std::move(final_dir)) {
  staging_ = final_.parent_path() / ("." + final_.filename().string() + ".staging");
  fs::remove_all(staging_);
  fs::create_directories(staging_);
}

StagedDirectory::~StagedDirectory() {
  if (!committed_) {
    std::error_code ec;
    fs::remove_all(staging_, ec);
  }
}

void StagedDirectory::write(const std::string& name, std::string_view contents) {
  write_file_atomic(staging_ / name, contents);
}

void StagedDirectory::commit() {
  const auto old = final_.parent_path() / ("." + final_.filename().string() + ".old");
  fs::remove_all(old);
  if (fs::exists(final_)) fs::rename(final_, old);
  fs::rename(staging_, final_);
  fs::remove_all(old);
  committed_ = true;
}

// --- stages -------------------------------------------------------------------

void stage_ingest(const PipelineConfig& cfg) {
  const auto raw = corpus::read_posts(cfg.raw_posts);
  const auto lex = medication_lexicon(cfg);
  std::vector<corpus::Post> kept;
  for (const auto& p : raw) {
    if (corpus::keyword_filter(p, lex)) kept.push_back(p);
  }
  const auto filtered = kept.size();
  kept = corpus::dedup_stream(kept, {cfg.dedup_exact_text});
  StagedDirectory dir(stage_dir(cfg, "ingest"));
  dir.write("posts.jsonl", corpus::serialize_posts(kept));
  dir.commit();
  log::info(fmt::format("ingest: read {}, keyword-matched {}, kept {} after dedup", raw.size(), filtered, kept.size()));
}

void stage_split(const PipelineConfig& cfg) {
  require(ingest_posts(cfg), "ingest");
  const auto labeled = labeled_only(corpus::read_posts(ingest_posts(cfg)));
  const auto split = classify::split_dataset(labeled, cfg.split, cfg.seeds.split);
  StagedDirectory dir(stage_dir(cfg, "split"));
  dir.write("train.jsonl", corpus::serialize_posts(split.train));
  dir.write("validation.jsonl", corpus::serialize_posts(split.validation));
  dir.write("test.jsonl", corpus::serialize_posts(split.test));
  dir.commit();
  log::info(fmt::format("split: {} train / {} validation / {} test", split.train.size(), split.validation.size(),
                        split.test.size()));
}

void stage_train(const PipelineConfig& cfg) {
  if (cfg.classifier == ClassifierSource::external) {
    log::info("train: classifier.source is external; nothing to train");
    return;
  }
  require(split_file(cfg, "train"), "split");
  classify::DatasetSplit split;
  split.train = corpus::read_posts(split_file(cfg, "train"));
  split.validation = corpus::read_posts(split_file(cfg, "validation"));
  split.test = corpus::read_posts(split_file(cfg, "test"));
  const auto model = classify::train(split, cfg.hp, smileys(cfg));
  StagedDirectory dir(stage_dir(cfg, "model"));
  dir.write("model.json", classify::serialize_model(model));
  dir.commit();
  const auto& sel = model.metadata.epochs.at(static_cast<std::size_t>(model.metadata.selected_epoch - 1));
  log::info(fmt::format("train: selected epoch {} (validation F1 {})", sel.epoch, num(sel.validation_f1)));
}

void stage_classify(const PipelineConfig& cfg, const std::optional<fs::path>& input) {
  const auto in = input ? *input : split_file(cfg, "test");
  if (!input) require(in, "split");
  if (!fs::exists(in)) throw Error(fmt::format("classify input not found: {}", in.string()));
  const auto posts = corpus::read_posts(in);
  const auto preds = classify_all(cfg, posts);
  std::string body;
  for (std::size_t i = 0; i < posts.size(); ++i) body += serialize_prediction(posts[i], preds[i]) + "\n";
  StagedDirectory dir(stage_dir(cfg, "classify"));
  dir.write("predictions.jsonl", body);
  dir.commit();
  log::info(fmt::format("classify: {} predictions", posts.size()));
}

void stage_evaluate(const PipelineConfig& cfg) {
  require(predictions_file(cfg), "classify");
  const auto records = read_predictions(predictions_file(cfg));
  std::vector<corpus::Post> posts;
  std::vector<classify::Prediction> preds;
  std::vector<Label> gold;
  for (const auto& r : records) {
    if (!r.post.label) {
      throw ValidationError(fmt::format("evaluate: prediction for {} has no gold label", r.post.id));
    }
    posts.push_back(r.post);
    preds.push_back(r.prediction);
    gold.push_back(*r.post.label);
  }
  const auto m = eval::compute_metrics(preds, gold);
  std::vector<Label> predicted;
  for (const auto& p : preds) predicted.push_back(p.label);
  const auto ci = eval::bootstrap_f1_ci(predicted, gold, cfg.bootstrap_resamples, cfg.bootstrap_level,
                                        cfg.seeds.bootstrap);

  StagedDirectory dir(stage_dir(cfg, "evaluate"));
  std::string metrics = "n,tp,fp,fn,tn,precision,recall,f1,precision_defined,recall_defined,f1_defined\n";
  metrics += csv_row({std::to_string(gold.size()), std::to_string(m.tp), std::to_string(m.fp), std::to_string(m.fn),
                      std::to_string(m.tn), num(m.precision), num(m.recall), num(m.f1),
                      m.precision_defined ? "true" : "false", m.recall_defined ? "true" : "false",
                      m.f1_defined ? "true" : "false"});
  dir.write("metrics.csv", metrics);

  std::string cis = "metric,point,lo,hi,level,resamples,seed\n";
  cis += csv_row({"f1", num(ci.point), num(ci.lo), num(ci.hi), num(ci.level), std::to_string(ci.resamples),
                  std::to_string(ci.seed)});
  dir.write("bootstrap_ci.csv", cis);

  std::string errors;
  for (const auto& e : eval::list_errors(preds, gold, posts)) errors += eval::serialize_error_case(e) + "\n";
  dir.write("errors.jsonl", errors);

  if (cfg.annotations) {
    const auto annotators = read_annotations(*cfg.annotations);
    const auto agreement = eval::mean_pairwise_kappa(annotators);
    std::string csv = "annotator_a,annotator_b,kappa,observed,expected\n";
    for (const auto& r : agreement.pairs) {
      csv += csv_row({r.annotator_a, r.annotator_b, num(r.kappa), num(r.observed), num(r.expected)});
    }
    csv += csv_row({"mean", "", num(agreement.mean_kappa), "", ""});
    dir.write("agreement.csv", csv);
  }
  dir.commit();
  log::info(fmt::format("evaluate: P={} R={} F1={} CI=[{}, {}]", num(m.precision), num(m.recall), num(m.f1),
                        num(ci.lo), num(ci.hi)));
}

void stage_cohort(const PipelineConfig& cfg) {
  require(ingest_posts(cfg), "ingest");
  const auto posts = corpus::read_posts(ingest_posts(cfg));
  const auto preds = classify_all(cfg, posts);
  std::vector<corpus::Post> positives;
  std::set<std::string> users;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (preds[i].label != Label::positive) continue;
    positives.push_back(posts[i]);
    users.insert(posts[i].author_id);
  }

  StagedDirectory dir(stage_dir(cfg, "cohort"));
  dir.write("positive_posts.jsonl", corpus::serialize_posts(positives));
  std::string users_csv = "author_id,status,timeline_posts\n";
  std::vector<corpus::Post> timelines;
  if (cfg.timelines) {
    corpus::FixtureDirectorySource fixture(*cfg.timelines);
    corpus::RetryingSource source(fixture, corpus::RetryPolicy{});
    for (const auto& u : users) {
      std::vector<corpus::Post> tl;
      std::string status = "complete";
      try {
        tl = corpus::build_cohort_timeline(u, source);
      } catch (const corpus::PartialTimelineError& e) {
        log::warn(e.what());
        tl = e.retrieved();
        status = "partial";
      }
      users_csv += csv_row({u, status, std::to_string(tl.size())});
      timelines.insert(timelines.end(), tl.begin(), tl.end());
    }
    dir.write("timelines.jsonl", corpus::serialize_posts(timelines));
  } else {
    for (const auto& u : users) users_csv += csv_row({u, "not_collected", "0"});
  }
  dir.write("users.csv", users_csv);
  dir.commit();
  log::info(fmt::format("cohort: {} positive posts from {} users; {} timeline posts", positives.size(), users.size(),
                        timelines.size()));
}

void stage_sentiment(const PipelineConfig& cfg) {
  const bool per_user = cfg.sentiment_mode == sentiment::SentimentMode::per_user_median;
  const auto input = stage_dir(cfg, "cohort") / (per_user ? "timelines.jsonl" : "positive_posts.jsonl");
  require(input, "cohort");
  const auto posts = corpus::read_posts(input);
  const auto meds = medication_lexicon(cfg);
  const auto lex = sentiment::SentimentLexicon::load(cfg.sentiment_lexicon, cfg.emoji_lexicon);
  const auto entries = sentiment::build_group_entries(posts, cfg.sentiment_mode, meds, lex);
  const auto stats = sentiment::aggregate_group_stats(entries, meds);

  StagedDirectory dir(stage_dir(cfg, "sentiment"));
  std::string entries_csv = "group,author_id,post_id,score\n";
  for (const auto& e : entries) {
    entries_csv += csv_row({meds.group_name(e.group), e.author_id, e.post_id, num(e.score)});
  }
  dir.write("entries.csv", entries_csv);

  std::string stats_csv = "group,frequency,mean,median,std\n";
  for (const auto& s : stats) {
    stats_csv += csv_row({s.group, std::to_string(s.frequency), num(s.mean), num(s.median), num(s.std)});
  }
  dir.write("group_stats.csv", stats_csv);

  std::map<lexicon::GroupId, std::vector<double>> scores;
  for (const auto& e : entries) scores[e.group].push_back(e.score);
  std::string density_csv = "group,x,density\n";
  std::vector<SvgSeries> all;
  for (const auto& [g, xs] : scores) {
    const auto curve = sentiment::estimate_density(xs);
    const auto& name = meds.group_name(g);
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
      density_csv += csv_row({name, num(curve.grid[i]), num(curve.density[i])});
    }
    SvgSeries s{fmt::format("{} (n={})", name, xs.size()), curve.grid, curve.density};
    dir.write(fmt::format("density_{}.svg", slug(name)), render_line_plot({s}, name + " sentiment density"));
    all.push_back(std::move(s));
  }
  dir.write("density.csv", density_csv);
  dir.write("density_all.svg", render_line_plot(all, "Sentiment density by medication group"));
  dir.commit();
  log::info(fmt::format("sentiment ({}): {} entries over {} groups", sentiment::to_string(cfg.sentiment_mode),
                        entries.size(), stats.size()));
}

void stage_bias(const PipelineConfig& cfg) {
  if (cfg.classifier != ClassifierSource::native) {
    throw Error("bias probing needs the native model; externally scored runs cannot be re-scored on swapped text");
  }
  require(split_file(cfg, "test"), "split");
  require(model_file(cfg), "train");
  const auto posts = corpus::read_posts(split_file(cfg, "test"));
  const auto model = classify::load_model(model_file(cfg));
  const auto sm = smileys(cfg);
  const auto ab = abbreviations(cfg);
  const bias::PostClassifier classifier = [&](const corpus::Post& p) {
    return classify::classify_post(model, p, sm, ab);
  };

  StagedDirectory dir(stage_dir(cfg, "bias"));
  std::string summary = "category,n_examined,n_with_swaps,n_flipped,flip_rate\n";
  std::string records;
  std::string occlusion;
  std::size_t occluded = 0;
  for (const auto& category : cfg.bias_categories) {
    const auto table = swap_table(cfg, category);
    const auto report = bias::probe_invariance(classifier, posts, table, {cfg.bias_sample_fraction, cfg.seeds.bias});
    summary += csv_row({category, std::to_string(report.n_examined), std::to_string(report.n_with_swaps),
                        std::to_string(report.n_flipped), num(report.flip_rate)});
    for (const auto& r : report.records) {
      records += bias::serialize_probe_record(r) + "\n";
      if (occluded >= cfg.occlusion_limit) continue;
      ++occluded;
      corpus::Post probe;
      probe.platform = r.key.platform;
      const auto score = [&](std::string_view text) {
        probe.text = std::string(text);
        return classifier(probe).score;
      };
      ojson j;
      j["category"] = category;
      j["platform"] = corpus::to_string(r.key.platform);
      j["id"] = r.key.id;
      auto toks = ojson::array();
      for (const auto& t : bias::occlusion_importance(score, r.original_text)) {
        toks.push_back({{"position", t.position}, {"token", t.token}, {"delta", t.delta}});
      }
      j["tokens"] = std::move(toks);
      occlusion += j.dump() + "\n";
    }
    log::info(fmt::format("bias ({}): {} of {} swapped posts flipped", category, report.n_flipped, report.n_with_swaps));
  }
  dir.write("summary.csv", summary);
  dir.write("records.jsonl", records);
  dir.write("occlusion.jsonl", occlusion);
  dir.commit();
}

// --- command line --------------------------------------------------------------

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Migraine self-report detection and medication sentiment pipeline", "migraine-tool"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kToolVersion);

  std::string config_path;
  std::uint64_t seed = 0;
  std::string mode;
  std::string out_dir;
  std::string input;
  std::vector<std::string> sections;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ingest", "keyword-filter and deduplicate raw posts"},
      {"split", "stratified train/validation/test split"},
      {"train", "train the self-report classifier"},
      {"classify", "write predictions JSONL for the test split (or --input)"},
      {"evaluate", "metrics, bootstrap CI, agreement and error listing"},
      {"cohort", "collect timelines of users with positive posts"},
      {"sentiment", "medication-group sentiment statistics and densities"},
      {"bias", "gender/race swap probe and occlusion importance"},
      {"report", "assemble the report bundle"},
  };
  for (const auto& [name, desc] : commands) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "pipeline config (JSON)")->required();
    sub->add_option("--seed", seed, "replace every stage seed");
    sub->add_option("--mode", mode, "platform mode")->check(CLI::IsMember({"twitter", "reddit"}));
    sub->add_option("--out", out_dir, "output directory");
    if (name == "classify") sub->add_option("--input", input, "posts JSONL to classify");
    if (name == "report") {
      sub->add_option("--sections", sections,
                      "comma-separated subset of metrics,confidence,agreement,errors,bias,sentiment")
          ->delimiter(',');
    }
  }

  if (!argv.empty() && !argv.front().empty() && argv.front().front() != '-' &&
      std::none_of(commands.begin(), commands.end(), [&](const auto& c) { return c.first == argv.front(); })) {
    err << "error: unknown subcommand '" << argv.front() << "'\n\n" << app.help();
    return 2;
  }
  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const auto* sub = app.get_subcommands().front();
  const auto name = sub->get_name();
  PipelineConfig cfg;
  try {
    Overrides ov;
    if (sub->count("--seed") > 0) ov.seed = seed;
    if (!mode.empty()) ov.mode = corpus::parse_platform(mode);
    if (!out_dir.empty()) ov.out = out_dir;
    cfg = load_config(config_path, ov);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (name == "ingest") {
      stage_ingest(cfg);
    } else if (name == "split") {
      stage_split(cfg);
    } else if (name == "train") {
      stage_train(cfg);
    } else if (name == "classify") {
      stage_classify(cfg, input.empty() ? std::nullopt : std::optional<fs::path>(input));
    } else if (name == "evaluate") {
      stage_evaluate(cfg);
    } else if (name == "cohort") {
      stage_cohort(cfg);
    } else if (name == "sentiment") {
      stage_sentiment(cfg);
    } else if (name == "bias") {
      stage_bias(cfg);
    } else {
      const auto dir = emit_report(cfg, sections);
      out << dir.string() << "\n";
    }
    append_event(cfg, name, "ok", "");
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << name << ": " << e.what() << "\n";
    try {
      append_event(cfg, name, "error", e.what());
    } catch (const std::exception&) {
    }
    return (dynamic_cast<const ConfigError*>(&e) != nullptr) ? 2 : 1;
  }
}

}  // namespace migraine::cli
