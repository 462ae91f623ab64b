#include "migraine/classify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numeric>

#include "migraine/evaluate.hpp"

namespace migraine::classify {

using json = nlohmann::json;

void Hyperparams::validate() const {
  if (word_ngram_min < 1 || word_ngram_max < word_ngram_min) {
    throw ValidationError("hyperparams.word_ngram: need 1 <= min <= max");
  }
  if (char_ngram_max > 0 && (char_ngram_min < 1 || char_ngram_max < char_ngram_min)) {
    throw ValidationError("hyperparams.char_ngram: need 1 <= min <= max (or max = 0 to disable)");
  }
  if (hash_dim == 0 || (hash_dim & (hash_dim - 1)) != 0) {
    throw ValidationError("hyperparams.hash_dim: must be a power of two");
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ValidationError("hyperparams.learning_rate: must be positive");
  }
  if (!(l2 >= 0.0) || !std::isfinite(l2)) throw ValidationError("hyperparams.l2: must be >= 0");
  if (epochs < 1) throw ValidationError("hyperparams.epochs: must be >= 1");
  if (!(threshold > 0.0 && threshold < 1.0)) throw ValidationError("hyperparams.threshold: must be in (0,1)");
}

std::array<std::size_t, 3> split_sizes(std::size_t n, SplitRatios r) {
  const double total = r.train + r.validation + r.test;
  if (!(r.train > 0 && r.validation >= 0 && r.test >= 0) || std::fabs(total - 1.0) > 1e-9) {
    throw ArgumentError("split ratios must be non-negative and sum to 1");
  }
  const double exact_train = r.train * static_cast<double>(n);
  const double exact_val = r.validation * static_cast<double>(n);
  const double exact_test = r.test * static_cast<double>(n);
  // Guard against 0.64 * 100 = 64.00000000000001-style representation noise.
  auto floor_eps = [](double x) { return static_cast<std::size_t>(std::floor(x + 1e-9)); };
  std::size_t train = floor_eps(exact_train);
  std::size_t val = floor_eps(exact_val);
  std::size_t test = n - train - val;
  if (static_cast<double>(test) - exact_test > 1.0 + 1e-9) {
    const double frac_train = exact_train - static_cast<double>(train);
    const double frac_val = exact_val - static_cast<double>(val);
    if (frac_train >= frac_val) {
      ++train;
    } else {
      ++val;
    }
    --test;
  }
  return {train, val, test};
}

DatasetSplit split_dataset(std::span<const corpus::Post> labeled, SplitRatios ratios, std::uint64_t seed) {
  if (labeled.empty()) throw ArgumentError("split_dataset: no posts");
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    if (!labeled[i].label) {
      throw ArgumentError(fmt::format("split_dataset: post {}:{} has no label",
                                      corpus::to_string(labeled[i].platform), labeled[i].id));
    }
    (*labeled[i].label == Label::positive ? pos : neg).push_back(i);
  }
  const auto n = labeled.size();
  const auto sizes = split_sizes(n, ratios);

  // Largest-remainder allocation of positives across the three splits.
  std::array<std::size_t, 3> pos_count{};
  std::array<double, 3> frac{};
  std::size_t assigned = 0;
  for (std::size_t s = 0; s < 3; ++s) {
    const double exact = static_cast<double>(sizes[s]) * static_cast<double>(pos.size()) / static_cast<double>(n);
    pos_count[s] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    frac[s] = exact - static_cast<double>(pos_count[s]);
    assigned += pos_count[s];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (std::size_t k = 0; assigned < pos.size(); k = (k + 1) % 3) {
    const auto s = order[k];
    if (pos_count[s] < sizes[s]) {
      ++pos_count[s];
      ++assigned;
    }
  }

  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);

  std::array<std::vector<std::size_t>, 3> members;
  std::size_t pi = 0, ni = 0;
  for (std::size_t s = 0; s < 3; ++s) {
    for (std::size_t k = 0; k < pos_count[s]; ++k) members[s].push_back(pos[pi++]);
    for (std::size_t k = 0; k < sizes[s] - pos_count[s]; ++k) members[s].push_back(neg[ni++]);
    std::sort(members[s].begin(), members[s].end());
  }

  DatasetSplit split;
  split.train_ratio = ratios.train;
  split.validation_ratio = ratios.validation;
  split.test_ratio = ratios.test;
  split.seed = seed;
  for (auto i : members[0]) split.train.push_back(labeled[i]);
  for (auto i : members[1]) split.validation.push_back(labeled[i]);
  for (auto i : members[2]) split.test.push_back(labeled[i]);
  return split;
}

std::size_t select_checkpoint(std::span<const double> validation_f1) {
  if (validation_f1.empty()) throw ArgumentError("select_checkpoint: no epochs");
  std::size_t best = 0;
  for (std::size_t i = 1; i < validation_f1.size(); ++i) {
    if (validation_f1[i] > validation_f1[best]) best = i;
  }
  return best;
}

double Model::margin(const SparseVector& x) const { return x.dot(weights) + bias; }

double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::fabs(t))); }

double target(Label y) { return y == Label::positive ? 1.0 : 0.0; }

}  // namespace

double logistic_loss(std::span<const double> w, double b, const SparseVector& x, Label y) {
  const double z = x.dot(w) + b;
  return y == Label::positive ? softplus(-z) : softplus(z);
}

void logistic_loss_gradient(std::span<const double> w, double b, const SparseVector& x, Label y,
                            std::vector<double>& grad_w, double& grad_b) {
  const double g = logistic(x.dot(w) + b) - target(y);
  grad_w.assign(w.size(), 0.0);
  for (const auto& [i, v] : x.entries) grad_w[i] += g * v;
  grad_b = g;
}

SparseVector model_features(const Model& model, std::string_view raw, const text::SmileyTable& smileys) {
  auto x = extract_features(text::normalize_text(raw, smileys), model.hp);
  if (model.hp.normalize_features) {
    const double norm = x.l2_norm();
    if (norm > 0) {
      for (auto& [_, v] : x.entries) v /= norm;
    }
  }
  return x;
}

Model train(const DatasetSplit& split, const Hyperparams& hp, const text::SmileyTable& smileys) {
  hp.validate();
  if (split.train.empty()) throw ArgumentError("train: empty training set");

  Model model;
  model.hp = hp;
  model.weights.assign(hp.hash_dim, 0.0);

  std::vector<SparseVector> xs;
  std::vector<Label> ys;
  for (const auto& p : split.train) {
    xs.push_back(model_features(model, p.text, smileys));
    ys.push_back(*p.label);
  }
  // With no validation data the checkpoint is chosen on the training set.
  const auto& selection_set = split.validation.empty() ? split.train : split.validation;
  std::vector<SparseVector> vxs;
  std::vector<Label> vys;
  for (const auto& p : selection_set) {
    vxs.push_back(model_features(model, p.text, smileys));
    vys.push_back(*p.label);
  }

  Rng rng(hp.seed);
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);

  std::vector<double> best_weights = model.weights;
  double best_bias = 0.0;
  std::vector<double> f1s;

  for (int epoch = 1; epoch <= hp.epochs; ++epoch) {
    rng.shuffle(order);
    for (const auto i : order) {
      const double g = logistic(model.margin(xs[i])) - target(ys[i]);
      for (const auto& [j, v] : xs[i].entries) {
        model.weights[j] -= hp.learning_rate * (g * v + hp.l2 * model.weights[j]);
      }
      model.bias -= hp.learning_rate * g;
    }

    EpochRecord rec;
    rec.epoch = epoch;
    double loss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) loss += logistic_loss(model.weights, model.bias, xs[i], ys[i]);
    rec.train_loss = loss / static_cast<double>(xs.size());

    std::vector<Label> predicted;
    predicted.reserve(vxs.size());
    for (const auto& x : vxs) {
      predicted.push_back(logistic(model.margin(x)) >= hp.threshold ? Label::positive : Label::negative);
    }
    rec.validation_f1 = eval::compute_metrics(predicted, vys).f1;
    model.metadata.epochs.push_back(rec);

    f1s.push_back(rec.validation_f1);
    if (select_checkpoint(f1s) + 1 == static_cast<std::size_t>(epoch)) {
      best_weights = model.weights;
      best_bias = model.bias;
    }
  }

  model.metadata.selected_epoch = static_cast<int>(select_checkpoint(f1s)) + 1;
  model.weights = std::move(best_weights);
  model.bias = best_bias;
  return model;
}

Prediction predict_text(const Model& model, std::string_view raw, const text::SmileyTable& smileys) {
  Prediction p;
  p.score = logistic(model.margin(model_features(model, raw, smileys)));
  p.label = p.score >= model.hp.threshold ? Label::positive : Label::negative;
  return p;
}

std::optional<std::pair<Label, double>> aggregate_sentences(std::span<const double> scores, double threshold) {
  if (scores.empty()) return std::nullopt;
  const double best = *std::max_element(scores.begin(), scores.end());
  return std::make_pair(best >= threshold ? Label::positive : Label::negative, best);
}

Prediction classify_with(const std::function<double(std::string_view)>& score_sentence,
                         const corpus::Post& post, double threshold, std::size_t long_post_tokens,
                         const text::SmileyTable& smileys, const text::AbbreviationList& abbreviations) {
  const bool sentence_mode = post.platform == corpus::Platform::reddit ||
                             text::normalize_text(post.text, smileys).tokens.size() > long_post_tokens;
  Prediction out;
  if (sentence_mode) {
    const auto sentences = text::split_sentences(post.text, abbreviations);
    std::vector<double> scores;
    for (const auto& s : sentences) {
      const double sc = score_sentence(s);
      scores.push_back(sc);
      out.per_sentence.emplace_back(s, sc);
    }
    if (const auto agg = aggregate_sentences(scores, threshold)) {
      out.label = agg->first;
      out.score = agg->second;
      return out;
    }
  }
  out.score = score_sentence(post.text);
  out.label = out.score >= threshold ? Label::positive : Label::negative;
  return out;
}

Prediction classify_post(const Model& model, const corpus::Post& post, const text::SmileyTable& smileys,
                         const text::AbbreviationList& abbreviations) {
  return classify_with([&](std::string_view s) { return predict_text(model, s, smileys).score; }, post,
                       model.hp.threshold, model.hp.long_post_tokens, smileys, abbreviations);
}

MissingScoresError::MissingScoresError(std::vector<corpus::PostKey> missing)
    : Error([&] {
        std::string ids;
        for (std::size_t i = 0; i < missing.size(); ++i) {
          if (i) ids += ", ";
          ids += fmt::format("{}:{}", corpus::to_string(missing[i].platform), missing[i].id);
        }
        return fmt::format("score file is missing {} post(s): {}", missing.size(), ids);
      }()),
      missing_(std::move(missing)) {}

std::map<corpus::PostKey, double> parse_score_file(std::string_view csv, std::string_view origin) {
  std::map<corpus::PostKey, double> scores;
  std::size_t line_no = 0;
  bool header_seen = false;
  for (auto raw : split(csv, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto fields = parse_csv_line(line);
    if (!header_seen) {
      if (fields.size() != 3 || trim(fields[0]) != "platform" || trim(fields[1]) != "id" ||
          trim(fields[2]) != "score") {
        throw ValidationError(fmt::format("{}: expected header 'platform,id,score'", origin));
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) throw ValidationError(fmt::format("{}:{}: expected 3 columns", origin, line_no));
    const auto platform = corpus::parse_platform(trim(fields[0]));
    if (!platform) throw ValidationError(fmt::format("{}:{}: unknown platform '{}'", origin, line_no, fields[0]));
    const double score = parse_double(fields[2], fmt::format("{}:{}: score", origin, line_no));
    if (!(score >= 0.0 && score <= 1.0)) {
      throw ValidationError(fmt::format("{}:{}: score {} outside [0,1]", origin, line_no, fields[2]));
    }
    corpus::PostKey key{*platform, std::string(trim(fields[1]))};
    if (!scores.emplace(key, score).second) {
      throw ValidationError(fmt::format("{}:{}: duplicate score for {}", origin, line_no, key.id));
    }
  }
  if (!header_seen) throw ValidationError(fmt::format("{}: empty score file", origin));
  return scores;
}

std::vector<Prediction> ingest_external_scores(const std::map<corpus::PostKey, double>& scores,
                                               std::span<const corpus::Post> posts, double threshold) {
  std::vector<corpus::PostKey> missing;
  std::vector<Prediction> out;
  out.reserve(posts.size());
  for (const auto& p : posts) {
    const auto it = scores.find(corpus::key_of(p));
    if (it == scores.end()) {
      missing.push_back(corpus::key_of(p));
      continue;
    }
    Prediction pred;
    pred.score = it->second;
    pred.label = pred.score >= threshold ? Label::positive : Label::negative;
    out.push_back(std::move(pred));
  }
  if (!missing.empty()) throw MissingScoresError(std::move(missing));
  return out;
}

std::vector<Prediction> ingest_external_scores(const std::filesystem::path& file,
                                               std::span<const corpus::Post> posts, double threshold) {
  return ingest_external_scores(parse_score_file(read_file(file), file.string()), posts, threshold);
}

namespace {

json hyperparams_to_json(const Hyperparams& hp) {
  return {{"word_ngram_min", hp.word_ngram_min}, {"word_ngram_max", hp.word_ngram_max},
          {"char_ngram_min", hp.char_ngram_min}, {"char_ngram_max", hp.char_ngram_max},
          {"hash_dim", hp.hash_dim},             {"learning_rate", hp.learning_rate},
          {"l2", hp.l2},                         {"epochs", hp.epochs},
          {"seed", hp.seed},                     {"threshold", hp.threshold},
          {"normalize_features", hp.normalize_features}, {"long_post_tokens", hp.long_post_tokens}};
}

Hyperparams hyperparams_from_json(const json& j) {
  Hyperparams hp;
  hp.word_ngram_min = j.at("word_ngram_min").get<int>();
  hp.word_ngram_max = j.at("word_ngram_max").get<int>();
  hp.char_ngram_min = j.at("char_ngram_min").get<int>();
  hp.char_ngram_max = j.at("char_ngram_max").get<int>();
  hp.hash_dim = j.at("hash_dim").get<std::uint32_t>();
  hp.learning_rate = j.at("learning_rate").get<double>();
  hp.l2 = j.at("l2").get<double>();
  hp.epochs = j.at("epochs").get<int>();
  hp.seed = j.at("seed").get<std::uint64_t>();
  hp.threshold = j.at("threshold").get<double>();
  hp.normalize_features = j.at("normalize_features").get<bool>();
  hp.long_post_tokens = j.at("long_post_tokens").get<std::size_t>();
  return hp;
}

constexpr const char* kModelFormat = "migraine-selfreport-linear";
constexpr int kModelVersion = 1;

}  // namespace

std::string serialize_model(const Model& model) {
  nlohmann::ordered_json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["hyperparams"] = hyperparams_to_json(model.hp);
  j["bias"] = model.bias;
  auto nz = json::array();
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    if (model.weights[i] != 0.0 || std::signbit(model.weights[i])) nz.push_back(json::array({i, model.weights[i]}));
  }
  j["weights"] = {{"dim", model.weights.size()}, {"nonzero", std::move(nz)}};
  auto epochs = json::array();
  for (const auto& e : model.metadata.epochs) {
    epochs.push_back({{"epoch", e.epoch}, {"validation_f1", e.validation_f1}, {"train_loss", e.train_loss}});
  }
  j["training"] = {{"epochs", std::move(epochs)}, {"selected_epoch", model.metadata.selected_epoch}};
  return j.dump(1) + "\n";
}

Model parse_model(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model file: ") + e.what());
  }
  try {
    if (j.at("format") != kModelFormat) throw ValidationError("model file: unknown format");
    if (j.at("version").get<int>() != kModelVersion) throw ValidationError("model file: unsupported version");
    Model m;
    m.hp = hyperparams_from_json(j.at("hyperparams"));
    m.bias = j.at("bias").get<double>();
    const auto dim = j.at("weights").at("dim").get<std::size_t>();
    if (dim != m.hp.hash_dim) throw ValidationError("model file: weight dimension does not match hash_dim");
    m.weights.assign(dim, 0.0);
    for (const auto& kv : j.at("weights").at("nonzero")) {
      const auto i = kv.at(0).get<std::size_t>();
      if (i >= dim) throw ValidationError("model file: weight index out of range");
      m.weights[i] = kv.at(1).get<double>();
    }
    for (const auto& e : j.at("training").at("epochs")) {
      m.metadata.epochs.push_back({e.at("epoch").get<int>(), e.at("validation_f1").get<double>(),
                                   e.at("train_loss").get<double>()});
    }
    m.metadata.selected_epoch = j.at("training").at("selected_epoch").get<int>();
    return m;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model file: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const Model& model) {
  write_file_atomic(path, serialize_model(model));
}

Model load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

}  // namespace migraine::classify
