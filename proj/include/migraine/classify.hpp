#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "migraine/common.hpp"
#include "migraine/corpus.hpp"
#include "migraine/normalize.hpp"

namespace migraine::classify {

struct Hyperparams {
  int word_ngram_min = 1;
  int word_ngram_max = 2;
  int char_ngram_min = 3;
  int char_ngram_max = 5;
  std::uint32_t hash_dim = 1u << 18;
  double learning_rate = 0.5;
  double l2 = 1e-6;
  int epochs = 10;
  std::uint64_t seed = 13;
  double threshold = 0.5;
  /// Scale each feature vector to unit L2 norm before the dot product.
  bool normalize_features = true;
  /// Posts with more normalized tokens than this are classified per sentence.
  std::size_t long_post_tokens = 64;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

/// Sorted by index, no duplicate indices, no zero values.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  double l1_norm() const;
  double l2_norm() const;
  double dot(std::span<const double> dense) const;
};

/// 64-bit FNV-1a; stable across platforms and runs.
std::uint64_t fnv1a64(std::string_view s);

/// Word n-grams over the token sequence and character n-grams over each word
/// token (padded with a space on each side; marker tokens contribute word
/// n-grams only), hashed into hp.hash_dim buckets with collision counts summed.
SparseVector extract_features(const text::NormalizedText& norm, const Hyperparams& hp);

/// The un-hashed n-gram strings extract_features counts, namespaced by kind
/// ("w1:", "w2:", "c3:", ...). Exposed for inspection and tests.
std::vector<std::string> enumerate_ngrams(const text::NormalizedText& norm, const Hyperparams& hp);

struct DatasetSplit {
  std::vector<corpus::Post> train;
  std::vector<corpus::Post> validation;
  std::vector<corpus::Post> test;
  double train_ratio = 0.64;
  double validation_ratio = 0.16;
  double test_ratio = 0.20;
  std::uint64_t seed = 0;
};

struct SplitRatios {
  double train = 0.64;
  double validation = 0.16;
  double test = 0.20;
};

/// Deterministic stratified split. Split sizes are floor(train*n),
/// floor(validation*n) and the remainder, except that one item moves out of
/// the remainder when it would otherwise exceed test*n by more than one.
/// Positives per split are allocated by largest remainder so every split's
/// class counts are within one item of proportional.
DatasetSplit split_dataset(std::span<const corpus::Post> labeled, SplitRatios ratios, std::uint64_t seed);

/// Split sizes (train, validation, test) for n items.
std::array<std::size_t, 3> split_sizes(std::size_t n, SplitRatios ratios);

struct EpochRecord {
  int epoch = 0;  // 1-based
  double validation_f1 = 0.0;
  double train_loss = 0.0;  // mean logistic loss over the training set
};

struct TrainingMetadata {
  std::vector<EpochRecord> epochs;
  int selected_epoch = 0;
};

/// Index of the best epoch: highest validation F1, earliest on ties.
std::size_t select_checkpoint(std::span<const double> validation_f1);

struct Model {
  Hyperparams hp;
  std::vector<double> weights;  // size hp.hash_dim
  double bias = 0.0;
  TrainingMetadata metadata;

  /// w . x + b on an already-extracted feature vector.
  double margin(const SparseVector& x) const;
};

struct Prediction {
  Label label = Label::negative;
  double score = 0.0;  // positive-class probability
  std::vector<std::pair<std::string, double>> per_sentence;
};

double logistic(double z);

/// Mean-free logistic loss of one example and its gradient w.r.t. (w, b).
double logistic_loss(std::span<const double> w, double b, const SparseVector& x, Label y);
void logistic_loss_gradient(std::span<const double> w, double b, const SparseVector& x, Label y,
                            std::vector<double>& grad_w, double& grad_b);

/// Per-example SGD on the logistic loss in seeded shuffled order for
/// hp.epochs epochs; returns the snapshot with the best validation F1.
Model train(const DatasetSplit& split, const Hyperparams& hp,
            const text::SmileyTable& smileys = text::SmileyTable::defaults());

/// Feature vector as the model sees it (normalized when configured).
SparseVector model_features(const Model& model, std::string_view raw, const text::SmileyTable& smileys);

Prediction predict_text(const Model& model, std::string_view raw,
                        const text::SmileyTable& smileys = text::SmileyTable::defaults());

/// Any-positive rule: positive iff some score >= threshold; score is the max.
/// An empty list yields nullopt.
std::optional<std::pair<Label, double>> aggregate_sentences(std::span<const double> scores, double threshold);

/// Reddit posts and posts longer than hp.long_post_tokens are classified per
/// sentence and aggregated; everything else goes through predict_text.
Prediction classify_post(const Model& model, const corpus::Post& post,
                         const text::SmileyTable& smileys = text::SmileyTable::defaults(),
                         const text::AbbreviationList& abbreviations = text::AbbreviationList::defaults());

/// Generic form of classify_post over any sentence scorer.
Prediction classify_with(const std::function<double(std::string_view)>& score_sentence,
                         const corpus::Post& post, double threshold, std::size_t long_post_tokens,
                         const text::SmileyTable& smileys, const text::AbbreviationList& abbreviations);

class MissingScoresError : public Error {
 public:
  explicit MissingScoresError(std::vector<corpus::PostKey> missing);
  const std::vector<corpus::PostKey>& missing() const { return missing_; }

 private:
  std::vector<corpus::PostKey> missing_;
};

/// Parses "platform,id,score" CSV (with header).
std::map<corpus::PostKey, double> parse_score_file(std::string_view csv, std::string_view origin = "<scores>");

/// Predictions for `posts` from externally computed scores.
std::vector<Prediction> ingest_external_scores(const std::map<corpus::PostKey, double>& scores,
                                               std::span<const corpus::Post> posts, double threshold);
std::vector<Prediction> ingest_external_scores(const std::filesystem::path& file,
                                               std::span<const corpus::Post> posts, double threshold);

/// JSON container; doubles are written in shortest round-trip form so
/// save/load is bit-exact.
std::string serialize_model(const Model& model);
Model parse_model(std::string_view json_text);
void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

}  // namespace migraine::classify
