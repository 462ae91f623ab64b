#pragma once

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

#include "migraine/classify.hpp"
#include "migraine/corpus.hpp"

namespace migraine::bias {

/// Bidirectional word pairs for one category ("gender" or "race"). Each
/// word belongs to at most one pair, so swapping is an involution.
class SwapTable {
 public:
  explicit SwapTable(std::string category = "gender") : category_(std::move(category)) {}

  /// Both words are lowercased; throws ConfigError if either word is
  /// already in the table or the two are equal.
  void add_pair(std::string_view a, std::string_view b);

  const std::string& category() const { return category_; }
  const std::vector<std::pair<std::string, std::string>>& pairs() const { return pairs_; }
  std::optional<std::string_view> partner(std::string_view lowercase_word) const;
  bool empty() const { return pairs_.empty(); }

  static SwapTable defaults(std::string_view category);

 private:
  std::string category_;
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::map<std::string, std::string, std::less<>> partner_;
};

/// Parses "word_a<TAB>word_b<TAB>category" lines ('#' comments allowed) into
/// one table per category. Only "gender" and "race" are accepted.
std::map<std::string, SwapTable> parse_swap_tables(std::string_view text, std::string_view origin = "<swaps>");
std::map<std::string, SwapTable> load_swap_tables(const std::filesystem::path& path);

struct SwapResult {
  std::string text;
  std::size_t n_swaps = 0;
};

/// Replaces every table word (maximal letter run, matched case-insensitively)
/// by its partner, keeping lower / Title / UPPER casing; other casings get the
/// lowercase partner. Everything between words is copied unchanged.
SwapResult apply_swaps(std::string_view raw, const SwapTable& table);

struct ProbeRecord {
  std::string category;
  corpus::PostKey key;
  std::string original_text;
  std::string swapped_text;
  std::size_t n_swaps = 0;
  classify::Prediction original;
  classify::Prediction swapped;
  bool flipped = false;
};

struct BiasProbeReport {
  std::string category;
  std::size_t n_examined = 0;
  std::size_t n_with_swaps = 0;
  std::size_t n_flipped = 0;
  double flip_rate = 0.0;  // 0 when nothing was swapped
  std::vector<ProbeRecord> records;
};

using PostClassifier = std::function<classify::Prediction(const corpus::Post&)>;

struct ProbeSampling {
  double fraction = 1.0;  // in (0, 1]
  std::uint64_t seed = 0;
};

/// Classifies each examined post before and after apply_swaps and counts
/// label flips. With fraction < 1 a seeded subset of round(fraction * n)
/// posts (at least one) is examined, in input order.
BiasProbeReport probe_invariance(const PostClassifier& classifier, std::span<const corpus::Post> posts,
                                 const SwapTable& table, ProbeSampling sampling = {});

std::string serialize_probe_record(const ProbeRecord& r);

struct TokenImportance {
  std::string token;
  std::size_t position = 0;
  double delta = 0.0;  // score(all tokens) - score(without this token)
};

/// Leave-one-out importance over whitespace tokens. The reference text is the
/// tokens joined by single spaces, so both sides see identical spacing.
std::vector<TokenImportance> occlusion_importance(const std::function<double(std::string_view)>& score,
                                                  std::string_view raw);

}  // namespace migraine::bias
