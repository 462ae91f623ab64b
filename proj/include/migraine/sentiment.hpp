#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "migraine/corpus.hpp"
#include "migraine/lexicon.hpp"

namespace migraine::sentiment {

/// Token valences in [-4, 4] plus the emoji-to-description table used to
/// spell emoji out before scoring.
class SentimentLexicon {
 public:
  /// Lines are "token<TAB>valence[<TAB>...]"; extra columns are ignored. A
  /// token listed twice keeps its last valence. Valences outside [-4, 4]
  /// raise ConfigError.
  static SentimentLexicon parse(std::string_view lexicon_text, std::string_view emoji_text = {},
                                std::string_view origin = "<lexicon>");
  static SentimentLexicon load(const std::filesystem::path& lexicon_path,
                               const std::optional<std::filesystem::path>& emoji_path = std::nullopt);

  void set_valence(std::string token, double valence);
  void set_emoji(char32_t emoji, std::string description);

  std::optional<double> valence(std::string_view token) const;
  bool contains(std::string_view token) const { return valences_.find(token) != valences_.end(); }
  const std::string* emoji_description(char32_t cp) const;
  std::size_t size() const { return valences_.size(); }
  std::size_t duplicate_count() const { return duplicates_; }

 private:
  std::map<std::string, double, std::less<>> valences_;
  std::map<char32_t, std::string> emoji_;
  std::size_t duplicates_ = 0;
};

/// Compound sentiment in [-1, 1] computed from raw text (capitalization and
/// punctuation matter).
double score_text(std::string_view raw, const SentimentLexicon& lex);

struct ScoredPost {
  corpus::Post post;
  double score = 0.0;
};

struct UserGroupSentiment {
  std::string author_id;
  lexicon::GroupId group;
  std::string post_id;
  corpus::Timestamp created_at;
  double score = 0.0;
};

/// The post holding the median score (lower middle for even counts); among
/// equal scores the earliest post wins, then the smaller id. Throws
/// ArgumentError on an empty list. Author and group are left for the caller.
const ScoredPost& select_user_representative(std::span<const ScoredPost> scored);

enum class SentimentMode { per_user_median, per_post };
const char* to_string(SentimentMode m);
std::optional<SentimentMode> parse_sentiment_mode(std::string_view s);

struct GroupEntry {
  lexicon::GroupId group;
  std::string author_id;
  std::string post_id;
  double score = 0.0;
};

/// Scores every post that mentions a medication and emits one entry per
/// (post, mentioned group) in per_post mode, or one representative entry per
/// (author, group) in per_user_median mode. Entries are ordered by group,
/// then author, then post id.
std::vector<GroupEntry> build_group_entries(std::span<const corpus::Post> posts, SentimentMode mode,
                                            const lexicon::MedicationLexicon& meds, const SentimentLexicon& lex);

struct GroupStats {
  std::string group;
  std::size_t frequency = 0;
  double mean = 0.0;
  double median = 0.0;  // lower middle for even counts
  double std = 0.0;     // sample (n-1); 0 when n = 1
};

/// One row per group that has entries, in group-id order.
std::vector<GroupStats> aggregate_group_stats(std::span<const GroupEntry> entries,
                                              const lexicon::MedicationLexicon& meds);

double mean(std::span<const double> xs);
double lower_median(std::span<const double> xs);
double sample_std(std::span<const double> xs);

struct DensityCurve {
  std::vector<double> grid;
  std::vector<double> density;
  double bandwidth = 0.0;
};

constexpr double kMinBandwidth = 0.05;

/// 0.9 * min(sd, IQR / 1.34) * n^(-1/5), never below kMinBandwidth.
double silverman_bandwidth(std::span<const double> xs);

/// Evenly spaced grid of `points` abscissae over [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

/// Gaussian KDE; defaults: Silverman bandwidth, 201 points over [-1.2, 1.2].
DensityCurve estimate_density(std::span<const double> scores, std::optional<double> bandwidth = std::nullopt,
                              std::optional<std::vector<double>> grid = std::nullopt);

/// Trapezoid-rule integral of the curve.
double trapezoid_integral(const DensityCurve& curve);

}  // namespace migraine::sentiment
