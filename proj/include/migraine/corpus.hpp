#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "migraine/common.hpp"

namespace migraine::lexicon {
class MedicationLexicon;
}

namespace migraine::corpus {

enum class Platform { twitter, reddit };

const char* to_string(Platform p);
std::optional<Platform> parse_platform(std::string_view s);

/// UTC instant with millisecond resolution.
struct Timestamp {
  std::int64_t millis = 0;  // since 1970-01-01T00:00:00Z

  auto operator<=>(const Timestamp&) const = default;

  /// Accepts YYYY-MM-DDTHH:MM:SS[.fff...](Z|+HH:MM|-HH:MM); offsets are
  /// converted to UTC. Returns nullopt on any syntax or range error.
  static std::optional<Timestamp> parse(std::string_view iso);

  /// Canonical form: "YYYY-MM-DDTHH:MM:SSZ", or with ".mmm" when the
  /// millisecond part is nonzero.
  std::string to_iso() const;
};

struct Post {
  Platform platform = Platform::twitter;
  std::string id;
  std::string author_id;
  Timestamp created_at;
  std::string text;
  std::optional<std::string> subreddit;
  std::optional<Label> label;

  bool operator==(const Post&) const = default;
};

/// (platform, id); ids are only unique within a platform.
struct PostKey {
  Platform platform;
  std::string id;

  auto operator<=>(const PostKey&) const = default;
};

inline PostKey key_of(const Post& p) { return {p.platform, p.id}; }

/// Malformed JSON on a given (1-based) line.
class RecordError : public Error {
 public:
  RecordError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Valid JSON that violates the record schema; names the offending field.
class SchemaError : public Error {
 public:
  SchemaError(std::string field, const std::string& what, std::size_t line = 0);
  const std::string& field() const { return field_; }
  std::size_t line() const { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

Post parse_post_record(std::string_view line, std::size_t line_no = 0);

/// One JSON object, fixed key order, no trailing newline.
std::string serialize_post(const Post& post);

std::vector<Post> read_posts(const std::filesystem::path& path);
std::string serialize_posts(std::span<const Post> posts);
void write_posts(const std::filesystem::path& path, std::span<const Post> posts);

/// True when the case-folded text has a word starting with "migraine"
/// (covers "migraines", "#migraine") or any medication surface form.
bool keyword_filter(const Post& post, const lexicon::MedicationLexicon& lexicon);

/// Byte offsets of words beginning with "migraine" in the folded text.
std::vector<std::size_t> migraine_stem_positions(std::string_view folded_text);

struct DedupOptions {
  /// Also drop later posts whose exact text was already seen (cross-posts).
  bool exact_text = false;
};

/// Keeps the first occurrence of each (platform, id), preserving order.
std::vector<Post> dedup_stream(std::span<const Post> posts, DedupOptions options = {});

/// Ascending by created_at, ties by id.
void sort_timeline(std::vector<Post>& posts);

}  // namespace migraine::corpus
