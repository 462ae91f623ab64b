#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace migraine::text {

/// Tokens after preprocessing. Word tokens are case-folded; marker tokens are
/// angle-bracketed lowercase tags such as <url> or <allcaps>.
struct NormalizedText {
  std::vector<std::string> tokens;
  std::size_t source_length = 0;  // code points in the raw input

  /// Tokens joined by single spaces.
  std::string render() const;
};

inline constexpr std::string_view kNumber = "<number>";
inline constexpr std::string_view kUser = "<user>";
inline constexpr std::string_view kUrl = "<url>";
inline constexpr std::string_view kHashtag = "<hashtag>";
inline constexpr std::string_view kAllCaps = "<allcaps>";
inline constexpr std::string_view kElong = "<elong>";

bool is_marker_syntax(std::string_view token);

/// Literal emoticon -> marker tag.
class SmileyTable {
 public:
  /// ":)", ":(", ":D", "<3" and friends mapped to <smile>, <sadface>,
  /// <lolface>, <neutralface>, <heart>.
  static SmileyTable defaults();

  /// "surface<TAB>tag" per line; '#' starts a comment line. Duplicate
  /// surfaces or malformed tags raise ConfigError.
  static SmileyTable load(const std::filesystem::path& path);

  void add(std::string surface, std::string tag);
  const std::string* find(std::string_view surface) const;
  const std::map<std::string, std::string, std::less<>>& entries() const { return map_; }
  std::set<std::string, std::less<>> tags() const;

 private:
  std::map<std::string, std::string, std::less<>> map_;
};

/// Applies, per whitespace-delimited chunk and in this order: URL -> <url>,
/// @mention -> <user>, standalone number -> <number>, emoticon -> tag,
/// "#tag" -> <hashtag> + tag word, 3+ repeated letters collapsed to two
/// (<elong>), all-caps word lowercased (<allcaps>), then case folding.
/// A chunk yields at most one content token and one marker; when several
/// markers apply the precedence is hashtag, allcaps, elong.
NormalizedText normalize_text(std::string_view raw, const SmileyTable& smileys);

/// Abbreviations that never end a sentence ("e.g.", "dr.", "mg.", ...).
class AbbreviationList {
 public:
  static AbbreviationList defaults();
  /// One abbreviation per line (extra tab-separated columns ignored).
  static AbbreviationList load(const std::filesystem::path& path);

  void add(std::string abbreviation);
  bool contains(std::string_view folded) const;

 private:
  std::set<std::string, std::less<>> items_;
};

/// Splits at runs of '.', '!', '?' that are followed by whitespace or the end
/// of input, and at newline runs. Terminators inside URLs, inside numbers
/// ("2.5") and after protected abbreviations do not split. Returned sentences
/// are trimmed and nonempty.
std::vector<std::string> split_sentences(std::string_view raw,
                                         const AbbreviationList& abbreviations = AbbreviationList::defaults());

}  // namespace migraine::text
