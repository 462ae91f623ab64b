#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "migraine/misspell.hpp"

namespace migraine::lexicon {

/// Index into MedicationLexicon::groups().
struct GroupId {
  std::size_t value = 0;
  auto operator<=>(const GroupId&) const = default;
};

struct MedicationEntry {
  std::string generic_name;                  // canonical, lowercase
  std::vector<std::string> generic_aliases;  // alternate generic spellings
  std::vector<std::string> brand_names;      // lowercase
  GroupId group;
};

struct SurfaceInfo {
  std::size_t entry = 0;
  bool is_variant = false;
};

struct MedicationMatch {
  std::size_t start = 0;  // byte offsets into the raw text, [start, end)
  std::size_t end = 0;
  std::string surface;    // surface_index key that matched
  std::size_t entry = 0;
  GroupId group;
  bool is_variant = false;
};

/// Parsed medication config.
///
/// Format, one item per line ('#' comments allowed):
///   !group <Group Name>                          declares a group
///   generic[,alias...]|brand1,brand2|<Group Name> an entry
struct MedicationConfig {
  std::vector<std::string> groups;
  struct Row {
    std::vector<std::string> generics;
    std::vector<std::string> brands;
    std::string group;
  };
  std::vector<Row> rows;

  static MedicationConfig parse(std::string_view text, std::string_view origin = "<config>");
  static MedicationConfig load(const std::filesystem::path& path);
  /// The expert-selected migraine medications and their nine groups.
  static MedicationConfig defaults();
};

class AhoCorasick;

/// Immutable after build; matching is thread-safe.
class MedicationLexicon {
 public:
  /// misspelling_depth = 0 indexes canonical surfaces only. Variant
  /// collisions (with another entry's canonical surface, or produced by two
  /// entries) are dropped and reported in warnings().
  static MedicationLexicon build(const MedicationConfig& config, int misspelling_depth,
                                 const MisspellingFilters& filters = MisspellingFilters::defaults(),
                                 const KeyboardLayout& keyboard = KeyboardLayout::qwerty());

  MedicationLexicon(MedicationLexicon&&) noexcept;
  MedicationLexicon& operator=(MedicationLexicon&&) noexcept;
  ~MedicationLexicon();

  const std::vector<std::string>& groups() const { return groups_; }
  const std::string& group_name(GroupId g) const { return groups_.at(g.value); }
  std::optional<GroupId> find_group(std::string_view name) const;

  const std::vector<MedicationEntry>& entries() const { return entries_; }
  const std::map<std::string, SurfaceInfo, std::less<>>& surface_index() const { return surface_index_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  int misspelling_depth() const { return depth_; }

  /// Case-insensitive, word-bounded, leftmost-longest, non-overlapping
  /// matches ordered by start offset.
  std::vector<MedicationMatch> match(std::string_view raw) const;

 private:
  MedicationLexicon();

  std::vector<std::string> groups_;
  std::vector<MedicationEntry> entries_;
  std::map<std::string, SurfaceInfo, std::less<>> surface_index_;
  std::vector<std::string> warnings_;
  int depth_ = 0;
  std::unique_ptr<AhoCorasick> automaton_;
  std::vector<const std::string*> pattern_keys_;  // automaton pattern id -> index key
};

/// Free-function form of MedicationLexicon::match.
inline std::vector<MedicationMatch> match_medications(std::string_view raw, const MedicationLexicon& lex) {
  return lex.match(raw);
}

}  // namespace migraine::lexicon
