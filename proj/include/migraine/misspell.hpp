#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace migraine::lexicon {

/// QWERTY adjacency used for substitution edits.
class KeyboardLayout {
 public:
  /// US QWERTY letters: horizontal and diagonal neighbours.
  static KeyboardLayout qwerty();
  /// "key<TAB>neighbours" per line, e.g. "s\tawedxz".
  static KeyboardLayout load(const std::filesystem::path& path);

  void set_neighbors(char key, std::string neighbors);
  std::string_view neighbors(char key) const;
  bool adjacent(char a, char b) const;

 private:
  std::map<char, std::string> table_;
};

struct MisspellingFilters {
  std::size_t min_length = 4;
  bool keep_first_char = true;
  std::set<std::string, std::less<>> blocklist;  // common English words

  /// Built-in blocklist of frequent English words.
  static MisspellingFilters defaults();
  static MisspellingFilters load_blocklist(const std::filesystem::path& path);

  bool accepts(std::string_view candidate, std::string_view term) const;
};

/// The single-edit neighbourhood used by the generator: deletion,
/// adjacent-key substitution, adjacent transposition, letter doubling.
std::set<std::string> single_edits(std::string_view term, const KeyboardLayout& keyboard);

/// `term` plus every string reachable by up to `max_edits` composed single
/// edits that passes the filters. Sorted, duplicate-free.
/// Throws ArgumentError when term has fewer than 4 characters or max_edits > 2.
std::vector<std::string> generate_misspellings(std::string_view term, int max_edits,
                                               const MisspellingFilters& filters,
                                               const KeyboardLayout& keyboard = KeyboardLayout::qwerty());

}  // namespace migraine::lexicon
