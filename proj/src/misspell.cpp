#include "migraine/misspell.hpp"

#include <fmt/format.h>

#include "migraine/common.hpp"

namespace migraine::lexicon {

KeyboardLayout KeyboardLayout::qwerty() {
  KeyboardLayout k;
  k.set_neighbors('q', "wa");
  k.set_neighbors('w', "qeasd");
  k.set_neighbors('e', "wrsdf");
  k.set_neighbors('r', "etdfg");
  k.set_neighbors('t', "ryfgh");
  k.set_neighbors('y', "tughj");
  k.set_neighbors('u', "yihjk");
  k.set_neighbors('i', "uojkl");
  k.set_neighbors('o', "ipkl");
  k.set_neighbors('p', "ol");
  k.set_neighbors('a', "qwsz");
  k.set_neighbors('s', "qweadzx");
  k.set_neighbors('d', "wersfxc");
  k.set_neighbors('f', "ertdgcv");
  k.set_neighbors('g', "rtyfhvb");
  k.set_neighbors('h', "tyugjbn");
  k.set_neighbors('j', "yuihknm");
  k.set_neighbors('k', "uiojlm");
  k.set_neighbors('l', "iopk");
  k.set_neighbors('z', "asx");
  k.set_neighbors('x', "zsdc");
  k.set_neighbors('c', "xdfv");
  k.set_neighbors('v', "cfgb");
  k.set_neighbors('b', "vghn");
  k.set_neighbors('n', "bhjm");
  k.set_neighbors('m', "njk");
  return k;
}

KeyboardLayout KeyboardLayout::load(const std::filesystem::path& path) {
  KeyboardLayout k;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto t = trim(lines[i]);
    if (t.empty() || t.front() == '#') continue;
    const auto cols = split(t, '\t');
    if (cols.size() != 2 || cols[0].size() != 1) {
      throw ConfigError(fmt::format("{}:{}: expected key<TAB>neighbours", path.string(), i + 1));
    }
    k.set_neighbors(cols[0][0], std::string(trim(cols[1])));
  }
  return k;
}

void KeyboardLayout::set_neighbors(char key, std::string neighbors) { table_[key] = std::move(neighbors); }

std::string_view KeyboardLayout::neighbors(char key) const {
  const auto it = table_.find(key);
  return it == table_.end() ? std::string_view{} : std::string_view{it->second};
}

bool KeyboardLayout::adjacent(char a, char b) const {
  return neighbors(a).find(b) != std::string_view::npos;
}

MisspellingFilters MisspellingFilters::defaults() {
  MisspellingFilters f;
  // Frequent English words that edit-distance variants of drug names tend to
  // collide with; a variant equal to one of these is noise, not a misspelling.
  for (auto w : {"about", "after", "again", "also", "amber", "anger", "angel", "arena", "atom",
                 "avert", "axes", "axle", "best", "boot", "boots", "boat", "bots", "both",
                 "botch", "boxer", "boxes", "call", "came", "come", "could", "dear", "done",
                 "door", "down", "each", "elect", "even", "ever", "ezra", "fort", "forte", "frog",
                 "from", "front", "gave", "give", "good", "have", "here", "into", "just", "know",
                 "like", "made", "make", "many", "marx", "max", "maxi", "merge", "more", "most",
                 "much", "must", "name", "near", "never", "next", "none", "nurse", "once", "only",
                 "other", "over", "part", "relax", "rely", "said", "same", "says", "some",
                 "still", "such", "take", "than", "that", "them", "then", "there", "these",
                 "they", "this", "time", "took", "topaz", "toppo", "under", "very", "want",
                 "well", "went", "were", "what", "when", "where", "which", "while", "will",
                 "with", "work", "would", "year", "your", "zoom", "zombie"}) {
    f.blocklist.emplace(w);
  }
  return f;
}

MisspellingFilters MisspellingFilters::load_blocklist(const std::filesystem::path& path) {
  MisspellingFilters f;
  for (const auto& line : read_lines(path)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    f.blocklist.emplace(t);
  }
  return f;
}

bool MisspellingFilters::accepts(std::string_view candidate, std::string_view term) const {
  if (candidate.size() < min_length) return false;
  if (keep_first_char && (candidate.empty() || term.empty() || candidate.front() != term.front())) {
    return false;
  }
  return !blocklist.contains(candidate);
}

std::set<std::string> single_edits(std::string_view term, const KeyboardLayout& keyboard) {
  std::set<std::string> out;
  const std::string s(term);
  const auto n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    // deletion
    out.insert(s.substr(0, i) + s.substr(i + 1));
    // adjacent-key substitution
    for (char c : keyboard.neighbors(s[i])) {
      auto v = s;
      v[i] = c;
      out.insert(std::move(v));
    }
    // letter doubling
    out.insert(s.substr(0, i + 1) + s[i] + s.substr(i + 1));
    // transposition of neighbours
    if (i + 1 < n && s[i] != s[i + 1]) {
      auto v = s;
      std::swap(v[i], v[i + 1]);
      out.insert(std::move(v));
    }
  }
  out.erase(s);
  return out;
}

std::vector<std::string> generate_misspellings(std::string_view term, int max_edits,
                                               const MisspellingFilters& filters,
                                               const KeyboardLayout& keyboard) {
  if (term.size() < 4) {
    throw ArgumentError(fmt::format("misspelling source '{}' is shorter than 4 characters", term));
  }
  if (max_edits < 0 || max_edits > 2) throw ArgumentError("max_edits must be 0, 1 or 2");

  std::set<std::string> reached{std::string(term)};
  std::set<std::string> frontier{std::string(term)};
  for (int depth = 0; depth < max_edits; ++depth) {
    std::set<std::string> next;
    for (const auto& s : frontier) {
      for (auto& v : single_edits(s, keyboard)) {
        if (!reached.contains(v)) next.insert(std::move(v));
      }
    }
    reached.insert(next.begin(), next.end());
    frontier = std::move(next);
  }

  std::vector<std::string> out;
  for (const auto& v : reached) {
    if (v == term || filters.accepts(v, term)) out.push_back(v);
  }
  return out;
}

}  // namespace migraine::lexicon
