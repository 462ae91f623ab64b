#include "migraine/normalize.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "migraine/common.hpp"
#include "migraine/unicode.hpp"

namespace migraine::text {

namespace {

constexpr std::string_view kPunct = R"(!"#$%&'()*+,-./:;<=>?@[\]^_`{|}~)";

bool is_punct(char c) { return kPunct.find(c) != std::string_view::npos; }

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

bool is_word_byte(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || is_ascii_digit(c) || c == '_';
}

std::string_view strip_trailing_punct(std::string_view s) {
  while (!s.empty() && is_punct(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view strip_leading_punct_except(std::string_view s, std::string_view keep) {
  while (!s.empty() && is_punct(s.front()) && keep.find(s.front()) == std::string_view::npos) {
    s.remove_prefix(1);
  }
  return s;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

bool is_url(std::string_view s) {
  return starts_with_ci(s, "http://") || starts_with_ci(s, "https://") || starts_with_ci(s, "www.");
}

// [+-]?\d+([.,:]\d+)*
bool is_number(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  bool need_digit = true;
  bool any = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (is_ascii_digit(c)) {
      need_digit = false;
      any = true;
    } else if ((c == '.' || c == ',' || c == ':') && !need_digit) {
      need_digit = true;
    } else {
      return false;
    }
  }
  return any && !need_digit;
}

struct WordResult {
  std::string word;
  bool elongated = false;
  bool all_caps = false;
  bool number = false;
};

WordResult process_word(std::string_view word) {
  WordResult r;
  if (is_number(word)) {
    r.number = true;
    return r;
  }

  // Collapse runs of 3+ identical letters to 2.
  std::string collapsed;
  char32_t prev = 0;
  int run = 0;
  for (std::size_t i = 0; i < word.size();) {
    const auto d = unicode::decode_at(word, i);
    if (d.cp == prev && unicode::is_alpha(d.cp)) {
      ++run;
    } else {
      prev = d.cp;
      run = 1;
    }
    if (run <= 2) {
      collapsed.append(word.substr(i, d.length));
    } else {
      r.elongated = true;
    }
    i += d.length;
  }

  std::size_t letters = 0;
  bool caps = true;
  for (std::size_t i = 0; i < collapsed.size();) {
    const auto d = unicode::decode_at(collapsed, i);
    if (unicode::is_alpha(d.cp)) {
      ++letters;
      if (!unicode::is_upper(d.cp)) caps = false;
    } else if (d.cp != '\'') {
      caps = false;
    }
    i += d.length;
  }
  r.all_caps = caps && letters >= 2;
  r.word = unicode::fold_case(collapsed);
  return r;
}

void split_whitespace(std::string_view raw, std::vector<std::string_view>& out) {
  std::size_t start = std::string_view::npos;
  for (std::size_t i = 0; i < raw.size();) {
    const auto d = unicode::decode_at(raw, i);
    if (unicode::is_space(d.cp)) {
      if (start != std::string_view::npos) out.push_back(raw.substr(start, i - start));
      start = std::string_view::npos;
    } else if (start == std::string_view::npos) {
      start = i;
    }
    i += d.length;
  }
  if (start != std::string_view::npos) out.push_back(raw.substr(start));
}

}  // namespace

std::string NormalizedText::render() const { return join(tokens, " "); }

bool is_marker_syntax(std::string_view t) {
  if (t.size() < 3 || t.front() != '<' || t.back() != '>') return false;
  return std::all_of(t.begin() + 1, t.end() - 1, [](char c) { return (c >= 'a' && c <= 'z') || c == '_'; });
}

SmileyTable SmileyTable::defaults() {
  SmileyTable t;
  for (auto s : {":)", ":-)", "(:", ":]", "=)", ";)", ";-)"}) t.add(s, "<smile>");
  for (auto s : {":D", ":-D", "xD", "XD"}) t.add(s, "<lolface>");
  for (auto s : {":(", ":-(", "):", ":'(", ":[", "=("}) t.add(s, "<sadface>");
  for (auto s : {":|", ":/", ":-/", ":-|"}) t.add(s, "<neutralface>");
  t.add("<3", "<heart>");
  return t;
}

SmileyTable SmileyTable::load(const std::filesystem::path& path) {
  SmileyTable t;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    if (trim(line).empty() || line.front() == '#') continue;
    const auto cols = split(line, '\t');
    if (cols.size() < 2) {
      throw ConfigError(fmt::format("{}:{}: expected surface<TAB>tag", path.string(), i + 1));
    }
    try {
      t.add(std::string(cols[0]), std::string(trim(cols[1])));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}:{}: {}", path.string(), i + 1, e.what()));
    }
  }
  return t;
}

void SmileyTable::add(std::string surface, std::string tag) {
  if (surface.empty()) throw ConfigError("empty smiley surface");
  if (!is_marker_syntax(tag)) throw ConfigError("smiley tag '" + tag + "' is not a <lowercase> marker");
  if (!map_.emplace(std::move(surface), std::move(tag)).second) {
    throw ConfigError("duplicate smiley surface");
  }
}

const std::string* SmileyTable::find(std::string_view surface) const {
  const auto it = map_.find(surface);
  return it == map_.end() ? nullptr : &it->second;
}

std::set<std::string, std::less<>> SmileyTable::tags() const {
  std::set<std::string, std::less<>> out;
  for (const auto& [_, tag] : map_) out.insert(tag);
  return out;
}

NormalizedText normalize_text(std::string_view raw, const SmileyTable& smileys) {
  NormalizedText out;
  out.source_length = unicode::length(raw);

  auto markers = smileys.tags();
  for (auto m : {kNumber, kUser, kUrl, kHashtag, kAllCaps, kElong}) markers.emplace(m);

  std::vector<std::string_view> chunks;
  split_whitespace(raw, chunks);
  for (const auto chunk : chunks) {
    if (markers.contains(chunk)) {
      out.tokens.emplace_back(chunk);
      continue;
    }
    const auto lead = strip_leading_punct_except(chunk, "#@+-");
    if (is_url(lead)) {
      out.tokens.emplace_back(kUrl);
      continue;
    }
    if (lead.size() >= 2 && lead[0] == '@' && is_word_byte(lead[1])) {
      out.tokens.emplace_back(kUser);
      continue;
    }
    const auto core = strip_trailing_punct(lead);
    if (is_number(core)) {
      out.tokens.emplace_back(kNumber);
      continue;
    }
    if (const auto* tag = smileys.find(chunk)) {
      out.tokens.push_back(*tag);
      continue;
    }
    if (core.size() >= 2 && core[0] == '#' && !is_punct(core[1])) {
      out.tokens.emplace_back(kHashtag);
      const auto r = process_word(core.substr(1));
      out.tokens.push_back(r.number ? std::string(kNumber) : r.word);
      continue;
    }
    // Plain word: drop surrounding ASCII punctuation, keep anything inside.
    const auto word = strip_trailing_punct(strip_leading_punct_except(chunk, ""));
    if (word.empty()) continue;
    const auto r = process_word(word);
    if (r.number) {
      out.tokens.emplace_back(kNumber);
      continue;
    }
    out.tokens.push_back(r.word);
    if (r.all_caps) {
      out.tokens.emplace_back(kAllCaps);
    } else if (r.elongated) {
      out.tokens.emplace_back(kElong);
    }
  }
  return out;
}

AbbreviationList AbbreviationList::defaults() {
  AbbreviationList a;
  for (auto s : {"e.g.", "i.e.", "dr.", "mr.", "mrs.", "ms.", "mg.", "ml.", "vs.", "approx.", "prof.",
                 "jr.", "sr.", "st.", "no.", "u.s."}) {
    a.add(s);
  }
  return a;
}

AbbreviationList AbbreviationList::load(const std::filesystem::path& path) {
  AbbreviationList a;
  for (const auto& line : read_lines(path)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    a.add(std::string(trim(split(t, '\t')[0])));
  }
  return a;
}

void AbbreviationList::add(std::string abbreviation) { items_.insert(unicode::fold_case(abbreviation)); }

bool AbbreviationList::contains(std::string_view folded) const { return items_.contains(folded); }

std::vector<std::string> split_sentences(std::string_view raw, const AbbreviationList& abbreviations) {
  std::vector<std::string> sentences;
  auto emit = [&](std::size_t from, std::size_t to) {
    const auto s = trim(raw.substr(from, to - from));
    if (!s.empty()) sentences.emplace_back(s);
  };

  std::size_t sentence_start = 0;
  std::size_t token_start = 0;
  bool at_token_start = true;

  std::size_t i = 0;
  while (i < raw.size()) {
    const auto d = unicode::decode_at(raw, i);
    if (unicode::is_space(d.cp)) {
      // A whitespace run containing a newline is a boundary.
      std::size_t j = i;
      bool newline = false;
      while (j < raw.size()) {
        const auto dj = unicode::decode_at(raw, j);
        if (!unicode::is_space(dj.cp)) break;
        if (dj.cp == '\n' || dj.cp == '\r' || dj.cp == 0x2028 || dj.cp == 0x2029) newline = true;
        j += dj.length;
      }
      if (newline) {
        emit(sentence_start, i);
        sentence_start = j;
      }
      i = j;
      at_token_start = true;
      continue;
    }
    if (at_token_start) {
      token_start = i;
      at_token_start = false;
    }
    const char c = raw[i];
    if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i;
      while (j < raw.size() && (raw[j] == '.' || raw[j] == '!' || raw[j] == '?')) ++j;
      const std::size_t run_end = j;
      while (j < raw.size() && (raw[j] == ')' || raw[j] == '"' || raw[j] == '\'' || raw[j] == ']')) ++j;
      const bool followed_by_break = j == raw.size() || unicode::is_space(unicode::decode_at(raw, j).cp);
      bool boundary = followed_by_break;
      if (boundary && run_end == i + 1 && c == '.') {
        const auto word = strip_leading_punct_except(raw.substr(token_start, i + 1 - token_start), "");
        if (abbreviations.contains(unicode::fold_case(word))) boundary = false;
      }
      if (boundary) {
        emit(sentence_start, j);
        sentence_start = j;
      }
      i = j;
      continue;
    }
    i += d.length;
  }
  emit(sentence_start, raw.size());
  return sentences;
}

}  // namespace migraine::text
