#include "migraine/sentiment.hpp"

#include <fmt/format.h>
#include <unicode/uchar.h>
#include <unicode/ustring.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "migraine/unicode.hpp"

namespace migraine::sentiment {

// The scorer reproduces a widely used rule-based compound score bit for bit,
// including its quirks. The string helpers below mirror Python's str methods
// because the reference tool's tokenization is defined in terms of them.
namespace {

constexpr double kBoostIncr = 0.293;
constexpr double kBoostDecr = -0.293;
constexpr double kCapsIncr = 0.733;
constexpr double kNegationScalar = -0.74;
constexpr double kAlpha = 15.0;

const std::unordered_set<std::string_view>& negations() {
  static const std::unordered_set<std::string_view> s = {
      "aint",     "arent",    "cannot",  "cant",     "couldnt",  "darent",   "didnt",   "doesnt",
      "ain't",    "aren't",   "can't",   "couldn't", "daren't",  "didn't",   "doesn't", "dont",
      "hadnt",    "hasnt",    "havent",  "isnt",     "mightnt",  "mustnt",   "neither", "don't",
      "hadn't",   "hasn't",   "haven't", "isn't",    "mightn't", "mustn't",  "neednt",  "needn't",
      "never",    "none",     "nope",    "nor",      "not",      "nothing",  "nowhere", "oughtnt",
      "shant",    "shouldnt", "uhuh",    "wasnt",    "werent",   "oughtn't", "shan't",  "shouldn't",
      "uh-uh",    "wasn't",   "weren't", "without",  "wont",     "wouldnt",  "won't",   "wouldn't",
      "rarely",   "seldom",   "despite"};
  return s;
}

const std::unordered_map<std::string_view, double>& boosters() {
  static const std::unordered_map<std::string_view, double> m = [] {
    std::unordered_map<std::string_view, double> b;
    for (auto w : {"absolutely", "amazingly", "awfully", "completely", "considerable", "considerably", "decidedly",
                   "deeply", "effing", "enormous", "enormously", "entirely", "especially", "exceptional",
                   "exceptionally", "extreme", "extremely", "fabulously", "flipping", "flippin", "frackin",
                   "fracking", "fricking", "frickin", "frigging", "friggin", "fully", "fuckin", "fucking",
                   "fuggin", "fugging", "greatly", "hella", "highly", "hugely", "incredible", "incredibly",
                   "intensely", "major", "majorly", "more", "most", "particularly", "purely", "quite", "really",
                   "remarkably", "so", "substantially", "thoroughly", "total", "totally", "tremendous",
                   "tremendously", "uber", "unbelievably", "unusually", "utter", "utterly", "very"}) {
      b.emplace(w, kBoostIncr);
    }
    for (auto w : {"almost", "barely", "hardly", "just enough", "kind of", "kinda", "kindof", "kind-of", "less",
                   "little", "marginal", "marginally", "occasional", "occasionally", "partly", "scarce",
                   "scarcely", "slight", "slightly", "somewhat", "sort of", "sorta", "sortof", "sort-of"}) {
      b.emplace(w, kBoostDecr);
    }
    return b;
  }();
  return m;
}

const std::unordered_map<std::string_view, double>& special_cases() {
  static const std::unordered_map<std::string_view, double> m = {
      {"the shit", 3},    {"the bomb", 3},     {"bad ass", 1.5},       {"badass", 1.5},   {"bus stop", 0.0},
      {"yeah right", -2}, {"kiss of death", -1.5}, {"to die for", 3}, {"beating heart", 3.5}};
  return m;
}

bool py_isspace(char32_t c) {
  return (c >= 0x09 && c <= 0x0D) || (c >= 0x1C && c <= 0x20) || c == 0x85 || c == 0xA0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F ||
         c == 0x3000;
}

std::string_view py_strip(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size()) {
    const auto d = unicode::decode_at(s, b);
    if (!py_isspace(d.cp)) break;
    b += d.length;
  }
  std::size_t e = s.size();
  while (e > b) {
    const auto d = unicode::decode_before(s, e);
    if (!py_isspace(d.cp)) break;
    e -= d.length;
  }
  return s.substr(b, e - b);
}

std::vector<std::string> py_split(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    auto d = unicode::decode_at(s, i);
    if (py_isspace(d.cp)) {
      i += d.length;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && !py_isspace((d = unicode::decode_at(s, j)).cp)) j += d.length;
    out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_ascii_punct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

// Strips leading/trailing ASCII punctuation unless that leaves two or fewer
// characters, which keeps emoticons like ":)" intact.
std::string strip_punct_if_word(const std::string& token) {
  std::size_t b = 0, e = token.size();
  while (b < e && is_ascii_punct(token[b])) ++b;
  while (e > b && is_ascii_punct(token[e - 1])) --e;
  const auto stripped = std::string_view(token).substr(b, e - b);
  if (unicode::length(stripped) <= 2) return token;
  return std::string(stripped);
}

std::string py_lower(std::string_view s) {
  if (std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; })) {
    std::string out(s);
    for (auto& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
  }
  UErrorCode status = U_ZERO_ERROR;
  int32_t n16 = 0;
  u_strFromUTF8WithSub(nullptr, 0, &n16, s.data(), static_cast<int32_t>(s.size()), 0xFFFD, nullptr, &status);
  std::vector<UChar> src(static_cast<std::size_t>(n16) + 1);
  status = U_ZERO_ERROR;
  u_strFromUTF8WithSub(src.data(), static_cast<int32_t>(src.size()), &n16, s.data(),
                       static_cast<int32_t>(s.size()), 0xFFFD, nullptr, &status);
  std::vector<UChar> dst(static_cast<std::size_t>(n16) * 3 + 1);
  status = U_ZERO_ERROR;
  const int32_t nl = u_strToLower(dst.data(), static_cast<int32_t>(dst.size()), src.data(), n16, "", &status);
  if (U_FAILURE(status)) throw Error("lowercasing failed");
  int32_t n8 = 0;
  status = U_ZERO_ERROR;
  u_strToUTF8(nullptr, 0, &n8, dst.data(), nl, &status);
  std::string out(static_cast<std::size_t>(n8), '\0');
  status = U_ZERO_ERROR;
  u_strToUTF8(out.data(), n8, &n8, dst.data(), nl, &status);
  return out;
}

// str.isupper(): at least one cased character and none lowercase/titlecase.
bool py_isupper(std::string_view s) {
  bool cased = false;
  for (std::size_t i = 0; i < s.size();) {
    const auto d = unicode::decode_at(s, i);
    const auto c = static_cast<UChar32>(d.cp);
    if (u_hasBinaryProperty(c, UCHAR_LOWERCASE) || u_charType(c) == U_TITLECASE_LETTER) return false;
    if (u_hasBinaryProperty(c, UCHAR_UPPERCASE)) cased = true;
    i += d.length;
  }
  return cased;
}

struct Word {
  std::string text;
  std::string lower;
  bool upper;
};

bool negated(std::string_view lower) {
  return negations().count(lower) > 0 || lower.find("n't") != std::string_view::npos;
}

double scalar_inc_dec(const Word& w, double valence, bool cap_diff) {
  const auto it = boosters().find(w.lower);
  if (it == boosters().end()) return 0.0;
  double scalar = it->second;
  if (valence < 0) scalar *= -1;
  if (w.upper && cap_diff) {
    if (valence > 0) {
      scalar += kCapsIncr;
    } else {
      scalar -= kCapsIncr;
    }
  }
  return scalar;
}

class Scorer {
 public:
  Scorer(std::vector<Word> words, const SentimentLexicon& lex) : w_(std::move(words)), lex_(lex) {
    std::size_t caps = 0;
    for (const auto& w : w_) caps += w.upper;
    const auto diff = w_.size() - caps;
    cap_diff_ = diff > 0 && diff < w_.size();
  }

  std::vector<double> sentiments() {
    std::vector<double> s;
    s.reserve(w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (boosters().count(w_[i].lower)) {
        s.push_back(0);
        continue;
      }
      if (i + 1 < w_.size() && w_[i].lower == "kind" && w_[i + 1].lower == "of") {
        s.push_back(0);
        continue;
      }
      s.push_back(valence_at(i));
    }
    but_check(s);
    return s;
  }

 private:
  const std::string& lw(std::size_t i) const { return w_[i].lower; }
  bool in_lex(std::size_t i) const { return lex_.contains(lw(i)); }

  double valence_at(std::size_t i) const {
    const auto base = lex_.valence(lw(i));
    if (!base) return 0;
    double valence = *base;
    const auto n = w_.size();
    if (lw(i) == "no" && i != n - 1 && in_lex(i + 1)) valence = 0.0;
    if ((i > 0 && lw(i - 1) == "no") || (i > 1 && lw(i - 2) == "no") ||
        (i > 2 && lw(i - 3) == "no" && (lw(i - 1) == "or" || lw(i - 1) == "nor"))) {
      valence = *base * kNegationScalar;
    }
    if (w_[i].upper && cap_diff_) {
      if (valence > 0) {
        valence += kCapsIncr;
      } else {
        valence -= kCapsIncr;
      }
    }
    for (std::size_t start = 0; start < 3; ++start) {
      if (i > start && !in_lex(i - (start + 1))) {
        double s = scalar_inc_dec(w_[i - (start + 1)], valence, cap_diff_);
        if (start == 1 && s != 0) s = s * 0.95;
        if (start == 2 && s != 0) s = s * 0.9;
        valence = valence + s;
        valence = negation_check(valence, start, i);
        if (start == 2) valence = special_idioms_check(valence, i);
      }
    }
    return least_check(valence, i);
  }

  double negation_check(double valence, std::size_t start, std::size_t i) const {
    if (start == 0) {
      if (negated(lw(i - 1))) valence = valence * kNegationScalar;
    } else if (start == 1) {
      if (lw(i - 2) == "never" && (lw(i - 1) == "so" || lw(i - 1) == "this")) {
        valence = valence * 1.25;
      } else if (lw(i - 2) == "without" && lw(i - 1) == "doubt") {
      } else if (negated(lw(i - 2))) {
        valence = valence * kNegationScalar;
      }
    } else {
      // The reference groups this as (never && so/this two back) || so/this one back.
      if ((lw(i - 3) == "never" && (lw(i - 2) == "so" || lw(i - 2) == "this")) ||
          (lw(i - 1) == "so" || lw(i - 1) == "this")) {
        valence = valence * 1.25;
      } else if (lw(i - 3) == "without" && (lw(i - 2) == "doubt" || lw(i - 1) == "doubt")) {
      } else if (negated(lw(i - 3))) {
        valence = valence * kNegationScalar;
      }
    }
    return valence;
  }

  double special_idioms_check(double valence, std::size_t i) const {
    const auto onezero = lw(i - 1) + " " + lw(i);
    const auto twoonezero = lw(i - 2) + " " + lw(i - 1) + " " + lw(i);
    const auto twoone = lw(i - 2) + " " + lw(i - 1);
    const auto threetwoone = lw(i - 3) + " " + lw(i - 2) + " " + lw(i - 1);
    const auto threetwo = lw(i - 3) + " " + lw(i - 2);
    const auto& sc = special_cases();
    for (const auto* seq : {&onezero, &twoonezero, &twoone, &threetwoone, &threetwo}) {
      if (const auto it = sc.find(*seq); it != sc.end()) {
        valence = it->second;
        break;
      }
    }
    const auto n = w_.size();
    if (n - 1 > i) {
      if (const auto it = sc.find(lw(i) + " " + lw(i + 1)); it != sc.end()) valence = it->second;
    }
    if (n - 1 > i + 1) {
      if (const auto it = sc.find(lw(i) + " " + lw(i + 1) + " " + lw(i + 2)); it != sc.end()) valence = it->second;
    }
    for (const auto* gram : {&threetwoone, &threetwo, &twoone}) {
      if (const auto it = boosters().find(*gram); it != boosters().end()) valence = valence + it->second;
    }
    return valence;
  }

  double least_check(double valence, std::size_t i) const {
    if (i > 1 && !in_lex(i - 1) && lw(i - 1) == "least") {
      if (lw(i - 2) != "at" && lw(i - 2) != "very") valence = valence * kNegationScalar;
    } else if (i > 0 && !in_lex(i - 1) && lw(i - 1) == "least") {
      valence = valence * kNegationScalar;
    }
    return valence;
  }

  // Mirrors the reference exactly: each value is located by its first equal
  // occurrence, which differs from positional reweighting when values repeat.
  void but_check(std::vector<double>& s) const {
    std::size_t bi = w_.size();
    for (std::size_t k = 0; k < w_.size(); ++k) {
      if (lw(k) == "but") {
        bi = k;
        break;
      }
    }
    if (bi == w_.size()) return;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double v = s[k];
      const auto si = static_cast<std::size_t>(std::find(s.begin(), s.end(), v) - s.begin());
      if (si < bi) {
        s[si] = v * 0.5;
      } else if (si > bi) {
        s[si] = v * 1.5;
      }
    }
  }

  std::vector<Word> w_;
  const SentimentLexicon& lex_;
  bool cap_diff_ = false;
};

double punctuation_emphasis(std::string_view text) {
  auto ep = std::count(text.begin(), text.end(), '!');
  if (ep > 4) ep = 4;
  const double ep_amp = static_cast<double>(ep) * 0.292;
  const auto qm = std::count(text.begin(), text.end(), '?');
  double qm_amp = 0;
  if (qm > 1) qm_amp = qm <= 3 ? static_cast<double>(qm) * 0.18 : 0.96;
  return ep_amp + qm_amp;
}

}  // namespace

SentimentLexicon SentimentLexicon::parse(std::string_view lexicon_text, std::string_view emoji_text,
                                         std::string_view origin) {
  SentimentLexicon lex;
  std::size_t line_no = 0;
  for (auto raw : split(lexicon_text, '\n')) {
    ++line_no;
    const auto line = py_strip(raw);
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() < 2) throw ConfigError(fmt::format("{}:{}: expected token<TAB>valence", origin, line_no));
    double v = 0;
    try {
      v = parse_double(fields[1], "valence");
    } catch (const ValidationError&) {
      throw ConfigError(fmt::format("{}:{}: bad valence '{}'", origin, line_no, fields[1]));
    }
    if (!(v >= -4.0 && v <= 4.0)) {
      throw ConfigError(fmt::format("{}:{}: valence {} outside [-4, 4]", origin, line_no, v));
    }
    lex.set_valence(std::string(fields[0]), v);
  }
  line_no = 0;
  for (auto raw : split(emoji_text, '\n')) {
    ++line_no;
    const auto line = py_strip(raw);
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() < 2) throw ConfigError(fmt::format("{} (emoji):{}: expected emoji<TAB>description", origin, line_no));
    // Only single code point emoji can ever match the per-character lookup.
    const auto d = unicode::decode_at(fields[0], 0);
    if (d.length == fields[0].size()) lex.set_emoji(d.cp, std::string(fields[1]));
  }
  return lex;
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& lexicon_path,
                                        const std::optional<std::filesystem::path>& emoji_path) {
  const auto emoji = emoji_path ? read_file(*emoji_path) : std::string();
  return parse(read_file(lexicon_path), emoji, lexicon_path.string());
}

void SentimentLexicon::set_valence(std::string token, double valence) {
  auto [it, inserted] = valences_.insert_or_assign(std::move(token), valence);
  if (!inserted) ++duplicates_;
}

void SentimentLexicon::set_emoji(char32_t emoji, std::string description) {
  emoji_.insert_or_assign(emoji, std::move(description));
}

std::optional<double> SentimentLexicon::valence(std::string_view token) const {
  const auto it = valences_.find(token);
  if (it == valences_.end()) return std::nullopt;
  return it->second;
}

const std::string* SentimentLexicon::emoji_description(char32_t cp) const {
  const auto it = emoji_.find(cp);
  return it == emoji_.end() ? nullptr : &it->second;
}

double score_text(std::string_view raw, const SentimentLexicon& lex) {
  std::string spelled;
  spelled.reserve(raw.size());
  bool prev_space = true;
  for (std::size_t i = 0; i < raw.size();) {
    const auto d = unicode::decode_at(raw, i);
    if (const auto* desc = lex.emoji_description(d.cp)) {
      if (!prev_space) spelled += ' ';
      spelled += *desc;
      prev_space = false;
    } else {
      spelled.append(raw.substr(i, d.length));
      prev_space = d.cp == U' ';
    }
    i += d.length;
  }
  const auto text = py_strip(spelled);

  std::vector<Word> words;
  for (auto& tok : py_split(text)) {
    auto t = strip_punct_if_word(tok);
    auto lower = py_lower(t);
    const bool upper = py_isupper(t);
    words.push_back({std::move(t), std::move(lower), upper});
  }
  if (words.empty()) return 0.0;

  const auto sentiments = Scorer(std::move(words), lex).sentiments();
  double sum = 0;
  for (const double s : sentiments) sum += s;
  const double amp = punctuation_emphasis(text);
  if (sum > 0) {
    sum += amp;
  } else if (sum < 0) {
    sum -= amp;
  }
  const double norm = sum / std::sqrt(sum * sum + kAlpha);
  return std::clamp(norm, -1.0, 1.0);
}

const char* to_string(SentimentMode m) { return m == SentimentMode::per_post ? "per_post" : "per_user_median"; }

std::optional<SentimentMode> parse_sentiment_mode(std::string_view s) {
  if (s == "per_post") return SentimentMode::per_post;
  if (s == "per_user_median") return SentimentMode::per_user_median;
  return std::nullopt;
}

}  // namespace migraine::sentiment
