#include "migraine/bias.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "migraine/unicode.hpp"

namespace migraine::bias {

void SwapTable::add_pair(std::string_view a, std::string_view b) {
  auto la = unicode::fold_case(trim(a));
  auto lb = unicode::fold_case(trim(b));
  if (la.empty() || lb.empty()) throw ConfigError("swap table: empty word");
  if (la == lb) throw ConfigError(fmt::format("swap table: '{}' paired with itself", la));
  for (const auto& w : {la, lb}) {
    if (partner_.count(w)) throw ConfigError(fmt::format("swap table ({}): '{}' appears in two pairs", category_, w));
  }
  partner_.emplace(la, lb);
  partner_.emplace(lb, la);
  pairs_.emplace_back(std::move(la), std::move(lb));
}

std::optional<std::string_view> SwapTable::partner(std::string_view lowercase_word) const {
  const auto it = partner_.find(lowercase_word);
  if (it == partner_.end()) return std::nullopt;
  return std::string_view(it->second);
}

SwapTable SwapTable::defaults(std::string_view category) {
  SwapTable t{std::string(category)};
  if (category == "gender") {
    // "her" can only have one partner; "his" is the one the possessive needs.
    static const char* const kGender[][2] = {
        {"he", "she"},           {"his", "her"},         {"himself", "herself"},
        {"man", "woman"},        {"men", "women"},       {"boy", "girl"},
        {"boys", "girls"},       {"husband", "wife"},    {"husbands", "wives"},
        {"mr", "ms"},            {"male", "female"},     {"father", "mother"},
        {"dad", "mom"},          {"son", "daughter"},    {"sons", "daughters"},
        {"brother", "sister"},   {"brothers", "sisters"}, {"boyfriend", "girlfriend"},
        {"uncle", "aunt"},       {"nephew", "niece"},    {"grandfather", "grandmother"},
        {"grandpa", "grandma"},  {"gentleman", "lady"},  {"gentlemen", "ladies"},
        {"king", "queen"},       {"sir", "madam"},       {"guy", "gal"},
    };
    for (const auto& p : kGender) t.add_pair(p[0], p[1]);
  } else if (category == "race") {
    static const char* const kRace[][2] = {
        {"black", "white"},
        {"african", "european"},
        {"hispanic", "caucasian"},
        {"latino", "anglo"},
    };
    for (const auto& p : kRace) t.add_pair(p[0], p[1]);
  } else {
    throw ConfigError(fmt::format("unknown swap category '{}'", category));
  }
  return t;
}

std::map<std::string, SwapTable> parse_swap_tables(std::string_view text, std::string_view origin) {
  std::map<std::string, SwapTable> out;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw ConfigError(fmt::format("{}:{}: expected word_a<TAB>word_b<TAB>category", origin, line_no));
    }
    const std::string category(trim(fields[2]));
    if (category != "gender" && category != "race") {
      throw ConfigError(fmt::format("{}:{}: unknown category '{}'", origin, line_no, category));
    }
    auto it = out.try_emplace(category, category).first;
    try {
      it->second.add_pair(fields[0], fields[1]);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}:{}: {}", origin, line_no, e.what()));
    }
  }
  return out;
}

std::map<std::string, SwapTable> load_swap_tables(const std::filesystem::path& path) {
  return parse_swap_tables(read_file(path), path.string());
}

namespace {

enum class Casing { lower, title, upper, mixed };

Casing casing_of(std::string_view word) {
  std::size_t n = 0, uppers = 0;
  bool first_upper = false;
  for (std::size_t i = 0; i < word.size();) {
    const auto d = unicode::decode_at(word, i);
    if (unicode::is_upper(d.cp)) {
      ++uppers;
      if (n == 0) first_upper = true;
    }
    ++n;
    i += d.length;
  }
  if (uppers == 0) return Casing::lower;
  if (first_upper && uppers == 1) return Casing::title;
  if (uppers == n && n >= 2) return Casing::upper;
  return Casing::mixed;
}

std::string recase(std::string_view lower, Casing c) {
  if (c == Casing::lower || c == Casing::mixed) return std::string(lower);
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < lower.size();) {
    const auto d = unicode::decode_at(lower, i);
    unicode::append_utf8(out, (c == Casing::upper || first) ? unicode::to_upper(d.cp) : d.cp);
    first = false;
    i += d.length;
  }
  return out;
}

}  // namespace

SwapResult apply_swaps(std::string_view raw, const SwapTable& table) {
  SwapResult r;
  r.text.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    auto d = unicode::decode_at(raw, i);
    if (!unicode::is_alpha(d.cp)) {
      r.text.append(raw.substr(i, d.length));
      i += d.length;
      continue;
    }
    std::size_t j = i;
    while (j < raw.size()) {
      d = unicode::decode_at(raw, j);
      if (!unicode::is_alpha(d.cp)) break;
      j += d.length;
    }
    const auto word = raw.substr(i, j - i);
    if (const auto p = table.partner(unicode::fold_case(word))) {
      r.text += recase(*p, casing_of(word));
      ++r.n_swaps;
    } else {
      r.text.append(word);
    }
    i = j;
  }
  return r;
}

BiasProbeReport probe_invariance(const PostClassifier& classifier, std::span<const corpus::Post> posts,
                                 const SwapTable& table, ProbeSampling sampling) {
  if (!(sampling.fraction > 0.0 && sampling.fraction <= 1.0)) {
    throw ArgumentError("probe_invariance: sample fraction must be in (0, 1]");
  }
  std::vector<std::size_t> chosen(posts.size());
  for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = i;
  if (sampling.fraction < 1.0 && !posts.empty()) {
    const auto k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(sampling.fraction * static_cast<double>(posts.size()))));
    Rng rng(sampling.seed);
    rng.shuffle(chosen);
    chosen.resize(std::min(k, chosen.size()));
    std::sort(chosen.begin(), chosen.end());
  }

  BiasProbeReport report;
  report.category = table.category();
  for (const auto i : chosen) {
    const auto& post = posts[i];
    ++report.n_examined;
    auto swapped = apply_swaps(post.text, table);
    if (swapped.n_swaps == 0) continue;
    ++report.n_with_swaps;
    ProbeRecord rec;
    rec.category = table.category();
    rec.key = corpus::key_of(post);
    rec.original_text = post.text;
    rec.n_swaps = swapped.n_swaps;
    rec.original = classifier(post);
    corpus::Post alt = post;
    alt.text = std::move(swapped.text);
    rec.swapped = classifier(alt);
    rec.swapped_text = std::move(alt.text);
    rec.flipped = rec.original.label != rec.swapped.label;
    report.n_flipped += rec.flipped;
    report.records.push_back(std::move(rec));
  }
  if (report.n_with_swaps > 0) {
    report.flip_rate = static_cast<double>(report.n_flipped) / static_cast<double>(report.n_with_swaps);
  }
  return report;
}

std::string serialize_probe_record(const ProbeRecord& r) {
  nlohmann::ordered_json j;
  j["category"] = r.category;
  j["platform"] = corpus::to_string(r.key.platform);
  j["id"] = r.key.id;
  j["n_swaps"] = r.n_swaps;
  j["original_label"] = to_string(r.original.label);
  j["original_score"] = r.original.score;
  j["swapped_label"] = to_string(r.swapped.label);
  j["swapped_score"] = r.swapped.score;
  j["flipped"] = r.flipped;
  j["original_text"] = r.original_text;
  j["swapped_text"] = r.swapped_text;
  return j.dump();
}

std::vector<TokenImportance> occlusion_importance(const std::function<double(std::string_view)>& score,
                                                  std::string_view raw) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < raw.size();) {
    auto d = unicode::decode_at(raw, i);
    if (unicode::is_space(d.cp)) {
      i += d.length;
      continue;
    }
    std::size_t j = i;
    while (j < raw.size() && !unicode::is_space((d = unicode::decode_at(raw, j)).cp)) j += d.length;
    tokens.emplace_back(raw.substr(i, j - i));
    i = j;
  }
  std::vector<TokenImportance> out;
  if (tokens.empty()) return out;

  const double full = score(join(tokens, " "));
  std::vector<std::string> rest;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    rest.clear();
    for (std::size_t m = 0; m < tokens.size(); ++m) {
      if (m != k) rest.push_back(tokens[m]);
    }
    out.push_back({tokens[k], k, full - score(join(rest, " "))});
  }
  return out;
}

}  // namespace migraine::bias
