#include "migraine/lexicon.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <set>

#include "migraine/common.hpp"
#include "migraine/log.hpp"
#include "migraine/unicode.hpp"

namespace migraine::lexicon {

// Byte-level Aho-Corasick automaton with sparse transitions.
class AhoCorasick {
 public:
  void add(std::string_view pattern, std::size_t id) {
    std::size_t node = 0;
    for (unsigned char c : pattern) {
      auto next = child(node, c);
      if (next == kNone) {
        next = nodes_.size();
        nodes_[node].children.emplace_back(c, next);
        nodes_.emplace_back();
      }
      node = next;
    }
    nodes_[node].output = id;
    nodes_[node].depth = pattern.size();
  }

  void finalize() {
    for (auto& n : nodes_) std::sort(n.children.begin(), n.children.end());
    finalized_ = true;
    std::deque<std::size_t> queue;
    for (const auto& [c, next] : nodes_[0].children) queue.push_back(next);
    while (!queue.empty()) {
      const auto node = queue.front();
      queue.pop_front();
      for (const auto& [c, next] : nodes_[node].children) {
        std::size_t f = nodes_[node].fail;
        std::size_t target = kNone;
        while (true) {
          target = child(f, c);
          if (target != kNone || f == 0) break;
          f = nodes_[f].fail;
        }
        const std::size_t fail = (node != 0 && target != kNone) ? target : 0;
        nodes_[next].fail = fail;
        nodes_[next].dict_link = nodes_[fail].output != kNone ? fail : nodes_[fail].dict_link;
        queue.push_back(next);
      }
    }
  }

  /// Calls on_hit(end_offset, pattern_id, pattern_length) for every occurrence.
  template <typename F>
  void scan(std::string_view text, F&& on_hit) const {
    std::size_t node = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      const auto c = static_cast<unsigned char>(text[i]);
      std::size_t next = child(node, c);
      while (next == kNone && node != 0) {
        node = nodes_[node].fail;
        next = child(node, c);
      }
      node = next == kNone ? 0 : next;
      if (nodes_[node].output != kNone) on_hit(i + 1, nodes_[node].output, nodes_[node].depth);
      for (auto n = nodes_[node].dict_link; n != kNone; n = nodes_[n].dict_link) {
        on_hit(i + 1, nodes_[n].output, nodes_[n].depth);
      }
    }
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Node {
    std::vector<std::pair<unsigned char, std::size_t>> children;
    std::size_t fail = 0;
    std::size_t output = kNone;
    std::size_t depth = 0;
    std::size_t dict_link = kNone;  // nearest proper suffix node with an output
  };

  std::size_t child(std::size_t node, unsigned char c) const {
    const auto& ch = nodes_[node].children;
    if (finalized_) {
      const auto it = std::lower_bound(ch.begin(), ch.end(), c,
                                       [](const auto& kv, unsigned char key) { return kv.first < key; });
      return (it != ch.end() && it->first == c) ? it->second : kNone;
    }
    for (const auto& [k, v] : ch) {
      if (k == c) return v;
    }
    return kNone;
  }

  std::vector<Node> nodes_{1};
  bool finalized_ = false;
};

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> split_list(std::string_view field) {
  std::vector<std::string> out;
  for (auto part : split(field, ',')) {
    const auto t = trim(part);
    if (!t.empty()) out.push_back(unicode::fold_case(t));
  }
  return out;
}

bool word_char_before(std::string_view text, std::size_t pos) {
  return pos > 0 && unicode::is_alnum(unicode::decode_before(text, pos).cp);
}

bool word_char_at(std::string_view text, std::size_t pos) {
  return pos < text.size() && unicode::is_alnum(unicode::decode_at(text, pos).cp);
}

}  // namespace

MedicationConfig MedicationConfig::parse(std::string_view text, std::string_view origin) {
  MedicationConfig cfg;
  std::size_t line_no = 0;
  for (auto raw_line : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    if (line.starts_with("!group")) {
      const auto name = trim(line.substr(6));
      if (name.empty()) throw ConfigError(fmt::format("{}:{}: empty group name", origin, line_no));
      if (std::find(cfg.groups.begin(), cfg.groups.end(), name) != cfg.groups.end()) {
        throw ConfigError(fmt::format("{}:{}: duplicate group '{}'", origin, line_no, name));
      }
      cfg.groups.emplace_back(name);
      continue;
    }
    const auto cols = split(line, '|');
    if (cols.size() != 3) {
      throw ConfigError(fmt::format("{}:{}: expected generic|brands|group", origin, line_no));
    }
    Row row{split_list(cols[0]), split_list(cols[1]), std::string(trim(cols[2]))};
    if (row.generics.empty()) throw ConfigError(fmt::format("{}:{}: empty generic name", origin, line_no));
    if (std::find(cfg.groups.begin(), cfg.groups.end(), row.group) == cfg.groups.end()) {
      throw ConfigError(
          fmt::format("{}:{}: entry '{}' references undeclared group '{}'", origin, line_no, row.generics[0], row.group));
    }
    cfg.rows.push_back(std::move(row));
  }
  return cfg;
}

MedicationConfig MedicationConfig::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

MedicationConfig MedicationConfig::defaults() {
  static constexpr std::string_view kDefault = R"(!group Topiramate
!group Beta Blockers
!group Tricyclic antidepressants
!group OnabotulinumtoxinA
!group CGRP monoclonal antibodies
!group Gepants
!group Triptans
!group Lasmiditan
!group Dihydroergotamine
topiramate|topamax|Topiramate
propranolol|inderal|Beta Blockers
atenolol|tenormin,enormin|Beta Blockers
metoprolol|toprol|Beta Blockers
amitriptyline|elavil|Tricyclic antidepressants
nortriptyline|pamelor|Tricyclic antidepressants
onabotulinumtoxina|botox|OnabotulinumtoxinA
erenumab|aimovig|CGRP monoclonal antibodies
galcanezumab|emgality|CGRP monoclonal antibodies
fremanezumab|ajovy|CGRP monoclonal antibodies
eptinezumab|vyepti,vyepiti|CGRP monoclonal antibodies
atogepant|qulipta|Gepants
ubrogepant,ubrogapant|ubrelvy,ubrovelvy|Gepants
rimegepant|nurtec|Gepants
sumatriptan|imitrex|Triptans
rizatriptan|maxalt|Triptans
eletriptan|relpax|Triptans
naratriptan|amerge|Triptans
frovatriptan|frova|Triptans
zolmitriptan|zomig|Triptans
almotriptan|axert|Triptans
lasmiditan|reyvow|Lasmiditan
dihydroergotamine|dhe,migranal|Dihydroergotamine
)";
  return parse(kDefault, "<default medications>");
}

MedicationLexicon::MedicationLexicon() = default;
MedicationLexicon::MedicationLexicon(MedicationLexicon&&) noexcept = default;
MedicationLexicon& MedicationLexicon::operator=(MedicationLexicon&&) noexcept = default;
MedicationLexicon::~MedicationLexicon() = default;

std::optional<GroupId> MedicationLexicon::find_group(std::string_view name) const {
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    if (groups_[i] == name) return GroupId{i};
  }
  return std::nullopt;
}

MedicationLexicon MedicationLexicon::build(const MedicationConfig& config, int misspelling_depth,
                                           const MisspellingFilters& filters, const KeyboardLayout& keyboard) {
  if (misspelling_depth < 0 || misspelling_depth > 2) {
    throw ArgumentError("misspelling depth must be 0, 1 or 2");
  }
  MedicationLexicon lex;
  lex.depth_ = misspelling_depth;
  lex.groups_ = config.groups;

  for (const auto& row : config.rows) {
    MedicationEntry e;
    e.generic_name = row.generics.front();
    e.generic_aliases.assign(row.generics.begin() + 1, row.generics.end());
    e.brand_names = row.brands;
    e.group = *lex.find_group(row.group);
    lex.entries_.push_back(std::move(e));
  }

  // Canonical surfaces.
  for (std::size_t i = 0; i < lex.entries_.size(); ++i) {
    const auto& e = lex.entries_[i];
    std::vector<std::string> surfaces{e.generic_name};
    surfaces.insert(surfaces.end(), e.generic_aliases.begin(), e.generic_aliases.end());
    surfaces.insert(surfaces.end(), e.brand_names.begin(), e.brand_names.end());
    for (const auto& s : surfaces) {
      const auto [it, inserted] = lex.surface_index_.emplace(s, SurfaceInfo{i, false});
      if (!inserted && it->second.entry != i) {
        throw ConfigError(fmt::format("surface '{}' belongs to both '{}' and '{}'", s,
                                      lex.entries_[it->second.entry].generic_name, e.generic_name));
      }
    }
  }

  // Misspelling variants; a variant claimed by two entries is ambiguous.
  std::map<std::string, std::set<std::size_t>> variants;
  if (misspelling_depth > 0) {
    for (const auto& [surface, info] : lex.surface_index_) {
      if (surface.size() < 4) continue;
      for (auto& v : generate_misspellings(surface, misspelling_depth, filters, keyboard)) {
        variants[std::move(v)].insert(info.entry);
      }
    }
  }
  for (const auto& [variant, owners] : variants) {
    if (const auto it = lex.surface_index_.find(variant); it != lex.surface_index_.end()) {
      if (it->second.is_variant) continue;
      if (owners.size() > 1 || *owners.begin() != it->second.entry) {
        lex.warnings_.push_back(fmt::format("variant '{}' collides with canonical surface of '{}'; dropped",
                                            variant, lex.entries_[it->second.entry].generic_name));
      }
      continue;
    }
    if (owners.size() > 1) {
      std::string names;
      for (auto o : owners) {
        if (!names.empty()) names += ", ";
        names += lex.entries_[o].generic_name;
      }
      lex.warnings_.push_back(fmt::format("variant '{}' is ambiguous between {}; dropped", variant, names));
      continue;
    }
    lex.surface_index_.emplace(variant, SurfaceInfo{*owners.begin(), true});
  }
  for (const auto& w : lex.warnings_) log::write(log::Level::debug, w);
  if (!lex.warnings_.empty()) {
    log::warn(fmt::format("medication lexicon: {} misspelling variants dropped on collision", lex.warnings_.size()));
  }

  lex.automaton_ = std::make_unique<AhoCorasick>();
  lex.pattern_keys_.reserve(lex.surface_index_.size());
  for (const auto& [surface, info] : lex.surface_index_) {
    lex.automaton_->add(surface, lex.pattern_keys_.size());
    lex.pattern_keys_.push_back(&surface);
  }
  lex.automaton_->finalize();
  return lex;
}

std::vector<MedicationMatch> MedicationLexicon::match(std::string_view raw) const {
  const auto lowered = lower_ascii(raw);
  struct Hit {
    std::size_t start, end, pattern;
  };
  std::vector<Hit> hits;
  automaton_->scan(lowered, [&](std::size_t end, std::size_t id, std::size_t len) {
    const auto start = end - len;
    if (word_char_before(raw, start) || word_char_at(raw, end)) return;
    hits.push_back({start, end, id});
  });
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.end > b.end;
  });

  std::vector<MedicationMatch> out;
  std::size_t covered = 0;
  for (const auto& h : hits) {
    if (!out.empty() && h.start < covered) continue;
    const auto& key = *pattern_keys_[h.pattern];
    const auto& info = surface_index_.find(key)->second;
    out.push_back({h.start, h.end, key, info.entry, entries_[info.entry].group, info.is_variant});
    covered = h.end;
  }
  return out;
}

}  // namespace migraine::lexicon
