#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "migraine/sentiment.hpp"

namespace migraine::sentiment {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw ArgumentError("mean of empty data");
  double s = 0;
  for (const double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double lower_median(std::span<const double> xs) {
  if (xs.empty()) throw ArgumentError("median of empty data");
  std::vector<double> v(xs.begin(), xs.end());
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>((v.size() - 1) / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0;
  for (const double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

const ScoredPost& select_user_representative(std::span<const ScoredPost> scored) {
  if (scored.empty()) throw ArgumentError("select_user_representative: no scored posts");
  std::vector<std::size_t> idx(scored.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = scored[a];
    const auto& y = scored[b];
    return std::tie(x.score, x.post.created_at, x.post.id) < std::tie(y.score, y.post.created_at, y.post.id);
  });
  const double median = scored[idx[(idx.size() - 1) / 2]].score;
  // idx is ordered by time within equal scores, so the first hit is the earliest.
  for (const auto i : idx) {
    if (scored[i].score == median) return scored[i];
  }
  return scored[idx.front()];
}

std::vector<GroupEntry> build_group_entries(std::span<const corpus::Post> posts, SentimentMode mode,
                                            const lexicon::MedicationLexicon& meds, const SentimentLexicon& lex) {
  std::vector<GroupEntry> entries;
  std::map<std::pair<lexicon::GroupId, std::string>, std::vector<ScoredPost>> per_user;
  for (const auto& post : posts) {
    std::set<lexicon::GroupId> groups;
    for (const auto& m : meds.match(post.text)) groups.insert(m.group);
    if (groups.empty()) continue;
    const double score = score_text(post.text, lex);
    for (const auto g : groups) {
      if (mode == SentimentMode::per_post) {
        entries.push_back({g, post.author_id, post.id, score});
      } else {
        per_user[{g, post.author_id}].push_back({post, score});
      }
    }
  }
  for (const auto& [key, list] : per_user) {
    const auto& rep = select_user_representative(list);
    entries.push_back({key.first, key.second, rep.post.id, rep.score});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const GroupEntry& a, const GroupEntry& b) {
    return std::tie(a.group, a.author_id, a.post_id) < std::tie(b.group, b.author_id, b.post_id);
  });
  return entries;
}

std::vector<GroupStats> aggregate_group_stats(std::span<const GroupEntry> entries,
                                              const lexicon::MedicationLexicon& meds) {
  std::map<lexicon::GroupId, std::vector<double>> by_group;
  for (const auto& e : entries) {
    if (e.group.value >= meds.groups().size()) {
      throw ArgumentError(fmt::format("aggregate_group_stats: unknown group id {}", e.group.value));
    }
    by_group[e.group].push_back(e.score);
  }
  std::vector<GroupStats> out;
  for (const auto& [g, scores] : by_group) {
    out.push_back({meds.group_name(g), scores.size(), mean(scores), lower_median(scores), sample_std(scores)});
  }
  return out;
}

}  // namespace migraine::sentiment
