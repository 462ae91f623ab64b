#include "migraine/evaluate.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>

namespace migraine::eval {

namespace {

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw ArgumentError(fmt::format("{}: {} predictions for {} gold labels", what, a, b));
}

Metrics from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
  Metrics m{tp, fp, fn, tn};
  if (tp + fp > 0) {
    m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    m.precision_defined = true;
  }
  if (tp + fn > 0) {
    m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    m.recall_defined = true;
  }
  if (m.precision_defined && m.recall_defined) {
    m.f1 = f1_from(m.precision, m.recall);
    m.f1_defined = true;
  }
  return m;
}

}  // namespace

double f1_from(double precision, double recall) {
  const double s = precision + recall;
  return s > 0 ? 2.0 * precision * recall / s : 0.0;
}

Metrics compute_metrics(std::span<const Label> predicted, std::span<const Label> gold) {
  check_lengths(predicted.size(), gold.size(), "compute_metrics");
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool p = predicted[i] == Label::positive;
    const bool g = gold[i] == Label::positive;
    if (p && g) {
      ++tp;
    } else if (p) {
      ++fp;
    } else if (g) {
      ++fn;
    } else {
      ++tn;
    }
  }
  return from_counts(tp, fp, fn, tn);
}

Metrics compute_metrics(std::span<const classify::Prediction> predicted, std::span<const Label> gold) {
  std::vector<Label> labels;
  labels.reserve(predicted.size());
  for (const auto& p : predicted) labels.push_back(p.label);
  return compute_metrics(labels, gold);
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw ArgumentError("quantile of empty data");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

ConfidenceInterval bootstrap_f1_ci(std::span<const Label> predicted, std::span<const Label> gold,
                                   std::size_t resamples, double level, std::uint64_t seed) {
  check_lengths(predicted.size(), gold.size(), "bootstrap_f1_ci");
  if (gold.empty()) throw ArgumentError("bootstrap_f1_ci: empty input");
  if (resamples == 0) throw ArgumentError("bootstrap_f1_ci: resamples must be positive");
  if (!(level > 0.0 && level < 1.0)) throw ArgumentError("bootstrap_f1_ci: level must be in (0,1)");

  const auto n = gold.size();
  std::vector<double> f1s(resamples);
  for (std::size_t r = 0; r < resamples; ++r) {
    Rng rng(mix_seed(seed + r));
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto i = static_cast<std::size_t>(rng.below(n));
      const bool p = predicted[i] == Label::positive;
      const bool g = gold[i] == Label::positive;
      tp += p && g;
      fp += p && !g;
      fn += !p && g;
      tn += !p && !g;
    }
    f1s[r] = from_counts(tp, fp, fn, tn).f1;
  }
  std::sort(f1s.begin(), f1s.end());

  ConfidenceInterval ci;
  ci.point = compute_metrics(predicted, gold).f1;
  ci.level = level;
  ci.resamples = resamples;
  ci.seed = seed;
  const double tail = (1.0 - level) / 2.0;
  ci.lo = quantile_sorted(f1s, tail);
  ci.hi = quantile_sorted(f1s, 1.0 - tail);
  return ci;
}

AgreementReport cohen_kappa(std::span<const Label> a, std::span<const Label> b, std::string annotator_a,
                            std::string annotator_b) {
  if (a.size() != b.size()) throw ArgumentError("cohen_kappa: label lists differ in length");
  if (a.empty()) throw ArgumentError("cohen_kappa: empty label lists");
  const auto n = static_cast<double>(a.size());
  double agree = 0, a_pos = 0, b_pos = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    agree += a[i] == b[i];
    a_pos += a[i] == Label::positive;
    b_pos += b[i] == Label::positive;
  }
  AgreementReport r{std::move(annotator_a), std::move(annotator_b)};
  r.observed = agree / n;
  r.expected = (a_pos / n) * (b_pos / n) + ((n - a_pos) / n) * ((n - b_pos) / n);
  if (r.expected >= 1.0) {
    throw DegenerateAgreementError(fmt::format(
        "cohen_kappa({}, {}): expected agreement is 1 (both annotators used a single label)", r.annotator_a,
        r.annotator_b));
  }
  r.kappa = (r.observed - r.expected) / (1.0 - r.expected);
  return r;
}

PairwiseAgreement mean_pairwise_kappa(std::span<const Annotator> annotators) {
  if (annotators.size() < 2) throw ArgumentError("mean_pairwise_kappa: need at least two annotators");
  PairwiseAgreement out;
  double sum = 0;
  for (std::size_t i = 0; i < annotators.size(); ++i) {
    for (std::size_t j = i + 1; j < annotators.size(); ++j) {
      out.pairs.push_back(
          cohen_kappa(annotators[i].labels, annotators[j].labels, annotators[i].id, annotators[j].id));
      sum += out.pairs.back().kappa;
    }
  }
  out.mean_kappa = sum / static_cast<double>(out.pairs.size());
  return out;
}

const char* to_string(ErrorKind k) { return k == ErrorKind::false_positive ? "false_positive" : "false_negative"; }

std::vector<ErrorCase> list_errors(std::span<const classify::Prediction> predicted, std::span<const Label> gold,
                                   std::span<const corpus::Post> posts) {
  check_lengths(predicted.size(), gold.size(), "list_errors");
  if (posts.size() != gold.size()) throw ArgumentError("list_errors: posts and labels differ in length");
  std::vector<ErrorCase> fps, fns;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i].label == gold[i]) continue;
    ErrorCase e{posts[i], gold[i], predicted[i].label, predicted[i].score,
                predicted[i].label == Label::positive ? ErrorKind::false_positive : ErrorKind::false_negative};
    (e.kind == ErrorKind::false_positive ? fps : fns).push_back(std::move(e));
  }
  auto by_score = [](const ErrorCase& x, const ErrorCase& y) { return x.score > y.score; };
  std::stable_sort(fps.begin(), fps.end(), by_score);
  std::stable_sort(fns.begin(), fns.end(), by_score);
  fps.insert(fps.end(), std::make_move_iterator(fns.begin()), std::make_move_iterator(fns.end()));
  return fps;
}

std::string serialize_error_case(const ErrorCase& e) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(e.kind);
  j["platform"] = corpus::to_string(e.post.platform);
  j["id"] = e.post.id;
  j["gold"] = to_string(e.gold);
  j["predicted"] = to_string(e.predicted);
  j["score"] = e.score;
  j["text"] = e.post.text;
  return j.dump();
}

}  // namespace migraine::eval
