#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "migraine/classify.hpp"
#include "migraine/corpus.hpp"

namespace migraine::eval {

/// Positive-class confusion counts and derived scores. Ratios with a zero
/// denominator are reported as 0 and flagged as undefined.
struct Metrics {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
  bool precision_defined = false;
  bool recall_defined = false;
  bool f1_defined = false;
};

Metrics compute_metrics(std::span<const Label> predicted, std::span<const Label> gold);
Metrics compute_metrics(std::span<const classify::Prediction> predicted, std::span<const Label> gold);

/// Harmonic mean of precision and recall (0 when both are 0).
double f1_from(double precision, double recall);

struct ConfidenceInterval {
  double point = 0.0;  // F1 on the full sample
  double lo = 0.0;
  double hi = 0.0;
  double level = 0.95;
  std::size_t resamples = 1000;
  std::uint64_t seed = 0;
};

/// Percentile bootstrap of F1. Resample r draws from an RNG seeded with
/// mix_seed(seed + r), so results do not depend on evaluation order.
ConfidenceInterval bootstrap_f1_ci(std::span<const Label> predicted, std::span<const Label> gold,
                                   std::size_t resamples = 1000, double level = 0.95, std::uint64_t seed = 0);

/// Linear-interpolation quantile of sorted data (the common "type 7").
double quantile_sorted(std::span<const double> sorted, double q);

class DegenerateAgreementError : public Error {
 public:
  using Error::Error;
};

struct AgreementReport {
  std::string annotator_a;
  std::string annotator_b;
  double kappa = 0.0;
  double observed = 0.0;  // p_o
  double expected = 0.0;  // p_e
};

AgreementReport cohen_kappa(std::span<const Label> a, std::span<const Label> b, std::string annotator_a = "a",
                            std::string annotator_b = "b");

struct Annotator {
  std::string id;
  std::vector<Label> labels;
};

struct PairwiseAgreement {
  std::vector<AgreementReport> pairs;
  double mean_kappa = 0.0;
};

/// Cohen's kappa for every annotator pair and their unweighted mean.
PairwiseAgreement mean_pairwise_kappa(std::span<const Annotator> annotators);

enum class ErrorKind { false_positive, false_negative };
const char* to_string(ErrorKind k);

struct ErrorCase {
  corpus::Post post;
  Label gold = Label::negative;
  Label predicted = Label::negative;
  double score = 0.0;
  ErrorKind kind = ErrorKind::false_positive;
};

/// False positives first, then false negatives; each by descending score,
/// stable on input order.
std::vector<ErrorCase> list_errors(std::span<const classify::Prediction> predicted, std::span<const Label> gold,
                                   std::span<const corpus::Post> posts);

std::string serialize_error_case(const ErrorCase& e);

}  // namespace migraine::eval
