#include <algorithm>
#include <cmath>

#include "migraine/classify.hpp"
#include "migraine/unicode.hpp"

namespace migraine::classify {

double SparseVector::l1_norm() const {
  double s = 0.0;
  for (const auto& [_, v] : entries) s += std::fabs(v);
  return s;
}

double SparseVector::l2_norm() const {
  double s = 0.0;
  for (const auto& [_, v] : entries) s += v * v;
  return std::sqrt(s);
}

double SparseVector::dot(std::span<const double> dense) const {
  double s = 0.0;
  for (const auto& [i, v] : entries) s += dense[i] * v;
  return s;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

template <typename Emit>
void for_each_ngram(const text::NormalizedText& norm, const Hyperparams& hp, Emit&& emit) {
  const auto& toks = norm.tokens;
  std::string gram;
  for (int n = hp.word_ngram_min; n <= hp.word_ngram_max; ++n) {
    const auto un = static_cast<std::size_t>(n);
    if (toks.size() < un) break;
    for (std::size_t i = 0; i + un <= toks.size(); ++i) {
      gram = "w" + std::to_string(n) + ":";
      for (std::size_t k = 0; k < un; ++k) {
        if (k) gram += '\x1f';
        gram += toks[i + k];
      }
      emit(gram);
    }
  }
  if (hp.char_ngram_max <= 0) return;
  std::vector<std::size_t> offsets;
  for (const auto& tok : toks) {
    if (text::is_marker_syntax(tok)) continue;
    const std::string padded = " " + tok + " ";
    offsets.clear();
    for (std::size_t i = 0; i < padded.size(); i += unicode::decode_at(padded, i).length) offsets.push_back(i);
    offsets.push_back(padded.size());
    const std::size_t cps = offsets.size() - 1;
    for (int n = hp.char_ngram_min; n <= hp.char_ngram_max; ++n) {
      const auto un = static_cast<std::size_t>(n);
      if (cps < un) break;
      for (std::size_t i = 0; i + un <= cps; ++i) {
        gram = "c" + std::to_string(n) + ":";
        gram.append(padded, offsets[i], offsets[i + un] - offsets[i]);
        emit(gram);
      }
    }
  }
}

}  // namespace

std::vector<std::string> enumerate_ngrams(const text::NormalizedText& norm, const Hyperparams& hp) {
  std::vector<std::string> out;
  for_each_ngram(norm, hp, [&](const std::string& g) { out.push_back(g); });
  return out;
}

SparseVector extract_features(const text::NormalizedText& norm, const Hyperparams& hp) {
  std::vector<std::uint32_t> idx;
  const std::uint64_t mask = hp.hash_dim - 1;
  for_each_ngram(norm, hp, [&](const std::string& g) {
    idx.push_back(static_cast<std::uint32_t>(fnv1a64(g) & mask));
  });
  std::sort(idx.begin(), idx.end());
  SparseVector v;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && idx[j] == idx[i]) ++j;
    v.entries.emplace_back(idx[i], static_cast<double>(j - i));
    i = j;
  }
  return v;
}

}  // namespace migraine::classify
