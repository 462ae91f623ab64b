#pragma once

// Helpers and brute-force oracles shared by the unit tests and the
// acceptance runner. Nothing here calls into the code under test except to
// build inputs, so the oracles stay independent.

#include <array>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "migraine/common.hpp"
#include "migraine/corpus.hpp"

namespace testsupport {

namespace fs = std::filesystem;

inline fs::path source_dir() { return fs::path(MIGRAINE_SOURCE_DIR); }
inline fs::path data_dir() { return source_dir() / "data"; }
inline fs::path fixtures_dir() { return source_dir() / "fixtures"; }

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view tag) {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("migraine-" + std::string(tag) + "-" + std::to_string(rd()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(std::string_view rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

inline migraine::corpus::Post make_post(std::string id, std::string text,
                                        migraine::corpus::Platform platform = migraine::corpus::Platform::twitter,
                                        std::string author = "u1", std::int64_t millis = 0) {
  migraine::corpus::Post p;
  p.platform = platform;
  p.id = std::move(id);
  p.author_id = std::move(author);
  p.created_at.millis = millis;
  p.text = std::move(text);
  return p;
}

// Restricted Damerau-Levenshtein (optimal string alignment) by full DP.
inline std::size_t osa_distance(std::string_view a, std::string_view b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
      }
    }
  }
  return d[n][m];
}

/// Unrestricted Damerau-Levenshtein distance (Lowrance-Wagner), which allows
/// editing between transposed characters.
inline std::size_t dl_distance(std::string_view a, std::string_view b) {
  const std::size_t n = a.size(), m = b.size(), inf = n + m;
  std::vector<std::vector<std::size_t>> d(n + 2, std::vector<std::size_t>(m + 2, 0));
  std::array<std::size_t, 256> last_row{};
  d[0][0] = inf;
  for (std::size_t i = 0; i <= n; ++i) {
    d[i + 1][0] = inf;
    d[i + 1][1] = i;
  }
  for (std::size_t j = 0; j <= m; ++j) {
    d[0][j + 1] = inf;
    d[1][j + 1] = j;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t last_col = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t i1 = last_row[static_cast<unsigned char>(b[j - 1])];
      const std::size_t j1 = last_col;
      std::size_t cost = 1;
      if (a[i - 1] == b[j - 1]) {
        cost = 0;
        last_col = j;
      }
      d[i + 1][j + 1] = std::min({d[i][j] + cost, d[i + 1][j] + 1, d[i][j + 1] + 1,
                                  d[i1][j1] + (i - i1 - 1) + 1 + (j - j1 - 1)});
    }
    last_row[static_cast<unsigned char>(a[i - 1])] = i;
  }
  return d[n + 1][m + 1];
}

/// Every string at unrestricted single-edit distance from `t` over a-z.
inline std::set<std::string> dl1_neighbourhood(const std::string& t) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.insert(t.substr(0, i) + t.substr(i + 1));
  for (std::size_t i = 0; i <= t.size(); ++i) {
    for (char c = 'a'; c <= 'z'; ++c) out.insert(t.substr(0, i) + c + t.substr(i));
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (char c = 'a'; c <= 'z'; ++c) {
      auto v = t;
      v[i] = c;
      out.insert(v);
    }
  }
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    auto v = t;
    std::swap(v[i], v[i + 1]);
    out.insert(v);
  }
  out.erase(t);
  return out;
}

/// Is `c` one of the generator's admitted single edits of `t`: any
/// deletion, a substitution by a keyboard neighbour, a doubled letter, or a
/// swap of two adjacent letters?
template <typename Adjacent>
bool is_admitted_edit(const std::string& t, const std::string& c, Adjacent&& adjacent) {
  if (c.size() + 1 == t.size()) return true;  // all single deletions qualify
  if (c.size() == t.size() + 1) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (c == t.substr(0, i + 1) + t[i] + t.substr(i + 1)) return true;
    }
    return false;
  }
  if (c.size() != t.size()) return false;
  std::vector<std::size_t> diff;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (c[i] != t[i]) diff.push_back(i);
  }
  if (diff.size() == 1) return adjacent(t[diff[0]], c[diff[0]]);
  return diff.size() == 2 && diff[1] == diff[0] + 1 && c[diff[0]] == t[diff[1]] && c[diff[1]] == t[diff[0]];
}

struct Confusion {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

inline Confusion count_confusion(const std::vector<migraine::Label>& pred, const std::vector<migraine::Label>& gold) {
  Confusion c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] == migraine::Label::positive;
    const bool g = gold[i] == migraine::Label::positive;
    if (p && g) ++c.tp;
    else if (p && !g) ++c.fp;
    else if (!p && g) ++c.fn;
    else ++c.tn;
  }
  return c;
}

inline double kde_explicit(const std::vector<double>& xs, double h, double x) {
  long double s = 0;
  for (double xi : xs) {
    const long double u = (x - xi) / h;
    s += std::exp(-0.5L * u * u) / std::sqrt(2.0L * std::numbers::pi_v<long double>);
  }
  return static_cast<double>(s / (static_cast<long double>(xs.size()) * h));
}

/// Exact order statistic: the lower middle of the sorted values.
inline double order_statistic_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

inline std::vector<migraine::Label> labels_from(std::string_view yn) {
  std::vector<migraine::Label> out;
  for (char c : yn) out.push_back(c == 'Y' ? migraine::Label::positive : migraine::Label::negative);
  return out;
}

}  // namespace testsupport
