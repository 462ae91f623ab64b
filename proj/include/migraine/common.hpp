#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace migraine {

/// Base of every error the toolkit throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (empty input, bad sizes, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A configuration or data file is inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A value is outside its permitted range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

enum class Label { negative, positive };

inline const char* to_string(Label l) { return l == Label::positive ? "positive" : "negative"; }

// --- files -----------------------------------------------------------------

std::string read_file(const std::filesystem::path& path);

/// Reads a text file as lines, stripping '\r' and skipping nothing.
std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Writes via a sibling temporary file followed by rename(), so readers never
/// observe a half-written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

// --- strings ---------------------------------------------------------------

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);
std::string join(std::span<const std::string> parts, std::string_view sep);

/// Locale-independent double formatting with fixed decimals.
std::string format_fixed(double v, int decimals = 6);

/// Shortest representation that round-trips to the same double.
std::string format_roundtrip(double v);

double parse_double(std::string_view s, std::string_view what);

/// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_escape(std::string_view field);

/// Splits one CSV line honoring double-quoted fields.
std::vector<std::string> parse_csv_line(std::string_view line);

// --- randomness --------------------------------------------------------------

/// splitmix64 step; used to derive independent stream seeds from one seed.
std::uint64_t mix_seed(std::uint64_t x);

/// Small deterministic PRNG wrapper. std::uniform_int_distribution is
/// implementation-defined, so bounded draws are done here explicitly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform integer in [0, bound), bound > 0, unbiased (Lemire rejection).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1).
  double unit();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t s_[4];
};

}  // namespace migraine
