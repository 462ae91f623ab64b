#include "migraine/corpus.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <json.hpp>
#include <set>
#include <unordered_set>

#include "migraine/lexicon.hpp"
#include "migraine/unicode.hpp"

namespace migraine::corpus {

using json = nlohmann::json;

const char* to_string(Platform p) { return p == Platform::reddit ? "reddit" : "twitter"; }

std::optional<Platform> parse_platform(std::string_view s) {
  if (s == "twitter") return Platform::twitter;
  if (s == "reddit") return Platform::reddit;
  return std::nullopt;
}

namespace {

bool read_digits(std::string_view s, std::size_t pos, std::size_t count, int& out) {
  if (pos + count > s.size()) return false;
  int v = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

}  // namespace

std::optional<Timestamp> Timestamp::parse(std::string_view s) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, se = 0;
  if (!read_digits(s, 0, 4, y) || s.size() < 19 || s[4] != '-' || !read_digits(s, 5, 2, mo) ||
      s[7] != '-' || !read_digits(s, 8, 2, d) || (s[10] != 'T' && s[10] != 't' && s[10] != ' ') ||
      !read_digits(s, 11, 2, h) || s[13] != ':' || !read_digits(s, 14, 2, mi) || s[16] != ':' ||
      !read_digits(s, 17, 2, se)) {
    return std::nullopt;
  }
  std::size_t pos = 19;
  std::int64_t millis = 0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t digits = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      if (digits < 3) millis = millis * 10 + (s[pos] - '0');
      ++digits;
      ++pos;
    }
    if (digits == 0) return std::nullopt;
    for (std::size_t i = digits; i < 3; ++i) millis *= 10;
  }
  std::int64_t offset_minutes = 0;
  if (pos < s.size() && (s[pos] == 'Z' || s[pos] == 'z')) {
    ++pos;
  } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    const int sign = s[pos] == '-' ? -1 : 1;
    int oh = 0, om = 0;
    if (!read_digits(s, pos + 1, 2, oh)) return std::nullopt;
    std::size_t mpos = pos + 3;
    if (mpos < s.size() && s[mpos] == ':') ++mpos;
    if (!read_digits(s, mpos, 2, om)) return std::nullopt;
    if (oh > 23 || om > 59) return std::nullopt;
    offset_minutes = sign * (oh * 60 + om);
    pos = mpos + 2;
  } else {
    return std::nullopt;  // a bare local time is not an instant
  }
  if (pos != s.size()) return std::nullopt;
  if (h > 23 || mi > 59 || se > 59) return std::nullopt;

  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  const auto days = sys_days{ymd}.time_since_epoch().count();
  const std::int64_t secs = static_cast<std::int64_t>(days) * 86400 + h * 3600 + mi * 60 + se -
                            offset_minutes * 60;
  return Timestamp{secs * 1000 + millis};
}

std::string Timestamp::to_iso() const {
  using namespace std::chrono;
  std::int64_t secs = millis / 1000;
  std::int64_t ms = millis % 1000;
  if (ms < 0) {
    ms += 1000;
    secs -= 1;
  }
  std::int64_t days = secs / 86400;
  std::int64_t rem = secs % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  auto out = fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}", static_cast<int>(ymd.year()),
                         static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                         rem / 3600, (rem / 60) % 60, rem % 60);
  if (ms) out += fmt::format(".{:03}", ms);
  out += 'Z';
  return out;
}

RecordError::RecordError(std::size_t line, const std::string& what)
    : Error(fmt::format("line {}: {}", line, what)), line_(line) {}

SchemaError::SchemaError(std::string field, const std::string& what, std::size_t line)
    : Error(line ? fmt::format("line {}: field '{}': {}", line, field, what)
                 : fmt::format("field '{}': {}", field, what)),
      field_(std::move(field)),
      line_(line) {}

namespace {

const std::string& require_string(const json& obj, const char* field, std::size_t line_no) {
  const auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) throw SchemaError(field, "missing required field", line_no);
  if (!it->is_string()) throw SchemaError(field, "expected a string", line_no);
  return it->get_ref<const std::string&>();
}

}  // namespace

Post parse_post_record(std::string_view line, std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw RecordError(line_no, std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) throw RecordError(line_no, "record is not a JSON object");

  Post post;
  const auto& platform = require_string(obj, "platform", line_no);
  const auto parsed_platform = parse_platform(platform);
  if (!parsed_platform) throw SchemaError("platform", "unknown platform '" + platform + "'", line_no);
  post.platform = *parsed_platform;

  post.id = require_string(obj, "id", line_no);
  if (post.id.empty()) throw SchemaError("id", "must be nonempty", line_no);
  post.author_id = require_string(obj, "author_id", line_no);
  if (post.author_id.empty()) throw SchemaError("author_id", "must be nonempty", line_no);

  const auto& created = require_string(obj, "created_at", line_no);
  const auto ts = Timestamp::parse(created);
  if (!ts) throw SchemaError("created_at", "not an ISO-8601 instant: '" + created + "'", line_no);
  post.created_at = *ts;

  post.text = require_string(obj, "text", line_no);

  if (const auto it = obj.find("subreddit"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaError("subreddit", "expected a string", line_no);
    post.subreddit = it->get<std::string>();
  }
  if (const auto it = obj.find("label"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaError("label", "expected \"Y\" or \"N\"", line_no);
    const auto& l = it->get_ref<const std::string&>();
    if (l == "Y") {
      post.label = Label::positive;
    } else if (l == "N") {
      post.label = Label::negative;
    } else {
      throw SchemaError("label", "expected \"Y\" or \"N\", got '" + l + "'", line_no);
    }
  }
  return post;
}

std::string serialize_post(const Post& post) {
  nlohmann::ordered_json obj;
  obj["platform"] = to_string(post.platform);
  obj["id"] = post.id;
  obj["author_id"] = post.author_id;
  obj["created_at"] = post.created_at.to_iso();
  obj["text"] = post.text;
  if (post.subreddit) obj["subreddit"] = *post.subreddit;
  if (post.label) obj["label"] = *post.label == Label::positive ? "Y" : "N";
  return obj.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::vector<Post> read_posts(const std::filesystem::path& path) {
  std::vector<Post> posts;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    posts.push_back(parse_post_record(lines[i], i + 1));
  }
  return posts;
}

std::string serialize_posts(std::span<const Post> posts) {
  std::string out;
  for (const auto& p : posts) {
    out += serialize_post(p);
    out += '\n';
  }
  return out;
}

void write_posts(const std::filesystem::path& path, std::span<const Post> posts) {
  write_file_atomic(path, serialize_posts(posts));
}

std::vector<std::size_t> migraine_stem_positions(std::string_view folded) {
  static constexpr std::string_view stem = "migraine";
  std::vector<std::size_t> hits;
  for (auto pos = folded.find(stem); pos != std::string_view::npos; pos = folded.find(stem, pos + 1)) {
    if (pos == 0 || !unicode::is_alnum(unicode::decode_before(folded, pos).cp)) hits.push_back(pos);
  }
  return hits;
}

bool keyword_filter(const Post& post, const lexicon::MedicationLexicon& lexicon) {
  if (post.text.empty()) return false;
  const auto folded = unicode::fold_case(post.text);
  if (!migraine_stem_positions(folded).empty()) return true;
  return !lexicon.match(post.text).empty();
}

std::vector<Post> dedup_stream(std::span<const Post> posts, DedupOptions options) {
  std::set<PostKey> seen;
  std::unordered_set<std::string> texts;
  std::vector<Post> out;
  for (const auto& p : posts) {
    if (!seen.insert(key_of(p)).second) continue;
    if (options.exact_text && !texts.insert(p.text).second) continue;
    out.push_back(p);
  }
  return out;
}

void sort_timeline(std::vector<Post>& posts) {
  std::stable_sort(posts.begin(), posts.end(), [](const Post& a, const Post& b) {
    if (a.created_at != b.created_at) return a.created_at < b.created_at;
    return a.id < b.id;
  });
}

}  // namespace migraine::corpus
