#include "migraine/post_source.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <thread>

namespace migraine::corpus {

PartialTimelineError::PartialTimelineError(std::string user, std::vector<Post> retrieved,
                                           const std::string& cause)
    : Error(fmt::format("timeline for '{}' incomplete after {} posts: {}", user, retrieved.size(),
                        cause)),
      user_(std::move(user)),
      retrieved_(std::move(retrieved)) {}

FixtureDirectorySource::FixtureDirectorySource(std::filesystem::path root, std::size_t page_size)
    : root_(std::move(root)), page_size_(page_size) {
  if (page_size_ == 0) throw ArgumentError("page size must be positive");
}

const std::vector<Post>& FixtureDirectorySource::load(const std::string& author_id) {
  auto it = cache_.find(author_id);
  if (it != cache_.end()) return it->second;
  std::vector<Post> posts;
  const auto path = root_ / "timelines" / (author_id + ".jsonl");
  if (std::filesystem::exists(path)) posts = read_posts(path);
  return cache_.emplace(author_id, std::move(posts)).first->second;
}

Page FixtureDirectorySource::fetch_page(const std::string& author_id, const std::string& cursor) {
  const auto& all = load(author_id);
  std::size_t offset = 0;
  if (!cursor.empty()) {
    auto [ptr, ec] = std::from_chars(cursor.data(), cursor.data() + cursor.size(), offset);
    if (ec != std::errc() || ptr != cursor.data() + cursor.size() || offset > all.size()) {
      throw SourceError("invalid cursor '" + cursor + "'");
    }
  }
  Page page;
  const auto end = std::min(all.size(), offset + page_size_);
  page.posts.assign(all.begin() + static_cast<std::ptrdiff_t>(offset),
                    all.begin() + static_cast<std::ptrdiff_t>(end));
  if (end < all.size()) page.next_cursor = std::to_string(end);
  return page;
}

std::vector<std::string> FixtureDirectorySource::authors() const {
  std::vector<std::string> out;
  const auto dir = root_ / "timelines";
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".jsonl") out.push_back(entry.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

RetryingSource::RetryingSource(PostSource& inner, RetryPolicy policy, Sleeper sleeper)
    : inner_(inner), policy_(policy), sleep_(std::move(sleeper)) {
  if (!sleep_) sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (policy_.max_attempts < 1) throw ArgumentError("max_attempts must be at least 1");
}

Page RetryingSource::fetch_page(const std::string& author_id, const std::string& cursor) {
  auto backoff = policy_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return inner_.fetch_page(author_id, cursor);
    } catch (const RateLimited& e) {
      if (attempt >= policy_.max_attempts) {
        throw SourceError(fmt::format("rate limited after {} attempts: {}", attempt, e.what()));
      }
      sleep_(backoff);
      const auto next = std::chrono::milliseconds(
          static_cast<std::int64_t>(static_cast<double>(backoff.count()) * policy_.multiplier));
      backoff = std::min(next, policy_.max_backoff);
    }
  }
}

Page DisabledLiveSource::fetch_page(const std::string&, const std::string&) {
  throw SourceError(fmt::format("live {} adapter is disabled; use a fixture directory",
                                to_string(platform_)));
}

std::vector<Post> build_cohort_timeline(const std::string& user, PostSource& source) {
  std::vector<Post> posts;
  std::string cursor;
  while (true) {
    Page page;
    try {
      page = source.fetch_page(user, cursor);
    } catch (const Error& e) {
      sort_timeline(posts);
      throw PartialTimelineError(user, std::move(posts), e.what());
    }
    for (auto& p : page.posts) {
      if (p.author_id == user) posts.push_back(std::move(p));
    }
    if (!page.next_cursor) break;
    if (*page.next_cursor == cursor) {
      sort_timeline(posts);
      throw PartialTimelineError(user, std::move(posts), "source returned a non-advancing cursor");
    }
    cursor = *page.next_cursor;
  }
  sort_timeline(posts);
  return posts;
}

}  // namespace migraine::corpus
