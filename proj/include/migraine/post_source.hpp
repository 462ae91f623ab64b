#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "migraine/corpus.hpp"

namespace migraine::corpus {

enum class SourceKind { fixture_directory, live_adapter };

struct Page {
  std::vector<Post> posts;
  /// Absent when the source is exhausted for this user.
  std::optional<std::string> next_cursor;
};

/// Thrown by a source when the remote side asks the client to slow down.
class RateLimited : public Error {
 public:
  using Error::Error;
};

/// Non-retryable failure while paging (network loss, revoked access, ...).
class SourceError : public Error {
 public:
  using Error::Error;
};

/// Paging was cut short; carries what had been retrieved.
class PartialTimelineError : public Error {
 public:
  PartialTimelineError(std::string user, std::vector<Post> retrieved, const std::string& cause);
  const std::string& user() const { return user_; }
  const std::vector<Post>& retrieved() const { return retrieved_; }

 private:
  std::string user_;
  std::vector<Post> retrieved_;
};

/// Cursor-paged access to a user's past posts. The empty cursor starts at the
/// beginning; an implementation must eventually return no next_cursor.
class PostSource {
 public:
  virtual ~PostSource() = default;
  virtual SourceKind kind() const = 0;
  virtual Page fetch_page(const std::string& author_id, const std::string& cursor) = 0;
};

/// Serves timelines/<author_id>.jsonl from a fixture directory. A missing file
/// means the user has no posts.
class FixtureDirectorySource final : public PostSource {
 public:
  explicit FixtureDirectorySource(std::filesystem::path root, std::size_t page_size = 50);
  SourceKind kind() const override { return SourceKind::fixture_directory; }
  Page fetch_page(const std::string& author_id, const std::string& cursor) override;

  /// Authors that have a timeline file, sorted.
  std::vector<std::string> authors() const;

 private:
  const std::vector<Post>& load(const std::string& author_id);

  std::filesystem::path root_;
  std::size_t page_size_;
  std::map<std::string, std::vector<Post>> cache_;
};

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_backoff{1000};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{60000};
  std::size_t requests_per_window = 900;  // budget advertised to live adapters
};

/// Decorates another source with bounded retry and exponential backoff on
/// RateLimited. The sleep function is injectable for tests.
class RetryingSource final : public PostSource {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  RetryingSource(PostSource& inner, RetryPolicy policy, Sleeper sleeper = {});
  SourceKind kind() const override { return inner_.kind(); }
  Page fetch_page(const std::string& author_id, const std::string& cursor) override;

 private:
  PostSource& inner_;
  RetryPolicy policy_;
  Sleeper sleep_;
};

/// Placeholder for credentialed streaming/REST adapters. Live collection is
/// not enabled in this build; every fetch fails with SourceError.
class DisabledLiveSource final : public PostSource {
 public:
  explicit DisabledLiveSource(Platform platform) : platform_(platform) {}
  SourceKind kind() const override { return SourceKind::live_adapter; }
  Page fetch_page(const std::string& author_id, const std::string& cursor) override;

 private:
  Platform platform_;
};

/// All posts by `user` available from the source, sorted by created_at then
/// id. Posts attributed to other authors are dropped.
std::vector<Post> build_cohort_timeline(const std::string& user, PostSource& source);

}  // namespace migraine::corpus
