#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "tempnet/graph.hpp"

namespace tempnet {

struct CommentRecord {
  std::string id;
  std::string parent_id;  // empty for top-level comments
  std::string author;     // empty or "[deleted]" when the poster is unknown
  std::string community;
  std::int64_t created = 0;  // seconds since epoch
};

struct CleaningPolicy {
  std::uint64_t max_comments_per_author = 100000;  // strictly-more-than drops
  std::unordered_set<std::string> bots;
  bool drop_deleted = true;
};

struct CleanReport {
  std::uint64_t dropped_deleted = 0;
  std::uint64_t dropped_bots = 0;
  std::uint64_t dropped_prolific = 0;
  std::uint64_t kept = 0;
};

struct SelectionCriteria {
  std::uint64_t min_users = 10;
  std::uint64_t min_comments = 1000;
  double min_active_days = 365.0;
};

struct CommunityStats {
  std::string name;
  std::uint64_t users = 0;
  std::uint64_t comments = 0;
  double days = 0.0;
  bool selected = false;
};

// Line source over a plain or gzip-compressed file (zlib reads both
// transparently).
class LineSource {
 public:
  explicit LineSource(const std::filesystem::path& path);  // IoError on failure
  ~LineSource();
  LineSource(const LineSource&) = delete;
  LineSource& operator=(const LineSource&) = delete;

  bool next(std::string& line);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct ParseResult {
  std::vector<CommentRecord> records;
  std::uint64_t skipped = 0;  // malformed lines, counted and ignored
};

// Newline-delimited JSON objects (fields id, parent_id, author, subreddit,
// created_utc) or CSV with a header naming the same fields; the format is
// detected from the first non-empty line. Malformed lines never abort.
ParseResult parse_comments(LineSource& source);
ParseResult parse_comments_file(const std::filesystem::path& path);

// One author name per line; '#' lines and blanks ignored.
std::unordered_set<std::string> load_bot_list(const std::filesystem::path& path);

bool is_deleted_author(const std::string& author);

std::vector<CommentRecord> clean(std::vector<CommentRecord> records,
                                 const CleaningPolicy& policy, CleanReport* report = nullptr);

// Per-community user/comment/activity-span stats with the selection flag,
// sorted by community name.
std::vector<CommunityStats> community_stats(std::span<const CommentRecord> records,
                                            const SelectionCriteria& criteria);

// Reply graph for one community's records: one vertex per author (join time
// = earliest comment), and an edge parent-author -> replier for every reply
// whose parent comment is present. Self-loops kept, duplicates collapsed.
// Parent ids are matched after stripping a leading "t<digit>_" type prefix.
TimeStampedGraph build_reply_graph(std::span<const CommentRecord> records);

}  // namespace tempnet
