#include "tempnet/ingest.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <nlohmann/json.hpp>
#include <unordered_map>

#include "tempnet/error.hpp"

namespace tempnet {

struct LineSource::Impl {
  gzFile file = nullptr;
};

LineSource::LineSource(const std::filesystem::path& path) : impl_(std::make_unique<Impl>()) {
  impl_->file = gzopen(path.string().c_str(), "rb");
  if (!impl_->file) throw IoError("cannot open " + path.string());
}

LineSource::~LineSource() {
  if (impl_->file) gzclose(impl_->file);
}

bool LineSource::next(std::string& line) {
  line.clear();
  char buf[8192];
  bool got_any = false;
  while (gzgets(impl_->file, buf, sizeof(buf)) != nullptr) {
    got_any = true;
    line += buf;
    if (!line.empty() && line.back() == '\n') {
      line.pop_back();
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
  }
  int errnum = 0;
  gzerror(impl_->file, &errnum);
  if (errnum != 0 && errnum != Z_STREAM_END) throw IoError("read error in compressed stream");
  return got_any;
}

namespace {

bool parse_json_line(const std::string& line, CommentRecord& rec) {
  const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return false;
  const auto id = j.find("id");
  const auto sub = j.find("subreddit");
  const auto created = j.find("created_utc");
  if (id == j.end() || !id->is_string()) return false;
  if (sub == j.end() || !sub->is_string()) return false;
  if (created == j.end()) return false;
  rec.id = id->get<std::string>();
  rec.community = sub->get<std::string>();
  if (created->is_number()) {
    rec.created = created->get<std::int64_t>();
  } else if (created->is_string()) {
    try {
      rec.created = std::stoll(created->get<std::string>());
    } catch (const std::logic_error&) {
      return false;
    }
  } else {
    return false;
  }
  if (rec.created <= 0) return false;
  rec.parent_id.clear();
  const auto parent = j.find("parent_id");
  if (parent != j.end() && parent->is_string()) rec.parent_id = parent->get<std::string>();
  rec.author.clear();
  const auto author = j.find("author");
  if (author != j.end() && author->is_string()) rec.author = author->get<std::string>();
  return true;
}

// Minimal CSV field splitter with double-quote support.
std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

struct CsvLayout {
  std::int64_t id = -1, parent = -1, author = -1, subreddit = -1, created = -1;
  bool valid() const { return id >= 0 && subreddit >= 0 && created >= 0; }
};

CsvLayout csv_layout(const std::string& header) {
  CsvLayout layout;
  const auto cols = split_csv_row(header);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const auto n = static_cast<std::int64_t>(i);
    if (cols[i] == "id") layout.id = n;
    else if (cols[i] == "parent_id") layout.parent = n;
    else if (cols[i] == "author") layout.author = n;
    else if (cols[i] == "subreddit") layout.subreddit = n;
    else if (cols[i] == "created_utc") layout.created = n;
  }
  return layout;
}

bool parse_csv_line(const std::string& line, const CsvLayout& layout, CommentRecord& rec) {
  const auto fields = split_csv_row(line);
  auto get = [&](std::int64_t idx) -> const std::string* {
    if (idx < 0 || static_cast<std::size_t>(idx) >= fields.size()) return nullptr;
    return &fields[static_cast<std::size_t>(idx)];
  };
  const std::string* id = get(layout.id);
  const std::string* sub = get(layout.subreddit);
  const std::string* created = get(layout.created);
  if (!id || id->empty() || !sub || sub->empty() || !created) return false;
  try {
    rec.created = std::stoll(*created);
  } catch (const std::logic_error&) {
    return false;
  }
  if (rec.created <= 0) return false;
  rec.id = *id;
  rec.community = *sub;
  const std::string* parent = get(layout.parent);
  rec.parent_id = parent ? *parent : std::string{};
  const std::string* author = get(layout.author);
  rec.author = author ? *author : std::string{};
  return true;
}

}  // namespace

ParseResult parse_comments(LineSource& source) {
  ParseResult result;
  std::string line;
  bool format_known = false;
  bool csv = false;
  CsvLayout layout;
  while (source.next(line)) {
    if (line.empty()) continue;
    if (!format_known) {
      if (line.front() == '{') {
        csv = false;
        format_known = true;
      } else {
        layout = csv_layout(line);
        if (layout.valid()) {
          csv = true;
          format_known = true;
          continue;  // header consumed
        }
        ++result.skipped;  // neither JSON nor a recognizable CSV header
        continue;
      }
    }
    CommentRecord rec;
    const bool ok = csv ? parse_csv_line(line, layout, rec) : parse_json_line(line, rec);
    if (ok)
      result.records.push_back(std::move(rec));
    else
      ++result.skipped;
  }
  return result;
}

ParseResult parse_comments_file(const std::filesystem::path& path) {
  LineSource source(path);
  return parse_comments(source);
}

std::unordered_set<std::string> load_bot_list(const std::filesystem::path& path) {
  LineSource source(path);
  std::unordered_set<std::string> bots;
  std::string line;
  while (source.next(line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    bots.insert(line);
  }
  return bots;
}

bool is_deleted_author(const std::string& author) {
  return author.empty() || author == "[deleted]";
}

std::vector<CommentRecord> clean(std::vector<CommentRecord> records,
                                 const CleaningPolicy& policy, CleanReport* report) {
  std::unordered_map<std::string, std::uint64_t> per_author;
  for (const auto& rec : records)
    if (!is_deleted_author(rec.author)) ++per_author[rec.author];

  CleanReport local;
  std::vector<CommentRecord> kept;
  kept.reserve(records.size());
  for (auto& rec : records) {
    if (is_deleted_author(rec.author)) {
      if (policy.drop_deleted) {
        ++local.dropped_deleted;
        continue;
      }
    } else if (policy.bots.count(rec.author)) {
      ++local.dropped_bots;
      continue;
    } else if (per_author[rec.author] > policy.max_comments_per_author) {
      ++local.dropped_prolific;
      continue;
    }
    kept.push_back(std::move(rec));
  }
  local.kept = kept.size();
  if (report) *report = local;
  return kept;
}

std::vector<CommunityStats> community_stats(std::span<const CommentRecord> records,
                                            const SelectionCriteria& criteria) {
  struct Acc {
    std::unordered_set<std::string> users;
    std::uint64_t comments = 0;
    std::int64_t first = 0, last = 0;
  };
  std::map<std::string, Acc> by_community;  // ordered: deterministic output
  for (const auto& rec : records) {
    Acc& acc = by_community[rec.community];
    if (acc.comments == 0) {
      acc.first = rec.created;
      acc.last = rec.created;
    } else {
      acc.first = std::min(acc.first, rec.created);
      acc.last = std::max(acc.last, rec.created);
    }
    ++acc.comments;
    if (!is_deleted_author(rec.author)) acc.users.insert(rec.author);
  }

  std::vector<CommunityStats> out;
  out.reserve(by_community.size());
  for (const auto& [name, acc] : by_community) {
    CommunityStats stats;
    stats.name = name;
    stats.users = acc.users.size();
    stats.comments = acc.comments;
    stats.days = static_cast<double>(acc.last - acc.first) / 86400.0;
    stats.selected = stats.users >= criteria.min_users &&
                     stats.comments >= criteria.min_comments &&
                     stats.days >= criteria.min_active_days;
    out.push_back(std::move(stats));
  }
  return out;
}

namespace {

// "t1_abc" -> "abc"; ids without a type prefix pass through.
std::string_view strip_type_prefix(std::string_view id) {
  if (id.size() >= 3 && id[0] == 't' && std::isdigit(static_cast<unsigned char>(id[1]))) {
    std::size_t pos = 2;
    while (pos < id.size() && std::isdigit(static_cast<unsigned char>(id[pos]))) ++pos;
    if (pos < id.size() && id[pos] == '_') return id.substr(pos + 1);
  }
  return id;
}

}  // namespace

TimeStampedGraph build_reply_graph(std::span<const CommentRecord> records) {
  // Vertex ids are assigned in author name order, so the same record set
  // builds the same graph regardless of record order.
  std::map<std::string, std::int64_t> first_seen;
  for (const auto& rec : records) {
    if (is_deleted_author(rec.author)) continue;
    auto [it, inserted] = first_seen.try_emplace(rec.author, rec.created);
    if (!inserted) it->second = std::min(it->second, rec.created);
  }

  TimeStampedGraph g;
  std::unordered_map<std::string, VertexId> vertex_of;
  vertex_of.reserve(first_seen.size());
  for (const auto& [author, joined] : first_seen) vertex_of.emplace(author, g.add_vertex(joined));

  std::unordered_map<std::string, const CommentRecord*> by_id;
  by_id.reserve(records.size());
  for (const auto& rec : records) by_id.try_emplace(rec.id, &rec);

  for (const auto& rec : records) {
    if (rec.parent_id.empty() || is_deleted_author(rec.author)) continue;
    const auto parent = by_id.find(std::string(strip_type_prefix(rec.parent_id)));
    if (parent == by_id.end()) continue;  // reply to an absent comment
    if (is_deleted_author(parent->second->author)) continue;
    const VertexId from = vertex_of.at(parent->second->author);
    const VertexId to = vertex_of.at(rec.author);
    g.add_edge(from, to);
  }
  return g;
}

}  // namespace tempnet
