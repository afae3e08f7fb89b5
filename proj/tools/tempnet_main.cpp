// Command-line front end: network generation, feature tables, comment-log
// ingestion, user-join-curve analysis, and join-time-difference reports.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tempnet/error.hpp"
#include "tempnet/fitting.hpp"
#include "tempnet/generators.hpp"
#include "tempnet/graph.hpp"
#include "tempnet/ingest.hpp"
#include "tempnet/metrics.hpp"
#include "tempnet/temporal.hpp"
#include "tempnet/util.hpp"

namespace fs = std::filesystem;
using namespace tempnet;

namespace {

constexpr const char* kVersion = "tempnet 0.1.0";

// ---------------------------------------------------------------------------
// shared helpers

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const fs::path& path, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& items) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << "# " << kVersion << '\n';
  out << "# generated=" << iso_timestamp() << '\n';
  out << "command=" << command << '\n';
  for (const auto& [key, value] : items) out << key << '=' << value << '\n';
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

TimeGroupedGraph with_zero_groups(const UndirectedGraph& g) {
  TimeGroupedGraph out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.add_vertex(0);
  for (const auto& [u, v] : g.edges()) out.add_edge(u, v);
  return out;
}

// Symmetric directed view of an undirected group-labelled graph; groups act
// as join stamps so the shared feature path applies.
TimeStampedGraph to_symmetric_stamped(const TimeGroupedGraph& g) {
  TimeStampedGraph out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    out.add_vertex(static_cast<std::int64_t>(g.time_group(v)));
  for (const auto& [u, v] : g.edges()) {
    out.add_edge(u, v);
    out.add_edge(v, u);
  }
  return out;
}

std::string sanitize_filename(const std::string& name) {
  std::string out;
  for (const char ch : name) {
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-') {
      out += ch;
    } else {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "%%%02X", static_cast<unsigned char>(ch));
      out += buf;
    }
  }
  return out.empty() ? "_" : out;
}

std::string gamma_cell(const std::optional<PowerLawFit>& fit) {
  if (!fit || fit->degenerate) return "";
  return fmt_g6(fit->gamma);
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
  std::string model;
  std::string out;
  std::uint64_t seed = 1;
  std::uint64_t n = 0;
  std::uint32_t m = 3;
  std::uint32_t k = 6;
  double p = 0.1;
  std::string schedule;
  std::string f = "exp2:1";
  std::uint32_t retry_cap = 50;
};

int run_generate(const GenerateOptions& opt) {
  TimeGroupedGraph graph;
  std::vector<std::pair<std::string, std::string>> manifest{
      {"model", opt.model}, {"seed", std::to_string(opt.seed)}, {"out", opt.out}};

  if (opt.model == "tpa") {
    if (opt.schedule.empty()) throw InvalidParams("generate tpa: --schedule is required");
    GeneratorParams params;
    params.m = opt.m;
    params.schedule = GrowthSchedule::parse(opt.schedule);
    params.f = TimeDiffFunction::parse(opt.f);
    params.seed = opt.seed;
    params.retry_cap = opt.retry_cap;
    graph = generate_tpa(params);
    manifest.emplace_back("m", std::to_string(opt.m));
    manifest.emplace_back("schedule", params.schedule.to_string());
    manifest.emplace_back("f", params.f.to_string());
    manifest.emplace_back("retry_cap", std::to_string(opt.retry_cap));
  } else if (opt.model == "ba") {
    graph = with_zero_groups(generate_ba(opt.n, opt.m, opt.seed));
    manifest.emplace_back("n", std::to_string(opt.n));
    manifest.emplace_back("m", std::to_string(opt.m));
  } else if (opt.model == "ws") {
    graph = with_zero_groups(generate_ws(opt.n, opt.k, opt.p, opt.seed));
    manifest.emplace_back("n", std::to_string(opt.n));
    manifest.emplace_back("k", std::to_string(opt.k));
    manifest.emplace_back("p", fmt_g6(opt.p));
  } else {
    throw InvalidParams("generate: unknown model '" + opt.model + "'");
  }

  write_edge_list_file(graph, opt.out);
  const EvalMetrics m = eval_metrics(graph.graph(), opt.seed);
  const std::string gamma = gamma_cell(m.power_law);
  std::cout << "vertices=" << graph.vertex_count() << " edges=" << graph.edge_count()
            << " CC=" << fmt_g6(m.avg_clustering) << " d_max=" << m.max_degree
            << " avg_sp=" << fmt_g6(m.avg_shortest_path)
            << " gamma=" << (gamma.empty() ? "-" : gamma) << '\n';
  write_manifest(opt.out + ".manifest", "generate", manifest);
  return 0;
}

// ---------------------------------------------------------------------------
// table2

struct TableRowSpec {
  std::string model;  // tpa | ba | ws
  std::uint64_t vertices = 0;
  std::string rate;  // linear | poly | sig | "-"
  std::string f;     // exp2:1 | geo:0.8:0.2 | "-"
};

struct TableRowResult {
  double edges = 0.0;
  double cc = 0.0;
  double d_max = 0.0;
  double avg_sp = 0.0;
  double gamma_sum = 0.0;
  int gamma_n = 0;
};

std::vector<TableRowSpec> table_rows() {
  std::vector<TableRowSpec> rows;
  const std::vector<std::uint64_t> sizes = {700, 6200, 12350};
  const std::vector<std::string> rates = {"linear", "poly", "sig"};
  const std::vector<std::string> fs = {"exp2:1", "geo:0.8:0.2"};
  for (auto n : sizes)
    for (const auto& f : fs)
      for (const auto& rate : rates) rows.push_back({"tpa", n, rate, f});
  for (auto n : sizes) rows.push_back({"ba", n, "-", "-"});
  for (auto n : sizes) rows.push_back({"ws", n, "-", "-"});
  return rows;
}

struct Table2Options {
  std::string out;
  unsigned replicates = 10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

int run_table2(const Table2Options& opt) {
  if (opt.replicates < 1) throw InvalidParams("table2: replicates must be >= 1");
  const auto rows = table_rows();
  const std::size_t units = rows.size() * opt.replicates;
  struct Sample {
    double edges, cc, d_max, avg_sp;
    std::optional<double> gamma;
  };
  std::vector<Sample> samples(units);

  parallel_for(units, opt.threads, [&](std::size_t unit) {
    const std::size_t row = unit / opt.replicates;
    const std::size_t rep = unit % opt.replicates;
    const std::uint64_t seed = opt.seed + rep;
    const TableRowSpec& spec = rows[row];
    UndirectedGraph g;
    if (spec.model == "tpa") {
      GeneratorParams params;
      params.m = 3;
      params.schedule = GrowthSchedule::parse(spec.rate + ":" + std::to_string(spec.vertices));
      params.f = TimeDiffFunction::parse(spec.f);
      params.seed = seed;
      g = generate_tpa(params).graph();
    } else if (spec.model == "ba") {
      g = generate_ba(spec.vertices, 3, seed);
    } else {
      g = generate_ws(spec.vertices, 6, 0.1, seed);
    }
    Sample s;
    s.edges = static_cast<double>(g.edge_count());
    s.cc = avg_clustering(g);
    s.d_max = static_cast<double>(max_degree(g));
    s.avg_sp = avg_shortest_path(g, std::nullopt, seed);
    if (spec.model != "ws") {
      std::vector<std::uint64_t> degs;
      degs.reserve(g.vertex_count());
      for (VertexId v = 0; v < g.vertex_count(); ++v) degs.push_back(g.degree(v));
      try {
        const PowerLawFit fit = fit_power_law_exponent(degs);
        if (!fit.degenerate) s.gamma = fit.gamma;
      } catch (const InsufficientData&) {
      }
    }
    samples[unit] = s;
  });

  auto out = open_output(opt.out);
  out << "model,|V|,|E|,rate,f,CC,d_max,avg_sp,gamma\n";
  for (std::size_t row = 0; row < rows.size(); ++row) {
    TableRowResult acc;
    for (unsigned rep = 0; rep < opt.replicates; ++rep) {
      const Sample& s = samples[row * opt.replicates + rep];
      acc.edges += s.edges;
      acc.cc += s.cc;
      acc.d_max += s.d_max;
      acc.avg_sp += s.avg_sp;
      if (s.gamma) {
        acc.gamma_sum += *s.gamma;
        ++acc.gamma_n;
      }
    }
    const double r = static_cast<double>(opt.replicates);
    const TableRowSpec& spec = rows[row];
    out << spec.model << ',' << spec.vertices << ',' << fmt_g6(acc.edges / r) << ','
        << spec.rate << ',' << spec.f << ',' << fmt_g6(acc.cc / r) << ','
        << fmt_g6(acc.d_max / r) << ',' << fmt_g6(acc.avg_sp / r) << ','
        << (acc.gamma_n ? fmt_g6(acc.gamma_sum / acc.gamma_n) : "") << '\n';
  }
  out.close();

  write_manifest(opt.out + ".manifest", "table2",
                 {{"replicates", std::to_string(opt.replicates)},
                  {"seed", std::to_string(opt.seed)},
                  {"out", opt.out},
                  {"note", opt.replicates == 1 ? "single replicate: higher variance" : ""}});
  return 0;
}

// ---------------------------------------------------------------------------
// ingest

struct IngestOptions {
  std::string input;
  std::string outdir;
  std::string botlist;
  std::uint64_t min_users = 10;
  std::uint64_t min_comments = 1000;
  double min_days = 365.0;
  std::uint64_t max_author_comments = 100000;
  bool keep_deleted = false;
  unsigned threads = 1;
};

int run_ingest(const IngestOptions& opt) {
  if (opt.min_users < 1 || opt.min_comments < 1 || opt.min_days <= 0.0 ||
      opt.max_author_comments < 1)
    throw InvalidParams("ingest: selection and cleaning thresholds must be positive");

  CleaningPolicy policy;
  policy.max_comments_per_author = opt.max_author_comments;
  policy.drop_deleted = !opt.keep_deleted;
  if (!opt.botlist.empty()) policy.bots = load_bot_list(opt.botlist);

  ParseResult parsed = parse_comments_file(opt.input);
  CleanReport report;
  const std::vector<CommentRecord> records = clean(std::move(parsed.records), policy, &report);

  SelectionCriteria criteria{opt.min_users, opt.min_comments, opt.min_days};
  const std::vector<CommunityStats> stats = community_stats(records, criteria);

  fs::create_directories(opt.outdir);
  auto manifest_csv = open_output(fs::path(opt.outdir) / "manifest.csv");
  manifest_csv << "community,users,comments,days,selected\n";
  for (const auto& s : stats)
    manifest_csv << s.name << ',' << s.users << ',' << s.comments << ',' << fmt_g6(s.days)
                 << ',' << (s.selected ? 1 : 0) << '\n';
  manifest_csv.close();

  std::vector<const CommunityStats*> selected;
  for (const auto& s : stats)
    if (s.selected) selected.push_back(&s);

  std::map<std::string, std::vector<CommentRecord>> grouped;
  for (const auto& rec : records)
    grouped[rec.community].push_back(rec);

  parallel_for(selected.size(), opt.threads, [&](std::size_t i) {
    const std::string& name = selected[i]->name;
    const TimeStampedGraph g = build_reply_graph(grouped.at(name));
    write_edge_list_file(g, fs::path(opt.outdir) / (sanitize_filename(name) + ".edges"));
  });

  write_manifest(fs::path(opt.outdir) / "ingest.manifest", "ingest",
                 {{"input", opt.input},
                  {"botlist", opt.botlist},
                  {"min_users", std::to_string(opt.min_users)},
                  {"min_comments", std::to_string(opt.min_comments)},
                  {"min_days", fmt_g6(opt.min_days)},
                  {"max_author_comments", std::to_string(opt.max_author_comments)},
                  {"drop_deleted", policy.drop_deleted ? "1" : "0"},
                  {"parsed", std::to_string(records.size())},
                  {"skipped_lines", std::to_string(parsed.skipped)},
                  {"dropped_deleted", std::to_string(report.dropped_deleted)},
                  {"dropped_bots", std::to_string(report.dropped_bots)},
                  {"dropped_prolific", std::to_string(report.dropped_prolific)},
                  {"communities", std::to_string(stats.size())},
                  {"selected", std::to_string(selected.size())}});
  std::cout << "communities=" << stats.size() << " selected=" << selected.size()
            << " kept_records=" << report.kept << " skipped_lines=" << parsed.skipped << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
  std::string graphs_dir;
  std::string out;
  std::string std_mode = "sample";
  unsigned threads = 1;
};

int run_analyze(const AnalyzeOptions& opt) {
  if (opt.std_mode != "sample" && opt.std_mode != "population")
    throw InvalidParams("analyze: --std must be sample or population");
  if (!fs::is_directory(opt.graphs_dir))
    throw IoError("analyze: not a directory: " + opt.graphs_dir);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(opt.graphs_dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  struct Row {
    std::string name;
    std::optional<FeatureRecord> record;
  };
  std::vector<Row> rows(files.size());
  parallel_for(files.size(), opt.threads, [&](std::size_t i) {
    rows[i].name = files[i].stem().string();
    try {
      TimeStampedGraph g = edge_list_is_directed(files[i])
                               ? read_time_stamped_file(files[i])
                               : to_symmetric_stamped(read_time_grouped_file(files[i]));
      rows[i].record = feature_record(g);
    } catch (const Error&) {
      rows[i].record = std::nullopt;  // logged below, batch continues
    }
  });

  auto out = open_output(opt.out);
  out << feature_csv_header();
  std::vector<std::vector<double>> columns(16);
  for (const auto& row : rows) {
    if (!row.record) {
      std::cerr << "analyze: skipping unreadable graph '" << row.name << "'\n";
      continue;
    }
    const FeatureRecord& r = *row.record;
    out << feature_csv_row(row.name, r);
    const double fields[16] = {
        r.degrees.avg_deg,
        r.degrees.avg_in_deg,
        r.avg_clustering,
        r.density.value_or(std::nan("")),
        r.days,
        r.components.lc_ratio,
        static_cast<double>(r.loops),
        static_cast<double>(r.degrees.max_in_deg),
        static_cast<double>(r.degrees.max_out_deg),
        static_cast<double>(r.components.lc_edges),
        static_cast<double>(r.edges),
        static_cast<double>(r.components.singletons),
        static_cast<double>(r.triangles),
        static_cast<double>(r.components.lc_vertices),
        static_cast<double>(r.vertices),
        static_cast<double>(r.components.wcc_count),
    };
    for (int c = 0; c < 16; ++c)
      if (!std::isnan(fields[c])) columns[c].push_back(fields[c]);
  }

  const char* stat_names[5] = {"min", "max", "median", "mean", "std"};
  for (int stat = 0; stat < 5; ++stat) {
    out << stat_names[stat];
    for (int c = 0; c < 16; ++c) {
      out << ',';
      auto& col = columns[c];
      if (col.empty()) continue;
      std::sort(col.begin(), col.end());
      const std::size_t n = col.size();
      double value = 0.0;
      bool have = true;
      switch (stat) {
        case 0:
          value = col.front();
          break;
        case 1:
          value = col.back();
          break;
        case 2:
          value = n % 2 ? col[n / 2] : 0.5 * (col[n / 2 - 1] + col[n / 2]);
          break;
        case 3:
        case 4: {
          double mean = 0.0;
          for (double v : col) mean += v;
          mean /= static_cast<double>(n);
          if (stat == 3) {
            value = mean;
          } else {
            double ss = 0.0;
            for (double v : col) ss += (v - mean) * (v - mean);
            if (opt.std_mode == "population") {
              value = std::sqrt(ss / static_cast<double>(n));
            } else if (n >= 2) {
              value = std::sqrt(ss / static_cast<double>(n - 1));
            } else {
              have = false;  // sample std undefined for one observation
            }
          }
          break;
        }
      }
      if (have) out << fmt_g6(value);
    }
    out << '\n';
  }
  out.close();

  write_manifest(opt.out + ".manifest", "analyze",
                 {{"graphs", opt.graphs_dir},
                  {"out", opt.out},
                  {"std", opt.std_mode},
                  {"graphs_count", std::to_string(files.size())}});
  return 0;
}

// ---------------------------------------------------------------------------
// ujc

struct UjcOptions {
  std::string events;
  std::string graphs_dir;
  std::string outdir;
  unsigned threads = 1;
};

std::map<std::string, std::vector<JoinEvent>> load_events_csv(const fs::path& path) {
  LineSource source(path);
  std::map<std::string, std::vector<JoinEvent>> by_community;
  std::string line;
  bool header_done = false;
  while (source.next(line)) {
    if (line.empty()) continue;
    if (!header_done) {
      header_done = true;
      if (line.rfind("community,", 0) == 0) continue;  // header row
    }
    const auto parts = split(line, ',');
    if (parts.size() != 3) throw IoError("events file: expected community,user,timestamp");
    by_community[parts[0]].push_back({parts[1], static_cast<std::int64_t>(parse_u64(parts[2]))});
  }
  return by_community;
}

int run_ujc(const UjcOptions& opt) {
  if (opt.events.empty() == opt.graphs_dir.empty())
    throw InvalidParams("ujc: give exactly one of --events or --graphs");

  std::map<std::string, std::vector<JoinEvent>> by_community;
  if (!opt.events.empty()) {
    by_community = load_events_csv(opt.events);
  } else {
    if (!fs::is_directory(opt.graphs_dir))
      throw IoError("ujc: not a directory: " + opt.graphs_dir);
    for (const auto& entry : fs::directory_iterator(opt.graphs_dir)) {
      if (!entry.is_regular_file()) continue;
      const std::string name = entry.path().stem().string();
      try {
        const TimeStampedGraph g = read_time_stamped_file(entry.path());
        auto& events = by_community[name];
        for (VertexId v = 0; v < g.vertex_count(); ++v)
          events.push_back({std::to_string(v), g.join_time(v)});
      } catch (const Error& e) {
        std::cerr << "ujc: cannot use '" << name << "': " << e.what() << '\n';
        by_community[name];  // empty -> reported as a failed community below
      }
    }
  }

  fs::create_directories(opt.outdir);
  struct Result {
    std::string name;
    GrowthCategory category;
    bool curve_ok = false;
    UJCurve curve;
  };
  std::vector<const std::pair<const std::string, std::vector<JoinEvent>>*> items;
  for (const auto& kv : by_community) items.push_back(&kv);
  std::vector<Result> results(items.size());

  parallel_for(items.size(), opt.threads, [&](std::size_t i) {
    Result& res = results[i];
    res.name = items[i]->first;
    try {
      res.curve = build_ujc(items[i]->second);
      res.curve_ok = true;
      res.category = categorize_ujc(res.curve);
    } catch (const Error&) {
      res.category = GrowthCategory{};  // events_oriented, diagnostic
      res.category.diagnostic = true;
    }
  });

  auto report = open_output(fs::path(opt.outdir) / "categories.csv");
  report << "community,fit_kind,r2,norm_area,category\n";
  for (const auto& res : results) {
    if (res.curve_ok) {
      auto curve_csv =
          open_output(fs::path(opt.outdir) / (sanitize_filename(res.name) + "_ujc.csv"));
      curve_csv << "t_weeks,fraction\n";
      for (const auto& [t, frac] : res.curve.samples)
        curve_csv << fmt_g6(t) << ',' << fmt_g6(frac) << '\n';
    } else {
      std::cerr << "ujc: community '" << res.name
                << "' has no usable join events; reported as events_oriented\n";
    }
    report << res.name << ',' << fit_kind_name(res.category.fit_kind) << ','
           << (res.category.fit_kind == FitKind::None ? "" : fmt_g6(res.category.r_squared))
           << ','
           << (res.category.norm_area ? fmt_g6(*res.category.norm_area) : "") << ','
           << growth_kind_name(res.category.kind) << '\n';
  }
  report.close();

  write_manifest(fs::path(opt.outdir) / "ujc.manifest", "ujc",
                 {{"events", opt.events},
                  {"graphs", opt.graphs_dir},
                  {"outdir", opt.outdir},
                  {"communities", std::to_string(results.size())}});
  return 0;
}

// ---------------------------------------------------------------------------
// timediff

struct TimediffOptions {
  std::string graph;
  std::string out;
  double bin_width = 1.0;
  std::string thresholds = "365,1460,1825";
};

int run_timediff(const TimediffOptions& opt) {
  if (!edge_list_is_directed(opt.graph))
    throw IoError("timediff: expects a directed time-stamped graph");
  const TimeStampedGraph g = read_time_stamped_file(opt.graph);
  if (g.edge_count() == 0) throw InvalidParams("timediff: graph has no edges");

  std::vector<double> thresholds;
  if (!opt.thresholds.empty())
    for (const auto& tok : split(opt.thresholds, ',')) thresholds.push_back(parse_double(tok));

  const TimeDiffDistribution dist = edge_time_differences(g, opt.bin_width, thresholds);

  auto csv = open_output(opt.out);
  csv << "t_days,count,probability\n";
  for (const auto& bin : dist.bins)
    csv << fmt_g6(bin.midpoint_days) << ',' << bin.count << ',' << fmt_g6(bin.probability)
        << '\n';
  csv.close();

  std::ostringstream report;
  report << "total_edges=" << dist.total_edges << '\n';
  report << "median_days=" << fmt_g6(dist.median_days) << '\n';
  for (const auto& [threshold, fraction] : dist.tail_fractions)
    report << "tail_gt_" << fmt_g6(threshold) << '=' << fmt_g6(fraction) << '\n';
  try {
    const ExponentialFit fit = link_probability_estimate(dist);
    const double params[2] = {fit.amplitude, fit.rate};
    report << fit_report_line("exponential", params, fit.r_squared, true) << '\n';
    if (fit.non_decaying) report << "non_decaying=1\n";
  } catch (const InsufficientData& e) {
    std::cerr << "timediff: " << e.what() << " (fit skipped)\n";
  }

  auto report_file = open_output(opt.out + ".report");
  report_file << report.str();
  report_file.close();
  std::cout << report.str();

  write_manifest(opt.out + ".manifest", "timediff",
                 {{"graph", opt.graph},
                  {"out", opt.out},
                  {"bin_width", fmt_g6(opt.bin_width)},
                  {"thresholds", opt.thresholds}});
  return 0;
}

// ---------------------------------------------------------------------------

int dispatch(int argc, char** argv) {
  CLI::App app{"Temporal network generation and analytics toolkit"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "Options in key=value form; flags override");
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* cmd_generate = app.add_subcommand("generate", "Generate a random network");
  cmd_generate->add_option("--model", gen.model, "tpa, ba, or ws")->required();
  cmd_generate->add_option("--out", gen.out, "Output edge-list path")->required();
  cmd_generate->add_option("--seed", gen.seed, "RNG seed");
  cmd_generate->add_option("--n", gen.n, "Vertex count (ba, ws)");
  cmd_generate->add_option("--m", gen.m, "Edges per new vertex (ba, tpa)");
  cmd_generate->add_option("--k", gen.k, "Lattice neighbours (ws)");
  cmd_generate->add_option("--p", gen.p, "Rewiring probability (ws)");
  cmd_generate->add_option("--schedule", gen.schedule,
                           "Growth schedule (tpa): linear:<n>, poly:<n>, sig:<n>, explicit:a,b,...");
  cmd_generate->add_option("--f", gen.f, "Time-diff function (tpa): exp2:<c> or geo:<a>:<r>");
  cmd_generate->add_option("--retry-cap", gen.retry_cap, "Edge retry cap (tpa)");

  Table2Options tab;
  auto* cmd_table2 = app.add_subcommand("table2", "Model-comparison table over all settings");
  cmd_table2->add_option("--out", tab.out, "Output CSV path")->required();
  cmd_table2->add_option("--replicates", tab.replicates, "Replicates per setting");
  cmd_table2->add_option("--seed", tab.seed, "Base RNG seed");
  cmd_table2->add_option("--threads", tab.threads, "Worker threads");

  IngestOptions ing;
  auto* cmd_ingest = app.add_subcommand("ingest", "Build reply graphs from a comment log");
  cmd_ingest->add_option("--input", ing.input, "NDJSON or CSV comment log (.gz ok)")->required();
  cmd_ingest->add_option("--outdir", ing.outdir, "Output directory")->required();
  cmd_ingest->add_option("--botlist", ing.botlist, "Newline-delimited bot account list");
  cmd_ingest->add_option("--min-users", ing.min_users, "Community selection: distinct users");
  cmd_ingest->add_option("--min-comments", ing.min_comments, "Community selection: comments");
  cmd_ingest->add_option("--min-days", ing.min_days, "Community selection: active days");
  cmd_ingest->add_option("--max-author-comments", ing.max_author_comments,
                         "Drop authors with more comments than this");
  cmd_ingest->add_flag("--keep-deleted", ing.keep_deleted, "Keep deleted-author comments");
  cmd_ingest->add_option("--threads", ing.threads, "Worker threads");

  AnalyzeOptions ana;
  auto* cmd_analyze = app.add_subcommand("analyze", "Feature table for a directory of graphs");
  cmd_analyze->add_option("--graphs", ana.graphs_dir, "Directory of edge-list files")->required();
  cmd_analyze->add_option("--out", ana.out, "Output CSV path")->required();
  cmd_analyze->add_option("--std", ana.std_mode, "Summary std: sample or population");
  cmd_analyze->add_option("--threads", ana.threads, "Worker threads");

  UjcOptions ujc;
  auto* cmd_ujc = app.add_subcommand("ujc", "User-join curves and growth categories");
  cmd_ujc->add_option("--events", ujc.events, "CSV of community,user,timestamp");
  cmd_ujc->add_option("--graphs", ujc.graphs_dir, "Directory of directed edge-list files");
  cmd_ujc->add_option("--outdir", ujc.outdir, "Output directory")->required();
  cmd_ujc->add_option("--threads", ujc.threads, "Worker threads");

  TimediffOptions td;
  auto* cmd_timediff = app.add_subcommand("timediff", "Edge join-time-difference distribution");
  cmd_timediff->add_option("--graph", td.graph, "Directed edge-list file")->required();
  cmd_timediff->add_option("--out", td.out, "Output CSV path")->required();
  cmd_timediff->add_option("--bin-width", td.bin_width, "Histogram bin width in days");
  cmd_timediff->add_option("--thresholds", td.thresholds, "Comma-separated tail thresholds (days)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // non-zero parse outcomes are usage errors
  }

  try {
    if (cmd_generate->parsed()) return run_generate(gen);
    if (cmd_table2->parsed()) return run_table2(tab);
    if (cmd_ingest->parsed()) return run_ingest(ing);
    if (cmd_analyze->parsed()) return run_analyze(ana);
    if (cmd_ujc->parsed()) return run_ujc(ujc);
    if (cmd_timediff->parsed()) return run_timediff(td);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return dispatch(argc, argv); }
