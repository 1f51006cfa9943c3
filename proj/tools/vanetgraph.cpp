// Command-line front end: trace ingestion, synthetic generation, centrality
// measurement, model comparison, RSU placement, and coverage evaluation.
//
// Exit codes: 0 success, 1 internal error, 2 bad user input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vanetgraph/centrality.hpp"
#include "vanetgraph/graph.hpp"
#include "vanetgraph/io.hpp"
#include "vanetgraph/placement.hpp"
#include "vanetgraph/stats.hpp"
#include "vanetgraph/synthetic.hpp"
#include "vanetgraph/trace.hpp"

namespace vg = vanetgraph;
namespace fs = std::filesystem;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output file: " + path.string());
  out << content;
}

std::string out_dir_default() {
  if (const char* env = std::getenv("VANETGRAPH_OUT")) return env;
  return ".";
}

vg::SnapshotSpec add_spec_options(CLI::App* cmd, vg::SnapshotSpec& spec) {
  cmd->add_option("--t-start", spec.t_start, "Window start time [s]");
  cmd->add_option("--t-end", spec.t_end, "Window end time [s]")->required();
  cmd->add_option("--interval", spec.interval, "Snapshot interval [s]")
      ->required();
  cmd->add_option("--radius", spec.radius, "V2V communication radius [m]")
      ->required();
  return spec;
}

vg::Trace load_trace(const std::string& path, const vg::SnapshotSpec& spec,
                     const std::string& format) {
  const std::string text = read_file(path);
  std::string fmt = format;
  if (fmt == "auto")
    fmt = path.ends_with(".xml") || text.starts_with("<") ? "fcd" : "csv";
  if (fmt == "fcd") return vg::parse_fcd_xml(text, spec);
  if (fmt == "csv") return vg::parse_csv(text, spec);
  throw InputError("unknown trace format '" + format + "'");
}

vg::TemporalGraph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  return vg::parse_temporal_graph(text);
}

std::string json_pretty(const nlohmann::json& j) { return j.dump(2) + "\n"; }

struct CommonArgs {
  std::string out = out_dir_default();
  int threads = static_cast<int>(std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, CommonArgs& common) {
  cmd->add_option("--out", common.out, "Output directory")
      ->envname("VANETGRAPH_OUT");
  cmd->add_option("--threads", common.threads,
                  "Worker threads (default: available cores)");
}

// ---- ingest ----

int cmd_ingest(const std::string& input, const std::string& format,
               const vg::SnapshotSpec& spec, const CommonArgs& common) {
  const vg::Trace trace = load_trace(input, spec, format);
  const vg::TemporalGraph tg = vg::snapshot_graphs(trace);
  const vg::GraphCounts c = vg::counts(tg);
  write_file(fs::path(common.out) / "graph.txt", vg::serialize(tg));
  write_file(fs::path(common.out) / "counts.json",
             json_pretty(vg::counts_json(c)));
  std::cout << "vehicles " << c.vertex_count << "\n"
            << "aggregated_edges " << c.aggregated_edge_count << "\n"
            << "temporal_edges " << c.temporal_edge_count << "\n"
            << "snapshots " << c.edges_per_snapshot.size() << "\n"
            << "dropped_records " << trace.dropped_records() << "\n";
  return 0;
}

// ---- gen ----

int cmd_gen(const std::string& kind, const std::string& params_path,
            std::uint64_t seed, const CommonArgs& common) {
  vg::GenParams params = vg::GenParams::parse(read_file(params_path));
  const vg::Trace trace = vg::generate_synthetic(kind, params, seed);
  std::ostringstream os;
  vg::write_trace_csv(os, trace);
  write_file(fs::path(common.out) / "trace.csv", os.str());
  std::cout << "vehicles " << trace.vehicle_count() << "\n"
            << "records " << trace.records().size() << "\n";
  return 0;
}

// ---- measure ----

int cmd_measure(const std::string& graph_path, int t_x, int t_y,
                const std::vector<std::string>& models,
                const std::vector<std::string>& measures,
                const std::string& betweenness_norm, const CommonArgs& common) {
  const vg::TemporalGraph tg = load_graph(graph_path);
  if (t_y == 0) t_y = tg.snapshot_count();
  const auto hash = vg::graph_hash(tg);
  const auto mode = betweenness_norm == "per-vertex"
                        ? vg::NormalizationSpec::BetweennessMode::per_vertex
                        : vg::NormalizationSpec::BetweennessMode::global;

  auto want = [](const std::vector<std::string>& set, const std::string& key) {
    return set.empty() || std::find(set.begin(), set.end(), key) != set.end();
  };

  for (const std::string& model : models) {
    vg::CentralityReport report;
    if (model == "aggregated")
      report = vg::aggregated_centrality(vg::aggregate(tg, t_x, t_y));
    else if (model == "temporal")
      report = vg::temporal_centrality(tg, t_x, t_y, mode, common.threads);
    else
      throw InputError("unknown model '" + model + "'");
    write_file(fs::path(common.out) / ("measure_" + model + "_meta.json"),
               json_pretty(vg::centrality_metadata(report, hash)));
    for (vg::Measure m : {vg::Measure::degree, vg::Measure::closeness,
                          vg::Measure::betweenness}) {
      if (!want(measures, vg::to_string(m))) continue;
      std::ostringstream os;
      os << "vertex,vehicle_id,measure,model,raw,normalized\n";
      const auto& raw = report.raw(m);
      const auto& norm = report.normalized(m);
      for (std::size_t v = 0; v < raw.size(); ++v)
        os << v << ','
           << (tg.has_labels() ? tg.label(static_cast<int>(v))
                               : std::to_string(v))
           << ',' << vg::to_string(m) << ',' << model << ','
           << vg::format_double(raw[v]) << ',' << vg::format_double(norm[v])
           << '\n';
      write_file(fs::path(common.out) /
                     ("measure_" + model + "_" + vg::to_string(m) + ".csv"),
                 os.str());
    }
  }
  return 0;
}

// ---- compare ----

std::vector<double> report_column(const std::string& path,
                                  const std::string& measure, bool raw) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty report file: " + path);
  std::vector<double> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = vg::detail::split_csv_line(line);
    if (f.size() != 6)
      throw InputError("bad report row in " + path + " line " +
                       std::to_string(lineno));
    if (f[2] != measure) continue;
    values.push_back(vg::detail::parse_number(f[raw ? 4 : 5], lineno, "value"));
  }
  if (values.empty())
    throw InputError("report " + path + " has no rows for measure '" +
                     measure + "'");
  return values;
}

int cmd_compare(const std::string& graph_path, const std::string& report_a,
                const std::string& report_b, int t_x, int t_y, double alpha,
                int bins, bool use_raw, const std::string& scenario,
                const std::string& betweenness_norm, const CommonArgs& common) {
  std::vector<vg::ComparisonResult> results;
  const std::vector<vg::Measure> all = {
      vg::Measure::degree, vg::Measure::closeness, vg::Measure::betweenness};

  if (report_a.empty() != report_b.empty())
    throw InputError("--report-a and --report-b must be given together");
  if (report_a.empty() && graph_path.empty())
    throw InputError("compare needs either --graph or --report-a/--report-b");

  if (!report_a.empty()) {
    // Compare two previously exported report files measure by measure.
    for (vg::Measure m : all) {
      vg::MeasureSample a{report_column(report_a, vg::to_string(m), use_raw),
                          vg::Model::aggregated, m};
      vg::MeasureSample b{report_column(report_b, vg::to_string(m), use_raw),
                          vg::Model::temporal, m};
      results.push_back(vg::compare_samples(a, b, alpha, bins));
      if (a.size() == b.size()) {
        const vg::ScatterData sd = vg::scatter_export(a, b);
        std::ostringstream os;
        vg::write_scatter_csv(os, sd);
        write_file(fs::path(common.out) /
                       ("scatter_" + std::string(vg::to_string(m)) + ".csv"),
                   os.str());
      }
    }
  } else {
    const vg::TemporalGraph tg = load_graph(graph_path);
    if (t_y == 0) t_y = tg.snapshot_count();
    const auto mode = betweenness_norm == "per-vertex"
                          ? vg::NormalizationSpec::BetweennessMode::per_vertex
                          : vg::NormalizationSpec::BetweennessMode::global;
    const vg::CentralityReport agg =
        vg::aggregated_centrality(vg::aggregate(tg, t_x, t_y));
    const vg::CentralityReport tmp =
        vg::temporal_centrality(tg, t_x, t_y, mode, common.threads);
    for (vg::Measure m : all) {
      vg::MeasureSample a{use_raw ? agg.raw(m) : agg.normalized(m),
                          vg::Model::aggregated, m};
      vg::MeasureSample b{use_raw ? tmp.raw(m) : tmp.normalized(m),
                          vg::Model::temporal, m};
      results.push_back(vg::compare_samples(a, b, alpha, bins));
      const vg::ScatterData sd = vg::scatter_export(a, b);
      std::ostringstream os;
      vg::write_scatter_csv(os, sd);
      write_file(fs::path(common.out) /
                     ("scatter_" + std::string(vg::to_string(m)) + ".csv"),
                 os.str());
    }
  }

  std::ostringstream csv;
  vg::write_compare_csv(csv, scenario, results);
  write_file(fs::path(common.out) / "compare.csv", csv.str());
  write_file(fs::path(common.out) / "compare.json",
             json_pretty(vg::compare_json(scenario, results)));
  for (const auto& r : results)
    std::cout << vg::to_string(r.measure) << " D=" << vg::format_double(r.ks.d)
              << " delta=" << vg::format_double(r.ks.delta)
              << " reject=" << (r.ks.reject ? "true" : "false")
              << " h=" << vg::format_double(r.hd.h) << "\n";
  return 0;
}

// ---- place / evaluate ----

int cmd_place(const std::string& trace_path, const std::string& format,
              const vg::SnapshotSpec& spec, const std::string& sites_path,
              double site_radius, const std::string& model, double window,
              int k, double tau, const std::string& strategy,
              const std::string& measure, bool export_matrix,
              const CommonArgs& common) {
  if (k < 1) throw InputError("k must be >= 1");
  const vg::Trace trace = load_trace(trace_path, spec, format);
  const vg::SiteSet sites =
      vg::load_sites(read_file(sites_path),
                     site_radius > 0 ? site_radius : spec.radius);

  vg::Placement placement;
  if (strategy == "greedy") {
    const vg::ContactMatrix cm =
        model == "aggregated"
            ? vg::contact_matrix_aggregated(trace, sites, window)
            : vg::contact_matrix_temporal(trace, sites);
    placement = vg::mcttp_greedy(cm, sites, k, tau);
    if (export_matrix) {
      std::ostringstream os;
      vg::write_contact_matrix_csv(os, cm, sites, trace.vehicle_ids());
      write_file(fs::path(common.out) / ("contact_" + model + ".csv"),
                 os.str());
    }
  } else if (strategy == "ranked") {
    const vg::TemporalGraph tg = vg::snapshot_graphs(trace);
    const int T = tg.snapshot_count();
    vg::CentralityReport report =
        model == "aggregated"
            ? vg::aggregated_centrality(vg::aggregate(tg, 1, T))
            : vg::temporal_centrality(
                  tg, 1, T, vg::NormalizationSpec::BetweennessMode::global,
                  common.threads);
    vg::Measure m = vg::Measure::betweenness;
    if (measure == "degree") m = vg::Measure::degree;
    else if (measure == "closeness") m = vg::Measure::closeness;
    const auto scores = vg::site_scores(trace, sites, report.normalized(m));
    placement = vg::ranked_placement(sites, scores, k);
    placement =
        vg::evaluate_coverage(trace, sites, placement.selected, tau);
  } else {
    throw InputError("unknown strategy '" + strategy + "'");
  }

  write_file(fs::path(common.out) / "placement.json",
             json_pretty(vg::placement_json(placement, k, model, window)));
  std::cout << "selected " << placement.selected.size() << "\n"
            << "coverage_percent "
            << vg::format_double(100.0 * placement.coverage_fraction()) << "\n";
  return 0;
}

int cmd_evaluate(const std::string& trace_path, const std::string& format,
                 const vg::SnapshotSpec& spec, const std::string& sites_path,
                 double site_radius, const std::string& placement_path,
                 double tau, const CommonArgs& common) {
  const vg::Trace trace = load_trace(trace_path, spec, format);
  const vg::SiteSet sites =
      vg::load_sites(read_file(sites_path),
                     site_radius > 0 ? site_radius : spec.radius);
  nlohmann::json pj;
  try {
    pj = nlohmann::json::parse(read_file(placement_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("cannot parse placement file: " + std::string(e.what()));
  }
  std::vector<std::string> selected =
      pj.contains("selected") ? pj["selected"].get<std::vector<std::string>>()
                              : pj.get<std::vector<std::string>>();
  const vg::Placement p = vg::evaluate_coverage(trace, sites, selected, tau);
  write_file(fs::path(common.out) / "coverage.json",
             json_pretty(vg::placement_json(
                 p, static_cast<int>(selected.size()), "evaluated", 0.0)));
  std::cout << "covered " << p.covered_count << "/" << trace.vehicle_count()
            << "\n"
            << "coverage_percent "
            << vg::format_double(100.0 * p.coverage_fraction()) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal-graph VANET analysis toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value config file");

  CommonArgs common;

  // ingest
  std::string in_path, in_format = "auto";
  vg::SnapshotSpec spec;
  auto* ingest = app.add_subcommand(
      "ingest", "Parse a mobility trace and build the temporal graph");
  ingest->add_option("--input", in_path, "Trace file (CSV or SUMO FCD XML)")
      ->required();
  ingest->add_option("--format", in_format, "Input format: auto, csv, fcd");
  add_spec_options(ingest, spec);
  add_common(ingest, common);

  // gen
  std::string gen_kind, gen_params;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic trace");
  gen->add_option("--kind", gen_kind,
                  "Generator: line-road, grid, random-waypoint")
      ->required();
  gen->add_option("--params", gen_params, "key=value parameter file")
      ->required();
  gen->add_option("--seed", gen_seed, "RNG seed");
  add_common(gen, common);

  // measure
  std::string graph_path, betweenness_norm = "global";
  int t_x = 1, t_y = 0;
  std::vector<std::string> models = {"aggregated", "temporal"};
  std::vector<std::string> measures;
  auto* measure = app.add_subcommand(
      "measure", "Compute aggregated and temporal centralities");
  measure->add_option("--graph", graph_path, "Serialized temporal graph")
      ->required();
  measure->add_option("--t-x", t_x, "Interval start snapshot (1-based)");
  measure->add_option("--t-y", t_y, "Interval end snapshot (default: T)");
  measure->add_option("--models", models, "Models: aggregated, temporal");
  measure->add_option("--measures", measures,
                      "Subset of degree, closeness, betweenness");
  measure->add_option("--betweenness-norm", betweenness_norm,
                      "Normalization: global or per-vertex");
  add_common(measure, common);

  // compare
  std::string cmp_graph, report_a, report_b, scenario = "scenario";
  double alpha = 0.05;
  int bins = 100;
  bool use_raw = false;
  auto* compare = app.add_subcommand(
      "compare", "KS / Hellinger / scatter comparison of the two models");
  compare->add_option("--graph", cmp_graph, "Serialized temporal graph");
  compare->add_option("--report-a", report_a,
                      "Centrality report CSV (aggregated side)");
  compare->add_option("--report-b", report_b,
                      "Centrality report CSV (temporal side)");
  compare->add_option("--t-x", t_x, "Interval start snapshot");
  compare->add_option("--t-y", t_y, "Interval end snapshot (default: T)");
  compare->add_option("--alpha", alpha, "KS significance level");
  compare->add_option("--bins", bins, "Histogram bins");
  compare->add_flag("--raw", use_raw, "Compare raw instead of normalized");
  compare->add_option("--scenario", scenario, "Scenario label for outputs");
  compare->add_option("--betweenness-norm", betweenness_norm,
                      "Normalization: global or per-vertex");
  add_common(compare, common);

  // place
  std::string sites_path, place_model = "temporal", strategy = "greedy";
  std::string rank_measure = "betweenness";
  double site_radius = 0.0, window = 320.0, tau = 10.0;
  int k = 0;
  bool export_matrix = false;
  auto* place =
      app.add_subcommand("place", "Select RSU sites (greedy MCTTP or ranked)");
  place->add_option("--trace", in_path, "Trace file")->required();
  place->add_option("--format", in_format, "Trace format: auto, csv, fcd");
  add_spec_options(place, spec);
  place->add_option("--sites", sites_path, "Sites CSV")->required();
  place->add_option("--site-radius", site_radius,
                    "V2I radius [m] (default: V2V radius)");
  place->add_option("--model", place_model, "Contact model: aggregated, temporal");
  place->add_option("--window", window, "Aggregation window [s]");
  place->add_option("--k", k, "Number of RSUs")->required();
  place->add_option("--tau", tau, "Coverage time threshold [s]");
  place->add_option("--strategy", strategy, "greedy or ranked");
  place->add_option("--measure", rank_measure,
                    "Centrality for ranked strategy");
  place->add_flag("--export-matrix", export_matrix,
                  "Also write the contact matrix CSV");
  add_common(place, common);

  // evaluate
  std::string placement_path;
  auto* evaluate =
      app.add_subcommand("evaluate", "Replay a trace against selected sites");
  evaluate->add_option("--trace", in_path, "Trace file")->required();
  evaluate->add_option("--format", in_format, "Trace format: auto, csv, fcd");
  add_spec_options(evaluate, spec);
  evaluate->add_option("--sites", sites_path, "Sites CSV")->required();
  evaluate->add_option("--site-radius", site_radius,
                       "V2I radius [m] (default: V2V radius)");
  evaluate->add_option("--placement", placement_path,
                       "Placement JSON or site-id list")
      ->required();
  evaluate->add_option("--tau", tau, "Coverage time threshold [s]");
  add_common(evaluate, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (common.threads < 1) common.threads = 1;
    if (*ingest) return cmd_ingest(in_path, in_format, spec, common);
    if (*gen) return cmd_gen(gen_kind, gen_params, gen_seed, common);
    if (*measure)
      return cmd_measure(graph_path, t_x, t_y, models, measures,
                         betweenness_norm, common);
    if (*compare)
      return cmd_compare(cmp_graph, report_a, report_b, t_x, t_y, alpha, bins,
                         use_raw, scenario, betweenness_norm, common);
    if (*place)
      return cmd_place(in_path, in_format, spec, sites_path, site_radius,
                       place_model, window, k, tau, strategy, rank_measure,
                       export_matrix, common);
    if (*evaluate)
      return cmd_evaluate(in_path, in_format, spec, sites_path, site_radius,
                          placement_path, tau, common);
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const vg::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const vg::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const vg::ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const vg::BoundsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
