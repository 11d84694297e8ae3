#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <future>
#include <map>
#include <ostream>
#include <sstream>

#include "airtime/analytic.hpp"
#include "airtime/baseline_io.hpp"
#include "airtime/calibration.hpp"
#include "airtime/csv.hpp"
#include "airtime/errors.hpp"
#include "airtime/metrics.hpp"
#include "airtime/scenario_file.hpp"
#include "airtime/simulator.hpp"
#include "airtime/trace.hpp"

namespace airtime::cli {
namespace {

namespace fs = std::filesystem;

enum class Format { csv, summary, both };

struct Globals {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
  Format format = Format::both;

  bool wants_csv() const { return format != Format::summary; }
  bool wants_summary() const { return format != Format::csv; }
};

std::string mbps(double v) { return format_fixed(v, 4); }

void write_output(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_file_atomically(path, content);
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::vector<std::string> scenarios;
  std::string scheduler;  // empty: as written in the file
  Micros window_us = 1'000'000;
  Micros warmup_us = 0;
};

struct Job {
  std::string name;  // scenario file stem
  fs::path dir;
  Scenario scenario;
};

std::string summarize(const Job& job, const SimulationResult& result, const WindowMetrics& whole) {
  const Scenario& sc = job.scenario;
  std::ostringstream s;
  s << "scenario " << job.name << " scheduler " << to_string(sc.scheduler) << " seed " << sc.seed << '\n';
  s << "simulated_us " << result.end_time_us << " measured [" << whole.t1_us << ", " << whole.t2_us << ")\n";
  s << "node_id  rate_mbps  direction  source  throughput_mbps  alpha_time  alpha_throughput  frames  drops\n";
  for (std::size_t i = 0; i < sc.nodes.size(); ++i) {
    const auto& n = sc.nodes[i];
    const auto& m = whole.nodes[i];
    const auto& st = result.sources[i];
    s << n.id << "  " << format_decimal(n.rate_mbps) << "  " << to_string(n.direction) << "  "
      << n.source.to_string() << "  " << mbps(m.throughput_mbps) << "  " << format_fixed(m.alpha_time, 4) << "  "
      << format_fixed(m.alpha_throughput, 4) << "  " << st.frames_delivered << "  "
      << st.drops + result.ap_drops[i] << '\n';
  }
  s << "total_mbps " << mbps(whole.aggr_throughput_mbps) << '\n';
  const double span = static_cast<double>(std::max<Micros>(result.end_time_us, 1));
  s << "idle_fraction " << format_fixed(static_cast<double>(result.idle_us) / span, 4) << '\n';

  if (sc.all_tasks()) {
    try {
      const TaskReport r = task_report(result.log, sc);
      for (std::size_t i = 0; i < sc.nodes.size(); ++i)
        s << "task_completion_us " << sc.nodes[i].id << ' ' << r.completion_time_us[i] << '\n';
      s << "avg_task_time_us " << format_fixed(r.avg_task_time_us, 0) << '\n';
      s << "final_task_time_us " << r.final_task_time_us << '\n';
    } catch (const IncompleteTasks& e) {
      s << "tasks incomplete: " << e.what() << '\n';
    }
  }
  return s.str();
}

std::vector<SchedulerKind> schedulers_for(const std::string& choice, SchedulerKind from_file) {
  if (choice == "both") return {SchedulerKind::dcf, SchedulerKind::tbr};
  if (choice == "dcf") return {SchedulerKind::dcf};
  if (choice == "tbr") return {SchedulerKind::tbr};
  return {from_file};
}

int cmd_simulate(const Globals& g, const SimulateArgs& a, std::ostream& out) {
  const fs::path root = g.out.empty() ? fs::path(".") : fs::path(g.out);
  const bool many_files = a.scenarios.size() > 1;
  const bool both = a.scheduler == "both";

  // Everything is parsed and validated before anything runs or is written.
  std::vector<Job> jobs;
  for (const auto& file : a.scenarios) {
    Scenario base = load_scenario(file);
    if (g.seed_given) base.seed = g.seed;
    const std::string stem = fs::path(file).stem().string();
    for (SchedulerKind k : schedulers_for(a.scheduler, base.scheduler)) {
      Job job{stem, root, base};
      job.scenario.scheduler = k;
      if (many_files) job.dir /= stem;
      if (both) job.dir /= std::string(to_string(k));
      try {
        job.scenario.validate();
      } catch (const InvalidScenario& e) {
        throw InvalidScenario(file + ": " + e.what());
      }
      if (a.warmup_us >= job.scenario.duration_us)
        throw InvalidScenario(file + ": --warmup-us must be shorter than duration_us");
      jobs.push_back(std::move(job));
    }
  }

  std::vector<std::future<SimulationResult>> running;
  running.reserve(jobs.size());
  for (const auto& job : jobs)
    running.push_back(std::async(std::launch::async, [&job] { return simulate(job.scenario); }));

  std::map<std::string, std::map<SchedulerKind, double>> totals;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Job& job = jobs[j];
    const SimulationResult result = running[j].get();
    const Micros end = std::max(result.end_time_us, a.warmup_us + 1);
    const WindowMetrics whole = window_metrics(result.log, a.warmup_us, end);
    totals[job.name][job.scenario.scheduler] = whole.aggr_throughput_mbps;

    const std::string summary = summarize(job, result, whole);
    if (g.wants_csv()) {
      write_output(job.dir / "events.csv", to_csv(result.log));
      write_output(job.dir / "window_metrics.csv",
                   to_csv(tumbling_window_metrics(result.log, a.window_us, result.end_time_us), result.log));
      if (job.scenario.scheduler == SchedulerKind::tbr)
        write_output(job.dir / "scheduler.csv", to_csv(result.snapshots, result.log));
    }
    if (g.wants_summary()) {
      if (g.wants_csv()) write_output(job.dir / "summary.txt", summary);
      out << summary;
    }
  }

  if (both && g.wants_summary()) {
    for (const auto& [name, t] : totals) {
      const double dcf = t.at(SchedulerKind::dcf);
      const double tbr = t.at(SchedulerKind::tbr);
      out << "improvement " << name << " tbr_vs_dcf "
          << (dcf > 0.0 ? format_fixed(100.0 * (tbr / dcf - 1.0), 2) + "%" : std::string("n/a")) << '\n';
    }
  }
  return kOk;
}

// ---- calibrate --------------------------------------------------------------

struct CalibrateArgs {
  std::vector<double> rates{1.0, 2.0, 5.5, 11.0};
  int packet_bytes = 1500;
  std::string output;
  std::string source = "saturating";
  std::string direction = "uplink";
  std::int64_t frames = 20'000;
};

int cmd_calibrate(const Globals& g, const CalibrateArgs& a, std::ostream& out) {
  for (double r : a.rates)
    if (!is_supported_rate(r)) throw InvalidScenario("unsupported rate " + format_decimal(r) + " Mbps");
  CalibrationOptions opt;
  opt.rates = a.rates;
  opt.packet_bytes = a.packet_bytes;
  opt.target_frames = a.frames;
  opt.direction = a.direction == "downlink" ? Direction::downlink : Direction::uplink;
  try {
    opt.source = SourceSpec::parse(a.source);
  } catch (const std::invalid_argument& e) {
    throw InvalidScenario(std::string("--source: ") + e.what());
  }
  if (g.seed_given) opt.seed = g.seed;

  const BaselineTable table = calibrate(opt);
  const std::string csv = to_csv(table);

  fs::path target;
  if (!a.output.empty())
    target = a.output;
  else if (!g.out.empty())
    target = fs::path(g.out) / "baseline.csv";

  if (g.wants_csv()) {
    if (target.empty())
      out << csv;
    else
      write_output(target, csv);
  }
  if (g.wants_summary()) {
    for (const auto& [key, gamma] : table.entries())
      out << "gamma_sim(" << format_decimal(key.rate_mbps) << " Mbps, " << key.packet_bytes
          << " B) = " << mbps(gamma) << " Mbps\n";
  }
  return kOk;
}

// ---- analytic ---------------------------------------------------------------

struct AnalyticArgs {
  std::string table;
  std::vector<double> rates;
  int packet_bytes = 1500;
};

int cmd_analytic(const Globals& g, const AnalyticArgs& a, std::ostream& out) {
  const BaselineTable table = a.table.empty() ? BaselineTable::measured_80211b() : load_baseline_csv(a.table);
  try {
    table.validate();
  } catch (const std::invalid_argument& e) {
    throw InvalidScenario(a.table + ": " + e.what());
  }

  std::vector<NodeSpec> nodes;
  for (std::size_t i = 0; i < a.rates.size(); ++i) {
    NodeSpec n;
    n.id = "n" + std::to_string(i + 1);
    n.rate_mbps = a.rates[i];
    n.packet_bytes = a.packet_bytes;
    if (!table.contains(n.rate_mbps, n.packet_bytes))
      throw MissingEntry("no baseline for " + format_decimal(n.rate_mbps) + " Mbps, " +
                         std::to_string(n.packet_bytes) + " B");
    nodes.push_back(std::move(n));
  }
  const ComparisonReport r = compare_regimes(nodes, table);

  std::ostringstream csv;
  csv << "node_id,rate_mbps,rf_share,rf_mbps,tf_share,tf_mbps,delta_mbps,single_rate_mbps\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    csv << nodes[i].id << ',' << format_decimal(nodes[i].rate_mbps) << ','
        << format_fixed(r.rf.nodes[i].share_of_time, 4) << ',' << mbps(r.rf.nodes[i].throughput_mbps) << ','
        << format_fixed(r.tf.nodes[i].share_of_time, 4) << ',' << mbps(r.tf.nodes[i].throughput_mbps) << ','
        << mbps(r.delta_mbps[i]) << ',' << mbps(r.single_rate_mbps[i]) << '\n';
  }
  csv << "total,," << format_fixed(1.0, 4) << ',' << mbps(r.rf.total_mbps) << ',' << format_fixed(1.0, 4) << ','
      << mbps(r.tf.total_mbps) << ',' << mbps(r.tf.total_mbps - r.rf.total_mbps) << ",\n";

  if (g.wants_csv()) {
    if (g.out.empty())
      out << csv.str();
    else
      write_output(fs::path(g.out) / "analytic.csv", csv.str());
  }
  if (g.wants_summary()) {
    out << "baseline " << (table.provenance().empty() ? a.table : table.provenance()) << '\n';
    out << "RF total " << mbps(r.rf.total_mbps) << " Mbps, TF total " << mbps(r.tf.total_mbps) << " Mbps\n";
    out << "improvement " << format_fixed(100.0 * r.improvement, 2) << "%\n";
  }
  return kOk;
}

// ---- trace ------------------------------------------------------------------

struct TraceArgs {
  std::string file;
  bool rate_dist = false;
  bool busy = false;
  bool heaviest = false;
  double threshold_mbps = 4.0;
  Micros window_us = 1'000'000;
};

int cmd_trace(const Globals& g, TraceArgs a, std::ostream& out) {
  if (!a.rate_dist && !a.busy && !a.heaviest) a.rate_dist = a.busy = a.heaviest = true;
  const auto records = load_trace_csv(a.file);

  std::vector<std::pair<std::string, std::string>> outputs;  // file name, content
  std::ostringstream summary;
  summary << "records " << records.size() << '\n';
  if (a.rate_dist) {
    const auto dist = rate_distribution(records);
    outputs.emplace_back("rate_distribution.csv", rate_distribution_csv(dist));
    for (const auto& [rate, fraction] : dist)
      summary << "bytes_at " << format_decimal(rate) << " Mbps " << format_fixed(fraction, 4) << '\n';
  }
  std::vector<Interval> busy;
  if (a.busy || a.heaviest) busy = busy_intervals(records, a.threshold_mbps, a.window_us);
  if (a.busy) {
    outputs.emplace_back("busy_intervals.csv", busy_intervals_csv(busy));
    summary << "busy_intervals " << busy.size() << '\n';
  }
  if (a.heaviest) {
    const auto rows = heaviest_user_fraction(records, busy);
    outputs.emplace_back("heaviest_user.csv", heaviest_user_csv(rows));
    if (!rows.empty()) {
      double sum = 0.0;
      for (const auto& r : rows) sum += r.fraction;
      summary << "mean_heaviest_fraction " << format_fixed(sum / static_cast<double>(rows.size()), 4) << '\n';
    }
  }

  if (g.wants_csv()) {
    bool first = true;
    for (const auto& [name, content] : outputs) {
      if (!g.out.empty()) {
        write_output(fs::path(g.out) / name, content);
        continue;
      }
      if (!first) out << '\n';
      out << content;
      first = false;
    }
  }
  if (g.wants_summary()) out << summary.str();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Airtime fairness simulator, analytic model and trace tools", "airtime"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--seed", g.seed, "Override the scenario/calibration seed")
      ->each([&g](const std::string&) { g.seed_given = true; });
  app.add_option("--out", g.out, "Output directory");
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"summary", Format::summary}, {"both", Format::both}};
  app.add_option("--format", g.format, "csv | summary | both")->transform(CLI::CheckedTransformer(formats));

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run scenario files under DCF or TBR");
  simulate->add_option("scenario", sim.scenarios, "Scenario file(s)")->required()->check(CLI::ExistingFile);
  simulate->add_option("--scheduler", sim.scheduler, "Override: dcf | tbr | both")
      ->check(CLI::IsMember({"dcf", "tbr", "both"}));
  simulate->add_option("--window-us", sim.window_us, "Window for window_metrics.csv")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--warmup-us", sim.warmup_us, "Exclude [0, warmup) from summary totals")
      ->check(CLI::NonNegativeNumber);

  CalibrateArgs cal;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Simulate two-node baselines per rate");
  calibrate_cmd->add_option("--rates", cal.rates, "Comma-separated rates in Mbps")->delimiter(',');
  calibrate_cmd->add_option("--packet-bytes", cal.packet_bytes)->check(CLI::Range(1, 2304));
  calibrate_cmd->add_option("--output", cal.output, "Baseline CSV to write");
  calibrate_cmd->add_option("--source", cal.source, "saturating | window:<packets>");
  calibrate_cmd->add_option("--direction", cal.direction)->check(CLI::IsMember({"uplink", "downlink"}));
  calibrate_cmd->add_option("--frames", cal.frames, "Delivered frames per rate, roughly")
      ->check(CLI::PositiveNumber);

  AnalyticArgs ana;
  auto* analytic = app.add_subcommand("analytic", "Throughput under throughput-fair and time-fair access");
  analytic->add_option("--table", ana.table, "Baseline CSV (default: built-in 802.11b measurements)")
      ->check(CLI::ExistingFile);
  analytic->add_option("--rates", ana.rates, "One rate per node, comma-separated")->required()->delimiter(',');
  analytic->add_option("--packet-bytes", ana.packet_bytes)->check(CLI::Range(1, 2304));

  TraceArgs tr;
  auto* trace = app.add_subcommand("trace", "Analyze a sniffer trace CSV");
  trace->add_option("file", tr.file, "Trace CSV")->required()->check(CLI::ExistingFile);
  trace->add_flag("--rate-dist", tr.rate_dist, "Byte fraction per rate");
  trace->add_flag("--busy", tr.busy, "Busy aligned windows");
  trace->add_flag("--heaviest", tr.heaviest, "Heaviest user per busy window");
  trace->add_option("--threshold", tr.threshold_mbps, "Busy threshold in Mbps")->check(CLI::PositiveNumber);
  trace->add_option("--window-us", tr.window_us)->check(CLI::PositiveNumber);

  for (auto* sub : {simulate, calibrate_cmd, analytic, trace}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto chosen = app.get_subcommands();
    out << (chosen.empty() ? app.help() : chosen.front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    const auto chosen = app.get_subcommands();
    err << "error: " << e.what() << "\n\n" << (chosen.empty() ? app.help() : chosen.front()->help());
    return kUsage;
  }

  try {
    if (*simulate) return cmd_simulate(g, sim, out);
    if (*calibrate_cmd) return cmd_calibrate(g, cal, out);
    if (*analytic) return cmd_analytic(g, ana, out);
    return cmd_trace(g, tr, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidScenario& e) {
    err << "error: invalid scenario: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const MissingEntry& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const EmptyTrace& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace airtime::cli
