// nmfa: instance generation, solving, exact ground states and benchmarks for
// noisy mean-field annealing.
//
// Exit codes: 0 success, 2 usage, 3 parse error, 4 runtime error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nmfa/nmfa.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitRuntime = 4;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return nmfa::detail::format_number(v); }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw nmfa::Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw nmfa::Error("write failed for '" + path + "'");
}

// Solver flags shared by solve, bench and schedule-dump. Precedence:
// built-in defaults, then the config file, then flags given on the command line.
struct SolverFlags {
  std::string config_path;
  double alpha = 0.15;
  double sigma = 0.15;
  std::size_t t_f = 1000;
  std::string schedule;
  std::uint64_t seed = 0;
  std::size_t runs = 1;
  std::size_t threads = 1;
  bool timing = false;

  CLI::Option* alpha_opt = nullptr;
  CLI::Option* sigma_opt = nullptr;
  CLI::Option* tf_opt = nullptr;
  CLI::Option* schedule_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* runs_opt = nullptr;

  void add_to(CLI::App& app, bool with_runs) {
    app.add_option("--config", config_path, "Run configuration file (key = value)")
        ->check(CLI::ExistingFile);
    alpha_opt = app.add_option("--alpha", alpha, "Feedback constant in (0, 1]");
    sigma_opt = app.add_option("--sigma", sigma, "Noise standard deviation");
    tf_opt = app.add_option("--tf", t_f, "Iterations per run");
    schedule_opt = app.add_option("--schedule", schedule, "Temperature breakpoints \"f:T,f:T,...\"");
    seed_opt = app.add_option("--seed", seed, "Base seed");
    if (with_runs) {
      runs_opt = app.add_option("--runs", runs, "Runs per instance");
      app.add_option("--threads", threads, "Worker threads (output does not depend on this)")
          ->check(CLI::PositiveNumber);
      app.add_flag("--timing", timing, "Record wall-clock columns in output files");
    }
  }

  struct Resolved {
    nmfa::NmfaParams params;
    std::size_t runs = 1;
    bool trajectory = false;
  };

  Resolved resolve() const {
    Resolved r;
    if (!config_path.empty()) {
      const auto cfg = nmfa::read_run_config_file(config_path);
      cfg.apply(r.params);
      if (cfg.n_runs) r.runs = *cfg.n_runs;
      if (cfg.trajectory) r.trajectory = *cfg.trajectory;
    }
    if (alpha_opt->count()) r.params.alpha = alpha;
    if (sigma_opt->count()) r.params.sigma = sigma;
    if (tf_opt->count()) r.params.t_f = t_f;
    if (schedule_opt->count()) r.params.schedule = nmfa::parse_schedule(schedule);
    if (seed_opt->count()) r.params.seed = seed;
    if (runs_opt && runs_opt->count()) r.runs = runs;
    if (r.runs < 1) throw nmfa::InvalidArgument("--runs must be at least 1");
    r.params.validate();
    return r;
  }
};

// --- generate ---------------------------------------------------------------

struct GenerateCmd {
  std::string klass;
  std::size_t n = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::string out;

  void add_to(CLI::App& app) {
    app.add_option("--class", klass, "sk | dense | cubic | moebius")->required();
    app.add_option("--n", n, "Spin count")->required();
    app.add_option("--p", p, "Edge probability (dense class)");
    app.add_option("--seed", seed, "Instance seed");
    app.add_option("--out", out, "Output G-set file (default: stdout)");
  }

  int run() const {
    const auto cls = nmfa::parse_instance_class(klass);
    if (!cls) throw UsageError("unknown --class '" + klass + "'");
    const auto problem = nmfa::generate({*cls, n, p, seed});
    write_output(out, nmfa::write_gset(problem));
    std::ostringstream summary;
    summary << "class=" << klass << " n=" << problem.size() << " edges=" << problem.edge_count()
            << " components=" << nmfa::component_count(problem) << '\n';
    (out.empty() || out == "-" ? std::cerr : std::cout) << summary.str();
    return 0;
  }
};

// --- solve ------------------------------------------------------------------

struct SolveCmd {
  std::string instance;
  std::string out;
  std::string trajectory_out;
  std::optional<double> reference_energy;
  SolverFlags flags;

  void add_to(CLI::App& app) {
    app.add_option("instance", instance, "G-set instance file")->required();
    app.add_option("--out", out, "Per-run results CSV (default: stdout)");
    app.add_option("--trajectory-out", trajectory_out,
                   "Write the spin trajectory of the first run to this CSV");
    app.add_option("--reference-energy", reference_energy,
                   "Reference ground energy for the success probability");
    flags.add_to(app, true);
  }

  int run() const {
    const auto cfg = flags.resolve();
    const auto problem = nmfa::read_gset_file(instance);
    const auto results = nmfa::nmfa_batch(problem, cfg.params, cfg.runs, flags.threads);

    nmfa::ResultsMetadata meta;
    meta.instance_id = std::filesystem::path(instance).filename().string();
    if (!problem.has_fields()) meta.total_weight = problem.total_weight();
    meta.include_timing = flags.timing;
    write_output(out, nmfa::write_results_csv(results, meta));

    const bool want_trajectory = cfg.trajectory || !trajectory_out.empty();
    if (want_trajectory) {
      const auto traced = nmfa::nmfa_run(problem, cfg.params, true);
      std::ostringstream os;
      os << "t,temperature,energy";
      for (std::size_t i = 0; i < problem.size(); ++i) os << ",s" << i;
      os << '\n';
      for (std::size_t t = 0; t < traced.trajectory.size(); ++t) {
        const auto& snap = traced.trajectory[t];
        os << t << ',' << (t == 0 ? std::string{} : fmt(snap.temperature)) << ','
           << fmt(snap.energy.value);
        for (double v : snap.spins) os << ',' << fmt(v);
        os << '\n';
      }
      const auto path = trajectory_out.empty() ? out + ".trajectory.csv" : trajectory_out;
      if (path == ".trajectory.csv") throw UsageError("trajectory needs --trajectory-out or --out");
      write_output(path, os.str());
    }

    double sum = 0.0;
    double best = results.front().final_energy.value;
    double clock = 0.0;
    for (const auto& r : results) {
      sum += r.final_energy.value;
      best = std::min(best, r.final_energy.value);
      clock += r.wall_clock_us;
    }
    const double mean = sum / static_cast<double>(results.size());
    std::ostringstream summary;
    summary << "instance=" << meta.instance_id << " n=" << problem.size()
            << " edges=" << problem.edge_count() << " runs=" << results.size() << '\n'
            << "mean_energy=" << fmt(mean) << " best_energy=" << fmt(best) << '\n';
    if (meta.total_weight) {
      summary << "mean_cut=" << fmt((*meta.total_weight - mean) / 2.0)
              << " best_cut=" << fmt((*meta.total_weight - best) / 2.0) << '\n';
    }
    if (reference_energy) {
      const nmfa::GroundTruth ref{{*reference_energy}, 0, nmfa::GroundTruth::Source::BestKnown};
      summary << "p_success=" << fmt(nmfa::success_probability(results, ref)) << '\n';
    }
    (out.empty() || out == "-" ? std::cerr : std::cout) << summary.str();
    std::cerr << "mean_wall_clock_us=" << fmt(clock / static_cast<double>(results.size())) << '\n';
    return 0;
  }
};

// --- bench ------------------------------------------------------------------

struct BenchCmd {
  std::string klass;
  std::vector<std::size_t> sizes;
  std::size_t instances = 10;
  double p = 0.5;
  std::string out;
  std::string detail_out;
  std::string reference_file;
  SolverFlags flags;

  void add_to(CLI::App& app) {
    app.add_option("--class", klass, "sk | dense | cubic | moebius")->required();
    app.add_option("--n,--sizes", sizes, "Comma-separated problem sizes")
        ->required()
        ->delimiter(',');
    app.add_option("--instances", instances, "Instances per size")->check(CLI::PositiveNumber);
    app.add_option("--p", p, "Edge probability (dense class)");
    app.add_option("--out", out, "Per-size summary CSV (default: stdout)");
    app.add_option("--detail-out", detail_out, "Per-instance CSV");
    app.add_option("--reference-file", reference_file,
                   "CSV 'n,instance,energy' with reference energies for sizes above the "
                   "enumeration limit")
        ->check(CLI::ExistingFile);
    flags.add_to(app, true);
  }

  std::map<std::pair<std::size_t, std::size_t>, double> load_references() const {
    std::map<std::pair<std::size_t, std::size_t>, double> refs;
    if (reference_file.empty()) return refs;
    std::ifstream in(reference_file);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#' || line.rfind("n,", 0) == 0) continue;
      std::istringstream row(line);
      std::string a, b, c;
      if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) {
        throw nmfa::ParseError(nmfa::ParseErrorKind::BadToken, line_no, "expected n,instance,energy");
      }
      std::uint64_t n = 0, k = 0;
      double e = 0.0;
      if (!nmfa::detail::parse_unsigned(a, n) || !nmfa::detail::parse_unsigned(b, k) ||
          !nmfa::detail::parse_double(c, e)) {
        throw nmfa::ParseError(nmfa::ParseErrorKind::BadToken, line_no, "expected n,instance,energy");
      }
      refs[{n, k}] = e;
    }
    return refs;
  }

  int run() const {
    const auto cls = nmfa::parse_instance_class(klass);
    if (!cls) throw UsageError("unknown --class '" + klass + "'");
    if (sizes.empty()) throw UsageError("--n needs at least one size");
    const auto cfg = flags.resolve();
    const auto refs = load_references();
    for (auto n : sizes) {
      if (n > nmfa::kMaxExactSpins) {
        for (std::size_t k = 0; k < instances; ++k) {
          if (!refs.count({n, k})) {
            throw UsageError("size " + std::to_string(n) + " exceeds the enumeration limit of " +
                             std::to_string(nmfa::kMaxExactSpins) +
                             "; supply reference energies with --reference-file");
          }
        }
      }
    }

    std::ostringstream summary;
    std::ostringstream detail;
    summary << "class,n,instances,runs,p_median,p_q25,p_q75,tts_runs_median,tts_runs_q25,"
               "tts_runs_q75,tts_s_median,tts_s_q25,tts_s_q75,mean_energy,best_energy\n";
    detail << "class,n,instance,instance_seed,reference_energy,degeneracy,p_success,tts_runs,"
              "tts_s,mean_energy,best_energy,mean_wall_clock_us\n";

    for (auto n : sizes) {
      std::vector<nmfa::InstanceStats> stats;
      for (std::size_t k = 0; k < instances; ++k) {
        std::cerr << "bench: " << klass << " n=" << n << " instance " << (k + 1) << '/'
                  << instances << '\n';
        const std::uint64_t label = 2 * (static_cast<std::uint64_t>(n) * 1'000'003ULL + k);
        const auto instance_seed = nmfa::mix_seed(cfg.params.seed, label);
        const auto problem = nmfa::generate({*cls, n, p, instance_seed});

        nmfa::GroundTruth ground;
        if (auto it = refs.find({n, k}); it != refs.end()) {
          ground = {{it->second}, 0, nmfa::GroundTruth::Source::BestKnown};
        } else {
          ground = nmfa::brute_force_ground(problem, flags.threads);
        }

        auto params = cfg.params;
        params.seed = nmfa::mix_seed(cfg.params.seed, label + 1);
        const auto results = nmfa::nmfa_batch(problem, params, cfg.runs, flags.threads);
        auto st = nmfa::instance_stats(results, ground);
        stats.push_back(st);

        const auto timed = [&](double v) { return flags.timing ? fmt(v) : std::string{}; };
        detail << klass << ',' << n << ',' << k << ',' << instance_seed << ','
               << fmt(ground.energy.value) << ',' << ground.degeneracy << ',' << fmt(st.p_success)
               << ',' << fmt(st.tts_runs) << ',' << timed(st.tts_seconds) << ','
               << fmt(st.mean_energy) << ',' << fmt(st.best_energy) << ','
               << timed(st.mean_wall_clock_us) << '\n';
      }
      const auto agg = nmfa::aggregate(stats);
      const auto timed = [&](double v) { return flags.timing ? fmt(v) : std::string{}; };
      summary << klass << ',' << n << ',' << agg.instances << ',' << cfg.runs << ','
              << fmt(agg.p_success.median) << ',' << fmt(agg.p_success.q25) << ','
              << fmt(agg.p_success.q75) << ',' << fmt(agg.tts_runs.median) << ','
              << fmt(agg.tts_runs.q25) << ',' << fmt(agg.tts_runs.q75) << ','
              << timed(agg.tts_seconds.median) << ',' << timed(agg.tts_seconds.q25) << ','
              << timed(agg.tts_seconds.q75) << ',' << fmt(agg.mean_energy) << ','
              << fmt(agg.best_energy) << '\n';
    }
    write_output(out, summary.str());
    if (!detail_out.empty()) write_output(detail_out, detail.str());
    return 0;
  }
};

// --- exact ------------------------------------------------------------------

struct ExactCmd {
  std::string instance;
  std::string out;
  std::size_t threads = 1;

  void add_to(CLI::App& app) {
    app.add_option("instance", instance, "G-set instance file")->required();
    app.add_option("--out", out, "Report file (default: stdout)");
    app.add_option("--threads", threads, "Enumeration threads")->check(CLI::PositiveNumber);
  }

  int run() const {
    const auto problem = nmfa::read_gset_file(instance);
    const auto ground = nmfa::brute_force_ground(problem, threads);
    std::ostringstream os;
    os << "n=" << problem.size() << " edges=" << problem.edge_count() << '\n'
       << "ground_energy=" << fmt(ground.energy.value) << '\n'
       << "degeneracy=" << ground.degeneracy << '\n';
    if (!problem.has_fields()) {
      os << "max_cut=" << fmt((problem.total_weight() - ground.energy.value) / 2.0) << '\n';
    }
    write_output(out, os.str());
    return 0;
  }
};

// --- schedule-dump ----------------------------------------------------------

struct ScheduleDumpCmd {
  std::string out;
  SolverFlags flags;

  void add_to(CLI::App& app) {
    app.add_option("--out", out, "Output CSV (default: stdout)");
    flags.add_to(app, false);
  }

  int run() const {
    const auto cfg = flags.resolve();
    std::ostringstream os;
    os << "t,f,temperature\n";
    const std::size_t t_f = cfg.params.t_f;
    for (std::size_t t = 1; t <= t_f; ++t) {
      const double f = t_f == 1 ? 0.0 : static_cast<double>(t - 1) / static_cast<double>(t_f - 1);
      os << t << ',' << fmt(f) << ',' << fmt(nmfa::schedule_eval(cfg.params.schedule, t, t_f))
         << '\n';
    }
    write_output(out, os.str());
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy mean-field annealing for Ising and MAX-CUT problems"};
  app.require_subcommand(1);

  GenerateCmd generate;
  SolveCmd solve;
  BenchCmd bench;
  ExactCmd exact;
  ScheduleDumpCmd dump;

  auto* gen_app = app.add_subcommand("generate", "Write a generated instance in G-set format");
  generate.add_to(*gen_app);
  auto* solve_app = app.add_subcommand("solve", "Run a batch of anneals on an instance");
  solve.add_to(*solve_app);
  auto* bench_app = app.add_subcommand("bench", "Success probability and TTS over instance sizes");
  bench.add_to(*bench_app);
  auto* exact_app = app.add_subcommand("exact", "Exact ground state by enumeration (n <= 26)");
  exact.add_to(*exact_app);
  auto* dump_app = app.add_subcommand("schedule-dump", "Temperature at every iteration");
  dump.add_to(*dump_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen_app) return generate.run();
    if (*solve_app) return solve.run();
    if (*bench_app) return bench.run();
    if (*exact_app) return exact.run();
    if (*dump_app) return dump.run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nmfa::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nmfa::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
