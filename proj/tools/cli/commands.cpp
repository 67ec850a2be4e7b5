#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>
#include <vector>

#include "csv.hpp"
#include "format.hpp"
#include "nlsscat/dynamics.hpp"
#include "nlsscat/errors.hpp"
#include "nlsscat/groundstate.hpp"
#include "nlsscat/initialdata.hpp"
#include "nlsscat/scattering.hpp"
#include "nlsscat/thresholds.hpp"

#ifndef NLSSCAT_VERSION
#define NLSSCAT_VERSION "unknown"
#endif

namespace nlsscat::cli {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> header_for(const char* command, const RunConfig& cfg) {
  std::vector<std::string> h = {std::string("nlsscat ") + NLSSCAT_VERSION + " " + command};
  for (auto& line : resolved_lines(cfg)) h.push_back(std::move(line));
  return h;
}

std::string num(double v) { return format_double(v); }
std::string num(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }
std::string flag(bool b) { return b ? "true" : "false"; }

Grid make_grid(const RunConfig& cfg) { return Grid(cfg.params.d, cfg.n, cfg.half_length); }

Field initial_data(const RunConfig& cfg, const Grid& g) {
  const DataSpec spec = cfg.data_spec();
  validate(spec);
  // validate(RunConfig) has already checked that the chirp is resolved.
  if (spec.family == Family::Oscillating) return oscillating_data(sample(*spec.base, g), spec.b);
  return sample(spec, g);
}

Trajectory integrate(const RunConfig& cfg, const Field& u0, bool store_fields) {
  EvolveOptions opts;
  opts.blowup_factor = cfg.blowup_factor;
  opts.boundary_tol = cfg.boundary_tol;
  opts.store_fields = store_fields;
  if (cfg.schedule == Schedule::Octave) {
    return evolve_schedule(u0, 0.0, cfg.octave_times(), cfg.dt, cfg.params, opts);
  }
  const long steps = std::lround(cfg.t_end / cfg.dt);
  const int every = static_cast<int>(std::max<long>(1, steps / cfg.samples));
  return evolve(u0, 0.0, cfg.t_end, cfg.dt, cfg.params, every, opts);
}

std::string plot_script(const std::string& prefix, bool with_cauchy) {
  std::string s;
  s += "# gnuplot script; regenerates figures from the CSVs without recomputation.\n";
  s += "set datafile separator \",\"\n";
  s += "set datafile commentschars \"#\"\n";
  s += "set key autotitle columnhead\n";
  s += "set terminal pngcairo size 1000,700\n";
  s += "set output \"" + prefix + ".png\"\n";
  s += "set multiplot layout 2,2\n";
  const std::string traj = "\"" + prefix + "_trajectory.csv\"";
  s += "set xlabel \"t\"\n";
  s += "plot " + traj + " using \"t\":\"mass\" with linespoints\n";
  s += "plot " + traj + " using \"t\":\"energy\" with linespoints\n";
  s += "set logscale xy\n";
  s += "plot " + traj + " using \"t\":\"l_alpha2\" with linespoints\n";
  if (with_cauchy) {
    s += "plot \"" + prefix + "_cauchy.csv\" using \"t\":\"increment\" with linespoints\n";
  } else {
    s += "plot " + traj + " using \"t\":\"grad_l2_sq\" with linespoints\n";
  }
  s += "unset multiplot\n";
  return s;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

struct Classified {
  Trajectory traj;
  RunReport report;
  ObservableRow initial;
  std::optional<ThresholdVerdict> threshold;
  std::optional<RapidDecay> rapid;
  std::optional<LowerBoundReport> lower;
  std::string notes;
};

Classified classify_core(const RunConfig& cfg, std::ostream* log) {
  const Params& p = cfg.params;
  const Grid g = make_grid(cfg);
  const Field u0 = initial_data(cfg, g);
  Classified c;
  c.initial = observe(u0, 0.0, p, cfg.boundary_tol);
  const ExponentTable table = exponents(p.d, p.alpha);

  if (p.lambda > 0.0 && p.alpha * p.d >= 4.0 * (1.0 - 1e-12)) {
    try {
      const Params unit{p.d, p.alpha, 1.0};
      const Field q = p.d == 1 ? soliton_closed_form_1d(p.alpha, g)
                               : petviashvili(unit, g, gaussian(g, 1.0, 1.0)).profile;
      c.threshold = classify_threshold(c.initial, make_ground_state(q, p), p);
    } catch (const std::exception& e) {
      c.notes += std::string("threshold: ") + e.what() + "\n";
    }
  }

  if (log) *log << "evolving to t = " << num(cfg.t_end) << "\n";
  c.traj = integrate(cfg, u0, true);
  const double tol = cfg.cauchy_tol > 0.0 ? cfg.cauchy_tol : default_tolerance(c.traj);
  c.report = classify_run(c.traj, tol, cfg.cauchy_stride);

  const auto la = series_of(c.traj.rows, [](const ObservableRow& r) { return r.l_alpha2; }, "l_alpha2");
  if (p.alpha >= table.alpha_crit * (1.0 - 1e-9)) {
    try {
      c.rapid = rapid_decay_check(la, table, p.alpha);
      if (p.d == 2) c.notes += "rapid decay: d = 2 is outside the range of the rapid-decay criterion\n";
    } catch (const std::exception& e) {
      c.notes += std::string("rapid decay: ") + e.what() + "\n";
    }
  }
  c.lower = lower_bound_compare(la, table, p, c.report);
  if (!c.lower->note.empty()) c.notes += "lower bound: " + c.lower->note + "\n";
  return c;
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "verdict", "tolerance", "horizon", "last_increment", "tail_slope", "decay_exponent",
      "decay_r_squared", "domain_invalid", "divergence_time", "divergence_reason", "threshold_regime",
      "eta0", "gradient_ratio", "admits_scattering_claim", "rapid_branch", "rapid_is_rapid",
      "rapid_horizon_ratio", "lower_bound_form", "lower_bound_exponent", "lower_bound_fitted",
      "lower_bound_consistent", "lower_bound_contradiction"};
  return cols;
}

std::vector<std::string> report_row(const Classified& c) {
  const RunReport& r = c.report;
  std::vector<std::string> row = {
      to_string(r.verdict),
      num(r.tolerance),
      num(r.horizon),
      r.cauchy_series.empty() ? "" : num(r.cauchy_series.value.back()),
      r.cauchy_series.empty() ? "" : num(r.tail_slope),
      r.decay_fit ? num(r.decay_fit->exponent) : "",
      r.decay_fit ? num(r.decay_fit->r_squared) : "",
      flag(r.domain_invalid),
      num(r.divergence_time),
      to_string(c.traj.divergence_reason)};
  if (c.threshold) {
    row.insert(row.end(), {to_string(c.threshold->regime), num(c.threshold->eta0),
                           num(c.threshold->gradient_ratio), flag(c.threshold->admits_scattering_claim)});
  } else {
    row.insert(row.end(), {to_string(Regime::NotApplicable), "", "", ""});
  }
  if (c.rapid) {
    row.insert(row.end(), {c.rapid->branch, flag(c.rapid->is_rapid), num(c.rapid->horizon_ratio)});
  } else {
    row.insert(row.end(), {"", "", ""});
  }
  if (c.lower && c.lower->applicable) {
    row.insert(row.end(), {c.lower->form, num(c.lower->bound_exponent), num(c.lower->fitted_exponent),
                           flag(c.lower->consistent), flag(c.lower->contradiction)});
  } else {
    row.insert(row.end(), {"", "", "", "", ""});
  }
  return row;
}

std::string summary_text(const RunConfig& cfg, const Classified& c) {
  const RunReport& r = c.report;
  std::string s;
  s += "verdict: " + std::string(to_string(r.verdict)) + "\n";
  s += "horizon: " + num(r.horizon) + "\n";
  s += "cauchy tolerance: " + num(r.tolerance) + (cfg.cauchy_tol > 0.0 ? "\n" : " (1e-4 of initial Sigma norm)\n");
  if (!r.cauchy_series.empty()) {
    s += "last cauchy increment: " + num(r.cauchy_series.value.back()) + "\n";
    s += "tail slope: " + num(r.tail_slope) + "\n";
  }
  if (r.decay_fit) s += "decay exponent of ||u||_{alpha+2}: " + num(r.decay_fit->exponent) + "\n";
  if (c.traj.diverged) {
    s += "diverged at t = " + num(r.divergence_time) + " (" + to_string(c.traj.divergence_reason) + ")\n";
  }
  if (r.domain_invalid) s += "domain invalid: mass reached the box edge\n";
  if (c.threshold) {
    s += "threshold regime: " + std::string(to_string(c.threshold->regime)) +
         ", admits scattering claim: " + flag(c.threshold->admits_scattering_claim) + "\n";
  }
  if (c.rapid) {
    s += "rapid decay (" + c.rapid->branch + "): " + flag(c.rapid->is_rapid) +
         ", horizon ratio " + num(c.rapid->horizon_ratio) + "\n";
  }
  if (c.lower && c.lower->applicable) {
    s += "lower bound (" + c.lower->form + "): fitted " + num(c.lower->fitted_exponent) + " vs bound " +
         num(c.lower->bound_exponent) + (c.lower->contradiction ? ", CONTRADICTION" : "") +
         (c.lower->informational ? ", informational" : "") + "\n";
  }
  s += c.notes;
  return s;
}

}  // namespace

int run_simulate(const RunConfig& cfg, const ExecOptions& opt, std::ostream& log) {
  ensure_dir(opt.out_dir);
  const Grid g = make_grid(cfg);
  const Field u0 = initial_data(cfg, g);
  if (opt.verbose) log << "simulate: " << cfg.n << "^" << cfg.params.d << " points\n";
  const Trajectory tr = integrate(cfg, u0, false);
  const auto header = header_for("simulate", cfg);
  write_trajectory_csv(opt.out_dir / (cfg.prefix + "_trajectory.csv"), tr.rows, header);
  if (cfg.plot) write_text(opt.out_dir / (cfg.prefix + ".gp"), plot_script(cfg.prefix, false));
  if (tr.diverged) {
    log << "diverged at t = " << num(tr.divergence_time) << " (" << to_string(tr.divergence_reason) << ")\n";
    return kDivergence;
  }
  if (tr.domain_invalid) {
    log << "domain invalid: boundary mass fraction exceeded " << num(cfg.boundary_tol) << "\n";
    return kDomainInvalid;
  }
  return kOk;
}

int run_groundstate(const RunConfig& cfg, const ExecOptions& opt, std::ostream& log) {
  if (!(cfg.params.lambda > 0.0)) throw ConfigError(0, "params.lambda: lambda > 0 required for groundstate");
  ensure_dir(opt.out_dir);
  const Grid g = make_grid(cfg);
  const Params p{cfg.params.d, cfg.params.alpha, 1.0};
  std::optional<GroundState> solved;
  try {
    solved = petviashvili(p, g, gaussian(g, 1.0, 1.0));
  } catch (const NonConvergence& e) {
    log << e.what() << "\n";
    return kDivergence;
  } catch (const DivergedIterate& e) {
    log << e.what() << "\n";
    return kDivergence;
  }
  const GroundState& q = *solved;
  const auto [r1, r2] = pohozaev_residuals(q);
  const double cgn = gn_constant(q, p);
  const auto header = header_for("groundstate", cfg);
  write_profile_csv(opt.out_dir / (cfg.prefix + "_profile.csv"), q.profile, header);
  write_table(opt.out_dir / (cfg.prefix + "_groundstate.csv"), header,
              {"iterations", "residual", "pohozaev_r1", "pohozaev_r2", "c_gn", "mass", "grad_l2_sq", "energy"},
              {{std::to_string(q.iterations), num(q.residual), num(r1), num(r2), num(cgn),
                num(l2_norm_sq(q.profile)), num(grad_l2_sq(q.profile)), num(energy(q.profile, p))}});
  if (cfg.plot && cfg.params.d == 1) {
    write_text(opt.out_dir / (cfg.prefix + ".gp"),
               "set datafile separator \",\"\nset key autotitle columnhead\n"
               "set terminal pngcairo size 800,500\nset output \"" + cfg.prefix + ".png\"\n"
               "plot \"" + cfg.prefix + "_profile.csv\" using \"x\":\"re\" with lines\n");
  }
  log << "ground state: " << q.iterations << " iterations, Pohozaev " << num(r1) << " " << num(r2)
      << ", C_GN " << num(cgn) << "\n";
  return kOk;
}

int run_classify(const RunConfig& cfg, const ExecOptions& opt, std::ostream& log) {
  ensure_dir(opt.out_dir);
  const Classified c = classify_core(cfg, opt.verbose ? &log : nullptr);
  const auto header = header_for("classify", cfg);
  write_trajectory_csv(opt.out_dir / (cfg.prefix + "_trajectory.csv"), c.traj.rows, header);
  write_table(opt.out_dir / (cfg.prefix + "_report.csv"), header, report_columns(), {report_row(c)});
  std::vector<std::vector<std::string>> inc;
  for (std::size_t i = 0; i < c.report.cauchy_series.size(); ++i) {
    inc.push_back({num(c.report.cauchy_series.t[i]), num(c.report.cauchy_series.value[i])});
  }
  write_table(opt.out_dir / (cfg.prefix + "_cauchy.csv"), header, {"t", "increment"}, inc);
  const std::string summary = summary_text(cfg, c);
  write_text(opt.out_dir / (cfg.prefix + "_summary.txt"), summary);
  if (c.report.scattering_state && cfg.scattering_state) {
    write_profile_csv(opt.out_dir / (cfg.prefix + "_scattering_state.csv"), *c.report.scattering_state, header);
  }
  if (cfg.plot) write_text(opt.out_dir / (cfg.prefix + ".gp"), plot_script(cfg.prefix, true));
  log << summary;
  return c.report.domain_invalid ? kDomainInvalid : kOk;
}

int run_sweep(const RunConfig& cfg, const ExecOptions& opt, std::ostream& log) {
  if (cfg.sweep_parameter.empty()) throw ConfigError(0, "sweep.parameter: required for sweep");
  ensure_dir(opt.out_dir);
  const std::size_t count = cfg.sweep_values.size();
  std::vector<std::vector<std::string>> rows(count);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      const double v = cfg.sweep_values[i];
      std::vector<std::string> row = {num(v)};
      try {
        const Classified c = classify_core(with_parameter(cfg, cfg.sweep_parameter, v), nullptr);
        const auto rep = report_row(c);
        row.insert(row.end(), rep.begin(), rep.end());
        row.push_back("");
      } catch (const std::exception& e) {
        row.resize(1 + report_columns().size());
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '"', '\'');
        row.push_back("\"" + msg + "\"");
      }
      if (opt.verbose) {
        std::lock_guard lock(log_mutex);
        log << cfg.sweep_parameter << " = " << num(v) << ": " << row[1] << "\n";
      }
      rows[i] = std::move(row);
    }
  };
  const int n_workers = std::max(1, std::min<int>(opt.workers, static_cast<int>(count)));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }

  std::vector<std::string> columns = {cfg.sweep_parameter};
  columns.insert(columns.end(), report_columns().begin(), report_columns().end());
  columns.push_back("error");
  write_table(opt.out_dir / (cfg.prefix + "_sweep.csv"), header_for("sweep", cfg), columns, rows);
  for (const auto& row : rows) log << cfg.sweep_parameter << " = " << row[0] << ": " << row[1] << "\n";
  return kOk;
}

}  // namespace nlsscat::cli
