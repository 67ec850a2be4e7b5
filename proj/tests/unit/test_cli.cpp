#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/csv.hpp"
#include "cli/format.hpp"

using namespace nlsscat;
using namespace nlsscat::cli;
namespace fs = std::filesystem;

namespace {

const char* const kMinimal =
    "[params]\n"
    "d = 1\n"
    "alpha = 3\n"
    "lambda = -1\n"
    "[data]\n"
    "family = gaussian\n";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> data_lines(const fs::path& p) {
  std::vector<std::string> out;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.front() != '#') out.push_back(line);
  }
  return out;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::current_path() / "cli_scratch" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("minimal config takes documented defaults") {
  const RunConfig c = parse_config(kMinimal);
  CHECK(c.params.d == 1);
  CHECK(c.params.alpha == 3.0);
  CHECK(c.params.lambda == -1.0);
  CHECK(c.n == 256);
  CHECK(c.half_length == 20.0);
  CHECK(c.schedule == Schedule::Octave);
  CHECK(c.cauchy_stride == 4);
  CHECK(c.prefix == "run");

  const auto lines = resolved_lines(c);
  CHECK(lines.front() == "params.d = 1");
  bool has_dt = false;
  for (const auto& l : lines) has_dt = has_dt || l == "time.dt = 0.001";
  CHECK(has_dt);
}

TEST_CASE("echoed config parses back to the same config") {
  const RunConfig c = parse_config(std::string(kMinimal) + "[grid]\nn = 512\nhalf_length = 30.5\n[time]\ndt = 2e-3\n");
  std::string doc;
  std::string section;
  for (const auto& line : resolved_lines(c)) {
    const auto dot = line.find('.');
    const std::string s = line.substr(0, dot);
    if (s != section) doc += "[" + (section = s) + "]\n";
    doc += line.substr(dot + 1) + "\n";
  }
  CHECK(resolved_lines(parse_config(doc)) == resolved_lines(c));
}

TEST_CASE("config errors name the key, constraint or line") {
  CHECK(error_of("[params]\nalpha = -1\n").find("alpha > 0") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "[grid]\nn = 100\n").find("grid.n") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "[grid]\nbogus = 1\n").find("line 8") != std::string::npos);
  CHECK(error_of("[nowhere]\n").find("unknown section") != std::string::npos);
  CHECK(error_of("[params]\nalpha = 3x\n").find("line 2") != std::string::npos);
  CHECK(error_of("alpha = 3\n").find("outside") != std::string::npos);
  CHECK(error_of("[params]\nalpha\n").find("key = value") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "[outputs]\nplot = maybe\n").find("true or false") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "[sweep]\nparameter = dt\nvalues = 1\n").find("sweep.parameter") !=
        std::string::npos);
  CHECK(error_of("[params]\nd = 2\n[data]\nfamily = soliton\n").find("d = 1") != std::string::npos);
}

TEST_CASE("stability guard refuses large steps before any compute") {
  // n = 1024 on [-20, 20): k_max = 80.4, so dt must stay below ~4.9e-4.
  const std::string text = std::string(kMinimal) + "[grid]\nn = 1024\n[time]\n";
  CHECK(error_of(text + "dt = 1e-3\n").find("stability") != std::string::npos);
  CHECK(error_of(text + "dt = 4e-4\n").empty());
}

TEST_CASE("trajectory CSV") {
  const fs::path dir = scratch("csv");
  write_trajectory_csv(dir / "empty.csv", {}, {"note"});
  CHECK(data_lines(dir / "empty.csv").size() == 1);
  CHECK(slurp(dir / "empty.csv") ==
        "# note\nt,mass,energy,grad_l2_sq,l_alpha2,variance,pt_norm_sq,n_monitor,e1,e2,boundary_fraction\n");

  ObservableRow r;
  r.t = 0.1;
  r.mass = 1.0 / 3.0;
  r.energy = -2.0 / 3.0;
  r.grad_l2_sq = 1e-300;
  r.l_alpha2 = 0.7071067811865476;
  r.variance = 123456789.123456789;
  r.pt_norm_sq = 5e-324;
  r.n_monitor = -0.0;
  r.boundary_fraction = 2.2e-16;
  write_trajectory_csv(dir / "one.csv", {r}, {});
  CHECK(data_lines(dir / "one.csv").size() == 2);
  CHECK(data_lines(dir / "one.csv")[1].find(",,") != std::string::npos);

  ObservableRow s = r;
  s.t = 0.2;
  s.e1 = 1.0 / 7.0;
  s.e2 = -1e10 / 3.0;
  write_trajectory_csv(dir / "two.csv", {r, s}, {"a", "b"});
  const auto back = read_trajectory_csv(dir / "two.csv");
  REQUIRE(back.size() == 2);
  for (int i = 0; i < 2; ++i) {
    const ObservableRow& w = i == 0 ? r : s;
    CHECK(back[i].t == w.t);
    CHECK(back[i].mass == w.mass);
    CHECK(back[i].energy == w.energy);
    CHECK(back[i].grad_l2_sq == w.grad_l2_sq);
    CHECK(back[i].l_alpha2 == w.l_alpha2);
    CHECK(back[i].variance == w.variance);
    CHECK(back[i].pt_norm_sq == w.pt_norm_sq);
    CHECK(back[i].boundary_fraction == w.boundary_fraction);
    CHECK(back[i].e1 == w.e1);
    CHECK(back[i].e2 == w.e2);
  }
  CHECK(std::signbit(back[0].n_monitor));
  CHECK_THROWS_AS(write_trajectory_csv(dir / "missing" / "x.csv", {}, {}), IoError);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-310, 6.02214076e23, -2.5}) {
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK_FALSE(parse_double("1.0x"));
}

namespace {

const char* const kSmallDefocusing =
    "[params]\n"
    "d = 1\n"
    "alpha = 3\n"
    "lambda = -1\n"
    "[grid]\n"
    "n = 1024\n"
    "half_length = 100\n"
    "[time]\n"
    "t_end = 10\n"
    "dt = 2e-3\n"
    "[data]\n"
    "family = gaussian\n"
    "amplitude = 0.1\n"
    "[outputs]\n"
    "prefix = defocus\n";

}  // namespace

TEST_CASE("simulate writes a deterministic trajectory") {
  const RunConfig cfg = parse_config(kSmallDefocusing);
  std::ostringstream log;
  ExecOptions a;
  a.out_dir = scratch("sim_a");
  ExecOptions b;
  b.out_dir = scratch("sim_b");
  CHECK(run_simulate(cfg, a, log) == kOk);
  CHECK(run_simulate(cfg, b, log) == kOk);
  const std::string first = slurp(a.out_dir / "defocus_trajectory.csv");
  CHECK(first == slurp(b.out_dir / "defocus_trajectory.csv"));
  CHECK(first.rfind("# nlsscat ", 0) == 0);
  CHECK(first.find("# grid.half_length = 100\n") != std::string::npos);
  CHECK(fs::exists(a.out_dir / "defocus.gp"));
  // 12 octaves at 4 samples each, plus t = 0 and t_end.
  CHECK(read_trajectory_csv(a.out_dir / "defocus_trajectory.csv").size() == 50);
}

TEST_CASE("classify on a small defocusing run") {
  const RunConfig cfg = parse_config(kSmallDefocusing);
  std::ostringstream log;
  ExecOptions opt;
  opt.out_dir = scratch("classify");
  CHECK(run_classify(cfg, opt, log) == kOk);
  CHECK(log.str().find("verdict: Scattered") != std::string::npos);
  const auto report = data_lines(opt.out_dir / "defocus_report.csv");
  REQUIRE(report.size() == 2);
  CHECK(report[1].rfind("Scattered,", 0) == 0);
  CHECK(fs::exists(opt.out_dir / "defocus_scattering_state.csv"));
  CHECK(fs::exists(opt.out_dir / "defocus_summary.txt"));
  CHECK(data_lines(opt.out_dir / "defocus_scattering_state.csv").size() == 1025);
}

TEST_CASE("sweep over b gives one verdict row per value") {
  const std::string text =
      "[params]\nd = 1\nalpha = 2.5615528128088303\nlambda = 1\n"
      "[grid]\nn = 4096\nhalf_length = 100\n"
      "[time]\nt_end = 0.5\ndt = 5e-4\noctaves = 4\n"
      "[data]\nfamily = oscillating\nbase = gaussian\namplitude = 0.15\n"
      "[sweep]\nparameter = b\nvalues = 1, 2, 4, 8\n"
      "[outputs]\nprefix = osc\nplot = false\n";
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.sweep_values == std::vector<double>{1.0, 2.0, 4.0, 8.0});
  // Too coarse for the b = 8 chirp: refused at validation.
  std::string coarse = text;
  coarse.replace(coarse.find("n = 4096"), 8, "n = 512 ");
  CHECK(error_of(coarse).find("data.b") != std::string::npos);
  std::ostringstream log;
  ExecOptions opt;
  opt.out_dir = scratch("sweep");
  opt.workers = 2;
  CHECK(run_sweep(cfg, opt, log) == kOk);
  const auto lines = data_lines(opt.out_dir / "osc_sweep.csv");
  REQUIRE(lines.size() == 5);
  CHECK(lines[0].rfind("b,verdict,", 0) == 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].back() == ',');  // no error recorded
  }
  CHECK_FALSE(fs::exists(opt.out_dir / "osc.gp"));
}

TEST_CASE("exit codes for divergence and domain failure") {
  std::ostringstream log;
  const RunConfig blow = parse_config(
      "[params]\nd = 1\nalpha = 6\nlambda = 1\n"
      "[grid]\nn = 512\nhalf_length = 10\n"
      "[time]\nt_end = 0.1\ndt = 2e-4\nschedule = uniform\nsamples = 10\n"
      "[data]\namplitude = 1.5\n"
      "[tolerances]\nblowup_factor = 1.3\n");
  ExecOptions opt;
  opt.out_dir = scratch("codes");
  CHECK(run_simulate(blow, opt, log) == kDivergence);

  const RunConfig wide = parse_config(
      "[params]\nd = 1\nalpha = 3\nlambda = -1\n"
      "[grid]\nn = 256\nhalf_length = 10\n"
      "[time]\nt_end = 4\ndt = 1e-3\n"
      "[data]\nwidth = 1\n");
  CHECK(run_simulate(wide, opt, log) == kDomainInvalid);
  CHECK(run_classify(wide, opt, log) == kDomainInvalid);

  ExecOptions bad;
  bad.out_dir = "/proc/nlsscat-not-writable";
  CHECK_THROWS_AS(run_simulate(parse_config(kSmallDefocusing), bad, log), IoError);
}

TEST_CASE("groundstate command") {
  const RunConfig cfg = parse_config(
      "[params]\nd = 1\nalpha = 2\nlambda = 1\n"
      "[grid]\nn = 512\nhalf_length = 20\n"
      "[time]\ndt = 1e-4\n"
      "[outputs]\nprefix = q\n");
  std::ostringstream log;
  ExecOptions opt;
  opt.out_dir = scratch("gs");
  CHECK(run_groundstate(cfg, opt, log) == kOk);
  const auto rows = data_lines(opt.out_dir / "q_groundstate.csv");
  REQUIRE(rows.size() == 2);
  CHECK(data_lines(opt.out_dir / "q_profile.csv").size() == 513);
  CHECK_THROWS_AS(run_groundstate(parse_config(kMinimal), opt, log), ConfigError);
}
