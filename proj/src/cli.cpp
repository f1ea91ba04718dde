#include "phasetomo/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "phasetomo/coherent_prep.hpp"
#include "phasetomo/phase_space.hpp"
#include "phasetomo/state_io.hpp"
#include "phasetomo/tomography.hpp"

namespace phasetomo::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drops the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int n = 6;
  std::uint64_t seed = 0;
  long shots = 0;
  std::optional<double> gamma;
  double epsilon = 0.25;
  int rounds = 1;
  std::string state = "mixed:maximally";
  std::string out;
  std::string method = "circuit";
  std::string policy = "exact";
  std::string point;
  std::string line;
  std::string rect;
  std::string cat;
  std::string which;
  std::string request;
  int t_min = 4;
  int t_max = 12;
  int points = 24;
  int max_attempts = 200;
};

std::vector<long> parse_ints(const std::string& text, std::size_t count, const std::string& flag) {
  std::vector<long> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + text + "' is not a list of integers");
    }
  }
  if (v.size() != count) {
    throw UsageError(flag + ": expected " + std::to_string(count) + " comma-separated integers, got '" + text + "'");
  }
  return v;
}

DensityOperator load_state(const RunConfig& cfg, HilbertDim dim) {
  const std::string& s = cfg.state;
  if (s == "mixed:maximally") return DensityOperator::maximally_mixed(dim.size());
  const std::string basis_prefix = "pure:basis:";
  if (s.rfind(basis_prefix, 0) == 0) {
    const long k = parse_ints(s.substr(basis_prefix.size()), 1, "--state")[0];
    if (k < 0 || k >= dim.size()) throw UsageError("--state: basis index " + std::to_string(k) + " out of range");
    return DensityOperator::pure(PureState::basis(dim.size(), static_cast<int>(k)));
  }
  DensityOperator rho = as_density(read_state(s));
  if (rho.dim() != dim.size()) {
    throw DimensionMismatch("state file has dimension " + std::to_string(rho.dim()) + ", --n implies " +
                            std::to_string(dim.size()));
  }
  return rho;
}

// Collects the tables of one run and writes them either to stdout or to
// files under the output directory.
class Sink {
public:
  Sink(const RunConfig& cfg, std::ostream& out) : out_(out) {
    if (!cfg.out.empty()) {
      dir_ = fs::path(cfg.out);
      fs::create_directories(*dir_);
    }
  }

  void table(const std::string& name, const std::vector<std::string>& header,
             const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream text;
    write_line(text, header);
    for (const auto& r : rows) write_line(text, r);
    emit(name, text.str(), static_cast<long>(rows.size()));
  }

  void document(const std::string& name, const std::string& text, long rows) { emit(name, text, rows); }

  void finish(const std::string& command, const json& config, const json& summary, double wall) {
    if (!dir_) return;
    json m;
    m["command"] = command;
    m["config"] = config;
    m["version"] = kVersion;
    m["wall_time"] = wall;
    json files = json::array();
    for (const auto& [name, rows] : files_) files.push_back({{"path", name}, {"rows", rows}});
    m["files"] = files;
    if (!summary.empty()) m["summary"] = summary;
    std::ofstream f(*dir_ / "manifest.json");
    f << m.dump(2) << '\n';
  }

private:
  static void write_line(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  }

  void emit(const std::string& name, const std::string& text, long rows) {
    if (dir_) {
      std::ofstream f(*dir_ / name, std::ios::binary);
      if (!f) throw ParseError("cannot write '" + (*dir_ / name).string() + "'");
      f << text;
    } else {
      if (count_++ > 0) out_ << "# " << name << '\n';
      out_ << text;
    }
    files_.emplace_back(name, rows);
  }

  std::ostream& out_;
  std::optional<fs::path> dir_;
  std::vector<std::pair<std::string, long>> files_;
  int count_ = 0;
};

using Row = std::vector<std::string>;

Row numbers(std::initializer_list<double> xs) {
  Row r;
  for (double x : xs) r.push_back(format_number(x));
  return r;
}

bool use_circuit(const RunConfig& cfg) {
  if (cfg.method == "circuit") return true;
  if (cfg.method == "direct") return false;
  throw UsageError("--method: expected circuit or direct, got '" + cfg.method + "'");
}

PowerPolicy parse_policy(const std::string& s) {
  if (s == "exact") return PowerPolicy::Exact;
  if (s == "semiclassical") return PowerPolicy::Semiclassical;
  if (s == "hybrid") return PowerPolicy::Hybrid;
  throw UsageError("--policy: expected exact, semiclassical or hybrid, got '" + s + "'");
}

const std::vector<std::string> kGridHeader = {"q", "p", "value_re", "value_im", "stderr"};

json run_wigner(const RunConfig& cfg, Sink& sink) {
  const HilbertDim dim(cfg.n);
  const DensityOperator rho = load_state(cfg, dim);
  const EvalOptions opt{cfg.shots, cfg.seed};
  const bool circuit = use_circuit(cfg);
  const double side = dim.wigner_size();
  std::vector<Row> rows;
  if (!cfg.point.empty()) {
    const auto pt = parse_ints(cfg.point, 2, "--point");
    const int q = static_cast<int>(pt[0]);
    const int p = static_cast<int>(pt[1]);
    if (circuit) {
      const auto w = wigner_point_circuit(rho, q, p, opt);
      rows.push_back(numbers({double(q), double(p), w.value, 0.0, w.readout.standard_error / side}));
    } else {
      const double w = wigner_direct(rho, PhasePoint::make(dim, q, p, Grid::Wigner));
      rows.push_back(numbers({double(q), double(p), w, 0.0, 0.0}));
    }
  } else if (circuit) {
    for (const auto& g : wigner_grid(rho, opt)) {
      rows.push_back(numbers({double(g.q), double(g.p), g.value.real(), 0.0, g.standard_error}));
    }
  } else {
    for (int q = 0; q < dim.wigner_size(); ++q) {
      for (int p = 0; p < dim.wigner_size(); ++p) {
        const double w = wigner_direct(rho, PhasePoint::make(dim, q, p, Grid::Wigner));
        rows.push_back(numbers({double(q), double(p), w, 0.0, 0.0}));
      }
    }
  }
  sink.table("wigner.csv", kGridHeader, rows);
  return {};
}

json run_wigner_line(const RunConfig& cfg, Sink& sink) {
  if (cfg.line.empty()) throw UsageError("--line: required for wigner-line");
  const HilbertDim dim(cfg.n);
  const DensityOperator rho = load_state(cfg, dim);
  const auto v = parse_ints(cfg.line, 3, "--line");
  const LineSpec spec = LineSpec::make(dim, v[0], v[1], v[2]);
  double sum = 0.0;
  double se = 0.0;
  json summary;
  if (use_circuit(cfg)) {
    const LineMapping mapping = solve_cat_params(dim, spec);
    const auto avg = wigner_line_average(rho, spec, {cfg.shots, cfg.seed});
    sum = avg.sum;
    se = avg.standard_error;
    summary = {{"a", mapping.params.a}, {"b", mapping.params.b}, {"exchanged", mapping.exchanged}};
  } else {
    for (int q = 0; q < dim.wigner_size(); ++q) {
      for (int p = 0; p < dim.wigner_size(); ++p) {
        if (spec.contains(dim, q, p)) sum += wigner_direct(rho, PhasePoint::make(dim, q, p, Grid::Wigner));
      }
    }
  }
  sink.table("wigner_line.csv", {"n1", "n2", "n3", "sum", "stderr"},
             {numbers({double(spec.n1), double(spec.n2), double(spec.n3), sum, se})});
  return summary;
}

json run_wigner_region(const RunConfig& cfg, Sink& sink) {
  if (cfg.rect.empty()) throw UsageError("--rect: required for wigner-region");
  const HilbertDim dim(cfg.n);
  const DensityOperator rho = load_state(cfg, dim);
  const auto r = parse_ints(cfg.rect, 4, "--rect");
  const Rectangle rect{int(r[0]), int(r[1]), int(r[2]), int(r[3])};
  std::optional<CatParams> params;
  if (!cfg.cat.empty()) {
    const auto c = parse_ints(cfg.cat, 2, "--cat");
    params = CatParams{int(mod(c[0], dim.wigner_size())), int(mod(c[1], dim.wigner_size()))};
  }
  double sum = 0.0;
  double se = 0.0;
  if (use_circuit(cfg)) {
    const auto avg = wigner_region_average(rho, rect, params, {cfg.shots, cfg.seed});
    sum = avg.sum;
    se = avg.standard_error;
  } else {
    rectangle_program(dim, rect.q1, rect.q2, rect.p1, rect.p2);  // same validation as the circuit path
    for (const auto& [q, p] : mapped_region(dim, rect, params)) {
      sum += wigner_direct(rho, PhasePoint::make(dim, q, p, Grid::Wigner));
    }
  }
  Row row = numbers({double(rect.q1), double(rect.q2), double(rect.p1), double(rect.p2)});
  row.push_back(params ? std::to_string(params->a) : "");
  row.push_back(params ? std::to_string(params->b) : "");
  row.push_back(format_number(sum));
  row.push_back(format_number(se));
  sink.table("wigner_region.csv", {"q1", "q2", "p1", "p2", "a", "b", "sum", "stderr"}, {row});
  return {};
}

json run_kirkwood(const RunConfig& cfg, Sink& sink) {
  const HilbertDim dim(cfg.n);
  const DensityOperator rho = load_state(cfg, dim);
  const EvalOptions opt{cfg.shots, cfg.seed};
  const bool circuit = use_circuit(cfg);
  std::vector<Row> rows;
  auto point = [&](int q, int p) {
    if (circuit) {
      const auto k = kirkwood_circuit(rho, q, p, opt);
      return numbers({double(q), double(p), k.value.real(), k.value.imag(), k.readout.standard_error});
    }
    const Complex k = kirkwood_direct(rho, PhasePoint::make(dim, q, p, Grid::Torus));
    return numbers({double(q), double(p), k.real(), k.imag(), 0.0});
  };
  if (!cfg.point.empty()) {
    const auto pt = parse_ints(cfg.point, 2, "--point");
    rows.push_back(point(int(pt[0]), int(pt[1])));
  } else if (circuit) {
    for (const auto& g : kirkwood_grid(rho, opt)) {
      rows.push_back(numbers({double(g.q), double(g.p), g.value.real(), g.value.imag(), g.standard_error}));
    }
  } else {
    for (int q = 0; q < dim.size(); ++q) {
      for (int p = 0; p < dim.size(); ++p) rows.push_back(point(q, p));
    }
  }
  sink.table("kirkwood.csv", kGridHeader, rows);
  return {};
}

json run_husimi(const RunConfig& cfg, Sink& sink) {
  const HilbertDim dim(cfg.n);
  const DensityOperator rho = load_state(cfg, dim);
  const HarperSystem harper = harper_system(dim);
  const EvalOptions opt{cfg.shots, cfg.seed};
  const bool circuit = use_circuit(cfg);
  std::vector<Row> rows;
  auto point = [&](int q, int p) {
    PhasePoint::make(dim, q, p, Grid::Torus);
    const PureState alpha = harper_coherent(harper, dim, q, p);
    if (circuit) {
      const auto h = husimi_circuit(rho, alpha, opt);
      return numbers({double(q), double(p), h.value, 0.0, h.readout.standard_error / dim.size()});
    }
    return numbers({double(q), double(p), husimi_direct(rho, alpha), 0.0, 0.0});
  };
  if (!cfg.point.empty()) {
    const auto pt = parse_ints(cfg.point, 2, "--point");
    rows.push_back(point(int(pt[0]), int(pt[1])));
  } else if (circuit) {
    for (const auto& g : husimi_grid(rho, harper, opt)) {
      rows.push_back(numbers({double(g.q), double(g.p), g.value.real(), 0.0, g.standard_error}));
    }
  } else {
    for (int q = 0; q < dim.size(); ++q) {
      for (int p = 0; p < dim.size(); ++p) rows.push_back(point(q, p));
    }
  }
  sink.table("husimi.csv", kGridHeader, rows);
  return {};
}

json stats_json(const PrepStats& s) {
  json j;
  j["rounds"] = s.rounds;
  j["success_probabilities"] = s.success_probabilities;
  j["overlaps"] = s.overlaps;
  j["final_overlap"] = s.final_overlap;
  j["initial_overlap"] = s.initial_overlap;
  j["attempts"] = s.attempts;
  j["outcomes"] = s.outcomes;
  return j;
}

PEConfig prep_config(const RunConfig& cfg, HilbertDim dim) {
  return pe_config(cfg.n, cfg.epsilon, cfg.gamma.value_or(default_gamma(dim)), parse_policy(cfg.policy));
}

json run_prep(const RunConfig& cfg, Sink& sink) {
  const HilbertDim dim(cfg.n);
  const auto pt = parse_ints(cfg.point.empty() ? "0,0" : cfg.point, 2, "--point");
  const PEConfig pe = prep_config(cfg, dim);
  const PreparedState prepared =
      prepare_coherent(dim, int(pt[0]), int(pt[1]), pe, cfg.rounds, cfg.seed, cfg.max_attempts);

  std::vector<Row> rows;
  for (int k = 0; k < dim.size(); ++k) rows.push_back(numbers({double(k), std::norm(prepared.state[k])}));
  sink.table("prep_populations.csv", {"n", "population"}, rows);
  std::ostringstream state;
  write_state(state, prepared.state);
  sink.document("prep_state.txt", state.str(), 1);
  sink.document("prep_stats.json", stats_json(prepared.stats).dump(2) + "\n", 1);
  return {{"t", pe.t}, {"target_peak", CoherentFilter(dim, pe).target_peak()}};
}

json report_table(const DiagnosticsReport& rep, const std::string& file, Sink& sink) {
  std::vector<Row> rows;
  for (const auto& r : rep.table.rows) {
    Row row;
    for (double x : r) row.push_back(format_number(x));
    rows.push_back(std::move(row));
  }
  sink.table(file, rep.table.header, rows);
  json summary = json::object();
  for (const auto& [k, v] : rep.summary) summary[k] = v;
  if (rep.spectrum) {
    summary["ground_phase"] = rep.spectrum->ground_phase;
    summary["gap"] = rep.spectrum->gap;
  }
  return summary;
}

DiagnosticsRequest make_request(const RunConfig& cfg, std::string name) {
  DiagnosticsRequest req;
  req.name = std::move(name);
  req.gamma = cfg.gamma;
  req.t_min = cfg.t_min;
  req.t_max = cfg.t_max;
  req.points = cfg.points;
  return req;
}

json run_diagnostics(const RunConfig& cfg, Sink& sink) {
  if (cfg.request.empty()) throw UsageError("--request: required for diagnostics");
  const HilbertDim dim(cfg.n);
  const auto rep = diagnostics_suite(dim, make_request(cfg, cfg.request));
  return report_table(rep, cfg.request + ".csv", sink);
}

json run_filter_figure(const RunConfig& cfg, Sink& sink) {
  const HilbertDim dim(cfg.n);
  const PEConfig pe = prep_config(cfg, dim);
  const PreparedState prepared = prepare_coherent(dim, 0, 0, pe, cfg.rounds, cfg.seed, cfg.max_attempts);
  for (std::size_t r = 0; r < prepared.round_states.size(); ++r) {
    const PureState& s = prepared.round_states[r];
    const double overlap = prepared.stats.overlaps[r];
    std::vector<Row> rows;
    for (int k = 0; k < dim.size(); ++k) rows.push_back(numbers({double(k), std::norm(s[k]), overlap}));
    sink.table("filter_round" + std::to_string(r + 1) + ".csv", {"n", "population", "overlap"}, rows);
  }
  json stats;
  stats["rounds"] = prepared.stats.rounds;
  stats["success_probabilities"] = prepared.stats.success_probabilities;
  stats["overlaps"] = prepared.stats.overlaps;
  stats["final_overlap"] = prepared.stats.final_overlap;
  sink.document("filter_stats.json", stats.dump(2) + "\n", 1);
  return {{"attempts", prepared.stats.attempts}, {"initial_overlap", prepared.stats.initial_overlap}};
}

json run_figures(const RunConfig& cfg, Sink& sink) {
  static const std::vector<std::pair<std::string, std::string>> kFigures = {
      {"populations", "populations"}, {"eigen", "eigenconvergence"},       {"fidelity", "fidelity_curve"},
      {"gap", "gap_vs_gamma"},        {"region", "parameter_region"}};
  if (cfg.which == "filter") return run_filter_figure(cfg, sink);
  for (const auto& [fig, request] : kFigures) {
    if (fig == cfg.which) {
      const auto rep = diagnostics_suite(HilbertDim(cfg.n), make_request(cfg, request));
      return report_table(rep, fig + ".csv", sink);
    }
  }
  throw UnknownFigure("--which: unknown figure '" + cfg.which + "'");
}

json resolved_config(const RunConfig& cfg) {
  json j;
  j["n"] = cfg.n;
  j["seed"] = cfg.seed;
  j["shots"] = cfg.shots;
  j["gamma"] = cfg.gamma.value_or(0.5 / (1 << cfg.n));
  j["epsilon"] = cfg.epsilon;
  j["rounds"] = cfg.rounds;
  j["input_state_path"] = cfg.state;
  j["output_dir"] = cfg.out;
  j["method"] = cfg.method;
  j["policy"] = cfg.policy;
  auto opt = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  opt("point", cfg.point);
  opt("line", cfg.line);
  opt("rect", cfg.rect);
  opt("cat", cfg.cat);
  opt("which", cfg.which);
  opt("request", cfg.request);
  return j;
}

// JSON config values apply only where the flag was not given.
void apply_config_file(const std::string& path, RunConfig& cfg, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("--config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("--config: top level must be an object");
  auto given = [&](const std::string& flag) { return app.get_option(flag)->count() > 0; };
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "n") {
        if (!given("--n")) cfg.n = value.get<int>();
      } else if (key == "seed") {
        if (!given("--seed")) cfg.seed = value.get<std::uint64_t>();
      } else if (key == "shots") {
        if (!given("--shots")) cfg.shots = value.get<long>();
      } else if (key == "gamma") {
        if (!given("--gamma")) cfg.gamma = value.get<double>();
      } else if (key == "epsilon") {
        if (!given("--epsilon")) cfg.epsilon = value.get<double>();
      } else if (key == "rounds") {
        if (!given("--rounds")) cfg.rounds = value.get<int>();
      } else if (key == "input_state_path" || key == "state") {
        if (!given("--state")) cfg.state = value.get<std::string>();
      } else if (key == "output_dir" || key == "out") {
        if (!given("--out")) cfg.out = value.get<std::string>();
      } else if (key == "method") {
        if (!given("--method")) cfg.method = value.get<std::string>();
      } else if (key == "policy") {
        if (!given("--policy")) cfg.policy = value.get<std::string>();
      } else {
        throw UsageError("--config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("--config: ") + e.what());
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.n < 2 || cfg.n > 10) throw UsageError("--n: expected 2..10 qubits, got " + std::to_string(cfg.n));
  if (cfg.shots < 0) throw UsageError("--shots: must be >= 0");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw UsageError("--epsilon: must lie in (0,1)");
  if (cfg.rounds < 1) throw UsageError("--rounds: must be >= 1");
  if (cfg.gamma && !(*cfg.gamma > 0.0)) throw UsageError("--gamma: must be positive");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-space tomography circuits and coherent-state preparation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunConfig cfg;
  double gamma = 0.0;
  std::string config_path;
  app.add_option("--n", cfg.n, "system qubits (N = 2^n)");
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--shots", cfg.shots, "probe shots per setting, 0 = exact");
  app.add_option("--gamma", gamma, "kick strength (default 0.5/N)");
  app.add_option("--epsilon", cfg.epsilon, "phase estimation failure budget");
  app.add_option("--rounds", cfg.rounds, "filter rounds");
  app.add_option("--state", cfg.state, "state file, mixed:maximally or pure:basis:<k>");
  app.add_option("--out", cfg.out, "output directory (stdout when absent)");
  app.add_option("--config", config_path, "JSON config; flags take precedence");
  app.add_option("--method", cfg.method, "circuit or direct");
  app.add_option("--policy", cfg.policy, "power policy: exact, semiclassical or hybrid");
  app.add_option("--point", cfg.point, "q,p");
  app.add_option("--line", cfg.line, "n1,n2,n3");
  app.add_option("--rect", cfg.rect, "q1,q2,p1,p2");
  app.add_option("--cat", cfg.cat, "a,b");
  app.add_option("--which", cfg.which, "figure name");
  app.add_option("--request", cfg.request, "diagnostics request");
  app.add_option("--t-min", cfg.t_min, "first exponent of the parameter region");
  app.add_option("--t-max", cfg.t_max, "last exponent of fidelity and region sweeps");
  app.add_option("--points", cfg.points, "gamma grid size");
  app.add_option("--max-attempts", cfg.max_attempts, "filter restarts before giving up");

  using Runner = json (*)(const RunConfig&, Sink&);
  struct Command {
    const char* name;
    const char* help;
    Runner run;
  };
  const std::vector<Command> commands = {
      {"wigner", "Wigner function on the 2N x 2N grid, or one --point", run_wigner},
      {"wigner-line", "sum of W along n1 q + n2 p = n3 (mod 2N)", run_wigner_line},
      {"wigner-region", "sum of W over a rectangle, optionally cat-mapped", run_wigner_region},
      {"kirkwood", "Kirkwood distribution on the N x N grid, or one --point", run_kirkwood},
      {"husimi", "Husimi distribution over Harper coherent states", run_husimi},
      {"prep-coherent", "prepare a coherent state by phase-estimation filtering", run_prep},
      {"diagnostics", "spectral and fidelity diagnostics (--request)", run_diagnostics},
      {"figures", "figure data: populations, eigen, fidelity, gap, region, filter", run_figures}};
  for (const auto& c : commands) app.add_subcommand(c.name, c.help)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (!config_path.empty()) apply_config_file(config_path, cfg, app);
    if (app.get_option("--gamma")->count() > 0) cfg.gamma = gamma;
    validate(cfg);
    Sink sink(cfg, out);
    Runner run = nullptr;
    for (const auto& c : commands) {
      if (command == c.name) run = c.run;
    }
    const json summary = run(cfg, sink);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    sink.finish(command, resolved_config(cfg), summary, wall);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnknownFigure& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnknownRequest& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const TomoError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }
}

}  // namespace phasetomo::cli
