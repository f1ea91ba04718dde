#include "phasetomo/coherent_prep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "phasetomo/parallel.hpp"

namespace phasetomo {

namespace {

constexpr const char* kCounting = "counting";
constexpr const char* kSystem = "system";

// Linear-gap regime bound on gamma N.
constexpr double kLinearGapLimit = 0.6;

Matrix unitary_power_of_two(const Matrix& u, int j) {
  Matrix m = u;
  for (int i = 0; i < j; ++i) m = m * m;
  return m;
}

// Index of the column of `vectors` closest to `reference`.
int closest_eigenvector(const Matrix& vectors, const PureState& reference) {
  const Vector c = vectors.adjoint() * reference.amplitudes();
  Eigen::Index best = 0;
  c.cwiseAbs2().maxCoeff(&best);
  return static_cast<int>(best);
}

double nearest_gap(const RealVector& phases, int index) {
  double gap = 1.0;
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    if (i == index) continue;
    gap = std::min(gap, cyclic_distance(phases(i), phases(index)));
  }
  return gap;
}

// Ground gap of U(gamma), the ground being the eigenvector closest to Phi_0.
double ground_gap(HilbertDim dim, double gamma, const PureState& ground) {
  const UnitarySpectrum s = unitary_spectrum(kicked_map(dim, gamma));
  return nearest_gap(s.phases, closest_eigenvector(s.vectors, ground));
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  LineFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  return f;
}

// Bisection on log2(gamma) for the crossing of a predicate that holds at
// `lo` and fails at `hi` (or the reverse).
double bisect_log2(double lo, double hi, const std::function<bool(double)>& holds, int iterations = 50) {
  double a = std::log2(lo);
  double b = std::log2(hi);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (a + b);
    if (holds(std::exp2(mid))) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return std::exp2(0.5 * (a + b));
}

}  // namespace

SquareState square_state(HilbertDim dim) {
  const int n = dim.qubits();
  if (n < 2) throw InvalidDimension("square state needs at least 2 qubits");
  const int half = n / 2;
  const int w = 1 << half;
  const int s = 1 - w / 2;

  auto machine = MachineState::init(RegisterLayout({{kSystem, n}}), {std::uint64_t{0}});
  for (int b = 0; b < half; ++b) machine.apply(hadamard({kSystem, b}));
  const auto shift = static_cast<std::uint64_t>(mod(s, dim.size()));
  if (shift != 0) machine.apply(register_unitary(kSystem, matrix_power(shift_operator(dim), shift)));

  return {PureState::normalized(machine.amplitudes()), SquareStateSpec{n, w, s}};
}

int resolution_qubits(double gap) {
  if (!(gap > 0.0)) throw InvalidBudget("phase gap must be positive");
  return static_cast<int>(std::ceil(std::log2(1.0 / gap) - 1e-12));
}

double default_gamma(HilbertDim dim) { return 0.5 / dim.size(); }

PEConfig pe_config(int n, double epsilon, double gamma, PowerPolicy policy, std::optional<double> gap,
                   std::optional<int> hybrid_threshold) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidBudget("epsilon must lie in (0,1)");
  if (!(gamma > 0.0)) throw InvalidBudget("gamma must be positive");
  const HilbertDim dim(n);
  PEConfig c;
  c.n = n;
  c.epsilon = epsilon;
  c.gamma = gamma;
  c.policy = policy;
  // the small slack keeps exact powers of two (eps = 1/4) from rounding up
  c.t = static_cast<int>(std::ceil(n + std::log2(2.0 + 1.0 / (2.0 * epsilon)) - 1e-12));
  c.hybrid_threshold = hybrid_threshold.value_or(n - 4);
  c.linear_gap_regime = gamma * dim.size() < kLinearGapLimit;
  if (gap) c.resolution_qubits = resolution_qubits(*gap);
  return c;
}

std::vector<ApproxPower> power_ladder(HilbertDim dim, double gamma, int count, PowerPolicy policy,
                                      int hybrid_threshold) {
  std::vector<ApproxPower> ladder;
  ladder.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int j = 0; j < count; ++j) {
    const double scaled = std::ldexp(gamma, j);
    switch (policy) {
      case PowerPolicy::Exact:
        if (j == 0) {
          ladder.push_back({kicked_map(dim, gamma), PowerMode::Exact});
        } else {
          const Matrix& prev = ladder.back().matrix;
          ladder.push_back({prev * prev, PowerMode::Exact});
        }
        break;
      case PowerPolicy::Semiclassical:
        ladder.push_back({kicked_map(dim, scaled), PowerMode::Semiclassical});
        break;
      case PowerPolicy::Hybrid:
        if (j == 0 || j <= hybrid_threshold) {
          ladder.push_back({kicked_map(dim, scaled), PowerMode::Semiclassical});
        } else {
          // one multiplication per extra doubling
          const Matrix& prev = ladder.back().matrix;
          ladder.push_back({prev * prev, PowerMode::Product});
        }
        break;
    }
  }
  return ladder;
}

ApproxPower approx_power(HilbertDim dim, double gamma, int j, PowerPolicy policy, int hybrid_threshold) {
  if (j < 0) throw InvalidBudget("exponent must be non-negative");
  if (policy == PowerPolicy::Semiclassical) {
    return {kicked_map(dim, std::ldexp(gamma, j)), PowerMode::Semiclassical};
  }
  auto ladder = power_ladder(dim, gamma, j + 1, policy, hybrid_threshold);
  return std::move(ladder.back());
}

// ---------------------------------------------------------------------------

PhaseEstimator::PhaseEstimator(std::vector<Matrix> powers) : powers_(std::move(powers)) {
  if (powers_.empty()) throw InvalidBudget("phase estimation needs at least one counting qubit");
  const auto size = powers_.front().rows();
  for (const auto& m : powers_) {
    if (m.rows() != size || m.cols() != size) throw DimensionMismatch("controlled powers differ in size");
  }
  system_qubits_ = HilbertDim::from_size(size).qubits();
}

MachineState PhaseEstimator::prepare(const PureState& input) const {
  if (input.dim() != powers_.front().rows()) throw DimensionMismatch("input does not match the unitary");
  const int t = counting_qubits();
  auto m = MachineState::init(RegisterLayout({{kCounting, t}, {kSystem, system_qubits_}}),
                              {std::uint64_t{0}, input});
  for (int j = 0; j < t; ++j) m.apply(hadamard({kCounting, j}));
  for (int j = 0; j < t; ++j) {
    m.apply(probe_ctrl({kCounting, j}, {register_unitary(kSystem, powers_[static_cast<std::size_t>(j)])}));
  }
  m.apply(inverse_qft(kCounting));
  return m;
}

std::vector<double> PhaseEstimator::outcome_distribution(const PureState& input) const {
  return prepare(input).register_probabilities(kCounting);
}

PhaseEstimator::Run PhaseEstimator::run(const PureState& input, std::uint64_t seed) const {
  const MachineState m = prepare(input);
  auto dist = m.register_probabilities(kCounting);
  Measurement meas = measure_register(m, kCounting, seed);
  return {meas.outcome, meas.probability, meas.collapsed.extract_register(kSystem), std::move(dist)};
}

namespace {

std::vector<Matrix> ladder_matrices(const std::vector<ApproxPower>& ladder) {
  std::vector<Matrix> out;
  out.reserve(ladder.size());
  for (const auto& p : ladder) out.push_back(p.matrix);
  return out;
}

}  // namespace

CoherentFilter::CoherentFilter(HilbertDim dim, PEConfig config)
    : dim_(dim),
      config_(config),
      harper_(harper_system(dim)),
      estimator_([&] {
        if (config.n != dim.qubits()) throw DimensionMismatch("config qubits differ from the dimension");
        auto ladder = power_ladder(dim, config.gamma, config.t, config.policy, config.hybrid_threshold);
        for (const auto& p : ladder) modes_.push_back(p.mode);
        return ladder_matrices(ladder);
      }()) {
  const UnitarySpectrum s = unitary_spectrum(kicked_map(dim, config.gamma));
  const int g = closest_eigenvector(s.vectors, harper_.ground);
  ground_phase_ = s.phases(g);
  const double bins = std::ldexp(1.0, config.t);
  target_ = static_cast<std::uint64_t>(mod(std::llround(ground_phase_ * bins), static_cast<std::int64_t>(bins)));
}

FilterOutcome CoherentFilter::run(const PureState& input, std::uint64_t seed) const {
  auto r = estimator_.run(input, seed);
  const auto peak = std::max_element(r.distribution.begin(), r.distribution.end());
  FilterOutcome o{r.outcome,
                  std::ldexp(static_cast<double>(r.outcome), -config_.t),
                  r.outcome == target_,
                  std::move(r.output),
                  r.probability,
                  target_,
                  static_cast<std::uint64_t>(peak - r.distribution.begin())};
  return o;
}

FilterOutcome phase_estimation_filter(const PureState& input, const PEConfig& config, std::uint64_t seed) {
  const CoherentFilter filter(HilbertDim(config.n), config);
  return filter.run(input, seed);
}

PreparedState prepare_coherent(const CoherentFilter& filter, int q, int p, int rounds, std::uint64_t seed,
                               int max_attempts) {
  if (rounds < 1) throw InvalidBudget("rounds must be >= 1");
  if (max_attempts < 1) throw InvalidBudget("max_attempts must be >= 1");
  const HilbertDim dim = filter.dim();
  const PureState& ground = filter.harper().ground;
  const PureState start = square_state(dim).state;

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const std::uint64_t attempt_seed = derive_seed(seed, static_cast<std::uint64_t>(attempt));
    PrepStats stats;
    stats.rounds = rounds;
    stats.attempts = attempt + 1;
    stats.initial_overlap = ground.fidelity(start);
    std::vector<PureState> states;
    PureState current = start;
    bool ok = true;
    for (int r = 0; r < rounds; ++r) {
      FilterOutcome o = filter.run(current, derive_seed(attempt_seed, static_cast<std::uint64_t>(r)));
      stats.outcomes.push_back(o.k);
      if (!o.success) {
        ok = false;
        break;
      }
      current = std::move(o.output_state);
      stats.success_probabilities.push_back(o.outcome_probability);
      stats.overlaps.push_back(ground.fidelity(current));
      states.push_back(current);
    }
    if (!ok) continue;
    stats.final_overlap = stats.overlaps.back();
    PureState moved = PureState::normalized(translation(dim, q, p) * current.amplitudes());
    return {std::move(moved), std::move(stats), std::move(states)};
  }
  throw FilterFailed(max_attempts);
}

PreparedState prepare_coherent(HilbertDim dim, int q, int p, const PEConfig& config, int rounds, std::uint64_t seed,
                               int max_attempts) {
  const CoherentFilter filter(dim, config);
  return prepare_coherent(filter, q, p, rounds, seed, max_attempts);
}

// ---------------------------------------------------------------------------
// Diagnostics

SpectralDiagnostics spectral_diagnostics(HilbertDim dim, double gamma, const PureState& reference,
                                         const HarperSystem& harper) {
  if (reference.dim() != dim.size()) throw DimensionMismatch("reference state has the wrong dimension");
  UnitarySpectrum s = unitary_spectrum(kicked_map(dim, gamma));
  SpectralDiagnostics d;
  d.ground_index = closest_eigenvector(s.vectors, harper.ground);
  d.ground_phase = s.phases(d.ground_index);
  d.gap = nearest_gap(s.phases, d.ground_index);
  const Vector c = s.vectors.adjoint() * reference.amplitudes();
  d.overlaps.resize(static_cast<std::size_t>(c.size()));
  for (Eigen::Index i = 0; i < c.size(); ++i) d.overlaps[static_cast<std::size_t>(i)] = std::norm(c(i));
  d.ground_overlap = std::norm(s.vectors.col(d.ground_index).dot(harper.ground.amplitudes()));
  d.eigenphases = std::move(s.phases);
  d.eigenvectors = std::move(s.vectors);
  return d;
}

double semiclassical_fidelity(HilbertDim dim, double gamma, int t, const PureState& psi) {
  const Vector exact = unitary_power_of_two(kicked_map(dim, gamma), t) * psi.amplitudes();
  const Vector approx = kicked_map(dim, std::ldexp(gamma, t)) * psi.amplitudes();
  return std::sqrt(std::abs(exact.dot(approx)));
}

FidelityCurve fidelity_curve(HilbertDim dim, double gamma, int t_max, double threshold) {
  if (t_max < 0) throw InvalidBudget("t_max must be >= 0");
  const PureState psi = square_state(dim).state;
  // U^(2^t) psi by successive squaring of the matrix, one product per step
  Matrix power = kicked_map(dim, gamma);
  FidelityCurve c;
  for (int t = 0; t <= t_max; ++t) {
    if (t > 0) power = power * power;
    const Vector exact = power * psi.amplitudes();
    const Vector approx = kicked_map(dim, std::ldexp(gamma, t)) * psi.amplitudes();
    c.t.push_back(t);
    c.fidelity.push_back(std::sqrt(std::abs(exact.dot(approx))));
  }
  for (std::size_t i = 0; i < c.fidelity.size() && c.fidelity[i] > threshold; ++i) c.t_s = c.t[i];
  return c;
}

std::vector<double> gamma_grid(HilbertDim dim, int points, double max_product) {
  if (points < 1) throw InvalidBudget("gamma grid needs at least one point");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(points));
  for (int i = 1; i <= points; ++i) {
    g.push_back(max_product * i / (points + 1) / dim.size());
  }
  return g;
}

GapCurve gap_vs_gamma(HilbertDim dim, const std::vector<double>& gammas) {
  if (gammas.empty()) throw InvalidBudget("empty gamma list");
  const HarperSystem harper = harper_system(dim);
  GapCurve c;
  c.gamma = gammas;
  c.delta_phi = parallel_map(gammas.size(), [&](std::size_t i) { return ground_gap(dim, gammas[i], harper.ground); });

  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    sxy += gammas[i] * c.delta_phi[i];
    sxx += gammas[i] * gammas[i];
  }
  c.slope = sxy / sxx;
  const double mean = std::accumulate(c.delta_phi.begin(), c.delta_phi.end(), 0.0) / gammas.size();
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    ss_res += std::pow(c.delta_phi[i] - c.slope * gammas[i], 2);
    ss_tot += std::pow(c.delta_phi[i] - mean, 2);
  }
  c.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return c;
}

ParameterRegion parameter_region(HilbertDim dim, int t_min, int t_max, double threshold) {
  if (t_min < 0 || t_max < t_min) throw InvalidBudget("bad t range for the parameter region");
  const PureState psi = square_state(dim).state;
  const double g_hi = kLinearGapLimit / dim.size();
  const double g_lo = 1e-7 / dim.size();
  // The gap is only linear for small gamma N (it collapses past ~1.5 at
  // N=64), so the resolution side uses the fitted law dphi = slope * gamma.
  const double gap_slope = gap_vs_gamma(dim, gamma_grid(dim, 12)).slope;

  ParameterRegion region;
  for (int t = t_min; t <= t_max; ++t) region.t.push_back(t);
  region.gamma_fidelity_max = parallel_map(region.t.size(), [&](std::size_t i) {
    const int t = region.t[i];
    auto fid_ok = [&](double g) { return semiclassical_fidelity(dim, g, t, psi) > threshold; };
    return fid_ok(g_hi) ? g_hi : bisect_log2(g_lo, g_hi, fid_ok);
  });

  std::vector<double> ts;
  std::vector<double> lf;
  std::vector<double> lr;
  for (std::size_t i = 0; i < region.t.size(); ++i) {
    // resolved when the gap spans at least one counting bin
    region.gamma_resolution_min.push_back(std::ldexp(1.0, -region.t[i]) / gap_slope);
    ts.push_back(region.t[i]);
    lf.push_back(std::log2(region.gamma_fidelity_max[i]));
    lr.push_back(std::log2(region.gamma_resolution_min[i]));
  }
  if (ts.size() >= 2) {
    region.slope_fidelity = least_squares(ts, lf).slope;
    region.slope_resolution = least_squares(ts, lr).slope;
  }
  // vertical distance in log2(gamma) over the common slope = shift along t
  double gap = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) gap += lr[i] - lf[i];
  gap /= static_cast<double>(ts.size());
  const double slope = 0.5 * std::abs(region.slope_fidelity + region.slope_resolution);
  region.offset_qubits = slope > 0 ? gap / slope : gap;
  return region;
}

EigenConvergence eigen_convergence(HilbertDim dim, const std::vector<double>& gammas) {
  const HarperSystem harper = harper_system(dim);
  EigenConvergence e;
  e.gamma = gammas;
  e.overlap = parallel_map(gammas.size(), [&](std::size_t i) {
    const UnitarySpectrum s = unitary_spectrum(kicked_map(dim, gammas[i]));
    const Vector c = s.vectors.adjoint() * harper.ground.amplitudes();
    return c.cwiseAbs2().maxCoeff();
  });
  return e;
}

Populations coherent_populations(HilbertDim dim) {
  const HarperSystem harper = harper_system(dim);
  const PureState cont = continuous_coherent(dim, 0, 0);
  Populations pop;
  for (int k = 0; k < dim.size(); ++k) {
    pop.discrete.push_back(std::norm(harper.ground[k]));
    pop.continuous.push_back(std::norm(cont[k]));
    pop.max_difference = std::max(pop.max_difference, std::abs(pop.discrete.back() - pop.continuous.back()));
  }
  pop.overlap = harper.ground.fidelity(cont);
  return pop;
}

DiagnosticsReport diagnostics_suite(HilbertDim dim, const DiagnosticsRequest& request) {
  const double gamma = request.gamma.value_or(default_gamma(dim));
  DiagnosticsReport rep;
  const std::string& name = request.name;
  if (name == "populations") {
    const Populations pop = coherent_populations(dim);
    rep.table.header = {"n", "pop_discrete", "pop_continuous"};
    for (std::size_t k = 0; k < pop.discrete.size(); ++k) {
      rep.table.rows.push_back({static_cast<double>(k), pop.discrete[k], pop.continuous[k]});
    }
    rep.summary = {{"max_difference", pop.max_difference}, {"overlap", pop.overlap}};
  } else if (name == "eigenconvergence") {
    const EigenConvergence e = eigen_convergence(dim, gamma_grid(dim, request.points));
    rep.table.header = {"gamma", "overlap"};
    for (std::size_t i = 0; i < e.gamma.size(); ++i) rep.table.rows.push_back({e.gamma[i], e.overlap[i]});
  } else if (name == "fidelity_curve") {
    const FidelityCurve c = fidelity_curve(dim, gamma, request.t_max);
    rep.table.header = {"t", "fidelity"};
    for (std::size_t i = 0; i < c.t.size(); ++i) rep.table.rows.push_back({static_cast<double>(c.t[i]), c.fidelity[i]});
    rep.summary = {{"gamma", gamma}, {"t_s", static_cast<double>(c.t_s)}};
  } else if (name == "gap_vs_gamma") {
    const GapCurve c = gap_vs_gamma(dim, gamma_grid(dim, request.points));
    rep.table.header = {"gamma", "delta_phi"};
    for (std::size_t i = 0; i < c.gamma.size(); ++i) rep.table.rows.push_back({c.gamma[i], c.delta_phi[i]});
    rep.summary = {{"slope", c.slope}, {"r_squared", c.r_squared}};
  } else if (name == "parameter_region") {
    const ParameterRegion r = parameter_region(dim, request.t_min, request.t_max);
    rep.table.header = {"t", "gamma_fidelity_max", "gamma_resolution_min"};
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      rep.table.rows.push_back({static_cast<double>(r.t[i]), r.gamma_fidelity_max[i], r.gamma_resolution_min[i]});
    }
    rep.summary = {{"slope_fidelity", r.slope_fidelity},
                   {"slope_resolution", r.slope_resolution},
                   {"offset_qubits", r.offset_qubits}};
  } else {
    throw UnknownRequest("unknown diagnostics request '" + name + "'");
  }
  const HarperSystem harper = harper_system(dim);
  rep.spectrum = spectral_diagnostics(dim, gamma, square_state(dim).state, harper);
  return rep;
}

}  // namespace phasetomo
