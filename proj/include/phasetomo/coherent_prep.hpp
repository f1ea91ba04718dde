#pragma once

// Coherent-state preparation by phase-estimation filtering of the kicked
// Harper map, plus the spectral diagnostics that choose its parameters.
//
// Eigenphases follow U|u> = exp(i 2 pi phi)|u>, phi in [0,1).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phasetomo/circuit.hpp"
#include "phasetomo/phase_space.hpp"

namespace phasetomo {

struct SquareStateSpec {
  int n = 0;
  int width = 0;  ///< w = 2^floor(n/2)
  int shift = 0;  ///< s = 1 - w/2; support is [s, s + w) mod N
};

struct SquareState {
  PureState state;
  SquareStateSpec spec;
};

/// Hadamards on the floor(n/2) low qubits of |0...0>, then a cyclic shift by s.
SquareState square_state(HilbertDim dim);

enum class PowerPolicy { Exact, Semiclassical, Hybrid };
enum class PowerMode { Exact, Semiclassical, Product };

struct PEConfig {
  int n = 0;
  int t = 0;  ///< counting qubits
  double epsilon = 0.25;
  double gamma = 0.0;
  PowerPolicy policy = PowerPolicy::Exact;
  /// Last exponent built semiclassically under the hybrid policy.
  int hybrid_threshold = 0;
  bool linear_gap_regime = false;  ///< gamma N < 0.6
  std::optional<int> resolution_qubits;
};

/// t = ceil(n + log2(2 + 1/(2 eps))). Throws InvalidBudget.
PEConfig pe_config(int n, double epsilon, double gamma, PowerPolicy policy = PowerPolicy::Exact,
                   std::optional<double> gap = std::nullopt, std::optional<int> hybrid_threshold = std::nullopt);

/// ceil(log2(1 / gap)).
int resolution_qubits(double gap);

/// Default operating point gamma = 0.5 / N.
double default_gamma(HilbertDim dim);

struct ApproxPower {
  Matrix matrix;
  PowerMode mode;
};

/// Approximants of U(gamma)^(2^j) for j = 0..count-1.
std::vector<ApproxPower> power_ladder(HilbertDim dim, double gamma, int count, PowerPolicy policy,
                                      int hybrid_threshold);
ApproxPower approx_power(HilbertDim dim, double gamma, int j, PowerPolicy policy, int hybrid_threshold);

/// Textbook phase estimation with caller-supplied controlled powers.
class PhaseEstimator {
public:
  /// powers[j] is applied controlled on counting qubit j.
  explicit PhaseEstimator(std::vector<Matrix> powers);

  int counting_qubits() const { return static_cast<int>(powers_.size()); }
  /// State just before the counting register is measured.
  MachineState prepare(const PureState& input) const;
  std::vector<double> outcome_distribution(const PureState& input) const;

  struct Run {
    std::uint64_t outcome = 0;
    double probability = 0.0;
    PureState output;
    std::vector<double> distribution;
  };
  Run run(const PureState& input, std::uint64_t seed) const;

private:
  std::vector<Matrix> powers_;
  int system_qubits_ = 0;
};

struct FilterOutcome {
  std::uint64_t k = 0;
  double phase_estimate = 0.0;  ///< k / 2^t
  bool success = false;
  PureState output_state;
  double outcome_probability = 0.0;
  std::uint64_t target_peak = 0;
  std::uint64_t most_probable = 0;  ///< argmax of the simulated distribution
};

/// Phase-estimation filter for the kicked Harper map. The target peak is
/// round(phi_0 2^t) mod 2^t, phi_0 being the eigenphase of the U(gamma)
/// eigenvector closest to the Harper ground state.
class CoherentFilter {
public:
  CoherentFilter(HilbertDim dim, PEConfig config);

  const PEConfig& config() const { return config_; }
  const HarperSystem& harper() const { return harper_; }
  HilbertDim dim() const { return dim_; }
  double ground_phase() const { return ground_phase_; }
  std::uint64_t target_peak() const { return target_; }
  const std::vector<PowerMode>& power_modes() const { return modes_; }
  std::vector<double> outcome_distribution(const PureState& input) const {
    return estimator_.outcome_distribution(input);
  }

  FilterOutcome run(const PureState& input, std::uint64_t seed) const;

private:
  HilbertDim dim_;
  PEConfig config_;
  HarperSystem harper_;
  double ground_phase_ = 0.0;
  std::uint64_t target_ = 0;
  std::vector<PowerMode> modes_;
  PhaseEstimator estimator_;
};

FilterOutcome phase_estimation_filter(const PureState& input, const PEConfig& config, std::uint64_t seed);

struct PrepStats {
  int rounds = 0;
  int attempts = 0;
  double initial_overlap = 0.0;
  std::vector<double> success_probabilities;
  /// |<Phi_0|psi>|^2 after each successful round.
  std::vector<double> overlaps;
  double final_overlap = 0.0;
  std::vector<std::uint64_t> outcomes;
};

struct PreparedState {
  PureState state;
  PrepStats stats;
  /// Origin-centred state after each round, before translation.
  std::vector<PureState> round_states;
};

/// Square state, `rounds` filter passes (restarting from a fresh square state
/// whenever the wrong peak is measured), then translation by T(q,p).
/// Throws FilterFailed after `max_attempts` restarts.
PreparedState prepare_coherent(const CoherentFilter& filter, int q, int p, int rounds, std::uint64_t seed,
                               int max_attempts = 200);
PreparedState prepare_coherent(HilbertDim dim, int q, int p, const PEConfig& config, int rounds, std::uint64_t seed,
                               int max_attempts = 200);

// ---------------------------------------------------------------------------
// Diagnostics

struct SpectralDiagnostics {
  RealVector eigenphases;
  int ground_index = 0;
  double ground_phase = 0.0;
  double gap = 0.0;               ///< cyclic distance to the nearest other eigenphase
  std::vector<double> overlaps;   ///< |c_alpha|^2 of the reference state
  double ground_overlap = 0.0;    ///< |<Phi_0|u_ground>|^2
  Matrix eigenvectors;
};

SpectralDiagnostics spectral_diagnostics(HilbertDim dim, double gamma, const PureState& reference,
                                         const HarperSystem& harper);

/// sqrt|<U(gamma)^(2^t) psi | U(2^t gamma) psi>|.
double semiclassical_fidelity(HilbertDim dim, double gamma, int t, const PureState& psi);

struct FidelityCurve {
  std::vector<int> t;
  std::vector<double> fidelity;
  /// Largest t with F > threshold for every t' <= t (-1 if F(0) fails).
  int t_s = -1;
};
FidelityCurve fidelity_curve(HilbertDim dim, double gamma, int t_max, double threshold = 0.99);

struct GapCurve {
  std::vector<double> gamma;
  std::vector<double> delta_phi;
  double slope = 0.0;      ///< least squares through the origin
  double r_squared = 0.0;
};
GapCurve gap_vs_gamma(HilbertDim dim, const std::vector<double>& gammas);
/// `points` evenly spaced gamma with gamma N strictly inside (0, max_product).
std::vector<double> gamma_grid(HilbertDim dim, int points, double max_product = 0.6);

struct ParameterRegion {
  std::vector<int> t;
  std::vector<double> gamma_fidelity_max;
  std::vector<double> gamma_resolution_min;  ///< 2^-t / (fitted gap slope)
  double slope_fidelity = 0.0;    ///< d log2(gamma) / dt
  double slope_resolution = 0.0;
  /// How many doublings past the semiclassical limit resolution needs:
  /// mean log2(gamma_res / gamma_fid) over the common slope.
  double offset_qubits = 0.0;
};
ParameterRegion parameter_region(HilbertDim dim, int t_min, int t_max, double threshold = 0.99);

struct EigenConvergence {
  std::vector<double> gamma;
  std::vector<double> overlap;  ///< |<Phi_0|u_0(gamma)>|^2
};
EigenConvergence eigen_convergence(HilbertDim dim, const std::vector<double>& gammas);

struct Populations {
  std::vector<double> discrete;
  std::vector<double> continuous;
  double max_difference = 0.0;
  double overlap = 0.0;  ///< |<Phi_0|0,0>_c|^2
};
Populations coherent_populations(HilbertDim dim);

/// Header plus numeric rows; the CSV payload of a diagnostic.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct DiagnosticsRequest {
  std::string name;  ///< populations | eigenconvergence | fidelity_curve | gap_vs_gamma | parameter_region
  std::optional<double> gamma;
  int t_max = 12;
  int t_min = 4;
  int points = 24;
};

struct DiagnosticsReport {
  Table table;
  std::vector<std::pair<std::string, double>> summary;
  std::optional<SpectralDiagnostics> spectrum;
};

/// Throws UnknownRequest.
DiagnosticsReport diagnostics_suite(HilbertDim dim, const DiagnosticsRequest& request);

}  // namespace phasetomo
