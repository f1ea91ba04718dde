#pragma once

// Exact statevector simulation over named multi-qubit registers.
//
// Registers are laid out in order, the first register occupying the most
// significant bits, so a product state's amplitude vector is the Kronecker
// product of the register vectors in layout order. Within a register, bit 0
// is the least significant bit of the register value.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phasetomo/linalg.hpp"

namespace phasetomo {

inline constexpr int kMaxTotalQubits = 26;

struct Register {
  std::string name;
  int qubits = 1;
};

class RegisterLayout {
public:
  explicit RegisterLayout(std::vector<Register> registers);

  int count() const noexcept { return static_cast<int>(registers_.size()); }
  const Register& at(int index) const { return registers_.at(index); }
  /// Throws DimensionMismatch for unknown names.
  int index_of(std::string_view name) const;
  /// Bit position of the register's least significant qubit.
  int offset(int index) const { return offsets_.at(index); }
  int width(int index) const { return registers_.at(index).qubits; }
  std::uint64_t register_dim(int index) const { return std::uint64_t{1} << width(index); }
  int total_qubits() const noexcept { return total_; }
  std::uint64_t dimension() const noexcept { return std::uint64_t{1} << total_; }

  /// Value held by register `index` inside basis index `basis`.
  std::uint64_t value(std::uint64_t basis, int index) const {
    return (basis >> offsets_[index]) & (register_dim(index) - 1);
  }

private:
  std::vector<Register> registers_;
  std::vector<int> offsets_;
  int total_ = 0;
};

struct QubitRef {
  std::string reg;
  int bit = 0;
};

struct Gate;
struct Measurement;

namespace gates {

struct Hadamard {
  QubitRef qubit;
};
struct PhaseShift {
  QubitRef qubit;
  double angle = 0.0;
};
struct RegisterUnitary {
  std::string reg;
  Matrix matrix;
};
struct QFT {
  std::string reg;
};
struct InverseQFT {
  std::string reg;
};
/// |n>|psi> -> |n> base^n |psi>
struct CtrlPower {
  std::string control;
  std::string target;
  Matrix base;
};
/// Applies `inner` only on the branch where `probe` is |1>.
struct ProbeCtrl {
  QubitRef probe;
  std::vector<Gate> inner;
};
struct SwapRegisters {
  std::string a;
  std::string b;
};
/// |x>|y> -> exp(i angle_unit x y)|x>|y>
struct CtrlPhaseBetween {
  std::string a;
  std::string b;
  double angle_unit = 0.0;
};

}  // namespace gates

struct Gate {
  using Op = std::variant<gates::Hadamard, gates::PhaseShift, gates::RegisterUnitary, gates::QFT,
                          gates::InverseQFT, gates::CtrlPower, gates::ProbeCtrl,
                          gates::SwapRegisters, gates::CtrlPhaseBetween>;
  Op op;
};

Gate hadamard(QubitRef q);
Gate phase_shift(QubitRef q, double angle);
Gate register_unitary(std::string reg, Matrix m);
Gate qft(std::string reg);
Gate inverse_qft(std::string reg);
Gate ctrl_power(std::string control, std::string target, Matrix base);
Gate probe_ctrl(QubitRef probe, std::vector<Gate> inner);
Gate swap_registers(std::string a, std::string b);
Gate ctrl_phase_between(std::string a, std::string b, double angle_unit);

/// Initial content of one register: a basis index or an explicit state.
using RegisterInit = std::variant<std::uint64_t, PureState>;

class MachineState {
public:
  /// Product state in layout order. Throws DimensionMismatch.
  static MachineState init(RegisterLayout layout, const std::vector<RegisterInit>& initial);

  const RegisterLayout& layout() const noexcept { return layout_; }
  const Vector& amplitudes() const noexcept { return amps_; }
  double norm() const { return amps_.norm(); }

  void apply(const Gate& gate);
  void apply(const std::vector<Gate>& circuit) {
    for (const auto& g : circuit) apply(g);
  }

  /// Marginal outcome distribution of one register.
  std::vector<double> register_probabilities(std::string_view reg) const;

  /// State of `reg` when the machine is a product with every other register
  /// in a basis state (e.g. after measuring them). Throws DimensionMismatch
  /// if the register is still entangled with the rest.
  PureState extract_register(std::string_view reg, double tol = 1e-9) const;

private:
  MachineState(RegisterLayout layout, Vector amps) : layout_(std::move(layout)), amps_(std::move(amps)) {}
  void apply_with_mask(const Gate& gate, std::uint64_t mask);
  friend Measurement measure_register(const MachineState&, std::string_view, std::uint64_t);

  RegisterLayout layout_;
  Vector amps_;
};

MachineState init_machine(RegisterLayout layout, const std::vector<RegisterInit>& initial);
MachineState apply_gate(MachineState state, const Gate& gate);

struct ProbeReadout {
  double sz = 0.0;
  double sy = 0.0;
  long shots_used = 0;  ///< 0 = exact expectation
  double standard_error = 0.0;
  /// sz - i sy, equal to Tr[G rho] for a scattering circuit.
  Complex trace_value() const { return {sz, sy * -1.0}; }
};

/// Exact <sigma_z>, <sigma_y> of one qubit.
ProbeReadout probe_readout(const MachineState& state, const QubitRef& probe);

enum class Basis { Z, Y };

/// Empirical mean of `shots` +-1 outcomes drawn for the probe in `basis`.
ProbeReadout sample_probe(const MachineState& state, const QubitRef& probe, Basis basis, long shots,
                          std::uint64_t seed);
/// Same sampling, given exact expectations. Only the component for `basis`
/// is replaced by the estimate; the other is zeroed.
ProbeReadout sample_expectation(const ProbeReadout& exact, Basis basis, long shots, std::uint64_t seed);

struct Measurement {
  std::uint64_t outcome = 0;
  MachineState collapsed;
  double probability = 0.0;
};

Measurement measure_register(const MachineState& state, std::string_view reg, std::uint64_t seed);

/// Scattering-style circuit acting on a system register fed with rho.
struct ProbeCircuit {
  RegisterLayout layout;
  std::vector<RegisterInit> initial;  ///< entry for the system register is ignored
  std::vector<Gate> gates;
  std::string system;
  QubitRef probe;
};

/// Eigen-ensemble average of the probe readout. Throws NonPSDInput.
ProbeReadout run_for_density(const DensityOperator& rho, const ProbeCircuit& circuit);

/// Uniform double in [0,1) from 53 random bits.
double uniform01(std::uint64_t bits);

}  // namespace phasetomo
