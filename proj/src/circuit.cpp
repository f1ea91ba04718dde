#include "phasetomo/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include <Eigen/Eigenvalues>

#include "phasetomo/phase_space.hpp"

namespace phasetomo {

RegisterLayout::RegisterLayout(std::vector<Register> registers) : registers_(std::move(registers)) {
  if (registers_.empty()) throw DimensionMismatch("layout has no registers");
  std::unordered_set<std::string> names;
  for (const auto& r : registers_) {
    if (r.qubits < 1) throw DimensionMismatch("register '" + r.name + "' has no qubits");
    if (!names.insert(r.name).second) throw DimensionMismatch("duplicate register '" + r.name + "'");
    total_ += r.qubits;
  }
  if (total_ > kMaxTotalQubits) {
    throw DimensionMismatch("layout needs " + std::to_string(total_) + " qubits, limit is " +
                            std::to_string(kMaxTotalQubits));
  }
  offsets_.resize(registers_.size());
  int offset = 0;
  for (int i = count() - 1; i >= 0; --i) {
    offsets_[i] = offset;
    offset += registers_[i].qubits;
  }
}

int RegisterLayout::index_of(std::string_view name) const {
  for (int i = 0; i < count(); ++i) {
    if (registers_[i].name == name) return i;
  }
  throw DimensionMismatch("unknown register '" + std::string(name) + "'");
}

Gate hadamard(QubitRef q) { return {gates::Hadamard{std::move(q)}}; }
Gate phase_shift(QubitRef q, double angle) { return {gates::PhaseShift{std::move(q), angle}}; }
Gate register_unitary(std::string reg, Matrix m) { return {gates::RegisterUnitary{std::move(reg), std::move(m)}}; }
Gate qft(std::string reg) { return {gates::QFT{std::move(reg)}}; }
Gate inverse_qft(std::string reg) { return {gates::InverseQFT{std::move(reg)}}; }
Gate ctrl_power(std::string control, std::string target, Matrix base) {
  return {gates::CtrlPower{std::move(control), std::move(target), std::move(base)}};
}
Gate probe_ctrl(QubitRef probe, std::vector<Gate> inner) {
  return {gates::ProbeCtrl{std::move(probe), std::move(inner)}};
}
Gate swap_registers(std::string a, std::string b) { return {gates::SwapRegisters{std::move(a), std::move(b)}}; }
Gate ctrl_phase_between(std::string a, std::string b, double angle_unit) {
  return {gates::CtrlPhaseBetween{std::move(a), std::move(b), angle_unit}};
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct BitRange {
  int offset;
  int width;
  std::uint64_t mask() const { return ((std::uint64_t{1} << width) - 1) << offset; }
};

BitRange resolve(const RegisterLayout& layout, std::string_view reg) {
  const int i = layout.index_of(reg);
  return {layout.offset(i), layout.width(i)};
}

BitRange resolve(const RegisterLayout& layout, const QubitRef& q) {
  const int i = layout.index_of(q.reg);
  if (q.bit < 0 || q.bit >= layout.width(i)) {
    throw DimensionMismatch("qubit " + std::to_string(q.bit) + " outside register '" + q.reg + "'");
  }
  return {layout.offset(i) + q.bit, 1};
}

void check_operand(const Matrix& m, const BitRange& range, const char* what) {
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << range.width);
  if (m.rows() != dim || m.cols() != dim) {
    throw DimensionMismatch(std::string(what) + ": operand is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", register dimension is " + std::to_string(dim));
  }
  if (max_abs(m.adjoint() * m - Matrix::Identity(dim, dim)) >= 1e-8) {
    throw NonUnitaryOperand(std::string(what) + ": operand is not unitary");
  }
}

void check_disjoint(const BitRange& a, std::uint64_t control_mask) {
  if (a.mask() & control_mask) throw DimensionMismatch("gate acts on its own control qubit");
}

/// Applies matrix_for(base) to the amplitudes of `range` for every setting of
/// the other bits that has all of `control_mask` set.
template <class MatrixFor>
void apply_block(Vector& amps, const BitRange& range, std::uint64_t control_mask, MatrixFor&& matrix_for) {
  const std::uint64_t total = static_cast<std::uint64_t>(amps.size());
  const std::uint64_t dim = std::uint64_t{1} << range.width;
  const std::uint64_t low = std::uint64_t{1} << range.offset;
  const std::uint64_t span = dim * low;
  Vector slice(dim);
  Vector out(dim);
  for (std::uint64_t hi = 0; hi < total; hi += span) {
    for (std::uint64_t lo = 0; lo < low; ++lo) {
      const std::uint64_t base = hi | lo;
      if ((base & control_mask) != control_mask) continue;
      for (std::uint64_t v = 0; v < dim; ++v) slice(v) = amps(base + v * low);
      out.noalias() = matrix_for(base) * slice;
      for (std::uint64_t v = 0; v < dim; ++v) amps(base + v * low) = out(v);
    }
  }
}

Matrix hadamard_matrix() {
  Matrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

}  // namespace

MachineState MachineState::init(RegisterLayout layout, const std::vector<RegisterInit>& initial) {
  if (static_cast<int>(initial.size()) != layout.count()) {
    throw DimensionMismatch("expected " + std::to_string(layout.count()) + " register initializers, got " +
                            std::to_string(initial.size()));
  }
  Vector amps = Vector::Ones(1);
  for (int i = 0; i < layout.count(); ++i) {
    const auto dim = layout.register_dim(i);
    Vector reg = std::visit(
        Overloaded{[&](std::uint64_t index) {
                     if (index >= dim) {
                       throw DimensionMismatch("basis index " + std::to_string(index) + " outside register '" +
                                               layout.at(i).name + "'");
                     }
                     Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
                     v(static_cast<Eigen::Index>(index)) = 1.0;
                     return v;
                   },
                   [&](const PureState& s) {
                     if (static_cast<std::uint64_t>(s.dim()) != dim) {
                       throw DimensionMismatch("state of dimension " + std::to_string(s.dim()) +
                                               " for register '" + layout.at(i).name + "'");
                     }
                     return s.amplitudes();
                   }},
        initial[i]);
    Vector next(amps.size() * reg.size());
    for (Eigen::Index a = 0; a < amps.size(); ++a) next.segment(a * reg.size(), reg.size()) = amps(a) * reg;
    amps = std::move(next);
  }
  return MachineState(std::move(layout), std::move(amps));
}

MachineState init_machine(RegisterLayout layout, const std::vector<RegisterInit>& initial) {
  return MachineState::init(std::move(layout), initial);
}

void MachineState::apply(const Gate& gate) { apply_with_mask(gate, 0); }

MachineState apply_gate(MachineState state, const Gate& gate) {
  state.apply(gate);
  return state;
}

void MachineState::apply_with_mask(const Gate& gate, std::uint64_t mask) {
  const auto fixed = [](const Matrix& m) { return [&m](std::uint64_t) -> const Matrix& { return m; }; };
  std::visit(
      Overloaded{
          [&](const gates::Hadamard& g) {
            const auto r = resolve(layout_, g.qubit);
            check_disjoint(r, mask);
            static const Matrix h = hadamard_matrix();
            apply_block(amps_, r, mask, fixed(h));
          },
          [&](const gates::PhaseShift& g) {
            const auto r = resolve(layout_, g.qubit);
            check_disjoint(r, mask);
            const std::uint64_t bit = std::uint64_t{1} << r.offset;
            const Complex phase = std::polar(1.0, g.angle);
            for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(amps_.size()); ++i) {
              if ((i & mask) == mask && (i & bit)) amps_(i) *= phase;
            }
          },
          [&](const gates::RegisterUnitary& g) {
            const auto r = resolve(layout_, g.reg);
            check_disjoint(r, mask);
            check_operand(g.matrix, r, "RegisterUnitary");
            apply_block(amps_, r, mask, fixed(g.matrix));
          },
          [&](const gates::QFT& g) {
            const auto r = resolve(layout_, g.reg);
            check_disjoint(r, mask);
            const Matrix f = fourier_matrix(1 << r.width);
            apply_block(amps_, r, mask, fixed(f));
          },
          [&](const gates::InverseQFT& g) {
            const auto r = resolve(layout_, g.reg);
            check_disjoint(r, mask);
            const Matrix f = fourier_matrix(1 << r.width).adjoint();
            apply_block(amps_, r, mask, fixed(f));
          },
          [&](const gates::CtrlPower& g) {
            const auto target = resolve(layout_, g.target);
            const auto control = resolve(layout_, g.control);
            check_disjoint(target, mask | control.mask());
            check_operand(g.base, target, "CtrlPower");
            const std::uint64_t n_values = std::uint64_t{1} << control.width;
            std::vector<Matrix> powers;
            powers.reserve(n_values);
            powers.push_back(Matrix::Identity(g.base.rows(), g.base.cols()));
            for (std::uint64_t k = 1; k < n_values; ++k) powers.push_back(powers.back() * g.base);
            apply_block(amps_, target, mask, [&](std::uint64_t base) -> const Matrix& {
              return powers[(base >> control.offset) & (n_values - 1)];
            });
          },
          [&](const gates::ProbeCtrl& g) {
            const auto r = resolve(layout_, g.probe);
            const std::uint64_t inner_mask = mask | (std::uint64_t{1} << r.offset);
            for (const auto& inner : g.inner) apply_with_mask(inner, inner_mask);
          },
          [&](const gates::SwapRegisters& g) {
            const auto a = resolve(layout_, g.a);
            const auto b = resolve(layout_, g.b);
            if (a.width != b.width) throw DimensionMismatch("swap between registers of different width");
            if (a.offset == b.offset) return;
            check_disjoint(a, mask);
            check_disjoint(b, mask);
            const std::uint64_t dmask = (std::uint64_t{1} << a.width) - 1;
            for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(amps_.size()); ++i) {
              if ((i & mask) != mask) continue;
              const std::uint64_t va = (i >> a.offset) & dmask;
              const std::uint64_t vb = (i >> b.offset) & dmask;
              if (va >= vb) continue;
              const std::uint64_t j = (i & ~(a.mask() | b.mask())) | (vb << a.offset) | (va << b.offset);
              std::swap(amps_(i), amps_(j));
            }
          },
          [&](const gates::CtrlPhaseBetween& g) {
            const auto a = resolve(layout_, g.a);
            const auto b = resolve(layout_, g.b);
            check_disjoint(a, mask);
            check_disjoint(b, mask);
            const std::uint64_t da = (std::uint64_t{1} << a.width) - 1;
            const std::uint64_t db = (std::uint64_t{1} << b.width) - 1;
            for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(amps_.size()); ++i) {
              if ((i & mask) != mask) continue;
              const double xy = static_cast<double>(((i >> a.offset) & da) * ((i >> b.offset) & db));
              amps_(i) *= std::polar(1.0, g.angle_unit * xy);
            }
          },
      },
      gate.op);
}

std::vector<double> MachineState::register_probabilities(std::string_view reg) const {
  const int idx = layout_.index_of(reg);
  std::vector<double> probs(layout_.register_dim(idx), 0.0);
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(amps_.size()); ++i) {
    probs[layout_.value(i, idx)] += std::norm(amps_(i));
  }
  return probs;
}

PureState MachineState::extract_register(std::string_view reg, double tol) const {
  const int idx = layout_.index_of(reg);
  const auto range = resolve(layout_, reg);
  Eigen::Index peak = 0;
  amps_.cwiseAbs2().maxCoeff(&peak);
  const std::uint64_t rest = static_cast<std::uint64_t>(peak) & ~range.mask();
  Vector v(static_cast<Eigen::Index>(layout_.register_dim(idx)));
  for (std::uint64_t k = 0; k < layout_.register_dim(idx); ++k) {
    v(static_cast<Eigen::Index>(k)) = amps_(static_cast<Eigen::Index>(rest | (k << range.offset)));
  }
  if (std::abs(v.squaredNorm() - amps_.squaredNorm()) > tol) {
    throw DimensionMismatch("register '" + std::string(reg) + "' is entangled with the rest of the machine");
  }
  return PureState::normalized(std::move(v));
}

ProbeReadout probe_readout(const MachineState& state, const QubitRef& probe) {
  const auto r = resolve(state.layout(), probe);
  const std::uint64_t bit = std::uint64_t{1} << r.offset;
  const Vector& amps = state.amplitudes();
  double p0 = 0.0;
  double p1 = 0.0;
  Complex rho01 = 0.0;  // <0|rho|1>
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(amps.size()); ++i) {
    if (i & bit) {
      p1 += std::norm(amps(i));
    } else {
      p0 += std::norm(amps(i));
      rho01 += amps(i) * std::conj(amps(i | bit));
    }
  }
  // Tr[rho sigma_y] = -2 Im rho_01
  return ProbeReadout{p0 - p1, -2.0 * rho01.imag(), 0, 0.0};
}

double uniform01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

ProbeReadout sample_expectation(const ProbeReadout& exact, Basis basis, long shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidBudget("shots must be >= 1");
  const double expectation = basis == Basis::Z ? exact.sz : exact.sy;
  const double p_plus = std::clamp((1.0 + expectation) / 2.0, 0.0, 1.0);
  std::mt19937_64 rng(seed);
  long plus = 0;
  for (long s = 0; s < shots; ++s) {
    if (uniform01(rng()) < p_plus) ++plus;
  }
  const double n = static_cast<double>(shots);
  const double mean = (2.0 * plus - n) / n;
  const double variance = shots > 1 ? std::max(0.0, (1.0 - mean * mean) * n / (n - 1.0)) : 0.0;
  ProbeReadout out;
  (basis == Basis::Z ? out.sz : out.sy) = mean;
  out.shots_used = shots;
  out.standard_error = std::sqrt(variance / n);
  return out;
}

ProbeReadout sample_probe(const MachineState& state, const QubitRef& probe, Basis basis, long shots,
                          std::uint64_t seed) {
  return sample_expectation(probe_readout(state, probe), basis, shots, seed);
}

Measurement measure_register(const MachineState& state, std::string_view reg, std::uint64_t seed) {
  const auto probs = state.register_probabilities(reg);
  std::mt19937_64 rng(seed);
  const double u = uniform01(rng());
  double total = 0.0;
  for (double p : probs) total += p;
  std::uint64_t outcome = probs.size() - 1;
  double acc = 0.0;
  for (std::uint64_t k = 0; k < probs.size(); ++k) {
    acc += probs[k] / total;
    if (u < acc) {
      outcome = k;
      break;
    }
  }
  // Guard against landing on a zero-probability tail through rounding.
  while (probs[outcome] == 0.0 && outcome > 0) --outcome;

  const int idx = state.layout().index_of(reg);
  Vector amps = state.amplitudes();
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(amps.size()); ++i) {
    if (state.layout().value(i, idx) != outcome) amps(static_cast<Eigen::Index>(i)) = 0.0;
  }
  const double p = probs[outcome];
  amps /= std::sqrt(amps.squaredNorm());
  return Measurement{outcome, MachineState(state.layout(), std::move(amps)), p};
}

ProbeReadout run_for_density(const DensityOperator& rho, const ProbeCircuit& circuit) {
  const int sys = circuit.layout.index_of(circuit.system);
  if (circuit.layout.register_dim(sys) != static_cast<std::uint64_t>(rho.dim())) {
    throw DimensionMismatch("system register dimension differs from rho");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw NonPSDInput("rho has a negative eigenvalue");

  const auto ensemble = rho.ensemble();
  ProbeReadout total;
  for (std::size_t k = 0; k < ensemble.states.size(); ++k) {
    auto initial = circuit.initial;
    initial.at(sys) = ensemble.states[k];
    MachineState m = MachineState::init(circuit.layout, initial);
    m.apply(circuit.gates);
    const auto r = probe_readout(m, circuit.probe);
    total.sz += ensemble.weights[k] * r.sz;
    total.sy += ensemble.weights[k] * r.sy;
  }
  return total;
}

}  // namespace phasetomo
