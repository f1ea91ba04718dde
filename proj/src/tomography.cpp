#include "phasetomo/tomography.hpp"

#include <cmath>
#include <set>

#include "phasetomo/parallel.hpp"

namespace phasetomo {

namespace {

const QubitRef kProbe{"probe", 0};

PureState uniform_interval(int dim, int first, int last) {
  Vector v = Vector::Zero(dim);
  for (int k = first; k <= last; ++k) v(k) = 1.0;
  return PureState::normalized(std::move(v));
}

std::vector<Gate> scattering(std::vector<Gate> preparation, std::vector<Gate> inner) {
  std::vector<Gate> gates = std::move(preparation);
  gates.push_back(hadamard(kProbe));
  gates.push_back(probe_ctrl(kProbe, std::move(inner)));
  gates.push_back(hadamard(kProbe));
  return gates;
}

ProbeReadout evaluate(const DensityOperator& rho, const ProbeCircuit& circuit, const EvalOptions& options,
                      bool read_y) {
  const ProbeReadout exact = run_for_density(rho, circuit);
  if (options.shots <= 0) return exact;
  const auto z = sample_expectation(exact, Basis::Z, options.shots, derive_seed(options.seed, 0));
  if (!read_y) return z;
  const auto y = sample_expectation(exact, Basis::Y, options.shots, derive_seed(options.seed, 1));
  return ProbeReadout{z.sz, y.sy, options.shots, std::hypot(z.standard_error, y.standard_error)};
}

void check_wigner_point(HilbertDim dim, int q, int p) { PhasePoint::make(dim, q, p, Grid::Wigner); }

}  // namespace

WignerProgram point_program(HilbertDim dim, int q, int p) {
  check_wigner_point(dim, q, p);
  const int side = dim.wigner_size();
  return {WignerProgram::Kind::Point, PureState::basis(side, q), PureState::basis(side, p), {}, 1};
}

WignerProgram line_program(HilbertDim dim, LineSpec spec) {
  const int side = dim.wigner_size();
  if (spec.is_vertical()) {
    return {WignerProgram::Kind::Vertical, PureState::basis(side, spec.n3), uniform_interval(side, 0, side - 1), {},
            side};
  }
  if (spec.is_horizontal()) {
    return {WignerProgram::Kind::Horizontal, uniform_interval(side, 0, side - 1), PureState::basis(side, spec.n3), {},
            side};
  }
  throw NotAxisAligned("line (" + std::to_string(spec.n1) + "," + std::to_string(spec.n2) +
                       ") is neither vertical nor horizontal");
}

WignerProgram diagonal_program(HilbertDim dim, int n3) {
  const int side = dim.wigner_size();
  const HilbertDim program_dim(dim.qubits() + 1);
  std::vector<Gate> prep;
  // |q>|n3> -> |q>|n3 - q>
  prep.push_back(ctrl_power("q", "p", shift_operator(program_dim).adjoint()));
  return {WignerProgram::Kind::Diagonal, uniform_interval(side, 0, side - 1),
          PureState::basis(side, static_cast<int>(mod(n3, side))), std::move(prep), side};
}

WignerProgram rectangle_program(HilbertDim dim, int q1, int q2, int p1, int p2) {
  const int side = dim.wigner_size();
  for (int c : {q1, q2, p1, p2}) {
    if (c < 0 || c >= side) throw PointOutOfRange("rectangle corner outside the 2N grid");
  }
  if (q1 > q2 || p1 > p2) throw EmptyRegion("rectangle has no lattice points");
  return {WignerProgram::Kind::Rectangle, uniform_interval(side, q1, q2), uniform_interval(side, p1, p2), {},
          static_cast<long>(q2 - q1 + 1) * (p2 - p1 + 1)};
}

ProbeCircuit wigner_circuit(HilbertDim dim, const WignerProgram& program,
                            const std::optional<Matrix>& system_preparation) {
  const int n = dim.qubits();
  RegisterLayout layout({{"probe", 1}, {"q", n + 1}, {"p", n + 1}, {"system", n}});

  std::vector<Gate> prep = program.preparation;
  if (system_preparation) prep.push_back(register_unitary("system", *system_preparation));

  // A(q,p) = U^q R V^{-p} exp(i 2 pi q p / 2N), applied right to left. The
  // phase lives inside the probe control so it only dresses the A branch.
  std::vector<Gate> inner;
  inner.push_back(ctrl_power("p", "system", clock_operator(dim).adjoint()));
  inner.push_back(register_unitary("system", reflection_operator(dim)));
  inner.push_back(ctrl_power("q", "system", shift_operator(dim)));
  inner.push_back(ctrl_phase_between("q", "p", kTwoPi / dim.wigner_size()));

  return ProbeCircuit{std::move(layout),
                      {std::uint64_t{0}, program.q_state, program.p_state, std::uint64_t{0}},
                      scattering(std::move(prep), std::move(inner)),
                      "system",
                      kProbe};
}

WignerValue wigner_point_circuit(const DensityOperator& rho, int q, int p, const EvalOptions& options) {
  const HilbertDim dim = HilbertDim::from_size(rho.dim());
  const auto circuit = wigner_circuit(dim, point_program(dim, q, p));
  const auto readout = evaluate(rho, circuit, options, false);
  return {readout, readout.sz / dim.wigner_size()};
}

AverageValue wigner_program_average(const DensityOperator& rho, const WignerProgram& program,
                                    const std::optional<Matrix>& system_preparation, const EvalOptions& options) {
  const HilbertDim dim = HilbertDim::from_size(rho.dim());
  const auto circuit = wigner_circuit(dim, program, system_preparation);
  const auto readout = evaluate(rho, circuit, options, false);
  // sz = (2N / K^2) sum W
  const double scale = static_cast<double>(program.support) / dim.wigner_size();
  return {readout, readout.sz * scale, readout.standard_error * scale, program.support};
}

LineMapping solve_cat_params(HilbertDim dim, LineSpec spec) {
  const std::int64_t m = dim.wigner_size();
  LineMapping mapping;
  mapping.source = spec;
  if (spec.n2 % 2 == 1) {
    mapping.working = spec;
  } else if (spec.n1 % 2 == 1) {
    // Fourier transform rotates the lattice, W_{F rho F^dagger}(-p, q) = W_rho(q, p).
    mapping.working = LineSpec::make(dim, -std::int64_t{spec.n2}, spec.n1, spec.n3);
    mapping.exchanged = true;
  } else {
    throw NoOddCoefficient("line (" + std::to_string(spec.n1) + "," + std::to_string(spec.n2) + "," +
                           std::to_string(spec.n3) + ") has no odd coefficient");
  }
  const LineSpec& w = mapping.working;

  // n2 is odd, hence a unit mod 2N; its inverse by brute force is fine at
  // desk scale.
  std::int64_t inverse = 0;
  for (std::int64_t x = 1; x < m; ++x) {
    if (mod(std::int64_t{w.n2} * x, m) == 1) {
      inverse = x;
      break;
    }
  }
  mapping.params.a = static_cast<int>(mod((1 - std::int64_t{w.n1}) * inverse, m));
  mapping.params.b = static_cast<int>(mod(1 + std::int64_t{w.n2}, m));
  mapping.target = LineSpec::make(dim, 1, 1, w.n3);

  std::set<std::pair<int, int>> images;
  for (int q = 0; q < m; ++q) {
    const int p = static_cast<int>(mod(w.n3 - std::int64_t{q}, m));
    const auto image = classical_cat_map(dim, mapping.params, q, p);
    if (!w.contains(dim, image.first, image.second)) {
      throw std::logic_error("cat map does not carry the canonical line onto the working line");
    }
    images.insert(image);
  }
  if (static_cast<std::int64_t>(images.size()) != m) {
    throw std::logic_error("cat map is not injective on the canonical line");
  }
  return mapping;
}

AverageValue wigner_line_average(const DensityOperator& rho, LineSpec spec, const EvalOptions& options) {
  const HilbertDim dim = HilbertDim::from_size(rho.dim());
  const LineMapping mapping = solve_cat_params(dim, spec);
  Matrix prep = cat_map(dim, mapping.params).adjoint();
  if (mapping.exchanged) prep = prep * fourier_matrix(dim.size());
  return wigner_program_average(rho, diagonal_program(dim, mapping.target.n3), prep, options);
}

AverageValue wigner_region_average(const DensityOperator& rho, Rectangle rect, const std::optional<CatParams>& params,
                                   const EvalOptions& options) {
  const HilbertDim dim = HilbertDim::from_size(rho.dim());
  const auto program = rectangle_program(dim, rect.q1, rect.q2, rect.p1, rect.p2);
  std::optional<Matrix> prep;
  if (params) prep = cat_map(dim, *params).adjoint();
  return wigner_program_average(rho, program, prep, options);
}

std::vector<std::pair<int, int>> mapped_region(HilbertDim dim, Rectangle rect, const std::optional<CatParams>& params) {
  std::vector<std::pair<int, int>> points;
  for (int q = rect.q1; q <= rect.q2; ++q) {
    for (int p = rect.p1; p <= rect.p2; ++p) {
      points.push_back(params ? classical_cat_map(dim, *params, q, p) : std::pair{q, p});
    }
  }
  return points;
}

ProbeCircuit kirkwood_probe_circuit(HilbertDim dim, int q, int p) {
  PhasePoint::make(dim, q, p, Grid::Torus);
  const int n = dim.qubits();
  RegisterLayout layout({{"probe", 1}, {"q", n}, {"p", n}, {"system", n}});
  std::vector<Gate> inner;
  inner.push_back(inverse_qft("system"));
  inner.push_back(swap_registers("system", "p"));
  inner.push_back(qft("system"));
  inner.push_back(swap_registers("system", "q"));
  return ProbeCircuit{std::move(layout),
                      {std::uint64_t{0}, static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(p),
                       std::uint64_t{0}},
                      scattering({}, std::move(inner)),
                      "system",
                      kProbe};
}

KirkwoodValue kirkwood_circuit(const DensityOperator& rho, int q, int p, const EvalOptions& options) {
  const HilbertDim dim = HilbertDim::from_size(rho.dim());
  const auto readout = evaluate(rho, kirkwood_probe_circuit(dim, q, p), options, true);
  return {readout, readout.trace_value()};
}

ProbeCircuit husimi_probe_circuit(const PureState& program) {
  const HilbertDim dim = HilbertDim::from_size(program.dim());
  const int n = dim.qubits();
  RegisterLayout layout({{"probe", 1}, {"program", n}, {"system", n}});
  std::vector<Gate> inner;
  inner.push_back(swap_registers("program", "system"));
  return ProbeCircuit{std::move(layout), {std::uint64_t{0}, program, std::uint64_t{0}}, scattering({}, std::move(inner)),
                      "system", kProbe};
}

HusimiValue husimi_circuit(const DensityOperator& rho, const PureState& program, const EvalOptions& options) {
  if (program.dim() != rho.dim()) throw DimensionMismatch("program state dimension differs from rho");
  const auto readout = evaluate(rho, husimi_probe_circuit(program), options, true);
  return {readout, readout.sz / rho.dim()};
}

std::vector<GridValue> wigner_grid(const DensityOperator& rho, const EvalOptions& options) {
  const HilbertDim dim = HilbertDim::from_size(rho.dim());
  const int side = dim.wigner_size();
  return parallel_map(static_cast<std::size_t>(side) * side, [&](std::size_t i) {
    const int q = static_cast<int>(i) / side;
    const int p = static_cast<int>(i) % side;
    const auto w = wigner_point_circuit(rho, q, p, {options.shots, derive_seed(options.seed, i)});
    return GridValue{q, p, w.value, w.readout.standard_error / side};
  });
}

std::vector<GridValue> kirkwood_grid(const DensityOperator& rho, const EvalOptions& options) {
  const int side = rho.dim();
  return parallel_map(static_cast<std::size_t>(side) * side, [&](std::size_t i) {
    const int q = static_cast<int>(i) / side;
    const int p = static_cast<int>(i) % side;
    const auto k = kirkwood_circuit(rho, q, p, {options.shots, derive_seed(options.seed, i)});
    return GridValue{q, p, k.value, k.readout.standard_error};
  });
}

std::vector<GridValue> husimi_grid(const DensityOperator& rho, const HarperSystem& harper, const EvalOptions& options) {
  const HilbertDim dim = HilbertDim::from_size(rho.dim());
  const int side = dim.size();
  return parallel_map(static_cast<std::size_t>(side) * side, [&](std::size_t i) {
    const int q = static_cast<int>(i) / side;
    const int p = static_cast<int>(i) % side;
    const auto h = husimi_circuit(rho, harper_coherent(harper, dim, q, p), {options.shots, derive_seed(options.seed, i)});
    return GridValue{q, p, h.value, h.readout.standard_error / side};
  });
}

}  // namespace phasetomo
