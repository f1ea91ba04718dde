#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "phasetomo/circuit.hpp"
#include "phasetomo/phase_space.hpp"
#include "test_support.hpp"

using namespace phasetomo;
using testing_support::random_density;
using testing_support::random_pure;
using testing_support::random_unitary;

namespace {

// Dense density-matrix propagation of the scattering circuit
// (H, probe-controlled G, H) on |0><0| (x) rho. Test-only oracle.
ProbeReadout density_oracle(const Matrix& g, const Matrix& rho) {
  const Eigen::Index n = g.rows();
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  Matrix p1 = Matrix::Zero(2, 2);
  p1(1, 1) = 1;
  const Matrix id = Matrix::Identity(n, n);
  const Matrix hh = Eigen::kroneckerProduct(h, id);
  const Matrix cg = Matrix(Eigen::kroneckerProduct(p0, id)) + Matrix(Eigen::kroneckerProduct(p1, g));
  const Matrix u = hh * cg * hh;
  const Matrix start = Eigen::kroneckerProduct(p0, rho);
  const Matrix out = u * start * u.adjoint();
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  Matrix y(2, 2);
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  const Complex sz = (Matrix(Eigen::kroneckerProduct(z, id)) * out).trace();
  const Complex sy = (Matrix(Eigen::kroneckerProduct(y, id)) * out).trace();
  return {sz.real(), sy.real(), 0, 0.0};
}

ProbeCircuit scattering_circuit(const Matrix& g) {
  const int n = HilbertDim::from_size(g.rows()).qubits();
  return {RegisterLayout({{"probe", 1}, {"system", n}}),
          {std::uint64_t{0}, std::uint64_t{0}},
          {hadamard({"probe", 0}), probe_ctrl({"probe", 0}, {register_unitary("system", g)}), hadamard({"probe", 0})},
          "system",
          {"probe", 0}};
}

}  // namespace

TEST_CASE("layout and initialization") {
  auto m = init_machine(RegisterLayout({{"probe", 1}, {"system", 3}}), {std::uint64_t{0}, std::uint64_t{0}});
  CHECK(m.amplitudes()(0) == Complex(1, 0));
  CHECK(m.norm() == doctest::Approx(1.0));

  // probe | program(3 qubits) = 5 | system; program bits sit above the system's 2
  const RegisterLayout layout({{"probe", 1}, {"program", 3}, {"system", 2}});
  auto m2 = init_machine(layout, {std::uint64_t{0}, std::uint64_t{5}, std::uint64_t{0}});
  CHECK(std::abs(m2.amplitudes()(5 << 2) - 1.0) < 1e-15);
  CHECK(layout.value(5 << 2, layout.index_of("program")) == 5);

  auto m3 = init_machine(RegisterLayout({{"a", 3}, {"b", 2}}), {random_pure(8, 1), random_pure(4, 2)});
  CHECK(std::abs(m3.norm() - 1.0) < 1e-12);

  CHECK_THROWS_AS(RegisterLayout({{"a", 14}, {"b", 13}}), DimensionMismatch);
  CHECK_THROWS_AS(RegisterLayout({{"a", 1}, {"a", 1}}), DimensionMismatch);
  CHECK_THROWS_AS(init_machine(RegisterLayout({{"a", 2}}), {random_pure(8, 1)}), DimensionMismatch);
  CHECK_THROWS_AS(init_machine(RegisterLayout({{"a", 2}}), {std::uint64_t{4}}), DimensionMismatch);
}

TEST_CASE("elementary gates") {
  auto m = init_machine(RegisterLayout({{"q", 1}}), {std::uint64_t{0}});
  m.apply(hadamard({"q", 0}));
  CHECK(std::abs(m.amplitudes()(0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(m.amplitudes()(1) - 1 / std::sqrt(2.0)) < 1e-15);

  // ctrl-V_2N between |3>|5>, N=8: exp(i 2 pi 15/16)
  auto c = init_machine(RegisterLayout({{"q", 4}, {"p", 4}}), {std::uint64_t{3}, std::uint64_t{5}});
  c.apply(ctrl_phase_between("q", "p", kTwoPi / 16));
  CHECK(std::abs(c.amplitudes()((3 << 4) | 5) - std::polar(1.0, kTwoPi * 15 / 16)) < 1e-12);

  auto f = init_machine(RegisterLayout({{"r", 3}}), {std::uint64_t{0}});
  f.apply(qft("r"));
  for (int k = 0; k < 8; ++k) CHECK(std::abs(f.amplitudes()(k) - 1 / std::sqrt(8.0)) < 1e-12);

  const PureState psi = random_pure(8, 9);
  auto g = init_machine(RegisterLayout({{"r", 3}}), {psi});
  g.apply(qft("r"));
  g.apply(inverse_qft("r"));
  CHECK((g.amplitudes() - psi.amplitudes()).norm() < 1e-12);

  auto s = init_machine(RegisterLayout({{"a", 2}, {"b", 2}}), {std::uint64_t{1}, std::uint64_t{2}});
  s.apply(swap_registers("a", "b"));
  CHECK(std::abs(s.amplitudes()((2 << 2) | 1) - 1.0) < 1e-15);
}

TEST_CASE("operand validation") {
  auto m = init_machine(RegisterLayout({{"probe", 1}, {"system", 2}}), {std::uint64_t{0}, std::uint64_t{0}});
  CHECK_THROWS_AS(m.apply(register_unitary("system", Matrix::Identity(8, 8))), DimensionMismatch);
  CHECK_THROWS_AS(m.apply(register_unitary("system", 2.0 * Matrix::Identity(4, 4))), NonUnitaryOperand);
  CHECK_THROWS_AS(m.apply(register_unitary("nope", Matrix::Identity(4, 4))), DimensionMismatch);
  CHECK_THROWS_AS(m.apply(probe_ctrl({"probe", 0}, {hadamard({"probe", 0})})), DimensionMismatch);
}

TEST_CASE("norm preservation across the gate catalogue") {
  const RegisterLayout layout({{"probe", 1}, {"a", 3}, {"b", 3}});
  auto m = init_machine(layout, {random_pure(2, 1), random_pure(8, 2), random_pure(8, 3)});
  const Matrix u = random_unitary(8, 4);
  const std::vector<Gate> circuit = {
      hadamard({"a", 1}),
      phase_shift({"b", 2}, 0.7),
      register_unitary("a", u),
      qft("b"),
      inverse_qft("a"),
      ctrl_power("a", "b", u),
      probe_ctrl({"probe", 0}, {register_unitary("b", u), swap_registers("a", "b")}),
      swap_registers("a", "b"),
      ctrl_phase_between("a", "b", 0.3),
  };
  for (const auto& g : circuit) {
    m.apply(g);
    CHECK(std::abs(m.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("CtrlPower applies base^n for every control value") {
  const Matrix u = random_unitary(4, 17);
  const PureState psi = random_pure(4, 18);
  for (std::uint64_t n = 0; n < 8; ++n) {
    auto m = init_machine(RegisterLayout({{"c", 3}, {"t", 2}}), {n, psi});
    m.apply(ctrl_power("c", "t", u));
    const Vector expected = matrix_power(u, n) * psi.amplitudes();
    for (int k = 0; k < 4; ++k) CHECK(std::abs(m.amplitudes()(static_cast<Eigen::Index>((n << 2) | k)) - expected(k)) < 1e-12);
  }
}

TEST_CASE("probe readout conventions") {
  auto zero = init_machine(RegisterLayout({{"probe", 1}}), {std::uint64_t{0}});
  auto r = probe_readout(zero, {"probe", 0});
  CHECK(r.sz == doctest::Approx(1.0));
  CHECK(std::abs(r.sy) < 1e-15);

  Vector y(2);
  y << 1 / std::sqrt(2.0), Complex(0, 1 / std::sqrt(2.0));
  auto plus_y = init_machine(RegisterLayout({{"probe", 1}}), {PureState(y)});
  CHECK(probe_readout(plus_y, {"probe", 0}).sy == doctest::Approx(1.0));

  const auto rid = run_for_density(random_density(8, 3, 2), scattering_circuit(Matrix::Identity(8, 8)));
  CHECK(rid.sz == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(rid.sy) < 1e-12);
}

TEST_CASE("scattering identity sz - i sy = Tr[G rho]") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix g = random_unitary(8, 100 + seed);
    const PureState psi = random_pure(8, 200 + seed);
    const auto r = run_for_density(DensityOperator::pure(psi), scattering_circuit(g));
    const Complex expected = psi.amplitudes().dot(g * psi.amplitudes());
    CHECK(std::abs(r.trace_value() - expected) < 1e-10);
    CHECK(std::abs(r.sz) <= 1 + 1e-12);
  }
}

TEST_CASE("mixed states") {
  const Matrix g = random_unitary(8, 7);
  const PureState psi = random_pure(8, 8);

  // pure rho matches the single statevector run
  auto m = init_machine(RegisterLayout({{"probe", 1}, {"system", 3}}), {std::uint64_t{0}, psi});
  m.apply(scattering_circuit(g).gates);
  const auto single = probe_readout(m, {"probe", 0});
  const auto ens = run_for_density(DensityOperator::pure(psi), scattering_circuit(g));
  CHECK(std::abs(single.sz - ens.sz) < 1e-12);
  CHECK(std::abs(single.sy - ens.sy) < 1e-12);

  const auto mixed = run_for_density(DensityOperator::maximally_mixed(8), scattering_circuit(g));
  CHECK(std::abs(mixed.sz - g.trace().real() / 8) < 1e-12);

  const auto rho = random_density(8, 3, 99);
  const auto oracle = density_oracle(g, rho.matrix());
  const auto circ = run_for_density(rho, scattering_circuit(g));
  CHECK(std::abs(circ.sz - oracle.sz) < 1e-10);
  CHECK(std::abs(circ.sy - oracle.sy) < 1e-10);

  // linearity in rho
  const auto rho2 = random_density(8, 2, 98);
  const double alpha = 0.3;
  const DensityOperator blend(alpha * rho.matrix() + (1 - alpha) * rho2.matrix());
  const auto r1 = run_for_density(rho, scattering_circuit(g));
  const auto r2 = run_for_density(rho2, scattering_circuit(g));
  const auto rb = run_for_density(blend, scattering_circuit(g));
  CHECK(std::abs(rb.sz - (alpha * r1.sz + (1 - alpha) * r2.sz)) < 1e-10);
  CHECK(std::abs(rb.sy - (alpha * r1.sy + (1 - alpha) * r2.sy)) < 1e-10);

  CHECK_THROWS_AS(run_for_density(random_density(4, 1, 1), scattering_circuit(g)), DimensionMismatch);
}

TEST_CASE("shot sampling") {
  const ProbeReadout certain{1.0, 0.0, 0, 0.0};
  for (long shots : {1L, 17L, 1000L}) {
    CHECK(sample_expectation(certain, Basis::Z, shots, 5).sz == 1.0);
  }
  const ProbeReadout balanced{0.0, 0.0, 0, 0.0};
  int inside = 0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    if (std::abs(sample_expectation(balanced, Basis::Z, 10000, s).sz) < 4.0 / 100) ++inside;
  }
  CHECK(inside >= 0.99 * seeds);
  const auto a = sample_expectation({0.3, -0.2, 0, 0.0}, Basis::Y, 500, 42);
  const auto b = sample_expectation({0.3, -0.2, 0, 0.0}, Basis::Y, 500, 42);
  CHECK(a.sy == b.sy);
  CHECK(a.shots_used == 500);
  CHECK(a.standard_error > 0);
  CHECK_THROWS_AS(sample_expectation(certain, Basis::Z, 0, 1), InvalidBudget);
}

TEST_CASE("register measurement") {
  const RegisterLayout layout({{"r", 3}, {"s", 2}});
  auto m = init_machine(layout, {std::uint64_t{5}, random_pure(4, 3)});
  const auto meas = measure_register(m, "r", 1);
  CHECK(meas.outcome == 5);
  CHECK(meas.probability == doctest::Approx(1.0));
  CHECK((meas.collapsed.amplitudes() - m.amplitudes()).norm() < 1e-12);

  auto u = init_machine(RegisterLayout({{"r", 2}}), {std::uint64_t{0}});
  u.apply(hadamard({"r", 0}));
  u.apply(hadamard({"r", 1}));
  for (double p : u.register_probabilities("r")) CHECK(std::abs(p - 0.25) < 1e-12);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto r = init_machine(RegisterLayout({{"a", 3}, {"b", 3}}), {random_pure(8, seed), random_pure(8, seed + 50)});
    r.apply(ctrl_power("a", "b", random_unitary(8, seed)));
    const auto out = measure_register(r, "a", seed);
    CHECK(std::abs(out.collapsed.norm() - 1.0) < 1e-12);
    CHECK_NOTHROW(out.collapsed.extract_register("b"));
  }
}
