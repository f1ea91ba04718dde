#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "phasetomo/tomography.hpp"
#include "test_support.hpp"

using namespace phasetomo;
using testing_support::random_density;
using testing_support::random_pure;

namespace {

double wigner_at(const DensityOperator& rho, int q, int p) {
  const HilbertDim d = HilbertDim::from_size(rho.dim());
  return wigner_direct(rho, PhasePoint::make(d, q, p, Grid::Wigner));
}

double oracle_line_sum(const DensityOperator& rho, LineSpec spec) {
  const HilbertDim d = HilbertDim::from_size(rho.dim());
  double s = 0.0;
  for (int q = 0; q < d.wigner_size(); ++q)
    for (int p = 0; p < d.wigner_size(); ++p)
      if (spec.contains(d, q, p)) s += wigner_at(rho, q, p);
  return s;
}

}  // namespace

TEST_CASE("Wigner point circuit") {
  const auto zero2 = DensityOperator::pure(PureState::basis(2, 0));
  const auto w = wigner_point_circuit(zero2, 0, 0);
  CHECK(w.readout.sz == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.value == doctest::Approx(0.25).epsilon(1e-12));

  const auto mixed = wigner_point_circuit(DensityOperator::maximally_mixed(8), 0, 0);
  CHECK(mixed.readout.sz == doctest::Approx(0.25).epsilon(1e-12));

  const auto rho = random_density(8, 3, 21);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> pick(0, 15);
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const int q = pick(rng);
    const int p = pick(rng);
    const auto v = wigner_point_circuit(rho, q, p);
    worst = std::max(worst, std::abs(v.readout.sz - 16 * wigner_at(rho, q, p)));
  }
  CHECK(worst < 1e-9);
  CHECK_THROWS_AS(wigner_point_circuit(rho, 16, 0), PointOutOfRange);
}

TEST_CASE("line programs") {
  const HilbertDim d(2);
  const auto v = line_program(d, LineSpec::make(d, 1, 0, 2));
  CHECK(v.kind == WignerProgram::Kind::Vertical);
  CHECK(v.support == 8);
  CHECK(std::abs(v.q_state[2] - 1.0) < 1e-15);
  for (int p = 0; p < 8; ++p) CHECK(std::abs(v.p_state[p] - 1 / std::sqrt(8.0)) < 1e-15);
  CHECK_THROWS_AS(line_program(d, LineSpec::make(d, 1, 1, 0)), NotAxisAligned);

  const auto three = DensityOperator::pure(PureState::basis(8, 3));
  const HilbertDim d8(3);
  const auto col = wigner_program_average(three, line_program(d8, LineSpec::make(d8, 1, 0, 6)));
  CHECK(col.readout.sz == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(col.sum == doctest::Approx(1.0).epsilon(1e-9));

  const auto rho = random_density(8, 3, 5);
  for (int n3 = 0; n3 < 16; ++n3) {
    const auto row = wigner_program_average(rho, line_program(d8, LineSpec::make(d8, 0, 1, n3)));
    CHECK(std::abs(row.sum - oracle_line_sum(rho, LineSpec::make(d8, 0, 1, n3))) < 1e-9);
  }
}

TEST_CASE("cat parameter solver") {
  const HilbertDim d(2);
  for (int n : {1, 2, 3}) {
    const HilbertDim dn(n);
    const auto m = solve_cat_params(dn, LineSpec::make(dn, 1, 1, 0));
    CHECK(m.params.a == 0);
    CHECK(m.params.b == 2);
  }
  const auto m = solve_cat_params(d, LineSpec::make(d, 3, 1, 0));
  CHECK(m.params.a == 6);
  CHECK(m.params.b == 2);
  CHECK_THROWS_AS(solve_cat_params(d, LineSpec::make(d, 2, 2, 1)), NoOddCoefficient);

  const auto ex = solve_cat_params(d, LineSpec::make(d, 1, 2, 3));
  CHECK(ex.exchanged);
  CHECK(ex.working.n2 % 2 == 1);
}

TEST_CASE("line averages through the cat map") {
  // exhaustive at N=4
  const HilbertDim d(2);
  const auto rho = random_density(4, 2, 31);
  int checked = 0;
  double worst = 0.0;
  for (int n1 = 0; n1 < 8; ++n1)
    for (int n2 = 0; n2 < 8; ++n2) {
      if (n1 % 2 == 0 && n2 % 2 == 0) continue;
      for (int n3 = 0; n3 < 8; ++n3) {
        const LineSpec l = LineSpec::make(d, n1, n2, n3);
        worst = std::max(worst, std::abs(wigner_line_average(rho, l).sum - oracle_line_sum(rho, l)));
        ++checked;
      }
    }
  CHECK(checked == 48 * 8);
  CHECK(worst < 1e-9);

  const HilbertDim d8(3);
  const auto r8 = random_density(8, 3, 32);
  for (auto [a, b, c] : {std::tuple{1, 1, 3}, std::tuple{3, 1, 5}, std::tuple{1, 3, 2}}) {
    const LineSpec l = LineSpec::make(d8, a, b, c);
    CHECK(std::abs(wigner_line_average(r8, l).sum - oracle_line_sum(r8, l)) < 1e-9);
  }

  // canonical line with (0,2) is a self map and matches the bare diagonal program
  const auto canonical = wigner_line_average(r8, LineSpec::make(d8, 1, 1, 4));
  const auto bare = wigner_program_average(r8, diagonal_program(d8, 4));
  CHECK(std::abs(canonical.sum - bare.sum) < 1e-9);

  // I/N against the trace formula
  const auto mixed = DensityOperator::maximally_mixed(8);
  const LineSpec l = LineSpec::make(d8, 3, 1, 5);
  double expected = 0.0;
  for (int q = 0; q < 16; ++q)
    for (int p = 0; p < 16; ++p)
      if (l.contains(d8, q, p)) expected += phase_point(d8, q, p).trace().real() / (16.0 * 8.0);
  CHECK(std::abs(wigner_line_average(mixed, l).sum - expected) < 1e-9);
}

TEST_CASE("region averages") {
  const HilbertDim d(3);
  const auto rho = random_density(8, 3, 41);
  double all = 0.0;
  for (int q = 0; q < 16; ++q)
    for (int p = 0; p < 16; ++p) all += wigner_at(rho, q, p);
  const auto full = wigner_region_average(rho, {0, 15, 0, 15});
  CHECK(std::abs(full.sum - all) < 1e-9);
  CHECK(full.support == 256);

  const auto cell = wigner_region_average(rho, {3, 3, 7, 7});
  CHECK(std::abs(cell.sum - wigner_at(rho, 3, 7)) < 1e-9);

  const Rectangle box{2, 5, 4, 7};
  const auto tilted = wigner_region_average(rho, box, CatParams{0, 2});
  double oracle = 0.0;
  for (const auto& [q, p] : mapped_region(d, box, CatParams{0, 2})) oracle += wigner_at(rho, q, p);
  CHECK(std::abs(tilted.sum - oracle) < 1e-9);

  // (2N/K^2) * mean and the direct sum are the same number
  const auto program = rectangle_program(d, 2, 5, 4, 7);
  const auto avg = wigner_program_average(rho, program);
  double direct = 0.0;
  for (int q = 2; q <= 5; ++q)
    for (int p = 4; p <= 7; ++p) direct += wigner_at(rho, q, p);
  const double mean = direct / static_cast<double>(program.support);
  CHECK(std::abs(avg.readout.sz - 16.0 * mean) < 1e-12);
  CHECK(std::abs(avg.sum - direct) < 1e-12);

  CHECK_THROWS_AS(rectangle_program(d, 5, 2, 0, 1), EmptyRegion);
  CHECK_THROWS_AS(rectangle_program(d, 0, 16, 0, 1), PointOutOfRange);
}

TEST_CASE("Kirkwood circuit") {
  const HilbertDim d(3);
  const auto basis = DensityOperator::pure(PureState::basis(8, 2));
  for (int p = 0; p < 8; ++p) {
    CHECK(std::abs(kirkwood_circuit(basis, 2, p).value - 0.125) < 1e-12);
    CHECK(std::abs(kirkwood_circuit(basis, 5, p).value) < 1e-12);
  }
  const auto rho = random_density(8, 3, 51);
  Complex total = 0.0;
  double worst = 0.0;
  for (const auto& g : kirkwood_grid(rho)) {
    worst = std::max(worst, std::abs(g.value - kirkwood_direct(rho, PhasePoint::make(d, g.q, g.p, Grid::Torus))));
    total += g.value;
  }
  CHECK(worst < 1e-9);
  CHECK(std::abs(total - 1.0) < 1e-10);

  Vector plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const auto rp = DensityOperator::pure(PureState(plus));
  CHECK(std::abs(kirkwood_circuit(rp, 0, 0).value - 0.5) < 1e-12);
  CHECK(std::abs(kirkwood_circuit(rp, 1, 0).value - 0.5) < 1e-12);
  CHECK(std::abs(kirkwood_circuit(rp, 0, 1).value) < 1e-12);
  CHECK(std::abs(kirkwood_circuit(rp, 1, 1).value) < 1e-12);
}

TEST_CASE("Kirkwood values are exponentially small on random states") {
  // |K| = |psi~_p| |psi_q| / sqrt(N), so for a random pure state the typical
  // value scales as N^(-3/2): well below 1/N, hence shot-hungry on a probe.
  const auto psi = DensityOperator::pure(random_pure(64, 77));
  const HilbertDim d(6);
  std::vector<double> mags;
  for (int q = 0; q < 64; ++q)
    for (int p = 0; p < 64; ++p) mags.push_back(std::abs(kirkwood_direct(psi, PhasePoint::make(d, q, p, Grid::Torus))));
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  const double median = mags[mags.size() / 2];
  const double scale = std::pow(64.0, -1.5);
  CHECK(median > 0.1 * scale);
  CHECK(median < 10.0 * scale);
  CHECK(median < 1.0 / 64);
}

TEST_CASE("Husimi circuit") {
  const HilbertDim d(3);
  const auto harper = harper_system(d);
  const PureState alpha = harper_coherent(harper, d, 3, 6);
  const auto self = husimi_circuit(DensityOperator::pure(alpha), alpha);
  CHECK(self.readout.sz == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(self.readout.sy) < 1e-12);

  const auto mixed = husimi_circuit(DensityOperator::maximally_mixed(8), alpha);
  CHECK(mixed.readout.sz == doctest::Approx(0.125).epsilon(1e-12));

  const auto rho = random_density(8, 3, 61);
  double total = 0.0;
  double worst = 0.0;
  for (const auto& g : husimi_grid(rho, harper)) {
    worst = std::max(worst, std::abs(g.value.real() - husimi_direct(rho, harper_coherent(harper, d, g.q, g.p))));
    total += g.value.real();
  }
  CHECK(worst < 1e-9);
  CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("sampled evaluation") {
  const auto rho = random_density(4, 2, 71);
  const auto exact = wigner_point_circuit(rho, 3, 5);
  const auto a = wigner_point_circuit(rho, 3, 5, {2000, 9});
  const auto b = wigner_point_circuit(rho, 3, 5, {2000, 9});
  CHECK(a.value == b.value);
  CHECK(a.readout.shots_used == 2000);

  // convergence: |estimate - exact| < 5 se in nearly every seed
  int good = 0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    const auto r = wigner_point_circuit(rho, 3, 5, {100000, static_cast<std::uint64_t>(s)});
    if (std::abs(r.readout.sz - exact.readout.sz) < 5 * r.readout.standard_error) ++good;
  }
  CHECK(good >= 99);

  const auto grid1 = kirkwood_grid(rho, {500, 3});
  const auto grid2 = kirkwood_grid(rho, {500, 3});
  for (std::size_t i = 0; i < grid1.size(); ++i) CHECK(grid1[i].value == grid2[i].value);
}
