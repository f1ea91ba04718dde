#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "phasetomo/state_io.hpp"
#include "phasetomo/tomography.hpp"
#include "test_support.hpp"

using namespace phasetomo;
using testing_support::random_density;
using testing_support::random_pure;

TEST_CASE("complex entries") {
  CHECK(parse_complex("0.5+0.25i") == Complex(0.5, 0.25));
  CHECK(parse_complex("-1e-3-2i") == Complex(-1e-3, -2));
  CHECK(parse_complex(" 3 ") == Complex(3, 0));
  CHECK(parse_complex("2i") == Complex(0, 2));
  CHECK(parse_complex("1-i") == Complex(1, -1));
  CHECK(parse_complex("1.5E+2+0i") == Complex(150, 0));
  CHECK_THROWS_AS(parse_complex("1+2j"), ParseError);
  CHECK_THROWS_AS(parse_complex("abc"), ParseError);
  CHECK_THROWS_AS(parse_complex(""), ParseError);
  CHECK_THROWS_AS(parse_complex("1+2i3"), ParseError);
  CHECK(format_complex({-0.0, -0.0}) == "0+0i");
  CHECK(format_complex({0.1, -2}) == "0.10000000000000001-2i");
}

TEST_CASE("density matrix round trip") {
  const auto rho = random_density(8, 3, 4);
  std::stringstream ss;
  write_state(ss, rho);
  const auto back = std::get<DensityOperator>(parse_state(ss));
  CHECK(max_abs(back.matrix() - rho.matrix()) == 0.0);

  // readouts reproduce
  for (auto [q, p] : {std::pair{0, 0}, std::pair{3, 11}, std::pair{15, 2}}) {
    CHECK(std::abs(wigner_point_circuit(rho, q, p).value - wigner_point_circuit(back, q, p).value) < 1e-12);
  }
  CHECK(std::abs(kirkwood_circuit(rho, 2, 5).value - kirkwood_circuit(back, 2, 5).value) < 1e-12);
}

TEST_CASE("pure state round trip through a file") {
  const auto psi = random_pure(4, 8);
  const auto path = std::filesystem::temp_directory_path() / "phasetomo_state_io_test.txt";
  write_state(path, StateData{psi});
  const auto back = read_state(path);
  REQUIRE(std::holds_alternative<PureState>(back));
  CHECK((std::get<PureState>(back).amplitudes() - psi.amplitudes()).norm() == 0.0);
  CHECK(max_abs(as_density(back).matrix() - DensityOperator::pure(psi).matrix()) < 1e-15);
  std::filesystem::remove(path);
}

TEST_CASE("malformed files") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_state(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("dims 2\n1,0\n"), ParseError);
  CHECK_THROWS_AS(parse("dim 2 3\n1,0\n"), ParseError);
  CHECK_THROWS_AS(parse("dim 2\n1,0,0\n"), ParseError);
  CHECK_THROWS_AS(parse("dim 2\n1,0\n0,0\n0,0\n"), ParseError);
  CHECK_THROWS_AS(parse("dim 2\n1,x\n"), ParseError);
  CHECK_THROWS_AS(parse("dim 2\n0.5,0.3\n0.1,0.5\n"), NonHermitianInput);
  CHECK_THROWS_AS(parse("dim 2\n1.5,0\n0,-0.5\n"), NonPSDInput);
  CHECK_THROWS_AS(parse("dim 2\n1,1\n"), DimensionMismatch);
  CHECK_THROWS_AS(read_state("/nonexistent/state.txt"), ParseError);

  const auto ok = parse("dim 2\n\n0.5+0i, 0-0.5i\n0+0.5i, 0.5\n");
  CHECK(std::holds_alternative<DensityOperator>(ok));
}
