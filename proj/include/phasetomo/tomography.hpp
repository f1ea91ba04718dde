#pragma once

// Programmable scattering circuits that evaluate Wigner, Kirkwood and Husimi
// values. A probe qubit interferes the identity with a probe-controlled
// operation G acting on program registers and the system; the probe then
// reads sz - i sy = Tr[G (program (x) rho)].

#include <cstdint>
#include <optional>
#include <vector>

#include "phasetomo/circuit.hpp"
#include "phasetomo/phase_space.hpp"

namespace phasetomo {

/// shots == 0 evaluates exact expectations; otherwise the probe is sampled
/// with a stream derived from `seed`.
struct EvalOptions {
  long shots = 0;
  std::uint64_t seed = 0;
};

/// Program register content for the Wigner array: product states on the q
/// and p registers (each of dimension 2N), followed by optional preparation
/// gates that entangle them (used for the diagonal line).
struct WignerProgram {
  enum class Kind { Point, Vertical, Horizontal, Diagonal, Rectangle };
  Kind kind = Kind::Point;
  PureState q_state;
  PureState p_state;
  std::vector<Gate> preparation;
  /// K^2, the number of lattice points in the program's support.
  long support = 1;
};

struct WignerValue {
  ProbeReadout readout;
  double value = 0.0;  ///< W(q,p) = sz / 2N
};

struct AverageValue {
  ProbeReadout readout;
  double sum = 0.0;  ///< sum of W over the support, sz K^2 / 2N
  double standard_error = 0.0;
  long support = 0;
};

/// Maps the canonical line q' + p' = n3 onto `source` through the classical
/// cat map. When `exchanged` is set the system is first Fourier transformed
/// and `working` is the line in the rotated frame.
struct LineMapping {
  LineSpec source;
  LineSpec working;
  CatParams params;
  LineSpec target;
  bool exchanged = false;
};

WignerProgram point_program(HilbertDim dim, int q, int p);
/// Vertical or horizontal line; throws NotAxisAligned otherwise.
WignerProgram line_program(HilbertDim dim, LineSpec spec);
/// The line q + p = n3, prepared from a uniform q register and a controlled
/// subtraction into the p register.
WignerProgram diagonal_program(HilbertDim dim, int n3);
WignerProgram rectangle_program(HilbertDim dim, int q1, int q2, int p1, int p2);

/// Full probe circuit for a Wigner program, with an optional unitary applied
/// to the system before the scattering stage.
ProbeCircuit wigner_circuit(HilbertDim dim, const WignerProgram& program,
                            const std::optional<Matrix>& system_preparation = std::nullopt);

WignerValue wigner_point_circuit(const DensityOperator& rho, int q, int p, const EvalOptions& options = {});

/// Evaluates a program and converts sz to the support sum.
AverageValue wigner_program_average(const DensityOperator& rho, const WignerProgram& program,
                                    const std::optional<Matrix>& system_preparation = std::nullopt,
                                    const EvalOptions& options = {});

LineMapping solve_cat_params(HilbertDim dim, LineSpec spec);

/// Sum of W over the line, through the cat map and the canonical program.
AverageValue wigner_line_average(const DensityOperator& rho, LineSpec spec, const EvalOptions& options = {});

struct Rectangle {
  int q1 = 0;
  int q2 = 0;
  int p1 = 0;
  int p2 = 0;
};

/// Sum of W over the rectangle, or over its image under the classical cat map
/// when `params` is given.
AverageValue wigner_region_average(const DensityOperator& rho, Rectangle rect,
                                   const std::optional<CatParams>& params = std::nullopt,
                                   const EvalOptions& options = {});

/// Lattice points of the rectangle's image under classical_cat_map.
std::vector<std::pair<int, int>> mapped_region(HilbertDim dim, Rectangle rect, const std::optional<CatParams>& params);

struct KirkwoodValue {
  ProbeReadout readout;
  Complex value;
};

ProbeCircuit kirkwood_probe_circuit(HilbertDim dim, int q, int p);
KirkwoodValue kirkwood_circuit(const DensityOperator& rho, int q, int p, const EvalOptions& options = {});

struct HusimiValue {
  ProbeReadout readout;
  double value = 0.0;  ///< H = sz / N
};

ProbeCircuit husimi_probe_circuit(const PureState& program);
HusimiValue husimi_circuit(const DensityOperator& rho, const PureState& program, const EvalOptions& options = {});

/// One evaluated grid point, the row type of the grid sweep CSV.
struct GridValue {
  int q = 0;
  int p = 0;
  Complex value;
  double standard_error = 0.0;
};

std::vector<GridValue> wigner_grid(const DensityOperator& rho, const EvalOptions& options = {});
std::vector<GridValue> kirkwood_grid(const DensityOperator& rho, const EvalOptions& options = {});
std::vector<GridValue> husimi_grid(const DensityOperator& rho, const HarperSystem& harper,
                                   const EvalOptions& options = {});

}  // namespace phasetomo
