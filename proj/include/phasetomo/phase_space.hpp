#pragma once

// Dense operators on the N-dimensional torus Hilbert space and the direct
// (trace formula) evaluation of Wigner, Kirkwood and Husimi distributions.
//
// Conventions:
//   U|q> = |q+1>,  V|q> = exp(i 2 pi q / N)|q>,  R|n> = |-n mod N>
//   <q|p> = exp(i 2 pi p q / N) / sqrt(N)   (columns of FT are momentum states)
// so that V = FT U FT^dagger.

#include <utility>

#include "phasetomo/linalg.hpp"

namespace phasetomo {

enum class Grid { Wigner, Torus };

/// Lattice point; Wigner grid is 2N x 2N, torus grid is N x N.
struct PhasePoint {
  int q = 0;
  int p = 0;
  Grid grid = Grid::Wigner;

  /// Validated constructor; throws PointOutOfRange.
  static PhasePoint make(HilbertDim dim, int q, int p, Grid grid);
};

/// Cat-map integers, both taken mod 2N.
struct CatParams {
  int a = 0;
  int b = 0;
  /// Determinant of [[b, 1], [ab-1, a]] (always 1).
  std::int64_t determinant() const {
    return std::int64_t{b} * a - (std::int64_t{a} * b - 1);
  }
};

/// The line n1 q + n2 p = n3 (mod 2N).
struct LineSpec {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;

  static LineSpec make(HilbertDim dim, std::int64_t n1, std::int64_t n2, std::int64_t n3);
  bool contains(HilbertDim dim, int q, int p) const;
  bool is_vertical() const { return n1 == 1 && n2 == 0; }
  bool is_horizontal() const { return n1 == 0 && n2 == 1; }
};

struct BasicOperators {
  Matrix U;   ///< position shift
  Matrix V;   ///< momentum shift
  Matrix R;   ///< reflection
  Matrix FT;  ///< discrete Fourier transform
};

BasicOperators build_basic_operators(HilbertDim dim);

/// Diagonal operators are common enough to get their own builders.
Matrix shift_operator(HilbertDim dim);
Matrix clock_operator(HilbertDim dim);
Matrix reflection_operator(HilbertDim dim);
Matrix fourier_matrix(int size);

/// T(q,p) = U^q V^p exp(i pi p q / N). The phase uses the given
/// representatives; the powers are reduced mod N.
Matrix translation(HilbertDim dim, int q, int p);

/// A(q,p) = U^q R V^{-p} exp(i pi p q / N) on the 2N x 2N grid.
Matrix phase_point(HilbertDim dim, int q, int p);

struct HarperSystem {
  Matrix hamiltonian;
  RealVector energies;  ///< ascending
  Matrix eigenvectors;  ///< columns
  PureState ground;     ///< largest-magnitude amplitude real positive
};

/// H = 2 - (U+U^dagger)/2 - (V+V^dagger)/2 diagonalized exactly. Throws
/// DegenerateGround when E1 - E0 < 1e-12.
HarperSystem harper_system(HilbertDim dim);

/// Kicked Harper map M FT^dagger K FT.
Matrix kicked_map(HilbertDim dim, double gamma);

/// Quantized cat map. Built as V_a T V_b, which is the ordering whose Wigner
/// action is exactly classical_cat_map(a, b).
Matrix cat_map(HilbertDim dim, CatParams params);

/// Theta-function coherent state |q,p>_c before renormalization. The
/// periodic sum is truncated once the Gaussian factor drops below 1e-18.
Vector continuous_coherent_amplitudes(HilbertDim dim, int q, int p);
/// Same state, renormalized.
PureState continuous_coherent(HilbertDim dim, int q, int p);

/// Discrete coherent state T(q,p)|Phi_0>.
PureState harper_coherent(const HarperSystem& harper, HilbertDim dim, int q, int p);

/// Tr[A(q,p) rho] / 2N.
double wigner_direct(const DensityOperator& rho, PhasePoint pt);
/// Full trace including the imaginary residue, used to check reality.
Complex wigner_trace(const DensityOperator& rho, PhasePoint pt);

/// <q|p><p|rho|q>.
Complex kirkwood_direct(const DensityOperator& rho, PhasePoint pt);

/// <alpha|rho|alpha> / N.
double husimi_direct(const DensityOperator& rho, const PureState& alpha);

/// (q', p') -> (b q' + p', (ab-1) q' + a p') mod 2N.
std::pair<int, int> classical_cat_map(HilbertDim dim, CatParams params, int q, int p);

/// One step of the classical Harper map on the unit torus.
std::pair<double, double> harper_step(double q, double p, double gamma);

/// (sin^2 pi Q + sin^2 pi P) / 2.
double harper_energy(double q, double p);

}  // namespace phasetomo
