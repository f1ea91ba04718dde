#pragma once

// Text format shared by states and density matrices:
//   dim N
//   N rows of N comma-separated entries (density matrix), or one row of N
//   entries (pure state). Entries look like 0.5+0.25i or -1e-3-2i.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

#include "phasetomo/linalg.hpp"

namespace phasetomo {

using StateData = std::variant<PureState, DensityOperator>;

/// Throws ParseError; validation failures of the loaded matrix propagate
/// as their own typed errors.
StateData parse_state(std::istream& in);
StateData read_state(const std::filesystem::path& path);

/// Parses one `a+bi` entry. Throws ParseError.
Complex parse_complex(const std::string& token);
/// %.17g rendering of both parts.
std::string format_complex(Complex z);

void write_state(std::ostream& out, const PureState& psi);
void write_state(std::ostream& out, const DensityOperator& rho);
void write_state(const std::filesystem::path& path, const StateData& state);

/// Pure states become projectors.
DensityOperator as_density(const StateData& state);

}  // namespace phasetomo
