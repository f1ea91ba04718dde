#include "phasetomo/state_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace phasetomo {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(trim(tok));
  return out;
}

double clean_zero(double x) { return x == 0.0 ? 0.0 : x; }

}  // namespace

Complex parse_complex(const std::string& token) {
  const std::string s = trim(token);
  if (s.empty()) throw ParseError("empty complex entry");
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const double first = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE) throw ParseError("bad complex entry '" + s + "'");
  std::string rest(end);
  if (rest.empty()) return {first, 0.0};
  if (rest == "i") return {0.0, first};
  if (rest.front() != '+' && rest.front() != '-') throw ParseError("bad complex entry '" + s + "'");
  if (rest == "+i") return {first, 1.0};
  if (rest == "-i") return {first, -1.0};
  const char* b2 = rest.c_str();
  char* e2 = nullptr;
  const double second = std::strtod(b2, &e2);
  if (e2 == b2 || std::string(e2) != "i" || errno == ERANGE) throw ParseError("bad complex entry '" + s + "'");
  return {first, second};
}

std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", clean_zero(z.real()), clean_zero(z.imag()));
  return buf;
}

StateData parse_state(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing 'dim N' header");
  std::istringstream head(trim(line));
  std::string word;
  long dim = 0;
  if (!(head >> word >> dim) || word != "dim" || dim < 1) throw ParseError("header must read 'dim N'");
  std::string extra;
  if (head >> extra) throw ParseError("trailing text after 'dim N'");

  std::vector<std::vector<Complex>> rows;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::vector<Complex> row;
    for (const auto& tok : split_commas(line)) row.push_back(parse_complex(tok));
    if (static_cast<long>(row.size()) != dim) {
      throw ParseError("row " + std::to_string(rows.size() + 1) + " has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(dim));
    }
    rows.push_back(std::move(row));
  }
  const auto d = static_cast<Eigen::Index>(dim);
  if (rows.size() == 1 && dim > 1) {
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = rows[0][static_cast<std::size_t>(i)];
    return PureState(std::move(v), 1e-9);
  }
  if (static_cast<long>(rows.size()) != dim) {
    throw ParseError("expected 1 or " + std::to_string(dim) + " rows, got " + std::to_string(rows.size()));
  }
  Matrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  // dim 1 is ambiguous; a single entry 1 is both a state and a density matrix
  return DensityOperator(std::move(m));
}

StateData read_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return parse_state(in);
}

void write_state(std::ostream& out, const PureState& psi) {
  out << "dim " << psi.dim() << '\n';
  for (int i = 0; i < psi.dim(); ++i) out << (i ? "," : "") << format_complex(psi[i]);
  out << '\n';
}

void write_state(std::ostream& out, const DensityOperator& rho) {
  const Matrix& m = rho.matrix();
  out << "dim " << m.rows() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format_complex(m(r, c));
    out << '\n';
  }
}

void write_state(const std::filesystem::path& path, const StateData& state) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  std::visit([&](const auto& s) { write_state(out, s); }, state);
}

DensityOperator as_density(const StateData& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) return DensityOperator::pure(*psi);
  return std::get<DensityOperator>(state);
}

}  // namespace phasetomo
