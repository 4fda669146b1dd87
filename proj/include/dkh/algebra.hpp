#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "dkh/smoothing.hpp"
#include "dkh/sparse.hpp"

namespace dkh {

enum class Variant {
  Plain,      // DKh: degree-preserving part of the differential only
  Perturbed,  // DKh'': all components
};
const char* to_string(Variant v);

enum class Sheet : std::uint8_t { Upper = 0, Lower = 1 };

// One enhanced state: a sign on every circle of a vertex plus the sheet.
struct State {
  Resolution vertex = 0;
  std::uint32_t minus = 0;  // bit c set: circle c carries v_-
  Sheet sheet = Sheet::Upper;
  friend bool operator==(const State&, const State&) = default;
};

// c is half-integral; c2 stores 2c.
struct Grading {
  int i = 0;
  int j = 0;
  int c2 = 0;
  friend auto operator<=>(const Grading&, const Grading&) = default;
};

// Index of a state inside its vertex space: sheet * 2^k + minus.
std::size_t local_index(const State& s, std::size_t circle_count);

std::vector<State> state_basis(const DottedCube& cube, Resolution v);
Grading grading(const DottedCube& cube, const State& s);

// Which component of the differential a term belongs to, by the amount it
// raises (j, 2c).
enum class Part { Zero, Two, Four };

struct EdgeEntry {
  std::size_t source;  // local index at edge.source
  std::size_t target;  // local index at edge.target
  std::int64_t coeff;  // includes the edge sign
  Part part;
};

std::vector<EdgeEntry> edge_map(const DottedCube& cube, const CubeEdge& edge, Variant variant);

struct ChainGroup {
  int degree = 0;
  std::vector<State> basis;
  std::vector<Grading> gradings;
};

struct ChainComplex {
  Variant variant = Variant::Plain;
  std::vector<ChainGroup> groups;          // consecutive degrees
  std::vector<SparseMatrix> differentials; // groups[k] -> groups[k+1]

  std::size_t dimension() const;
};

// Throws std::logic_error if verify is set and d o d != 0.
ChainComplex assemble_complex(const DottedCube& cube, Variant variant, bool verify = true);
bool squares_to_zero(const ChainComplex& c);

// Coordinates in the v-basis -> coordinates in the r/g basis at a vertex
// with k circles, where r = v+ + v- and g = v+ - v- on each circle. The
// sheet coordinate is untouched.
SparseMatrix to_rg_basis(std::size_t circle_count);
SparseMatrix from_rg_basis(std::size_t circle_count);

}  // namespace dkh
