#pragma once

#include <variant>

#include "dkh/diagram.hpp"

namespace dkh {

enum class Side { Left, Right };

// Kink shape for R1 insertion.
struct KinkSpec {
  int sign = 1;            // sign of the new crossing
  bool over_first = false; // whether the strand meets the new crossing as over-strand first
};

struct R1Add {
  std::size_t arc = 0;
};
struct R1Remove {
  std::size_t crossing = 0;
};
using R1Site = std::variant<R1Add, R1Remove>;

// Push a finger of the over arc across the under arc. The two arcs must
// border a common face on the named sides.
struct R2Add {
  std::size_t over_arc = 0;
  Side over_side = Side::Left;
  std::size_t under_arc = 0;
  Side under_side = Side::Left;
};
// The bigon face seen from one of its arcs.
struct R2Remove {
  std::size_t arc = 0;
  Side side = Side::Left;
};
using R2Site = std::variant<R2Add, R2Remove>;

// The triangular face seen from one of its arcs.
struct R3Site {
  std::size_t arc = 0;
  Side side = Side::Left;
};

SurfaceDiagram apply_r1(const SurfaceDiagram& d, const R1Site& site, const KinkSpec& chirality = {});
SurfaceDiagram apply_r2(const SurfaceDiagram& d, const R2Site& site);
SurfaceDiagram apply_r3(const SurfaceDiagram& d, const R3Site& site);

// Every site at which the corresponding move applies, in a deterministic order.
std::vector<R1Remove> r1_removal_sites(const SurfaceDiagram& d);
std::vector<R2Remove> r2_removal_sites(const SurfaceDiagram& d);
std::vector<R2Add> r2_addition_sites(const SurfaceDiagram& d);
std::vector<R3Site> r3_sites(const SurfaceDiagram& d);

}  // namespace dkh
