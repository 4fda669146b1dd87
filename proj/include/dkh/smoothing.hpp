#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dkh/diagram.hpp"

namespace dkh {

// Bit k is the smoothing choice at crossing k.
using Resolution = std::uint32_t;

constexpr std::size_t kMaxCrossings = 20;

struct Circle {
  std::vector<std::size_t> arcs;  // traversal order, starting at the smallest arc id
  std::uint32_t z2_class = 0;
  bool dotted = false;
};

struct Smoothing {
  Resolution resolution = 0;
  std::vector<Circle> circles;              // ordered by smallest arc id
  std::vector<std::uint16_t> circle_of_arc;
  int height = 0;
};

// 0-smoothing joins slots (0,1) and (2,3); 1-smoothing joins (0,3) and (1,2).
constexpr int smoothing_partner(int slot, bool one) { return one ? 3 - slot : slot ^ 1; }

Smoothing resolve(const SurfaceDiagram& d, Resolution r, const CohomologyClass& gamma);
int height(Resolution r, std::size_t negative_crossings);

enum class EdgeKind { Merge, Split, SingleCycle };
const char* to_string(EdgeKind k);

struct CubeEdge {
  Resolution source = 0;
  Resolution target = 0;
  std::size_t crossing = 0;
  EdgeKind kind = EdgeKind::Merge;
  int sign = 1;
  // Circles touched by the edge; the second entry is -1 when only one.
  std::array<int, 2> source_circles{-1, -1};
  std::array<int, 2> target_circles{-1, -1};
  // Untouched source circle -> target circle; -1 for touched circles.
  std::vector<int> circle_map;
};

struct DottedCube {
  SurfaceDiagram diagram;
  CohomologyClass gamma;
  std::vector<Smoothing> vertices;  // indexed by resolution
  std::vector<CubeEdge> edges;      // sorted by (source, crossing)
};

DottedCube build_cube(const SurfaceDiagram& d, const CohomologyClass& gamma);

// A square whose two edges out of its bottom vertex are single-cycle
// smoothings of two different circles. The two paths around it send
// v+ (x) v+ to different states, so d o d need not vanish there. Needs two
// disjoint punctured tori in the surface, hence genus >= 2.
struct SquareFace {
  Resolution bottom = 0;
  std::size_t first = 0;   // crossings
  std::size_t second = 0;
};
std::optional<SquareFace> disjoint_single_cycle_face(const DottedCube& cube);

}  // namespace dkh
