#include "dkh/smoothing.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace dkh {

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::Merge: return "merge";
    case EdgeKind::Split: return "split";
    case EdgeKind::SingleCycle: return "single-cycle";
  }
  return "?";
}

int height(Resolution r, std::size_t negative_crossings) {
  return std::popcount(r) - static_cast<int>(negative_crossings);
}

Smoothing resolve(const SurfaceDiagram& d, Resolution r, const CohomologyClass& gamma) {
  if (gamma.genus() != d.genus()) throw std::invalid_argument("cohomology class genus does not match diagram");
  Smoothing s;
  s.resolution = r;
  s.height = height(r, d.negative_crossings());
  constexpr std::uint16_t kUnset = 0xffff;
  s.circle_of_arc.assign(d.arc_count(), kUnset);
  // Arcs in increasing id order, so each circle starts at its smallest arc.
  for (std::size_t a0 = 0; a0 < d.arc_count(); ++a0) {
    if (s.circle_of_arc[a0] != kUnset) continue;
    const auto id = static_cast<std::uint16_t>(s.circles.size());
    Circle c;
    std::size_t a = a0;
    End leave = End::Head;  // the end we exit through
    while (true) {
      s.circle_of_arc[a] = id;
      c.arcs.push_back(a);
      c.z2_class ^= z2_class(d.arc(a).label);
      const Arc& arc = d.arc(a);
      if (arc.is_loop()) break;
      const SlotRef& at = leave == End::Head ? *arc.head : *arc.tail;
      const bool one = (r >> at.crossing) & 1u;
      const ArcEnd& next = d.crossing(at.crossing).slots[smoothing_partner(at.slot, one)];
      if (next.arc == a0) break;  // re-entering through its tail
      a = next.arc;
      leave = next.end == End::Tail ? End::Head : End::Tail;
    }
    c.dotted = gamma.pairing(c.z2_class) == 1;
    s.circles.push_back(std::move(c));
  }
  return s;
}

namespace {

CubeEdge make_edge(const SurfaceDiagram& d, const Smoothing& src, const Smoothing& tgt, std::size_t k) {
  CubeEdge e;
  e.source = src.resolution;
  e.target = tgt.resolution;
  e.crossing = k;
  e.sign = (std::popcount(src.resolution & ((Resolution{1} << k) - 1)) % 2) ? -1 : 1;

  std::vector<int> touched_src, touched_tgt;
  for (const auto& ae : d.crossing(k).slots) {
    touched_src.push_back(src.circle_of_arc[ae.arc]);
    touched_tgt.push_back(tgt.circle_of_arc[ae.arc]);
  }
  auto uniq = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  touched_src = uniq(touched_src);
  touched_tgt = uniq(touched_tgt);
  if (touched_src.size() == 2) {
    e.kind = EdgeKind::Merge;
  } else if (touched_tgt.size() == 2) {
    e.kind = EdgeKind::Split;
  } else {
    e.kind = EdgeKind::SingleCycle;
  }
  for (std::size_t i = 0; i < touched_src.size(); ++i) e.source_circles[i] = touched_src[i];
  for (std::size_t i = 0; i < touched_tgt.size(); ++i) e.target_circles[i] = touched_tgt[i];

  e.circle_map.assign(src.circles.size(), -1);
  for (std::size_t c = 0; c < src.circles.size(); ++c) {
    if (std::find(touched_src.begin(), touched_src.end(), static_cast<int>(c)) != touched_src.end()) continue;
    e.circle_map[c] = tgt.circle_of_arc[src.circles[c].arcs.front()];
  }
  return e;
}

}  // namespace

DottedCube build_cube(const SurfaceDiagram& d, const CohomologyClass& gamma) {
  const std::size_t n = d.crossing_count();
  if (n > kMaxCrossings)
    throw std::invalid_argument("diagram has " + std::to_string(n) + " crossings; at most " +
                                std::to_string(kMaxCrossings) + " are supported");
  DottedCube cube{d, gamma, {}, {}};
  const Resolution count = Resolution{1} << n;
  cube.vertices.reserve(count);
  for (Resolution r = 0; r < count; ++r) cube.vertices.push_back(resolve(d, r, gamma));
  for (Resolution r = 0; r < count; ++r)
    for (std::size_t k = 0; k < n; ++k)
      if (!((r >> k) & 1u)) cube.edges.push_back(make_edge(d, cube.vertices[r], cube.vertices[r | (Resolution{1} << k)], k));
  return cube;
}

std::optional<SquareFace> disjoint_single_cycle_face(const DottedCube& cube) {
  std::vector<const CubeEdge*> out;
  for (std::size_t e = 0; e < cube.edges.size(); ++e) {
    const CubeEdge& edge = cube.edges[e];
    if (e == 0 || edge.source != cube.edges[e - 1].source) out.clear();
    if (edge.kind != EdgeKind::SingleCycle) continue;
    for (const CubeEdge* prev : out)
      if (prev->source_circles[0] != edge.source_circles[0]) return SquareFace{edge.source, prev->crossing, edge.crossing};
    out.push_back(&edge);
  }
  return std::nullopt;
}

}  // namespace dkh
