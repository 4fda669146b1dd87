#include <bit>
#include <map>
#include <random>

#include "doctest.h"
#include "dkh/corpus.hpp"
#include "dkh/smoothing.hpp"
#include "random_diagram.hpp"

using namespace dkh;

TEST_CASE("crossingless loop resolves to itself") {
  SurfaceDiagram d = corpus_get("loop-10");
  Smoothing s = resolve(d, 0, CohomologyClass::parse(1, "1,0"));
  REQUIRE(s.circles.size() == 1);
  CHECK(s.circles[0].z2_class == z2_class({1, 0}));
  CHECK(s.circles[0].dotted);
  CHECK_FALSE(resolve(d, 0, CohomologyClass::parse(1, "0,1")).circles[0].dotted);
}

TEST_CASE("single-cycle diagram") {
  SurfaceDiagram d = corpus_get("single-cycle-11");
  for (Resolution r : {0u, 1u}) {
    Smoothing s = resolve(d, r, CohomologyClass::parse(1, "1,0"));
    REQUIRE(s.circles.size() == 1);
    CHECK(s.circles[0].z2_class == z2_class({1, 1}));
    CHECK(s.circles[0].dotted);
    CHECK_FALSE(resolve(d, r, CohomologyClass::parse(1, "1,1")).circles[0].dotted);
  }
  DottedCube cube = build_cube(d, CohomologyClass::parse(1, "0,1"));
  REQUIRE(cube.edges.size() == 1);
  CHECK(cube.edges[0].kind == EdgeKind::SingleCycle);
  CHECK(cube.edges[0].sign == 1);
}

TEST_CASE("trefoil circle counts") {
  SurfaceDiagram d = corpus_get("trefoil-right");
  CHECK(resolve(d, 0b000, CohomologyClass(0, 0)).circles.size() == 2);
  CHECK(resolve(d, 0b111, CohomologyClass(0, 0)).circles.size() == 3);
  CHECK(resolve(d, 0b001, CohomologyClass(0, 0)).circles.size() == 1);
  CHECK(height(0b101, 0) == 2);
  CHECK(height(0b101, 3) == -1);
}

TEST_CASE("cube structure on random diagrams") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int g = trial % 3;
    SurfaceDiagram d = testing::random_diagram(rng, g, 6);
    const std::size_t n = d.crossing_count();
    for (std::uint32_t bits = 0; bits < (1u << (2 * g)); bits += 1 + bits) {
      CohomologyClass gamma(g, bits);
      DottedCube cube = build_cube(d, gamma);
      REQUIRE(cube.vertices.size() == (std::size_t{1} << n));
      CHECK(cube.edges.size() == (n == 0 ? 0 : n << (n - 1)));
      for (const Smoothing& s : cube.vertices) {
        CHECK(s.height == std::popcount(s.resolution) - static_cast<int>(d.negative_crossings()));
        std::vector<int> hits(d.arc_count(), 0);
        for (std::size_t c = 0; c < s.circles.size(); ++c) {
          std::uint32_t cls = 0;
          for (std::size_t a : s.circles[c].arcs) {
            ++hits[a];
            CHECK(s.circle_of_arc[a] == c);
            cls ^= z2_class(d.arc(a).label);
          }
          CHECK(cls == s.circles[c].z2_class);
          CHECK(s.circles[c].dotted == (gamma.pairing(cls) == 1));
        }
        CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
      }
      std::map<std::pair<Resolution, std::size_t>, const CubeEdge*> by;
      for (const CubeEdge& e : cube.edges) {
        const std::size_t ks = cube.vertices[e.source].circles.size(), kt = cube.vertices[e.target].circles.size();
        switch (e.kind) {
          case EdgeKind::Merge: CHECK(kt + 1 == ks); break;
          case EdgeKind::Split: CHECK(kt == ks + 1); break;
          case EdgeKind::SingleCycle: CHECK(kt == ks); break;
        }
        if (g == 0) CHECK(e.kind != EdgeKind::SingleCycle);
        by[{e.source, e.crossing}] = &e;
      }
      // every square anticommutes
      for (Resolution r = 0; r < cube.vertices.size(); ++r)
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = a + 1; b < n; ++b) {
            if ((r >> a & 1u) || (r >> b & 1u)) continue;
            const int prod = by[{r, a}]->sign * by[{r | 1u << a, b}]->sign * by[{r, b}]->sign *
                             by[{r | 1u << b, a}]->sign;
            CHECK(prod == -1);
          }
    }
  }
}

TEST_CASE("disjoint single-cycle squares need two handles") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 80; ++trial) {
    SurfaceDiagram d = testing::random_diagram(rng, 1, 6);
    for (const auto& g : CohomologyClass::all_nonzero(1))
      CHECK_FALSE(disjoint_single_cycle_face(build_cube(d, g)).has_value());
  }
  SurfaceDiagram split = from_pd(2, {{{0, 1, 0, 1}, 1}, {{2, 3, 2, 3}, 1}},
                                 {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  auto f = disjoint_single_cycle_face(build_cube(split, CohomologyClass(2, 0)));
  REQUIRE(f.has_value());
  CHECK(f->bottom == 0);
}
