#include <bit>
#include <map>
#include <random>

#include "doctest.h"
#include "dkh/algebra.hpp"
#include "dkh/corpus.hpp"
#include "random_diagram.hpp"

using namespace dkh;

namespace {

using Vec = std::map<std::size_t, Rational>;  // local index -> coefficient

void axpy(Vec& y, const Rational& a, const Vec& x) {
  for (auto& [k, v] : x) {
    y[k] += a * v;
    if (y[k].is_zero()) y.erase(k);
  }
}

// With r = (v+ + v-)/2 and g = (v+ - v-)/2 on each circle; bit set means g
// (resp. v-). Sheet bit sits above the circle bits.
Vec rg_to_v(std::size_t k, std::size_t idx) {
  const std::size_t sheet = idx >> k, rg = idx & ((std::size_t{1} << k) - 1);
  Vec out;
  for (std::size_t v = 0; v < (std::size_t{1} << k); ++v)
    out[(sheet << k) | v] = Rational(std::popcount(rg & v) % 2 ? -1 : 1, std::int64_t{1} << k);
  return out;
}

Vec v_to_rg(std::size_t k, const Vec& x) {
  Vec out;
  for (auto& [idx, c] : x) {
    const std::size_t sheet = idx >> k, v = idx & ((std::size_t{1} << k) - 1);
    Vec img;
    for (std::size_t rg = 0; rg < (std::size_t{1} << k); ++rg)
      img[(sheet << k) | rg] = Rational(std::popcount(rg & v) % 2 ? -1 : 1);
    axpy(out, c, img);
  }
  return out;
}

// The maps in the r/g basis, independent of dotting.
Vec expected_rg(const DottedCube& cube, const CubeEdge& e, std::size_t idx) {
  const std::size_t ks = cube.vertices[e.source].circles.size(), kt = cube.vertices[e.target].circles.size();
  const std::size_t sheet = idx >> ks;
  std::size_t base = 0;
  for (std::size_t c = 0; c < ks; ++c)
    if (e.circle_map[c] >= 0 && (idx >> c & 1u)) base |= std::size_t{1} << e.circle_map[c];
  Vec out;
  auto put = [&](std::size_t s, std::size_t bits, std::int64_t coeff) { out[(s << kt) | base | bits] = coeff * e.sign; };
  switch (e.kind) {
    case EdgeKind::Merge: {
      const std::size_t a = idx >> e.source_circles[0] & 1u, b = idx >> e.source_circles[1] & 1u;
      if (a == b) put(sheet, a << e.target_circles[0], 1);
      break;
    }
    case EdgeKind::Split: {
      const std::size_t p = idx >> e.source_circles[0] & 1u;
      const std::size_t bits = (p << e.target_circles[0]) | (p << e.target_circles[1]);
      put(sheet, bits, p ? -2 : 2);
      break;
    }
    case EdgeKind::SingleCycle: {
      const std::size_t p = idx >> e.source_circles[0] & 1u;
      const std::int64_t coeff = sheet == 0 ? 1 : (p ? -2 : 2);
      put(sheet ^ 1u, p << e.target_circles[0], coeff);
      break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("unknot states and gradings") {
  SurfaceDiagram d = corpus_get("unknot");
  DottedCube cube = build_cube(d, CohomologyClass(0, 0));
  auto basis = state_basis(cube, 0);
  REQUIRE(basis.size() == 4);
  std::vector<Grading> want{{0, 1, 1}, {0, -1, -1}, {0, 0, 0}, {0, -2, -2}};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(local_index(basis[k], 1) == k);
    CHECK(grading(cube, basis[k]) == want[k]);
  }
}

TEST_CASE("dotted circles shift c") {
  SurfaceDiagram d = corpus_get("loop-10");
  DottedCube cube = build_cube(d, CohomologyClass::parse(1, "1,0"));
  auto basis = state_basis(cube, 0);
  CHECK(grading(cube, basis[0]) == Grading{0, 1, -1});
  CHECK(grading(cube, basis[1]) == Grading{0, -1, 1});
  CHECK(grading(cube, basis[3]) == Grading{0, -2, 0});
}

TEST_CASE("edge maps match the r/g basis formulas for every dotting") {
  std::mt19937_64 rng(41);
  std::map<std::pair<int, int>, int> seen;  // (kind, dotted circles touched) -> count
  for (int trial = 0; trial < 120; ++trial) {
    SurfaceDiagram d = testing::random_diagram(rng, 1 + trial % 2, 4);
    for (const auto& g : CohomologyClass::all_nonzero(d.genus())) {
      DottedCube cube = build_cube(d, g);
      for (const CubeEdge& e : cube.edges) {
        const std::size_t ks = cube.vertices[e.source].circles.size();
        const std::size_t kt = cube.vertices[e.target].circles.size();
        std::map<std::size_t, Vec> m;  // source v-index -> image
        for (const EdgeEntry& x : edge_map(cube, e, Variant::Perturbed)) axpy(m[x.source], 1, Vec{{x.target, x.coeff}});
        int dots = 0;
        for (int s : e.source_circles)
          if (s >= 0) dots += cube.vertices[e.source].circles[s].dotted;
        for (int t : e.target_circles)
          if (t >= 0) dots += 4 * cube.vertices[e.target].circles[t].dotted;
        ++seen[{static_cast<int>(e.kind), dots}];
        for (std::size_t idx = 0; idx < (std::size_t{2} << ks); ++idx) {
          Vec img;
          for (auto& [v, c] : rg_to_v(ks, idx))
            if (m.count(v)) axpy(img, c, m[v]);
          CHECK(v_to_rg(kt, img) == expected_rg(cube, e, idx));
        }
      }
    }
  }
  // merge, split and single-cycle each met with and without dots
  for (int kind = 0; kind < 3; ++kind) {
    int plain = 0, dotted = 0;
    for (auto& [key, n] : seen)
      if (key.first == kind) (key.second ? dotted : plain) += n;
    CHECK(plain > 0);
    CHECK(dotted > 0);
  }
}

TEST_CASE("plain part preserves (j, c); the rest raises the filtrations") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 80; ++trial) {
    SurfaceDiagram d = testing::random_diagram(rng, trial % 3, 5);
    auto gammas = CohomologyClass::all_nonzero(d.genus());
    if (gammas.empty()) gammas.push_back(CohomologyClass(0, 0));
    for (const auto& g : gammas) {
      DottedCube cube = build_cube(d, g);
      for (const CubeEdge& e : cube.edges) {
        auto sb = state_basis(cube, e.source), tb = state_basis(cube, e.target);
        for (const EdgeEntry& x : edge_map(cube, e, Variant::Perturbed)) {
          const Grading a = grading(cube, sb[x.source]), b = grading(cube, tb[x.target]);
          CHECK(b.i == a.i + 1);
          switch (x.part) {
            case Part::Zero:
              CHECK(b.j == a.j);
              CHECK(b.c2 == a.c2);
              break;
            case Part::Two:
              CHECK(b.j == a.j);
              CHECK(b.c2 == a.c2 + 4);
              break;
            case Part::Four:
              CHECK(b.j == a.j + 4);
              CHECK((b.c2 == a.c2 || b.c2 == a.c2 + 4));
              break;
          }
        }
        for (const EdgeEntry& x : edge_map(cube, e, Variant::Plain)) CHECK(x.part == Part::Zero);
      }
    }
  }
}

TEST_CASE("d squares to zero on the sphere and torus") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 80; ++trial) {
    const int genus = trial % 2;
    SurfaceDiagram d = testing::random_diagram(rng, genus, 6);
    auto gammas = CohomologyClass::all_nonzero(genus);
    gammas.push_back(CohomologyClass(genus, 0));
    for (const auto& g : gammas)
      for (Variant v : {Variant::Plain, Variant::Perturbed}) CHECK(squares_to_zero(assemble_complex(build_cube(d, g), v, false)));
  }
}

TEST_CASE("disjoint single-cycle edges break d o d") {
  SurfaceDiagram split = from_pd(2, {{{0, 1, 0, 1}, 1}, {{2, 3, 2, 3}, 1}},
                                 {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  DottedCube cube = build_cube(split, CohomologyClass::parse(2, "1,1,1,1"));
  CHECK_FALSE(squares_to_zero(assemble_complex(cube, Variant::Plain, false)));
  CHECK_FALSE(squares_to_zero(assemble_complex(cube, Variant::Perturbed, false)));
  try {
    assemble_complex(cube, Variant::Perturbed);
    FAIL("no error");
  } catch (const std::logic_error& e) {
    CHECK(std::string(e.what()).find("disjoint circles") != std::string::npos);
  }
  // both circles dotted: the plain maps die on the lower sheet and the square closes
  DottedCube dotted = build_cube(split, CohomologyClass::parse(2, "1,0,1,0"));
  CHECK(squares_to_zero(assemble_complex(dotted, Variant::Plain, false)));
}

TEST_CASE("r/g change of basis is invertible") {
  for (std::size_t k = 0; k < 4; ++k) {
    SparseMatrix p = multiply(from_rg_basis(k), to_rg_basis(k));
    for (std::size_t i = 0; i < p.rows; ++i)
      for (std::size_t j = 0; j < p.cols; ++j) CHECK(p.at(i, j) == Rational(i == j ? 1 : 0));
  }
}
