#include <random>

#include "doctest.h"
#include "dkh/corpus.hpp"
#include "dkh/moves.hpp"
#include "random_diagram.hpp"

using namespace dkh;

namespace {

bool faces_are_discs(const SurfaceDiagram& d) {
  for (const Face& f : faces(d).faces) {
    Label c = face_class(d, f);
    if (!std::all_of(c.begin(), c.end(), [](auto v) { return v == 0; })) return false;
  }
  return true;
}

DiagramError::Kind error_of(auto&& f) {
  try {
    f();
  } catch (const DiagramError& e) {
    return e.kind();
  }
  FAIL("expected a DiagramError");
  return DiagramError::Kind::Syntax;
}

}  // namespace

TEST_CASE("R1 on a loop adds a kink of the requested sign") {
  SurfaceDiagram loop = corpus_get("loop-10");
  for (int sign : {1, -1})
    for (bool over_first : {false, true}) {
      SurfaceDiagram k = apply_r1(loop, R1Add{0}, {sign, over_first});
      CHECK(k.crossing_count() == 1);
      CHECK(writhe(k) == sign);
      CHECK(component_classes(k) == component_classes(loop));
      CHECK_FALSE(faces_are_discs(k));  // the loop itself is essential
      auto sites = r1_removal_sites(k);
      REQUIRE(sites.size() == 1);
      SurfaceDiagram back = apply_r1(k, sites[0]);
      CHECK(back.crossing_count() == 0);
      CHECK(component_classes(back) == component_classes(loop));
    }
}

TEST_CASE("R2 on parallel loops adds two crossings of opposite sign") {
  SurfaceDiagram par = corpus_get("parallel-10");
  for (const R2Add& site : r2_addition_sites(par)) {
    SurfaceDiagram c = apply_r2(par, site);
    CHECK(c.crossing_count() == 2);
    CHECK(writhe(c) == 0);
    CHECK(component_classes(c) == component_classes(par));
    CHECK(faces_are_discs(c));
    auto sites = r2_removal_sites(c);
    REQUIRE_FALSE(sites.empty());
    SurfaceDiagram back = apply_r2(c, sites[0]);
    CHECK(back.crossing_count() == 0);
    CHECK(component_classes(back) == component_classes(par));
  }
}

TEST_CASE("inapplicable sites are rejected") {
  SurfaceDiagram t = corpus_get("trefoil-right");
  CHECK(error_of([&] { apply_r1(t, R1Remove{0}); }) == DiagramError::Kind::SiteNotApplicable);
  CHECK(error_of([&] { apply_r1(t, R1Add{99}); }) == DiagramError::Kind::SiteNotApplicable);
  CHECK(error_of([&] { apply_r2(t, R2Remove{0, Side::Left}); }) == DiagramError::Kind::SiteNotApplicable);
  CHECK(error_of([&] { apply_r2(t, R2Add{0, Side::Left, 0, Side::Left}); }) ==
        DiagramError::Kind::SiteNotApplicable);
  // the outer face of a crossingless loop is no triangle
  CHECK(error_of([&] { apply_r3(corpus_get("unknot"), R3Site{0, Side::Left}); }) ==
        DiagramError::Kind::SiteNotApplicable);
  CHECK(r1_removal_sites(corpus_get("single-cycle-11")).empty());
  CHECK(r1_removal_sites(corpus_get("kink-loop-10")).size() == 1);
}

TEST_CASE("random move sequences preserve labels, classes and writhe rules") {
  std::mt19937_64 rng(21);
  int r3_applied = 0;
  for (int trial = 0; trial < 120; ++trial) {
    SurfaceDiagram d = testing::random_diagram(rng, trial % 3, 5);
    const auto classes = component_classes(d);
    bool cellular = faces_are_discs(d);
    for (int step = 0; step < 6; ++step) {
      const int w = writhe(d);
      const std::size_t n = d.crossing_count();
      std::uniform_int_distribution<int> kind(0, 4);
      switch (kind(rng)) {
        case 0: {
          KinkSpec k{rng() % 2 ? 1 : -1, rng() % 2 == 1};
          d = apply_r1(d, R1Add{rng() % d.arc_count()}, k);
          CHECK(d.crossing_count() == n + 1);
          CHECK(std::abs(writhe(d) - w) == 1);
          break;
        }
        case 1: {
          auto s = r1_removal_sites(d);
          if (s.empty()) continue;
          d = apply_r1(d, s[rng() % s.size()]);
          CHECK(d.crossing_count() == n - 1);
          CHECK(std::abs(writhe(d) - w) == 1);
          break;
        }
        case 2: {
          auto s = r2_addition_sites(d);
          if (s.empty()) continue;
          d = apply_r2(d, s[rng() % s.size()]);
          CHECK(d.crossing_count() == n + 2);
          CHECK(writhe(d) == w);
          break;
        }
        case 3: {
          auto s = r2_removal_sites(d);
          if (s.empty()) continue;
          d = apply_r2(d, s[rng() % s.size()]);
          CHECK(d.crossing_count() == n - 2);
          CHECK(writhe(d) == w);
          cellular = faces_are_discs(d);  // unclasping can leave an annulus
          break;
        }
        default: {
          auto s = r3_sites(d);
          if (s.empty()) continue;
          d = apply_r3(d, s[rng() % s.size()]);
          ++r3_applied;
          CHECK(d.crossing_count() == n);
          CHECK(writhe(d) == w);
        }
      }
      if (cellular) CHECK(faces_are_discs(d));
      auto now = component_classes(d);
      std::sort(now.begin(), now.end());
      auto before = classes;
      std::sort(before.begin(), before.end());
      CHECK(now == before);
    }
  }
  CHECK(r3_applied > 0);
}
