#include "dkh/corpus.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "dkh/moves.hpp"

namespace dkh {

namespace {

using Builder = std::function<SurfaceDiagram()>;

struct Item {
  CorpusEntry entry;
  Builder build;
};

SurfaceDiagram loops(int genus, std::vector<Label> labels) { return from_pd(genus, {}, std::move(labels)); }

// Positive kink, under-strand first, on a closed loop with the given label.
SurfaceDiagram kink(int genus, int sign, Label label) {
  SurfaceDiagram loop = loops(genus, {std::move(label)});
  return apply_r1(loop, R1Add{0}, KinkSpec{sign, false});
}

SurfaceDiagram cellular(int genus, const std::vector<PdCrossing>& xs, std::size_t arcs) {
  std::vector<Label> labels(arcs, Label{});
  SurfaceDiagram raw = from_pd(0, xs, labels);
  SurfaceDiagram d = with_cellular_labels(raw, genus);
  if (d.genus() != genus) throw std::logic_error("corpus entry has unexpected genus");
  return d;
}

const std::vector<Item>& items() {
  static const std::vector<Item> all = [] {
    std::vector<Item> v;
    auto add = [&](std::string name, std::string desc, Builder b) {
      v.push_back({CorpusEntry{std::move(name), std::move(desc), false}, std::move(b)});
    };
    auto placeholder = [&](std::string name, std::string desc) {
      v.push_back({CorpusEntry{std::move(name), std::move(desc), true}, nullptr});
    };

    // genus 0
    add("unknot", "crossingless unknot in the thickened sphere", [] { return loops(0, {{}}); });
    add("unlink-2", "two-component crossingless unlink, genus 0", [] { return loops(0, {{}, {}}); });
    add("kink-pos-sphere", "unknot with one positive kink, genus 0", [] { return kink(0, 1, {}); });
    add("kink-neg-sphere", "unknot with one negative kink, genus 0", [] { return kink(0, -1, {}); });
    add("trefoil-right", "positive (right-handed) trefoil, genus 0", [] {
      return from_pd(0, {{{0, 4, 1, 3}, 1}, {{2, 0, 3, 5}, 1}, {{4, 2, 5, 1}, 1}}, std::vector<Label>(6));
    });
    add("trefoil-left", "negative (left-handed) trefoil, genus 0", [] {
      return from_pd(0, {{{0, 3, 1, 4}, -1}, {{2, 5, 3, 0}, -1}, {{4, 1, 5, 2}, -1}}, std::vector<Label>(6));
    });
    add("hopf-pos", "positive Hopf link, genus 0", [] {
      return cellular(0, {{{0, 3, 1, 2}, 1}, {{3, 0, 2, 1}, 1}}, 4);
    });
    add("figure-eight", "figure-eight knot, genus 0", [] {
      return from_pd(0, {{{3, 1, 4, 0}, 1}, {{7, 5, 0, 4}, 1}, {{5, 2, 6, 3}, -1}, {{1, 6, 2, 7}, -1}},
                     std::vector<Label>(8));
    });

    // genus 1
    add("null-loop", "null-homotopic crossingless loop on the torus", [] { return loops(1, {{0, 0}}); });
    add("loop-10", "essential crossingless loop of class (1,0)", [] { return loops(1, {{1, 0}}); });
    add("essential-10-loop", "alias of loop-10", [] { return loops(1, {{1, 0}}); });
    add("loop-01", "essential crossingless loop of class (0,1)", [] { return loops(1, {{0, 1}}); });
    add("loop-11", "essential crossingless loop of class (1,1)", [] { return loops(1, {{1, 1}}); });
    add("parallel-10", "two parallel (1,0) loops", [] { return loops(1, {{1, 0}, {1, 0}}); });
    add("single-cycle-11", "(1,0) and (0,1) loops meeting in one positive crossing", [] {
      return from_pd(1, {{{0, 1, 0, 1}, 1}}, {{1, 0}, {0, 1}});
    });
    add("kink-pos-torus", "null-homotopic loop with a positive kink, genus 1", [] { return kink(1, 1, {0, 0}); });
    add("kink-neg-torus", "null-homotopic loop with a negative kink, genus 1", [] { return kink(1, -1, {0, 0}); });
    add("kink-loop-10", "(1,0) loop with a positive kink", [] { return kink(1, 1, {1, 0}); });
    add("clasp-10", "two parallel (1,0) loops clasped by a Reidemeister II finger", [] {
      return apply_r2(loops(1, {{1, 0}, {1, 0}}), R2Add{0, Side::Left, 1, Side::Right});
    });
    add("virtual-trefoil", "two-crossing knot with Gauss word O1 O2 U1 U2, genus 1", [] {
      return cellular(1, {{{1, 0, 2, 3}, 1}, {{2, 1, 3, 0}, 1}}, 4);
    });

    add("two-curves-12", "(1,0) and (-1,2) curves meeting in two crossings; totally nontrivial", [] {
      return cellular(1, {{{0, 3, 2, 1}, 1}, {{3, 2, 1, 0}, -1}}, 4);
    });
    add("two-curves-12-r2x4", "two-curves-12 after four Reidemeister II fingers, 10 crossings", [] {
      SurfaceDiagram d = cellular(1, {{{0, 3, 2, 1}, 1}, {{3, 2, 1, 0}, -1}}, 4);
      for (std::size_t step = 0; d.crossing_count() < 10; ++step) {
        auto sites = r2_addition_sites(d);
        d = apply_r2(d, sites[(step * 7 + 3) % sites.size()]);
      }
      return d;
    });

    // genus 2
    add("g2-loops", "disjoint loops on different handles, genus 2", [] {
      return loops(2, {{1, 0, 0, 0}, {0, 0, 1, 0}});
    });
    add("g2-single-cycle", "single crossing of (1,0,0,0) and (0,1,0,0) loops, genus 2", [] {
      return from_pd(2, {{{0, 1, 0, 1}, 1}}, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    });

    placeholder("link-L", "two-component genus-1 link with rank-2 component span (supply encoding)");
    placeholder("link-L-prime", "concordant partner of link-L (supply encoding)");
    placeholder("link-J", "genus-1 link with rank-1 component span (supply encoding)");
    placeholder("link-J-prime", "concordant partner of link-J (supply encoding)");
    placeholder("link-J-kl", "two-parameter family member J(k,l) (supply encoding)");
    placeholder("link-genus2", "totally nontrivial genus-2 link (supply encoding)");
    return v;
  }();
  return all;
}

}  // namespace

std::vector<CorpusEntry> corpus_list() {
  std::vector<CorpusEntry> out;
  for (const auto& it : items()) out.push_back(it.entry);
  return out;
}

SurfaceDiagram corpus_get(const std::string& name, const std::optional<std::filesystem::path>& user_dir) {
  if (user_dir) {
    std::filesystem::path p = *user_dir / (name + ".json");
    if (std::filesystem::exists(p)) {
      std::ifstream in(p);
      std::stringstream ss;
      ss << in.rdbuf();
      return parse_diagram(ss.str());
    }
  }
  for (const auto& it : items()) {
    if (it.entry.name != name) continue;
    if (it.entry.placeholder)
      throw CorpusError("corpus entry '" + name + "' is a placeholder; supply " + name +
                        ".json in a corpus directory");
    return it.build();
  }
  throw CorpusError("unknown corpus entry '" + name + "'");
}

}  // namespace dkh
