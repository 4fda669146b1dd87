#include "random_diagram.hpp"

#include <algorithm>

#include "dkh/moves.hpp"

namespace dkh::testing {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

SurfaceDiagram relabel(const SurfaceDiagram& d, const std::vector<Label>& labels) {
  std::vector<Arc> arcs = d.arcs();
  for (std::size_t a = 0; a < arcs.size(); ++a) arcs[a].label = labels[a];
  return SurfaceDiagram(d.genus(), std::move(arcs), d.crossings());
}

}  // namespace

SurfaceDiagram random_projection(std::mt19937_64& rng, std::size_t n) {
  std::vector<PdCrossing> xs(n);
  std::vector<std::pair<std::size_t, int>> outs, ins;
  for (std::size_t c = 0; c < n; ++c) {
    xs[c].sign = pick(rng, 2) ? 1 : -1;
    const int over_in = xs[c].sign > 0 ? 3 : 1;
    outs.push_back({c, 2});
    outs.push_back({c, 4 - over_in});
    ins.push_back({c, 0});
    ins.push_back({c, over_in});
  }
  std::shuffle(ins.begin(), ins.end(), rng);
  for (std::size_t a = 0; a < outs.size(); ++a) {
    xs[outs[a].first].arcs[outs[a].second] = a;
    xs[ins[a].first].arcs[ins[a].second] = a;
  }
  return from_pd(0, xs, std::vector<Label>(outs.size()));
}

SurfaceDiagram random_symplectic(std::mt19937_64& rng, const SurfaceDiagram& d) {
  const std::size_t dim = 2 * static_cast<std::size_t>(d.genus());
  if (dim == 0) return d;
  std::vector<Label> labels;
  for (const Arc& a : d.arcs()) labels.push_back(a.label);
  const std::size_t rounds = pick(rng, 4);
  for (std::size_t r = 0; r < rounds; ++r) {
    Label v(dim);
    for (auto& x : v) x = static_cast<std::int64_t>(pick(rng, 3)) - 1;
    // x -> x + <x, v> v for the standard symplectic form
    for (Label& x : labels) {
      std::int64_t w = 0;
      for (std::size_t i = 0; i < dim; i += 2) w += x[i] * v[i + 1] - x[i + 1] * v[i];
      for (std::size_t i = 0; i < dim; ++i) x[i] += w * v[i];
    }
  }
  return relabel(d, labels);
}

SurfaceDiagram random_diagram(std::mt19937_64& rng, int genus, std::size_t max_crossings) {
  // Random projections rarely have small carter genus beyond a few crossings,
  // so start small and grow with moves.
  const std::size_t seed_max = std::min<std::size_t>(max_crossings, 2 * static_cast<std::size_t>(genus) + 2);
  std::optional<SurfaceDiagram> d;
  for (int attempt = 0; !d; ++attempt) {
    const std::size_t n = attempt > 50 ? 0 : pick(rng, seed_max + 1);
    if (n == 0) {
      std::vector<Label> labels{Label(2 * static_cast<std::size_t>(genus), 0)};
      if (genus > 0 && pick(rng, 2)) labels[0][pick(rng, labels[0].size())] = 1;
      d = from_pd(genus, {}, labels);
      break;
    }
    SurfaceDiagram raw = random_projection(rng, n);
    if (carter_genus(raw) > genus) continue;
    d = random_symplectic(rng, with_cellular_labels(raw, genus));
  }

  const std::size_t target = pick(rng, max_crossings + 1);
  for (int guard = 0; d->crossing_count() < target && guard < 50; ++guard) {
    const std::size_t room = target - d->crossing_count();
    const std::size_t kind = pick(rng, 3);
    try {
      if (kind == 0 || room < 2) {
        KinkSpec k{pick(rng, 2) ? 1 : -1, pick(rng, 2) == 1};
        d = apply_r1(*d, R1Add{pick(rng, d->arc_count())}, k);
      } else if (kind == 1) {
        auto sites = r2_addition_sites(*d);
        if (sites.empty()) continue;
        d = apply_r2(*d, sites[pick(rng, sites.size())]);
      } else {
        auto sites = r3_sites(*d);
        if (!sites.empty()) d = apply_r3(*d, sites[pick(rng, sites.size())]);
      }
    } catch (const DiagramError&) {
    }
  }
  return *d;
}

}  // namespace dkh::testing
