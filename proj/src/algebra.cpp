#include "dkh/algebra.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace dkh {

const char* to_string(Variant v) { return v == Variant::Plain ? "dkh" : "trh"; }

std::size_t local_index(const State& s, std::size_t circle_count) {
  return (static_cast<std::size_t>(s.sheet) << circle_count) | s.minus;
}

std::vector<State> state_basis(const DottedCube& cube, Resolution v) {
  const std::size_t k = cube.vertices.at(v).circles.size();
  std::vector<State> out;
  out.reserve(std::size_t{2} << k);
  for (Sheet sh : {Sheet::Upper, Sheet::Lower})
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << k); ++m) out.push_back(State{v, m, sh});
  return out;
}

Grading grading(const DottedCube& cube, const State& s) {
  const Smoothing& sm = cube.vertices.at(s.vertex);
  const int k = static_cast<int>(sm.circles.size());
  const int minus = std::popcount(s.minus);
  Grading g;
  g.i = sm.height;
  g.j = (k - 2 * minus) + g.i + writhe(cube.diagram) - (s.sheet == Sheet::Lower ? 1 : 0);
  int dotted_balance = 0;  // dotted v+ minus dotted v-
  for (int c = 0; c < k; ++c)
    if (sm.circles[c].dotted) dotted_balance += (s.minus >> c & 1u) ? -1 : 1;
  g.c2 = g.j - 2 * dotted_balance;
  return g;
}

namespace {

// Local pieces of the differential. Signs are bits: 0 = v+, 1 = v-. Split
// outputs pack (first child) | (second child) << 1.
struct Term {
  std::int64_t coeff;
  unsigned out;
  Part part;
};
struct Terms {
  int n = 0;
  Term t[2];
};

constexpr Terms one(std::int64_t c, unsigned o, Part p) { return Terms{1, {{c, o, p}, {0, 0, Part::Zero}}}; }
constexpr Terms two(Term a, Term b) { return Terms{2, {a, b}}; }

constexpr unsigned P = 0, M = 1;
constexpr unsigned pair(unsigned first, unsigned second) { return first | second << 1; }

// Merge, indexed [a][b].
// Neither circle dotted.
constexpr Terms kMergeUU[2][2] = {
    {one(1, P, Part::Zero), one(1, M, Part::Zero)},
    {one(1, M, Part::Zero), one(1, P, Part::Four)},
};
// Both dotted; the result is undotted.
constexpr Terms kMergeDD[2][2] = {
    {one(1, P, Part::Two), one(1, M, Part::Zero)},
    {one(1, M, Part::Zero), one(1, P, Part::Four)},
};
// a dotted, b undotted; the result is dotted.
constexpr Terms kMergeDU[2][2] = {
    {one(1, P, Part::Zero), one(1, M, Part::Two)},
    {one(1, M, Part::Zero), one(1, P, Part::Four)},
};

// Split, indexed by the parent sign.
// The +4 term acts on v-.
constexpr Terms kSplitUU[2] = {
    two({1, pair(P, M), Part::Zero}, {1, pair(M, P), Part::Zero}),
    two({1, pair(M, M), Part::Zero}, {1, pair(P, P), Part::Four}),
};
// Parent dotted; first child dotted, second undotted.
constexpr Terms kSplitDU[2] = {
    two({1, pair(P, M), Part::Zero}, {1, pair(M, P), Part::Two}),
    two({1, pair(M, M), Part::Zero}, {1, pair(P, P), Part::Four}),
};
// Parent undotted, both children dotted. The v.+.+ term comes from v- and
// sits in the +4 part; bidegree and the Lee limit force this.
constexpr Terms kSplitUDD[2] = {
    two({1, pair(P, M), Part::Zero}, {1, pair(M, P), Part::Zero}),
    two({1, pair(M, M), Part::Two}, {1, pair(P, P), Part::Four}),
};

// Single cycle, indexed [sheet][sign]; the sheet always flips. Both +4 rows
// act on the lower v- state.
constexpr Terms kEtaU[2][2] = {
    {one(1, P, Part::Zero), one(1, M, Part::Zero)},
    {one(2, M, Part::Zero), one(2, P, Part::Four)},
};
constexpr Terms kEtaD[2][2] = {
    {one(1, P, Part::Zero), one(1, M, Part::Zero)},
    {one(2, M, Part::Two), one(2, P, Part::Four)},
};

bool keep(Part p, Variant v) { return v == Variant::Perturbed || p == Part::Zero; }

}  // namespace

std::vector<EdgeEntry> edge_map(const DottedCube& cube, const CubeEdge& e, Variant variant) {
  const Smoothing& src = cube.vertices.at(e.source);
  const Smoothing& tgt = cube.vertices.at(e.target);
  const std::size_t ks = src.circles.size(), kt = tgt.circles.size();
  std::vector<EdgeEntry> out;
  out.reserve(std::size_t{4} << ks);

  for (unsigned sheet = 0; sheet < 2; ++sheet) {
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << ks); ++m) {
      // Untouched circles carry their signs across.
      std::uint32_t base = 0;
      for (std::size_t c = 0; c < ks; ++c)
        if (e.circle_map[c] >= 0 && (m >> c & 1u)) base |= std::uint32_t{1} << e.circle_map[c];
      const std::size_t source = (std::size_t{sheet} << ks) | m;

      auto emit = [&](const Terms& terms, auto place, unsigned out_sheet) {
        for (int t = 0; t < terms.n; ++t) {
          const Term& term = terms.t[t];
          if (!keep(term.part, variant)) continue;
          std::uint32_t tm = base | place(term.out);
          out.push_back({source, (std::size_t{out_sheet} << kt) | tm, e.sign * term.coeff, term.part});
        }
      };

      switch (e.kind) {
        case EdgeKind::Merge: {
          int a = e.source_circles[0], b = e.source_circles[1];
          bool da = src.circles[a].dotted, db = src.circles[b].dotted;
          if (db && !da) std::swap(a, b), std::swap(da, db);
          unsigned sa = m >> a & 1u, sb = m >> b & 1u;
          const Terms& terms = (da && db) ? kMergeDD[sa][sb] : da ? kMergeDU[sa][sb] : kMergeUU[sa][sb];
          const int t = e.target_circles[0];
          emit(terms, [t](unsigned o) { return std::uint32_t{o & 1u} << t; }, sheet);
          break;
        }
        case EdgeKind::Split: {
          const int p = e.source_circles[0];
          int t1 = e.target_circles[0], t2 = e.target_circles[1];
          const bool dp = src.circles[p].dotted;
          const bool d1 = tgt.circles[t1].dotted, d2 = tgt.circles[t2].dotted;
          if (dp && d2) std::swap(t1, t2);  // dotted child first
          const unsigned sp = m >> p & 1u;
          const Terms& terms = dp ? kSplitDU[sp] : (d1 && d2) ? kSplitUDD[sp] : kSplitUU[sp];
          emit(terms, [t1, t2](unsigned o) {
            return (std::uint32_t{o & 1u} << t1) | (std::uint32_t{o >> 1 & 1u} << t2);
          }, sheet);
          break;
        }
        case EdgeKind::SingleCycle: {
          const int c = e.source_circles[0];
          const int t = e.target_circles[0];
          const unsigned s = m >> c & 1u;
          const Terms& terms = src.circles[c].dotted ? kEtaD[sheet][s] : kEtaU[sheet][s];
          emit(terms, [t](unsigned o) { return std::uint32_t{o & 1u} << t; }, sheet ^ 1u);
          break;
        }
      }
    }
  }
  return out;
}

std::size_t ChainComplex::dimension() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.basis.size();
  return n;
}

ChainComplex assemble_complex(const DottedCube& cube, Variant variant, bool verify) {
  const std::size_t n = cube.diagram.crossing_count();
  const int nminus = static_cast<int>(cube.diagram.negative_crossings());
  ChainComplex cx;
  cx.variant = variant;
  cx.groups.resize(n + 1);
  std::vector<std::size_t> offset(cube.vertices.size(), 0);
  for (std::size_t k = 0; k <= n; ++k) cx.groups[k].degree = static_cast<int>(k) - nminus;
  for (Resolution r = 0; r < cube.vertices.size(); ++r) {
    ChainGroup& g = cx.groups[std::popcount(r)];
    offset[r] = g.basis.size();
    for (const State& s : state_basis(cube, r)) {
      g.basis.push_back(s);
      g.gradings.push_back(grading(cube, s));
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    cx.differentials.emplace_back(cx.groups[k + 1].basis.size(), cx.groups[k].basis.size());
  for (const CubeEdge& e : cube.edges) {
    SparseMatrix& d = cx.differentials[std::popcount(e.source)];
    for (const EdgeEntry& x : edge_map(cube, e, variant))
      d.columns[offset[e.source] + x.source].push_back({offset[e.target] + x.target, Rational(x.coeff)});
  }
  for (SparseMatrix& d : cx.differentials)
    for (SparseColumn& col : d.columns) {
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      // Different edges never hit the same target from the same source.
      for (std::size_t t = 1; t < col.size(); ++t)
        if (col[t].first == col[t - 1].first) throw std::logic_error("duplicate differential entry");
    }
  if (verify && !squares_to_zero(cx)) {
    std::string msg = "differential does not square to zero";
    if (auto f = disjoint_single_cycle_face(cube))
      msg += " (single-cycle edges at crossings " + std::to_string(f->first) + " and " + std::to_string(f->second) +
             " act on disjoint circles)";
    throw std::logic_error(msg);
  }
  return cx;
}

bool squares_to_zero(const ChainComplex& c) {
  for (std::size_t k = 0; k + 1 < c.differentials.size(); ++k)
    if (!multiply(c.differentials[k + 1], c.differentials[k]).is_zero()) return false;
  return true;
}

SparseMatrix to_rg_basis(std::size_t k) {
  const std::size_t half = std::size_t{1} << k;
  SparseMatrix t(2 * half, 2 * half);
  const Rational scale(1, static_cast<std::int64_t>(half));
  for (std::size_t sheet = 0; sheet < 2; ++sheet)
    for (std::size_t v = 0; v < half; ++v)
      for (std::size_t rg = 0; rg < half; ++rg) {
        const bool neg = std::popcount(v & rg) % 2;
        t.columns[sheet * half + v].push_back({sheet * half + rg, neg ? -scale : scale});
      }
  return t;
}

SparseMatrix from_rg_basis(std::size_t k) {
  const std::size_t half = std::size_t{1} << k;
  SparseMatrix t(2 * half, 2 * half);
  for (std::size_t sheet = 0; sheet < 2; ++sheet)
    for (std::size_t rg = 0; rg < half; ++rg)
      for (std::size_t v = 0; v < half; ++v) {
        const bool neg = std::popcount(v & rg) % 2;
        t.columns[sheet * half + rg].push_back({sheet * half + v, Rational(neg ? -1 : 1)});
      }
  return t;
}

}  // namespace dkh
