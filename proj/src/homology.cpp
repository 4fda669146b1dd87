#include "dkh/homology.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dkh {

std::size_t GradedDims::total() const {
  std::size_t n = 0;
  for (const auto& [_, d] : dims) n += d;
  return n;
}

std::size_t FilteredBidegrees::total() const {
  std::size_t n = 0;
  for (const auto& [_, d] : counts) n += d;
  return n;
}

std::map<int, std::size_t> FilteredBidegrees::by_degree() const {
  std::map<int, std::size_t> out;
  for (const auto& [t, d] : counts) out[t.i] += d;
  return out;
}

std::map<std::pair<int, int>, std::size_t> FilteredBidegrees::by_degree_and_j() const {
  std::map<std::pair<int, int>, std::size_t> out;
  for (const auto& [t, d] : counts) out[{t.i, t.j}] += d;
  return out;
}

std::string format_c(int c2) {
  if (c2 % 2 == 0) return std::to_string(c2 / 2);
  return std::to_string(c2) + "/2";
}

GradedDims homology_plain(const ChainComplex& cx) {
  if (cx.variant != Variant::Plain) throw std::invalid_argument("homology_plain needs the plain complex");
  GradedDims out;
  const std::size_t groups = cx.groups.size();
  // rank of d_k on each (j, 2c) block, keyed by block
  std::vector<std::map<std::pair<int, int>, std::size_t>> ranks(groups);
  for (std::size_t k = 0; k + 1 < groups; ++k) {
    const SparseMatrix& d = cx.differentials[k];
    std::map<std::pair<int, int>, IncrementalRank> red;
    for (std::size_t col = 0; col < d.cols; ++col) {
      const Grading& g = cx.groups[k].gradings[col];
      for (const auto& [row, _] : d.columns[col]) {
        const Grading& h = cx.groups[k + 1].gradings[row];
        if (h.j != g.j || h.c2 != g.c2) throw std::logic_error("plain differential changes (j, c)");
      }
      if (!d.columns[col].empty()) red[{g.j, g.c2}].add(d.columns[col]);
    }
    for (auto& [key, r] : red) ranks[k][key] = r.rank();
  }
  for (std::size_t k = 0; k < groups; ++k) {
    std::map<std::pair<int, int>, std::size_t> size;
    for (const Grading& g : cx.groups[k].gradings) ++size[{g.j, g.c2}];
    for (const auto& [key, sz] : size) {
      std::size_t r_out = ranks[k].count(key) ? ranks[k].at(key) : 0;
      std::size_t r_in = (k > 0 && ranks[k - 1].count(key)) ? ranks[k - 1].at(key) : 0;
      std::size_t h = sz - r_out - r_in;
      if (h > 0) out.dims[{cx.groups[k].degree, key.first, key.second}] = h;
    }
  }
  return out;
}

namespace {

int mod4(int x) { return ((x % 4) + 4) % 4; }

std::vector<int> distinct(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

using Corners = std::vector<std::vector<long>>;  // [a][b], one extra row and column of zeros

// F[a][b] = dim image(H(C_{j>=jv[a], 2c>=cv[b}) -> H). cols_out[s] is the
// image of state s under d_k, rows_in[s] the row of d_{k-1} at s.
Corners subcomplex_corners(const std::vector<Grading>& grade, const std::vector<int>& jv, const std::vector<int>& cv,
                           const std::vector<const SparseColumn*>& cols_out,
                           const std::vector<const SparseColumn*>& rows_in) {
  const std::size_t n = grade.size();
  std::size_t image_rank;
  {
    IncrementalRank r;
    for (const auto* row : rows_in)
      if (!row->empty()) r.add(*row);
    image_rank = r.rank();
  }
  Corners F(jv.size() + 1, std::vector<long>(cv.size() + 1, 0));
  std::vector<std::size_t> order(n);
  for (std::size_t s = 0; s < n; ++s) order[s] = s;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return grade[a].j < grade[b].j; });

  for (std::size_t b = 0; b < cv.size(); ++b) {
    const int c0 = cv[b];
    // Cycles in F: add columns by decreasing j.
    {
      IncrementalRank r;
      std::size_t in_f = 0;
      std::size_t pos = n;
      for (std::size_t a = jv.size(); a-- > 0;) {
        while (pos > 0 && grade[order[pos - 1]].j >= jv[a]) {
          std::size_t s = order[--pos];
          if (grade[s].c2 < c0) continue;
          ++in_f;
          if (!cols_out[s]->empty()) r.add(*cols_out[s]);
        }
        F[a][b] = static_cast<long>(in_f - r.rank());
      }
    }
    // Boundaries in F: rank of image minus rank of its projection off F.
    {
      IncrementalRank r;
      for (std::size_t s = 0; s < n; ++s)
        if (grade[s].c2 < c0 && !rows_in[s]->empty()) r.add(*rows_in[s]);
      std::size_t pos = 0;
      for (std::size_t a = 0; a < jv.size(); ++a) {
        while (pos < n && grade[order[pos]].j < jv[a]) {
          std::size_t s = order[pos++];
          if (grade[s].c2 >= c0 && !rows_in[s]->empty()) r.add(*rows_in[s]);
        }
        F[a][b] -= static_cast<long>(image_rank - r.rank());
      }
    }
  }
  return F;
}

// F[a][b] = dim(Im_j(a) cap Im_c(b)), each image taken from its own
// one-parameter subcomplex. Two filtrations of one space share an adapted
// basis, so these corners never give negative multiplicities. boundaries
// are the columns of d_{k-1} landing in this summand, in local indices.
Corners intersection_corners(const std::vector<Grading>& grade, const std::vector<int>& jv, const std::vector<int>& cv,
                             const std::vector<const SparseColumn*>& cols_out,
                             const std::vector<SparseColumn>& boundaries) {
  const std::size_t n = grade.size();
  // Cycles of C_{j>=a} (resp. C_{c>=b}): kernel prefixes along decreasing j (resp. c).
  struct Chain {
    std::vector<SparseColumn> cycles;
    std::vector<std::size_t> upto;  // cycles[0..upto[a]) span the filtered cycles
  };
  auto chain = [&](auto key, const std::vector<int>& values) {
    std::vector<std::size_t> order(n);
    for (std::size_t s = 0; s < n; ++s) order[s] = s;
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return key(grade[x]) > key(grade[y]); });
    std::vector<const SparseColumn*> cols;
    for (auto s : order) cols.push_back(cols_out[s]);
    PrefixKernel pk = prefix_kernel(cols);
    for (auto& v : pk.vectors) {
      for (auto& e : v) e.first = order[e.first];
      std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    Chain c;
    c.cycles = std::move(pk.vectors);
    c.upto.assign(values.size() + 1, 0);
    for (std::size_t a = 0; a < values.size(); ++a) {
      std::size_t len = 0;
      while (len < n && key(grade[order[len]]) >= values[a]) ++len;
      std::size_t k = 0;
      while (k < pk.born.size() && pk.born[k] < len) ++k;
      c.upto[a] = k;
    }
    return c;
  };
  const Chain zj = chain([](const Grading& g) { return g.j; }, jv);
  const Chain zc = chain([](const Grading& g) { return g.c2; }, cv);

  auto seeded = [&] {
    IncrementalRank r;
    for (const auto& col : boundaries)
      if (!col.empty()) r.add(col);
    return r;
  };
  const long rank_b = static_cast<long>(seeded().rank());
  std::vector<long> wc(cv.size() + 1, rank_b);  // rank(B + Z_c(b))
  {
    IncrementalRank r = seeded();
    std::size_t done = 0;
    for (std::size_t b = cv.size(); b-- > 0;) {
      for (; done < zc.upto[b]; ++done) r.add(zc.cycles[done]);
      wc[b] = static_cast<long>(r.rank());
    }
  }
  Corners F(jv.size() + 1, std::vector<long>(cv.size() + 1, 0));
  for (std::size_t a = 0; a < jv.size(); ++a) {
    IncrementalRank r = seeded();
    for (std::size_t k = 0; k < zj.upto[a]; ++k) r.add(zj.cycles[k]);
    const long wj = static_cast<long>(r.rank());
    std::size_t done = 0;
    for (std::size_t b = cv.size(); b-- > 0;) {
      for (; done < zc.upto[b]; ++done) r.add(zc.cycles[done]);
      F[a][b] = wj + wc[b] - static_cast<long>(r.rank()) - rank_b;
    }
  }
  return F;
}

std::map<std::pair<int, int>, long> multiplicities(const Corners& F, const std::vector<int>& jv,
                                                   const std::vector<int>& cv) {
  std::map<std::pair<int, int>, long> out;
  for (std::size_t a = 0; a < jv.size(); ++a)
    for (std::size_t b = 0; b < cv.size(); ++b)
      if (long m = F[a][b] - F[a + 1][b] - F[a][b + 1] + F[a + 1][b + 1]) out[{jv[a], cv[b]}] = m;
  return out;
}

struct Summand {
  std::vector<Grading> grade;
  std::vector<const SparseColumn*> cols_out, rows_in;
  std::vector<SparseColumn> boundaries;
};

using Multiplicities = std::map<std::pair<int, int>, long>;

Multiplicities filtered_summand(const Summand& s, bool intersect) {
  if (s.grade.empty()) return {};
  std::vector<int> jv, cv;
  for (const auto& g : s.grade) {
    jv.push_back(g.j);
    cv.push_back(g.c2);
  }
  jv = distinct(std::move(jv));
  cv = distinct(std::move(cv));
  return multiplicities(intersect ? intersection_corners(s.grade, jv, cv, s.cols_out, s.boundaries)
                                  : subcomplex_corners(s.grade, jv, cv, s.cols_out, s.rows_in),
                        jv, cv);
}

}  // namespace

FilteredBidegrees homology_perturbed(const ChainComplex& cx) {
  if (cx.variant != Variant::Perturbed) throw std::invalid_argument("homology_perturbed needs the perturbed complex");
  FilteredBidegrees out;
  const std::size_t groups = cx.groups.size();
  static const SparseColumn kEmpty;
  // d only moves (j, 2c) by multiples of 4, so the residues split the complex.
  auto summand = [](const Grading& g) { return mod4(g.j) * 4 + mod4(g.c2); };
  std::vector<SparseMatrix> transposed;
  for (const auto& d : cx.differentials) transposed.push_back(d.transpose());

  for (std::size_t k = 0; k < groups; ++k) {
    const ChainGroup& g = cx.groups[k];
    std::vector<std::size_t> local(g.basis.size());
    std::vector<Summand> parts(16);
    for (std::size_t s = 0; s < g.basis.size(); ++s) {
      Summand& p = parts[summand(g.gradings[s])];
      local[s] = p.grade.size();
      p.grade.push_back(g.gradings[s]);
      p.cols_out.push_back(k + 1 < groups ? &cx.differentials[k].columns[s] : &kEmpty);
      p.rows_in.push_back(k > 0 ? &transposed[k - 1].columns[s] : &kEmpty);
    }
    if (k > 0) {
      const SparseMatrix& d = cx.differentials[k - 1];
      for (std::size_t c = 0; c < d.cols; ++c) {
        if (d.columns[c].empty()) continue;
        SparseColumn col;
        for (const auto& [r, v] : d.columns[c]) col.push_back({local[r], v});
        parts[summand(cx.groups[k - 1].gradings[c])].boundaries.push_back(std::move(col));
      }
    }
    auto run = [&](bool intersect) {
      Multiplicities m;
      for (const Summand& p : parts)
        for (const auto& [jc, n] : filtered_summand(p, intersect)) m[jc] += n;
      return m;
    };
    Multiplicities m = run(false);
    if (std::any_of(m.begin(), m.end(), [](const auto& kv) { return kv.second < 0; })) {
      m = run(true);
      out.fallback_degrees.push_back(g.degree);
    }
    for (const auto& [jc, n] : m) {
      if (n < 0) throw std::logic_error("negative associated graded multiplicity");
      if (n > 0) out.counts[{g.degree, jc.first, jc.second}] += static_cast<std::size_t>(n);
    }
  }
  return out;
}

}  // namespace dkh
