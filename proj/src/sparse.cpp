#include "dkh/sparse.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <sstream>
#include <type_traits>
#include <unordered_map>

namespace dkh {

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows || c >= cols) throw std::out_of_range("sparse matrix index");
  if (v.is_zero()) return;
  auto& col = columns[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, std::size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r) {
    it->second += v;
    if (it->second.is_zero()) col.erase(it);
  } else {
    col.insert(it, {r, v});
  }
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  const auto& col = columns.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, std::size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r) return it->second;
  return Rational(0);
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols, rows);
  for (std::size_t c = 0; c < cols; ++c)
    for (const auto& [r, v] : columns[c]) t.columns[r].push_back({c, v});
  return t;
}

SparseMatrix SparseMatrix::submatrix(const std::vector<std::size_t>& row_ids,
                                     const std::vector<std::size_t>& col_ids) const {
  std::unordered_map<std::size_t, std::size_t> row_pos;
  for (std::size_t k = 0; k < row_ids.size(); ++k) row_pos[row_ids[k]] = k;
  SparseMatrix s(row_ids.size(), col_ids.size());
  for (std::size_t k = 0; k < col_ids.size(); ++k) {
    auto& out = s.columns[k];
    for (const auto& [r, v] : columns.at(col_ids[k])) {
      auto it = row_pos.find(r);
      if (it != row_pos.end()) out.push_back({it->second, v});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return s;
}

std::string SparseMatrix::to_text() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) os << ' ';
      os << at(r, c);
    }
    os << '\n';
  }
  return os.str();
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
  SparseMatrix out(a.rows, b.cols);
  for (std::size_t c = 0; c < b.cols; ++c) {
    std::map<std::size_t, Rational> acc;
    for (const auto& [k, bv] : b.columns[c])
      for (const auto& [r, av] : a.columns[k]) acc[r] += av * bv;
    for (const auto& [r, v] : acc)
      if (!v.is_zero()) out.columns[c].push_back({r, v});
  }
  return out;
}

namespace {

// Column reduction with the largest row index as pivot. Stored columns are
// scaled so that their pivot entry is 1.
template <class S>
struct Reducer {
  using Col = std::vector<std::pair<std::size_t, S>>;
  std::unordered_map<std::size_t, std::size_t> pivot_of;
  std::vector<Col> cols;
  // Combination tracking for kernel extraction (optional).
  bool track = false;
  std::vector<Col> combos;
  std::size_t added = 0;
  std::vector<Col> kernel;

  static void axpy(Col& v, const S& f, const Col& w) {
    // v <- v - f * w
    Col out;
    out.reserve(v.size() + w.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
      if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
        out.push_back(std::move(v[i++]));
      } else if (i == v.size() || w[j].first < v[i].first) {
        out.push_back({w[j].first, S(-(f * w[j].second))});
        ++j;
      } else {
        S x = v[i].second - f * w[j].second;
        if (x != 0) out.push_back({v[i].first, std::move(x)});
        ++i;
        ++j;
      }
    }
    v = std::move(out);
  }

  bool add(Col v) {
    Col combo;
    if (track) combo.push_back({added, S(1)});
    ++added;
    while (!v.empty()) {
      std::size_t piv = v.back().first;
      auto it = pivot_of.find(piv);
      if (it == pivot_of.end()) {
        S inv = S(1) / v.back().second;
        for (auto& e : v) e.second *= inv;
        if (track) {
          for (auto& e : combo) e.second *= inv;
          combos.push_back(std::move(combo));
        }
        pivot_of.emplace(piv, cols.size());
        cols.push_back(std::move(v));
        return true;
      }
      S f = v.back().second;
      if (track) {
        axpy(combo, f, combos[it->second]);
      }
      axpy(v, f, cols[it->second]);
    }
    if (track) kernel.push_back(std::move(combo));
    return false;
  }
};

std::vector<std::pair<std::size_t, mpq_class>> to_mpq(const SparseColumn& c) {
  std::vector<std::pair<std::size_t, mpq_class>> out;
  out.reserve(c.size());
  for (const auto& [r, v] : c) {
    mpq_class q(mpz_class(std::to_string(v.num())), mpz_class(std::to_string(v.den())));
    q.canonicalize();
    out.push_back({r, q});
  }
  return out;
}

Rational from_mpq(const mpq_class& q) {
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) throw RationalOverflow();
  return Rational(q.get_num().get_si(), q.get_den().get_si());
}

}  // namespace

struct IncrementalRank::Impl {
  Reducer<Rational> fast;
  std::unique_ptr<Reducer<mpq_class>> slow;
  std::vector<SparseColumn> history;
};

IncrementalRank::IncrementalRank() : impl_(std::make_unique<Impl>()) {}
IncrementalRank::~IncrementalRank() = default;
IncrementalRank::IncrementalRank(IncrementalRank&&) noexcept = default;
IncrementalRank& IncrementalRank::operator=(IncrementalRank&&) noexcept = default;

bool IncrementalRank::add(const SparseColumn& col) {
  if (impl_->slow) return impl_->slow->add(to_mpq(col));
  impl_->history.push_back(col);
  try {
    return impl_->fast.add(col);
  } catch (const RationalOverflow&) {
    impl_->slow = std::make_unique<Reducer<mpq_class>>();
    bool last = false;
    for (const auto& c : impl_->history) last = impl_->slow->add(to_mpq(c));
    impl_->history.clear();
    impl_->fast = Reducer<Rational>();
    return last;
  }
}

std::size_t IncrementalRank::rank() const {
  return impl_->slow ? impl_->slow->cols.size() : impl_->fast.cols.size();
}

std::size_t rank_rational(const SparseMatrix& m) {
  IncrementalRank r;
  for (const auto& c : m.columns) r.add(c);
  return r.rank();
}

std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix& m) {
  Reducer<mpq_class> red;
  red.track = true;
  for (const auto& c : m.columns) red.add(to_mpq(c));
  std::vector<std::vector<Rational>> out;
  for (const auto& k : red.kernel) {
    std::vector<Rational> v(m.cols, Rational(0));
    for (const auto& [idx, q] : k) v[idx] = from_mpq(q);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

mpq_class to_q(const Rational& v) { return mpq_class(mpz_class(static_cast<long>(v.num())), mpz_class(static_cast<long>(v.den()))); }
const mpq_class& to_q(const mpq_class& v) { return v; }

template <class S>
PrefixKernel prefix_kernel_in(const std::vector<const SparseColumn*>& columns) {
  Reducer<S> red;
  red.track = true;
  PrefixKernel out;
  for (std::size_t t = 0; t < columns.size(); ++t) {
    bool indep;
    if constexpr (std::is_same_v<S, Rational>) {
      indep = red.add(*columns[t]);
    } else {
      indep = red.add(to_mpq(*columns[t]));
    }
    if (indep) continue;
    std::vector<std::pair<std::size_t, mpq_class>> k;
    for (const auto& [idx, v] : red.kernel.back()) k.push_back({idx, to_q(v)});
    red.kernel.pop_back();
    mpz_class l = 1;
    for (const auto& [_, q] : k) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    mpz_class g = 0;
    for (const auto& [_, q] : k) {
      mpz_class z = q.get_num() * (l / q.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    }
    SparseColumn v;
    for (const auto& [idx, q] : k) {
      mpz_class z = q.get_num() * (l / q.get_den()) / g;
      if (!z.fits_slong_p()) throw RationalOverflow();
      v.push_back({idx, Rational(z.get_si())});
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.vectors.push_back(std::move(v));
    out.born.push_back(t);
  }
  return out;
}

}  // namespace

PrefixKernel prefix_kernel(const std::vector<const SparseColumn*>& columns) {
  try {
    return prefix_kernel_in<Rational>(columns);
  } catch (const RationalOverflow&) {
    return prefix_kernel_in<mpq_class>(columns);
  }
}

}  // namespace dkh
