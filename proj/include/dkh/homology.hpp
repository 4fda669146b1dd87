#pragma once

#include <compare>
#include <map>
#include <string>

#include "dkh/algebra.hpp"

namespace dkh {

struct TriDegree {
  int i = 0;
  int j = 0;
  int c2 = 0;  // 2c
  friend auto operator<=>(const TriDegree&, const TriDegree&) = default;
};

// Dimensions of DKh by (i, j, 2c); zero entries are omitted.
struct GradedDims {
  std::map<TriDegree, std::size_t> dims;
  std::size_t total() const;
  friend bool operator==(const GradedDims&, const GradedDims&) = default;
};

// Associated graded multiplicities of DKh'' under the (j, c) filtration.
// Corner (a, b) is the image of H(C_{j>=a, 2c>=b}) in H. Those images need
// not form a distributive lattice; when inclusion-exclusion goes negative in
// some homological degree, that degree is redone with Im_j(a) cap Im_c(b) as
// corners and listed in fallback_degrees.
struct FilteredBidegrees {
  std::map<TriDegree, std::size_t> counts;
  std::vector<int> fallback_degrees;
  std::size_t total() const;
  // Multiplicities by i alone, and by (i, j) with c forgotten.
  std::map<int, std::size_t> by_degree() const;
  std::map<std::pair<int, int>, std::size_t> by_degree_and_j() const;
  friend bool operator==(const FilteredBidegrees&, const FilteredBidegrees&) = default;
};

GradedDims homology_plain(const ChainComplex& c);
FilteredBidegrees homology_perturbed(const ChainComplex& c);

std::string format_c(int c2);  // "1/2", "-3/2", "2"

}  // namespace dkh
