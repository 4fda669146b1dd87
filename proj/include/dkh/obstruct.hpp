#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dkh/homology.hpp"

namespace dkh {

struct GammaVerdict {
  CohomologyClass gamma;
  // First generator (lexicographic in i, j, 2c) with 2c != j, if any.
  std::optional<TriDegree> witness;
  // Decided without computing homology: every arc pairs trivially.
  bool shortcut = false;
  // Degrees where the corner images were not distributive (see FilteredBidegrees).
  std::vector<int> fallback_degrees;
};

struct TntResult {
  bool totally_nontrivial = false;
  bool vacuous = false;  // genus 0: there is no nonzero class to test
  std::vector<GammaVerdict> per_gamma;
  std::vector<std::string> warnings;
};

// threads == 0 reads DKH_THREADS, defaulting to 1.
TntResult is_totally_nontrivial(const SurfaceDiagram& d, unsigned threads = 0);

// Rank over Q of the span of the component homology classes.
std::size_t elementary_rank(const SurfaceDiagram& d);

enum class Assumption { NotPseudostrict };
const char* to_string(Assumption a);
std::optional<Assumption> parse_assumption(const std::string& s);

enum class Conclusion {
  AscentByTheoremCaseI,   // genus drops
  AscentByTheoremCaseII,  // equal genus, not pseudostrict
  AscentByElementary,
  Inconclusive,
};
const char* to_string(Conclusion c);

struct ObstructionReport {
  int genus_from = 0;
  int genus_to = 0;
  TntResult tnt;
  std::size_t elementary_rank = 0;
  std::size_t nullity_bound = 0;
  std::vector<Assumption> assumptions;
  Conclusion conclusion = Conclusion::Inconclusive;
  std::vector<std::string> reasons;
};

// Can a concordance from d1 to d2 avoid ascending genus?
ObstructionReport ascent_report(const SurfaceDiagram& d1, const SurfaceDiagram& d2,
                                const std::vector<Assumption>& assumptions, unsigned threads = 0);

std::string report_json(const ObstructionReport& r);
std::string report_text(const ObstructionReport& r);

unsigned threads_from_env();

}  // namespace dkh
