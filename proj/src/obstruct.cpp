#include "dkh/obstruct.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace dkh {

unsigned threads_from_env() {
  const char* s = std::getenv("DKH_THREADS");
  if (!s || !*s) return 1;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (*end != '\0' || v < 1) return 1;
  return static_cast<unsigned>(std::min<long>(v, 256));
}

namespace {

GammaVerdict verdict_for(const SurfaceDiagram& d, const CohomologyClass& gamma) {
  GammaVerdict v{gamma, std::nullopt, false, {}};
  bool all_trivial = std::all_of(d.arcs().begin(), d.arcs().end(),
                                 [&](const Arc& a) { return gamma.pairing(z2_class(a.label)) == 0; });
  if (all_trivial) {
    // No circle can be dotted, so 2c = j on every state.
    v.shortcut = true;
    return v;
  }
  DottedCube cube = build_cube(d, gamma);
  FilteredBidegrees fb = homology_perturbed(assemble_complex(cube, Variant::Perturbed));
  v.fallback_degrees = fb.fallback_degrees;
  for (const auto& [t, _] : fb.counts)
    if (t.c2 != t.j) {
      v.witness = t;
      break;
    }
  return v;
}

}  // namespace

TntResult is_totally_nontrivial(const SurfaceDiagram& d, unsigned threads) {
  TntResult r;
  r.warnings = diagram_warnings(d);
  if (d.genus() == 0) {
    r.vacuous = true;
    r.totally_nontrivial = true;
    r.warnings.push_back("genus 0: no nonzero cohomology class, result is vacuous");
    return r;
  }
  if (threads == 0) threads = threads_from_env();
  std::vector<CohomologyClass> gammas = CohomologyClass::all_nonzero(d.genus());
  std::vector<std::optional<GammaVerdict>> slots(gammas.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < gammas.size(); k = next++) {
      try {
        slots[k] = verdict_for(d, gammas[k]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned nthreads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(gammas.size())));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  r.totally_nontrivial = true;
  for (auto& s : slots) {
    r.per_gamma.push_back(*s);
    if (!s->witness) r.totally_nontrivial = false;
    for (int i : s->fallback_degrees)
      r.warnings.push_back("gamma " + s->gamma.to_string() + ", degree " + std::to_string(i) +
                           ": filtration corners not distributive, used intersection corners");
  }
  return r;
}

std::size_t elementary_rank(const SurfaceDiagram& d) {
  const auto classes = component_classes(d);
  SparseMatrix m(2 * static_cast<std::size_t>(d.genus()), classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (std::size_t k = 0; k < classes[c].size(); ++k) m.add(k, c, Rational(classes[c][k]));
  return rank_rational(m);
}

const char* to_string(Assumption a) {
  switch (a) {
    case Assumption::NotPseudostrict: return "not_pseudostrict";
  }
  return "?";
}

std::optional<Assumption> parse_assumption(const std::string& s) {
  if (s == "not_pseudostrict" || s == "not-pseudostrict") return Assumption::NotPseudostrict;
  return std::nullopt;
}

const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::AscentByTheoremCaseI: return "AscentByTheorem(i)";
    case Conclusion::AscentByTheoremCaseII: return "AscentByTheorem(ii)";
    case Conclusion::AscentByElementary: return "AscentByElementary";
    case Conclusion::Inconclusive: return "Inconclusive";
  }
  return "?";
}

ObstructionReport ascent_report(const SurfaceDiagram& d1, const SurfaceDiagram& d2,
                                const std::vector<Assumption>& assumptions, unsigned threads) {
  ObstructionReport r;
  r.genus_from = d1.genus();
  r.genus_to = d2.genus();
  r.assumptions = assumptions;
  std::sort(r.assumptions.begin(), r.assumptions.end());
  r.assumptions.erase(std::unique(r.assumptions.begin(), r.assumptions.end()), r.assumptions.end());
  const bool not_pseudostrict =
      std::find(r.assumptions.begin(), r.assumptions.end(), Assumption::NotPseudostrict) != r.assumptions.end();

  r.tnt = is_totally_nontrivial(d1, threads);
  r.elementary_rank = elementary_rank(d1);
  // Compressing a genus-g surface kills at most a g-dimensional subspace.
  r.nullity_bound = static_cast<std::size_t>(d1.genus());
  const bool tnt = r.tnt.totally_nontrivial && !r.tnt.vacuous;

  if (tnt && r.genus_from > r.genus_to) {
    r.conclusion = Conclusion::AscentByTheoremCaseI;
    r.reasons.push_back("first diagram is totally nontrivial and the genus drops");
  } else if (tnt && r.genus_from == r.genus_to && not_pseudostrict) {
    r.conclusion = Conclusion::AscentByTheoremCaseII;
    r.reasons.push_back("first diagram is totally nontrivial, genera agree and the concordance is not pseudostrict");
  } else if (r.elementary_rank > r.nullity_bound && (r.genus_from > r.genus_to || not_pseudostrict)) {
    r.conclusion = Conclusion::AscentByElementary;
    r.reasons.push_back("component classes span rank " + std::to_string(r.elementary_rank) +
                        ", above the nullity bound " + std::to_string(r.nullity_bound));
  } else {
    r.conclusion = Conclusion::Inconclusive;
    if (!tnt) r.reasons.push_back("first diagram is not totally nontrivial");
    if (tnt && r.genus_from < r.genus_to) r.reasons.push_back("genus increases; neither case applies");
    if (tnt && r.genus_from == r.genus_to && !not_pseudostrict)
      r.reasons.push_back("equal genus needs the not_pseudostrict assumption");
    if (r.elementary_rank <= r.nullity_bound)
      r.reasons.push_back("component classes span rank " + std::to_string(r.elementary_rank) +
                          ", not above the nullity bound " + std::to_string(r.nullity_bound));
  }
  return r;
}

namespace {

nlohmann::json tri_json(const TriDegree& t) {
  return {{"i", t.i}, {"j", t.j}, {"c", format_c(t.c2)}};
}

}  // namespace

std::string report_json(const ObstructionReport& r) {
  using nlohmann::json;
  json per = json::array();
  for (const auto& v : r.tnt.per_gamma) {
    json jv = {{"gamma", v.gamma.to_string()}, {"shortcut", v.shortcut}};
    jv["witness"] = v.witness ? tri_json(*v.witness) : json(nullptr);
    per.push_back(jv);
  }
  json assumptions = json::array();
  for (auto a : r.assumptions) assumptions.push_back(to_string(a));
  json out = {
      {"schema", 1},
      {"genus_pair", {r.genus_from, r.genus_to}},
      {"tnt", {{"totally_nontrivial", r.tnt.totally_nontrivial}, {"vacuous", r.tnt.vacuous}, {"per_gamma", per}}},
      {"elementary_rank", r.elementary_rank},
      {"nullity_bound", r.nullity_bound},
      {"assumptions", assumptions},
      {"conclusion", to_string(r.conclusion)},
      {"reasons", r.reasons},
      {"warnings", r.tnt.warnings},
  };
  return out.dump(2) + "\n";
}

std::string report_text(const ObstructionReport& r) {
  std::ostringstream os;
  os << "genus pair: " << r.genus_from << " -> " << r.genus_to << "\n";
  os << "totally nontrivial: " << (r.tnt.totally_nontrivial ? "yes" : "no") << (r.tnt.vacuous ? " (vacuous)" : "")
     << "\n";
  for (const auto& v : r.tnt.per_gamma) {
    os << "  gamma " << v.gamma.to_string() << ": ";
    if (v.witness)
      os << "witness (i,j,c) = (" << v.witness->i << "," << v.witness->j << "," << format_c(v.witness->c2) << ")\n";
    else
      os << "collapsed" << (v.shortcut ? " (no dotted circles)" : "") << "\n";
  }
  os << "elementary rank: " << r.elementary_rank << " (nullity bound " << r.nullity_bound << ")\n";
  os << "assumptions:";
  if (r.assumptions.empty()) os << " none";
  for (auto a : r.assumptions) os << " " << to_string(a);
  os << "\nconclusion: " << to_string(r.conclusion) << "\n";
  for (const auto& s : r.reasons) os << "  - " << s << "\n";
  return os.str();
}

}  // namespace dkh
