#include "dkh/moves.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace dkh {

namespace {

using K = DiagramError::Kind;
[[noreturn]] void fail(K k, const std::string& msg) { throw DiagramError(k, msg); }

// A component as the cyclic list of crossings it passes through. labels[k]
// belongs to the arc leaving passage k. A closed loop has no passages and a
// single label.
struct Passage {
  std::size_t crossing;
  int in_slot;
  bool over() const { return in_slot % 2 == 1; }
};

struct Strand {
  std::vector<Passage> passages;
  std::vector<Label> labels;
};

struct ArcPos {
  std::size_t strand;
  std::size_t index;  // label index; 0 for a closed loop
};

struct Model {
  int genus = 0;
  std::size_t crossing_count = 0;
  std::vector<Strand> strands;
  std::vector<ArcPos> where;  // per original arc
};

Label zero_label(int genus) { return Label(2 * static_cast<std::size_t>(genus), 0); }

void add_to(Label& a, const Label& b, std::int64_t scale = 1) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += scale * b[k];
}

bool is_zero(const Label& l) {
  return std::all_of(l.begin(), l.end(), [](auto v) { return v == 0; });
}

Model to_model(const SurfaceDiagram& d) {
  Model m;
  m.genus = d.genus();
  m.crossing_count = d.crossing_count();
  m.where.resize(d.arc_count());
  for (const auto& comp : d.components()) {
    Strand s;
    const std::size_t id = m.strands.size();
    if (d.arc(comp.front()).is_loop()) {
      s.labels.push_back(d.arc(comp.front()).label);
      m.where[comp.front()] = {id, 0};
    } else {
      const std::size_t len = comp.size();
      for (std::size_t k = 0; k < len; ++k) {
        const SlotRef& h = *d.arc(comp[k]).head;
        s.passages.push_back({h.crossing, h.slot});
        std::size_t next = comp[(k + 1) % len];
        s.labels.push_back(d.arc(next).label);
        m.where[next] = {id, k};
      }
    }
    m.strands.push_back(std::move(s));
  }
  return m;
}

SurfaceDiagram from_model(const Model& m) {
  // Drop unused crossing ids, keeping relative order.
  std::vector<char> used(m.crossing_count, 0);
  for (const auto& s : m.strands)
    for (const auto& p : s.passages) used[p.crossing] = 1;
  std::vector<std::size_t> renum(m.crossing_count, 0);
  std::size_t n = 0;
  for (std::size_t c = 0; c < m.crossing_count; ++c)
    if (used[c]) renum[c] = n++;

  std::vector<Arc> arcs;
  std::vector<Crossing> crossings(n);
  for (const auto& s : m.strands) {
    if (s.passages.empty()) {
      arcs.push_back(Arc{std::nullopt, std::nullopt, s.labels.front()});
      continue;
    }
    const std::size_t len = s.passages.size();
    for (std::size_t k = 0; k < len; ++k) {
      const Passage& from = s.passages[k];
      const Passage& to = s.passages[(k + 1) % len];
      SlotRef tail{renum[from.crossing], (from.in_slot + 2) % 4};
      SlotRef head{renum[to.crossing], to.in_slot};
      std::size_t a = arcs.size();
      arcs.push_back(Arc{tail, head, s.labels[k]});
      crossings[tail.crossing].slots[tail.slot] = ArcEnd{a, End::Tail};
      crossings[head.crossing].slots[head.slot] = ArcEnd{a, End::Head};
    }
  }
  return SurfaceDiagram(m.genus, std::move(arcs), std::move(crossings));
}

// Removes the flagged passages of a strand, merging labels across each gap.
void remove_passages(Strand& s, const std::vector<char>& drop) {
  const std::size_t len = s.passages.size();
  std::size_t keep = len;
  for (std::size_t k = 0; k < len; ++k)
    if (!drop[k]) {
      keep = k;
      break;
    }
  if (keep == len) {
    Label sum = s.labels.front();
    for (std::size_t k = 1; k < len; ++k) add_to(sum, s.labels[k]);
    s.passages.clear();
    s.labels = {sum};
    return;
  }
  Strand out;
  out.passages.push_back(s.passages[keep]);
  Label acc = s.labels[keep];
  for (std::size_t t = 1; t < len; ++t) {
    std::size_t k = (keep + t) % len;
    if (drop[k]) {
      add_to(acc, s.labels[k]);
    } else {
      out.labels.push_back(acc);
      out.passages.push_back(s.passages[k]);
      acc = s.labels[k];
    }
  }
  out.labels.push_back(acc);
  s = std::move(out);
}

void remove_crossings(Model& m, const std::set<std::size_t>& xs) {
  for (auto& s : m.strands) {
    std::vector<char> drop(s.passages.size(), 0);
    bool any = false;
    for (std::size_t k = 0; k < s.passages.size(); ++k)
      if (xs.count(s.passages[k].crossing)) drop[k] = any = 1;
    if (any) remove_passages(s, drop);
  }
}

// Replaces the arc at pos by pieces separated by the new passages.
// pieces.size() == inserted.size() + 1, in arc order.
void split_arc(Model& m, const ArcPos& pos, const std::vector<Passage>& inserted, const std::vector<Label>& pieces) {
  Strand& s = m.strands[pos.strand];
  if (s.passages.empty()) {
    Label wrap = pieces.back();
    add_to(wrap, pieces.front());
    s.passages = inserted;
    s.labels.assign(pieces.begin() + 1, pieces.end());
    s.labels.back() = wrap;
    return;
  }
  s.labels[pos.index] = pieces.front();
  s.passages.insert(s.passages.begin() + static_cast<long>(pos.index) + 1, inserted.begin(), inserted.end());
  s.labels.insert(s.labels.begin() + static_cast<long>(pos.index) + 1, pieces.begin() + 1, pieces.end());
}

void check_arc(const SurfaceDiagram& d, std::size_t a) {
  if (a >= d.arc_count()) fail(K::SiteNotApplicable, "no arc " + std::to_string(a));
}

Dart dart_of(std::size_t arc, Side side) { return Dart{arc, side == Side::Left}; }

std::size_t piece_of(const SurfaceDiagram& d, std::size_t arc) {
  // Connected piece id of the projection: smallest crossing reachable, or
  // a unique id for a closed loop.
  const Arc& a = d.arc(arc);
  if (a.is_loop()) return d.crossing_count() + arc;
  std::set<std::size_t> seen{a.tail->crossing};
  std::vector<std::size_t> stack{a.tail->crossing};
  while (!stack.empty()) {
    std::size_t c = stack.back();
    stack.pop_back();
    for (const auto& ae : d.crossing(c).slots) {
      const Arc& x = d.arc(ae.arc);
      for (std::size_t y : {x.tail->crossing, x.head->crossing})
        if (seen.insert(y).second) stack.push_back(y);
    }
  }
  return *seen.begin();
}

}  // namespace

SurfaceDiagram apply_r1(const SurfaceDiagram& d, const R1Site& site, const KinkSpec& chirality) {
  Model m = to_model(d);
  if (const auto* add = std::get_if<R1Add>(&site)) {
    check_arc(d, add->arc);
    if (chirality.sign != 1 && chirality.sign != -1) fail(K::SiteNotApplicable, "kink sign must be +1 or -1");
    const std::size_t x = m.crossing_count++;
    const int over_in = chirality.sign > 0 ? 3 : 1;
    std::vector<Passage> ins;
    if (chirality.over_first)
      ins = {{x, over_in}, {x, 0}};
    else
      ins = {{x, 0}, {x, over_in}};
    Label zero = zero_label(d.genus());
    split_arc(m, m.where[add->arc], ins, {d.arc(add->arc).label, zero, zero});
    return from_model(m);
  }
  const std::size_t x = std::get<R1Remove>(site).crossing;
  if (x >= d.crossing_count()) fail(K::SiteNotApplicable, "no crossing " + std::to_string(x));
  FaceStructure fs = faces(d);
  bool essential_monogon = false;  // e.g. the far side of a kink on an essential loop
  for (const auto& ae : d.crossing(x).slots) {
    const Arc& a = d.arc(ae.arc);
    if (ae.end != End::Tail || a.head->crossing != x) continue;
    for (bool fwd : {true, false}) {
      const Face& f = fs.faces[fs.face_of({ae.arc, fwd})];
      if (f.size() != 1) continue;
      if (!is_zero(face_class(d, f))) {
        essential_monogon = true;
        continue;
      }
      remove_crossings(m, {x});
      return from_model(m);
    }
  }
  if (essential_monogon) fail(K::FaceNotADisc, "monogon at crossing " + std::to_string(x) + " has nonzero class");
  fail(K::SiteNotApplicable, "crossing " + std::to_string(x) + " does not bound a monogon");
}

SurfaceDiagram apply_r2(const SurfaceDiagram& d, const R2Site& site) {
  Model m = to_model(d);
  FaceStructure fs = faces(d);
  if (const auto* add = std::get_if<R2Add>(&site)) {
    check_arc(d, add->over_arc);
    check_arc(d, add->under_arc);
    if (add->over_arc == add->under_arc) fail(K::SiteNotApplicable, "R2 needs two distinct arcs");
    const Dart od = dart_of(add->over_arc, add->over_side);
    const Dart ud = dart_of(add->under_arc, add->under_side);
    const bool o_fwd = od.forward, u_fwd = ud.forward;
    Label L_o = d.arc(add->over_arc).label, L_u = d.arc(add->under_arc).label;
    Label zero = zero_label(d.genus());

    // The finger runs from the over dart across the shared face. Pieces are
    // labelled so that every new face keeps a zero class; W is the class of
    // the boundary stretch from the under dart back round to the over dart.
    Label W = zero;
    if (piece_of(d, add->over_arc) == piece_of(d, add->under_arc)) {
      std::size_t fid = fs.face_of(od);
      if (fid != fs.face_of(ud)) fail(K::SiteNotApplicable, "arcs do not border a common face on the given sides");
      const Face& f = fs.faces[fid];
      if (!is_zero(face_class(d, f))) fail(K::FaceNotADisc, "shared face has nonzero class");
      std::size_t start = std::find(f.begin(), f.end(), od) - f.begin();
      bool after_under = false;
      for (std::size_t t = 1; t < f.size(); ++t) {
        const Dart& x = f[(start + t) % f.size()];
        if (x == ud) {
          after_under = true;
          continue;
        }
        if (after_under) add_to(W, d.arc(x.arc).label, x.forward ? 1 : -1);
      }
    }

    const std::size_t xl = m.crossing_count, xr = m.crossing_count + 1;
    m.crossing_count += 2;
    const int slot_s = u_fwd ? 3 : 1, slot_n = u_fwd ? 1 : 3;
    Passage over_l{xl, o_fwd ? slot_s : slot_n}, over_r{xr, o_fwd ? slot_n : slot_s};
    Passage under_l{xl, 0}, under_r{xr, 0};

    std::vector<Label> over_pieces;
    if (o_fwd) {
      Label last = L_o;
      add_to(last, W);
      Label first = zero;
      add_to(first, W, -1);
      over_pieces = {first, zero, last};
    } else {
      Label first = L_o;
      add_to(first, W, -1);
      over_pieces = {first, zero, W};
    }
    std::vector<Label> under_pieces = u_fwd ? std::vector<Label>{L_u, zero, zero} : std::vector<Label>{zero, zero, L_u};
    std::vector<Passage> over_ins = o_fwd ? std::vector<Passage>{over_l, over_r} : std::vector<Passage>{over_r, over_l};
    std::vector<Passage> under_ins =
        u_fwd ? std::vector<Passage>{under_r, under_l} : std::vector<Passage>{under_l, under_r};

    ArcPos po = m.where[add->over_arc], pu = m.where[add->under_arc];
    // Insert at the later position first so the earlier index stays valid.
    if (po.strand == pu.strand && po.index < pu.index) {
      split_arc(m, pu, under_ins, under_pieces);
      split_arc(m, po, over_ins, over_pieces);
    } else {
      split_arc(m, po, over_ins, over_pieces);
      split_arc(m, pu, under_ins, under_pieces);
    }
    return from_model(m);
  }

  const auto& rem = std::get<R2Remove>(site);
  check_arc(d, rem.arc);
  const Face& f = fs.faces[fs.face_of(dart_of(rem.arc, rem.side))];
  if (f.size() != 2 || f[0].arc == f[1].arc) fail(K::SiteNotApplicable, "face is not a bigon");
  const Arc& a = d.arc(f[0].arc);
  const Arc& b = d.arc(f[1].arc);
  if (a.is_loop() || b.is_loop()) fail(K::SiteNotApplicable, "face is not a bigon");
  const std::size_t x1 = a.tail->crossing, x2 = a.head->crossing;
  if (x1 == x2) fail(K::SiteNotApplicable, "bigon needs two distinct crossings");
  auto over_at = [](const SlotRef& s) { return s.slot % 2 == 1; };
  bool a_over = over_at(*a.tail) && over_at(*a.head);
  bool a_under = !over_at(*a.tail) && !over_at(*a.head);
  bool b_over = over_at(*b.tail) && over_at(*b.head);
  bool b_under = !over_at(*b.tail) && !over_at(*b.head);
  if (!((a_over && b_under) || (a_under && b_over)))
    fail(K::SiteNotApplicable, "bigon strands do not pass over and under consistently");
  if (!is_zero(face_class(d, f))) fail(K::FaceNotADisc, "bigon has nonzero class");
  remove_crossings(m, {x1, x2});
  return from_model(m);
}

SurfaceDiagram apply_r3(const SurfaceDiagram& d, const R3Site& site) {
  check_arc(d, site.arc);
  FaceStructure fs = faces(d);
  const Face& f = fs.faces[fs.face_of(dart_of(site.arc, site.side))];
  if (f.size() != 3) fail(K::SiteNotApplicable, "face is not a triangle");
  std::set<std::size_t> arcs, xs;
  int pattern[3] = {0, 0, 0};  // number of over passages per triangle arc
  for (int k = 0; k < 3; ++k) {
    const Arc& a = d.arc(f[k].arc);
    if (a.is_loop()) fail(K::SiteNotApplicable, "face is not a triangle");
    arcs.insert(f[k].arc);
    xs.insert(a.tail->crossing);
    xs.insert(a.head->crossing);
    pattern[k] = (a.tail->slot % 2) + (a.head->slot % 2);
  }
  if (arcs.size() != 3 || xs.size() != 3) fail(K::SiteNotApplicable, "triangle must have three distinct arcs and crossings");
  std::multiset<int> pat(pattern, pattern + 3);
  if (pat != std::multiset<int>{0, 1, 2})
    fail(K::SiteNotApplicable, "triangle needs one over-over, one mixed and one under-under strand");
  if (!is_zero(face_class(d, f))) fail(K::FaceNotADisc, "triangle has nonzero class");

  Model m = to_model(d);
  // Coboundary on the triangle crossings zeroing the triangle arcs.
  std::map<std::size_t, Label> phi;
  phi[*xs.begin()] = zero_label(d.genus());
  for (int round = 0; round < 3; ++round)
    for (std::size_t a : arcs) {
      const Arc& arc = d.arc(a);
      std::size_t u = arc.tail->crossing, v = arc.head->crossing;
      if (phi.count(u) && !phi.count(v)) {
        Label x = phi[u];
        add_to(x, arc.label, -1);
        phi[v] = x;
      } else if (phi.count(v) && !phi.count(u)) {
        Label x = phi[v];
        add_to(x, arc.label);
        phi[u] = x;
      }
    }
  for (auto& s : m.strands) {
    const std::size_t len = s.passages.size();
    for (std::size_t k = 0; k < len; ++k) {
      auto from = phi.find(s.passages[k].crossing);
      auto to = phi.find(s.passages[(k + 1) % len].crossing);
      if (to != phi.end()) add_to(s.labels[k], to->second);
      if (from != phi.end()) add_to(s.labels[k], from->second, -1);
    }
  }
  for (std::size_t a : arcs) {
    const ArcPos& p = m.where[a];
    Strand& s = m.strands[p.strand];
    if (!is_zero(s.labels[p.index])) throw std::logic_error("triangle relabelling left a nonzero arc");
  }
  // Each strand passes the opposite crossing: swap its two triangle passages.
  for (std::size_t a : arcs) {
    const ArcPos& p = m.where[a];
    Strand& s = m.strands[p.strand];
    const std::size_t len = s.passages.size();
    std::swap(s.passages[p.index], s.passages[(p.index + 1) % len]);
  }
  return from_model(m);
}

std::vector<R1Remove> r1_removal_sites(const SurfaceDiagram& d) {
  std::vector<R1Remove> out;
  for (std::size_t x = 0; x < d.crossing_count(); ++x) {
    try {
      apply_r1(d, R1Remove{x});
      out.push_back({x});
    } catch (const DiagramError&) {
    }
  }
  return out;
}

std::vector<R2Remove> r2_removal_sites(const SurfaceDiagram& d) {
  std::vector<R2Remove> out;
  FaceStructure fs = faces(d);
  for (const Face& f : fs.faces) {
    if (f.size() != 2) continue;
    R2Remove site{f[0].arc, f[0].forward ? Side::Left : Side::Right};
    try {
      apply_r2(d, site);
      out.push_back(site);
    } catch (const DiagramError&) {
    }
  }
  return out;
}

std::vector<R2Add> r2_addition_sites(const SurfaceDiagram& d) {
  std::vector<R2Add> out;
  FaceStructure fs = faces(d);
  for (const Face& f : fs.faces) {
    if (!is_zero(face_class(d, f))) continue;
    for (const Dart& o : f)
      for (const Dart& u : f) {
        if (o.arc == u.arc) continue;
        out.push_back({o.arc, o.forward ? Side::Left : Side::Right, u.arc, u.forward ? Side::Left : Side::Right});
      }
  }
  return out;
}

std::vector<R3Site> r3_sites(const SurfaceDiagram& d) {
  std::vector<R3Site> out;
  FaceStructure fs = faces(d);
  for (const Face& f : fs.faces) {
    if (f.size() != 3) continue;
    R3Site site{f[0].arc, f[0].forward ? Side::Left : Side::Right};
    try {
      apply_r3(d, site);
      out.push_back(site);
    } catch (const DiagramError&) {
    }
  }
  return out;
}

}  // namespace dkh
