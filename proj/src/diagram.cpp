#include "dkh/diagram.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dkh {

using nlohmann::json;

const char* to_string(DiagramError::Kind k) {
  switch (k) {
    case DiagramError::Kind::Syntax: return "syntax";
    case DiagramError::Kind::UnknownKey: return "unknown-key";
    case DiagramError::Kind::Schema: return "schema";
    case DiagramError::Kind::DanglingEndpoint: return "dangling-endpoint";
    case DiagramError::Kind::SlotReused: return "slot-reused";
    case DiagramError::Kind::LabelLength: return "label-length";
    case DiagramError::Kind::Orientation: return "orientation";
    case DiagramError::Kind::SiteNotApplicable: return "site-not-applicable";
    case DiagramError::Kind::FaceNotADisc: return "face-not-a-disc";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(DiagramError::Kind k, const std::string& msg) { throw DiagramError(k, msg); }

std::string slot_name(const SlotRef& s) {
  return "crossing " + std::to_string(s.crossing) + " slot " + std::to_string(s.slot);
}

}  // namespace

SurfaceDiagram::SurfaceDiagram(int genus, std::vector<Arc> arcs, std::vector<Crossing> crossings)
    : genus_(genus), arcs_(std::move(arcs)), crossings_(std::move(crossings)) {
  using K = DiagramError::Kind;
  if (genus_ < 0 || genus_ > CohomologyClass::kMaxGenus)
    fail(K::Schema, "genus must lie in [0, " + std::to_string(CohomologyClass::kMaxGenus) + "]");
  const std::size_t len = 2 * static_cast<std::size_t>(genus_);
  const std::size_t n = crossings_.size();

  std::map<std::pair<std::size_t, int>, ArcEnd> claimed;
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    const Arc& arc = arcs_[a];
    if (arc.label.size() != len)
      fail(K::LabelLength, "arc " + std::to_string(a) + " has label of length " +
                               std::to_string(arc.label.size()) + ", expected " + std::to_string(len));
    if (arc.tail.has_value() != arc.head.has_value())
      fail(K::DanglingEndpoint, "arc " + std::to_string(a) + " has exactly one endpoint");
    if (arc.is_loop()) continue;
    for (End e : {End::Tail, End::Head}) {
      const SlotRef& s = e == End::Tail ? *arc.tail : *arc.head;
      if (s.crossing >= n || s.slot < 0 || s.slot > 3)
        fail(K::DanglingEndpoint, "arc " + std::to_string(a) + " points at missing " + slot_name(s));
      auto [it, fresh] = claimed.emplace(std::pair{s.crossing, s.slot}, ArcEnd{a, e});
      if (!fresh) fail(K::SlotReused, slot_name(s) + " is used by two arc endpoints");
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (int s = 0; s < 4; ++s) {
      const ArcEnd& ae = crossings_[c].slots[s];
      if (ae.arc >= arcs_.size())
        fail(K::DanglingEndpoint, slot_name({c, s}) + " names missing arc " + std::to_string(ae.arc));
      auto it = claimed.find({c, s});
      if (it == claimed.end())
        fail(K::DanglingEndpoint, slot_name({c, s}) + " is not an endpoint of any arc");
      if (!(it->second == ae))
        fail(K::DanglingEndpoint, slot_name({c, s}) + " disagrees with the arc that ends there");
    }
    const auto& sl = crossings_[c].slots;
    bool ok = sl[0].end == End::Head && sl[2].end == End::Tail && sl[1].end != sl[3].end;
    if (!ok)
      fail(K::Orientation, "crossing " + std::to_string(c) +
                               ": under-strand must enter at slot 0 and leave at slot 2, "
                               "over-strand must pass between slots 1 and 3");
  }

  std::vector<char> seen(arcs_.size(), 0);
  for (std::size_t a0 = 0; a0 < arcs_.size(); ++a0) {
    if (seen[a0]) continue;
    std::vector<std::size_t> comp;
    std::size_t a = a0;
    do {
      seen[a] = 1;
      comp.push_back(a);
      if (arcs_[a].is_loop()) break;
      const SlotRef& h = *arcs_[a].head;
      a = crossings_[h.crossing].slots[(h.slot + 2) % 4].arc;
    } while (a != a0);
    components_.push_back(std::move(comp));
  }
}

std::size_t SurfaceDiagram::negative_crossings() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(crossings_.begin(), crossings_.end(), [](const Crossing& c) { return c.sign() < 0; }));
}

CohomologyClass::CohomologyClass(int genus, std::uint32_t bits) : genus_(genus), bits_(bits) {
  if (genus < 0 || genus > kMaxGenus) throw std::invalid_argument("genus out of range");
  if (genus < kMaxGenus && (bits >> (2 * genus)) != 0)
    throw std::invalid_argument("cohomology class has bits beyond 2g");
}

CohomologyClass CohomologyClass::parse(int genus, std::string_view text) {
  std::vector<int> bits;
  for (char ch : text) {
    if (ch == '0' || ch == '1')
      bits.push_back(ch - '0');
    else if (ch != ',' && ch != ' ')
      throw std::invalid_argument("cohomology class must be a list of 0/1 entries");
  }
  if (bits.size() != 2 * static_cast<std::size_t>(genus))
    throw std::invalid_argument("cohomology class needs " + std::to_string(2 * genus) + " entries, got " +
                                std::to_string(bits.size()));
  std::uint32_t mask = 0;
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (bits[k]) mask |= 1u << k;
  return CohomologyClass(genus, mask);
}

std::vector<CohomologyClass> CohomologyClass::all_nonzero(int genus) {
  std::vector<CohomologyClass> out;
  const std::uint64_t count = std::uint64_t{1} << (2 * genus);
  // Ordered lexicographically on the written form "b0,b1,...".
  std::vector<std::uint32_t> masks;
  for (std::uint64_t m = 1; m < count; ++m) masks.push_back(static_cast<std::uint32_t>(m));
  auto rev = [genus](std::uint32_t m) {
    std::uint32_t r = 0;
    for (int k = 0; k < 2 * genus; ++k)
      if (m >> k & 1u) r |= 1u << (2 * genus - 1 - k);
    return r;
  };
  std::sort(masks.begin(), masks.end(), [&](auto a, auto b) { return rev(a) < rev(b); });
  for (auto m : masks) out.emplace_back(genus, m);
  return out;
}

int CohomologyClass::pairing(std::uint32_t z2) const noexcept { return std::popcount(bits_ & z2) & 1; }

std::string CohomologyClass::to_string() const {
  std::string s;
  for (int k = 0; k < 2 * genus_; ++k) {
    if (k) s += ',';
    s += (bits_ >> k & 1u) ? '1' : '0';
  }
  return s;
}

std::uint32_t z2_class(const Label& label) {
  std::uint32_t m = 0;
  for (std::size_t k = 0; k < label.size(); ++k)
    if (label[k] % 2 != 0) m |= 1u << k;
  return m;
}

// ---- JSON ----

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) fail(DiagramError::Kind::Schema, where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!ok) fail(DiagramError::Kind::UnknownKey, where + ": unknown key \"" + key + "\"");
  }
  for (const char* a : allowed)
    if (!obj.contains(a)) fail(DiagramError::Kind::Schema, where + ": missing key \"" + a + "\"");
}

std::int64_t get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(DiagramError::Kind::Schema, where + " must be an integer");
  return j.get<std::int64_t>();
}

std::optional<SlotRef> get_endpoint(const json& j, const std::string& where) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_array() || j.size() != 2)
    fail(DiagramError::Kind::Schema, where + " must be null or [crossing, slot]");
  std::int64_t c = get_int(j[0], where + "[0]");
  std::int64_t s = get_int(j[1], where + "[1]");
  if (c < 0) fail(DiagramError::Kind::DanglingEndpoint, where + " names a negative crossing");
  return SlotRef{static_cast<std::size_t>(c), static_cast<int>(s)};
}

}  // namespace

SurfaceDiagram parse_diagram(std::string_view text) {
  using K = DiagramError::Kind;
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(K::Syntax, "JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  check_keys(root, {"genus", "arcs", "crossings"}, "diagram");
  std::int64_t genus = get_int(root["genus"], "genus");
  if (genus < 0 || genus > CohomologyClass::kMaxGenus) fail(K::Schema, "genus out of range");
  if (!root["arcs"].is_array()) fail(K::Schema, "arcs must be an array");
  if (!root["crossings"].is_array()) fail(K::Schema, "crossings must be an array");

  std::vector<Arc> arcs;
  for (std::size_t a = 0; a < root["arcs"].size(); ++a) {
    const json& ja = root["arcs"][a];
    std::string where = "arcs[" + std::to_string(a) + "]";
    check_keys(ja, {"id", "tail", "head", "label"}, where);
    if (get_int(ja["id"], where + ".id") != static_cast<std::int64_t>(a))
      fail(K::Schema, where + ".id must equal its position " + std::to_string(a));
    Arc arc;
    arc.tail = get_endpoint(ja["tail"], where + ".tail");
    arc.head = get_endpoint(ja["head"], where + ".head");
    if (!ja["label"].is_array()) fail(K::Schema, where + ".label must be an array");
    for (const auto& v : ja["label"]) arc.label.push_back(get_int(v, where + ".label entry"));
    arcs.push_back(std::move(arc));
  }

  std::vector<Crossing> crossings;
  for (std::size_t c = 0; c < root["crossings"].size(); ++c) {
    const json& jc = root["crossings"][c];
    std::string where = "crossings[" + std::to_string(c) + "]";
    check_keys(jc, {"id", "slots"}, where);
    if (get_int(jc["id"], where + ".id") != static_cast<std::int64_t>(c))
      fail(K::Schema, where + ".id must equal its position " + std::to_string(c));
    if (!jc["slots"].is_array() || jc["slots"].size() != 4)
      fail(K::Schema, where + ".slots must hold four entries");
    Crossing x;
    for (int s = 0; s < 4; ++s) {
      const json& js = jc["slots"][s];
      std::string sw = where + ".slots[" + std::to_string(s) + "]";
      check_keys(js, {"arc", "end"}, sw);
      std::int64_t a = get_int(js["arc"], sw + ".arc");
      if (a < 0) fail(K::DanglingEndpoint, sw + " names a negative arc");
      if (!js["end"].is_string()) fail(K::Schema, sw + ".end must be \"tail\" or \"head\"");
      std::string e = js["end"].get<std::string>();
      if (e != "tail" && e != "head") fail(K::Schema, sw + ".end must be \"tail\" or \"head\"");
      x.slots[s] = ArcEnd{static_cast<std::size_t>(a), e == "tail" ? End::Tail : End::Head};
    }
    crossings.push_back(x);
  }
  return SurfaceDiagram(static_cast<int>(genus), std::move(arcs), std::move(crossings));
}

std::string serialize_diagram(const SurfaceDiagram& d) {
  auto endpoint = [](const std::optional<SlotRef>& s) -> json {
    if (!s) return nullptr;
    return json::array({s->crossing, s->slot});
  };
  std::ostringstream os;
  os << "{\n  \"genus\": " << d.genus() << ",\n  \"arcs\": [";
  for (std::size_t a = 0; a < d.arc_count(); ++a) {
    const Arc& arc = d.arc(a);
    json ja = {{"id", a}, {"tail", endpoint(arc.tail)}, {"head", endpoint(arc.head)}, {"label", arc.label}};
    os << (a ? ",\n    " : "\n    ") << ja.dump();
  }
  os << (d.arc_count() ? "\n  ],\n" : "],\n");
  os << "  \"crossings\": [";
  for (std::size_t c = 0; c < d.crossing_count(); ++c) {
    json slots = json::array();
    for (const auto& ae : d.crossing(c).slots)
      slots.push_back({{"arc", ae.arc}, {"end", ae.end == End::Tail ? "tail" : "head"}});
    json jc = {{"id", c}, {"slots", slots}};
    os << (c ? ",\n    " : "\n    ") << jc.dump();
  }
  os << (d.crossing_count() ? "\n  ]\n}\n" : "]\n}\n");
  return os.str();
}

SurfaceDiagram from_pd(int genus, const std::vector<PdCrossing>& xs, std::vector<Label> labels) {
  std::vector<Arc> arcs(labels.size());
  for (std::size_t a = 0; a < labels.size(); ++a) arcs[a].label = std::move(labels[a]);
  std::vector<Crossing> crossings(xs.size());
  for (std::size_t c = 0; c < xs.size(); ++c) {
    if (xs[c].sign != 1 && xs[c].sign != -1) fail(DiagramError::Kind::Schema, "crossing sign must be +1 or -1");
    const int over_in = xs[c].sign > 0 ? 3 : 1;
    for (int s = 0; s < 4; ++s) {
      const std::size_t a = xs[c].arcs[s];
      if (a >= arcs.size()) fail(DiagramError::Kind::DanglingEndpoint, "crossing names missing arc " + std::to_string(a));
      const bool head = s == 0 || s == over_in;
      auto& end = head ? arcs[a].head : arcs[a].tail;
      if (end) fail(DiagramError::Kind::SlotReused, "arc " + std::to_string(a) + " has two " + (head ? "heads" : "tails"));
      end = SlotRef{c, s};
      crossings[c].slots[s] = ArcEnd{a, head ? End::Head : End::Tail};
    }
  }
  return SurfaceDiagram(genus, std::move(arcs), std::move(crossings));
}

int writhe(const SurfaceDiagram& d) {
  int w = 0;
  for (const auto& c : d.crossings()) w += c.sign();
  return w;
}

std::vector<Label> component_classes(const SurfaceDiagram& d) {
  std::vector<Label> out;
  for (const auto& comp : d.components()) {
    Label sum(2 * static_cast<std::size_t>(d.genus()), 0);
    for (std::size_t a : comp)
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += d.arc(a).label[k];
    out.push_back(std::move(sum));
  }
  return out;
}

std::vector<std::string> diagram_warnings(const SurfaceDiagram& d) {
  std::vector<std::string> w;
  if (d.genus() == 0) return w;
  auto classes = component_classes(d);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    bool zero = std::all_of(classes[k].begin(), classes[k].end(), [](auto v) { return v == 0; });
    if (zero) w.push_back("component " + std::to_string(k) + " is null-homologous");
  }
  return w;
}

// ---- faces ----

FaceStructure faces(const SurfaceDiagram& d) {
  FaceStructure fs;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  fs.left_face.assign(d.arc_count(), kNone);
  fs.right_face.assign(d.arc_count(), kNone);
  auto slot_of = [&](const Dart& dt) -> std::optional<SlotRef> {
    const Arc& a = d.arc(dt.arc);
    return dt.forward ? a.head : a.tail;
  };
  for (std::size_t a0 = 0; a0 < d.arc_count(); ++a0) {
    for (bool fwd : {true, false}) {
      auto& slot0 = fwd ? fs.left_face[a0] : fs.right_face[a0];
      if (slot0 != kNone) continue;
      const std::size_t id = fs.faces.size();
      Face face;
      Dart dt{a0, fwd};
      do {
        (dt.forward ? fs.left_face : fs.right_face)[dt.arc] = id;
        face.push_back(dt);
        auto arrive = slot_of(dt);
        if (!arrive) break;  // closed loop: the face is one dart
        const ArcEnd& next = d.crossing(arrive->crossing).slots[(arrive->slot + 3) % 4];
        dt = Dart{next.arc, next.end == End::Tail};
      } while (!(dt == Dart{a0, fwd}));
      fs.faces.push_back(std::move(face));
    }
  }
  return fs;
}

Label face_class(const SurfaceDiagram& d, const Face& f) {
  Label sum(2 * static_cast<std::size_t>(d.genus()), 0);
  for (const Dart& dt : f)
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += dt.forward ? d.arc(dt.arc).label[k] : -d.arc(dt.arc).label[k];
  return sum;
}

namespace {

// Connected pieces of the projection: crossing ids and arc ids per piece.
struct Piece {
  std::vector<std::size_t> crossings;
  std::vector<std::size_t> arcs;
};

std::vector<Piece> pieces(const SurfaceDiagram& d) {
  std::vector<std::size_t> parent(d.crossing_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Arc& a : d.arcs())
    if (!a.is_loop()) parent[find(a.tail->crossing)] = find(a.head->crossing);
  std::map<std::size_t, Piece> by_root;
  for (std::size_t c = 0; c < d.crossing_count(); ++c) by_root[find(c)].crossings.push_back(c);
  std::vector<Piece> out;
  for (std::size_t a = 0; a < d.arc_count(); ++a)
    if (!d.arc(a).is_loop()) by_root[find(d.arc(a).tail->crossing)].arcs.push_back(a);
  for (auto& [_, p] : by_root) out.push_back(std::move(p));
  for (std::size_t a = 0; a < d.arc_count(); ++a)
    if (d.arc(a).is_loop()) out.push_back(Piece{{}, {a}});
  return out;
}

}  // namespace

int carter_genus(const SurfaceDiagram& d) {
  FaceStructure fs = faces(d);
  int total = 0;
  for (const Piece& p : pieces(d)) {
    if (p.crossings.empty()) continue;
    std::vector<std::size_t> fids;
    for (std::size_t a : p.arcs) {
      fids.push_back(fs.left_face[a]);
      fids.push_back(fs.right_face[a]);
    }
    std::sort(fids.begin(), fids.end());
    fids.erase(std::unique(fids.begin(), fids.end()), fids.end());
    long chi = static_cast<long>(p.crossings.size()) - static_cast<long>(p.arcs.size()) + static_cast<long>(fids.size());
    total += static_cast<int>((2 - chi) / 2);
  }
  return total;
}

SurfaceDiagram with_cellular_labels(const SurfaceDiagram& d, int min_genus) {
  FaceStructure fs = faces(d);
  std::vector<std::vector<std::int64_t>> columns;  // one per basis curve, indexed by arc
  for (const Piece& p : pieces(d)) {
    if (p.crossings.empty()) continue;
    // Spanning tree of the projection graph.
    std::map<std::size_t, std::vector<std::size_t>> incident;
    for (std::size_t a : p.arcs) {
      incident[d.arc(a).tail->crossing].push_back(a);
      incident[d.arc(a).head->crossing].push_back(a);
    }
    std::set<std::size_t> tree;
    {
      std::set<std::size_t> reached{p.crossings.front()};
      std::deque<std::size_t> q{p.crossings.front()};
      while (!q.empty()) {
        std::size_t c = q.front();
        q.pop_front();
        for (std::size_t a : incident[c]) {
          std::size_t other = d.arc(a).tail->crossing == c ? d.arc(a).head->crossing : d.arc(a).tail->crossing;
          if (reached.insert(other).second) {
            tree.insert(a);
            q.push_back(other);
          }
        }
      }
    }
    // Spanning tree of the dual graph avoiding primal tree edges.
    std::map<std::size_t, std::vector<std::size_t>> dual_incident;
    for (std::size_t a : p.arcs) {
      if (tree.count(a)) continue;
      dual_incident[fs.left_face[a]].push_back(a);
      dual_incident[fs.right_face[a]].push_back(a);
    }
    std::size_t root = fs.left_face[p.arcs.front()];
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> up;  // face -> (parent face, arc)
    std::map<std::size_t, int> depth{{root, 0}};
    std::set<std::size_t> cotree;
    {
      std::deque<std::size_t> q{root};
      while (!q.empty()) {
        std::size_t f = q.front();
        q.pop_front();
        for (std::size_t a : dual_incident[f]) {
          std::size_t other = fs.left_face[a] == f ? fs.right_face[a] : fs.left_face[a];
          if (!depth.count(other)) {
            depth[other] = depth[f] + 1;
            up[other] = {f, a};
            cotree.insert(a);
            q.push_back(other);
          }
        }
      }
    }
    // Crossing arc a from face x to face y contributes +1 when x is its left face.
    auto step = [&](std::vector<std::int64_t>& col, std::size_t a, std::size_t from) {
      col[a] += fs.left_face[a] == from ? 1 : -1;
    };
    for (std::size_t e : p.arcs) {
      if (tree.count(e) || cotree.count(e)) continue;
      std::vector<std::int64_t> col(d.arc_count(), 0);
      // Dual cycle: left(e) -> right(e) across e, then back through the cotree.
      std::size_t l = fs.left_face[e], r = fs.right_face[e];
      col[e] += 1;
      std::size_t x = r, y = l;
      std::vector<std::pair<std::size_t, std::size_t>> from_r, from_l;
      while (x != y) {
        if (depth[x] >= depth[y]) {
          from_r.push_back({up[x].second, x});
          x = up[x].first;
        } else {
          from_l.push_back({up[y].second, up[y].first});
          y = up[y].first;
        }
      }
      for (auto [a, f] : from_r) step(col, a, f);  // walking up from r
      for (auto [a, f] : from_l) step(col, a, f);  // walking down towards l
      columns.push_back(std::move(col));
    }
  }
  int g = static_cast<int>(columns.size() / 2);
  int genus = std::max(g, min_genus);
  std::vector<Arc> arcs = d.arcs();
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    arcs[a].label.assign(2 * static_cast<std::size_t>(genus), 0);
    for (std::size_t k = 0; k < columns.size(); ++k) arcs[a].label[k] = columns[k][a];
  }
  return SurfaceDiagram(genus, std::move(arcs), d.crossings());
}

}  // namespace dkh
