#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dkh {

class DiagramError : public std::runtime_error {
 public:
  enum class Kind {
    Syntax,
    UnknownKey,
    Schema,
    DanglingEndpoint,
    SlotReused,
    LabelLength,
    Orientation,
    SiteNotApplicable,
    FaceNotADisc,
  };
  DiagramError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(DiagramError::Kind k);

enum class End : std::uint8_t { Tail, Head };

struct SlotRef {
  std::size_t crossing = 0;
  int slot = 0;
  friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

struct ArcEnd {
  std::size_t arc = 0;
  End end = End::Tail;
  friend bool operator==(const ArcEnd&, const ArcEnd&) = default;
};

using Label = std::vector<std::int64_t>;

struct Arc {
  // Both empty for a closed loop, both set otherwise.
  std::optional<SlotRef> tail;
  std::optional<SlotRef> head;
  Label label;
  bool is_loop() const noexcept { return !tail.has_value(); }
};

// Slots are numbered counter-clockwise. The under-strand enters at 0 and
// leaves at 2; the over-strand uses 1 and 3.
struct Crossing {
  std::array<ArcEnd, 4> slots;

  int over_in_slot() const noexcept { return slots[3].end == End::Head ? 3 : 1; }
  // +1 when the over-strand enters at slot 3.
  int sign() const noexcept { return over_in_slot() == 3 ? 1 : -1; }
};

class SurfaceDiagram {
 public:
  // Validates; throws DiagramError.
  SurfaceDiagram(int genus, std::vector<Arc> arcs, std::vector<Crossing> crossings);

  int genus() const noexcept { return genus_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  std::size_t crossing_count() const noexcept { return crossings_.size(); }
  const Arc& arc(std::size_t a) const { return arcs_.at(a); }
  const Crossing& crossing(std::size_t c) const { return crossings_.at(c); }
  const ArcEnd& at(const SlotRef& s) const { return crossings_.at(s.crossing).slots.at(s.slot); }

  // Link components, each as the arcs met in traversal order.
  const std::vector<std::vector<std::size_t>>& components() const noexcept { return components_; }
  std::size_t negative_crossings() const noexcept;

 private:
  int genus_;
  std::vector<Arc> arcs_;
  std::vector<Crossing> crossings_;
  std::vector<std::vector<std::size_t>> components_;
};

// Z/2 cohomology class of the surface, one bit per label coordinate.
class CohomologyClass {
 public:
  static constexpr int kMaxGenus = 16;

  CohomologyClass(int genus, std::uint32_t bits);
  // "1,0,1,1" or "1011".
  static CohomologyClass parse(int genus, std::string_view text);
  static std::vector<CohomologyClass> all_nonzero(int genus);

  int genus() const noexcept { return genus_; }
  std::uint32_t bits() const noexcept { return bits_; }
  bool is_zero() const noexcept { return bits_ == 0; }
  int pairing(std::uint32_t z2_class) const noexcept;
  std::string to_string() const;

  friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;

 private:
  int genus_;
  std::uint32_t bits_;
};

// Mod-2 reduction of a label as a bitmask.
std::uint32_t z2_class(const Label& label);

// Planar-diagram style construction: each crossing lists the arcs at slots
// 0..3 and its sign. Arc directions follow from the slot roles. Arcs that no
// crossing mentions become closed loops.
struct PdCrossing {
  std::array<std::size_t, 4> arcs;
  int sign = 1;
};
SurfaceDiagram from_pd(int genus, const std::vector<PdCrossing>& crossings, std::vector<Label> labels);

SurfaceDiagram parse_diagram(std::string_view json_text);
std::string serialize_diagram(const SurfaceDiagram& d);

int writhe(const SurfaceDiagram& d);
std::vector<Label> component_classes(const SurfaceDiagram& d);
// Human-readable warnings, e.g. a null-homologous component at genus > 0.
std::vector<std::string> diagram_warnings(const SurfaceDiagram& d);

// Faces of the ribbon surface. A forward dart runs along its arc and sees
// the face on its left; a backward dart sees the face on the arc's right.
struct Dart {
  std::size_t arc = 0;
  bool forward = true;
  friend bool operator==(const Dart&, const Dart&) = default;
};
using Face = std::vector<Dart>;

struct FaceStructure {
  std::vector<Face> faces;
  std::vector<std::size_t> left_face;   // per arc
  std::vector<std::size_t> right_face;  // per arc
  std::size_t face_of(const Dart& d) const { return d.forward ? left_face.at(d.arc) : right_face.at(d.arc); }
};

FaceStructure faces(const SurfaceDiagram& d);
// Sum of signed arc labels around a face.
Label face_class(const SurfaceDiagram& d, const Face& f);

// Genus of the closed surface obtained by capping the ribbon surface of
// each connected piece of the projection, summed over pieces.
int carter_genus(const SurfaceDiagram& d);

// Same projection with labels replaced by intersection numbers against a
// tree-cotree basis of dual curves; genus becomes max(carter genus, min_genus).
SurfaceDiagram with_cellular_labels(const SurfaceDiagram& d, int min_genus = 0);

}  // namespace dkh
