#pragma once

// Van Kampen diagrams as half-edge maps on the sphere.
//
// A half-edge runs from `origin` to origin(twin) and reads `label`; its twin
// reads the inverse letter. `next` is the following half-edge of the same
// face cycle. Inner faces are 2-cells carrying a relator; exactly one face is
// the outer face. The boundary word is read on the inner side of the outer
// boundary starting at `base`: base, twin(o_{k-1}), ..., twin(o_1), where
// o_0 = twin(base), o_1 = next(o_0), ... is the outer face cycle.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "presentation.hpp"
#include "rational.hpp"
#include "tight_word.hpp"
#include "words.hpp"

namespace vkd {

struct HalfEdge {
  int id = 0;
  int origin = 0;
  Letter label;
  int twin = -1;
  int next = -1;

  bool operator==(HalfEdge const&) const = default;
};

inline constexpr char const* kOuterAnnotation = "outer";

struct Face {
  int id = 0;
  std::vector<int> cycle;
  // Relator text (r or r^{-1} of some relator), or "outer".
  std::string relator;

  bool is_outer() const { return relator == kOuterAnnotation; }
  bool operator==(Face const&) const = default;
};

struct Diagram {
  std::vector<HalfEdge> halfedges;
  std::vector<Face> faces;
  int outer = 0;
  int base = -1;  // -1 only for the empty diagram

  bool operator==(Diagram const&) const = default;
};

struct DiagramIssue {
  std::string code;
  std::string message;
  std::optional<int> halfedge;
  std::optional<int> face;
};

struct ValidationReport {
  std::vector<DiagramIssue> issues;

  bool ok() const { return issues.empty(); }
  bool has(std::string const& code) const {
    return std::any_of(issues.begin(), issues.end(),
                       [&](DiagramIssue const& i) { return i.code == code; });
  }
};

namespace detail {
  inline bool in_range(int id, std::size_t n) {
    return id >= 0 && static_cast<std::size_t>(id) < n;
  }

  // Face containing each half-edge; -1 when none. Requires valid cycle ids.
  inline std::vector<int> face_of(Diagram const& d) {
    std::vector<int> out(d.halfedges.size(), -1);
    for (auto const& f : d.faces) {
      for (int h : f.cycle) {
        if (in_range(h, out.size())) {
          out[static_cast<std::size_t>(h)] = f.id;
        }
      }
    }
    return out;
  }

  inline Word cycle_word(Diagram const& d, std::vector<int> const& cycle,
                         std::size_t start = 0) {
    Word w;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      w.push_back(d.halfedges[static_cast<std::size_t>(
                                  cycle[(start + i) % cycle.size()])]
                      .label);
    }
    return w;
  }

  inline Face const& face_at(Diagram const& d, int face) {
    if (!in_range(face, d.faces.size())) {
      throw DomainError("unknown face id " + std::to_string(face));
    }
    return d.faces[static_cast<std::size_t>(face)];
  }
}  // namespace detail

inline std::size_t area(Diagram const& d) {
  return static_cast<std::size_t>(std::count_if(
      d.faces.begin(), d.faces.end(),
      [](Face const& f) { return !f.is_outer(); }));
}

// Boundary half-edges on the inner side, in reading order from base.
inline std::vector<int> boundary_halfedges(Diagram const& d) {
  if (d.base < 0) {
    return {};
  }
  auto const& outer = detail::face_at(d, d.outer).cycle;
  int const o0 = d.halfedges[static_cast<std::size_t>(d.base)].twin;
  auto const it = std::find(outer.begin(), outer.end(), o0);
  if (it == outer.end()) {
    throw DomainError("base half-edge is not on the outer boundary");
  }
  std::size_t const k = outer.size();
  std::size_t const s = static_cast<std::size_t>(it - outer.begin());
  std::vector<int> out{d.base};
  for (std::size_t j = k - 1; j >= 1; --j) {
    int const o = outer[(s + j) % k];
    out.push_back(d.halfedges[static_cast<std::size_t>(o)].twin);
  }
  return out;
}

inline Word boundary_word(Diagram const& d) {
  Word w;
  for (int h : boundary_halfedges(d)) {
    w.push_back(d.halfedges[static_cast<std::size_t>(h)].label);
  }
  return w;
}

inline std::size_t boundary_length(Diagram const& d) {
  return detail::face_at(d, d.outer).cycle.size();
}

// Checks the map structure, the Euler characteristic, relator faces,
// spurs/filaments, reducedness, and that the boundary reads W.
inline ValidationReport validate(Diagram const& d, Presentation const& p,
                                 Word const& w) {
  ValidationReport r;
  auto issue = [&](std::string code, std::string msg,
                   std::optional<int> he = std::nullopt,
                   std::optional<int> face = std::nullopt) {
    r.issues.push_back({std::move(code), std::move(msg), he, face});
  };
  std::size_t const nh = d.halfedges.size();
  std::size_t const nf = d.faces.size();

  // Ids and references.
  for (std::size_t i = 0; i < nh; ++i) {
    auto const& h = d.halfedges[i];
    int const id = static_cast<int>(i);
    if (h.id != id) {
      issue("halfedge_id", "half-edge at index " + std::to_string(i)
                               + " has id " + std::to_string(h.id), id);
    }
    if (!detail::in_range(h.twin, nh)) {
      issue("twin_range", "twin out of range", id);
    }
    if (!detail::in_range(h.next, nh)) {
      issue("next_range", "next out of range", id);
    }
    if (h.label.generator() < 1 || h.label.generator() > p.generators()) {
      issue("label_range", "label outside the generator range", id);
    }
  }
  for (std::size_t i = 0; i < nf; ++i) {
    auto const& f = d.faces[i];
    if (f.id != static_cast<int>(i)) {
      issue("face_id", "face at index " + std::to_string(i) + " has id "
                           + std::to_string(f.id), std::nullopt,
            static_cast<int>(i));
    }
    for (int h : f.cycle) {
      if (!detail::in_range(h, nh)) {
        issue("cycle_range", "face cycle refers to an unknown half-edge",
              std::nullopt, static_cast<int>(i));
      }
    }
  }
  if (!detail::in_range(d.outer, nf)) {
    issue("outer_range", "outer face id out of range");
  }
  if (nh == 0 ? d.base != -1 : !detail::in_range(d.base, nh)) {
    issue("base_range", "base half-edge id out of range");
  }
  if (!r.ok()) {
    return r;  // later checks dereference ids
  }

  // Twins.
  for (std::size_t i = 0; i < nh; ++i) {
    auto const& h = d.halfedges[i];
    int const id = static_cast<int>(i);
    if (h.twin == id) {
      issue("twin_fixed_point", "half-edge is its own twin", id);
      continue;
    }
    auto const& t = d.halfedges[static_cast<std::size_t>(h.twin)];
    if (t.twin != id) {
      issue("twin_involution", "twin(twin(h)) != h", id);
    }
    if (t.label != h.label.inverse()) {
      issue("twin_label", "twin labels not inverse", id);
    }
  }

  // next is a permutation compatible with origins.
  std::vector<int> prev(nh, -1);
  for (std::size_t i = 0; i < nh; ++i) {
    int const nx = d.halfedges[i].next;
    if (prev[static_cast<std::size_t>(nx)] != -1) {
      issue("next_permutation", "two half-edges share the same next",
            nx);
    }
    prev[static_cast<std::size_t>(nx)] = static_cast<int>(i);
    auto const& h = d.halfedges[i];
    auto const& t = d.halfedges[static_cast<std::size_t>(h.twin)];
    if (d.halfedges[static_cast<std::size_t>(nx)].origin != t.origin) {
      issue("next_origin", "next(h) does not start where h ends",
            static_cast<int>(i));
    }
  }

  // Faces partition the half-edges along next-cycles.
  std::vector<int> owner(nh, -1);
  int outer_count = 0;
  for (auto const& f : d.faces) {
    if (f.is_outer()) {
      ++outer_count;
    }
    if (f.cycle.empty() && nh > 0) {
      issue("empty_face", "face with an empty cycle", std::nullopt, f.id);
    }
    for (std::size_t k = 0; k < f.cycle.size(); ++k) {
      int const h = f.cycle[k];
      if (owner[static_cast<std::size_t>(h)] != -1) {
        issue("face_partition", "half-edge in more than one face cycle", h,
              f.id);
      }
      owner[static_cast<std::size_t>(h)] = f.id;
      int const expected = f.cycle[(k + 1) % f.cycle.size()];
      if (d.halfedges[static_cast<std::size_t>(h)].next != expected) {
        issue("face_cycle", "face cycle does not follow next", h, f.id);
      }
    }
  }
  for (std::size_t i = 0; i < nh; ++i) {
    if (owner[i] == -1) {
      issue("face_partition", "half-edge in no face cycle",
            static_cast<int>(i));
    }
  }
  if (outer_count != 1) {
    issue("outer_count", "expected exactly one outer face, found "
                             + std::to_string(outer_count));
  }
  if (!d.faces[static_cast<std::size_t>(d.outer)].is_outer()) {
    issue("outer_annotation", "the outer face id does not name the face "
                              "annotated 'outer'", std::nullopt, d.outer);
  }
  if (!r.ok()) {
    return r;
  }

  // Vertices are the orbits of h -> next(twin(h)).
  std::size_t orbits = 0;
  std::vector<bool> seen(nh, false);
  std::set<int> origin_ids;
  for (std::size_t i = 0; i < nh; ++i) {
    origin_ids.insert(d.halfedges[i].origin);
    if (seen[i]) {
      continue;
    }
    ++orbits;
    std::size_t h = i;
    std::size_t degree = 0;
    while (!seen[h]) {
      seen[h] = true;
      ++degree;
      h = static_cast<std::size_t>(
          d.halfedges[static_cast<std::size_t>(d.halfedges[h].twin)].next);
    }
    if (degree == 1) {
      issue("spur", "degree-1 vertex " + std::to_string(d.halfedges[i].origin),
            static_cast<int>(i));
    }
  }
  std::size_t const vertices = nh == 0 ? 1 : orbits;
  if (nh > 0 && origin_ids.size() != orbits) {
    issue("vertex_ids", "origin ids do not match the vertex rotation: "
                            + std::to_string(origin_ids.size()) + " ids for "
                            + std::to_string(orbits) + " vertices");
  }
  long const euler = static_cast<long>(vertices)
                     - static_cast<long>(nh / 2) + static_cast<long>(nf);
  if (euler != 2) {
    issue("euler", "V - E + F = " + std::to_string(euler) + ", expected 2");
  }

  // Filaments: edges with the outer face on both sides.
  for (std::size_t i = 0; i < nh; ++i) {
    int const t = d.halfedges[i].twin;
    if (static_cast<int>(i) < t && owner[i] == d.outer
        && owner[static_cast<std::size_t>(t)] == d.outer) {
      issue("filament", "edge with the outer face on both sides",
            static_cast<int>(i));
    }
  }

  // Inner faces read symmetrized relators.
  for (auto const& f : d.faces) {
    if (f.is_outer()) {
      continue;
    }
    Word annotated;
    try {
      annotated = parse_word(f.relator, p.generators());
    } catch (ParseError const&) {
      issue("relator_annotation", "unparseable relator annotation '"
                                      + f.relator + "'", std::nullopt, f.id);
      continue;
    }
    bool known = false;
    for (auto const& rel : p.relators()) {
      known = known || annotated == rel || annotated == invert(rel);
    }
    if (!known) {
      issue("relator_annotation", "annotation '" + f.relator
                                      + "' is not a relator or its inverse",
            std::nullopt, f.id);
      continue;
    }
    if (!is_rotation_of(detail::cycle_word(d, f.cycle), annotated)) {
      issue("face_label", "face boundary does not read its relator",
            std::nullopt, f.id);
    }
  }

  // Cancellable pairs: faces D1 != D2 across an edge whose readings from
  // that edge are mirror images.
  for (std::size_t i = 0; i < nh; ++i) {
    int const t = d.halfedges[i].twin;
    int const f1 = owner[i];
    int const f2 = owner[static_cast<std::size_t>(t)];
    if (static_cast<int>(i) > t || f1 == f2 || f1 == d.outer
        || f2 == d.outer) {
      continue;
    }
    auto const& c1 = d.faces[static_cast<std::size_t>(f1)].cycle;
    auto const& c2 = d.faces[static_cast<std::size_t>(f2)].cycle;
    if (c1.size() != c2.size()) {
      continue;
    }
    auto pos = [](std::vector<int> const& c, int h) {
      return static_cast<std::size_t>(std::find(c.begin(), c.end(), h)
                                      - c.begin());
    };
    Word const w1 = detail::cycle_word(d, c1, pos(c1, static_cast<int>(i)));
    Word const w2 = detail::cycle_word(d, c2, pos(c2, t));
    if (w2 == rotate(invert(w1), w1.size() - 1)) {
      issue("non_reduced", "faces " + std::to_string(f1) + " and "
                               + std::to_string(f2)
                               + " form a cancellable pair",
            static_cast<int>(i), f1);
    }
  }

  // Boundary word.
  if (nh > 0) {
    int const o0 = d.halfedges[static_cast<std::size_t>(d.base)].twin;
    if (owner[static_cast<std::size_t>(o0)] != d.outer) {
      issue("base_side", "twin(base) is not on the outer face", d.base);
      return r;
    }
  }
  Word const read = boundary_word(d);
  if (read != w) {
    issue("boundary_word", "boundary reads '" + format_word(read)
                               + "', expected '" + format_word(w) + "'");
  }
  return r;
}

// Number of outer-boundary edges whose inner side lies on `face`.
inline std::size_t outer_contribution(Diagram const& d, int face) {
  Face const& f = detail::face_at(d, face);
  if (f.is_outer()) {
    throw DomainError("face " + std::to_string(face) + " is the outer face");
  }
  auto const owner = detail::face_of(d);
  std::size_t count = 0;
  for (int h : f.cycle) {
    int const t = d.halfedges[static_cast<std::size_t>(h)].twin;
    if (owner[static_cast<std::size_t>(t)] == d.outer) {
      ++count;
    }
  }
  return count;
}

// Least face id with outer_contribution > alpha.
inline std::optional<int> find_large_face(Diagram const& d,
                                          Rational const& alpha) {
  for (auto const& f : d.faces) {
    if (f.is_outer()) {
      continue;
    }
    if (Rational(static_cast<unsigned long long>(outer_contribution(d, f.id)))
        > alpha) {
      return f.id;
    }
  }
  return std::nullopt;
}

// |boundary| > beta * L * Area.
inline bool check_isoperimetric(Diagram const& d, Rational const& beta,
                                std::size_t L) {
  Rational const lhs(static_cast<unsigned long long>(boundary_length(d)));
  return lhs > beta * static_cast<unsigned long long>(L)
                   * static_cast<unsigned long long>(area(d));
}

struct BlockDecomposition {
  std::vector<BlockTag> tags;
  std::size_t width = 0;
  std::size_t g_length = 0;
  std::size_t h_sum = 0;

  std::size_t g_count() const {
    return static_cast<std::size_t>(
        std::count_if(tags.begin(), tags.end(), [](BlockTag const& t) {
          return t.kind == BlockTag::Kind::g;
        }));
  }
  std::size_t h_count() const { return tags.size() - g_count(); }
};

inline BlockDecomposition block_decomposition(TightWord const& tw) {
  if (auto check = is_tight(tw); !check) {
    throw PreconditionError("block_decomposition: not tight: "
                            + check.violation->message);
  }
  return {block_tags(tw.g, tw.hs), tw.width(), tw.g_length(), tw.h_sum()};
}

struct BlockCount {
  std::size_t s_g = 0;
  std::size_t s_h = 0;
  bool operator==(BlockCount const&) const = default;
};

// Splits the outer contribution of `face` into edges lying in g-blocks and
// in h-blocks of the boundary word.
inline BlockCount count_sg_sh(Diagram const& d, int face,
                              BlockDecomposition const& blocks) {
  Face const& f = detail::face_at(d, face);
  if (f.is_outer()) {
    throw DomainError("face " + std::to_string(face) + " is the outer face");
  }
  auto const boundary = boundary_halfedges(d);
  if (boundary.size() != blocks.tags.size()) {
    throw DomainError("boundary length " + std::to_string(boundary.size())
                      + " does not match the block tagging length "
                      + std::to_string(blocks.tags.size()));
  }
  auto const owner = detail::face_of(d);
  BlockCount out;
  for (std::size_t pos = 0; pos < boundary.size(); ++pos) {
    if (owner[static_cast<std::size_t>(boundary[pos])] != face) {
      continue;
    }
    if (blocks.tags[pos].kind == BlockTag::Kind::g) {
      ++out.s_g;
    } else {
      ++out.s_h;
    }
  }
  return out;
}

}  // namespace vkd
