#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <vkd/diagram.hpp>
#include <vkd/diagram_io.hpp>
#include <vkd/random.hpp>

namespace fixtures {

inline std::string data_path(std::string const& name) {
  return std::string(VKD_DATA_DIR) + "/" + name;
}

inline std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline vkd::Diagram aBab_diagram() {
  return vkd::load_diagram(read_file(data_path("aBab_single_face.json")));
}

inline vkd::Presentation aBab_presentation() {
  return vkd::Presentation(2, {vkd::parse_word("aBab", 2)});
}

// Picks a value from `pool` different from `current`.
template <typename T>
T pick_other(vkd::SplitMix64& rng, std::vector<T> const& pool,
             T const& current) {
  while (true) {
    T const& v = pool[rng.below(pool.size())];
    if (!(v == current)) {
      return v;
    }
  }
}

// Changes exactly one field of the diagram to a different value.
inline vkd::Diagram mutate(vkd::Diagram d, vkd::SplitMix64& rng) {
  int const nh = static_cast<int>(d.halfedges.size());
  std::vector<int> ints;
  for (int v = -1; v <= nh + 1; ++v) {
    ints.push_back(v);
  }
  std::vector<vkd::Letter> letters;
  for (char c : std::string("aAbBcC")) {
    letters.push_back(vkd::parse_word(std::string(1, c), 3)[0]);
  }
  std::vector<std::string> relators{"aBab", "BAbA", "Baba", "abAB", "aBa",
                                    "outer", "", "a1"};
  switch (rng.below(9)) {
    case 0: {
      auto& h = d.halfedges[rng.below(d.halfedges.size())];
      h.id = pick_other(rng, ints, h.id);
      break;
    }
    case 1: {
      auto& h = d.halfedges[rng.below(d.halfedges.size())];
      h.origin = pick_other(rng, ints, h.origin);
      break;
    }
    case 2: {
      auto& h = d.halfedges[rng.below(d.halfedges.size())];
      h.label = pick_other(rng, letters, h.label);
      break;
    }
    case 3: {
      auto& h = d.halfedges[rng.below(d.halfedges.size())];
      h.twin = pick_other(rng, ints, h.twin);
      break;
    }
    case 4: {
      auto& h = d.halfedges[rng.below(d.halfedges.size())];
      h.next = pick_other(rng, ints, h.next);
      break;
    }
    case 5: {
      auto& f = d.faces[rng.below(d.faces.size())];
      auto& slot = f.cycle[rng.below(f.cycle.size())];
      slot = pick_other(rng, ints, slot);
      break;
    }
    case 6: {
      auto& f = d.faces[rng.below(d.faces.size())];
      f.relator = pick_other(rng, relators, f.relator);
      break;
    }
    case 7:
      d.outer = pick_other(rng, ints, d.outer);
      break;
    default:
      d.base = pick_other(rng, ints, d.base);
      break;
  }
  return d;
}

}  // namespace fixtures
