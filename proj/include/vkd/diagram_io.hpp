#pragma once

// JSON form of a Diagram:
//   {"halfedges": [{"id", "origin", "label", "twin", "next"}, ...],
//    "faces": [{"id", "cycle": [...], "relator": "<word>" | "outer"}, ...],
//    "outer": <face id>, "base": <half-edge id>}
// store() output is canonical, so store(load(store(d))) is byte-identical.

#include <istream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "diagram.hpp"
#include "errors.hpp"
#include "words.hpp"

namespace vkd {

inline nlohmann::ordered_json diagram_to_json(Diagram const& d) {
  nlohmann::ordered_json j;
  j["halfedges"] = nlohmann::ordered_json::array();
  for (auto const& h : d.halfedges) {
    nlohmann::ordered_json e;
    e["id"] = h.id;
    e["origin"] = h.origin;
    e["label"] = std::string(1, h.label.to_char());
    e["twin"] = h.twin;
    e["next"] = h.next;
    j["halfedges"].push_back(std::move(e));
  }
  j["faces"] = nlohmann::ordered_json::array();
  for (auto const& f : d.faces) {
    nlohmann::ordered_json e;
    e["id"] = f.id;
    e["cycle"] = f.cycle;
    e["relator"] = f.relator;
    j["faces"].push_back(std::move(e));
  }
  j["outer"] = d.outer;
  j["base"] = d.base;
  return j;
}

inline std::string store_diagram(Diagram const& d) {
  return diagram_to_json(d).dump(2) + "\n";
}

inline Diagram diagram_from_json(nlohmann::json const& j) {
  try {
    Diagram d;
    for (auto const& e : j.at("halfedges")) {
      HalfEdge h;
      h.id = e.at("id").get<int>();
      h.origin = e.at("origin").get<int>();
      auto const label = e.at("label").get<std::string>();
      if (label.size() != 1) {
        throw ParseError("half-edge label must be a single letter, got '"
                         + label + "'");
      }
      h.label = parse_word(label, kMaxGenerators)[0];
      h.twin = e.at("twin").get<int>();
      h.next = e.at("next").get<int>();
      d.halfedges.push_back(h);
    }
    for (auto const& e : j.at("faces")) {
      Face f;
      f.id = e.at("id").get<int>();
      f.cycle = e.at("cycle").get<std::vector<int>>();
      f.relator = e.at("relator").get<std::string>();
      d.faces.push_back(std::move(f));
    }
    d.outer = j.at("outer").get<int>();
    d.base = j.at("base").get<int>();
    return d;
  } catch (nlohmann::json::exception const& e) {
    throw ParseError(std::string("diagram file: ") + e.what());
  }
}

inline Diagram load_diagram(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (nlohmann::json::exception const& e) {
    throw ParseError(std::string("diagram file: ") + e.what());
  }
  return diagram_from_json(j);
}

inline Diagram load_diagram(std::string const& text) {
  std::istringstream in(text);
  return load_diagram(in);
}

}  // namespace vkd
