#pragma once

#include <string>

#include "cspace/cspace.hpp"
#include "oracles.hpp"

inline const cspace::SpaceDocument& fruit_space() {
  static const cspace::SpaceDocument doc =
      cspace::parse_space(oracle::read_text(std::string(CSPACE_DATA_DIR) + "/fruit_space.json"));
  return doc;
}

inline const cspace::Concept& fruit(const std::string& name) { return fruit_space().concepts.at(name); }
