#pragma once

#include <string>
#include <vector>

#include "cspace/cli.hpp"

// Queries recorded in golden/session.txt, run against the fruit space.
inline const std::vector<std::vector<std::string>>& session_queries() {
  static const std::vector<std::vector<std::string>> queries = {
      {"subsethood", "granny_smith", "apple"},
      {"implies", "apple", "red"},
      {"between", "apple", "lemon", "orange"},
      {"between", "lemon", "apple", "orange"},
      {"similarity", "pear", "apple"},
      {"similarity", "pear", "lemon"},
      {"intersect", "apple", "pear"},
      {"unify", "apple", "pear"},
      {"size", "apple"},
      {"size", "pear"},
      {"project", "lemon", "color"},
      {"membership", "apple", "0.75", "0.7", "0.5"},
      {"membership", "pear", "0.8", "0.5", "0.4"},
  };
  return queries;
}

inline std::string session_transcript(const std::string& space_file) {
  std::string out;
  for (const auto& q : session_queries()) {
    out += "$";
    for (const auto& a : q) out += " " + a;
    out += "\n";
    std::vector<std::string> args = {"query", space_file};
    args.insert(args.end(), q.begin(), q.end());
    const cspace::CliOutcome r = cspace::run_cli(args);
    out += r.out + r.err;
  }
  return out;
}
