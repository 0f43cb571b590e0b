#pragma once

// `query <space-file> <verb> <args...>` front end.

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cspace/concept.hpp"
#include "cspace/error.hpp"
#include "cspace/format.hpp"
#include "cspace/io.hpp"
#include "cspace/measure.hpp"

namespace cspace {

struct CliOutcome {
  int exit_code = 0;
  std::string out;
  std::string err;
};

inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QueryOptions {
  std::string file;
  std::string verb;
  std::vector<std::string> args;
  double tolerance = 1e-8;
  std::size_t mc_samples = 100000;
  std::uint64_t mc_seed = 1;
};

inline double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError(what + " must be a number, got '" + s + "'");
  return v;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read space file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Query {
 public:
  Query(SpaceDocument doc, const QueryOptions& opts) : doc_(std::move(doc)), opts_(opts) {}

  std::string run() {
    using Handler = std::function<std::string()>;
    const std::map<std::string, std::pair<std::string, Handler>> verbs = {
        {"size", {"<concept>", [&] { return line(concept_size(arg_concept(0))); }}},
        {"membership", {"<concept> <x_0> ... <x_n-1>", [&] { return membership_verb(); }}},
        {"subsethood", {"<concept> <concept>", [&] { return line(subsethood(arg_concept(0), arg_concept(1), space())); }}},
        {"implies", {"<concept> <concept>", [&] { return line(implies(arg_concept(0), arg_concept(1), space())); }}},
        {"similarity",
         {"<concept> <concept>", [&] { return line(similarity_concepts(arg_concept(0), arg_concept(1), space())); }}},
        {"between",
         {"<concept> <first> <second>",
          [&] {
            return line(between_concepts(arg_concept(1), arg_concept(0), arg_concept(2), space(), opts_.tolerance));
          }}},
        {"intersect", {"<concept> <concept>", [&] { return format_concept(intersect(arg_concept(0), arg_concept(1))); }}},
        {"unify", {"<concept> <concept>", [&] { return format_concept(unify(arg_concept(0), arg_concept(1))); }}},
        {"project", {"<concept> <domain>...", [&] { return project_verb(); }}},
        {"cut", {"<concept> <dimension> <value>", [&] { return cut_verb(); }}},
        {"mcsize", {"<concept>", [&] { return mcsize_verb(); }}},
    };
    auto it = verbs.find(opts_.verb);
    if (it == verbs.end()) throw UsageError("unknown verb '" + opts_.verb + "'");
    usage_ = opts_.verb + " " + it->second.first;
    const int expected = arity(opts_.verb);
    if (expected >= 0 && opts_.args.size() != static_cast<std::size_t>(expected)) {
      throw UsageError("usage: " + usage_);
    }
    return it->second.second();
  }

 private:
  int arity(const std::string& verb) const {
    if (verb == "size" || verb == "mcsize") return 1;
    if (verb == "between" || verb == "cut") return 3;
    if (verb == "membership") return 1 + static_cast<int>(space().n_dims());
    if (verb == "project") return -1;
    return 2;
  }

  const Space& space() const { return doc_.space; }

  static std::string line(double v) { return format_real(v) + "\n"; }

  const Concept& arg_concept(std::size_t i) const {
    const std::string& name = opts_.args.at(i);
    auto it = doc_.concepts.find(name);
    if (it == doc_.concepts.end()) throw Error("unknown concept '" + name + "'");
    return it->second;
  }

  std::string membership_verb() const {
    std::vector<double> x;
    for (std::size_t i = 1; i < opts_.args.size(); ++i) x.push_back(parse_double(opts_.args[i], "coordinate"));
    Point p(std::move(x));
    space().check_point(p);
    return line(membership(arg_concept(0), p));
  }

  std::string project_verb() const {
    if (opts_.args.size() < 2) throw UsageError("usage: " + usage_);
    DomainSet kept(opts_.args.begin() + 1, opts_.args.end());
    return format_concept(project(arg_concept(0), kept, space()));
  }

  DimIndex dimension_arg(const std::string& s) const {
    for (DimIndex d = 0; d < doc_.dimension_names.size(); ++d) {
      if (doc_.dimension_names[d] == s) return d;
    }
    const double v = parse_double(s, "dimension");
    if (v < 0 || v != static_cast<double>(static_cast<DimIndex>(v)) || v >= static_cast<double>(space().n_dims())) {
      throw UsageError("unknown dimension '" + s + "'");
    }
    return static_cast<DimIndex>(v);
  }

  std::string cut_verb() const {
    const Concept& t = arg_concept(0);
    const DimIndex dim = dimension_arg(opts_.args[1]);
    const double v = parse_double(opts_.args[2], "cut value");
    auto [upper, lower] = cut(t, dim, v);
    auto block = [](const char* label, const std::optional<Concept>& part) {
      return std::string(label) + (part ? "\n" + format_concept(*part) : " empty\n");
    };
    return block("upper:", upper) + block("lower:", lower);
  }

  std::string mcsize_verb() const {
    const Concept& t = arg_concept(0);
    const auto est = monte_carlo_estimate(t, monte_carlo_bounds(t), opts_.mc_samples, opts_.mc_seed);
    return format_real(est.value) + " +/- " + format_real(est.std_error) + "\n";
  }

  SpaceDocument doc_;
  QueryOptions opts_;
  std::string usage_;
};

}  // namespace detail

/// Runs one command line (without the program name) and captures its output.
inline CliOutcome run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Query concepts in a conceptual space", "cspace"};
  app.require_subcommand(1);
  detail::QueryOptions opts;
  auto* query = app.add_subcommand("query", "Evaluate one operation on concepts of a space file");
  query->add_option("file", opts.file, "Space definition (JSON)")->required();
  query->add_option("verb", opts.verb,
                    "size, membership, subsethood, implies, similarity, between, intersect, unify, project, cut, mcsize")
      ->required();
  query->add_option("args", opts.args, "Verb arguments");
  query->add_option("--tolerance", opts.tolerance, "Betweenness tolerance")->check(CLI::PositiveNumber);
  query->add_option("--mc-samples", opts.mc_samples, "Samples for mcsize")
      ->check(CLI::Range(kMinMonteCarloSamples, std::size_t{1} << 40));
  query->add_option("--mc-seed", opts.mc_seed, "Seed for mcsize");

  CliOutcome result;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = (app.got_subcommand(query) ? query->help() : app.help());
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.out = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = kExitUsage;
    result.err = std::string("error: ") + e.what() + "\n";
    return result;
  }

  try {
    SpaceDocument doc = parse_space(detail::read_file(opts.file));
    result.out = detail::Query(std::move(doc), opts).run();
  } catch (const detail::UsageError& e) {
    result.exit_code = kExitUsage;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    result.exit_code = kExitFailure;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace cspace
