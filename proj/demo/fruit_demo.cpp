// Walks through the fruit space: relations between concepts and a few derived concepts.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cspace/cspace.hpp"

int main(int argc, char** argv) {
  using namespace cspace;
  const std::string path = argc > 1 ? argv[1] : std::string(CSPACE_DATA_DIR) + "/fruit_space.json";
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  std::optional<SpaceDocument> loaded;
  try {
    loaded = parse_space(text.str());
  } catch (const Error& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return 1;
  }
  const SpaceDocument& doc = *loaded;
  const auto& t = doc.concepts;
  const Space& s = doc.space;

  std::cout << "granny_smith in apple: " << format_real(subsethood(t.at("granny_smith"), t.at("apple"), s)) << "\n";
  std::cout << "apple implies red: " << format_real(implies(t.at("apple"), t.at("red"), s)) << "\n";
  std::cout << "apple between lemon and orange: "
            << format_real(between_concepts(t.at("lemon"), t.at("apple"), t.at("orange"), s)) << "\n";
  std::cout << "similarity pear -> apple: " << format_real(similarity_concepts(t.at("pear"), t.at("apple"), s)) << "\n";

  for (const char* name : {"pear", "apple"}) {
    std::cout << "size " << name << ": " << format_real(concept_size(t.at(name))) << "\n";
  }

  std::cout << "\napple and pear\n" << format_concept(intersect(t.at("apple"), t.at("pear")));
  std::cout << "\napple or pear\n" << format_concept(unify(t.at("apple"), t.at("pear")));
  std::cout << "\nlemon on color\n" << format_concept(project(t.at("lemon"), {"color"}, s));

  const Point x{std::vector<double>{0.75, 0.7, 0.5}};
  std::cout << "\nmembership at (0.75, 0.7, 0.5):";
  for (const auto& [name, c] : t) std::cout << " " << name << "=" << format_short(membership(c, x));
  std::cout << "\n";
}
