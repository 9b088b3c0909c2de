#include <filesystem>
#include <iostream>

#include "plf/examples.hpp"

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "corpus";
  std::string why;
  auto corpus = plf::build_corpus(&why);
  if (!corpus) {
    std::cerr << "corpus generation failed: " << why << "\n";
    return 1;
  }
  std::filesystem::create_directories(dir);
  for (const auto& [name, doc] : *corpus) {
    std::string path = dir + "/" + name;
    if (!plf::save_document(path, doc)) {
      std::cerr << "cannot write " << path << "\n";
      return 1;
    }
    std::cout << path << "\n";
  }
  return 0;
}
