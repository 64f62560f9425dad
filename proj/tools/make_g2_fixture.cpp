// Writes the Zorn-model G2 fixture (structure constants, Gram matrix, torus) to stdout.
#include "relcr/json_io.hpp"

#include <iostream>

int main() {
  const auto data = relcr::build_g2_data();
  if (!relcr::check_g2_invariants(data).ok()) {
    std::cerr << "G2 invariants failed\n";
    return 1;
  }
  std::cout << relcr::g2_fixture_to_json(data).dump(2) << '\n';
  return 0;
}
