// Multiplicity and right-normed basis of one root space, three ways.
#include <iostream>

#include "bkm/bkm.hpp"

int main(int argc, char** argv) {
  using namespace bkm;
  Graph g = argc > 1 ? load_graph(argv[1])
                     : new_graph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {2, 4}, {3, 4}});
  WeightVector k{{1, 2}, {2, 1}, {3, 1}, {4, 1}};
  if (argc > 2) {
    k = WeightVector{};
    for (int j = 2; j + 1 < argc; j += 2) k.set(std::stoi(argv[j]), std::stoi(argv[j + 1]));
  }

  auto pi = chromatic_poly(g, k);
  std::cout << "pi(q) = " << pi.str() << "\n";
  std::cout << "mult (Moebius)      = " << root_multiplicity(g, k) << "\n";
  std::cout << "mult (bond lattice) = " << mult_via_bond_lattice(g, k) << "\n";
  for (VertexId i : k.support()) {
    std::cout << "sink " << i << ": orientations give " << mult_via_orientations(g, k, i) << ", basis";
    for (const auto& w : c_i_set(g, k, i)) std::cout << ' ' << render(lyndon_bracketing(w));
    std::cout << "\n";
  }
}
