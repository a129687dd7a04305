#include <catch_amalgamated.hpp>

#include "bkm/chromatic.hpp"
#include "support/oracles.hpp"

using namespace bkm;

namespace {

Graph tailed_triangle() { return new_graph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {2, 4}, {3, 4}}); }

QPolynomial poly(std::vector<Rational> c) { return QPolynomial(std::move(c)); }

}  // namespace

TEST_CASE("four-vertex example from the multicoloring section") {
  auto g = tailed_triangle();
  WeightVector k{{1, 2}, {2, 1}, {3, 1}, {4, 1}};
  auto p = chromatic_poly(g, k);
  // q(q-2)^2(q-1)^2/2, from brute-force counts and interpolation
  CHECK(p == poly({0, 2, -6, Rational(13, 2), -3, Rational(1, 2)}));
  CHECK(p(3) == 6);
  CHECK(coloring_count_oracle(g, k, 3) == 6);
  CHECK(is_integer_valued(p));
}

TEST_CASE("small closed forms") {
  auto path = new_graph({1, 2, 3}, {{1, 2}, {2, 3}});
  CHECK(chromatic_poly(path, WeightVector::ones(path)) == poly({0, 1, -2, 1}));  // q(q-1)^2

  auto edge = new_graph({1, 2}, {{1, 2}});
  WeightVector k23{{1, 2}, {2, 3}};
  CHECK(chromatic_poly(edge, k23) == falling_binomial(0, 3) * falling_binomial(-3, 2));
  CHECK(chromatic_poly(edge, WeightVector{{1, 2}, {2, 2}}) ==
        poly({0, Rational(-3, 2), Rational(11, 4), Rational(-3, 2), Rational(1, 4)}));

  auto single = new_graph({7}, {});
  CHECK(chromatic_poly(single, WeightVector{{7, 1}}) == QPolynomial::q());
  CHECK(chromatic_poly(single, WeightVector{}) == QPolynomial(1));
}

TEST_CASE("ordered partition counts") {
  auto edge = new_graph({1, 2}, {{1, 2}});
  auto pc = ordered_partition_counts(edge, WeightVector{{1, 1}, {2, 1}});
  CHECK(pc[1] == 0);
  CHECK(pc[2] == 2);
  auto empty = new_graph({1, 2}, {});
  auto pe = ordered_partition_counts(empty, WeightVector{{1, 1}, {2, 1}});
  CHECK(pe[1] == 1);
  CHECK(pe[2] == 2);
  CHECK(pe[5] == 0);
}

TEST_CASE("closed forms agree with the general algorithm") {
  for (int n = 1; n <= 4; ++n) {
    auto kn = oracle::labeled_graphs(n).back();  // complete graph
    for (const auto& k : oracle::full_support_weights(kn, 7)) {
      std::vector<int> w;
      for (auto& [v, c] : k.counts()) w.push_back(c);
      CHECK(chromatic_complete(w) == chromatic_poly(kn, k));
    }
  }
  for (int n = 1; n <= 5; ++n)
    for (const auto& g : oracle::connected_labeled_graphs(n)) {
      if (g.edge_count() != static_cast<std::size_t>(n - 1)) continue;
      for (const auto& k : oracle::full_support_weights(g, 7))
        CHECK(chromatic_tree(g, k) == chromatic_poly(g, k));
    }
  CHECK_THROWS_AS(chromatic_tree(new_graph({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}}),
                                 WeightVector{{1, 1}, {2, 1}, {3, 1}}),
                  Error);
  CHECK_THROWS_AS(chromatic_complete(std::vector<int>{1, 0}), Error);
}

TEST_CASE("polynomial matches colouring counts on small graphs") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& g : oracle::labeled_graphs(n))
      for (const auto& k : oracle::all_weights(g, 5)) {
        auto p = chromatic_poly(g, k);
        CHECK(is_integer_valued(p));
        CHECK(p.degree() == k.height());
        for (unsigned q = 0; q <= static_cast<unsigned>(k.height()); ++q)
          CHECK(p(q) == Rational(coloring_count_oracle(g, k, q)));
      }
}

TEST_CASE("disjoint union multiplies chromatic polynomials") {
  auto g = new_graph({1, 2, 3, 4, 5}, {{1, 2}, {3, 4}, {4, 5}});
  WeightVector a{{1, 2}, {2, 1}}, b{{3, 1}, {4, 2}, {5, 1}};
  CHECK(chromatic_poly(g, a + b) == chromatic_poly(g, a) * chromatic_poly(g, b));
}
