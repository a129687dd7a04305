#include <catch_amalgamated.hpp>

#include <random>

#include "bkm/linalg.hpp"
#include "bkm/lyndon.hpp"
#include "support/oracles.hpp"

using namespace bkm;

namespace {

Graph tailed_triangle() { return new_graph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {2, 4}, {3, 4}}); }
Graph path3() { return new_graph({1, 2, 3}, {{1, 2}, {2, 3}}); }
TraceWord tw(std::initializer_list<VertexId> l) { return TraceWord{l}; }

std::vector<std::string> rendered(const std::vector<LyndonWord>& words) {
  std::vector<std::string> out;
  for (const auto& w : words) out.push_back(render(lyndon_bracketing(w)));
  return out;
}

}  // namespace

TEST_CASE("exact rank") {
  using V = std::map<int, BigInt>;
  CHECK(exact_rank<int>({V{{0, 1}, {1, 2}}, V{{0, 2}, {1, 4}}}) == 1);
  CHECK(exact_rank<int>({V{{0, 1}, {1, 2}}, V{{0, 2}, {1, 3}}, V{{2, 5}}}) == 3);
  CHECK(exact_rank<int>({V{}, V{{3, 0}}}) == 0);
  SparseRowSpace<int> s;
  CHECK(s.insert(V{{0, 6}, {1, 4}}));
  CHECK(s.insert(V{{1, 3}, {2, 9}}));
  CHECK(s.contains(V{{0, 3}, {1, 5}, {2, 9}}));
  CHECK_FALSE(s.contains(V{{2, 1}}));
  CHECK_FALSE(s.insert(V{{0, -12}, {1, -8}}));
}

TEST_CASE("rank agrees with a rational Gauss elimination on random integer matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 6);
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
    std::vector<std::map<int, BigInt>> sparse(rows);
    for (int r = 0; r < rows; ++r) {
      // low-rank structure from a shared row now and then
      for (int c = 0; c < cols; ++c) {
        int x = static_cast<int>(rng() % 5) - 2;
        if (r > 0 && rng() % 3 == 0) x = 2 * static_cast<int>(m[r - 1][c].convert_to<double>());
        m[r][c] = x;
        if (x) sparse[r][c] = x;
      }
    }
    std::size_t rank = 0;
    for (int c = 0; c < cols && rank < static_cast<std::size_t>(rows); ++c) {
      std::size_t p = rank;
      while (p < static_cast<std::size_t>(rows) && m[p][c] == 0) ++p;
      if (p == static_cast<std::size_t>(rows)) continue;
      std::swap(m[p], m[rank]);
      for (std::size_t r = rank + 1; r < static_cast<std::size_t>(rows); ++r) {
        Rational f = m[r][c] / m[rank][c];
        for (int cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
      }
      ++rank;
    }
    CHECK(exact_rank(sparse) == rank);
  }
}

TEST_CASE("the alphabet X_i") {
  auto g = tailed_triangle();
  WeightVector k{{1, 2}, {2, 1}, {3, 1}, {4, 1}};
  auto x1 = x_i_alphabet(g, k, 1);
  for (auto w : {tw({1}), tw({2, 1}), tw({3, 2, 1}), tw({3, 4, 2, 1}), tw({4, 3, 2, 1})})
    CHECK(std::find(x1.begin(), x1.end(), w) != x1.end());
  CHECK(std::find(x1.begin(), x1.end(), tw({3, 1})) == x1.end());
  CHECK(std::is_sorted(x1.begin(), x1.end()));
  for (const auto& w : x1) CHECK(initial_alphabet(w, g) == VertexSet{1});

  auto k2 = new_graph({1, 2}, {{1, 2}});
  CHECK(x_i_alphabet(k2, WeightVector{{1, 1}, {2, 1}}, 1) == std::vector<TraceWord>{tw({1}), tw({2, 1})});
  CHECK(x_i_alphabet(new_graph({5}, {}), WeightVector{{5, 3}}, 5) == std::vector<TraceWord>{tw({5})});
  CHECK_THROWS_AS(x_i_alphabet(k2, WeightVector{{1, 1}}, 2), Error);
}

TEST_CASE("Lyndon words and standard factorization") {
  const auto a = tw({1}), b = tw({3, 4, 2, 1}), c = tw({4, 3, 2, 1});
  CHECK(a < b);
  CHECK(is_lyndon({a, b}));
  CHECK_FALSE(is_lyndon({b, a}));
  CHECK_FALSE(is_lyndon({tw({2, 1}), tw({2, 1})}));
  CHECK(is_lyndon({b}));
  CHECK_FALSE(is_lyndon({}));
  CHECK(is_lyndon({a, a, b}));
  CHECK_FALSE(is_lyndon({a, b, a, b}));

  auto [u, v] = standard_factorization({a, b});
  CHECK(u == LyndonWord{a});
  CHECK(v == LyndonWord{b});
  auto [u2, v2] = standard_factorization({a, a, b});
  CHECK(u2 == LyndonWord{a});
  CHECK(v2 == LyndonWord{a, b});
  auto [u3, v3] = standard_factorization({a, b, c});
  CHECK(u3 == LyndonWord{a});
  CHECK(v3 == LyndonWord{b, c});
  CHECK_THROWS_AS(standard_factorization({a}), Error);
  CHECK_THROWS_AS(standard_factorization({b, a}), Error);
}

TEST_CASE("bases of the four-vertex example") {
  auto g = tailed_triangle();
  WeightVector k{{1, 2}, {2, 1}, {3, 1}, {4, 1}};
  auto c1 = c_i_set(g, k, 1);
  CHECK(c1 == std::vector<LyndonWord>{{tw({1}), tw({3, 4, 2, 1})}, {tw({1}), tw({4, 3, 2, 1})}});
  CHECK(rendered(c1) == std::vector<std::string>{"[e1,[e3,[e4,[e2,e1]]]]", "[e1,[e4,[e3,[e2,e1]]]]"});
  auto c2 = c_i_set(g, k, 2);
  CHECK(rendered(c2) == std::vector<std::string>{"[e3,[e4,[e1,[e1,e2]]]]", "[e4,[e3,[e1,[e1,e2]]]]"});

  for (VertexId i : {1, 2}) {
    auto r = verify_basis(g, k, i);
    CHECK(r.words.size() == 2);
    CHECK(r.multiplicity == 2);
    CHECK(r.rank == 2);
    CHECK(r.spans);
    CHECK(r.ok());
    CHECK(r.right_normed_exact.has_value() == (i == 2));
  }
  CHECK(c_i_set(new_graph({1, 2}, {{1, 2}}), WeightVector{{1, 1}, {2, 1}}, 1) ==
        std::vector<LyndonWord>{{tw({2, 1})}});
}

TEST_CASE("more basis reports") {
  auto k2 = new_graph({1, 2}, {{1, 2}});
  auto r = verify_basis(k2, WeightVector{{1, 2}, {2, 2}}, 1);
  CHECK(r.words.size() == 1);
  CHECK(r.rank == 1);
  CHECK(r.ok());
  auto p = verify_basis(path3(), WeightVector::ones(path3()), 2);
  CHECK(p.words.size() == 1);
  CHECK(p.rank == 1);
  CHECK(p.right_normed_exact == std::optional<bool>(true));
  CHECK(p.ok());
  CHECK_THROWS_AS(verify_basis(with_kind(k2, 1, VertexKind::real), WeightVector{{1, 1}, {2, 1}}, 1), Error);
}

TEST_CASE("right-normed rendering and expansion") {
  CHECK(render_right_normed(tw({4, 3, 1, 1, 2})) == "[e4,[e3,[e1,[e1,e2]]]]");
  CHECK(render_right_normed(tw({7})) == "e7");

  auto k2 = new_graph({1, 2}, {{1, 2}});
  auto e = expand_right_normed(std::vector<VertexId>{1, 2}, k2);
  CHECK(e.terms == std::map<TraceWord, BigInt>{{tw({1, 2}), 1}, {tw({2, 1}), -1}});
  CHECK(expand_right_normed(std::vector<VertexId>{1, 3}, path3()).is_zero());

  auto g = tailed_triangle();
  auto w = std::vector<VertexId>{1, 3, 4, 2, 1};
  CHECK(right_normed_nonzero(w, g));
  auto big = expand_right_normed(w, g);
  CHECK_FALSE(big.is_zero());
  BigInt mass = 0;
  for (auto& [m, c] : big.terms) {
    CHECK(m.weight() == WeightVector{{1, 2}, {2, 1}, {3, 1}, {4, 1}});
    mass += abs(c);
  }
  CHECK(mass <= 16);
  CHECK_FALSE(right_normed_nonzero(std::vector<VertexId>{1, 3}, path3()));
  CHECK(right_normed_nonzero(std::vector<VertexId>{2}, path3()));
}

TEST_CASE("right-normed words vanish exactly when the initial alphabet has several letters") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& g : oracle::labeled_graphs(n))
      for (const auto& k : oracle::all_weights(g, 5))
        for (const auto& w : oracle::arrangements(k))
          CHECK(expand_right_normed(w, g).is_zero() != right_normed_nonzero(w, g));
}

TEST_CASE("Lyndon words over X_i correspond to aperiodic i-form classes") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& g : oracle::labeled_graphs(n))
      for (const auto& k : oracle::full_support_weights(g, 5))
        for (VertexId i : k.support()) {
          std::vector<IForm> from_lyndon;
          for (auto& w : c_i_set(g, k, i)) from_lyndon.push_back(IForm{w});
          CHECK(from_lyndon == b_set(g, k, i));
        }
}

TEST_CASE("basis verification on three-vertex graphs") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& g : oracle::labeled_graphs(n))
      for (const auto& k : oracle::full_support_weights(g, 5))
        for (VertexId i : k.support()) CHECK(verify_basis(g, k, i).ok());
}
