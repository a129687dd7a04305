#pragma once

#include <map>
#include <vector>

#include "bkm/chromatic.hpp"
#include "bkm/graph.hpp"
#include "bkm/multiplicity.hpp"
#include "bkm/numeric.hpp"
#include "bkm/polynomial.hpp"
#include "bkm/trace.hpp"

namespace bkm {

/// Every weight vector on the vertices of g with the given height, ascending.
inline std::vector<WeightVector> weights_of_height(const Graph& g, int height) {
  std::vector<WeightVector> out;
  std::vector<int> cur(g.size(), 0);
  auto rec = [&](auto&& self, std::size_t j, int left) -> void {
    if (j + 1 >= g.size()) {
      if (g.size() == 0) {
        if (left == 0) out.emplace_back();
        return;
      }
      cur[j] = left;
      out.push_back(sparse_weights(g, cur));
      return;
    }
    for (int c = 0; c <= left; ++c) {
      cur[j] = c;
      self(self, j + 1, left - c);
    }
  };
  rec(rec, 0, height);
  std::sort(out.begin(), out.end());
  return out;
}

inline void require_all_imaginary(const Graph& g, const char* what) {
  require(g.all_imaginary(), ErrorCode::precondition,
          std::string(what) + " needs every vertex imaginary");
}

/// dim (U(n+)^{(x)q})_k = (-1)^{ht k} pi_k(-q).
inline BigInt uq_dimension(const Graph& g, const WeightVector& k, int q) {
  require_all_imaginary(g, "tensor dimension");
  require(q >= 1, ErrorCode::precondition, "q must be positive");
  if (k.is_zero()) return 1;
  Rational v = chromatic_poly(g, k)(Rational(-q));
  if (k.height() % 2) v = -v;
  BigInt d = to_integer(v, "tensor dimension");
  require(d >= 0, ErrorCode::internal, "negative tensor dimension");
  return d;
}

/// Number of trace words of weight k: dim U(n+)_k counted directly.
inline BigInt trace_dimension_oracle(const Graph& g, const WeightVector& k,
                                     int height_limit = default_height_limit) {
  require_all_imaginary(g, "trace dimension");
  return BigInt(enumerate_weight_words(g, k, height_limit).size());
}

struct SeriesTable {
  std::map<WeightVector, BigInt> entries;
  int bound = 0;
};

/// Graded dimensions of U(n+)^{(x)q} for every weight of height <= bound.
inline SeriesTable hilbert_series(const Graph& g, int q, int bound) {
  require(bound >= 0, ErrorCode::precondition, "height bound must be non-negative");
  SeriesTable t;
  t.bound = bound;
  for (int h = 0; h <= bound; ++h)
    for (auto& k : weights_of_height(g, h)) t.entries.emplace(k, uq_dimension(g, k, q));
  return t;
}

/// All ordered tuples (b_1, ..., b_parts) of weight vectors, zero allowed,
/// with b_1 + ... + b_parts = k.
inline std::vector<std::vector<WeightVector>> weight_compositions(const WeightVector& k, int parts) {
  require(parts >= 1, ErrorCode::precondition, "compositions need at least one part");
  std::vector<std::vector<WeightVector>> out;
  if (parts == 1) {
    out.push_back({k});
    return out;
  }
  // Choose the first part as any w <= k, recurse on the rest.
  std::vector<std::pair<VertexId, int>> entries(k.counts().begin(), k.counts().end());
  WeightVector first;
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == entries.size()) {
      WeightVector rest;
      for (auto [v, c] : entries) rest.set(v, c - first[v]);
      for (auto& tail : weight_compositions(rest, parts - 1)) {
        tail.insert(tail.begin(), first);
        out.push_back(std::move(tail));
      }
      return;
    }
    for (int c = 0; c <= entries[j].second; ++c) {
      first.set(entries[j].first, c);
      self(self, j + 1);
    }
    first.set(entries[j].first, 0);
  };
  rec(rec, 0);
  return out;
}

/// pi_k(-q) = sum over ordered decompositions k = b_1 + ... + b_q of
/// prod_j pi_{b_j}(-1), with pi_0 = 1.
inline bool ordered_partition_identity_check(const Graph& g, const WeightVector& k, int q) {
  require_all_imaginary(g, "ordered partition identity");
  require(q >= 1, ErrorCode::precondition, "q must be positive");
  std::map<WeightVector, Rational> at_minus_one;
  auto value = [&](const WeightVector& b) -> Rational {
    if (b.is_zero()) return 1;
    auto it = at_minus_one.find(b);
    if (it == at_minus_one.end()) it = at_minus_one.emplace(b, chromatic_poly(g, b)(-1)).first;
    return it->second;
  };
  Rational total = 0;
  for (const auto& parts : weight_compositions(k, q)) {
    Rational term = 1;
    for (const auto& b : parts) term *= value(b);
    total += term;
  }
  const Rational lhs = k.is_zero() ? Rational(1) : chromatic_poly(g, k)(Rational(-q));
  return lhs == total;
}

/// Pairs (sigma: I -> {1..q}, acyclic orientation O) with sigma(a) >= sigma(b)
/// for every arc a -> b, by enumeration of both.
inline BigInt count_compatible_pairs(const Graph& g, int q) {
  require(q >= 1, ErrorCode::precondition, "q must be positive");
  const std::size_t n = g.size();
  double labelings = 1;
  for (std::size_t j = 0; j < n; ++j) labelings *= q;
  require(labelings <= 1e7, ErrorCode::limit_exceeded,
          "compatible-pair enumeration over " + std::to_string(q) + "^" + std::to_string(n) +
              " labelings");
  auto orientations = enumerate_acyclic_orientations(g);
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  BigInt total = 0;
  std::vector<int> sigma(n, 1);
  for (const auto& o : orientations) {
    arcs.clear();
    for (auto [t, h] : o.arcs) arcs.emplace_back(g.index_of(t), g.index_of(h));
    std::fill(sigma.begin(), sigma.end(), 1);
    long long count = 0;
    while (true) {
      bool ok = true;
      for (auto [t, h] : arcs)
        if (sigma[t] < sigma[h]) {
          ok = false;
          break;
        }
      count += ok;
      std::size_t j = 0;
      while (j < n && sigma[j] == q) sigma[j++] = 1;
      if (j == n) break;
      ++sigma[j];
    }
    total += count;
  }
  return total;
}

/// sum_j c_j X^j, c_j the number of independent j-sets.
inline QPolynomial independent_set_polynomial(const Graph& g) {
  std::vector<Rational> c(g.size() + 1, 0);
  for (const auto& s : enumerate_independent_sets(g)) c[s.size()] += 1;
  return QPolynomial(std::move(c));
}

struct LcsRank {
  int k = 0;
  Rational n;  // N_k
  BigInt m;    // M_k
};

namespace detail {

/// M_k = sum_{d | k} mu(d)/d * N_{k/d}; non-integral values are bugs.
inline std::vector<LcsRank> ranks_from_n(const std::vector<Rational>& n) {
  std::vector<LcsRank> out;
  for (int k = 1; k < static_cast<int>(n.size()); ++k) {
    Rational m = 0;
    for (int d = 1; d <= k; ++d)
      if (k % d == 0) m += Rational(moebius(d), d) * n[k / d];
    out.push_back({k, n[k], to_integer(m, "lower central series rank M_" + std::to_string(k))});
  }
  return out;
}

}  // namespace detail

/// N_k = [X^k] -log(sum_j (-1)^j c_j X^j).
inline std::vector<LcsRank> lcs_ranks(const Graph& g, int max_k) {
  require_all_imaginary(g, "lower central series ranks");
  require(max_k >= 1, ErrorCode::precondition, "max k must be positive");
  auto isp = independent_set_polynomial(g);
  std::vector<Rational> p(max_k + 1, 0);
  for (int j = 0; j <= max_k; ++j) p[j] = (j % 2 ? -1 : 1) * isp.coefficient(j);
  // log P = sum g_j X^j from P' = (log P)' P.
  std::vector<Rational> lg(max_k + 1, 0);
  for (int n = 1; n <= max_k; ++n) {
    Rational acc = n * p[n];
    for (int j = 1; j < n; ++j) acc -= j * lg[j] * p[n - j];
    lg[n] = acc / n;
  }
  std::vector<Rational> nk(max_k + 1, 0);
  for (int n = 1; n <= max_k; ++n) nk[n] = -lg[n];
  return detail::ranks_from_n(nk);
}

struct LucasParams {
  long long s = 0;
  long long t = 0;
};

/// <0> = 2, <1> = s, <l> = s<l-1> + t<l-2>.
inline BigInt lucas_value(int ell, const LucasParams& p) {
  require(ell >= 0, ErrorCode::precondition, "Lucas index must be non-negative");
  BigInt a = 2, b = p.s;
  if (ell == 0) return a;
  for (int j = 2; j <= ell; ++j) {
    BigInt c = p.s * b + p.t * a;
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

/// sum_j l/(l-j) C(l-j, j) t^j s^{l-2j}; the l = 0 value is taken to be 2.
inline BigInt lucas_closed_form(int ell, const LucasParams& p) {
  require(ell >= 0, ErrorCode::precondition, "Lucas index must be non-negative");
  if (ell == 0) return 2;
  Rational total = 0;
  for (int j = 0; 2 * j <= ell; ++j) {
    BigInt term = binomial(ell - j, j) * boost::multiprecision::pow(BigInt(p.t), j) *
                  boost::multiprecision::pow(BigInt(p.s), ell - 2 * j);
    total += Rational(term * ell, ell - j);
  }
  return to_integer(total, "Lucas closed form");
}

/// Complement triangle-free: N_k = <k>_{v,-e}/k and
/// M_k = (1/k) sum_{d|k} mu(k/d) <d>_{v,-e}, v = |I|, e = |E(G^c)|.
inline std::vector<LcsRank> lcs_ranks_triangle_free(const Graph& g, int max_k) {
  require_all_imaginary(g, "lower central series ranks");
  require(max_k >= 1, ErrorCode::precondition, "max k must be positive");
  auto gc = complement(g);
  require(is_triangle_free(gc), ErrorCode::precondition, "complement graph has a triangle");
  const LucasParams p{static_cast<long long>(g.size()), -static_cast<long long>(gc.edge_count())};
  std::vector<LcsRank> out;
  for (int k = 1; k <= max_k; ++k) {
    Rational m = 0;
    for (int d = 1; d <= k; ++d)
      if (k % d == 0) m += moebius(k / d) * Rational(lucas_value(d, p));
    m /= k;
    out.push_back({k, Rational(lucas_value(k, p), k), to_integer(m, "Lucas rank M_" + std::to_string(k))});
  }
  return out;
}

}  // namespace bkm
