#pragma once

#include <bit>
#include <map>
#include <optional>
#include <vector>

#include "bkm/chromatic.hpp"
#include "bkm/graph.hpp"
#include "bkm/numeric.hpp"
#include "bkm/polynomial.hpp"

namespace bkm {

/// Ascending divisors of the gcd of the non-zero entries.
inline std::vector<int> tuple_divisors(const WeightVector& k) {
  require(!k.is_zero(), ErrorCode::precondition, "divisors of the zero weight vector");
  const int g = k.gcd();
  std::vector<int> out;
  for (int d = 1; d <= g; ++d)
    if (g % d == 0) out.push_back(d);
  return out;
}

inline int moebius(long long n) {
  require(n >= 1, ErrorCode::precondition, "Moebius function needs n >= 1");
  int sign = 1;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

/// Multiplicities are only defined by the chromatic formulas when every
/// real vertex has weight at most one.
inline void require_real_weights_at_most_one(const Graph& g, const WeightVector& k) {
  for (auto& [v, c] : k.counts())
    require(g.kind(v) == VertexKind::imaginary || c <= 1, ErrorCode::precondition,
            "real vertex " + std::to_string(v) + " has weight " + std::to_string(c) +
                " (> 1)");
}

/// mult eta(k) = sum_{l | k} mu(l)/l * |[q] pi_{k/l}(q)|; zero when the
/// support is disconnected.
inline BigInt root_multiplicity(const Graph& g, const WeightVector& k) {
  require(!k.is_zero(), ErrorCode::precondition, "multiplicity of the zero weight");
  require_real_weights_at_most_one(g, k);
  if (!is_connected_mask(g, support_mask(g, k))) return 0;
  Rational total = 0;
  for (int l : tuple_divisors(k)) {
    int mu = moebius(l);
    if (mu == 0) continue;
    total += Rational(mu, l) * abs(linear_coefficient(chromatic_poly(g, k.divided_by(l))));
  }
  BigInt m = to_integer(total, "root multiplicity");
  require(m >= 0, ErrorCode::internal, "negative root multiplicity");
  return m;
}

// ---------------------------------------------------------------------------
// Weighted bond lattice

struct BondPart {
  WeightVector weight;
  int multiplicity = 1;  // D(J, J)
  bool operator==(const BondPart&) const = default;
};

/// A multiset of connected-support weight vectors; parts are distinct and
/// ascending, repetitions recorded in `multiplicity`.
struct BondPartition {
  std::vector<BondPart> parts;

  /// Number of parts counted with multiplicity.
  int size() const {
    int n = 0;
    for (auto& p : parts) n += p.multiplicity;
    return n;
  }
  bool operator==(const BondPartition&) const = default;
};

namespace detail {

/// Every non-zero w <= k (componentwise) whose support is connected, ascending.
inline std::vector<WeightVector> connected_subweights(const Graph& g, const WeightVector& k) {
  auto sv = support_view(g, k);
  std::vector<WeightVector> out;
  std::vector<int> cur(sv.index.size(), 0);
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == cur.size()) {
      VertexMask m = 0;
      WeightVector w;
      for (std::size_t t = 0; t < cur.size(); ++t)
        if (cur[t] > 0) {
          m |= VertexMask{1} << sv.index[t];
          w.set(g.id(sv.index[t]), cur[t]);
        }
      if (m && is_connected_mask(g, m)) out.push_back(std::move(w));
      return;
    }
    for (int c = 0; c <= sv.weight[j]; ++c) {
      cur[j] = c;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline std::vector<BondPartition> bond_lattice(const Graph& g, const WeightVector& k) {
  for (auto& [v, c] : k.counts()) (void)g.index_of(v);
  auto candidates = detail::connected_subweights(g, k);
  std::vector<BondPartition> out;
  if (k.is_zero()) {
    out.push_back({});
    return out;
  }
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t from, const WeightVector& rest) -> void {
    if (rest.is_zero()) {
      BondPartition p;
      for (auto idx : chosen) {
        if (!p.parts.empty() && p.parts.back().weight == candidates[idx])
          ++p.parts.back().multiplicity;
        else
          p.parts.push_back({candidates[idx], 1});
      }
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t c = from; c < candidates.size(); ++c) {
      if (!candidates[c].fits_in(rest)) continue;
      WeightVector next;
      for (auto& [v, cnt] : rest.counts()) next.set(v, cnt - candidates[c][v]);
      chosen.push_back(c);
      self(self, c, next);
      chosen.pop_back();
    }
  };
  rec(rec, 0, k);
  return out;
}

/// sum over bond partitions J of (-1)^{ht + |J|} prod_J C(q mult(beta(J)), D(J,J)).
inline QPolynomial chromatic_via_bond_lattice(const Graph& g, const WeightVector& k) {
  require_real_weights_at_most_one(g, k);
  std::map<WeightVector, BigInt> mult;
  const int ht = k.height();
  QPolynomial out;
  for (const auto& partition : bond_lattice(g, k)) {
    QPolynomial term(((ht + partition.size()) % 2) ? -1 : 1);
    for (const auto& part : partition.parts) {
      auto it = mult.find(part.weight);
      if (it == mult.end()) it = mult.emplace(part.weight, root_multiplicity(g, part.weight)).first;
      term *= scaled_binomial(it->second, static_cast<unsigned>(part.multiplicity));
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

/// mult eta(k) read off the bond-lattice identity: the single-part partition
/// {k} contributes (-1)^{ht+1} mult(k) q, every other partition only uses
/// smaller weights, so the remainder pi_k - (others) must be exactly that
/// linear term.
inline BigInt mult_via_bond_lattice(const Graph& g, const WeightVector& k,
                                    std::map<WeightVector, BigInt>& memo) {
  require(!k.is_zero(), ErrorCode::precondition, "multiplicity of the zero weight");
  require_real_weights_at_most_one(g, k);
  if (auto it = memo.find(k); it != memo.end()) return it->second;
  if (!is_connected_mask(g, support_mask(g, k))) return memo[k] = 0;
  const int ht = k.height();
  QPolynomial rest = chromatic_poly(g, k);
  for (const auto& partition : bond_lattice(g, k)) {
    if (partition.size() == 1) continue;
    QPolynomial term(((ht + partition.size()) % 2) ? -1 : 1);
    for (const auto& part : partition.parts) {
      term *= scaled_binomial(mult_via_bond_lattice(g, part.weight, memo),
                              static_cast<unsigned>(part.multiplicity));
      if (term.is_zero()) break;
    }
    rest -= term;
  }
  require(rest.degree() <= 1 && rest.coefficient(0) == 0, ErrorCode::internal,
          "bond-lattice remainder is not a multiple of q: " + rest.str());
  Rational m = rest.coefficient(1);
  if (ht % 2 == 0) m = -m;
  BigInt out = to_integer(m, "bond-lattice multiplicity");
  require(out >= 0, ErrorCode::internal, "negative bond-lattice multiplicity");
  return memo[k] = out;
}

inline BigInt mult_via_bond_lattice(const Graph& g, const WeightVector& k) {
  std::map<WeightVector, BigInt> memo;
  return mult_via_bond_lattice(g, k, memo);
}

// ---------------------------------------------------------------------------
// Acyclic orientations

/// One arc (tail, head) per edge, in `Graph::edges()` order.
struct Orientation {
  std::vector<Edge> arcs;

  /// Vertices with no outgoing arc, ascending.
  VertexSet sinks(const Graph& g) const {
    VertexMask has_out = 0;
    for (auto [t, h] : arcs) has_out |= VertexMask{1} << g.index_of(t);
    return g.set_of(g.full_mask() & ~has_out);
  }
  bool operator==(const Orientation&) const = default;
};

inline bool is_acyclic(const Graph& g, const Orientation& o) {
  std::vector<VertexMask> out_nb(g.size(), 0);
  for (auto [t, h] : o.arcs) out_nb[g.index_of(t)] |= VertexMask{1} << g.index_of(h);
  // Repeatedly strip sinks; a cycle leaves a non-empty remainder with none.
  VertexMask alive = g.full_mask();
  while (alive) {
    VertexMask sinks = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (((alive >> i) & 1u) && !(out_nb[i] & alive)) sinks |= VertexMask{1} << i;
    if (!sinks) return false;
    alive &= ~sinks;
  }
  return true;
}

/// Every acyclic orientation. Orientation number b assigns edge e (a < b)
/// the arc b->a when bit e of b is set; results come in increasing b.
inline std::vector<Orientation> enumerate_acyclic_orientations(const Graph& g) {
  const auto edges = g.edges();
  require(edges.size() <= 24, ErrorCode::limit_exceeded,
          "orientation enumeration over 2^" + std::to_string(edges.size()) + " candidates");
  std::vector<Orientation> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << edges.size()); ++bits) {
    Orientation o;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto [a, b] = edges[e];
      o.arcs.push_back((bits >> e) & 1u ? Edge{b, a} : Edge{a, b});
    }
    if (is_acyclic(g, o)) out.push_back(std::move(o));
  }
  return out;
}

/// Number of acyclic orientations whose only sink is `sink`.
///
/// Inclusion-exclusion over the source set: stripping the sources S of such
/// an orientation of G[U] leaves one of G[U \ S] with the same unique sink, so
///   h(U) = sum_{S != {}, S independent, S in U \ {sink}} (-1)^{|S|+1} h(U \ S),
/// with h({sink}) = 1 and h(U) = 0 when G[U] has an isolated vertex besides
/// the sink. Disconnected graphs therefore give 0.
inline BigInt count_unique_sink(const Graph& g, VertexId sink) {
  const std::size_t v = g.index_of(sink);
  const std::size_t n = g.size();
  require(n <= 16, ErrorCode::limit_exceeded,
          "unique-sink count limited to 16 vertices, got " + std::to_string(n));
  const VertexMask sink_bit = VertexMask{1} << v;
  const std::size_t full = std::size_t{1} << n;

  std::vector<char> independent(full, 1);
  for (std::size_t s = 1; s < full; ++s) {
    auto low = static_cast<std::size_t>(std::countr_zero(s));
    std::size_t rest = s & (s - 1);
    independent[s] = independent[rest] && !(g.neighbours_at(low) & rest);
  }

  std::vector<BigInt> h(full, 0);
  for (std::size_t u = 0; u < full; ++u) {
    if (!(u & sink_bit)) continue;
    if (u == sink_bit) {
      h[u] = 1;
      continue;
    }
    bool isolated = false;
    for (std::size_t i = 0; i < n && !isolated; ++i)
      if (((u >> i) & 1u) && !(g.neighbours_at(i) & u)) isolated = true;
    if (isolated) continue;
    const std::size_t others = u & ~sink_bit;
    BigInt acc = 0;
    for (std::size_t s = others; s; s = (s - 1) & others) {
      if (!independent[s] || h[u & ~s] == 0) continue;
      if (std::popcount(s) % 2)
        acc += h[u & ~s];
      else
        acc -= h[u & ~s];
    }
    h[u] = acc;
  }
  return h[full - 1];
}

/// mult eta(k) = sum_{l | k} mu(l)/l * |O_{i^1}(G(k/l))| / (k/l)!, where
/// i^1 is the first clone of i in the join graph G(k/l).
inline BigInt mult_via_orientations(const Graph& g, const WeightVector& k, VertexId i) {
  require(k[i] > 0, ErrorCode::precondition,
          "vertex " + std::to_string(i) + " is not in the support");
  require_real_weights_at_most_one(g, k);
  Rational total = 0;
  for (int l : tuple_divisors(k)) {
    int mu = moebius(l);
    if (mu == 0) continue;
    auto reduced = k.divided_by(l);
    auto join = join_graph(g, reduced);
    BigInt sinks = count_unique_sink(join.graph, join.vertex_of({i, 1}));
    BigInt symmetry = 1;
    for (auto& [v, c] : reduced.counts()) symmetry *= factorial(static_cast<unsigned>(c));
    total += Rational(mu, l) * Rational(sinks, symmetry);
  }
  return to_integer(total, "orientation multiplicity");
}

}  // namespace bkm
