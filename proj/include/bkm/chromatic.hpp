#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "bkm/graph.hpp"
#include "bkm/numeric.hpp"
#include "bkm/polynomial.hpp"

namespace bkm {

/// counts[l] = number of ordered l-tuples of non-empty independent vertex
/// sets whose disjoint multiset union is the weight vector.
struct PartitionCount {
  std::vector<BigInt> counts;

  BigInt operator[](std::size_t parts) const {
    return parts < counts.size() ? counts[parts] : BigInt(0);
  }
};

namespace detail {

/// Support of k as graph indices together with the per-index weights.
struct SupportView {
  std::vector<std::size_t> index;  // graph index of each support vertex
  std::vector<int> weight;         // k at that vertex
};

inline SupportView support_view(const Graph& g, const WeightVector& k) {
  SupportView s;
  for (auto& [v, c] : k.counts()) {
    s.index.push_back(g.index_of(v));
    s.weight.push_back(c);
  }
  return s;
}

}  // namespace detail

/// Memoized recursion over residual weight vectors: a residual r is reached
/// from r + 1_S by peeling off the (first) part S, for every non-empty
/// independent S inside supp(r + 1_S). Residuals are packed in mixed radix.
inline PartitionCount ordered_partition_counts(const Graph& g, const WeightVector& k) {
  auto sv = detail::support_view(g, k);
  const std::size_t m = sv.index.size();
  const int ht = k.height();

  std::vector<std::size_t> stride(m + 1, 1);
  for (std::size_t j = 0; j < m; ++j) stride[j + 1] = stride[j] * (sv.weight[j] + 1);
  const std::size_t states = stride[m];

  // Independent non-empty subsets of the support, in local bit positions.
  struct Part {
    std::uint32_t local;
    std::size_t offset;
  };
  std::vector<Part> parts;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << m); ++s) {
    VertexMask global = 0;
    std::size_t offset = 0;
    for (std::size_t j = 0; j < m; ++j)
      if ((s >> j) & 1u) {
        global |= VertexMask{1} << sv.index[j];
        offset += stride[j];
      }
    if (is_independent_mask(g, global)) parts.push_back({s, offset});
  }

  std::vector<std::vector<BigInt>> table(states);
  table[0] = {1};
  std::vector<int> residual(m);
  for (std::size_t state = 1; state < states; ++state) {
    std::uint32_t positive = 0;
    int h = 0;
    for (std::size_t j = 0; j < m; ++j) {
      residual[j] = static_cast<int>((state / stride[j]) % (sv.weight[j] + 1));
      if (residual[j] > 0) positive |= std::uint32_t{1} << j;
      h += residual[j];
    }
    auto& row = table[state];
    row.assign(h + 1, 0);
    for (const auto& p : parts) {
      if ((p.local & positive) != p.local) continue;
      const auto& prev = table[state - p.offset];
      for (std::size_t l = 0; l < prev.size(); ++l)
        if (prev[l] != 0) row[l + 1] += prev[l];
    }
  }
  PartitionCount out;
  out.counts = table[states - 1];
  out.counts.resize(ht + 1);
  return out;
}

/// Generalized chromatic polynomial: sum_l |P_l(k,G)| * C(q, l).
inline QPolynomial chromatic_poly(const Graph& g, const WeightVector& k) {
  auto pc = ordered_partition_counts(g, k);
  QPolynomial out;
  for (std::size_t l = 0; l < pc.counts.size(); ++l)
    if (pc.counts[l] != 0) out += falling_binomial(0, static_cast<unsigned>(l)) * Rational(pc.counts[l]);
  return out;
}

/// Complete graph closed form: prod_j C(q - (k_1 + ... + k_{j-1}), k_j).
inline QPolynomial chromatic_complete(std::span<const int> k) {
  require(!k.empty(), ErrorCode::precondition, "complete-graph weights must be non-empty");
  QPolynomial out(1);
  long long used = 0;
  for (int c : k) {
    require(c > 0, ErrorCode::precondition, "complete-graph weights must be positive");
    out *= falling_binomial(-used, static_cast<unsigned>(c));
    used += c;
  }
  return out;
}

/// Tree closed form. Leaves of the support subgraph are eliminated smallest
/// id first; a leaf i with remaining neighbour i' contributes C(q - k_{i'}, k_i)
/// and the last vertex n contributes C(q, k_n).
inline QPolynomial chromatic_tree(const Graph& g, const WeightVector& k) {
  const VertexMask supp = support_mask(g, k);
  const auto m = static_cast<std::size_t>(std::popcount(supp));
  require(m >= 1, ErrorCode::precondition, "tree closed form needs a non-empty support");
  std::size_t twice_edges = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if ((supp >> i) & 1u) twice_edges += std::popcount(g.neighbours_at(i) & supp);
  require(is_connected_mask(g, supp) && twice_edges / 2 == m - 1, ErrorCode::precondition,
          "support subgraph is not a tree");

  QPolynomial out(1);
  VertexMask remaining = supp;
  while (std::popcount(remaining) > 1) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!((remaining >> i) & 1u)) continue;
      VertexMask nb = g.neighbours_at(i) & remaining;
      if (std::popcount(nb) != 1) continue;
      auto parent = static_cast<std::size_t>(std::countr_zero(nb));
      out *= falling_binomial(-static_cast<long long>(k[g.id(parent)]),
                              static_cast<unsigned>(k[g.id(i)]));
      remaining &= ~(VertexMask{1} << i);
      break;
    }
  }
  auto last = static_cast<std::size_t>(std::countr_zero(remaining));
  return out * falling_binomial(0, static_cast<unsigned>(k[g.id(last)]));
}

/// Brute-force count of proper multicolorings with q colours: each vertex i
/// gets a k_i-subset of {1..q}, adjacent vertices get disjoint subsets.
inline BigInt coloring_count_oracle(const Graph& g, const WeightVector& k, unsigned q) {
  require(q <= 63, ErrorCode::limit_exceeded, "coloring oracle supports at most 63 colours");
  auto sv = detail::support_view(g, k);
  const std::size_t m = sv.index.size();
  if (m == 0) return 1;

  std::map<int, std::vector<std::uint64_t>> subsets;  // weight -> all k-subsets of [q]
  for (int c : sv.weight) {
    if (subsets.count(c)) continue;
    auto& list = subsets[c];
    if (static_cast<unsigned>(c) > q) continue;
    std::uint64_t s = (std::uint64_t{1} << c) - 1;
    const std::uint64_t limit = std::uint64_t{1} << q;
    while (s < limit) {
      list.push_back(s);
      std::uint64_t low = s & (~s + 1);
      std::uint64_t ripple = s + low;
      s = (((ripple ^ s) >> 2) / low) | ripple;
    }
  }

  std::vector<std::uint64_t> colour(m, 0);
  std::vector<std::vector<std::size_t>> earlier_nb(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (g.adjacent_at(sv.index[a], sv.index[b])) earlier_nb[a].push_back(b);

  unsigned __int128 total = 0;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    std::uint64_t forbidden = 0;
    for (auto b : earlier_nb[pos]) forbidden |= colour[b];
    const auto& options = subsets[sv.weight[pos]];
    if (pos + 1 == m) {
      for (auto s : options) total += (s & forbidden) == 0;
      return;
    }
    for (auto s : options) {
      if (s & forbidden) continue;
      colour[pos] = s;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);

  BigInt out = static_cast<std::uint64_t>(total >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(total);
  return out;
}

}  // namespace bkm
