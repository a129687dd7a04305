#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bkm/errors.hpp"

namespace bkm {

using VertexId = int;
using VertexSet = std::vector<VertexId>;
using Edge = std::pair<VertexId, VertexId>;

/// Bit i stands for the vertex at position i of `Graph::vertices()`.
using VertexMask = std::uint64_t;

enum class VertexKind { real, imaginary };

struct VertexSpec {
  VertexId id;
  VertexKind kind = VertexKind::imaginary;
};

/// Finite simple graph whose vertices carry a real/imaginary kind.
///
/// Vertices are kept in ascending id order; that order is the alphabet
/// order used by trace words and Lyndon words. Internally vertices are
/// addressed by their position ("index") in that order, which is what the
/// `*_at` accessors and `VertexMask` use.
class Graph {
 public:
  static constexpr std::size_t max_vertices = 64;

  Graph() = default;

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  std::span<const VertexId> vertices() const noexcept { return ids_; }
  VertexId id(std::size_t index) const { return ids_.at(index); }

  std::optional<std::size_t> find(VertexId v) const noexcept {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
  }

  bool contains(VertexId v) const noexcept { return find(v).has_value(); }

  std::size_t index_of(VertexId v) const {
    auto idx = find(v);
    if (!idx) fail(ErrorCode::unknown_vertex, "unknown vertex " + std::to_string(v));
    return *idx;
  }

  VertexKind kind(VertexId v) const { return kinds_[index_of(v)]; }
  VertexKind kind_at(std::size_t index) const { return kinds_.at(index); }

  bool all_imaginary() const noexcept {
    return std::all_of(kinds_.begin(), kinds_.end(),
                       [](VertexKind k) { return k == VertexKind::imaginary; });
  }

  bool adjacent(VertexId a, VertexId b) const {
    return adjacent_at(index_of(a), index_of(b));
  }
  bool adjacent_at(std::size_t a, std::size_t b) const noexcept {
    return (adj_[a] >> b) & 1u;
  }
  VertexMask neighbours_at(std::size_t index) const noexcept { return adj_[index]; }

  VertexMask full_mask() const noexcept {
    return size() == 64 ? ~VertexMask{0} : ((VertexMask{1} << size()) - 1);
  }

  /// Edges as (smaller id, larger id), sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = a + 1; b < size(); ++b)
        if (adjacent_at(a, b)) out.emplace_back(ids_[a], ids_[b]);
    return out;
  }

  std::size_t edge_count() const noexcept {
    std::size_t twice = 0;
    for (auto m : adj_) twice += static_cast<std::size_t>(std::popcount(m));
    return twice / 2;
  }

  VertexMask mask_of(std::span<const VertexId> set) const {
    VertexMask m = 0;
    for (VertexId v : set) m |= VertexMask{1} << index_of(v);
    return m;
  }

  VertexSet set_of(VertexMask mask) const {
    VertexSet out;
    for (std::size_t i = 0; i < size(); ++i)
      if ((mask >> i) & 1u) out.push_back(ids_[i]);
    return out;
  }

  bool operator==(const Graph&) const = default;

 private:
  friend Graph new_graph(std::vector<VertexSpec> vertices, std::span<const Edge> edges);

  std::vector<VertexId> ids_;
  std::vector<VertexKind> kinds_;
  std::vector<VertexMask> adj_;
};

/// Validates and builds a graph. Duplicate edges collapse; loops, undeclared
/// endpoints, negative or duplicate ids are rejected.
inline Graph new_graph(std::vector<VertexSpec> vertices, std::span<const Edge> edges) {
  require(vertices.size() <= Graph::max_vertices, ErrorCode::invalid_graph,
          "at most 64 vertices are supported");
  std::sort(vertices.begin(), vertices.end(),
            [](const VertexSpec& a, const VertexSpec& b) { return a.id < b.id; });
  Graph g;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    require(vertices[i].id >= 0, ErrorCode::invalid_graph,
            "vertex ids must be non-negative, got " + std::to_string(vertices[i].id));
    require(i == 0 || vertices[i].id != vertices[i - 1].id, ErrorCode::invalid_graph,
            "duplicate vertex id " + std::to_string(vertices[i].id));
    g.ids_.push_back(vertices[i].id);
    g.kinds_.push_back(vertices[i].kind);
  }
  g.adj_.assign(g.ids_.size(), 0);
  for (auto [a, b] : edges) {
    require(a != b, ErrorCode::invalid_graph, "loop edge at vertex " + std::to_string(a));
    auto ia = g.find(a);
    auto ib = g.find(b);
    require(ia && ib, ErrorCode::invalid_graph,
            "edge (" + std::to_string(a) + "," + std::to_string(b) +
                ") references an undeclared vertex");
    g.adj_[*ia] |= VertexMask{1} << *ib;
    g.adj_[*ib] |= VertexMask{1} << *ia;
  }
  return g;
}

/// All-imaginary convenience overload.
inline Graph new_graph(std::span<const VertexId> vertices, std::span<const Edge> edges) {
  std::vector<VertexSpec> specs;
  for (VertexId v : vertices) specs.push_back({v, VertexKind::imaginary});
  return new_graph(std::move(specs), edges);
}

inline Graph new_graph(std::initializer_list<VertexId> vertices,
                       std::initializer_list<Edge> edges) {
  return new_graph(std::span<const VertexId>(vertices.begin(), vertices.size()),
                   std::span<const Edge>(edges.begin(), edges.size()));
}

inline std::vector<VertexSpec> vertex_specs(const Graph& g) {
  std::vector<VertexSpec> out;
  for (std::size_t i = 0; i < g.size(); ++i) out.push_back({g.id(i), g.kind_at(i)});
  return out;
}

/// Same graph with the kind of `v` replaced.
inline Graph with_kind(const Graph& g, VertexId v, VertexKind kind) {
  auto specs = vertex_specs(g);
  specs[g.index_of(v)].kind = kind;
  auto e = g.edges();
  return new_graph(std::move(specs), e);
}

/// Finitely supported map vertex -> non-negative integer. Zero entries are
/// never stored, so equality is equality of the underlying function.
class WeightVector {
 public:
  WeightVector() = default;

  WeightVector(std::initializer_list<std::pair<const VertexId, int>> entries) {
    for (auto [v, c] : entries) set(v, c);
  }

  explicit WeightVector(const std::map<VertexId, int>& entries) {
    for (auto [v, c] : entries) set(v, c);
  }

  /// Every vertex of `g` with weight one.
  static WeightVector ones(const Graph& g) {
    WeightVector w;
    for (VertexId v : g.vertices()) w.set(v, 1);
    return w;
  }

  int operator[](VertexId v) const {
    auto it = counts_.find(v);
    return it == counts_.end() ? 0 : it->second;
  }

  void set(VertexId v, int count) {
    require(count >= 0, ErrorCode::precondition,
            "negative weight for vertex " + std::to_string(v));
    if (count == 0)
      counts_.erase(v);
    else
      counts_[v] = count;
  }

  const std::map<VertexId, int>& counts() const noexcept { return counts_; }

  int height() const noexcept {
    int h = 0;
    for (auto& [v, c] : counts_) h += c;
    return h;
  }

  bool is_zero() const noexcept { return counts_.empty(); }

  VertexSet support() const {
    VertexSet s;
    for (auto& [v, c] : counts_) s.push_back(v);
    return s;
  }

  /// gcd of the non-zero entries; 0 for the zero vector.
  int gcd() const noexcept {
    int g = 0;
    for (auto& [v, c] : counts_) g = std::gcd(g, c);
    return g;
  }

  WeightVector divided_by(int d) const {
    WeightVector out;
    for (auto& [v, c] : counts_) {
      require(c % d == 0, ErrorCode::precondition, "weight not divisible by " + std::to_string(d));
      out.set(v, c / d);
    }
    return out;
  }

  WeightVector operator+(const WeightVector& o) const {
    WeightVector out = *this;
    for (auto& [v, c] : o.counts_) out.set(v, out[v] + c);
    return out;
  }

  /// Componentwise `this <= o`.
  bool fits_in(const WeightVector& o) const {
    return std::all_of(counts_.begin(), counts_.end(),
                       [&](const auto& e) { return e.second <= o[e.first]; });
  }

  auto operator<=>(const WeightVector&) const = default;
  bool operator==(const WeightVector&) const = default;

 private:
  std::map<VertexId, int> counts_;
};

/// Dense weights aligned with `g`'s vertex order; rejects vertices outside `g`.
inline std::vector<int> dense_weights(const Graph& g, const WeightVector& k) {
  std::vector<int> out(g.size(), 0);
  for (auto& [v, c] : k.counts()) out[g.index_of(v)] = c;
  return out;
}

inline WeightVector sparse_weights(const Graph& g, std::span<const int> dense) {
  WeightVector w;
  for (std::size_t i = 0; i < dense.size(); ++i) w.set(g.id(i), dense[i]);
  return w;
}

inline VertexMask support_mask(const Graph& g, const WeightVector& k) {
  VertexMask m = 0;
  for (auto& [v, c] : k.counts()) m |= VertexMask{1} << g.index_of(v);
  return m;
}

// ---------------------------------------------------------------------------
// Structural queries

inline Graph complement(const Graph& g) {
  std::vector<Edge> e;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b)
      if (!g.adjacent_at(a, b)) e.emplace_back(g.id(a), g.id(b));
  return new_graph(vertex_specs(g), e);
}

inline bool is_independent_mask(const Graph& g, VertexMask s) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (((s >> i) & 1u) && (g.neighbours_at(i) & s)) return false;
  return true;
}

inline bool is_independent(const Graph& g, std::span<const VertexId> s) {
  return is_independent_mask(g, g.mask_of(s));
}

/// Connectivity of the induced subgraph; the empty set is not connected.
inline bool is_connected_mask(const Graph& g, VertexMask s) {
  if (s == 0) return false;
  VertexMask seen = s & (~s + 1);
  VertexMask frontier = seen;
  while (frontier) {
    VertexMask next = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if ((frontier >> i) & 1u) next |= g.neighbours_at(i) & s;
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == s;
}

inline bool is_connected_sub(const Graph& g, std::span<const VertexId> s) {
  return is_connected_mask(g, g.mask_of(s));
}

inline bool is_connected(const Graph& g) {
  return is_connected_mask(g, g.full_mask());
}

inline Graph induced_subgraph(const Graph& g, std::span<const VertexId> s) {
  VertexMask m = g.mask_of(s);
  std::vector<VertexSpec> specs;
  for (std::size_t i = 0; i < g.size(); ++i)
    if ((m >> i) & 1u) specs.push_back({g.id(i), g.kind_at(i)});
  std::vector<Edge> e;
  for (auto [a, b] : g.edges())
    if (((m >> g.index_of(a)) & 1u) && ((m >> g.index_of(b)) & 1u)) e.emplace_back(a, b);
  return new_graph(std::move(specs), e);
}

/// Clone `copy` (1-based) of vertex `origin` inside a join graph.
struct Clone {
  VertexId origin;
  int copy;
  bool operator==(const Clone&) const = default;
};

struct JoinGraph {
  Graph graph;
  /// clones[v] is the clone behind join-graph vertex id v.
  std::vector<Clone> clones;

  VertexId vertex_of(Clone c) const {
    for (std::size_t v = 0; v < clones.size(); ++v)
      if (clones[v] == c) return static_cast<VertexId>(v);
    fail(ErrorCode::unknown_vertex, "no clone " + std::to_string(c.copy) + " of vertex " +
                                        std::to_string(c.origin));
  }
};

/// Replaces each vertex j of the support by a k_j-clique of clones; clones of
/// adjacent vertices are fully joined. Join-graph vertex ids are 0..ht(k)-1,
/// assigned in (origin, copy) order; kinds are inherited.
inline JoinGraph join_graph(const Graph& g, const WeightVector& k) {
  require(!k.is_zero(), ErrorCode::precondition, "join graph needs a non-empty support");
  JoinGraph out;
  std::vector<VertexSpec> specs;
  for (auto& [v, c] : k.counts()) {
    auto kind = g.kind(v);
    for (int r = 1; r <= c; ++r) {
      specs.push_back({static_cast<VertexId>(out.clones.size()), kind});
      out.clones.push_back({v, r});
    }
  }
  std::vector<Edge> e;
  for (std::size_t a = 0; a < out.clones.size(); ++a)
    for (std::size_t b = a + 1; b < out.clones.size(); ++b) {
      VertexId x = out.clones[a].origin, y = out.clones[b].origin;
      if (x == y || g.adjacent(x, y)) e.emplace_back(VertexId(a), VertexId(b));
    }
  out.graph = new_graph(std::move(specs), e);
  return out;
}

/// All independent sets including the empty set, by size then lexicographically.
inline std::vector<VertexSet> enumerate_independent_sets(const Graph& g) {
  std::vector<VertexSet> out;
  // Backtracking in index order keeps the count proportional to the output.
  VertexSet current;
  auto rec = [&](auto&& self, std::size_t from, VertexMask blocked) -> void {
    out.push_back(current);
    for (std::size_t i = from; i < g.size(); ++i) {
      if ((blocked >> i) & 1u) continue;
      current.push_back(g.id(i));
      self(self, i + 1, blocked | g.neighbours_at(i));
      current.pop_back();
    }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

inline bool is_triangle_free(const Graph& g) {
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b)
      if (g.adjacent_at(a, b) && (g.neighbours_at(a) & g.neighbours_at(b))) return false;
  return true;
}

}  // namespace bkm
