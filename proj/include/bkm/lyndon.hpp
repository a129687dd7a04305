#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bkm/graph.hpp"
#include "bkm/linalg.hpp"
#include "bkm/multiplicity.hpp"
#include "bkm/numeric.hpp"
#include "bkm/trace.hpp"

namespace bkm {

/// A word over the alphabet X_i: a sequence of trace words, compared
/// lexicographically with the order on TraceWord.
using LyndonWord = std::vector<TraceWord>;

namespace detail {

/// Every w <= k with w_i = 1 and connected support containing i.
inline std::vector<WeightVector> letter_weights(const Graph& g, const WeightVector& k, VertexId i) {
  std::vector<WeightVector> out;
  auto sv = support_view(g, k);
  std::vector<int> cur(sv.index.size(), 0);
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == cur.size()) {
      WeightVector w;
      VertexMask m = 0;
      for (std::size_t t = 0; t < cur.size(); ++t)
        if (cur[t]) {
          w.set(g.id(sv.index[t]), cur[t]);
          m |= VertexMask{1} << sv.index[t];
        }
      if (is_connected_mask(g, m)) out.push_back(std::move(w));
      return;
    }
    const bool is_sink = g.id(sv.index[j]) == i;
    for (int c = is_sink ? 1 : 0; c <= (is_sink ? 1 : sv.weight[j]); ++c) {
      cur[j] = c;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

/// X_i restricted to weights <= k: words with exactly one i whose initial
/// alphabet (as a multiset) is {i}. Ascending in the TraceWord order.
inline std::vector<TraceWord> x_i_alphabet(const Graph& g, const WeightVector& k, VertexId i,
                                           int height_limit = default_height_limit) {
  require(k[i] > 0, ErrorCode::precondition,
          "vertex " + std::to_string(i) + " is not in the support");
  std::vector<TraceWord> out;
  const VertexSet sink{i};
  for (const auto& w : detail::letter_weights(g, k, i))
    for (auto& word : enumerate_weight_words(g, w, height_limit))
      if (initial_alphabet(word, g) == sink) out.push_back(std::move(word));
  std::sort(out.begin(), out.end());
  return out;
}

/// Strictly smaller than each proper cyclic rotation.
inline bool is_lyndon(const LyndonWord& w) {
  if (w.empty()) return false;
  const std::size_t n = w.size();
  for (std::size_t shift = 1; shift < n; ++shift) {
    // Compare w with its rotation starting at `shift`.
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = w[j];
      const auto& b = w[(j + shift) % n];
      if (a < b) break;
      if (b < a) return false;
      if (j + 1 == n) return false;  // equal rotation: periodic
    }
  }
  return true;
}

/// w = uv with v the longest proper Lyndon suffix.
inline std::pair<LyndonWord, LyndonWord> standard_factorization(const LyndonWord& w) {
  require(w.size() >= 2, ErrorCode::precondition, "standard factorization needs two or more letters");
  require(is_lyndon(w), ErrorCode::precondition, "standard factorization of a non-Lyndon word");
  for (std::size_t j = 1; j < w.size(); ++j) {
    LyndonWord v(w.begin() + static_cast<std::ptrdiff_t>(j), w.end());
    if (is_lyndon(v)) return {LyndonWord(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j)), v};
  }
  fail(ErrorCode::internal, "Lyndon word without a Lyndon suffix");
}

/// Lyndon words over X_i of total weight k, ascending.
inline std::vector<LyndonWord> c_i_set(const Graph& g, const WeightVector& k, VertexId i,
                                       int height_limit = default_height_limit) {
  auto alphabet = x_i_alphabet(g, k, i, height_limit);
  std::vector<std::vector<int>> weight;
  for (const auto& a : alphabet) weight.push_back(dense_weights(g, a.weight()));
  auto remaining = dense_weights(g, k);
  const int height = k.height();

  std::vector<LyndonWord> out;
  std::vector<std::size_t> chosen;
  int used = 0;
  auto rec = [&](auto&& self) -> void {
    if (used == height) {
      LyndonWord w;
      for (auto c : chosen) w.push_back(alphabet[c]);
      if (is_lyndon(w)) out.push_back(std::move(w));
      return;
    }
    // The first letter of a Lyndon word is its smallest.
    for (std::size_t c = chosen.empty() ? 0 : chosen.front(); c < alphabet.size(); ++c) {
      bool fits = true;
      for (std::size_t v = 0; v < remaining.size() && fits; ++v) fits = weight[c][v] <= remaining[v];
      if (!fits) continue;
      for (std::size_t v = 0; v < remaining.size(); ++v) remaining[v] -= weight[c][v];
      used += static_cast<int>(alphabet[c].size());
      chosen.push_back(c);
      self(self);
      chosen.pop_back();
      used -= static_cast<int>(alphabet[c].size());
      for (std::size_t v = 0; v < remaining.size(); ++v) remaining[v] += weight[c][v];
    }
  };
  rec(rec);
  return out;
}

/// e(w) = [e_{w_1}, [e_{w_2}, ...]] is non-zero iff |IA_m(w)| = 1.
inline bool right_normed_nonzero(std::span<const VertexId> letters, const Graph& g) {
  return initial_alphabet(letters, g).size() == 1;
}

// ---------------------------------------------------------------------------
// Bracket trees

struct BracketTree {
  TraceWord leaf;  // meaningful only when is_leaf()
  std::shared_ptr<const BracketTree> left;
  std::shared_ptr<const BracketTree> right;

  bool is_leaf() const noexcept { return left == nullptr; }

  static BracketTree make_leaf(TraceWord w) { return BracketTree{std::move(w), nullptr, nullptr}; }
  static BracketTree make_node(BracketTree l, BracketTree r) {
    return BracketTree{{},
                       std::make_shared<const BracketTree>(std::move(l)),
                       std::make_shared<const BracketTree>(std::move(r))};
  }
};

/// L(w): a letter is a leaf, otherwise [L(u), L(v)] for the standard
/// factorization w = uv.
inline BracketTree lyndon_bracketing(const LyndonWord& w) {
  require(!w.empty(), ErrorCode::precondition, "bracketing of the empty word");
  if (w.size() == 1) return BracketTree::make_leaf(w.front());
  auto [u, v] = standard_factorization(w);
  return BracketTree::make_node(lyndon_bracketing(u), lyndon_bracketing(v));
}

/// Right-normed rendering of a word: "e3" or "[e3,[e4,[e2,e1]]]".
inline std::string render_right_normed(const TraceWord& w) {
  require(!w.empty(), ErrorCode::precondition, "rendering of the empty word");
  std::string out = "e" + std::to_string(w.letters.back());
  for (std::size_t j = w.size() - 1; j-- > 0;)
    out = "[e" + std::to_string(w.letters[j]) + "," + out + "]";
  return out;
}

/// Leaves are drawn as right-normed words, nodes as "[left,right]".
inline std::string render(const BracketTree& t) {
  if (t.is_leaf()) return render_right_normed(t.leaf);
  return "[" + render(*t.left) + "," + render(*t.right) + "]";
}

// ---------------------------------------------------------------------------
// Expansion inside the trace algebra

/// Element of the trace algebra: canonical word -> integer coefficient.
struct LieExpr {
  std::map<TraceWord, BigInt> terms;

  bool is_zero() const noexcept { return terms.empty(); }

  LieExpr& add(const LieExpr& o, const BigInt& factor = 1) {
    for (const auto& [w, c] : o.terms) {
      auto& slot = terms[w];
      slot += factor * c;
      if (slot == 0) terms.erase(w);
    }
    return *this;
  }

  bool operator==(const LieExpr&) const = default;
};

inline void require_imaginary(const Graph& g) {
  require(g.all_imaginary(), ErrorCode::precondition,
          "trace-algebra expansion needs every vertex imaginary");
}

inline LieExpr generator(VertexId v) {
  LieExpr e;
  e.terms[TraceWord{{v}}] = 1;
  return e;
}

inline LieExpr product(const LieExpr& a, const LieExpr& b, const Graph& g) {
  LieExpr out;
  std::vector<VertexId> buf;
  for (const auto& [x, cx] : a.terms)
    for (const auto& [y, cy] : b.terms) {
      buf = x.letters;
      buf.insert(buf.end(), y.letters.begin(), y.letters.end());
      auto& slot = out.terms[canonicalize(buf, g)];
      slot += cx * cy;
    }
  std::erase_if(out.terms, [](const auto& e) { return e.second == 0; });
  return out;
}

/// [a, b] = ab - ba.
inline LieExpr bracket(const LieExpr& a, const LieExpr& b, const Graph& g) {
  return product(a, b, g).add(product(b, a, g), -1);
}

inline LieExpr expand_right_normed(std::span<const VertexId> letters, const Graph& g) {
  require_imaginary(g);
  require(!letters.empty(), ErrorCode::precondition, "expansion of the empty word");
  LieExpr r = generator(letters.back());
  (void)g.index_of(letters.back());
  for (std::size_t j = letters.size() - 1; j-- > 0;) r = bracket(generator(letters[j]), r, g);
  return r;
}

inline LieExpr expand_bracket(const BracketTree& t, const Graph& g) {
  if (t.is_leaf()) return expand_right_normed(t.leaf.letters, g);
  return bracket(expand_bracket(*t.left, g), expand_bracket(*t.right, g), g);
}

// ---------------------------------------------------------------------------
// Basis verification

struct BasisReport {
  VertexId sink = 0;
  std::vector<LyndonWord> words;
  std::vector<std::string> brackets;
  BigInt multiplicity;
  bool count_matches = false;
  std::size_t rank = 0;
  bool rank_matches = false;
  /// Every right-normed e(w) of weight k lies in the span of the basis.
  bool spans = false;
  /// Only when k_i = 1: among words with i in IA, e(w) != 0 exactly on X_i.
  std::optional<bool> right_normed_exact;

  bool ok() const {
    return count_matches && rank_matches && spans && right_normed_exact.value_or(true);
  }
};

inline BasisReport verify_basis(const Graph& g, const WeightVector& k, VertexId i,
                                int height_limit = default_height_limit) {
  require_imaginary(g);
  BasisReport r;
  r.sink = i;
  r.words = c_i_set(g, k, i, height_limit);
  r.multiplicity = root_multiplicity(g, k);
  r.count_matches = BigInt(r.words.size()) == r.multiplicity;

  SparseRowSpace<TraceWord> space;
  for (const auto& w : r.words) {
    auto tree = lyndon_bracketing(w);
    r.brackets.push_back(render(tree));
    space.insert(expand_bracket(tree, g).terms);
  }
  r.rank = space.rank();
  r.rank_matches = BigInt(r.rank) == r.multiplicity;

  auto words = enumerate_weight_words(g, k, height_limit);
  r.spans = true;
  for (const auto& w : words)
    if (!space.contains(expand_right_normed(w.letters, g).terms)) {
      r.spans = false;
      break;
    }

  if (k[i] == 1) {
    bool exact = true;
    SparseRowSpace<TraceWord> singles;
    std::size_t in_alphabet = 0;
    for (const auto& w : words) {
      auto ia = initial_alphabet(w, g);
      if (std::find(ia.begin(), ia.end(), i) == ia.end()) continue;
      const bool letter = ia == VertexSet{i};
      const auto e = expand_right_normed(w.letters, g);
      if (e.is_zero() == letter) exact = false;
      if (letter) {
        ++in_alphabet;
        if (!singles.insert(e.terms)) exact = false;
      }
    }
    r.right_normed_exact = exact && in_alphabet == r.words.size();
  }
  return r;
}

}  // namespace bkm
