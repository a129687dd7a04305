#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bkm/graph.hpp"
#include "bkm/numeric.hpp"

namespace bkm {

/// Element of the free partially commutative monoid M(I, G), stored as its
/// lexicographically maximal representative. Two letters commute iff they
/// are distinct and non-adjacent in G.
///
/// Comparison is lexicographic on the stored representative, with a proper
/// prefix ordered first; this is the order used for Lyndon words.
struct TraceWord {
  std::vector<VertexId> letters;

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }

  int count(VertexId v) const {
    return static_cast<int>(std::count(letters.begin(), letters.end(), v));
  }

  WeightVector weight() const {
    WeightVector w;
    for (VertexId v : letters) w.set(v, w[v] + 1);
    return w;
  }

  /// Space-separated vertex ids, e.g. "3 4 2 1".
  std::string str() const {
    std::string out;
    for (std::size_t j = 0; j < letters.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(letters[j]);
    }
    return out;
  }

  auto operator<=>(const TraceWord&) const = default;
  bool operator==(const TraceWord&) const = default;
};

/// i-form w = w_1 ... w_m: every factor holds exactly one i, as its only
/// final letter.
struct IForm {
  std::vector<TraceWord> factors;

  std::size_t size() const noexcept { return factors.size(); }
  auto operator<=>(const IForm&) const = default;
  bool operator==(const IForm&) const = default;
};

namespace detail {

inline std::vector<std::size_t> to_indices(const Graph& g, std::span<const VertexId> letters) {
  std::vector<std::size_t> out;
  out.reserve(letters.size());
  for (VertexId v : letters) out.push_back(g.index_of(v));
  return out;
}

inline bool dependent(const Graph& g, std::size_t a, std::size_t b) {
  return a == b || g.adjacent_at(a, b);
}

/// pred[p] = positions that must precede p in every representative
/// (transitive closure of the dependence relation along the word).
inline std::vector<std::uint64_t> precedence_closure(const Graph& g,
                                                     std::span<const std::size_t> word) {
  require(word.size() <= 64, ErrorCode::limit_exceeded, "trace words are limited to 64 letters");
  std::vector<std::uint64_t> pred(word.size(), 0);
  for (std::size_t p = 0; p < word.size(); ++p)
    for (std::size_t q = 0; q < p; ++q)
      if (dependent(g, word[q], word[p])) pred[p] |= pred[q] | (std::uint64_t{1} << q);
  return pred;
}

}  // namespace detail

/// Lexicographically maximal representative: repeatedly emit the largest
/// letter that no remaining earlier dependent letter blocks.
inline TraceWord canonicalize(std::span<const VertexId> letters, const Graph& g) {
  auto word = detail::to_indices(g, letters);
  const std::size_t n = word.size();
  std::vector<int> blockers(n, 0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < p; ++q)
      if (detail::dependent(g, word[q], word[p])) ++blockers[p];
  std::vector<char> done(n, 0);
  TraceWord out;
  out.letters.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t p = 0; p < n; ++p)
      if (!done[p] && blockers[p] == 0 && (best == n || word[p] > word[best])) best = p;
    done[best] = 1;
    out.letters.push_back(g.id(word[best]));
    for (std::size_t p = best + 1; p < n; ++p)
      if (detail::dependent(g, word[best], word[p])) --blockers[p];
  }
  return out;
}

inline TraceWord canonicalize(std::initializer_list<VertexId> letters, const Graph& g) {
  return canonicalize(std::span<const VertexId>(letters.begin(), letters.size()), g);
}

/// IA_m: an occurrence of x is final iff every later letter equals x or
/// commutes with x; the multiset of final occurrences is returned ascending.
/// Any representative of the trace gives the same answer.
inline std::vector<VertexId> initial_alphabet(std::span<const VertexId> letters, const Graph& g) {
  auto word = detail::to_indices(g, letters);
  std::vector<VertexId> out;
  for (std::size_t p = 0; p < word.size(); ++p) {
    bool final_occurrence = true;
    for (std::size_t q = p + 1; q < word.size() && final_occurrence; ++q)
      if (word[q] != word[p] && g.adjacent_at(word[p], word[q])) final_occurrence = false;
    if (final_occurrence) out.push_back(letters[p]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<VertexId> initial_alphabet(const TraceWord& w, const Graph& g) {
  return initial_alphabet(std::span<const VertexId>(w.letters), g);
}

/// Underlying set IA of the initial alphabet.
inline VertexSet initial_set(std::span<const VertexId> letters, const Graph& g) {
  auto m = initial_alphabet(letters, g);
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

inline TraceWord concatenate(std::span<const TraceWord> factors, const Graph& g) {
  std::vector<VertexId> all;
  for (const auto& f : factors) all.insert(all.end(), f.letters.begin(), f.letters.end());
  return canonicalize(all, g);
}

inline TraceWord concatenate(const IForm& f, const Graph& g) { return concatenate(f.factors, g); }

/// Unique factorization of w (with IA(w) = {i}) into factors w_j with
/// IA_m(w_j) = {i} and i(w_j) = 1. Factor j is the down-set of the j-th
/// occurrence of i minus the down-set of the previous occurrence.
inline IForm i_form(const TraceWord& w, VertexId i, const Graph& g) {
  require(initial_set(w.letters, g) == VertexSet{i}, ErrorCode::precondition,
          "i-form of '" + w.str() + "' needs initial alphabet {" + std::to_string(i) + "}");
  auto word = detail::to_indices(g, w.letters);
  auto pred = detail::precedence_closure(g, word);
  const std::size_t letter = g.index_of(i);
  IForm out;
  std::uint64_t taken = 0;
  for (std::size_t p = 0; p < word.size(); ++p) {
    if (word[p] != letter) continue;
    std::uint64_t down = pred[p] | (std::uint64_t{1} << p);
    std::uint64_t fresh = down & ~taken;
    std::vector<VertexId> part;
    for (std::size_t q = 0; q < word.size(); ++q)
      if ((fresh >> q) & 1u) part.push_back(w.letters[q]);
    out.factors.push_back(canonicalize(part, g));
    taken |= down;
  }
  return out;
}

/// True iff all cyclic rotations of the factor sequence are distinct.
inline bool is_aperiodic(const IForm& f) {
  const std::size_t m = f.factors.size();
  for (std::size_t shift = 1; shift < m; ++shift) {
    if (m % shift) continue;
    bool same = true;
    for (std::size_t j = 0; j < m && same; ++j)
      same = f.factors[j] == f.factors[(j + shift) % m];
    if (same) return false;
  }
  return true;
}

/// Lexicographically least rotation of the factor sequence.
inline IForm cyclic_class_rep(const IForm& f) {
  IForm best = f;
  const std::size_t m = f.factors.size();
  for (std::size_t shift = 1; shift < m; ++shift) {
    IForm r;
    for (std::size_t j = 0; j < m; ++j) r.factors.push_back(f.factors[(j + shift) % m]);
    if (r < best) best = std::move(r);
  }
  return best;
}

/// Multinomial ht(k)! / prod k_i!: the number of letter sequences of weight k,
/// an upper bound on the number of trace words.
inline BigInt sequence_count(const WeightVector& k) {
  BigInt r = factorial(static_cast<unsigned>(k.height()));
  for (auto& [v, c] : k.counts()) r /= factorial(static_cast<unsigned>(c));
  return r;
}

inline constexpr int default_height_limit = 12;

/// All elements of M(I, G) of weight k as canonical words, ascending.
///
/// Depth-first over letters with canonical-prefix pruning: appending b keeps
/// the word lex-maximal iff every letter after the last letter dependent on
/// b is larger than b.
inline std::vector<TraceWord> enumerate_weight_words(const Graph& g, const WeightVector& k,
                                                     int height_limit = default_height_limit) {
  require(k.height() <= height_limit, ErrorCode::limit_exceeded,
          "height " + std::to_string(k.height()) + " exceeds limit " +
              std::to_string(height_limit) + " (up to " + sequence_count(k).str() + " words)");
  auto remaining = dense_weights(g, k);
  const std::size_t n = g.size();
  const auto ht = static_cast<std::size_t>(k.height());
  std::vector<std::size_t> word;
  word.reserve(ht);
  std::vector<TraceWord> out;

  auto extends_canonically = [&](std::size_t b) {
    std::size_t j = word.size();
    while (j > 0 && !detail::dependent(g, word[j - 1], b)) --j;
    for (std::size_t t = j; t < word.size(); ++t)
      if (word[t] < b) return false;
    return true;
  };

  auto rec = [&](auto&& self) -> void {
    if (word.size() == ht) {
      TraceWord w;
      for (auto x : word) w.letters.push_back(g.id(x));
      out.push_back(std::move(w));
      return;
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (remaining[b] == 0 || !extends_canonically(b)) continue;
      --remaining[b];
      word.push_back(b);
      self(self);
      word.pop_back();
      ++remaining[b];
    }
  };
  rec(rec);
  return out;
}

/// Words of weight k whose initial alphabet (as a set) is {i}.
inline std::vector<TraceWord> b_tilde(const Graph& g, const WeightVector& k, VertexId i,
                                      int height_limit = default_height_limit) {
  require(k[i] > 0, ErrorCode::precondition,
          "vertex " + std::to_string(i) + " is not in the support");
  std::vector<TraceWord> out;
  for (auto& w : enumerate_weight_words(g, k, height_limit))
    if (initial_set(w.letters, g) == VertexSet{i}) out.push_back(std::move(w));
  return out;
}

/// Aperiodic members of b_tilde up to rotation of their i-forms; one
/// representative (least rotation) per class, ascending.
inline std::vector<IForm> b_set(const Graph& g, const WeightVector& k, VertexId i,
                                int height_limit = default_height_limit) {
  std::set<IForm> classes;
  for (const auto& w : b_tilde(g, k, i, height_limit)) {
    auto f = i_form(w, i, g);
    if (is_aperiodic(f)) classes.insert(cyclic_class_rep(f));
  }
  return {classes.begin(), classes.end()};
}

}  // namespace bkm
