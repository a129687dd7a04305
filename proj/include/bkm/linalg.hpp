#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bkm/numeric.hpp"

namespace bkm {

/// Row space over Q of sparse integer vectors, kept in fully reduced
/// echelon form with integer entries. Elimination is fraction-free
/// (v <- a*v - b*p) followed by division by the content of the row.
template <class Key>
class SparseRowSpace {
 public:
  using Vector = std::map<Key, BigInt>;

  std::size_t rank() const noexcept { return rows_.size(); }

  /// Adds v to the spanning set; true iff it was independent of the rows
  /// inserted so far.
  bool insert(Vector v) {
    reduce(v);
    if (v.empty()) return false;
    normalize(v);
    const Key pivot = v.begin()->first;
    for (auto& [key, row] : rows_) eliminate(row, v, pivot);
    rows_.emplace_back(pivot, std::move(v));
    return true;
  }

  /// True iff v lies in the span.
  bool contains(Vector v) const {
    reduce(v);
    return v.empty();
  }

 private:
  static void drop_zeros(Vector& v) {
    for (auto it = v.begin(); it != v.end();)
      it = it->second == 0 ? v.erase(it) : std::next(it);
  }

  static void normalize(Vector& v) {
    BigInt g = 0;
    for (auto& [k, x] : v) g = boost::multiprecision::gcd(g, x);
    if (v.begin()->second < 0) g = -g;
    if (g != 1)
      for (auto& [k, x] : v) x /= g;
  }

  /// Clears `v[pivot]` using row `p` whose leading entry sits at `pivot`.
  static void eliminate(Vector& v, const Vector& p, const Key& pivot) {
    auto it = v.find(pivot);
    if (it == v.end()) return;
    const BigInt b = it->second;
    const BigInt& a = p.at(pivot);
    for (auto& [k, x] : v) x *= a;
    for (auto& [k, x] : p) v[k] -= b * x;
    drop_zeros(v);
    if (!v.empty()) normalize(v);
  }

  void reduce(Vector& v) const {
    drop_zeros(v);
    for (auto& [pivot, row] : rows_) eliminate(v, row, pivot);
  }

  std::vector<std::pair<Key, Vector>> rows_;
};

/// Rank over Q of a family of sparse integer vectors.
template <class Key>
std::size_t exact_rank(const std::vector<std::map<Key, BigInt>>& vectors) {
  SparseRowSpace<Key> space;
  for (const auto& v : vectors) space.insert(v);
  return space.rank();
}

}  // namespace bkm
