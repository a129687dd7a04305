#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bkm/numeric.hpp"

namespace bkm {

/// Dense univariate polynomial over the rationals. coeffs()[i] multiplies
/// q^i; trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients.
class QPolynomial {
 public:
  QPolynomial() = default;
  QPolynomial(Rational constant) : coeffs_{std::move(constant)} { trim(); }
  QPolynomial(int constant) : QPolynomial(Rational(constant)) {}
  explicit QPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// The indeterminate q.
  static QPolynomial q() { return QPolynomial(std::vector<Rational>{0, 1}); }

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  Rational coefficient(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : Rational(0);
  }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  QPolynomial& operator+=(const QPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  QPolynomial& operator-=(const QPolynomial& o) { return *this += -o; }

  QPolynomial operator-() const {
    QPolynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  QPolynomial& operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    trim();
    return *this;
  }

  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend QPolynomial operator*(QPolynomial a, const Rational& c) { return a *= c; }
  friend QPolynomial operator*(const Rational& c, QPolynomial a) { return a *= c; }

  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return QPolynomial(std::move(r));
  }

  QPolynomial& operator*=(const QPolynomial& o) { return *this = *this * o; }

  bool operator==(const QPolynomial&) const = default;

  /// Human-readable form, highest power first, e.g. "1/2*q^2 - q + 3".
  std::string str(const std::string& var = "q") const {
    if (is_zero()) return "0";
    std::string out;
    for (int p = degree(); p >= 0; --p) {
      const Rational& c = coeffs_[p];
      if (c == 0) continue;
      Rational mag = abs(c);
      if (out.empty())
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      bool unit = mag == 1 && p > 0;
      if (!unit) out += mag.str() + (p > 0 ? "*" : "");
      if (p >= 1) out += var;
      if (p >= 2) out += "^" + std::to_string(p);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

inline QPolynomial add(const QPolynomial& a, const QPolynomial& b) { return a + b; }
inline QPolynomial mul(const QPolynomial& a, const QPolynomial& b) { return a * b; }
inline QPolynomial scale(const QPolynomial& p, const Rational& c) { return p * c; }
inline Rational eval(const QPolynomial& p, const Rational& x) { return p(x); }
inline Rational linear_coefficient(const QPolynomial& p) { return p.coefficient(1); }

/// C(q + offset, k) as a polynomial in q: prod_{j<k} (q + offset - j) / k!.
inline QPolynomial falling_binomial(long long offset, unsigned k) {
  QPolynomial r(1);
  for (unsigned j = 0; j < k; ++j)
    r *= QPolynomial(std::vector<Rational>{Rational(offset - static_cast<long long>(j)), 1});
  return r * Rational(1, factorial(k));
}

/// C(m*q, d) as a polynomial in q.
inline QPolynomial scaled_binomial(const BigInt& m, unsigned d) {
  QPolynomial r(1);
  for (unsigned j = 0; j < d; ++j)
    r *= QPolynomial(std::vector<Rational>{Rational(-static_cast<long long>(j)), Rational(m)});
  return r * Rational(1, factorial(d));
}

/// Unique polynomial of degree < points.size() through all points (Newton form).
inline QPolynomial interpolate(std::span<const std::pair<Rational, Rational>> points) {
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      require(points[i].first != points[j].first, ErrorCode::precondition,
              "repeated abscissa " + points[i].first.str());
  std::vector<Rational> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].second;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (points[i].first - points[i - level].first);

  QPolynomial result;
  QPolynomial basis(1);
  for (std::size_t i = 0; i < n; ++i) {
    result += basis * dd[i];
    basis *= QPolynomial(std::vector<Rational>{-points[i].first, 1});
  }
  return result;
}

inline QPolynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
  return interpolate(std::span<const std::pair<Rational, Rational>>(points));
}

/// True iff p takes integer values at every integer (tested on deg+1
/// consecutive integers, which suffices).
inline bool is_integer_valued(const QPolynomial& p) {
  for (int x = 0; x <= std::max(p.degree(), 0); ++x)
    if (!is_integer(p(x))) return false;
  return true;
}

/// JSON array of "num/den" strings, constant term first.
inline nlohmann::json to_json(const QPolynomial& p) {
  auto arr = nlohmann::json::array();
  for (const auto& c : p.coeffs()) arr.push_back(to_fraction_string(c));
  return arr;
}

inline QPolynomial polynomial_from_json(const nlohmann::json& arr) {
  require(arr.is_array(), ErrorCode::precondition, "polynomial JSON must be an array");
  std::vector<Rational> c;
  for (const auto& x : arr) {
    require(x.is_string(), ErrorCode::precondition, "polynomial coefficients must be strings");
    c.push_back(parse_rational(x.get<std::string>()));
  }
  return QPolynomial(std::move(c));
}

}  // namespace bkm
