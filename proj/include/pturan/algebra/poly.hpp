#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "pturan/algebra/rational.hpp"

namespace pturan {

namespace detail {
template <class F>
bool coef_is_zero(const F& v) {
  return is_zero(v);
}
}  // namespace detail

/// Dense univariate polynomial over a field F. Coefficient i multiplies x^i;
/// the highest stored coefficient is nonzero, so the zero polynomial has no
/// coefficients at all.
///
/// F must provide field arithmetic, construction from int, and a free
/// function `is_zero(const F&)`.
template <class F>
class UPoly {
 public:
  UPoly() = default;
  UPoly(F constant) {  // NOLINT: a scalar is a constant polynomial
    c_.push_back(std::move(constant));
    trim();
  }
  explicit UPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly x() { return UPoly(std::vector<F>{F(0), F(1)}); }
  static UPoly monomial(F coef, std::size_t degree) {
    std::vector<F> c(degree + 1, F(0));
    c[degree] = std::move(coef);
    return UPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<F>& coeffs() const { return c_; }
  F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
  /// Leading coefficient; zero for the zero polynomial.
  F lc() const { return c_.empty() ? F(0) : c_.back(); }

  template <class G>
  G eval(const G& at) const {
    G acc = G(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + G(*it);
    return acc;
  }
  F operator()(const F& at) const { return eval<F>(at); }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<F> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * F(static_cast<long>(i));
    return UPoly(std::move(d));
  }

  /// p(q(x)).
  UPoly compose(const UPoly& q) const {
    UPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + UPoly(*it);
    return acc;
  }

  /// p(x + a).
  UPoly shift(const F& a) const { return compose(UPoly(std::vector<F>{a, F(1)})); }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (pturan_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  friend UPoly operator+(UPoly a, const F& b) { return a += UPoly(b); }
  friend UPoly operator+(const F& a, UPoly b) { return b += UPoly(a); }
  friend UPoly operator-(UPoly a, const F& b) { return a -= UPoly(b); }
  friend UPoly operator-(const F& a, const UPoly& b) { return UPoly(a) - b; }
  friend UPoly operator*(const UPoly& a, const F& b) { return a.scaled(b); }
  friend UPoly operator*(const F& a, const UPoly& b) { return b.scaled(a); }
  friend bool operator==(const UPoly& a, const UPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!pturan_is_zero(a.c_[i] - b.c_[i])) return false;
    }
    return true;
  }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  UPoly scaled(const F& s) const {
    UPoly r = *this;
    for (auto& v : r.c_) v = v * s;
    r.trim();
    return r;
  }

  UPoly pow(unsigned e) const {
    UPoly r(F(1)), b = *this;
    while (e) {
      if (e & 1u) r = r * b;
      e >>= 1u;
      if (e) b = b * b;
    }
    return r;
  }

 private:
  static bool pturan_is_zero(const F& v) { return detail::coef_is_zero(v); }
  void trim() {
    while (!c_.empty() && pturan_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<F> c_;
};

/// Euclidean division: a = b*q + r with deg r < deg b.
template <class F>
std::pair<UPoly<F>, UPoly<F>> divmod(const UPoly<F>& a, const UPoly<F>& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly<F>(), a};
  std::vector<F> rem = a.coeffs();
  std::vector<F> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1), F(0));
  const F inv_lc = F(1) / b.lc();
  const auto db = static_cast<std::size_t>(b.degree());
  for (std::size_t k = quo.size(); k-- > 0;) {
    F q = rem[k + db] * inv_lc;
    quo[k] = q;
    if (is_zero(q)) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] = rem[k + j] - q * b.coeffs()[j];
  }
  rem.resize(db);
  return {UPoly<F>(std::move(quo)), UPoly<F>(std::move(rem))};
}

template <class F>
UPoly<F> make_monic(const UPoly<F>& p) {
  if (p.is_zero()) return p;
  return p.scaled(F(1) / p.lc());
}

/// Monic greatest common divisor; gcd(0, 0) = 0.
template <class F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
template <class F>
struct ExtGcd {
  UPoly<F> g, s, t;
};

template <class F>
ExtGcd<F> ext_gcd(const UPoly<F>& a, const UPoly<F>& b) {
  UPoly<F> r0 = a, r1 = b, s0(F(1)), s1, t0, t1(F(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    auto t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  F inv = F(1) / r0.lc();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

using Poly = UPoly<Rat>;

/// Renders with the given variable name, highest degree first:
/// "64*n^5 + 96*n^4 - 9".
std::string to_string(const Poly& p, const std::string& var = "n");

/// Multiplies by the lcm of denominators and divides by the content, so the
/// result has coprime integer coefficients and positive leading coefficient.
Poly primitive_integer_part(const Poly& p);

/// Monic gcd over Q. Remainders are reduced to primitive integer
/// polynomials at every step, which avoids the coefficient growth of the
/// plain Euclidean sequence.
Poly gcd(Poly a, Poly b);

/// p / gcd(p, p').
Poly squarefree_part(const Poly& p);

/// Sign of p(x) for all sufficiently large x.
int sign_at_infinity(const Poly& p);

/// Coefficients as strings, lowest degree first (JSON encoding).
std::vector<std::string> coeff_strings(const Poly& p);
Poly poly_from_strings(const std::vector<std::string>& coeffs);

}  // namespace pturan
