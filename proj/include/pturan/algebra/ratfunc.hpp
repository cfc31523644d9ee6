#pragma once

#include <optional>
#include <string>

#include "pturan/algebra/poly.hpp"

namespace pturan {

/// Rational function num/den over Q in canonical form: gcd(num, den) = 1 and
/// den is monic. Equal functions therefore have identical representations.
class RatFunc {
 public:
  RatFunc() : den_(Rat(1)) {}
  RatFunc(Rat c) : num_(std::move(c)), den_(Rat(1)) {}  // NOLINT: constants embed
  RatFunc(Poly p) : num_(std::move(p)), den_(Rat(1)) {}  // NOLINT: polynomials embed
  RatFunc(Poly num, Poly den);

  static RatFunc x() { return RatFunc(Poly::x()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  /// Value of a constant function; throws otherwise.
  Rat constant() const;

  /// Throws if the denominator vanishes at `at`.
  Rat operator()(const Rat& at) const;
  std::optional<Rat> try_eval(const Rat& at) const;

  RatFunc derivative() const;
  /// r(x + a).
  RatFunc shift(const Rat& a) const;
  /// r(s(x)).
  RatFunc compose(const RatFunc& s) const;
  RatFunc pow(int e) const;

  RatFunc operator-() const { return RatFunc(-num_, den_, Canonical{}); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  struct Canonical {};
  RatFunc(Poly num, Poly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}

  Poly num_;
  Poly den_;
};

inline bool is_zero(const RatFunc& r) { return r.is_zero(); }

/// "(num)/(den)" with the given variable name; a bare polynomial when den = 1.
std::string to_string(const RatFunc& r, const std::string& var = "n");

enum class Sign { negative = -1, zero = 0, positive = 1 };

/// Sign of r(x) for all sufficiently large x.
Sign sign_at_infinity(const RatFunc& r);

/// lim_{x -> +inf} r(x), either finite or +-infinity.
struct Limit {
  enum class Kind { finite, plus_infinity, minus_infinity } kind = Kind::finite;
  Rat value;  // meaningful when kind == finite

  static Limit finite(Rat v) { return {Kind::finite, std::move(v)}; }
  /// -1, 0, +1 comparison of the limit against c.
  int compare(const Rat& c) const;
  std::string str() const;
};
Limit limit_at_infinity(const RatFunc& r);

/// "r(x) < c for all sufficiently large x", decided exactly: compare the
/// limit against c, and on equality use the sign of r - c at infinity.
bool eventually_below(const RatFunc& r, const Rat& c);
bool eventually_above(const RatFunc& r, const Rat& c);

}  // namespace pturan
