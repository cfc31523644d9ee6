#pragma once

#include <optional>
#include <vector>

#include "pturan/algebra/ratfunc.hpp"

namespace pturan {

/// Closed rational interval; lo <= hi.
struct RatInterval {
  Rat lo, hi;

  Rat width() const { return hi - lo; }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  /// Sign if the interval excludes zero, 0 if it is exactly {0}, nullopt
  /// when it straddles zero.
  std::optional<int> sign() const;

  friend RatInterval operator+(const RatInterval& a, const RatInterval& b);
  friend RatInterval operator-(const RatInterval& a, const RatInterval& b);
  friend RatInterval operator*(const RatInterval& a, const RatInterval& b);
};

/// Interval enclosure of p over [x.lo, x.hi] (Horner with interval ops).
RatInterval eval_interval(const Poly& p, const RatInterval& x);

/// A real root of a squarefree integer polynomial with an isolating
/// interval. When lo == hi the root is that rational number.
class AlgebraicReal {
 public:
  AlgebraicReal(Poly defining, Rat lo, Rat hi);
  static AlgebraicReal rational(const Rat& v);

  const Poly& defining_poly() const { return poly_; }
  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  bool is_rational() const { return lo_ == hi_; }
  /// The exact value when is_rational().
  const Rat& value() const { return lo_; }

  /// Bisects until hi - lo <= width. Not thread-safe on a shared object.
  void refine(const Rat& width);
  double approx() const;

  /// -1, 0, +1 comparison with a rational; exact.
  int compare(const Rat& q) const;

 private:
  Poly poly_;
  Rat lo_, hi_;
};

/// Sturm chain of p (p, p', -rem, ...).
std::vector<Poly> sturm_chain(const Poly& p);

/// Number of distinct real roots of chain[0] in the half-open (a, b].
int sturm_count(const std::vector<Poly>& chain, const Rat& a, const Rat& b);

/// Upper bound on |root| for every complex root of p (Cauchy).
Rat cauchy_bound(const Poly& p);

/// All distinct real roots in increasing order, each with an interval that
/// isolates it; endpoint values have opposite signs unless the root is
/// rational and stored exactly.
std::vector<AlgebraicReal> real_roots_isolated(const Poly& p);

/// An upper bound for the largest real root (the top of its isolating
/// interval); nullopt when p has no real root.
std::optional<Rat> largest_real_root_upper(const Poly& p);

/// Smallest N0 >= 0 such that r(n) > 0 and den(r)(n) != 0 for every integer
/// n > N0. Requires sign_at_infinity(r) == positive.
long eventual_positivity_threshold(const RatFunc& r);

/// Same for a polynomial.
long eventual_positivity_threshold(const Poly& p);

}  // namespace pturan
