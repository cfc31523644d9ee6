#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pturan/algebra/real_roots.hpp"

namespace pturan {

/// Q(theta) for a real algebraic theta, stored as Q[t]/(minpoly). The
/// minimal polynomial is only known to be squarefree with no rational roots;
/// irreducibility is guaranteed up to degree 3. Arithmetic that exposes a
/// proper factor throws FieldReduction so callers can rebuild the field.
class NumberField {
 public:
  /// theta must be an irrational root of p.
  NumberField(Poly p, AlgebraicReal theta);

  const Poly& minpoly() const { return minpoly_; }
  const AlgebraicReal& theta() const { return theta_; }
  int degree() const { return minpoly_.degree(); }

  /// Reduces p modulo the minimal polynomial.
  Poly reduce(const Poly& p) const;

 private:
  Poly minpoly_;  // monic
  AlgebraicReal theta_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Builds Q(theta) for the given root of p, dropping rational linear factors
/// first. Returns nullptr when theta itself is rational.
FieldPtr make_field(const Poly& p, const AlgebraicReal& theta);

/// Thrown when a zero divisor reveals that the stored minimal polynomial
/// factors; `factor` is the factor that has theta as a root.
class FieldReduction : public Error {
 public:
  explicit FieldReduction(Poly factor)
      : Error("number field minimal polynomial is reducible", "algebra"), factor_(std::move(factor)) {}
  const Poly& factor() const { return factor_; }

 private:
  Poly factor_;
};

/// Element of a NumberField, or a plain rational when the field is null.
class AlgNum {
 public:
  AlgNum() = default;
  AlgNum(long v) : rep_(Rat(v)) {}  // NOLINT: integers embed
  AlgNum(int v) : rep_(Rat(v)) {}   // NOLINT
  AlgNum(Rat v) : rep_(std::move(v)) {}  // NOLINT: rationals embed
  AlgNum(FieldPtr field, const Poly& rep);

  /// The generator theta of `field`.
  static AlgNum generator(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  /// Polynomial in theta of degree < field degree.
  const Poly& rep() const { return rep_; }
  bool is_rational() const { return rep_.degree() <= 0; }
  /// Value when is_rational(); throws otherwise.
  Rat rational_value() const;

  /// Exact sign of the real value.
  int sign() const;
  /// Interval containing the value, of width at most `width`.
  RatInterval enclosure(const Rat& width) const;
  double approx() const;

  AlgNum inverse() const;
  AlgNum operator-() const { return AlgNum(field_, -rep_, Raw{}); }
  friend AlgNum operator+(const AlgNum& a, const AlgNum& b);
  friend AlgNum operator-(const AlgNum& a, const AlgNum& b);
  friend AlgNum operator*(const AlgNum& a, const AlgNum& b);
  friend AlgNum operator/(const AlgNum& a, const AlgNum& b) { return a * b.inverse(); }
  AlgNum& operator+=(const AlgNum& o) { return *this = *this + o; }
  AlgNum& operator-=(const AlgNum& o) { return *this = *this - o; }
  AlgNum& operator*=(const AlgNum& o) { return *this = *this * o; }
  AlgNum& operator/=(const AlgNum& o) { return *this = *this / o; }
  /// Representation equality, exact for an irreducible minimal polynomial.
  friend bool operator==(const AlgNum& a, const AlgNum& b) { return (a - b).rep_.is_zero(); }
  friend bool operator!=(const AlgNum& a, const AlgNum& b) { return !(a == b); }

 private:
  struct Raw {};
  AlgNum(FieldPtr field, Poly rep, Raw) : field_(std::move(field)), rep_(std::move(rep)) {}
  static FieldPtr common(const AlgNum& a, const AlgNum& b);

  FieldPtr field_;
  Poly rep_;
};

inline bool is_zero(const AlgNum& a) { return a.rep().is_zero(); }
inline int sign(const AlgNum& a) { return a.sign(); }
int compare(const AlgNum& a, const Rat& q);
int compare(const AlgNum& a, const AlgNum& b);
Int floor(const AlgNum& a);
Int ceil(const AlgNum& a);
AlgNum pow(const AlgNum& a, long e);

/// Rational value if rational, else the representation in theta rendered
/// with variable `var`, e.g. "2*theta + 3".
std::string to_string(const AlgNum& a, const std::string& var = "theta");

using PolyK = UPoly<AlgNum>;

PolyK to_polyk(const Poly& p);
/// Product of all conjugates of p: a rational polynomial whose real roots
/// include every real root of p.
Poly norm(const PolyK& p);
/// Sign of p(m) for all sufficiently large m.
int sign_at_infinity(const PolyK& p);

/// num/den over Q(theta) without normalization.
struct FracK {
  PolyK num;
  PolyK den{AlgNum(1)};

  friend FracK operator+(const FracK& a, const FracK& b);
  friend FracK operator-(const FracK& a, const FracK& b);
  friend FracK operator*(const FracK& a, const FracK& b);
  friend FracK operator/(const FracK& a, const FracK& b);
  /// Value at a rational point; throws at a pole.
  AlgNum operator()(const Rat& m) const;
};

/// Smallest N0 >= 0 with num(m)/den(m) > 0 and den(m) != 0 for every integer
/// m > N0. Throws if the function is not eventually positive.
long eventual_positivity_threshold(const FracK& r);

}  // namespace pturan
