#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pturan/algebra/number_field.hpp"
#include "pturan/algebra/ratfunc.hpp"

namespace pturan {

/// Coefficient of a log-rational term: a rational function in L = log n.
using LogCoef = RatFunc;

/// Coefficient-type hooks used by the series templates. Overloads exist for
/// LogCoef (rational functions of log n) and AlgNum (constants in Q(theta)).
inline LogCoef d_dlog(const LogCoef& c) { return c.derivative(); }
inline AlgNum d_dlog(const AlgNum&) { return AlgNum(0); }
inline bool is_constant_coef(const LogCoef& c) { return c.is_constant(); }
inline bool is_constant_coef(const AlgNum&) { return true; }
/// Renders a coefficient; `atomic` is set when it needs no parentheses
/// before "*n^...".
std::string coef_text(const LogCoef& c, bool& atomic);
std::string coef_text(const AlgNum& c, bool& atomic);
/// Sign of the coefficient for large n.
int coef_sign_at_infinity(const LogCoef& c);
int coef_sign_at_infinity(const AlgNum& c);
double coef_approx(const LogCoef& c, double log_n);
double coef_approx(const AlgNum& c, double log_n);

/// Sum of terms c_a(log n) / n^a plus an error term. `order` is beta: the
/// remainder is o(n^-b) for every b < beta (O(n^-beta) when no log terms are
/// involved), and every stored exponent is strictly below beta. Exponents
/// may be negative.
template <class C>
class Series {
 public:
  using Coef = C;
  using Terms = std::map<Rat, C>;

  Series() = default;
  explicit Series(Rat order) : order_(std::move(order)) {}
  Series(Terms terms, Rat order) : order_(std::move(order)) {
    for (auto& [e, c] : terms) add_term(e, std::move(c));
  }
  /// c + O(n^-order)
  static Series constant(const C& c, const Rat& order) {
    Series s(order);
    s.add_term(Rat(0), c);
    return s;
  }
  static Series one(const Rat& order) { return constant(C(Rat(1)), order); }

  const Terms& terms() const { return terms_; }
  const Rat& order() const { return order_; }
  bool empty() const { return terms_.empty(); }
  /// Smallest exponent, or nullopt for a pure error term.
  std::optional<Rat> valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }
  C coeff(const Rat& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? C(Rat(0)) : it->second;
  }

  /// Adds c / n^e, dropping it when e >= order.
  void add_term(const Rat& e, C c) {
    if (e >= order_) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!is_zero(c)) terms_.emplace(e, std::move(c));
      return;
    }
    it->second = it->second + c;
    if (is_zero(it->second)) terms_.erase(it);
  }

  /// Lowers the error order and drops terms at or beyond it.
  Series truncated(const Rat& order) const {
    Series s(order < order_ ? order : order_);
    for (const auto& [e, c] : terms_) s.add_term(e, c);
    return s;
  }

  /// Multiplies by n^-shift.
  Series shifted_exponents(const Rat& shift) const {
    Series s(order_ + shift);
    for (const auto& [e, c] : terms_) s.add_term(e + shift, c);
    return s;
  }

  Series scaled(const C& k) const {
    Series s(order_);
    for (const auto& [e, c] : terms_) s.add_term(e, c * k);
    return s;
  }

  Series operator-() const { return scaled(C(Rat(-1))); }

  friend Series operator+(const Series& a, const Series& b) {
    Series s(a.order_ < b.order_ ? a.order_ : b.order_);
    for (const auto& [e, c] : a.terms_) s.add_term(e, c);
    for (const auto& [e, c] : b.terms_) s.add_term(e, c);
    return s;
  }
  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

  friend Series operator*(const Series& a, const Series& b) {
    // (A + O(n^-p))(B + O(n^-q)) = AB + O(n^-min(p + v(B), q + v(A)))
    std::optional<Rat> order;
    auto take = [&](const Rat& r) {
      if (!order || r < *order) order = r;
    };
    auto va = a.valuation(), vb = b.valuation();
    if (vb) take(a.order_ + *vb);
    if (va) take(b.order_ + *va);
    if (!va && !vb) take(a.order_ + b.order_);
    Series s(*order);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) s.add_term(ea + eb, ca * cb);
    }
    return s;
  }

  friend bool operator==(const Series& a, const Series& b) {
    if (a.order_ != b.order_ || a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    }
    return true;
  }
  friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

  /// Floating-point value at n (for diagnostics and plots only).
  double approx(double n) const {
    double acc = 0, log_n = std::log(n);
    for (const auto& [e, c] : terms_) acc += coef_approx(c, log_n) * std::pow(n, -e.get_d());
    return acc;
  }

 private:
  Terms terms_;
  Rat order_{0};
};

using AsymSeries = Series<LogCoef>;
using KSeries = Series<AlgNum>;

namespace detail {

/// Splits a = 1 + x, checking the constant term and positive exponents of x.
template <class C>
Series<C> unit_tail(const Series<C>& a, const char* op) {
  auto it = a.terms().find(Rat(0));
  if (it == a.terms().end() || !(it->second == C(Rat(1)))) {
    throw Error(std::string(op) + ": series must have leading term 1", "asymptotics");
  }
  if (a.terms().begin()->first < 0) throw Error(std::string(op) + ": series has growing terms", "asymptotics");
  Series<C> x = a - Series<C>::one(a.order());
  return x;
}

/// sum_{k>=0} coef(k) x^k truncated at x's order; x must have positive
/// valuation (or be a pure error term).
template <class C>
Series<C> taylor(const Series<C>& x, const std::function<Rat(unsigned long)>& coef) {
  const Rat& order = x.order();
  Series<C> result = Series<C>::constant(C(coef(0)), order);
  auto v = x.valuation();
  if (!v) return result;
  if (*v <= 0) throw Error("taylor: argument does not tend to zero", "asymptotics");
  Series<C> power = Series<C>::one(order);
  for (unsigned long k = 1; Rat(*v * Rat(static_cast<long>(k))) < order; ++k) {
    power = (power * x).truncated(order);
    Rat ck = coef(k);
    if (!is_zero(ck)) result = result + power.scaled(C(ck));
  }
  return result.truncated(order);
}

}  // namespace detail

/// 1/a for a = 1 + (terms with positive exponents).
template <class C>
Series<C> series_inv(const Series<C>& a) {
  auto x = detail::unit_tail(a, "series_inv");
  return detail::taylor<C>(x, [](unsigned long k) -> Rat { return Rat(k % 2 ? -1 : 1); });
}

/// a^alpha for a = 1 + (terms with positive exponents).
template <class C>
Series<C> series_pow_binomial(const Series<C>& a, const Rat& alpha) {
  auto x = detail::unit_tail(a, "series_pow_binomial");
  return detail::taylor<C>(x, [&](unsigned long k) -> Rat { return binomial(alpha, k); });
}

/// log a for a = 1 + (terms with positive exponents).
template <class C>
Series<C> series_log(const Series<C>& a) {
  auto x = detail::unit_tail(a, "series_log");
  return detail::taylor<C>(x, [](unsigned long k) -> Rat {
    if (k == 0) return Rat(0);
    return Rat(k % 2 ? 1 : -1) / Rat(static_cast<long>(k));
  });
}

/// exp a for a series tending to zero.
template <class C>
Series<C> series_exp(const Series<C>& a) {
  auto v = a.valuation();
  if (v && *v <= 0) throw Error("series_exp: argument must tend to zero", "asymptotics");
  std::vector<Rat> inv_fact{Rat(1)};
  return detail::taylor<C>(a, [&](unsigned long k) -> Rat {
    while (inv_fact.size() <= k) inv_fact.push_back(inv_fact.back() / Rat(static_cast<long>(inv_fact.size())));
    return inv_fact[k];
  });
}

/// a / b: the leading term c/n^v of b is factored out and the remaining
/// unit part inverted. c may depend on log n.
template <class C>
Series<C> series_div(const Series<C>& a, const Series<C>& b) {
  auto v = b.valuation();
  if (!v) throw Error("series_div: divisor is a pure error term", "asymptotics");
  C inv_lead = C(Rat(1)) / b.terms().begin()->second;
  Series<C> unit = b.shifted_exponents(-*v).scaled(inv_lead);
  return (a * series_inv(unit)).shifted_exponents(-*v).scaled(inv_lead);
}

/// Text form, smallest exponent first: "1 - 3/2*n^-2 + 9/4*n^-3 + O(n^-4)".
/// Exponents print as n^-2, n^(-3/2); log n prints as log(n).
template <class C>
std::string to_string(const Series<C>& s);

/// Parses the text form of an AsymSeries ("o(...)" and "O(...)" both give
/// the error order).
AsymSeries parse_asym_series(const std::string& text);

/// Exponent text: "n^-2", "n^(-3/2)", "" for exponent 0.
std::string exponent_text(const Rat& e);

/// Converts a constant-coefficient series with rational values to an
/// AsymSeries; throws if a coefficient is irrational.
AsymSeries to_asym_series(const KSeries& s);
/// Embeds constant rational-function coefficients; throws on log terms.
KSeries to_k_series(const AsymSeries& s);

/// Exact value of the retained terms at n = m^rho; every exponent times rho
/// must be an integer.
AlgNum evaluate_at_power(const KSeries& s, const Int& m, int rho);

extern template std::string to_string(const AsymSeries&);
extern template std::string to_string(const KSeries&);

}  // namespace pturan
