#pragma once

#include <initializer_list>
#include <vector>

#include "pturan/sequences/derived.hpp"

namespace fixtures {

inline pturan::Poly P(std::initializer_list<long> lowest_first) {
  std::vector<pturan::Rat> c;
  for (long v : lowest_first) c.emplace_back(v);
  return pturan::Poly(std::move(c));
}

inline const pturan::Poly& n() {
  static const pturan::Poly x = pturan::Poly::x();
  return x;
}

inline std::vector<pturan::Rat> R(std::initializer_list<long> values) {
  return {values.begin(), values.end()};
}

// sum_k P_k(n) a(n+k) = 0
inline pturan::Recurrence motzkin() {
  return pturan::Recurrence::from_sum_form("motzkin", {P({-3, -3}), P({-5, -2}), P({4, 1})}, R({1, 1}));
}

inline pturan::Recurrence franel() {
  return pturan::Recurrence::from_sum_form("franel", {P({-8, -16, -8}), P({-16, -21, -7}), P({4, 4, 1})}, R({1, 2}));
}

inline pturan::Recurrence b_sequence() {
  return pturan::Recurrence::from_sum_form("b", {P({-1, -1}), P({15, 7}), P({-13, -7}), P({3, 1})}, R({-1, 1, 7}));
}

inline pturan::Recurrence inverse_factorial() {
  return pturan::Recurrence::from_sum_form("inverse-factorial", {P({-1}), P({1, 1})}, R({1}));
}

inline pturan::Recurrence factorial() {
  return pturan::Recurrence::from_sum_form("factorial", {P({-1, -1}), P({1})}, R({1}));
}

inline pturan::Recurrence inverse_catalan() {
  return pturan::Recurrence::from_sum_form("inverse-catalan", {P({-2, -1}), P({2, 4})}, R({1}));
}

inline pturan::Recurrence involutions_scaled() {
  return pturan::Recurrence::from_sum_form("involutions/n!", {P({-1}), P({-1}), P({2, 1})}, R({1, 1}));
}

inline pturan::Recurrence binomial4() {
  using pturan::Poly;
  const Poly& x = n();
  Poly p2 = (x + 2).pow(3);
  Poly p1 = Poly(pturan::Rat(-2)) * (Poly(pturan::Rat(3)) * x * x + 9 * x + 7) * (2 * x + 3);
  Poly p0 = Poly(pturan::Rat(-4)) * (x + 1) * (4 * x + 3) * (4 * x + 5);
  return pturan::Recurrence::from_sum_form("binomial4", {p0, p1, p2}, R({1, 2, 18}));
}

inline pturan::Recurrence apery() {
  using pturan::Poly;
  const Poly& x = n();
  Poly p1 = -(2 * x + 3) * (Poly(pturan::Rat(17)) * x * x + 51 * x + 39);
  return pturan::Recurrence::from_sum_form("apery", {(x + 1).pow(3), p1, (x + 2).pow(3)}, R({1, 5}));
}

}  // namespace fixtures
