#pragma once

#include "pturan/asymptotics/shift.hpp"

namespace pturan {

/// Parts of u_n - 1 = f_n g_n with f_n = r(log n)/n^alpha the leading term.
template <class C>
struct DeviationSplit {
  Rat alpha;
  C r;
  Series<C> f;  // r/n^alpha, exact; stored with error order beta + alpha
  Series<C> g;  // 1 + ..., relative error order
};

template <class C>
DeviationSplit<C> split_deviation(const Series<C>& u) {
  Series<C> w = u - Series<C>::one(u.order());
  auto v = w.valuation();
  if (!v) throw Error("u_n - 1 has no leading term at this precision", "asymptotics");
  if (*v <= 0) throw Error("u_n does not tend to 1", "asymptotics");
  DeviationSplit<C> s;
  s.alpha = *v;
  s.r = w.terms().begin()->second;
  s.f = Series<C>(w.order() + s.alpha);
  s.f.add_term(s.alpha, s.r);
  s.g = w.shifted_exponents(-s.alpha).scaled(C(Rat(1)) / s.r);
  return s;
}

/// b_{n-1} b_{n+1} / b_n^2 for b_n = a_n^2 - a_{n-1} a_{n+1}, given the
/// series of u_n. Built as u_n^2 times the Turan ratio of f_n (by shifting)
/// times the Turan ratio of g_n (through log, shift and exp).
template <class C>
Series<C> phi_u_expansion(const Series<C>& u) {
  auto s = split_deviation(u);
  Series<C> f_part = turan_ratio(s.f);
  Series<C> lg = series_log(s.g);
  Series<C> h = shift_series(lg, -1) + shift_series(lg, 1) - lg.scaled(C(Rat(2)));
  return u * u * f_part * series_exp(h);
}

/// Same quantity from u^2 (u(n-1) - 1)(u(n+1) - 1)/(u(n) - 1)^2 directly.
template <class C>
Series<C> phi_u_expansion_direct(const Series<C>& u) {
  Series<C> w = u - Series<C>::one(u.order());
  if (!w.valuation()) throw Error("u_n - 1 has no leading term at this precision", "asymptotics");
  return u * u * series_div(shift_series(w, -1) * shift_series(w, 1), w * w);
}

}  // namespace pturan
