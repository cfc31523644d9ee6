#pragma once

#include <vector>

#include "pturan/asymptotics/series.hpp"

namespace pturan {

/// Coefficients of delta = log(n + dir) - log n in powers of 1/n:
/// entry i-1 multiplies n^-i, for i = 1..K.
std::vector<Rat> log_shift_coeffs(int dir, int K);

/// r_1..r_K with r(log(n + dir)) - r(log n) = sum_i r_i(log n)/n^i + o(n^-K),
/// dir = +1 or -1. Built from the Taylor expansion of r composed with the
/// expansion of log(n + dir) - log n.
template <class C>
std::vector<C> shift_expand(const C& r, int dir, int K) {
  if (dir != 1 && dir != -1) throw Error("shift direction must be +1 or -1", "asymptotics");
  if (K < 1) throw Error("shift_expand needs K >= 1", "asymptotics");
  const auto delta = log_shift_coeffs(dir, K);
  // powers[k][i] = coefficient of n^-i in delta^k
  std::vector<std::vector<Rat>> powers(static_cast<std::size_t>(K + 1), std::vector<Rat>(static_cast<std::size_t>(K + 1)));
  powers[0][0] = 1;
  for (int k = 1; k <= K; ++k) {
    for (int i = 1; i <= K; ++i) {
      Rat acc = 0;
      for (int j = 1; j <= i; ++j) {
        acc += delta[static_cast<std::size_t>(j - 1)] * powers[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i - j)];
      }
      powers[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = acc;
    }
  }
  std::vector<C> derivs;  // r^(k)/k!
  C d = r;
  Rat fact = 1;
  for (int k = 1; k <= K; ++k) {
    d = d_dlog(d);
    fact *= k;
    derivs.push_back(d * C(Rat(1) / fact));
  }
  std::vector<C> out;
  for (int i = 1; i <= K; ++i) {
    C acc(Rat(0));
    for (int k = 1; k <= i; ++k) {
      const Rat& p = powers[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      if (!is_zero(p)) acc = acc + derivs[static_cast<std::size_t>(k - 1)] * C(p);
    }
    out.push_back(acc);
  }
  return out;
}

/// The series of a(n + dir) re-expanded at n, to the same error order.
template <class C>
Series<C> shift_series(const Series<C>& a, int dir) {
  if (dir != 1 && dir != -1) throw Error("shift direction must be +1 or -1", "asymptotics");
  Series<C> out(a.order());
  for (const auto& [alpha, c] : a.terms()) {
    Rat room = a.order() - alpha;  // powers of 1/n still visible
    int K = static_cast<int>(to_long(Rat(ceil(room)))) + 1;
    if (K < 1) K = 1;
    // c(log(n + dir)) = c + sum_i c_i / n^i
    std::vector<C> cs{c};
    for (auto& ci : shift_expand(c, dir, K)) cs.push_back(ci);
    // (1 + dir/n)^-alpha
    std::vector<Rat> bin;
    for (int m = 0; m <= K; ++m) bin.push_back(binomial(-alpha, static_cast<unsigned long>(m)) * Rat(m % 2 && dir < 0 ? -1 : 1));
    for (int i = 0; i <= K; ++i) {
      if (is_zero(cs[static_cast<std::size_t>(i)])) continue;
      for (int m = 0; i + m <= K; ++m) {
        if (is_zero(bin[static_cast<std::size_t>(m)])) continue;
        out.add_term(alpha + i + m, cs[static_cast<std::size_t>(i)] * C(bin[static_cast<std::size_t>(m)]));
      }
    }
  }
  return out;
}

/// a(n-1) a(n+1) / a(n)^2 for the series of a(n).
template <class C>
Series<C> turan_ratio(const Series<C>& a) {
  return series_div(shift_series(a, -1) * shift_series(a, 1), a * a);
}

/// The single-term series r(log n)/n^alpha + O(n^-(alpha + K + 1)).
AsymSeries power_log_series(const LogCoef& r, const Rat& alpha, int K);

}  // namespace pturan
