#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pturan/asymptotics/expansion.hpp"
#include "pturan/asymptotics/phi.hpp"
#include "pturan/sequences/derived.hpp"

namespace pturan {

enum class Outcome { holds, fails, inconclusive };
std::string to_string(Outcome o);

/// Result of an asymptotic criterion together with the quantities that
/// decided it.
struct Verdict {
  Outcome result = Outcome::inconclusive;
  std::string rule;
  std::string reason;  // set for inconclusive verdicts
  /// The expansion was too short to decide; a longer one may help.
  bool needs_more_terms = false;
  /// For l-log-concavity: number of levels established.
  int ell = 0;
  std::vector<std::pair<std::string, std::string>> trace;

  void note(std::string key, std::string value) { trace.emplace_back(std::move(key), std::move(value)); }
  std::string trace_value(const std::string& key) const;
};

/// Sign of c - q for large n: LogCoef by leading coefficients, AlgNum exactly.
inline int eventual_sign_minus(const LogCoef& c, const Rat& q) {
  return static_cast<int>(sign_at_infinity(c - LogCoef(q)));
}
inline int eventual_sign_minus(const AlgNum& c, const Rat& q) { return compare(c, q); }
inline std::string limit_text(const LogCoef& c) { return limit_at_infinity(c).str(); }
inline std::string limit_text(const AlgNum& c) { return to_string(c); }

template <class C>
std::string coef_string(const C& c) {
  bool atomic = true;
  return coef_text(c, atomic);
}

/// u_n = 1 + sum_i r_i(log n)/n^alpha_i + o(n^-beta) with
/// 0 < alpha_1 < ... < alpha_m < beta. m = 0 is the degenerate 1 + o(n^-beta).
template <class C>
struct UnForm {
  Series<C> series;
  int m = 0;
  Rat alpha1, alphaM, beta;
  C r1{Rat(0)};
};

template <class C>
UnForm<C> to_un_form(const Series<C>& s) {
  auto v = s.valuation();
  if (!v || *v != 0 || !(s.terms().begin()->second == C(Rat(1)))) {
    throw Error("u_n expansion must start with the constant term 1", "criteria");
  }
  UnForm<C> u;
  u.series = s;
  u.beta = s.order();
  u.m = static_cast<int>(s.terms().size()) - 1;
  if (u.m > 0) {
    auto it = std::next(s.terms().begin());
    u.alpha1 = it->first;
    u.r1 = it->second;
    u.alphaM = s.terms().rbegin()->first;
  } else {
    u.alpha1 = u.alphaM = u.beta;
  }
  return u;
}

template <class C>
void describe(Verdict& v, const UnForm<C>& u) {
  v.note("series", to_string(u.series));
  v.note("alpha1", to_string(u.alpha1));
  v.note("r1", coef_string(u.r1));
  v.note("alphaM", to_string(u.alphaM));
  v.note("beta", to_string(u.beta));
}

/// Asymptotic higher-order Turan inequality. holds: 0 < alpha1 < 2 and
/// r1 < 0 eventually, or alpha1 = 2 and r1 < -1 eventually, provided
/// beta > alpha1 + 1. fails: the leading term of
/// 4(1-u_n)(1-u_{n+1}) - (1-u_n u_{n+1})^2 is eventually negative.
template <class C>
Verdict turan3_asymptotic(const UnForm<C>& u) {
  Verdict v;
  describe(v, u);
  if (u.m == 0) {
    v.rule = "degenerate";
    v.reason = "u_n = 1 + o(n^-" + to_string(u.beta) + ") has no leading deviation";
    v.needs_more_terms = true;
    return v;
  }
  const Rat& a = u.alpha1;
  const int s = coef_sign_at_infinity(u.r1);
  v.note("sign r1", s < 0 ? "negative" : "positive");
  v.note("t(n) leading", to_string(a) + " * (" + coef_string(u.r1) + ") * n^" + to_string(a - 1));
  v.note("xi leading", "4 * (" + coef_string(u.r1) + ")^3 * n^" + to_string(a));
  if (u.beta <= a + 1) {
    v.rule = "precision";
    v.reason = "error order " + to_string(u.beta) + " does not exceed alpha1 + 1 = " + to_string(a + 1);
    v.needs_more_terms = true;
    return v;
  }
  if (a < 2) {
    v.note("regime", "0 < alpha1 < 2");
    v.note("f leading", "-4 * (" + coef_string(u.r1) + ")^3 * n^-" + to_string(3 * a));
    v.rule = s < 0 ? "alpha1<2, r1<0" : "alpha1<2, r1>0";
    v.result = s < 0 ? Outcome::holds : Outcome::fails;
    return v;
  }
  if (a == 2) {
    v.note("regime", "alpha1 = 2");
    v.note("limit r1", limit_text(u.r1));
    v.note("f leading", "-4 * (" + coef_string(u.r1) + ")^2 * (r1 + 1) * n^-6");
    const int d = eventual_sign_minus(u.r1, Rat(-1));
    if (d < 0) {
      v.rule = "alpha1=2, r1<-1";
      v.result = Outcome::holds;
    } else if (d > 0) {
      v.rule = "alpha1=2, r1>-1";
      v.result = Outcome::fails;
    } else {
      v.rule = "alpha1=2, r1=-1";
      v.reason = "r1 is identically -1; the criterion does not apply";
    }
    return v;
  }
  v.note("regime", "alpha1 > 2");
  v.rule = "alpha1>2";
  v.reason = "no criterion for alpha1 > 2";
  return v;
}

/// Leading deviation of each phi level by iterating phi on the whole
/// series: entry k-1 is the first term of phi^(k-1)(u) - 1 for k = 1..levels,
/// while it is determined.
template <class C>
std::vector<std::pair<Rat, C>> phi_levels_series(const Series<C>& u, int levels) {
  std::vector<std::pair<Rat, C>> out;
  Series<C> cur = u;
  for (int k = 1; k <= levels; ++k) {
    Series<C> w = cur - Series<C>::one(cur.order());
    auto val = w.valuation();
    if (!val || *val <= 0) break;
    out.emplace_back(*val, w.terms().begin()->second);
    if (k == levels) break;
    cur = phi_u_expansion(cur);
  }
  return out;
}

/// Same from the leading term alone, for 0 < alpha1 <= 2: phi maps r n^-alpha
/// to 2r n^-alpha when alpha < 2 and to (2r + 2 + D(Dr/r) - Dr/r) n^-2 when
/// alpha = 2 (D = d/dlog n). Each level consumes alpha of the precision.
/// Stops when the recursion produces 0, since the leading term then lies
/// deeper than the recursion sees.
template <class C>
std::vector<std::pair<Rat, C>> phi_levels_leading(const Series<C>& u, int levels) {
  std::vector<std::pair<Rat, C>> out;
  Series<C> w = u - Series<C>::one(u.order());
  auto val = w.valuation();
  if (!val || *val <= 0 || *val > 2) return out;
  const Rat a = *val;
  C r = w.terms().begin()->second;
  for (int k = 1; k <= levels && k * a < u.order(); ++k) {
    if (is_zero(r)) break;
    out.emplace_back(a, r);
    if (a < 2) {
      r = C(Rat(2)) * r;
    } else {
      C dl = d_dlog(r) / r;
      r = C(Rat(2)) * r + C(Rat(2)) + d_dlog(dl) - dl;
    }
  }
  return out;
}

/// Leading phi levels: the full iteration when every coefficient is
/// constant, the leading-term recursion otherwise (the full iteration with
/// log coefficients grows too fast to be practical beyond a few levels).
template <class C>
std::vector<std::pair<Rat, C>> phi_levels(const Series<C>& u, int levels) {
  bool constant = true;
  for (const auto& [e, c] : u.terms()) constant = constant && is_constant_coef(c);
  auto val = (u - Series<C>::one(u.order())).valuation();
  if (constant || !val || *val > 2) return phi_levels_series(u, levels);
  return phi_levels_leading(u, levels);
}

/// Asymptotic l-log-concavity. With l_max = max{k : k alpha1 < beta}, the
/// levels 1..l_max hold when 0 < alpha1 < 2 and r1 < 0 eventually; when
/// alpha1 = 2 level k holds if r1 < -2 + 1/2^(k-2) eventually. A positive
/// leading coefficient in the phi iteration proves failure at that level.
/// `requested` = 0 asks for as many levels as the expansion supports.
template <class C>
Verdict llogconcave_asymptotic(const UnForm<C>& u, int requested = 0) {
  Verdict v;
  describe(v, u);
  if (u.m == 0) {
    v.rule = "degenerate";
    v.reason = "u_n = 1 + o(n^-" + to_string(u.beta) + ") has no leading deviation";
    v.needs_more_terms = true;
    return v;
  }
  const Rat& a = u.alpha1;
  int lmax = static_cast<int>(to_long(Rat(ceil(Rat(u.beta / a))))) - 1;
  v.note("ell max", std::to_string(lmax));
  const int want = requested > 0 ? requested : lmax;

  // theorem clauses
  int ell = 0;
  if (a < 2 && coef_sign_at_infinity(u.r1) < 0) {
    v.rule = "alpha1<2, r1<0";
    ell = lmax;
  } else if (a == 2) {
    v.rule = "alpha1=2, r1<-2+1/2^(k-2)";
    v.note("limit r1", limit_text(u.r1));
    for (int k = 1; k <= lmax; ++k) {
      Rat bound = Rat(-2) + Rat(4) / pow(Rat(2), k);  // -2 + 1/2^(k-2)
      if (eventual_sign_minus(u.r1, bound) >= 0) break;
      ell = k;
    }
  } else if (a < 2) {
    v.rule = "alpha1<2, r1>0";
  } else {
    v.rule = "alpha1>2";
  }

  // cross-check by iterating phi on the series
  auto levels = phi_levels(u.series, std::min(want, lmax));
  int first_positive = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& [e, c] = levels[i];
    int sg = coef_sign_at_infinity(c);
    v.note("level " + std::to_string(i + 1) + " leading",
           "(" + coef_string(c) + ") * n^-" + to_string(e) + (sg < 0 ? " [negative]" : " [positive]"));
    if (sg > 0 && first_positive == 0) first_positive = static_cast<int>(i) + 1;
  }

  v.ell = std::min(ell, want);
  v.note("ell", std::to_string(v.ell));
  if (first_positive > 0 && first_positive <= want && first_positive > ell) {
    v.result = Outcome::fails;
    if (v.rule != "alpha1<2, r1>0") {
      v.rule = "phi iteration: positive leading coefficient at level " + std::to_string(first_positive);
    }
    v.ell = first_positive - 1;
    return v;
  }
  if (ell >= want) {
    v.result = Outcome::holds;
    return v;
  }
  if (want > lmax && ell == lmax) {
    v.needs_more_terms = true;
    v.reason = "the expansion determines only " + std::to_string(lmax) + " levels";
  } else {
    v.reason = "the criterion establishes " + std::to_string(ell) + " of " + std::to_string(want) + " levels";
  }
  return v;
}

/// Re-runs `decide` on longer expansions while it reports needs_more_terms,
/// for K = K0 .. maxK. The provider returns the u_n series for a given K.
template <class C>
Verdict decide_with_retry(const std::function<Series<C>(int)>& provider,
                          const std::function<Verdict(const UnForm<C>&)>& decide, int K0, int maxK) {
  Verdict v;
  for (int K = K0; K <= std::max(K0, maxK); ++K) {
    v = decide(to_un_form(provider(K)));
    v.note("K", std::to_string(K));
    if (!v.needs_more_terms) return v;
  }
  return v;
}

/// u_n expansion of a transformed sequence: the ratio ansatz with K
/// coefficients, the n! scaling, then phi applied phi_level times.
KSeries u_series_for(const Recurrence& rec, const Transform& t, int K, const std::optional<int>& rho = std::nullopt);

}  // namespace pturan
