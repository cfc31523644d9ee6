// One line per acceptance criterion. Exit status is 0 when every failing
// criterion is listed with --allow-fail.

#include <mpfr.h>

#include <CLI11.hpp>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "pturan/asymptotics/phi.hpp"
#include "pturan/asymptotics/shift.hpp"
#include "pturan/cli/commands.hpp"

using namespace pturan;

namespace {

struct Result {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(std::string why) {
    pass = false;
    notes.push_back(std::move(why));
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

std::string str(long v) { return std::to_string(v); }

Poly P(std::initializer_list<long> lowest_first) {
  std::vector<Rat> c;
  for (long v : lowest_first) c.emplace_back(v);
  return Poly(std::move(c));
}

Recurrence corpus_rec(const std::string& name) { return find_corpus_entry(name)->source.parse(); }

// ---------------------------------------------------------------- criterion 1

Result corner_goldens() {
  Result r;
  const Poly n = Poly::x(), n1 = n + Poly(Rat(1)), n2 = n + Poly(Rat(2));
  auto frac = [](const Poly& a, const Poly& b) { return RatFunc(a, b); };
  auto bound = [&](const Rat& c2) { return RatFunc(n * n + Poly(c2), n * n1); };  // n/(n+1) (1 + c2/n^2)
  const Poly mden = Poly(Rat(16)) * n.pow(2) * n1.pow(4) * n2.pow(2), wide = n.pow(2) * n1.pow(4) * n2.pow(2);
  struct Case {
    std::string name;
    Rat g2, f2;
    std::array<RatFunc, 4> printed;
    std::array<long, 4> ranges;  // printed "n > k" (n >= 0 is stored as 0)
  };
  const std::vector<Case> cases = {
      {"Motzkin", Rat(1, 2), Rat(5, 2),
       {frac(P({-9, -8, -24, 16, 96, 64}), mden), frac(P({-49, 152, 24, -240, -224, 64}), mden),
        frac(P({-225, -520, -680, -496, -96, 64}), mden), frac(P({-1225, -360, 264, 272, -288, 64}), mden)},
       {0, 4, 4, 3}},
      {"Franel", Rat(0), Rat(2),
       {frac(P({4}), n1 * n2.pow(2)), frac(P({-12, -20, -8, 4}), n1.pow(4) * n2.pow(2)),
        frac(P({-4, -12, 4}), n.pow(2) * n1 * n2.pow(2)), frac(P({-36, -8, 12, 4, -12, 4}), wide)},
       {0, 3, 3, 2}},
      {"b_n", Rat(0), Rat(3),
       {frac(P({4}), n1 * n2.pow(2)), frac(P({-20, -36, -21, 4}), n1.pow(4) * n2.pow(2)),
        frac(P({-9, -21, 4}), n.pow(2) * n1 * n2.pow(2)), frac(P({-144, -48, 16, 36, -24, 4}), wide)},
       {0, 6, 5, 7}},
  };
  const char* labels[] = {"t(g,g+)", "t(g,f+)", "t(f,g+)", "t(f,f+)"};
  int matched = 0;
  for (const auto& c : cases) {
    RatFunc g = bound(c.g2), f = bound(c.f2);
    std::array<RatFunc, 4> got = {corner_polynomial(g, g), corner_polynomial(g, f), corner_polynomial(f, g),
                                  corner_polynomial(f, f)};
    for (std::size_t i = 0; i < 4; ++i) {
      const std::string at = c.name + " " + labels[i];
      if (got[i] != c.printed[i]) {
        r.fail(at + " polynomial differs: " + to_string(got[i]));
        continue;
      }
      ++matched;
      long t = eventual_positivity_threshold(got[i]);
      if (t != c.ranges[i]) {
        // say whether the printed range is at least valid
        bool valid = t <= c.ranges[i];
        r.fail(at + " threshold is " + str(t) + ", printed n > " + str(c.ranges[i]) +
               (valid ? " (printed range valid but not minimal)" : " (printed range invalid)"));
      }
    }
  }
  r.notes.insert(r.notes.begin(), str(matched) + "/12 rational functions exact");
  return r;
}

// ---------------------------------------------------------------- criterion 2

Result series_goldens() {
  Result r;
  struct Case {
    std::string name;
    int K;
    std::vector<std::pair<Rat, Rat>> printed;
  };
  const std::vector<Case> cases = {
      {"inverse-catalan", 3, {{Rat(2), Rat(-3, 2)}, {Rat(3), Rat(9, 4)}, {Rat(4), Rat(-21, 8)}}},
      {"involutions", 2, {{Rat(1), Rat(-1, 2)}, {Rat(3, 2), Rat(-1, 4)}, {Rat(2), Rat(5, 8)}}},
  };
  for (const auto& c : cases) {
    AsymSeries u = u_expansion(ratio_expansion(corpus_rec(c.name), {c.K, std::nullopt}));
    r.expect(u.coeff(Rat(0)) == LogCoef(Rat(1)), c.name + ": constant term is not 1");
    for (const auto& [e, v] : c.printed) {
      r.expect(u.order() > e, c.name + ": expansion too short for n^-" + e.get_str());
      r.expect(u.coeff(e) == LogCoef(v), c.name + ": coefficient of n^-" + e.get_str() + " differs");
    }
    // nothing between the printed exponents
    for (const auto& [e, v] : u.terms()) {
      bool printed = is_zero(e) || std::any_of(c.printed.begin(), c.printed.end(), [&](const auto& p) { return p.first == e; });
      if (!printed && e < c.printed.back().first) r.fail(c.name + ": unexpected term at n^-" + e.get_str());
    }
    r.notes.push_back(c.name + ": " + to_string(u));
  }
  return r;
}

// ---------------------------------------------------------------- criterion 3

Result ht_end_to_end() {
  Result r;
  std::ostringstream out, err;
  int code = run_cli({"--json", "certify", "binomial4", "--bounds-only"}, out, err);
  if (code != 0) {
    r.fail("certify exited with " + str(code) + ": " + err.str());
    return r;
  }
  Json j = Json::parse(out.str());
  const Json g_terms = Json::array({Json{{"exponent", "0"}, {"coeff", "1"}}, Json{{"exponent", "2"}, {"coeff", "1/2"}}});
  const Json f_terms = Json::array({Json{{"exponent", "0"}, {"coeff", "1"}}, Json{{"exponent", "2"}, {"coeff", "5/2"}}});
  r.expect(j["g"]["terms"] == g_terms, "lower bound is " + j["g"]["text"].get<std::string>());
  r.expect(j["f"]["terms"] == f_terms, "upper bound is " + j["f"]["text"].get<std::string>());
  const long vf = j["validFrom"].get<long>();
  r.expect(vf <= 200, "validFrom " + str(vf) + " exceeds 200");
  r.notes.push_back("bounds 1+1/(2n^2), 1+5/(2n^2) from n >= " + str(vf));

  // exact confirmation on (validFrom, validFrom + 2000]
  SequenceView seq(make_table(corpus_rec("binomial4")), Transform{});
  const RatFunc g(P({1, 0, 2}), P({0, 0, 2})), f(P({5, 0, 2}), P({0, 0, 2}));
  seq.terms(0, vf + 2001);
  long bad = 0;
#pragma omp parallel for reduction(+ : bad) schedule(static, 16)
  for (long m = vf + 1; m <= vf + 2000; ++m) {
    Rat u = seq.u(m);
    if (!(g(Rat(m)) < u && u < f(Rat(m)))) ++bad;
  }
  r.expect(bad == 0, str(bad) + " exact u_n outside the bounds");
  r.notes.push_back("exact check on (" + str(vf) + ", " + str(vf + 2000) + "]: " + str(bad) + " violations");
  return r;
}

// ---------------------------------------------------------------- criterion 4

Result motzkin_sandwich(const std::string& cache_dir) {
  Result r;
  auto table = make_table(corpus_rec("motzkin"), cache_dir);
  SequenceView seq(table, Transform{1, 0});
  seq.terms(1, 5001);
  table->flush();
  long bad = 0;
#pragma omp parallel for reduction(+ : bad) schedule(dynamic, 32)
  for (long m = 75; m <= 5000; ++m) {
    const Rat n(m);
    Rat v = seq.u(m) * (n + 1) / n;
    const Rat n2 = n * n;
    if (!(1 + Rat(1, 2) / n2 < v && v < 1 + Rat(5, 2) / n2)) ++bad;
  }
  r.expect(bad == 0, str(bad) + " indices outside the sandwich");
  r.notes.push_back("n in [75, 5000]: " + str(bad) + " violations");
  return r;
}

// ---------------------------------------------------------------- criterion 5

Result verdict_suite(int max_K) {
  Result r;
  const std::vector<std::pair<std::string, Transform>> seqs = {
      {"inverse-catalan", {}},     {"involutions", {}},   {"apery", {1, 0}},
      {"motzkin", {1, 0}},         {"franel", {1, 0}},    {"b", {1, 0}}};
  int hold = 0;
  for (const auto& [name, t] : seqs) {
    const Recurrence rec = corpus_rec(name);
    std::function<KSeries(int)> p = [&](int K) { return u_series_for(rec, t, K); };
    std::function<Verdict(const UnForm<AlgNum>&)> d = [](const UnForm<AlgNum>& u) { return turan3_asymptotic(u); };
    Verdict v = decide_with_retry(p, d, 4, max_K);
    if (v.result == Outcome::holds) {
      ++hold;
    } else {
      r.fail(name + t.str() + ": " + to_string(v.result) + " (" + v.rule + ")");
    }
  }
  for (const char* text : {"1 - 1/n + O(n^-3)", "1 - 1/(n*log(n)) + O(n^-3)", "1 - 2/n^2 + O(n^-4)", "1 - log(n)/n^2 + O(n^-4)"}) {
    Verdict v = turan3_asymptotic(to_un_form(parse_asym_series(text)));
    if (v.result == Outcome::holds) {
      ++hold;
    } else {
      r.fail(std::string(text) + ": " + to_string(v.result));
    }
  }
  Verdict counter = turan3_asymptotic(to_un_form(parse_asym_series("1 - 1/n + n^(-4/3) + O(n^(-5/3))")));
  r.expect(counter.result == Outcome::inconclusive, "alpha_m - alpha_1 = 1/3 example: " + to_string(counter.result));
  r.notes.push_back(str(hold) + "/10 holds, counterexample " + to_string(counter.result));
  return r;
}

// ---------------------------------------------------------------- criterion 6

// Closed interval [lo, hi] with outward rounding.
class Interval {
 public:
  static constexpr mpfr_prec_t kPrec = 1024;
  Interval() {
    mpfr_inits2(kPrec, lo_, hi_, static_cast<mpfr_ptr>(nullptr));
  }
  Interval(const Interval& o) : Interval() {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Interval& operator=(const Interval& o) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
    return *this;
  }
  ~Interval() { mpfr_clears(lo_, hi_, static_cast<mpfr_ptr>(nullptr)); }

  // n^2 log n
  static Interval n2_log_n(long n) {
    Interval v;
    mpfr_set_si(v.lo_, n, MPFR_RNDD);
    mpfr_set_si(v.hi_, n, MPFR_RNDU);
    mpfr_log(v.lo_, v.lo_, MPFR_RNDD);
    mpfr_log(v.hi_, v.hi_, MPFR_RNDU);
    mpfr_mul_si(v.lo_, v.lo_, n * n, MPFR_RNDD);
    mpfr_mul_si(v.hi_, v.hi_, n * n, MPFR_RNDU);
    return v;
  }
  // b^2 - a c for positive a, b, c
  static Interval phi(const Interval& a, const Interval& b, const Interval& c) {
    Interval v, t;
    mpfr_sqr(v.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t.hi_, a.hi_, c.hi_, MPFR_RNDU);
    mpfr_sub(v.lo_, v.lo_, t.hi_, MPFR_RNDD);
    mpfr_sqr(v.hi_, b.hi_, MPFR_RNDU);
    mpfr_mul(t.lo_, a.lo_, c.lo_, MPFR_RNDD);
    mpfr_sub(v.hi_, v.hi_, t.lo_, MPFR_RNDU);
    return v;
  }
  bool positive() const { return mpfr_sgn(lo_) > 0; }

 private:
  mpfr_t lo_, hi_;
};

// Levels k = 1..levels: phi^k(a) > 0 at every index of [lo, hi]. `value`
// gives a_n; returns the first failing level or 0.
template <class V>
int phi_positive_levels(const std::function<V(long)>& value, const std::function<V(const V&, const V&, const V&)>& phi,
                        const std::function<bool(const V&)>& positive, int levels, long lo, long hi) {
  std::vector<V> cur;
  long start = lo - levels;
  for (long m = start; m <= hi + levels; ++m) cur.push_back(value(m));
  for (int k = 1; k <= levels; ++k) {
    std::vector<V> next;
    for (std::size_t i = 0; i + 2 < cur.size(); ++i) next.push_back(phi(cur[i], cur[i + 1], cur[i + 2]));
    ++start;
    for (std::size_t i = 0; i < next.size(); ++i) {
      long idx = start + static_cast<long>(i);
      if (idx >= lo && idx <= hi && !positive(next[i])) return k;
    }
    cur = std::move(next);
  }
  return 0;
}

Result llc_suite() {
  Result r;
  const long lo = 100, hi = 2000;
  std::function<Rat(const Rat&, const Rat&, const Rat&)> rphi = [](const Rat& a, const Rat& b, const Rat& c) { return Rat(b * b - a * c); };
  std::function<bool(const Rat&)> rpos = [](const Rat& v) { return sign(v) > 0; };

  // inverse Catalan: at least two levels
  Verdict cat = llogconcave_asymptotic(to_un_form(u_series_for(corpus_rec("inverse-catalan"), {}, 3)), 2);
  r.expect(cat.result == Outcome::holds && cat.ell >= 2, "inverse Catalan: " + to_string(cat.result) + " with " + str(cat.ell) + " levels");
  auto table = make_table(corpus_rec("inverse-catalan"));
  std::function<Rat(long)> inv_cat = [&](long m) { return table->term(m); };
  int bad = phi_positive_levels(inv_cat, rphi, rpos, 2, lo, hi);
  r.expect(bad == 0, "inverse Catalan: phi^" + str(bad) + " not positive on [100, 2000]");
  r.notes.push_back("inverse Catalan ell = " + str(cat.ell));

  // n^3 and n^2 log n to six levels
  AsymSeries cube = series_pow_binomial(parse_asym_series("1 - n^-2 + O(n^-14)"), Rat(3));
  AsymSeries n2log = turan_ratio(power_log_series(LogCoef::x(), Rat(-2), 13));
  for (const auto& [name, u] : {std::pair<std::string, AsymSeries>{"n^3", cube}, {"n^2 log n", n2log}}) {
    for (int ell = 1; ell <= 6; ++ell) {
      Verdict v = llogconcave_asymptotic(to_un_form(u), ell);
      r.expect(v.result == Outcome::holds && v.ell == ell, name + " at ell = " + str(ell) + ": " + to_string(v.result));
      for (int k = 1; k <= ell; ++k) {
        r.expect(v.trace_value("level " + str(k) + " leading").find("[negative]") != std::string::npos,
                 name + ": phi level " + str(k) + " leading coefficient not negative");
      }
    }
  }
  std::function<Rat(long)> cubes = [](long m) -> Rat { return Rat(m) * m * m; };
  bad = phi_positive_levels(cubes, rphi, rpos, 6, lo, hi);
  r.expect(bad == 0, "n^3: phi^" + str(bad) + " not positive on [100, 2000]");
  std::function<Interval(long)> n2l = [](long m) { return Interval::n2_log_n(m); };
  std::function<Interval(const Interval&, const Interval&, const Interval&)> iphi = Interval::phi;
  std::function<bool(const Interval&)> ipos = [](const Interval& v) { return v.positive(); };
  bad = phi_positive_levels(n2l, iphi, ipos, 6, lo, hi);
  r.expect(bad == 0, "n^2 log n: phi^" + str(bad) + " not certified positive on [100, 2000]");
  r.notes.push_back("n^3 and n^2 log n hold to ell = 6; phi^k positive on [100, 2000]");
  return r;
}

// ---------------------------------------------------------------- criterion 7

RatFunc random_ratfunc(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, 2);
  auto poly = [&] {
    while (true) {
      std::vector<Rat> c;
      int d = deg(rng);
      for (int i = 0; i <= d; ++i) c.emplace_back(coef(rng));
      Poly p(std::move(c));
      if (!p.is_zero()) return p;
    }
  };
  return RatFunc(poly(), poly());
}

Result lemma_identities(unsigned seed) {
  Result r;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(1, 12), den(1, 6);
  int ok = 0;
  for (int trial = 0; trial < 20; ++trial) {
    RatFunc f = random_ratfunc(rng);
    auto up = shift_expand(f, 1, 2), down = shift_expand(f, -1, 2);
    RatFunc d1 = f.derivative(), d2 = d1.derivative();
    const RatFunc half(Rat(1, 2));
    bool shift_ok = up[0] == d1 && down[0] == -d1 && up[1] == (d2 - d1) * half && down[1] == up[1];

    Rat alpha(num(rng), den(rng));
    alpha.canonicalize();
    AsymSeries a = power_log_series(f, alpha, 4);  // f(log n) / n^alpha
    RatFunc dlog = d1 / f;
    AsymSeries u = turan_ratio(a);
    bool u_ok = u.coeff(Rat(1)).is_zero() && u.coeff(Rat(2)) == RatFunc(alpha) + dlog.derivative() - dlog;
    AsymSeries second = shift_series(a, 1) + shift_series(a, -1) - a.scaled(RatFunc(Rat(2)));
    bool second_ok = second.coeff(alpha + 1).is_zero() &&
                     second.coeff(alpha + 2) == RatFunc(alpha * (alpha + 1)) * f - RatFunc(2 * alpha + 1) * d1 + d2;
    if (shift_ok && u_ok && second_ok) {
      ++ok;
    } else {
      r.fail("trial " + str(trial) + " r = " + to_string(f) + (shift_ok ? "" : " [shift]") + (u_ok ? "" : " [u_n r2]") +
             (second_ok ? "" : " [second difference]"));
    }
  }
  r.notes.push_back(str(ok) + "/20 random rational functions");
  return r;
}

// ---------------------------------------------------------------- criterion 8

Result property_suite(unsigned seed) {
  Result r;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(1, 1999);
  long certified = 0, counter = 0;
  for (int trial = 0; trial < 100000; ++trial) {
    Rat xa(pick(rng), 1000), xb(pick(rng), 1000), ya(pick(rng), 1000), yb(pick(rng), 1000);
    for (Rat* q : {&xa, &xb, &ya, &yb}) q->canonicalize();
    if (xa == xb || ya == yb) continue;
    if (xa > xb) std::swap(xa, xb);
    if (ya > yb) std::swap(ya, yb);
    if (!rectangle_check(xa, xb, ya, yb)) continue;
    ++certified;
    for (int i = 1; i <= 5; ++i) {
      for (int j = 1; j <= 5; ++j) {
        if (sign(turan_t(xa + (xb - xa) * Rat(i, 6), ya + (yb - ya) * Rat(j, 6))) <= 0) ++counter;
      }
    }
  }
  r.expect(counter == 0, str(counter) + " interior counterexamples");
  r.notes.push_back("10^5 rectangles, " + str(certified) + " with positive corners, " + str(counter) + " counterexamples");

  const auto& entries = corpus();
  std::vector<std::string> problems(entries.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const Recurrence rec = entries[e].source.parse();
    auto table = make_table(rec);
    const auto a = table->terms(0, 2000);
    const auto P = rec.sum_form();
    const int d = rec.order();
    long residual = 0, identity = 0, checked = 0;
    for (long m = 0; m + d <= 2000; ++m) {
      Rat res = 0;
      for (int k = 0; k <= d; ++k) res += P[static_cast<std::size_t>(k)](Rat(m)) * a[static_cast<std::size_t>(m + k)];
      if (!is_zero(res)) ++residual;
    }
    // b = phi(a): b_{n-1} b_{n+1} / b_n^2 = u_n^2 (u_{n-1}-1)(u_{n+1}-1)/(u_n-1)^2
    std::vector<Rat> b(a.size());
    for (std::size_t n = 1; n + 1 < a.size(); ++n) b[n] = a[n] * a[n] - a[n - 1] * a[n + 1];
    auto u = [&](std::size_t n) { return Rat(a[n - 1] * a[n + 1] / (a[n] * a[n])); };
    for (std::size_t n = 3; n + 3 < a.size(); ++n) {
      if (is_zero(a[n - 1]) || is_zero(a[n]) || is_zero(a[n + 1]) || is_zero(b[n])) continue;
      Rat un = u(n), um = u(n - 1), up = u(n + 1);
      if (un == 1) continue;
      ++checked;
      Rat lhs = b[n - 1] * b[n + 1] / (b[n] * b[n]);
      Rat rhs = un * un * (um - 1) * (up - 1) / ((un - 1) * (un - 1));
      if (lhs != rhs) ++identity;
    }
    if (residual || identity || checked < 1900) {
      problems[e] = entries[e].source.name + ": " + str(residual) + " residuals, " + str(identity) + " identity failures, " +
                    str(checked) + " indices checked";
    }
  }
  for (const auto& p : problems) {
    if (!p.empty()) r.fail(p);
  }
  r.notes.push_back("residual and phi identity on " + str(static_cast<long>(entries.size())) + " corpus entries for n <= 2000");
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string cache_dir;
  std::vector<int> allow;
  unsigned seed = 51;
  int max_K = 12;
  app.add_option("--cache-dir", cache_dir, "Term cache directory");
  app.add_option("--allow-fail", allow, "Criteria whose failure is documented and does not fail the run");
  app.add_option("--seed", seed, "Seed for randomized criteria");
  CLI11_PARSE(app, argc, argv);
  if (!cache_dir.empty()) std::filesystem::create_directories(cache_dir);

  struct Criterion {
    int id;
    std::string title;
    double budget;  // seconds, 0 = none
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "corner polynomials and positivity ranges", 1, corner_goldens},
      {2, "u_n series goldens", 10, series_goldens},
      {3, "bounds for sum C(n,k)^4 end to end", 120, ht_end_to_end},
      {4, "Motzkin/n! sandwich on [75, 5000]", 60, [&] { return motzkin_sandwich(cache_dir); }},
      {5, "higher-order Turan verdicts", 0, [&] { return verdict_suite(max_K); }},
      {6, "l-log-concavity levels", 0, llc_suite},
      {7, "shift and power-log identities", 10, [&] { return lemma_identities(seed); }},
      {8, "rectangle brute force, residuals and phi identity", 120, [&] { return property_suite(seed); }},
  };
  const std::set<int> allowed(allow.begin(), allow.end());
  bool blocking = false;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0 && secs > c.budget) r.fail("took " + std::to_string(secs) + " s, budget " + std::to_string(c.budget) + " s");
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << c.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << c.title << " [" << secs << " s]";
    for (const auto& note : r.notes) line << "; " << note;
    if (!r.pass && allowed.count(c.id)) line << " (documented failure)";
    std::cout << line.str() << std::endl;
    blocking = blocking || (!r.pass && !allowed.count(c.id));
  }
  return blocking ? 1 : 0;
}
