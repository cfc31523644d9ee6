#include "pturan/certify/certify.hpp"

#include <algorithm>
#include <random>

namespace pturan {

namespace {

FracK to_frack(const RatFunc& r) { return {to_polyk(r.num()), to_polyk(r.den())}; }

FracK shifted(const FracK& r, long j) {
  const AlgNum a{Rat(j)};
  return {r.num.shift(a), r.den.shift(a)};
}

FracK inverse(const FracK& r) { return {r.den, r.num}; }

long threshold_or_throw(const FracK& r, const std::string& what) {
  try {
    return eventual_positivity_threshold(r);
  } catch (const Error&) {
    throw Error(what + " is not eventually positive", "certify");
  }
}

[[noreturn]] void stage_failure(const std::string& stage, const std::exception& e) {
  throw Error("stage " + stage + ": " + e.what(), "certify");
}

// theta n^kappa (n^K + sum c_i n^(K-i) + sign) / n^K
FracK window_bound(const RatioExpansion& r, int K, int sign) {
  std::vector<AlgNum> c(static_cast<std::size_t>(K + 1), AlgNum(0));
  c[static_cast<std::size_t>(K)] = AlgNum(1);
  for (int i = 1; i <= K; ++i) c[static_cast<std::size_t>(K - i)] = r.coeffs[static_cast<std::size_t>(i - 1)];
  c[0] += AlgNum(sign);
  PolyK num = PolyK(std::move(c)).scaled(r.theta);
  const long kappa = to_long(r.kappa);
  PolyK den = PolyK::monomial(AlgNum(1), static_cast<std::size_t>(K));
  if (kappa >= 0) {
    num *= PolyK::monomial(AlgNum(1), static_cast<std::size_t>(kappa));
  } else {
    den *= PolyK::monomial(AlgNum(1), static_cast<std::size_t>(-kappa));
  }
  return {num, den};
}

bool inside(const FracK& lower, const FracK& upper, long m, const Rat& value) {
  return compare(lower(Rat(m)), value) < 0 && compare(upper(Rat(m)), value) > 0;
}

// Exact ratio a_m / a_{m-1}, or nullopt when a_{m-1} = 0.
std::optional<Rat> exact_ratio(TermTable& table, long m) {
  Rat prev = table.term(m - 1);
  if (is_zero(prev)) return std::nullopt;
  return Rat(table.term(m) / prev);
}

bool ratio_in_window(TermTable& table, const RatioBounds& rb, long m) {
  if (m < 1) return false;
  if (is_zero(rb.lower.den(AlgNum(Rat(m)))) || is_zero(rb.upper.den(AlgNum(Rat(m))))) return false;
  auto r = exact_ratio(table, m);
  return r && inside(rb.lower, rb.upper, m, *r);
}

bool u_in_bounds(const SequenceView& raw, const RatFunc& g, const RatFunc& f, long n) {
  auto gv = g.try_eval(Rat(n)), fv = f.try_eval(Rat(n));
  if (!gv || !fv) return false;
  Rat a = raw.term(n);
  if (is_zero(a)) return false;
  Rat u = raw.u(n);
  return *gv < u && u < *fv;
}

const std::array<const char*, 4> kCornerLabels = {"t(g,g+)", "t(g,f+)", "t(f,g+)", "t(f,f+)"};

std::array<RatFunc, 4> corner_values(const RatFunc& g, const RatFunc& f) {
  return {corner_polynomial(g, g), corner_polynomial(g, f), corner_polynomial(f, g), corner_polynomial(f, f)};
}

}  // namespace

RatFunc corner_polynomial(const RatFunc& x, const RatFunc& y) {
  RatFunc yn = y.shift(Rat(1));
  RatFunc one(Rat(1)), four(Rat(4));
  RatFunc w = one - x * yn;
  return four * (one - x) * (one - yn) - w * w;
}

bool rectangle_check(const Rat& x1, const Rat& x2, const Rat& y1, const Rat& y2) {
  for (const Rat* x : {&x1, &x2}) {
    for (const Rat* y : {&y1, &y2}) {
      if (sign(turan_t(*x, *y)) <= 0) return false;
    }
  }
  return true;
}

std::vector<FracK> window_inequalities(const Recurrence& rec, const FracK& lower, const FracK& upper) {
  const auto P = rec.sum_form();
  const int d = rec.order();
  const PolyK lead = to_polyk(P[static_cast<std::size_t>(d)]);
  std::vector<FracK> out{lower};
  // r_{n+d} = -sum_{k<d} P_k(n)/P_d(n) / (r_{n+k+1} ... r_{n+d-1}); a vertex
  // picks the lower or upper bound for each r_{n+j}, j = 1..d-1
  const int vertices = 1 << (d - 1);
  const FracK lo_next = shifted(lower, d), hi_next = shifted(upper, d);
  for (int v = 0; v < vertices; ++v) {
    std::vector<FracK> inv(static_cast<std::size_t>(d));  // 1 / r_{n+j}
    for (int j = 1; j < d; ++j) {
      const FracK& b = (v >> (j - 1)) & 1 ? upper : lower;
      inv[static_cast<std::size_t>(j)] = inverse(shifted(b, j));
    }
    FracK next{PolyK(), PolyK(AlgNum(1))};
    FracK tail{PolyK(AlgNum(1)), PolyK(AlgNum(1))};  // 1 / (r_{n+k+1} ... r_{n+d-1})
    for (int k = d - 1; k >= 0; --k) {
      if (k < d - 1) tail = tail * inv[static_cast<std::size_t>(k + 1)];
      const Poly& pk = P[static_cast<std::size_t>(k)];
      if (pk.is_zero()) continue;
      next = next - FracK{to_polyk(pk), lead} * tail;
    }
    out.push_back(next - lo_next);
    out.push_back(hi_next - next);
  }
  return out;
}

RatioBounds certify_ratio_bounds(const Recurrence& rec, const RatioExpansion& r, int K, long search_limit) {
  if (r.rho != 1) {
    throw UnsupportedRegime("fractional exponents", "ratio bounds need rho = 1, the expansion has rho = " + std::to_string(r.rho));
  }
  if (K < 1 || r.K() < K) throw Error("ratio expansion has fewer than K = " + std::to_string(K) + " coefficients", "certify");
  RatioBounds rb;
  rb.field = r.field;
  rb.K = K;
  rb.lower = window_bound(r, K, -1);
  rb.upper = window_bound(r, K, +1);
  long T = 0;
  for (const FracK& q : window_inequalities(rec, rb.lower, rb.upper)) {
    T = std::max(T, threshold_or_throw(q, "window invariance at K = " + std::to_string(K)));
  }
  rb.induction_threshold = T;

  // base case: d-1 consecutive exact ratios r_{n+1..n+d-1} inside, n > T
  const int need = rec.order() - 1;
  auto table = make_table(rec);
  long run = 0, m = T + 2;
  if (need == 0) {
    rb.valid_from = T + 2;
  } else {
    for (; m <= T + 1 + search_limit; ++m) {
      run = ratio_in_window(*table, rb, m) ? run + 1 : 0;
      if (run == need) break;
    }
    if (run < need) {
      throw Error("exact ratios did not enter the window within " + std::to_string(search_limit) + " indices", "certify");
    }
    rb.valid_from = m - need + 1;
  }
  // below the induction range, direct exact checks extend the claim
  while (rb.valid_from > 1 && ratio_in_window(*table, rb, rb.valid_from - 1)) --rb.valid_from;
  return rb;
}

RatFunc bound_function(const std::vector<std::pair<Rat, Rat>>& terms, int scale_power) {
  RatFunc out;
  for (const auto& [e, c] : terms) {
    if (e.get_den() != 1) throw Error("bound exponents must be integers", "certify");
    long k = to_long(e);
    RatFunc power = k >= 0 ? RatFunc(Poly(Rat(1)), Poly::monomial(Rat(1), static_cast<std::size_t>(k)))
                           : RatFunc(Poly::monomial(Rat(1), static_cast<std::size_t>(-k)));
    out += RatFunc(c) * power;
  }
  if (scale_power != 0) {
    RatFunc ratio(Poly::x(), Poly::x() + Poly(Rat(1)));
    out *= scale_power > 0 ? ratio.pow(scale_power) : (RatFunc(Rat(1)) / ratio).pow(-scale_power);
  }
  return out;
}

RatFunc UBounds::g() const { return bound_function(lower_terms, scale_power); }
RatFunc UBounds::f() const { return bound_function(upper_terms, scale_power); }

std::array<FracK, 2> step_inequalities(const RatioBounds& rb, const RatFunc& g, const RatFunc& f) {
  return {to_frack(f) * rb.lower - shifted(rb.upper, 1), shifted(rb.lower, 1) - to_frack(g) * rb.upper};
}

UBounds u_bounds_from_ratio(const Recurrence& rec, const RatioBounds& rb, const KSeries& u, const UBoundOptions& opt,
                            int scale_power) {
  if (opt.terms < 1) throw Error("u bounds need at least one term", "certify");
  std::vector<std::pair<Rat, AlgNum>> kept;
  for (const auto& [e, c] : u.terms()) {
    if (is_zero(e)) continue;
    kept.emplace_back(e, c);
    if (static_cast<int>(kept.size()) == opt.terms) break;
  }
  if (static_cast<int>(kept.size()) < opt.terms) {
    throw Error("u_n expansion has fewer than " + std::to_string(opt.terms) + " nonzero terms", "certify");
  }
  UBounds ub;
  ub.scale_power = scale_power;
  ub.lower_terms.emplace_back(Rat(0), Rat(1));
  ub.upper_terms.emplace_back(Rat(0), Rat(1));
  for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
    if (!kept[i].second.is_rational()) {
      throw Error("irrational u_n coefficient before the last kept term; keep fewer terms", "certify");
    }
    ub.lower_terms.emplace_back(kept[i].first, kept[i].second.rational_value());
    ub.upper_terms.emplace_back(kept[i].first, kept[i].second.rational_value());
  }
  const auto& [beta, d] = kept.back();
  AlgNum lo = d - AlgNum(1), hi = d + AlgNum(1);
  Rat lo_r, hi_r;
  if (opt.denominator || !d.is_rational()) {
    const Rat q(opt.denominator.value_or(1000000));
    lo_r = Rat(floor(lo * AlgNum(q))) / q;
    hi_r = Rat(ceil(hi * AlgNum(q))) / q;
  } else {
    lo_r = lo.rational_value();
    hi_r = hi.rational_value();
  }
  if (!is_zero(lo_r)) ub.lower_terms.emplace_back(beta, lo_r);
  if (!is_zero(hi_r)) ub.upper_terms.emplace_back(beta, hi_r);

  const RatFunc g = bound_function(ub.lower_terms, 0), f = bound_function(ub.upper_terms, 0);
  long T = threshold_or_throw(to_frack(f - g), "f - g");
  for (const FracK& q : step_inequalities(rb, g, f)) T = std::max(T, threshold_or_throw(q, "ratio-to-u step"));
  ub.step_threshold = T;
  ub.valid_from = std::max(rb.valid_from, T + 1);
  SequenceView raw(make_table(rec), Transform{});
  while (ub.valid_from > 1 && u_in_bounds(raw, g, f, ub.valid_from - 1)) --ub.valid_from;
  return ub;
}

TuranCertificate certify_turan3(const Recurrence& rec, const Transform& t, const CertifyOptions& opt) {
  if (t.phi_level != 0) throw Error("certification of phi-iterated sequences is not supported", "certify");
  TuranCertificate cert;
  cert.sequence = rec;
  cert.transform = t;
  RatioExpansion r;
  try {
    r = ratio_expansion(rec, {opt.K, std::nullopt});
  } catch (const std::exception& e) {
    stage_failure("ratio expansion", e);
  }
  try {
    cert.ratio = certify_ratio_bounds(rec, r, opt.K, opt.search_limit);
  } catch (const std::exception& e) {
    stage_failure("ratio bounds", e);
  }
  try {
    cert.bounds = u_bounds_from_ratio(rec, cert.ratio, u_expansion_k(r), opt.u, t.scale_power);
  } catch (const std::exception& e) {
    stage_failure("u bounds", e);
  }
  const RatFunc g = cert.bounds.g(), f = cert.bounds.f();
  auto values = corner_values(g, f);
  std::array<std::string, 4> errors;
#pragma omp parallel for schedule(static, 1)
  for (int i = 0; i < 4; ++i) {
    try {
      cert.corners[static_cast<std::size_t>(i)] = {kCornerLabels[static_cast<std::size_t>(i)], values[static_cast<std::size_t>(i)],
                                                   eventual_positivity_threshold(values[static_cast<std::size_t>(i)])};
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = std::string(kCornerLabels[static_cast<std::size_t>(i)]) + " is not eventually positive";
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw Error("stage corners: " + e, "certify");
  }
  long N = cert.bounds.valid_from;
  for (const auto& c : cert.corners) N = std::max(N, c.threshold + 1);
  cert.N = N;
  SequenceView seq(make_table(rec), t);
  cert.segment_from = seq.first_index() + 1;
  cert.segment_to = std::max(N, cert.segment_from);
  try {
    cert.violations = check_inequality_range(seq, Inequality::turan3, cert.segment_from, cert.segment_to);
  } catch (const std::exception& e) {
    stage_failure("initial segment", e);
  }
  return cert;
}

VerifyReport verify_certificate(const TuranCertificate& cert, const Recurrence& rec, unsigned seed, int samples) {
  VerifyReport rep;
  auto guarded = [&](const std::string& what, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      rep.fail(what + ": " + e.what());
    }
  };
  if (cert.sequence.canonical_text() != rec.canonical_text()) rep.fail("certificate is for a different recurrence");
  if (cert.transform.phi_level != 0) rep.fail("phi-iterated sequences are not certifiable");
  if (cert.bounds.scale_power != cert.transform.scale_power) rep.fail("bound scaling differs from the sequence scaling");
  if (!rep.ok) return rep;

  auto table = make_table(rec);
  const RatioBounds& rb = cert.ratio;
  guarded("ratio window", [&] {
    for (const FracK& q : window_inequalities(rec, rb.lower, rb.upper)) {
      long t = eventual_positivity_threshold(q);
      if (t > rb.induction_threshold) {
        rep.fail("window inequality threshold " + std::to_string(t) + " exceeds the stored " + std::to_string(rb.induction_threshold));
      }
    }
    const int d = rec.order();
    // exact ratios below the induction range, then the d-1 base ratios
    long top = std::max(rb.valid_from, rb.induction_threshold + 2) + d - 2;
    for (long m = rb.valid_from; m <= top; ++m) {
      if (!ratio_in_window(*table, rb, m)) rep.fail("exact ratio r_" + std::to_string(m) + " lies outside the window");
    }
  });

  const RatFunc g0 = bound_function(cert.bounds.lower_terms, 0), f0 = bound_function(cert.bounds.upper_terms, 0);
  guarded("u bounds", [&] {
    long t = eventual_positivity_threshold(f0 - g0);
    for (const FracK& q : step_inequalities(rb, g0, f0)) t = std::max(t, eventual_positivity_threshold(q));
    if (t > cert.bounds.step_threshold) rep.fail("ratio-to-u step threshold " + std::to_string(t) + " exceeds the stored one");
    // indices below the proven range are claimed by direct exact checks
    long direct_to = std::max(rb.valid_from, cert.bounds.step_threshold + 1);
    SequenceView raw(table, Transform{});
    for (long n = cert.bounds.valid_from; n < direct_to; ++n) {
      if (!u_in_bounds(raw, g0, f0, n)) rep.fail("u_" + std::to_string(n) + " lies outside the bounds");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> pick(cert.bounds.valid_from, cert.bounds.valid_from + 2000);
    for (int i = 0; i < samples; ++i) {
      long n = pick(rng);
      if (!u_in_bounds(raw, g0, f0, n)) rep.fail("sampled u_" + std::to_string(n) + " lies outside the bounds");
    }
  });

  const RatFunc g = cert.bounds.g(), f = cert.bounds.f();
  guarded("corners", [&] {
    auto values = corner_values(g, f);
    for (std::size_t i = 0; i < 4; ++i) {
      const Corner& c = cert.corners[i];
      if (c.label != kCornerLabels[i]) rep.fail("corner " + std::to_string(i) + " has label " + c.label);
      if (c.value != values[i]) rep.fail(std::string(kCornerLabels[i]) + " does not match the bounds");
      long t = eventual_positivity_threshold(values[i]);
      if (t > c.threshold) rep.fail(std::string(kCornerLabels[i]) + " threshold is " + std::to_string(t));
      if (t >= cert.N) rep.fail(std::string(kCornerLabels[i]) + " is not positive for all n >= N");
    }
  });
  if (cert.N < cert.bounds.valid_from) rep.fail("N lies below the range of the u bounds");

  guarded("initial segment", [&] {
    SequenceView seq(table, cert.transform);
    if (cert.segment_from != seq.first_index() + 1) rep.fail("initial segment does not start at the first index");
    if (cert.segment_to < cert.N) rep.fail("initial segment stops before N");
    auto bad = check_inequality_range(seq, Inequality::turan3, cert.segment_from, cert.segment_to);
    if (bad != cert.violations) rep.fail("initial segment violations differ from the recorded ones");
  });
  return rep;
}

}  // namespace pturan
