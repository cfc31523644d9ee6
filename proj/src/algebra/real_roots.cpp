#include "pturan/algebra/real_roots.hpp"

#include <algorithm>
#include <functional>

namespace pturan {

namespace {

// Scale by a positive rational so the coefficients are coprime integers;
// unlike primitive_integer_part this never flips the sign.
Poly positive_normalize(const Poly& p) {
  if (p.is_zero()) return p;
  Poly q = primitive_integer_part(p);
  return sign(p.lc()) < 0 ? -q : q;
}

int sign_variations(const std::vector<Poly>& chain, const Rat& x) {
  int variations = 0, last = 0;
  for (const auto& p : chain) {
    int s = sign(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

Rat midpoint(const Rat& a, const Rat& b) { return (a + b) / 2; }

}  // namespace

std::optional<int> RatInterval::sign() const {
  if (lo > 0) return 1;
  if (hi < 0) return -1;
  if (lo == 0 && hi == 0) return 0;
  return std::nullopt;
}

RatInterval operator+(const RatInterval& a, const RatInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

RatInterval operator-(const RatInterval& a, const RatInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  Rat p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

RatInterval eval_interval(const Poly& p, const RatInterval& x) {
  RatInterval acc{Rat(0), Rat(0)};
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * x;
    acc.lo += *it;
    acc.hi += *it;
  }
  return acc;
}

AlgebraicReal::AlgebraicReal(Poly defining, Rat lo, Rat hi)
    : poly_(positive_normalize(defining)), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (poly_.degree() < 1) throw Error("algebraic real needs a nonconstant polynomial");
  if (lo_ > hi_) throw Error("algebraic real with empty interval");
}

AlgebraicReal AlgebraicReal::rational(const Rat& v) {
  return AlgebraicReal(Poly(std::vector<Rat>{-v, Rat(1)}), v, v);
}

void AlgebraicReal::refine(const Rat& width) {
  if (is_rational()) return;
  int s_lo = sign(poly_(lo_));
  while (hi_ - lo_ > width) {
    Rat m = midpoint(lo_, hi_);
    int s = sign(poly_(m));
    if (s == 0) {
      lo_ = hi_ = m;
      return;
    }
    if (s == s_lo) {
      lo_ = m;
    } else {
      hi_ = m;
    }
  }
}

double AlgebraicReal::approx() const {
  AlgebraicReal tmp = *this;
  tmp.refine(Rat(1, 1) / Rat(Int(1) << 60));
  return Rat(midpoint(tmp.lo_, tmp.hi_)).get_d();
}

int AlgebraicReal::compare(const Rat& q) const {
  if (is_rational()) return cmp(lo_, q) < 0 ? -1 : (cmp(lo_, q) > 0 ? 1 : 0);
  if (q < lo_) return 1;
  if (q > hi_) return -1;
  // q inside the isolating interval: one sign test settles the side
  int s_q = sign(poly_(q));
  if (s_q == 0) return 0;
  int s_lo = sign(poly_(lo_));
  if (s_lo == 0) s_lo = -sign(poly_(hi_));
  return s_q == s_lo ? 1 : -1;
}

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain{positive_normalize(p)};
  if (p.degree() < 1) return chain;
  chain.push_back(positive_normalize(p.derivative()));
  while (true) {
    Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(positive_normalize(-r));
  }
  return chain;
}

int sturm_count(const std::vector<Poly>& chain, const Rat& a, const Rat& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

Rat cauchy_bound(const Poly& p) {
  if (p.degree() < 1) return Rat(0);
  Rat m = 0;
  Rat lc = abs(p.lc());
  for (int i = 0; i < p.degree(); ++i) {
    m = std::max(m, Rat(abs(p.coeff(static_cast<std::size_t>(i))) / lc));
  }
  return m + 1;
}

std::vector<AlgebraicReal> real_roots_isolated(const Poly& p) {
  if (p.is_zero()) throw Error("real_roots_isolated: zero polynomial");
  Poly q = positive_normalize(squarefree_part(p));
  if (q.degree() < 1) return {};
  auto chain = sturm_chain(q);
  Rat bound = cauchy_bound(q);

  std::vector<std::pair<Rat, Rat>> pieces;  // (a, b] holding exactly one root
  std::vector<std::pair<Rat, Rat>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    int k = sturm_count(chain, a, b);
    if (k == 0) continue;
    if (k == 1) {
      pieces.emplace_back(a, b);
      continue;
    }
    Rat m = midpoint(a, b);
    stack.emplace_back(a, m);
    stack.emplace_back(m, b);
  }

  const Rat grid = Rat(1) / Rat(abs(q.lc()));  // rational roots are multiples of this
  std::vector<AlgebraicReal> roots;
  for (auto [a, b] : pieces) {
    if (is_zero(q(b))) {
      roots.push_back(AlgebraicReal::rational(b));
      continue;
    }
    bool exact = false;
    while (is_zero(q(a))) {
      Rat m = midpoint(a, b);
      if (is_zero(q(m))) {
        roots.push_back(AlgebraicReal::rational(m));
        exact = true;
        break;
      }
      if (sturm_count(chain, a, m) == 1) {
        b = m;
      } else {
        a = m;
      }
    }
    if (exact) continue;
    AlgebraicReal root(q, a, b);
    root.refine(grid / 2);
    if (!root.is_rational()) {
      // at most two grid points fit inside an interval narrower than the grid
      for (Int k = ceil(Rat(root.lo() / grid)); Rat(k) * grid <= root.hi(); ++k) {
        Rat cand = Rat(k) * grid;
        if (is_zero(q(cand))) {
          root = AlgebraicReal::rational(cand);
          break;
        }
      }
    }
    roots.push_back(root);
  }
  std::sort(roots.begin(), roots.end(),
            [](const AlgebraicReal& x, const AlgebraicReal& y) { return x.lo() < y.lo() || (x.lo() == y.lo() && x.hi() < y.hi()); });
  return roots;
}

std::optional<Rat> largest_real_root_upper(const Poly& p) {
  if (p.degree() < 1) return std::nullopt;
  auto roots = real_roots_isolated(p);
  if (roots.empty()) return std::nullopt;
  return roots.back().hi();
}

namespace {

long threshold_scan(const std::vector<Poly>& factors, const std::function<bool(long)>& positive_at) {
  long start = 0;
  for (const Poly& p : factors) {
    auto top_root = largest_real_root_upper(p);
    if (!top_root) continue;
    Int top = floor(*top_root);
    if (top > start) {
      if (!top.fits_slong_p()) throw Error("positivity threshold exceeds machine range");
      start = top.get_si();
    }
  }
  long n = start;
  while (n >= 1 && positive_at(n)) --n;
  return n;
}

}  // namespace

long eventual_positivity_threshold(const RatFunc& r) {
  if (sign_at_infinity(r) != Sign::positive) {
    throw Error("eventual_positivity_threshold: " + to_string(r) + " is not eventually positive");
  }
  return threshold_scan({r.num(), r.den()}, [&](long n) {
    Rat v(n);
    return sign(r.num()(v)) * sign(r.den()(v)) > 0;
  });
}

long eventual_positivity_threshold(const Poly& p) {
  if (sign_at_infinity(p) <= 0) {
    throw Error("eventual_positivity_threshold: " + to_string(p) + " is not eventually positive");
  }
  return threshold_scan({p}, [&](long n) { return sign(p(Rat(n))) > 0; });
}

}  // namespace pturan
