#include "pturan/algebra/ratfunc.hpp"

namespace pturan {

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) throw Error("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = Poly(Rat(1));
    return;
  }
  Poly g = gcd(num, den);
  if (g.degree() > 0) {
    num = divmod(num, g).first;
    den = divmod(den, g).first;
  }
  Rat lc = den.lc();
  num_ = num.scaled(Rat(1) / lc);
  den_ = den.scaled(Rat(1) / lc);
}

Rat RatFunc::constant() const {
  if (!is_constant()) throw Error("rational function is not constant");
  return num_.coeff(0);
}

std::optional<Rat> RatFunc::try_eval(const Rat& at) const {
  Rat d = den_(at);
  if (pturan::is_zero(d)) return std::nullopt;
  return Rat(num_(at) / d);
}

Rat RatFunc::operator()(const Rat& at) const {
  auto v = try_eval(at);
  if (!v) throw Error("pole of rational function at " + to_string(at));
  return *v;
}

RatFunc RatFunc::derivative() const {
  if (is_polynomial()) return RatFunc(num_.derivative());
  // (n/d)' = (n' d/g - n d'/g) / (d^2/g) with g = gcd(d, d'); a common
  // factor of the new numerator and denominator divides g
  Poly g = gcd(den_, den_.derivative());
  Poly dg = divmod(den_, g).first, d1g = divmod(den_.derivative(), g).first;
  Poly num = num_.derivative() * dg - num_ * d1g;
  if (num.is_zero()) return {};
  Poly h = gcd(num, g);
  Poly den = den_ * dg;
  if (h.degree() > 0) {
    num = divmod(num, h).first;
    den = divmod(den, h).first;
  }
  Rat lc = den.lc();
  return RatFunc(num.scaled(Rat(1) / lc), den.scaled(Rat(1) / lc), Canonical{});
}

RatFunc RatFunc::shift(const Rat& a) const {
  // a shift preserves coprimality and the leading coefficient
  return RatFunc(num_.shift(a), den_.shift(a), Canonical{});
}

RatFunc RatFunc::compose(const RatFunc& s) const {
  // p(s) = sum p_i s^i; bring to the common denominator s.den^deg
  int dp = num_.degree(), dq = den_.degree();
  int d = std::max(dp, dq);
  auto homog = [&](const Poly& p) {
    Poly acc;
    std::vector<Poly> num_pows{Poly(Rat(1))};
    for (int i = 1; i <= d; ++i) num_pows.push_back(num_pows.back() * s.num());
    std::vector<Poly> den_pows{Poly(Rat(1))};
    for (int i = 1; i <= d; ++i) den_pows.push_back(den_pows.back() * s.den());
    for (int i = 0; i <= p.degree(); ++i) {
      acc += (num_pows[static_cast<std::size_t>(i)] * den_pows[static_cast<std::size_t>(d - i)])
                 .scaled(p.coeff(static_cast<std::size_t>(i)));
    }
    return acc;
  };
  if (is_zero()) return {};
  return RatFunc(homog(num_), homog(den_));
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return RatFunc(Rat(1)) / pow(-e);
  return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), Canonical{});
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  if (a.is_polynomial()) return RatFunc(a.num_ * b.den_ + b.num_, b.den_, RatFunc::Canonical{});
  if (b.is_polynomial()) return RatFunc(b.num_ * a.den_ + a.num_, a.den_, RatFunc::Canonical{});
  // a/b + c/d over the common denominator b d / g, g = gcd(b, d); only g
  // can share factors with the new numerator
  Poly g = gcd(a.den_, b.den_);
  Poly bg = divmod(a.den_, g).first, dg = divmod(b.den_, g).first;
  Poly num = a.num_ * dg + b.num_ * bg;
  if (num.is_zero()) return {};
  Poly h = gcd(num, g);
  if (h.degree() > 0) {
    num = divmod(num, h).first;
    g = divmod(g, h).first;
  }
  Poly den = bg * dg * g;
  Rat lc = den.lc();
  return RatFunc(num.scaled(Rat(1) / lc), den.scaled(Rat(1) / lc), RatFunc::Canonical{});
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // cancel across: gcd(a.num, b.den) and gcd(b.num, a.den)
  Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
  Poly an = divmod(a.num_, g1).first, bd = divmod(b.den_, g1).first;
  Poly bn = divmod(b.num_, g2).first, ad = divmod(a.den_, g2).first;
  Poly den = ad * bd;
  Rat lc = den.lc();
  return RatFunc((an * bn).scaled(Rat(1) / lc), den.scaled(Rat(1) / lc), RatFunc::Canonical{});
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw Error("rational function division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string to_string(const RatFunc& r, const std::string& var) {
  if (r.is_polynomial()) return to_string(r.num(), var);
  return "(" + to_string(r.num(), var) + ")/(" + to_string(r.den(), var) + ")";
}

Sign sign_at_infinity(const RatFunc& r) {
  // den is monic, so only the numerator's leading coefficient matters
  int s = sign(r.num().lc());
  return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
}

int Limit::compare(const Rat& c) const {
  switch (kind) {
    case Kind::plus_infinity:
      return 1;
    case Kind::minus_infinity:
      return -1;
    case Kind::finite:
      break;
  }
  return cmp(value, c) < 0 ? -1 : (cmp(value, c) > 0 ? 1 : 0);
}

std::string Limit::str() const {
  switch (kind) {
    case Kind::plus_infinity:
      return "+inf";
    case Kind::minus_infinity:
      return "-inf";
    case Kind::finite:
      break;
  }
  return to_string(value);
}

Limit limit_at_infinity(const RatFunc& r) {
  int dn = r.num().degree(), dd = r.den().degree();
  if (r.is_zero() || dn < dd) return Limit::finite(Rat(0));
  if (dn == dd) return Limit::finite(r.num().lc());
  return sign(r.num().lc()) > 0 ? Limit{Limit::Kind::plus_infinity, Rat(0)}
                                : Limit{Limit::Kind::minus_infinity, Rat(0)};
}

bool eventually_below(const RatFunc& r, const Rat& c) {
  int cmp_lim = limit_at_infinity(r).compare(c);
  if (cmp_lim != 0) return cmp_lim < 0;
  return sign_at_infinity(r - RatFunc(c)) == Sign::negative;
}

bool eventually_above(const RatFunc& r, const Rat& c) {
  int cmp_lim = limit_at_infinity(r).compare(c);
  if (cmp_lim != 0) return cmp_lim > 0;
  return sign_at_infinity(r - RatFunc(c)) == Sign::positive;
}

}  // namespace pturan
