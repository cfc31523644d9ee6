#include "pturan/algebra/number_field.hpp"

namespace pturan {

namespace {

const Rat& initial_width() {
  static const Rat w = Rat(1) / Rat(Int(1) << 64);
  return w;
}

bool has_theta_as_root(const Poly& g, const AlgebraicReal& theta) {
  if (g.degree() < 1) return false;
  return sturm_count(sturm_chain(g), theta.lo(), theta.hi()) >= 1;
}

using PolyQM = Poly;  // polynomials in m, entries of the Sylvester matrix

Poly determinant(std::vector<std::vector<PolyQM>> a) {
  // Bareiss fraction-free elimination; every division is exact
  const std::size_t n = a.size();
  if (n == 0) return Poly(Rat(1));
  int sgn = 1;
  PolyQM prev(Rat(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) return Poly();
      std::swap(a[k], a[r]);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        PolyQM v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = divmod(v, prev).first;
      }
      a[i][k] = Poly();
    }
    prev = a[k][k];
  }
  return sgn > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

}  // namespace

NumberField::NumberField(Poly p, AlgebraicReal theta)
    : minpoly_(make_monic(p)), theta_(std::move(theta)) {
  if (minpoly_.degree() < 2) throw Error("number field needs a minimal polynomial of degree >= 2", "algebra");
  if (theta_.is_rational()) throw Error("number field generator must be irrational", "algebra");
  theta_ = AlgebraicReal(minpoly_, theta_.lo(), theta_.hi());
  theta_.refine(initial_width());
}

Poly NumberField::reduce(const Poly& p) const {
  if (p.degree() < minpoly_.degree()) return p;
  return divmod(p, minpoly_).second;
}

FieldPtr make_field(const Poly& p, const AlgebraicReal& theta) {
  if (theta.is_rational()) return nullptr;
  Poly q = squarefree_part(p);
  for (const auto& root : real_roots_isolated(q)) {
    if (root.is_rational()) q = divmod(q, Poly(std::vector<Rat>{-root.value(), Rat(1)})).first;
  }
  return std::make_shared<const NumberField>(q, AlgebraicReal(q, theta.lo(), theta.hi()));
}

AlgNum::AlgNum(FieldPtr field, const Poly& rep) : field_(std::move(field)) {
  rep_ = field_ ? field_->reduce(rep) : rep;
  if (!field_ && rep_.degree() > 0) throw Error("non-constant representation without a number field", "algebra");
}

AlgNum AlgNum::generator(const FieldPtr& field) {
  if (!field) throw Error("generator of a null field", "algebra");
  return AlgNum(field, Poly::x());
}

Rat AlgNum::rational_value() const {
  if (!is_rational()) throw Error("algebraic number " + to_string(*this) + " is not rational", "algebra");
  return rep_.coeff(0);
}

FieldPtr AlgNum::common(const AlgNum& a, const AlgNum& b) {
  if (!a.field_) return b.field_;
  if (!b.field_ || a.field_ == b.field_) return a.field_;
  if (a.field_->minpoly() == b.field_->minpoly()) return a.field_;
  throw Error("arithmetic across different number fields", "algebra");
}

AlgNum operator+(const AlgNum& a, const AlgNum& b) {
  return AlgNum(AlgNum::common(a, b), a.rep_ + b.rep_, AlgNum::Raw{});
}

AlgNum operator-(const AlgNum& a, const AlgNum& b) {
  return AlgNum(AlgNum::common(a, b), a.rep_ - b.rep_, AlgNum::Raw{});
}

AlgNum operator*(const AlgNum& a, const AlgNum& b) {
  FieldPtr f = AlgNum::common(a, b);
  if (a.is_rational()) return AlgNum(f, b.rep_.scaled(a.rep_.coeff(0)), AlgNum::Raw{});
  if (b.is_rational()) return AlgNum(f, a.rep_.scaled(b.rep_.coeff(0)), AlgNum::Raw{});
  return AlgNum(f, f->reduce(a.rep_ * b.rep_), AlgNum::Raw{});
}

AlgNum AlgNum::inverse() const {
  if (rep_.is_zero()) throw Error("division by zero in number field", "algebra");
  if (is_rational()) return AlgNum(field_, Poly(Rat(1) / rep_.coeff(0)), Raw{});
  auto eg = ext_gcd(rep_, field_->minpoly());
  if (eg.g.degree() == 0) return AlgNum(field_, field_->reduce(eg.s), Raw{});
  if (has_theta_as_root(eg.g, field_->theta())) throw FieldReduction(eg.g);
  throw FieldReduction(divmod(field_->minpoly(), eg.g).first);
}

RatInterval AlgNum::enclosure(const Rat& width) const {
  if (is_rational()) return {rep_.coeff(0), rep_.coeff(0)};
  AlgebraicReal theta = field_->theta();
  Rat tw = theta.hi() - theta.lo();
  while (true) {
    RatInterval v = eval_interval(rep_, {theta.lo(), theta.hi()});
    if (v.width() <= width) return v;
    tw /= 16;
    theta.refine(tw);
  }
}

int AlgNum::sign() const {
  if (rep_.is_zero()) return 0;
  if (is_rational()) return pturan::sign(rep_.coeff(0));
  Poly g = gcd(rep_, field_->minpoly());
  if (has_theta_as_root(g, field_->theta())) throw FieldReduction(g);
  AlgebraicReal theta = field_->theta();
  Rat tw = theta.hi() - theta.lo();
  while (true) {
    auto s = eval_interval(rep_, {theta.lo(), theta.hi()}).sign();
    if (s && *s != 0) return *s;
    tw /= 16;
    theta.refine(tw);
  }
}

double AlgNum::approx() const {
  RatInterval v = enclosure(Rat(1) / Rat(Int(1) << 60));
  return Rat((v.lo + v.hi) / 2).get_d();
}

int compare(const AlgNum& a, const Rat& q) { return (a - AlgNum(q)).sign(); }
int compare(const AlgNum& a, const AlgNum& b) { return (a - b).sign(); }

Int floor(const AlgNum& a) {
  if (a.is_rational()) return floor(a.rational_value());
  RatInterval v = a.enclosure(Rat(1, 4));
  Int f = floor(v.lo);
  while (compare(a, Rat(f)) < 0) --f;
  while (compare(a, Rat(f + 1)) >= 0) ++f;
  return f;
}

Int ceil(const AlgNum& a) {
  Int f = floor(a);
  return compare(a, Rat(f)) == 0 ? f : Int(f + 1);
}

AlgNum pow(const AlgNum& a, long e) {
  if (e < 0) return pow(a.inverse(), -e);
  AlgNum r(1), b = a;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

std::string to_string(const AlgNum& a, const std::string& var) {
  if (a.is_rational()) return to_string(a.rep().coeff(0));
  return to_string(a.rep(), var);
}

PolyK to_polyk(const Poly& p) {
  std::vector<AlgNum> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return PolyK(std::move(c));
}

Poly norm(const PolyK& p) {
  FieldPtr field;
  bool rational = true;
  for (const auto& c : p.coeffs()) {
    if (c.field() && !field) field = c.field();
    if (!c.is_rational()) rational = false;
  }
  if (rational) {
    std::vector<Rat> c;
    for (const auto& v : p.coeffs()) c.push_back(v.rep().coeff(0));
    return Poly(std::move(c));
  }
  // resultant in theta of minpoly(theta) and sum_i rep_i(theta) m^i
  const Poly& a = field->minpoly();
  const int da = a.degree();
  std::vector<PolyQM> b(static_cast<std::size_t>(da));
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    const Poly& rep = p.coeffs()[i].rep();
    for (int j = 0; j <= rep.degree(); ++j) {
      b[static_cast<std::size_t>(j)] += Poly::monomial(rep.coeff(static_cast<std::size_t>(j)), i);
    }
  }
  int db = da - 1;
  while (db > 0 && b[static_cast<std::size_t>(db)].is_zero()) --db;
  const std::size_t n = static_cast<std::size_t>(da + db);
  std::vector<std::vector<PolyQM>> s(n, std::vector<PolyQM>(n));
  for (int r = 0; r < db; ++r) {
    for (int j = 0; j <= da; ++j) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + da - j)] = Poly(a.coeff(static_cast<std::size_t>(j)));
  }
  for (int r = 0; r < da; ++r) {
    for (int j = 0; j <= db; ++j) s[static_cast<std::size_t>(db + r)][static_cast<std::size_t>(r + db - j)] = b[static_cast<std::size_t>(j)];
  }
  return determinant(std::move(s));
}

int sign_at_infinity(const PolyK& p) { return p.is_zero() ? 0 : p.lc().sign(); }

FracK operator+(const FracK& a, const FracK& b) {
  if (a.den == b.den) return {a.num + b.num, a.den};
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

FracK operator-(const FracK& a, const FracK& b) {
  if (a.den == b.den) return {a.num - b.num, a.den};
  return {a.num * b.den - b.num * a.den, a.den * b.den};
}

FracK operator*(const FracK& a, const FracK& b) { return {a.num * b.num, a.den * b.den}; }

FracK operator/(const FracK& a, const FracK& b) {
  if (b.num.is_zero()) throw Error("division by zero fraction", "algebra");
  return {a.num * b.den, a.den * b.num};
}

AlgNum FracK::operator()(const Rat& m) const {
  AlgNum d = den.eval<AlgNum>(AlgNum(m));
  if (d.sign() == 0) throw Error("pole of fraction at " + to_string(m), "algebra");
  return num.eval<AlgNum>(AlgNum(m)) / d;
}

long eventual_positivity_threshold(const FracK& r) {
  if (sign_at_infinity(r.num) * sign_at_infinity(r.den) <= 0) {
    throw Error("fraction over the number field is not eventually positive", "algebra");
  }
  long n = 0;
  for (const PolyK* part : {&r.num, &r.den}) {
    auto top_root = largest_real_root_upper(norm(*part));
    if (!top_root) continue;
    Int top = floor(*top_root);
    if (top > n) {
      if (!top.fits_slong_p()) throw Error("positivity threshold exceeds machine range", "algebra");
      n = top.get_si();
    }
  }
  while (n >= 1) {
    const AlgNum m{Rat(n)};
    if (r.num.eval<AlgNum>(m).sign() * r.den.eval<AlgNum>(m).sign() <= 0) break;
    --n;
  }
  return n;
}

}  // namespace pturan
