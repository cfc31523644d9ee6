#include "pturan/asymptotics/expansion.hpp"

#include <algorithm>
#include <complex>
#include <numeric>

namespace pturan {

namespace {

// Truncated power series in x = n^(-1/rho); entry i multiplies x^i.
using PS = std::vector<AlgNum>;

PS ps_one(int N) {
  PS p(static_cast<std::size_t>(N + 1), AlgNum(0));
  p[0] = AlgNum(1);
  return p;
}

PS ps_mul(const PS& a, const PS& b, int N) {
  PS out(static_cast<std::size_t>(N + 1), AlgNum(0));
  for (int i = 0; i <= N; ++i) {
    if (is_zero(a[static_cast<std::size_t>(i)])) continue;
    for (int j = 0; i + j <= N; ++j) {
      if (is_zero(b[static_cast<std::size_t>(j)])) continue;
      out[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

PS ps_inv(const PS& a, int N) {
  PS out(static_cast<std::size_t>(N + 1), AlgNum(0));
  AlgNum inv0 = a[0].inverse();
  out[0] = inv0;
  for (int i = 1; i <= N; ++i) {
    AlgNum acc(0);
    for (int j = 1; j <= i; ++j) acc += a[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(i - j)];
    out[static_cast<std::size_t>(i)] = -acc * inv0;
  }
  return out;
}

// (1 + j x^rho)^alpha
PS ps_binomial(const Rat& alpha, long j, int rho, int N) {
  PS out(static_cast<std::size_t>(N + 1), AlgNum(0));
  Rat jt = 1;
  for (int t = 0; t * rho <= N; ++t) {
    out[static_cast<std::size_t>(t * rho)] = AlgNum(binomial(alpha, static_cast<unsigned long>(t)) * jt);
    jt *= j;
  }
  return out;
}

// S(n + j) = 1 + sum_i c_i x^i (1 + j x^rho)^(-i/rho)
PS ps_shifted_s(const std::vector<AlgNum>& c, long j, int rho, int N) {
  PS out = ps_one(N);
  for (int i = 1; i <= N && i <= static_cast<int>(c.size()); ++i) {
    const AlgNum& ci = c[static_cast<std::size_t>(i - 1)];
    if (is_zero(ci)) continue;
    PS b = j == 0 ? ps_one(N) : ps_binomial(Rat(-i) / Rat(rho), j, rho, N);
    for (int t = 0; i + t <= N; ++t) out[static_cast<std::size_t>(i + t)] += ci * b[static_cast<std::size_t>(t)];
  }
  return out;
}

struct Shape {
  std::vector<Poly> P;  // sum form
  std::vector<int> deg;
  Rat kappa, E;
  std::vector<int> edge;
  std::vector<long> e;  // x-exponent shift per k
  int rho = 1;
};

Shape analyse(const Recurrence& rec, const std::optional<int>& rho_opt) {
  Shape s;
  s.P = rec.sum_form();
  const int d = rec.order();
  for (const auto& p : s.P) s.deg.push_back(p.is_zero() ? -1 : p.degree());
  bool have = false;
  for (int k = 0; k < d; ++k) {
    if (s.P[static_cast<std::size_t>(k)].is_zero()) continue;
    Rat slope = Rat(s.deg[static_cast<std::size_t>(k)] - s.deg[static_cast<std::size_t>(d)]) / Rat(d - k);
    if (!have || slope > s.kappa) s.kappa = slope;
    have = true;
  }
  if (!have) throw UnsupportedRegime("degenerate recurrence", "only the leading coefficient is nonzero");
  have = false;
  for (int k = 0; k <= d; ++k) {
    if (s.P[static_cast<std::size_t>(k)].is_zero()) continue;
    Rat v = s.deg[static_cast<std::size_t>(k)] + k * s.kappa;
    if (!have || v > s.E) s.E = v;
    have = true;
  }
  long den = 1;
  for (int k = 0; k <= d; ++k) {
    if (s.P[static_cast<std::size_t>(k)].is_zero()) continue;
    Rat gap = s.E - s.deg[static_cast<std::size_t>(k)] - k * s.kappa;
    if (is_zero(gap)) s.edge.push_back(k);
    den = std::lcm(den, to_long(Rat(gap.get_den())));
  }
  den = std::lcm(den, to_long(Rat(s.kappa.get_den())));
  if (rho_opt) {
    if (*rho_opt < 1 || *rho_opt % den != 0) {
      throw Error("requested rho = " + std::to_string(*rho_opt) + " is not a multiple of the detected " + std::to_string(den),
                  "asymptotics");
    }
    den = *rho_opt;
  }
  s.rho = static_cast<int>(den);
  for (int k = 0; k <= d; ++k) {
    if (s.P[static_cast<std::size_t>(k)].is_zero()) {
      s.e.push_back(-1);
      continue;
    }
    Rat gap = s.rho * (s.E - s.deg[static_cast<std::size_t>(k)] - k * s.kappa);
    s.e.push_back(to_long(gap));
  }
  return s;
}

// Roots of a real polynomial (Durand-Kerner); only used to detect complex
// roots that outgrow the chosen real root.
std::vector<std::complex<long double>> approx_roots(const Poly& p) {
  const int n = p.degree();
  std::vector<std::complex<long double>> roots;
  if (n < 1) return roots;
  std::vector<long double> c;
  for (const auto& v : p.coeffs()) c.push_back(static_cast<long double>(Rat(v / p.lc()).get_d()));
  auto eval = [&](std::complex<long double> z) {
    std::complex<long double> acc = 0;
    for (int i = n; i >= 0; --i) acc = acc * z + c[static_cast<std::size_t>(i)];
    return acc;
  };
  std::complex<long double> seed(0.4L, 0.9L), z = 1;
  for (int i = 0; i < n; ++i) {
    roots.push_back(z);
    z *= seed;
  }
  for (int iter = 0; iter < 2000; ++iter) {
    long double moved = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<long double> den = 1;
      for (int j = 0; j < n; ++j) {
        if (j != i) den *= roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(j)];
      }
      auto step = eval(roots[static_cast<std::size_t>(i)]) / den;
      roots[static_cast<std::size_t>(i)] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-16L) break;
  }
  return roots;
}

struct Dominant {
  FieldPtr field;
  AlgNum theta;
  std::vector<std::string> notes;
};

Dominant dominant_root(const Poly& chi) {
  Poly sf = squarefree_part(chi);
  auto roots = real_roots_isolated(chi);
  std::optional<AlgebraicReal> best;
  for (const auto& r : roots) {
    if (r.compare(Rat(0)) > 0) best = r;  // increasing order
  }
  if (!best) throw UnsupportedRegime("no positive dominant root", "edge polynomial " + to_string(chi, "theta") + " has no positive real root");
  AlgebraicReal theta = *best;
  // repeated root: theta is a root of gcd(chi, chi'); theta's interval
  // isolates it among all roots of chi, hence of g
  Poly g = gcd(chi, chi.derivative());
  if (g.degree() > 0) {
    bool repeated = theta.is_rational() ? is_zero(g(theta.value()))
                                        : sturm_count(sturm_chain(squarefree_part(g)), theta.lo(), theta.hi()) > 0;
    if (repeated) throw UnsupportedRegime("repeated dominant root", "theta is a multiple root of " + to_string(chi, "theta"));
  }
  Dominant out;
  // negative real roots of larger modulus
  for (const auto& r : roots) {
    if (r.compare(Rat(0)) >= 0) break;
    // compare |r| with theta: |r| > theta iff -r > theta
    Poly reflected = r.defining_poly().compose(-Poly::x());
    AlgebraicReal m(reflected, -r.hi(), -r.lo());
    if (m.is_rational() && theta.is_rational()) {
      if (m.value() > theta.value()) throw UnsupportedRegime("negative dominant root", "root -" + to_string(m.value()) + " outgrows theta");
      if (m.value() == theta.value()) out.notes.push_back("equal-modulus root -theta of the edge polynomial");
      continue;
    }
    AlgebraicReal a = m, b = theta;
    for (int it = 0; it < 200; ++it) {
      if (a.lo() > b.hi()) throw UnsupportedRegime("negative dominant root", "a negative root outgrows theta");
      if (a.hi() < b.lo()) break;
      Rat w = (a.hi() - a.lo() + b.hi() - b.lo()) / 4;
      if (is_zero(w)) break;
      a.refine(w);
      b.refine(w);
    }
    if (!(a.hi() < b.lo())) out.notes.push_back("equal-modulus root -theta of the edge polynomial");
  }
  const long double t = static_cast<long double>(theta.approx());
  for (const auto& z : approx_roots(sf)) {
    if (std::abs(z.imag()) < 1e-12L * (1 + std::abs(z))) continue;
    long double m = std::abs(z);
    if (m > t * (1 + 1e-12L)) {
      throw UnsupportedRegime("complex dominant root", "edge polynomial " + to_string(chi, "theta") + " has a non-real root of larger modulus");
    }
    if (m > t * (1 - 1e-12L)) throw UnsupportedRegime("equal-modulus complex root", "a non-real root has the modulus of theta");
  }
  if (theta.is_rational()) {
    out.theta = AlgNum(theta.value());
  } else {
    out.field = make_field(sf, theta);
    out.theta = AlgNum::generator(out.field);
  }
  return out;
}

// Residual of the recurrence divided by a_n n^E, in x up to degree N.
PS residual(const Shape& s, const AlgNum& theta, const std::vector<AlgNum>& c, int N) {
  PS F(static_cast<std::size_t>(N + 1), AlgNum(0));
  const int d = static_cast<int>(s.P.size()) - 1;
  std::vector<PS> ratio_factor;  // (1 + j x^rho)^kappa S(n + j), j = 1..d
  for (int j = 1; j <= d; ++j) {
    ratio_factor.push_back(ps_mul(ps_binomial(s.kappa, j, s.rho, N), ps_shifted_s(c, j, s.rho, N), N));
  }
  AlgNum theta_k(1);
  for (int k = 0; k <= d; ++k, theta_k *= theta) {
    const Poly& p = s.P[static_cast<std::size_t>(k)];
    if (p.is_zero()) continue;
    PS term(static_cast<std::size_t>(N + 1), AlgNum(0));
    const int dk = s.deg[static_cast<std::size_t>(k)];
    const long ek = s.e[static_cast<std::size_t>(k)];
    for (int i = 0; i <= dk; ++i) {
      long pos = ek + static_cast<long>(s.rho) * i;
      if (pos > N) break;
      term[static_cast<std::size_t>(pos)] = AlgNum(p.coeff(static_cast<std::size_t>(dk - i))) * theta_k;
    }
    for (int j = 1; j <= k; ++j) term = ps_mul(term, ratio_factor[static_cast<std::size_t>(j - 1)], N);
    for (int i = 0; i <= N; ++i) F[static_cast<std::size_t>(i)] += term[static_cast<std::size_t>(i)];
  }
  return F;
}

RatioExpansion solve(const Recurrence& rec, const ExpansionOptions& opt, const Shape& s, const Dominant& dom) {
  RatioExpansion out;
  out.field = dom.field;
  out.theta = dom.theta;
  out.kappa = s.kappa;
  out.rho = s.rho;
  out.notes = dom.notes;
  // characteristic polynomial of the edge, lowest edge index removed
  std::vector<Rat> chi(static_cast<std::size_t>(s.edge.back() - s.edge.front() + 1));
  for (int k : s.edge) chi[static_cast<std::size_t>(k - s.edge.front())] = s.P[static_cast<std::size_t>(k)].lc();
  out.characteristic = Poly(chi);

  // d/dc_m of the x^m residual coefficient: sum over the edge of k lc_k theta^k
  AlgNum lin(0);
  for (int k : s.edge) lin += AlgNum(Rat(k) * s.P[static_cast<std::size_t>(k)].lc()) * pow(dom.theta, k);
  if (is_zero(lin)) throw UnsupportedRegime("repeated dominant root", "the ansatz equations are singular");

  std::vector<AlgNum> c(static_cast<std::size_t>(opt.K), AlgNum(0));
  PS F0 = residual(s, dom.theta, c, 0);
  if (!is_zero(F0[0])) throw Error("internal: theta does not annihilate the edge polynomial", "asymptotics");
  for (int m = 1; m <= opt.K; ++m) {
    PS F = residual(s, dom.theta, c, m);
    c[static_cast<std::size_t>(m - 1)] = -F[static_cast<std::size_t>(m)] / lin;
  }
  (void)rec;
  out.coeffs = std::move(c);
  return out;
}

}  // namespace

KSeries RatioExpansion::normalized() const {
  KSeries s(Rat(K() + 1) / Rat(rho));
  s.add_term(Rat(0), AlgNum(1));
  for (int i = 1; i <= K(); ++i) s.add_term(Rat(i) / Rat(rho), coeffs[static_cast<std::size_t>(i - 1)]);
  return s;
}

RatioExpansion RatioExpansion::scaled(int power) const {
  RatioExpansion r = *this;
  r.kappa -= power;
  return r;
}

std::string RatioExpansion::growth_text() const {
  std::string t = to_string(theta, "theta");
  if (!field) return t + (is_zero(kappa) ? "" : " * n^(" + to_string(kappa) + ")");
  std::string out = "theta";
  if (!is_zero(kappa)) out += " * n^(" + to_string(kappa) + ")";
  AlgebraicReal th = field->theta();
  th.refine(Rat(1, 1000000000));
  return out + " where theta is the root of " + to_string(field->minpoly(), "theta") + " near " +
         std::to_string(th.approx());
}

RatioExpansion ratio_expansion(const Recurrence& rec, const ExpansionOptions& opt) {
  if (opt.K < 1) throw Error("ratio expansion needs K >= 1", "asymptotics");
  rec.validate();
  Shape s = analyse(rec, opt.rho);
  std::vector<Rat> chi(static_cast<std::size_t>(s.edge.back() - s.edge.front() + 1));
  for (int k : s.edge) chi[static_cast<std::size_t>(k - s.edge.front())] = s.P[static_cast<std::size_t>(k)].lc();
  Poly chi_poly(chi);
  if (chi_poly.degree() < 1) throw UnsupportedRegime("degenerate edge", "the Newton polygon edge has a single vertex");
  Dominant dom = dominant_root(chi_poly);
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return solve(rec, opt, s, dom);
    } catch (const FieldReduction& fr) {
      AlgebraicReal th = dom.field->theta();
      const Poly& f = fr.factor();
      if (f.degree() == 1) {
        dom.field = nullptr;
        dom.theta = AlgNum(-f.coeff(0) / f.coeff(1));
      } else {
        dom.field = make_field(f, AlgebraicReal(f, th.lo(), th.hi()));
        dom.theta = AlgNum::generator(dom.field);
      }
    }
  }
  throw Error("number field kept reducing; giving up", "asymptotics");
}

KSeries u_expansion_k(const RatioExpansion& r) {
  const int N = r.K() + r.rho;
  PS s0 = ps_shifted_s(r.coeffs, 0, r.rho, N);
  PS s1 = ps_shifted_s(r.coeffs, 1, r.rho, N);
  PS u = ps_mul(ps_mul(ps_binomial(r.kappa, 1, r.rho, N), s1, N), ps_inv(s0, N), N);
  KSeries out(Rat(N + 1) / Rat(r.rho));
  for (int i = 0; i <= N; ++i) out.add_term(Rat(i) / Rat(r.rho), u[static_cast<std::size_t>(i)]);
  return out;
}

AsymSeries u_expansion(const RatioExpansion& r) { return to_asym_series(u_expansion_k(r)); }

}  // namespace pturan
