#include "pturan/algebra/poly.hpp"

#include <sstream>

namespace pturan {

std::string to_string(const Poly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    Rat c = p.coeff(static_cast<std::size_t>(k));
    if (is_zero(c)) continue;
    if (first) {
      if (sign(c) < 0) os << "-";
    } else {
      os << (sign(c) < 0 ? " - " : " + ");
    }
    Rat a = abs(c);
    if (k == 0) {
      os << to_string(a);
    } else {
      if (a != 1) os << to_string(a) << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

Poly gcd(Poly a, Poly b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  a = primitive_integer_part(a);
  b = primitive_integer_part(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree() == 0) return Poly(Rat(1));
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = primitive_integer_part(r);
  }
  return make_monic(a);
}

Poly primitive_integer_part(const Poly& p) {
  if (p.is_zero()) return p;
  Int l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Rat> ints;
  ints.reserve(p.coeffs().size());
  Int g = 0;
  for (const auto& c : p.coeffs()) {
    Rat v = c * Rat(l);
    ints.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  if (sign(p.lc()) < 0) g = -g;
  for (auto& v : ints) v /= Rat(g);
  return Poly(std::move(ints));
}

Poly squarefree_part(const Poly& p) {
  if (p.degree() <= 0) return p;
  Poly g = gcd(p, p.derivative());
  return divmod(p, g).first;
}

int sign_at_infinity(const Poly& p) { return sign(p.lc()); }

std::vector<std::string> coeff_strings(const Poly& p) {
  std::vector<std::string> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(to_string(c));
  return out;
}

Poly poly_from_strings(const std::vector<std::string>& coeffs) {
  std::vector<Rat> c;
  c.reserve(coeffs.size());
  for (const auto& s : coeffs) c.push_back(parse_rat(s));
  return Poly(std::move(c));
}

}  // namespace pturan
