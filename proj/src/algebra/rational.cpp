#include "pturan/algebra/rational.hpp"

#include <cctype>

namespace pturan {

Rat parse_rat(std::string_view text) {
  std::string s(text);
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  bool digits = false, slash = false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (std::isdigit(static_cast<unsigned char>(s[j]))) {
      digits = true;
    } else if (s[j] == '/' && !slash && digits) {
      slash = true;
      digits = false;
    } else {
      throw Error("malformed rational '" + s + "'");
    }
  }
  if (!digits) throw Error("malformed rational '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rat q;
  if (q.set_str(s, 10) != 0) throw Error("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw Error("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rat& q) { return q.get_str(10); }
std::string to_string(const Int& z) { return z.get_str(10); }

Int floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int ceil(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rat pow(const Rat& base, long exponent) {
  if (exponent < 0) {
    if (is_zero(base)) throw Error("zero to a negative power");
    return pow(Rat(1) / base, -exponent);
  }
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  r.canonicalize();
  return r;
}

Rat abs(const Rat& q) { return sign(q) < 0 ? Rat(-q) : q; }

Rat binomial(const Rat& alpha, unsigned long k) {
  Rat r = 1;
  for (unsigned long i = 0; i < k; ++i) {
    r *= (alpha - Rat(static_cast<long>(i)));
    r /= Rat(static_cast<long>(i + 1));
  }
  return r;
}

long to_long(const Rat& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p()) {
    throw Error("value " + to_string(q) + " is not a machine integer");
  }
  return q.get_num().get_si();
}

}  // namespace pturan
