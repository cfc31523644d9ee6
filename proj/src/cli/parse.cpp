#include "pturan/cli/parse.hpp"

#include <cctype>
#include <map>
#include <optional>

#include "pturan/algebra/ratfunc.hpp"

namespace pturan {

namespace {

// sum_k c_k(n) X^k + scalar: X^k is a(n+k) in explicit mode and N^k in
// operator mode, where constants live in terms[0] and scalar stays zero.
struct Value {
  std::map<int, RatFunc> terms;
  RatFunc scalar;

  void add(int k, const RatFunc& c) {
    auto it = terms.find(k);
    RatFunc s = it == terms.end() ? c : it->second + c;
    if (s.is_zero()) {
      terms.erase(k);
    } else {
      terms[k] = s;
    }
  }
  void add(const Value& o, int sgn) {
    for (const auto& [k, c] : o.terms) add(k, sgn < 0 ? -c : c);
    scalar += sgn < 0 ? -o.scalar : o.scalar;
  }
};

class Parser {
 public:
  Parser(const std::string& text, bool operator_mode) : s_(text), op_(operator_mode) {}

  Value expression() {
    skip();
    Value v;
    bool first = true;
    while (true) {
      int sgn = 1;
      if (peek('+') || peek('-')) {
        sgn = s_[i_] == '-' ? -1 : 1;
        ++i_;
      } else if (!first) {
        break;
      }
      v.add(term(), sgn);
      first = false;
    }
    return v;
  }

  std::size_t pos() const { return i_; }
  bool at(char c) { return peek(c); }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, i_); }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  bool starts_factor() {
    skip();
    if (i_ >= s_.size()) return false;
    char c = s_[i_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'n' || (c == 'a' && !op_) || (c == 'N' && op_);
  }

  Value term() {
    Value v = power();
    while (true) {
      if (peek('*')) {
        ++i_;
        v = multiply(v, power());
      } else if (peek('/')) {
        ++i_;
        std::size_t at = i_;
        auto c = as_scalar(power());
        if (!c) throw SyntaxError("cannot divide by a term of the sequence", at);
        if (c->is_zero()) throw SyntaxError("division by zero", at);
        for (auto& [k, x] : v.terms) x /= *c;
        v.scalar /= *c;
      } else if (starts_factor()) {
        v = multiply(v, power());
      } else {
        return v;
      }
    }
  }

  std::optional<RatFunc> as_scalar(const Value& v) const {
    if (!op_) return v.terms.empty() ? std::optional<RatFunc>(v.scalar) : std::nullopt;
    if (v.terms.empty()) return RatFunc();
    if (v.terms.size() == 1 && v.terms.begin()->first == 0) return v.terms.begin()->second;
    return std::nullopt;
  }

  Value constant(RatFunc c) const {
    Value v;
    if (op_) {
      v.add(0, c);
    } else {
      v.scalar = std::move(c);
    }
    return v;
  }

  Value multiply(const Value& a, const Value& b) {
    Value out;
    if (op_) {
      for (const auto& [i, x] : a.terms) {
        for (const auto& [j, y] : b.terms) out.add(i + j, x * y);
      }
      return out;
    }
    if (!a.terms.empty() && !b.terms.empty()) fail("product of two sequence terms is not linear");
    for (const auto& [k, x] : a.terms) out.add(k, x * b.scalar);
    for (const auto& [k, y] : b.terms) out.add(k, y * a.scalar);
    out.scalar = a.scalar * b.scalar;
    return out;
  }

  Value power() {
    Value base = atom();
    if (!peek('^')) return base;
    ++i_;
    skip();
    bool paren = peek('(');
    if (paren) ++i_;
    long e = integer();
    if (paren) expect(')');
    auto c = as_scalar(base);
    if (c) {
      if (e < 0 && c->is_zero()) fail("division by zero");
      return constant(e >= 0 ? c->pow(static_cast<int>(e)) : RatFunc(Rat(1)) / c->pow(static_cast<int>(-e)));
    }
    if (e < 0) fail("negative power of a sequence term");
    if (!op_ && e != 1) fail("power of a sequence term is not linear");
    if (e > 64) fail("exponent too large");
    Value r = constant(RatFunc(Rat(1)));
    for (long k = 0; k < e; ++k) r = multiply(r, base);
    return r;
  }

  long integer() {
    skip();
    int sgn = 1;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
      sgn = s_[i_] == '-' ? -1 : 1;
      ++i_;
    }
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected an integer");
    if (i_ - start > 9) throw SyntaxError("integer too large", start);
    return sgn * std::stol(s_.substr(start, i_ - start));
  }

  Value atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Value v = expression();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return constant(RatFunc(Rat(Int(s_.substr(start, i_ - start)))));
    }
    if (c == 'n' && !ident_continues(i_ + 1)) {
      ++i_;
      return constant(RatFunc::x());
    }
    if (c == 'N' && op_ && !ident_continues(i_ + 1)) {
      ++i_;
      Value v;
      v.add(1, RatFunc(Rat(1)));
      return v;
    }
    if (c == 'a' && !op_ && !ident_continues(i_ + 1)) {
      ++i_;
      expect('(');
      skip();
      if (!(i_ < s_.size() && s_[i_] == 'n')) fail("expected a(n+k)");
      ++i_;
      long k = 0;
      if (peek('+') || peek('-')) k = integer();
      expect(')');
      Value v;
      v.add(static_cast<int>(k), RatFunc(Rat(1)));
      return v;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  bool ident_continues(std::size_t j) const {
    return j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_');
  }

  const std::string& s_;
  bool op_;
  std::size_t i_ = 0;
};

Recurrence build(const Value& relation, std::vector<Rat> initials, const std::string& name, std::size_t pos) {
  if (relation.terms.empty()) throw SyntaxError("the relation is empty (both sides cancel)", pos);
  // clear denominators of the rational-function coefficients
  Poly den(Rat(1));
  Int lcm_q = 1;
  for (const auto& [k, c] : relation.terms) {
    den = divmod(den * c.den(), gcd(den, c.den())).first;
  }
  std::map<int, Poly> polys;
  for (const auto& [k, c] : relation.terms) {
    Poly p = divmod(c.num() * den, c.den()).first;
    for (const auto& v : p.coeffs()) mpz_lcm(lcm_q.get_mpz_t(), lcm_q.get_mpz_t(), v.get_den_mpz_t());
    polys[k] = p;
  }
  const int low = polys.begin()->first, high = polys.rbegin()->first;
  if (low == high) throw SyntaxError("the relation involves a single term of the sequence", pos);
  std::vector<Poly> sum(static_cast<std::size_t>(high - low + 1));
  for (const auto& [k, p] : polys) sum[static_cast<std::size_t>(k - low)] = p.scaled(Rat(lcm_q)).shift(Rat(-low));
  Recurrence rec = Recurrence::from_sum_form(name, sum, std::move(initials));
  rec.validate();
  return rec;
}

std::vector<Rat> parse_initials(const std::string& text, std::size_t offset) {
  std::vector<Rat> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
  };
  auto number = [&](std::size_t& j) {
    std::size_t start = j;
    if (j < text.size() && (text[j] == '-' || text[j] == '+')) ++j;
    while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
    std::string tok = text.substr(start, j - start);
    if (tok.empty() || tok == "-" || tok == "+") throw SyntaxError("expected a number", offset + start);
    if (tok[0] == '+') tok.erase(0, 1);
    try {
      Rat r(tok);
      if (r.get_den() == 0) throw SyntaxError("zero denominator", offset + start);
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
      throw SyntaxError("malformed number '" + tok + "'", offset + start);
    }
  };
  while (true) {
    skip();
    if (i >= text.size()) break;
    std::size_t at = i;
    if (text.compare(i, 2, "a(") != 0) throw SyntaxError("expected a(k)=value", offset + i);
    i += 2;
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t s = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (s == i) throw SyntaxError("expected an index", offset + i);
    long idx = std::stol(text.substr(s, i - s));
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size() || text[i] != ')') throw SyntaxError("expected ')'", offset + i);
    ++i;
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size() || text[i] != '=') throw SyntaxError("expected '='", offset + i);
    ++i;
    while (i < text.size() && text[i] == ' ') ++i;
    if (idx != static_cast<long>(out.size())) {
      throw SyntaxError("initial values must be a(0), a(1), ... in order", offset + at);
    }
    out.push_back(number(i));
  }
  return out;
}

}  // namespace

Recurrence parse_recurrence(const std::string& text, const std::string& name) {
  const std::size_t semi = text.find(';');
  const std::string rel = text.substr(0, semi);
  const std::size_t eq = rel.find('=');
  if (eq == std::string::npos) throw SyntaxError("expected '=' in the relation", rel.size());
  Parser lhs(rel, false);
  Value l = lhs.expression();
  if (lhs.pos() != eq || !lhs.at('=')) lhs.fail("unexpected input");
  std::string right = rel.substr(eq + 1);
  Parser rhs(right, false);
  Value r = rhs.expression();
  if (!rhs.done()) throw SyntaxError("unexpected input", eq + 1 + rhs.pos());
  Value diff = l;
  diff.add(r, -1);
  if (l.terms.empty() && r.terms.empty()) throw SyntaxError("the relation does not involve the sequence", 0);
  if (!diff.scalar.is_zero()) throw SyntaxError("inhomogeneous term", 0);
  if (semi == std::string::npos) throw SyntaxError("missing initial values after ';'", text.size());
  std::vector<Rat> init = parse_initials(text.substr(semi + 1), semi + 1);
  if (init.empty()) throw SyntaxError("missing initial values after ';'", text.size());
  return build(diff, std::move(init), name, 0);
}

Recurrence parse_operator_recurrence(const std::string& op, const std::vector<Rat>& initials, const std::string& name) {
  Parser p(op, true);
  Value v = p.expression();
  if (!p.done()) p.fail("unexpected input");
  return build(v, initials, name, 0);
}

std::string print_recurrence(const Recurrence& rec) {
  const auto sum = rec.sum_form();
  std::string out;
  for (int k = static_cast<int>(sum.size()) - 1; k >= 0; --k) {
    const Poly& p = sum[static_cast<std::size_t>(k)];
    if (p.is_zero()) continue;
    std::string coef = to_string(p, "n");
    bool negative = false;
    if (p.degree() == 0 && sign(p.lc()) < 0) {
      negative = true;
      coef = to_string(-p, "n");
    }
    std::string shift = k == 0 ? "a(n)" : "a(n+" + std::to_string(k) + ")";
    std::string t = coef == "1" ? shift : "(" + coef + ")*" + shift;
    if (out.empty()) {
      out = negative ? "-" + t : t;
    } else {
      out += negative ? " - " + t : " + " + t;
    }
  }
  out += " = 0 ;";
  for (std::size_t i = 0; i < rec.initials.size(); ++i) {
    out += (i ? ", a(" : " a(") + std::to_string(i) + ")=" + rec.initials[i].get_str();
  }
  return out;
}

}  // namespace pturan
