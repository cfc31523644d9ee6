#include "pturan/asymptotics/series.hpp"

#include <cctype>
#include <sstream>

namespace pturan {

std::string coef_text(const LogCoef& c, bool& atomic) {
  if (c.is_constant()) {
    atomic = true;
    return to_string(c.constant());
  }
  atomic = false;
  return to_string(c, "log(n)");
}

std::string coef_text(const AlgNum& c, bool& atomic) {
  std::string t = to_string(c, "theta");
  atomic = c.is_rational() || t.find(' ') == std::string::npos;
  return t;
}

int coef_sign_at_infinity(const LogCoef& c) { return static_cast<int>(sign_at_infinity(c)); }
int coef_sign_at_infinity(const AlgNum& c) { return c.sign(); }

double coef_approx(const LogCoef& c, double log_n) {
  auto eval = [&](const Poly& p) {
    double acc = 0;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * log_n + it->get_d();
    return acc;
  };
  return eval(c.num()) / eval(c.den());
}

double coef_approx(const AlgNum& c, double) { return c.approx(); }

std::string exponent_text(const Rat& e) {
  if (is_zero(e)) return "";
  Rat neg = -e;
  if (is_integer(neg)) return neg == 1 ? "n" : "n^" + to_string(neg);
  return "n^(" + to_string(neg) + ")";
}

namespace {

template <class C>
bool negative_constant(const C& c) {
  return is_constant_coef(c) && coef_sign_at_infinity(c) < 0;
}

}  // namespace

template <class C>
std::string to_string(const Series<C>& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    C shown = c;
    bool neg = negative_constant(c);
    if (neg) shown = C(Rat(-1)) * c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    bool atomic = true;
    std::string ct = coef_text(shown, atomic);
    std::string et = exponent_text(e);
    if (et.empty()) {
      os << (atomic ? ct : "(" + ct + ")");
    } else if (atomic && ct == "1") {
      os << et;
    } else {
      os << (atomic ? ct : "(" + ct + ")") << "*" << et;
    }
    first = false;
  }
  if (!first) os << " + ";
  os << "O(" << (is_zero(s.order()) ? std::string("1") : exponent_text(s.order())) << ")";
  return os.str();
}

template std::string to_string(const AsymSeries&);
template std::string to_string(const KSeries&);

namespace {

class SeriesParser {
 public:
  explicit SeriesParser(const std::string& text) : s_(text) {}

  AsymSeries parse() {
    std::optional<Rat> order;
    Sum terms = sum(&order);
    skip();
    if (!at_end()) fail("unexpected character");
    if (!order) fail("missing error term o(n^...)");
    for (const auto& [e, c] : terms) {
      if (e >= *order) fail("term with exponent " + to_string(e) + " is not below the error order");
    }
    return AsymSeries(std::move(terms), *order);
  }

 private:
  // exponent of 1/n -> coefficient in log n
  using Sum = std::map<Rat, LogCoef>;
  using Mono = std::pair<Rat, LogCoef>;

  // Signed sum of products; the error term is only accepted at top level.
  Sum sum(std::optional<Rat>* order) {
    Sum acc;
    bool first = true;
    while (true) {
      skip();
      if (at_end() || peek() == ')') break;
      int sgn = 1;
      if (peek() == '-' || peek() == '+') {
        sgn = next() == '-' ? -1 : 1;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      if (order && (peek() == 'o' || peek() == 'O')) {
        if (*order) fail("duplicate error term");
        ++pos_;
        expect('(');
        skip();
        if (peek() == '1') {
          ++pos_;
          *order = Rat(0);
        } else {
          expect('n');
          *order = -exponent_after_n();
        }
        expect(')');
        continue;
      }
      auto [e, c] = product();
      if (sgn < 0) c = -c;
      auto it = acc.find(e);
      if (it == acc.end()) {
        acc.emplace(e, c);
      } else {
        it->second += c;
      }
    }
    if (first) fail("empty expression");
    return acc;
  }

  // factor (('*' | '/' | juxtaposition) factor)*
  Mono product() {
    Mono acc = factor();
    while (true) {
      skip();
      bool divide = false;
      if (peek() == '*' || peek() == '/') {
        divide = next() == '/';
      } else if (!(peek() == 'n' || peek() == 'l' || peek() == '(' || std::isdigit(static_cast<unsigned char>(peek())))) {
        return acc;
      }
      Mono f = factor();
      if (divide) {
        if (f.second.is_zero()) fail("division by zero");
        acc.first -= f.first;
        acc.second /= f.second;
      } else {
        acc.first += f.first;
        acc.second *= f.second;
      }
    }
  }

  Mono factor() {
    skip();
    Mono base;
    if (peek() == '(') {
      ++pos_;
      Sum inner = sum(nullptr);
      expect(')');
      if (inner.size() > 1) fail("a parenthesized factor must have a single power of n");
      base = inner.empty() ? Mono{Rat(0), LogCoef()} : Mono{inner.begin()->first, inner.begin()->second};
    } else if (peek() == 'n') {
      ++pos_;
      return {-exponent_after_n(), LogCoef(Rat(1))};
    } else if (s_.compare(pos_, 6, "log(n)") == 0) {
      pos_ += 6;
      base = {Rat(0), LogCoef::x()};
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      base = {Rat(0), LogCoef(integer())};
    } else {
      fail("expected a number, n, log(n) or '('");
    }
    skip();
    if (peek() == '^') {
      ++pos_;
      skip();
      int sgn = 1;
      if (peek() == '-') {
        sgn = -1;
        ++pos_;
      }
      long k = sgn * to_long(integer());
      base.first *= k;
      base.second = base.second.pow(static_cast<int>(k));
    }
    return base;
  }

  // n was consumed; reads ^k or ^(p/q) and returns the power of n
  Rat exponent_after_n() {
    skip();
    if (peek() != '^') return Rat(1);
    ++pos_;
    skip();
    bool paren = peek() == '(';
    if (paren) ++pos_;
    skip();
    int sgn = 1;
    if (peek() == '-') {
      sgn = -1;
      ++pos_;
    }
    Rat v = integer();
    if (paren) {
      skip();
      if (peek() == '/') {
        ++pos_;
        v /= integer();
      }
      expect(')');
    }
    return sgn * v;
  }

  Rat integer() {
    skip();
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return parse_rat(s_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }
  char next() { return at_end() ? '\0' : s_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("series parse error at position " + std::to_string(pos_) + ": " + msg, "asymptotics");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

AsymSeries parse_asym_series(const std::string& text) { return SeriesParser(text).parse(); }

AsymSeries to_asym_series(const KSeries& s) {
  AsymSeries out(s.order());
  for (const auto& [e, c] : s.terms()) {
    if (!c.is_rational()) throw Error("irrational coefficient " + to_string(c) + " at n^-" + to_string(e), "asymptotics");
    out.add_term(e, LogCoef(c.rational_value()));
  }
  return out;
}

KSeries to_k_series(const AsymSeries& s) {
  KSeries out(s.order());
  for (const auto& [e, c] : s.terms()) {
    if (!c.is_constant()) throw Error("log-dependent coefficient at n^-" + to_string(e), "asymptotics");
    out.add_term(e, AlgNum(c.constant()));
  }
  return out;
}

AlgNum evaluate_at_power(const KSeries& s, const Int& m, int rho) {
  if (sgn(m) <= 0) throw Error("evaluation point must be positive", "asymptotics");
  AlgNum acc(0);
  for (const auto& [e, c] : s.terms()) {
    Rat k = e * rho;
    if (!is_integer(k)) throw Error("exponent " + to_string(e) + " is not a multiple of 1/" + std::to_string(rho), "asymptotics");
    acc += c * AlgNum(pow(Rat(m), -to_long(k)));
  }
  return acc;
}

}  // namespace pturan
