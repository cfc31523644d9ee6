#include "pturan/sequences/derived.hpp"

#include <omp.h>

#include <algorithm>
#include <regex>
#include <sstream>

namespace pturan {

std::string Transform::str() const {
  std::string s;
  if (scale_power == 1) s = "/n!";
  if (scale_power > 1) s = "/(n!)^" + std::to_string(scale_power);
  if (phi_level > 0) {
    if (!s.empty()) s += " ";
    s += "phi^" + std::to_string(phi_level);
  }
  return s;
}

Transform Transform::parse(const std::string& text) {
  Transform t;
  static const std::regex token(R"(\s*(?:/?\s*(?:n!|\(n!\)\^(\d+))|phi(?:\^(\d+))?)\s*,?)");
  auto it = text.cbegin();
  std::smatch m;
  while (it != text.cend()) {
    if (std::all_of(it, text.cend(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) break;
    if (!std::regex_search(it, text.cend(), m, token, std::regex_constants::match_continuous)) {
      throw Error("cannot parse transform '" + text + "' (expected /n!, /(n!)^k or phi^k)", "sequences");
    }
    std::string tok = m.str(0);
    if (tok.find("phi") != std::string::npos) {
      t.phi_level += m[2].matched ? std::stoi(m[2].str()) : 1;
    } else {
      t.scale_power += m[1].matched ? std::stoi(m[1].str()) : 1;
    }
    it += m.length(0);
  }
  return t;
}

SequenceView::SequenceView(std::shared_ptr<TermTable> base, Transform t) : base_(std::move(base)), t_(t) {
  if (t_.scale_power < 0 || t_.phi_level < 0) throw Error("negative transform parameter", "sequences");
}

std::vector<Rat> apply_phi(const std::vector<Rat>& v) {
  std::vector<Rat> out;
  if (v.size() < 3) return out;
  out.reserve(v.size() - 2);
  for (std::size_t i = 0; i + 2 < v.size(); ++i) out.push_back(v[i + 1] * v[i + 1] - v[i] * v[i + 2]);
  return out;
}

std::vector<Rat> SequenceView::terms(long from, long to) const {
  if (from < first_index()) {
    throw Error("index " + std::to_string(from) + " precedes the first defined index " +
                    std::to_string(first_index()) + " of " + t_.str(),
                "sequences");
  }
  if (to < from) return {};
  const long lo = from - t_.phi_level, hi = to + t_.phi_level;
  std::vector<Rat> v = base_->terms(lo, hi);
  if (t_.scale_power > 0) {
    Int fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(lo));
    for (long k = lo; k <= hi; ++k) {
      if (k > lo) fact *= k;
      Int denom;
      mpz_pow_ui(denom.get_mpz_t(), fact.get_mpz_t(), static_cast<unsigned long>(t_.scale_power));
      v[static_cast<std::size_t>(k - lo)] /= Rat(denom);
    }
  }
  for (int l = 0; l < t_.phi_level; ++l) v = apply_phi(v);
  return v;
}

Rat SequenceView::term(long n) const { return terms(n, n).front(); }

Rat SequenceView::ratio(long n) const {
  auto v = terms(n - 1, n);
  if (is_zero(v[0])) throw Error("zero term at index " + std::to_string(n - 1) + " in ratio", "sequences");
  return v[1] / v[0];
}

Rat SequenceView::u(long n) const { return u_values(n, n).front(); }

std::vector<Rat> SequenceView::u_values(long from, long to) const {
  if (to < from) return {};
  auto v = terms(from - 1, to + 1);
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(to - from + 1));
  for (long n = from; n <= to; ++n) {
    const auto i = static_cast<std::size_t>(n - from + 1);
    if (is_zero(v[i])) throw Error("zero term at index " + std::to_string(n) + " in u(n)", "sequences");
    out.push_back(v[i - 1] * v[i + 1] / (v[i] * v[i]));
  }
  return out;
}

Rat turan3_form(const Rat& am1, const Rat& a0, const Rat& a1, const Rat& a2) {
  Rat p = a0 * a0 - am1 * a1;
  Rat q = a1 * a1 - a0 * a2;
  Rat r = a0 * a1 - am1 * a2;
  return 4 * p * q - r * r;
}

Rat turan_t(const Rat& x, const Rat& y) {
  Rat a = 1 - x * y;
  return 4 * (1 - x) * (1 - y) - a * a;
}

namespace {

std::vector<Rat> window(const SequenceView& seq, Inequality which, long from, long to) {
  if (from < seq.first_index() + 1) {
    throw Error("inequality range must start at index >= " + std::to_string(seq.first_index() + 1), "sequences");
  }
  return seq.terms(from - 1, to + (which == Inequality::turan3 ? 2 : 1));
}

bool violated(const std::vector<Rat>& v, std::size_t i, Inequality which) {
  // v[i] holds a(n-1)
  if (which == Inequality::log_concave) return sign(Rat(v[i + 1] * v[i + 1] - v[i] * v[i + 2])) < 0;
  return sign(turan3_form(v[i], v[i + 1], v[i + 2], v[i + 3])) < 0;
}

}  // namespace

std::vector<long> check_inequality_range(const SequenceView& seq, Inequality which, long from, long to) {
  if (to < from) throw Error("empty inequality range", "sequences");
  const auto v = window(seq, which, from, to);
  const long count = to - from + 1;
  std::vector<long> out;
#pragma omp parallel
  {
    std::vector<long> local;
#pragma omp for schedule(dynamic, 64) nowait
    for (long k = 0; k < count; ++k) {
      if (violated(v, static_cast<std::size_t>(k), which)) local.push_back(from + k);
    }
#pragma omp critical
    out.insert(out.end(), local.begin(), local.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long> check_inequality_range_serial(const SequenceView& seq, Inequality which, long from, long to) {
  if (to < from) throw Error("empty inequality range", "sequences");
  const auto v = window(seq, which, from, to);
  std::vector<long> out;
  for (long k = 0; k <= to - from; ++k) {
    if (violated(v, static_cast<std::size_t>(k), which)) out.push_back(from + k);
  }
  return out;
}

}  // namespace pturan
