#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pturan/sequences/recurrence.hpp"

namespace pturan {

/// Transform applied to the raw terms: divide a(n) by (n!)^scale_power, then
/// apply phi(a)_n = a_n^2 - a_{n-1} a_{n+1} phi_level times. The phi-iterate
/// of level L is defined from index L on.
struct Transform {
  int scale_power = 0;
  int phi_level = 0;

  bool identity() const { return scale_power == 0 && phi_level == 0; }
  /// "", "/n!", "/(n!)^2", "phi^1", "/n! phi^2", ...
  std::string str() const;
  static Transform parse(const std::string& text);
  friend bool operator==(const Transform&, const Transform&) = default;
};

/// Terms of a transformed sequence, computed from a shared TermTable.
class SequenceView {
 public:
  SequenceView(std::shared_ptr<TermTable> base, Transform t);

  const Transform& transform() const { return t_; }
  const std::shared_ptr<TermTable>& base() const { return base_; }
  long first_index() const { return t_.phi_level; }

  Rat term(long n) const;
  /// Terms from..to inclusive; from >= first_index().
  std::vector<Rat> terms(long from, long to) const;

  /// a(n) / a(n-1); throws on a zero denominator.
  Rat ratio(long n) const;
  /// u(n) = a(n-1) a(n+1) / a(n)^2; throws on a zero a(n).
  Rat u(long n) const;
  /// u(from) .. u(to).
  std::vector<Rat> u_values(long from, long to) const;

 private:
  std::shared_ptr<TermTable> base_;
  Transform t_;
};

/// Applies phi once: out[i] = v[i+1]^2 - v[i] v[i+2], so the result is two
/// shorter and out[i] belongs to the index of v[i+1].
std::vector<Rat> apply_phi(const std::vector<Rat>& v);

enum class Inequality { turan3, log_concave };

/// 4(a_n^2 - a_{n-1}a_{n+1})(a_{n+1}^2 - a_n a_{n+2}) - (a_n a_{n+1} - a_{n-1} a_{n+2})^2
Rat turan3_form(const Rat& am1, const Rat& a0, const Rat& a1, const Rat& a2);

/// Indices n in [from, to] where the inequality fails in exact arithmetic,
/// in increasing order. Terms are materialized first; evaluation runs in
/// parallel with OpenMP.
std::vector<long> check_inequality_range(const SequenceView& seq, Inequality which, long from, long to);
/// Single-threaded reference implementation of the same check.
std::vector<long> check_inequality_range_serial(const SequenceView& seq, Inequality which, long from, long to);

/// t(x, y) = 4(1-x)(1-y) - (1-xy)^2; the Turan form divided by a_n^2 a_{n+1}^2
/// with x = u(n), y = u(n+1).
Rat turan_t(const Rat& x, const Rat& y);

}  // namespace pturan
