#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pturan/algebra/number_field.hpp"
#include "pturan/algebra/ratfunc.hpp"
#include "pturan/asymptotics/expansion.hpp"
#include "pturan/sequences/derived.hpp"

namespace pturan {

/// t(x(n), y(n+1)) with t(x, y) = 4(1-x)(1-y) - (1-xy)^2, in canonical form.
RatFunc corner_polynomial(const RatFunc& x, const RatFunc& y);

/// True iff t > 0 at the four corners of [x1, x2] x [y1, y2]. t is concave
/// in each variable separately, so this implies t > 0 on the rectangle.
bool rectangle_check(const Rat& x1, const Rat& x2, const Rat& y1, const Rat& y2);

/// Certified window s_l(n) < r_n = a_n/a_{n-1} < s_u(n) for n >= valid_from,
/// where s = theta n^kappa (1 + sum_{i<=K} c_i n^-i +- n^-K).
struct RatioBounds {
  FieldPtr field;
  FracK lower, upper;
  int K = 0;
  /// The window maps into itself for every n > induction_threshold.
  long induction_threshold = 0;
  long valid_from = 0;
};

/// The inequalities (each must be eventually positive) whose thresholds
/// certify that the window is forward-invariant under the recurrence: the
/// lower bound is positive, and for each vertex of the box of the d-1
/// previous ratios the next ratio lies strictly inside the window.
std::vector<FracK> window_inequalities(const Recurrence& rec, const FracK& lower, const FracK& upper);

/// Builds the window from the expansion (rho = 1 only) and proves it by
/// induction; the base case is found from exact terms up to search_limit
/// indices past the induction threshold.
RatioBounds certify_ratio_bounds(const Recurrence& rec, const RatioExpansion& r, int K, long search_limit = 20000);

struct UBoundOptions {
  /// Number of nonzero terms of u_n - 1 kept in the bounds.
  int terms = 1;
  /// Round the last coefficient outward to this denominator. Irrational
  /// coefficients are always rounded (to 10^6 when unset).
  std::optional<long> denominator;
};

/// g_n < u_n < f_n for n >= valid_from. Terms are (exponent, coefficient)
/// pairs of 1 + sum d_i n^-beta_i; the scaled bounds multiply by
/// (n/(n+1))^scale_power.
struct UBounds {
  std::vector<std::pair<Rat, Rat>> lower_terms, upper_terms;
  int scale_power = 0;
  /// s_u(n+1)/s_l(n) < f_n and s_l(n+1)/s_u(n) > g_n for n > step_threshold.
  long step_threshold = 0;
  long valid_from = 0;

  RatFunc g() const;
  RatFunc f() const;
};

RatFunc bound_function(const std::vector<std::pair<Rat, Rat>>& terms, int scale_power);

/// The two inequalities of the ratio-to-u step, as eventually positive
/// fractions: f(n) s_l(n) - s_u(n+1) and s_l(n+1) - g(n) s_u(n) (unscaled).
std::array<FracK, 2> step_inequalities(const RatioBounds& rb, const RatFunc& g, const RatFunc& f);

UBounds u_bounds_from_ratio(const Recurrence& rec, const RatioBounds& rb, const KSeries& u, const UBoundOptions& opt = {},
                            int scale_power = 0);

struct Corner {
  std::string label;  // "t(g,g+)", "t(g,f+)", "t(f,g+)", "t(f,f+)"
  RatFunc value;
  /// value(n) > 0 for every n > threshold.
  long threshold = 0;
};

struct CertifyOptions {
  int K = 4;
  UBoundOptions u;
  long search_limit = 20000;
};

/// The higher-order Turan inequality holds for every n >= N by the bounds and
/// corners, and was checked exactly on [segment_from, segment_to].
struct TuranCertificate {
  Recurrence sequence;
  Transform transform;
  RatioBounds ratio;
  UBounds bounds;
  std::array<Corner, 4> corners;
  long N = 0;
  long segment_from = 0, segment_to = 0;
  std::vector<long> violations;

  /// Smallest n with the inequality at every m >= n.
  long holds_from() const { return violations.empty() ? segment_from : violations.back() + 1; }
};

/// Ratio bounds, u bounds, corners and the exact initial segment. Stage
/// failures are rethrown with the stage name.
TuranCertificate certify_turan3(const Recurrence& rec, const Transform& t, const CertifyOptions& opt = {});

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> problems;
  void fail(std::string why) {
    ok = false;
    problems.push_back(std::move(why));
  }
};

/// Re-derives every component: corners from the bounds, every threshold,
/// the window induction and its base case, the bounds against exact u_n at
/// `samples` seeded random indices, and the initial segment.
VerifyReport verify_certificate(const TuranCertificate& cert, const Recurrence& rec, unsigned seed = 1, int samples = 100);

}  // namespace pturan
