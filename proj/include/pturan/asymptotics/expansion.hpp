#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pturan/asymptotics/series.hpp"
#include "pturan/sequences/recurrence.hpp"

namespace pturan {

/// The recurrence lies outside the supported regime (complex or repeated
/// dominant root, no positive root, ...). `regime` names the case.
class UnsupportedRegime : public Error {
 public:
  UnsupportedRegime(std::string regime, const std::string& detail)
      : Error(regime + ": " + detail, "asymptotics"), regime_(std::move(regime)) {}
  const std::string& regime() const { return regime_; }

 private:
  std::string regime_;
};

struct ExpansionOptions {
  /// Number of coefficients c_1..c_K of the normalized ratio.
  int K = 6;
  /// Exponent denominator; must be a multiple of the detected one.
  std::optional<int> rho;
};

/// r_n = a_n / a_{n-1} = theta * n^kappa * S(n) with
/// S(n) = 1 + sum_i c_i n^(-i/rho) + O(n^-(K+1)/rho).
struct RatioExpansion {
  FieldPtr field;  // Q(theta), null when theta is rational
  AlgNum theta;
  Poly characteristic;  // edge polynomial, zero roots removed
  Rat kappa;
  int rho = 1;
  std::vector<AlgNum> coeffs;  // c_1..c_K
  std::vector<std::string> notes;

  int K() const { return static_cast<int>(coeffs.size()); }
  /// S(n) as a series in n.
  KSeries normalized() const;
  /// Expansion of the sequence a_n / (n!)^power.
  RatioExpansion scaled(int power) const;
  /// "theta * n^kappa", followed by the minimal polynomial of theta when it
  /// is irrational.
  std::string growth_text() const;
};

/// Solves the ansatz r_n = theta n^kappa S(n) term by term from the
/// recurrence. theta is the largest positive root of the Newton-polygon
/// edge polynomial; unsupported regimes raise UnsupportedRegime.
RatioExpansion ratio_expansion(const Recurrence& rec, const ExpansionOptions& opt = {});

/// u_n = r_{n+1}/r_n with coefficients in Q(theta); error order
/// (K+1)/rho + 1.
KSeries u_expansion_k(const RatioExpansion& r);
/// Same, converted to rational coefficients; throws on irrational ones.
AsymSeries u_expansion(const RatioExpansion& r);

}  // namespace pturan
