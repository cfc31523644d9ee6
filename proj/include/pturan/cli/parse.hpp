#pragma once

#include <string>

#include "pturan/sequences/recurrence.hpp"

namespace pturan {

/// Input error with the 0-based character offset where it was detected.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t pos)
      : Error(message + " at position " + std::to_string(pos), "cli"), pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Parses "lhs = rhs ; a(0)=v0, a(1)=v1, ...". Both sides are linear in the
/// terms a(n+k) with rational-function coefficients in n; juxtaposition
/// multiplies. Denominators are cleared and shifts renumbered so the lowest
/// term is a(n). Initial values must start at a(0) and be consecutive.
Recurrence parse_recurrence(const std::string& text, const std::string& name = "");

/// Shift-operator notation: a polynomial in n and N, coefficients written to
/// the left of N, where c(n) N^k stands for c(n) a(n+k). Example:
/// "(n+2)^3N^2-2(3n^2+9n+7)(2n+3)N-4(n+1)(4n+3)(4n+5)".
Recurrence parse_operator_recurrence(const std::string& op, const std::vector<Rat>& initials, const std::string& name = "");

/// Text form accepted by parse_recurrence, highest shift first.
std::string print_recurrence(const Recurrence& rec);

}  // namespace pturan
