#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pturan {

/// Base class for every error raised by the library. `stage` names the
/// pipeline step that failed so the CLI can report it.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, std::string stage = {})
      : std::runtime_error(what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

using Int = mpz_class;
using Rat = mpq_class;

inline int sign(const Rat& q) { return sgn(q); }
inline int sign(const Int& z) { return sgn(z); }
inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

/// Parses "p", "-p/q" (decimal digits only); result is canonical.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& q);
std::string to_string(const Int& z);

Int floor(const Rat& q);
Int ceil(const Rat& q);
Rat pow(const Rat& base, long exponent);
Rat abs(const Rat& q);

/// Generalized binomial coefficient C(alpha, k) for rational alpha.
Rat binomial(const Rat& alpha, unsigned long k);

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

/// Converts to a machine integer; throws if out of range.
long to_long(const Rat& q);

}  // namespace pturan
