#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pturan/algebra/poly.hpp"

namespace pturan {

/// p0(n) a(n+d) = p1(n) a(n+d-1) + ... + pd(n) a(n), with a(0..m) given.
struct Recurrence {
  std::string name;
  std::vector<Poly> coeffs;  // p0 .. pd
  std::vector<Rat> initials;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }

  /// Coefficients P0..Pd of the homogeneous form sum_k Pk(n) a(n+k) = 0.
  std::vector<Poly> sum_form() const;
  static Recurrence from_sum_form(std::string name, const std::vector<Poly>& sum_form, std::vector<Rat> initials);

  /// Throws unless order >= 1, p0 != 0, pd != 0 and there are at least d initials.
  void validate() const;

  /// Stable text encoding of coefficients and initials (the cache key).
  std::string canonical_text() const;
  std::uint64_t fingerprint() const;
};

/// Exact terms of a recurrence, computed on demand and optionally persisted
/// in a cache directory. Extension is serialized by an internal mutex, so a
/// table can be shared between threads.
class TermTable {
 public:
  explicit TermTable(Recurrence rec, std::filesystem::path cache_dir = {});

  const Recurrence& recurrence() const { return rec_; }
  /// a(n); extends the table as needed.
  Rat term(long n);
  /// a(from) .. a(to) inclusive.
  std::vector<Rat> terms(long from, long to);
  /// Number of computed terms.
  long size() const;
  /// Writes newly computed terms to the cache file, if any.
  void flush();

 private:
  void extend_locked(long n);

  Recurrence rec_;
  std::filesystem::path cache_file_;
  mutable std::mutex mu_;
  std::vector<Rat> values_;
  std::size_t persisted_ = 0;
};

std::shared_ptr<TermTable> make_table(const Recurrence& rec, const std::filesystem::path& cache_dir = {});

namespace term_cache {

/// File layout: magic "PTURANTC", u32 version, u64 fingerprint, u64 count,
/// then `count` records, each numerator and denominator encoded as a sign
/// byte, a u64 byte length and big-endian magnitude bytes. Records are
/// appended and the count patched in place under an exclusive flock.
std::vector<Rat> load(const std::filesystem::path& file, std::uint64_t fingerprint);
/// Persists all[count..] where count is the number of records on disk.
void append(const std::filesystem::path& file, std::uint64_t fingerprint, const std::vector<Rat>& all);

}  // namespace term_cache

}  // namespace pturan
