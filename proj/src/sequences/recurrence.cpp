#include "pturan/sequences/recurrence.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstring>
#include <fstream>

namespace pturan {

std::vector<Poly> Recurrence::sum_form() const {
  const int d = order();
  std::vector<Poly> p(static_cast<std::size_t>(d + 1));
  p[static_cast<std::size_t>(d)] = coeffs[0];
  for (int j = 1; j <= d; ++j) p[static_cast<std::size_t>(d - j)] = -coeffs[static_cast<std::size_t>(j)];
  return p;
}

Recurrence Recurrence::from_sum_form(std::string name, const std::vector<Poly>& sum_form, std::vector<Rat> initials) {
  Recurrence r;
  r.name = std::move(name);
  const int d = static_cast<int>(sum_form.size()) - 1;
  r.coeffs.resize(sum_form.size());
  r.coeffs[0] = sum_form[static_cast<std::size_t>(d)];
  for (int j = 1; j <= d; ++j) r.coeffs[static_cast<std::size_t>(j)] = -sum_form[static_cast<std::size_t>(d - j)];
  r.initials = std::move(initials);
  r.validate();
  return r;
}

void Recurrence::validate() const {
  if (order() < 1) throw Error("recurrence must have order at least 1", "sequences");
  if (coeffs.front().is_zero()) throw Error("leading recurrence coefficient is zero", "sequences");
  if (coeffs.back().is_zero()) throw Error("trailing recurrence coefficient is zero; lower the order", "sequences");
  if (static_cast<int>(initials.size()) < order()) {
    throw Error("recurrence of order " + std::to_string(order()) + " needs at least that many initial values",
                "sequences");
  }
}

std::string Recurrence::canonical_text() const {
  std::string s = "rec:";
  for (const auto& p : coeffs) {
    s += "[";
    for (const auto& c : coeff_strings(p)) s += c + ",";
    s += "]";
  }
  s += ";init:";
  for (const auto& v : initials) s += to_string(v) + ",";
  return s;
}

std::uint64_t Recurrence::fingerprint() const {
  // FNV-1a
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

TermTable::TermTable(Recurrence rec, std::filesystem::path cache_dir) : rec_(std::move(rec)) {
  rec_.validate();
  const int d = rec_.order();
  // given initials beyond the first d must agree with the recurrence
  for (std::size_t k = static_cast<std::size_t>(d); k < rec_.initials.size(); ++k) {
    Rat n(static_cast<long>(k) - d);
    Rat lhs = rec_.coeffs[0](n) * rec_.initials[k];
    Rat rhs = 0;
    for (int j = 1; j <= d; ++j) rhs += rec_.coeffs[static_cast<std::size_t>(j)](n) * rec_.initials[k - static_cast<std::size_t>(j)];
    if (lhs != rhs) {
      throw Error("initial value a(" + std::to_string(k) + ") is inconsistent with the recurrence", "sequences");
    }
  }
  values_ = rec_.initials;
  if (!cache_dir.empty()) {
    std::filesystem::create_directories(cache_dir);
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.terms", static_cast<unsigned long long>(rec_.fingerprint()));
    cache_file_ = cache_dir / name;
    auto cached = term_cache::load(cache_file_, rec_.fingerprint());
    bool prefix_ok = cached.size() >= values_.size();
    for (std::size_t i = 0; prefix_ok && i < values_.size(); ++i) prefix_ok = cached[i] == values_[i];
    if (prefix_ok) {
      values_ = std::move(cached);
      persisted_ = values_.size();
    }
  }
}

long TermTable::size() const {
  std::lock_guard lock(mu_);
  return static_cast<long>(values_.size());
}

void TermTable::extend_locked(long target) {
  const int d = rec_.order();
  const auto& p = rec_.coeffs;
  values_.reserve(static_cast<std::size_t>(target + 1));
  for (long k = static_cast<long>(values_.size()); k <= target; ++k) {
    Rat n(k - d);
    Rat lead = p[0](n);
    if (is_zero(lead)) {
      throw Error("leading coefficient vanishes at n = " + std::to_string(k - d) + " while computing a(" +
                      std::to_string(k) + ")",
                  "sequences");
    }
    Rat acc = 0;
    for (int j = 1; j <= d; ++j) acc += p[static_cast<std::size_t>(j)](n) * values_[static_cast<std::size_t>(k - j)];
    values_.push_back(acc / lead);
  }
}

Rat TermTable::term(long n) {
  if (n < 0) throw Error("negative term index " + std::to_string(n), "sequences");
  std::lock_guard lock(mu_);
  if (n >= static_cast<long>(values_.size())) extend_locked(n);
  return values_[static_cast<std::size_t>(n)];
}

std::vector<Rat> TermTable::terms(long from, long to) {
  if (from < 0) throw Error("negative term index " + std::to_string(from), "sequences");
  if (to < from) return {};
  std::lock_guard lock(mu_);
  if (to >= static_cast<long>(values_.size())) extend_locked(to);
  return {values_.begin() + from, values_.begin() + to + 1};
}

void TermTable::flush() {
  std::lock_guard lock(mu_);
  if (cache_file_.empty() || values_.size() <= persisted_) return;
  term_cache::append(cache_file_, rec_.fingerprint(), values_);
  persisted_ = values_.size();
}

std::shared_ptr<TermTable> make_table(const Recurrence& rec, const std::filesystem::path& cache_dir) {
  return std::make_shared<TermTable>(rec, cache_dir);
}

namespace term_cache {

namespace {

constexpr char kMagic[8] = {'P', 'T', 'U', 'R', 'A', 'N', 'T', 'C'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderSize = 8 + 4 + 8 + 8;
constexpr std::streamoff kCountOffset = 8 + 4 + 8;

class FileLock {
 public:
  FileLock(const std::filesystem::path& target, int op) {
    auto lock_path = target;
    lock_path += ".lock";
    fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ >= 0) ::flock(fd_, op);
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
bool get(std::istream& in, T& v) {
  return static_cast<bool>(in.read(reinterpret_cast<char*>(&v), sizeof v));
}

void put_int(std::ostream& out, const Int& z) {
  std::uint8_t s = z < 0 ? 1 : 0;
  std::size_t count = 0;
  void* raw = mpz_export(nullptr, &count, 1, 1, 1, 0, z.get_mpz_t());
  put(out, s);
  put(out, static_cast<std::uint64_t>(count));
  out.write(static_cast<const char*>(raw), static_cast<std::streamsize>(count));
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  if (raw) freefunc(raw, count);
}

bool get_int(std::istream& in, Int& z) {
  std::uint8_t s = 0;
  std::uint64_t count = 0;
  if (!get(in, s) || !get(in, count) || count > (1ULL << 32)) return false;
  std::vector<char> buf(count);
  if (count && !in.read(buf.data(), static_cast<std::streamsize>(count))) return false;
  mpz_import(z.get_mpz_t(), count, 1, 1, 1, 0, buf.data());
  if (s) z = -z;
  return true;
}

void put_header(std::ostream& out, std::uint64_t fingerprint, std::uint64_t count) {
  out.write(kMagic, sizeof kMagic);
  put(out, kVersion);
  put(out, fingerprint);
  put(out, count);
}

bool read_header(std::istream& in, std::uint64_t fingerprint, std::uint64_t& count) {
  char magic[8];
  std::uint32_t version = 0;
  std::uint64_t fp = 0;
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0) return false;
  if (!get(in, version) || version != kVersion) return false;
  if (!get(in, fp) || fp != fingerprint) return false;
  return get(in, count);
}

std::vector<Rat> read_locked(const std::filesystem::path& file, std::uint64_t fingerprint) {
  std::ifstream in(file, std::ios::binary);
  std::uint64_t count = 0;
  if (!in || !read_header(in, fingerprint, count)) return {};
  std::vector<Rat> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    Int num, den;
    if (!get_int(in, num) || !get_int(in, den) || den <= 0) return {};
    Rat q(num, den);
    q.canonicalize();
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace

std::vector<Rat> load(const std::filesystem::path& file, std::uint64_t fingerprint) {
  if (!std::filesystem::exists(file)) return {};
  FileLock lock(file, LOCK_SH);
  return read_locked(file, fingerprint);
}

void append(const std::filesystem::path& file, std::uint64_t fingerprint, const std::vector<Rat>& all) {
  FileLock lock(file, LOCK_EX);
  // another process may have written more than we think; trust the header
  std::uint64_t on_disk = 0;
  bool valid = false;
  std::uintmax_t end_of_records = 0;
  {
    std::ifstream in(file, std::ios::binary);
    valid = in && read_header(in, fingerprint, on_disk);
    if (valid && on_disk < all.size()) {
      Int z;
      for (std::uint64_t i = 0; valid && i < 2 * on_disk; ++i) valid = get_int(in, z);
      if (valid) end_of_records = static_cast<std::uintmax_t>(in.tellg());
    }
  }
  if (valid && on_disk >= all.size()) return;
  // drop bytes left by an interrupted append
  if (valid) std::filesystem::resize_file(file, end_of_records);
  if (!valid) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    put_header(out, fingerprint, 0);
    on_disk = 0;
  }
  {
    std::ofstream out(file, std::ios::binary | std::ios::app);
    for (std::size_t i = on_disk; i < all.size(); ++i) {
      put_int(out, all[i].get_num());
      put_int(out, all[i].get_den());
    }
  }
  std::fstream patch(file, std::ios::binary | std::ios::in | std::ios::out);
  patch.seekp(kCountOffset);
  put(patch, static_cast<std::uint64_t>(all.size()));
  static_assert(kHeaderSize == 28);
}

}  // namespace term_cache

}  // namespace pturan
