#include "pturan/asymptotics/shift.hpp"

namespace pturan {

std::vector<Rat> log_shift_coeffs(int dir, int K) {
  // log(1 + dir/n) = sum_k (-1)^(k-1) dir^k / (k n^k)
  std::vector<Rat> out;
  for (int k = 1; k <= K; ++k) {
    int s = (k % 2 ? 1 : -1) * (dir < 0 && k % 2 ? -1 : 1);
    out.push_back(Rat(s) / Rat(k));
  }
  return out;
}

AsymSeries power_log_series(const LogCoef& r, const Rat& alpha, int K) {
  AsymSeries s(alpha + K + 1);
  s.add_term(alpha, r);
  return s;
}

}  // namespace pturan
