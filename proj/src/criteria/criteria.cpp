#include "pturan/criteria/criteria.hpp"

namespace pturan {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::holds:
      return "holds-asymptotically";
    case Outcome::fails:
      return "fails-asymptotically";
    case Outcome::inconclusive:
      break;
  }
  return "inconclusive";
}

std::string Verdict::trace_value(const std::string& key) const {
  for (const auto& [k, v] : trace) {
    if (k == key) return v;
  }
  return "";
}

KSeries u_series_for(const Recurrence& rec, const Transform& t, int K, const std::optional<int>& rho) {
  KSeries u = u_expansion_k(ratio_expansion(rec, {K, rho}).scaled(t.scale_power));
  for (int l = 0; l < t.phi_level; ++l) u = phi_u_expansion(u);
  return u;
}

}  // namespace pturan
