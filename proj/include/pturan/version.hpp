#pragma once

namespace pturan {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace pturan
