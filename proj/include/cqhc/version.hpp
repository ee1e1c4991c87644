#pragma once

namespace cqhc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cqhc
