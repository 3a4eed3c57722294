#pragma once

namespace weakmult {

inline constexpr const char* kToolName = "weakmult";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace weakmult
