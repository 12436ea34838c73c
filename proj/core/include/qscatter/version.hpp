#pragma once

namespace qscatter {

inline constexpr const char* kToolName = "qscatter";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace qscatter
