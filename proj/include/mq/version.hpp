#pragma once

namespace mq {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "mq";

}  // namespace mq
