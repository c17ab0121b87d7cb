#pragma once

namespace ppursuit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ppursuit
