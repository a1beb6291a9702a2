#pragma once

namespace linkpred {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace linkpred
