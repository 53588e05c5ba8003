#pragma once

namespace extremal {
inline constexpr const char* kToolVersion = "0.1.0";
}
