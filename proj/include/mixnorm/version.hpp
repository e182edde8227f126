#pragma once

namespace mixnorm {

inline constexpr const char* version = "0.1.0";

} // namespace mixnorm
