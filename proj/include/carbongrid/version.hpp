#pragma once

namespace carbongrid {

inline constexpr const char* kVersion = "0.1.0";

} // namespace carbongrid
