#pragma once

namespace foursym {

inline constexpr const char* kVersion = "0.1.0";

}
