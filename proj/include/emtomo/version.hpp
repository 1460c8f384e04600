#pragma once

namespace emtomo {

inline constexpr const char* kVersionString = "0.1.0";

}  // namespace emtomo
