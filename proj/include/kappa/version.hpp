#pragma once

namespace kappa {

inline constexpr const char* kToolVersion = "1.0.0";  ///< reported in every ReportFile
inline constexpr int kSchemaVersion = 1;              ///< problem/report schema revision

}  // namespace kappa
