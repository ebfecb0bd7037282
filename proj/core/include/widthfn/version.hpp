#pragma once

namespace widthfn {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "report_v1";

}  // namespace widthfn
