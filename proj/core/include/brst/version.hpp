#pragma once

namespace brst {
inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "brstv.report/1";
}  // namespace brst
