#pragma once

namespace lurebench {

inline constexpr const char* kVersion = "0.3.0";

// Stamped into every ScanReport; bump when any detector threshold changes.
inline constexpr const char* kScannerVersion = "lurebench-scanner/0.3.0";

}  // namespace lurebench
