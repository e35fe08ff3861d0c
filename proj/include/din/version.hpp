#pragma once

namespace din {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kResultSchema = "din-result/1";
inline constexpr const char* kFrameSchema = "din-frame/1";
inline constexpr const char* kSimulationSchema = "din-simulation/1";
inline constexpr const char* kEvaluationSchema = "din-evaluation/1";

} // namespace din
