#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wmb/scoring.hpp"

namespace wmb {

/// The eight leaderboard columns in display order.
inline constexpr std::array<std::string_view, 8> kLeaderboardMetrics = {
    "image_quality",       "brightness_consistency", "color_temperature", "sharpness_retention",
    "motion_smoothness",   "trajectory_accuracy",    "memory_symmetry",   "trajectory_alignment",
};

inline constexpr std::array<std::string_view, 8> kLeaderboardColumns = {"IQ", "BC", "CTC", "SR",
                                                                        "MS", "TA", "MSym", "TAl"};

struct LeaderboardRow {
    std::string model;
    std::array<double, 8> means{};
    double avg = 0.0;
    int rank = 0;
};

/// Per-metric means over each model's reports, the average of the eight means,
/// and ranks by descending average with ties broken by model name.
std::vector<LeaderboardRow> aggregate(const std::map<std::string, std::vector<MetricReport>>& reports);

/// Groups successful run results by model name.
std::map<std::string, std::vector<MetricReport>> group_by_model(const std::vector<RunResult>& results);

/// "json" (canonical key order, four decimals) or "csv"; anything else is a UsageError.
std::string emit_report(const std::vector<LeaderboardRow>& rows, std::string_view format);

}  // namespace wmb
