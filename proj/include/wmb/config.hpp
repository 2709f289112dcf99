#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wmb/filter.hpp"
#include "wmb/memory_metrics.hpp"
#include "wmb/pose.hpp"
#include "wmb/trajectory_metrics.hpp"
#include "wmb/visual_metrics.hpp"

namespace wmb {

/// Bad command line or configuration; maps to exit status 2.
class UsageError : public Error {
public:
    using Error::Error;
};

enum class WeightSelection { Prose, Formula, Both };

struct BenchConfig {
    VisualConfig visual;
    double noise_scale = 1000.0;
    PercentileRule percentile_rule = PercentileRule::NearestRank;
    SmoothnessConfig smoothness;
    TrajectoryOptions trajectory;
    MemoryConfig memory;
    WeightSelection memory_weights = WeightSelection::Prose;
    FilterConfig filter;
    double step_translation = 0.1;
    double step_rotation = 0.05;
    int memory_split = 40;
    HandednessPolicy handedness = HandednessPolicy::Warn;
};

/// Flat key = value lines. '#' and ';' start comments and [section] headers are
/// ignored. Unknown keys or malformed values raise UsageError.
BenchConfig parse_config(std::string_view text);
BenchConfig load_config(const std::filesystem::path& path);

/// Explicit path if given, else $IWORLD_CONFIG if set, else defaults.
BenchConfig resolve_config(const std::optional<std::string>& explicit_path);

nlohmann::ordered_json to_json(const BenchConfig& cfg);
nlohmann::ordered_json to_json(const FilterConfig& cfg);

}  // namespace wmb
