#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wmb/config.hpp"
#include "wmb/tasks.hpp"

namespace wmb {

inline constexpr std::array<std::string_view, 9> kMetricNames = {
    "image_quality",      "brightness_consistency", "color_temperature",
    "sharpness_retention", "motion_smoothness",     "trajectory_accuracy",
    "memory_symmetry",    "trajectory_alignment",   "trajectory_tolerance",
};

struct Providers {
    FrameQualityProvider quality;
    NoiseScoreProvider noise;
    Reconstructor reconstructor;
    PerceptualDistance perceptual;  ///< optional
};

Providers default_providers(const BenchConfig& cfg);

/// Externally computed per-frame scores; missing entries fall back to the providers.
struct SidecarScores {
    std::map<int, double> quality;  ///< keyed by 1-based frame index
    std::map<int, double> noise;
};

SidecarScores parse_sidecar(std::string_view text);

struct MetricReport {
    std::map<std::string, double> scores;
    std::vector<std::string> absent;
    std::vector<std::string> notes;
};

enum class CommandKind { Poses, Action };

struct RunManifest {
    std::filesystem::path video;
    std::optional<std::filesystem::path> pose_file;
    PoseFormat pose_format = PoseFormat::Matrix3x4;
    CommandKind command_kind = CommandKind::Action;
    TaskSpec task;
    double fps = 30.0;
    std::optional<std::filesystem::path> sidecar_scores;
    std::optional<std::filesystem::path> reconstructed_frames;
    std::string model;
    std::string video_id;
};

/// Relative paths are resolved against `base_dir`.
RunManifest parse_manifest(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunManifest load_manifest(const std::filesystem::path& path);

/// Command trajectory (world-to-camera) for action and memory tasks with
/// `frames` poses; camera-following tasks return nullopt.
std::optional<PoseSequence> synthesize_command(const TaskSpec& task, std::size_t frames, const BenchConfig& cfg);

struct RunInputs {
    const FrameSequence* frames = nullptr;
    const PoseSequence* poses = nullptr;    ///< generated trajectory, may be null
    const PoseSequence* command = nullptr;  ///< commanded or reference trajectory, may be null
    const SidecarScores* sidecar = nullptr;
};

MetricReport score_run(const RunInputs& inputs, const TaskSpec& task, const BenchConfig& cfg,
                       const Providers& providers);

struct RunResult {
    std::string video_id;
    std::string model;
    TaskSpec task;
    std::optional<MetricReport> report;
    std::string error;  ///< set when scoring failed
};

/// Loads and scores one manifest; failures are captured in the result.
RunResult score_manifest(const RunManifest& manifest, const BenchConfig& cfg, const Providers& providers);

/// Scores every manifest on a pool of `jobs` workers; results keep input order.
std::vector<RunResult> run_batch(const std::vector<RunManifest>& manifests, const BenchConfig& cfg,
                                 const Providers& providers, int jobs);

nlohmann::ordered_json to_json(const RunResult& result);
RunResult run_result_from_json(const nlohmann::json& j);

/// Batch report JSON with six-decimal scores.
std::string emit_run_reports(const std::vector<RunResult>& results);

}  // namespace wmb
