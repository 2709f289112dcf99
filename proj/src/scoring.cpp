#include "wmb/scoring.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "wmb/frame_io.hpp"
#include "wmb/json_writer.hpp"

namespace wmb {
namespace {

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p)
{
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

std::vector<double> frame_scores(const FrameSequence& seq, const std::function<double(const Frame&)>& provider,
                                 const std::map<int, double>* overrides)
{
    std::vector<double> out;
    out.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (overrides) {
            if (const auto it = overrides->find(static_cast<int>(i + 1)); it != overrides->end()) {
                out.push_back(it->second);
                continue;
            }
        }
        if (!provider) {
            throw Error("no provider for frame " + std::to_string(i + 1));
        }
        out.push_back(provider(seq[i]));
    }
    return out;
}

bool all_zero(const TangentSeries& s)
{
    return std::all_of(s.begin(), s.end(), [](const auto& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::abs(x) < 1e-12; });
    });
}

double agreement_with_alignment(const PoseSequence& raw, const PoseSequence& reference, const BenchConfig& cfg,
                                MetricReport& report, const char* metric)
{
    if (raw.size() != reference.size()) {
        throw Error(std::string(metric) + ": generated trajectory has " + std::to_string(raw.size()) +
                    " poses but the reference has " + std::to_string(reference.size()));
    }
    const PoseSequence sync = align_to_reference(raw, reference);
    const TangentSeries a = tangent_series(sync);
    const TangentSeries b = tangent_series(reference);
    if (all_zero(a) || all_zero(b)) {
        report.notes.push_back(std::string(metric) +
                               ": zero-motion trajectory, cosine similarity defined as 0 for stationary steps");
    }
    return tangent_agreement(a, b, cfg.trajectory);
}

void mark_absent(MetricReport& report, std::string_view metric, const std::string& why)
{
    report.absent.emplace_back(metric);
    report.notes.push_back("warning: " + std::string(metric) + " not scored: " + why);
}

}  // namespace

Providers default_providers(const BenchConfig& cfg)
{
    Providers p;
    p.quality = contrast_quality_provider();
    p.noise = laplacian_noise_provider(cfg.noise_scale);
    p.reconstructor = blend_reconstruct;
    return p;
}

SidecarScores parse_sidecar(std::string_view text)
{
    SidecarScores s;
    try {
        const auto j = nlohmann::json::parse(text);
        if (!j.is_array()) {
            throw Error("score sidecar must be a JSON array");
        }
        for (const auto& entry : j) {
            const int idx = entry.at("frame_index").get<int>();
            if (idx < 1) {
                throw Error("score sidecar frame_index must be 1-based");
            }
            if (entry.contains("quality") && !entry["quality"].is_null()) {
                s.quality[idx] = entry["quality"].get<double>();
            }
            if (entry.contains("noise") && !entry["noise"].is_null()) {
                s.noise[idx] = entry["noise"].get<double>();
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed score sidecar: ") + e.what());
    }
    return s;
}

RunManifest parse_manifest(const nlohmann::json& j, const std::filesystem::path& base_dir)
{
    try {
        RunManifest m;
        m.video = resolve(base_dir, j.at("video").get<std::string>());
        if (j.contains("pose_file") && !j["pose_file"].is_null()) {
            m.pose_file = resolve(base_dir, j["pose_file"].get<std::string>());
        }
        m.pose_format = parse_pose_format(j.value("pose_format", std::string("matrix3x4")));
        const std::string kind = j.value("command_kind", std::string("action"));
        if (kind == "poses") {
            m.command_kind = CommandKind::Poses;
        } else if (kind == "action") {
            m.command_kind = CommandKind::Action;
        } else {
            throw Error("command_kind must be poses or action");
        }
        m.task = task_from_json(j.at("task"));
        if (m.task.command_poses) {
            m.task.command_poses = resolve(base_dir, *m.task.command_poses).string();
        }
        m.fps = j.value("fps", 30.0);
        if (j.contains("sidecar_scores") && !j["sidecar_scores"].is_null()) {
            m.sidecar_scores = resolve(base_dir, j["sidecar_scores"].get<std::string>());
        }
        if (j.contains("reconstructed_frames") && !j["reconstructed_frames"].is_null()) {
            m.reconstructed_frames = resolve(base_dir, j["reconstructed_frames"].get<std::string>());
        }
        m.model = j.value("model", std::string());
        m.video_id = j.value("video_id", m.video.stem().string());
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed manifest: ") + e.what());
    }
}

RunManifest load_manifest(const std::filesystem::path& path)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error("manifest " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_manifest(j, path.parent_path());
}

std::optional<PoseSequence> synthesize_command(const TaskSpec& task, std::size_t frames, const BenchConfig& cfg)
{
    if (task.action) {
        return invert_all(to_pose_deltas(task.action->t_id, task.action->r_id, cfg.step_translation,
                                         cfg.step_rotation, static_cast<int>(frames)));
    }
    if (task.memory_pair) {
        const int steps = task.memory_split.value_or(cfg.memory_split);
        PoseSequence loop = memory_loop(memory_pair(*task.memory_pair), steps, cfg.step_translation, cfg.step_rotation);
        if (loop.size() != frames) {
            throw Error("memory command has " + std::to_string(loop.size()) + " poses but the run has " +
                        std::to_string(frames));
        }
        return invert_all(loop);
    }
    return std::nullopt;
}

MetricReport score_run(const RunInputs& in, const TaskSpec& task, const BenchConfig& cfg, const Providers& providers)
{
    if (!in.frames) {
        throw Error("no frames to score");
    }
    validate(task);
    const FrameSequence& seq = *in.frames;
    MetricReport report;

    const auto quality = frame_scores(seq, providers.quality, in.sidecar ? &in.sidecar->quality : nullptr);
    const auto noise = frame_scores(seq, providers.noise, in.sidecar ? &in.sidecar->noise : nullptr);

    report.scores["image_quality"] = image_quality(quality, cfg.visual.quality_min, cfg.visual.quality_max);
    report.scores["brightness_consistency"] = brightness_consistency(seq, cfg.visual);
    report.scores["color_temperature"] = color_temperature(seq, cfg.visual);
    {
        std::vector<SharpnessVector> track;
        track.reserve(seq.size());
        for (const Frame& f : seq) {
            track.push_back(sharpness_vector(to_grayscale(f)));
        }
        report.scores["sharpness_retention"] = sharpness_retention(track, noise, cfg.visual);
    }
    report.scores["motion_smoothness"] =
        motion_smoothness(seq, providers.reconstructor ? providers.reconstructor : Reconstructor(blend_reconstruct),
                          cfg.smoothness, providers.perceptual);

    const bool following = task.type == TaskType::CameraFollowing;
    const bool memory = task.type == TaskType::Memory;
    const char* traj_metric = following ? "trajectory_tolerance" : "trajectory_accuracy";

    if (!in.poses) {
        mark_absent(report, traj_metric, "no generated poses supplied");
        if (memory) {
            mark_absent(report, "trajectory_alignment", "no generated poses supplied");
        }
    } else {
        std::optional<PoseSequence> command;
        if (in.command) {
            command = *in.command;
        } else {
            command = synthesize_command(task, in.poses->size(), cfg);
        }
        if (!command) {
            mark_absent(report, traj_metric, "no reference trajectory supplied");
        } else {
            report.scores[traj_metric] = agreement_with_alignment(*in.poses, *command, cfg, report, traj_metric);
        }
        if (memory) {
            report.scores["trajectory_alignment"] = memory_trajectory_alignment(*in.poses, cfg.trajectory.k);
        }
    }

    if (memory) {
        MemoryConfig mc = cfg.memory;
        const auto pair_mse = mirrored_pair_mse(seq);
        const int frames = static_cast<int>(seq.size());
        if (cfg.memory_weights == WeightSelection::Formula) {
            mc.weight_mode = MemoryWeightMode::Formula;
        } else {
            mc.weight_mode = MemoryWeightMode::Prose;
        }
        report.scores["memory_symmetry"] = memory_symmetry(pair_mse, frames, mc);
        if (cfg.memory_weights == WeightSelection::Both) {
            mc.weight_mode = MemoryWeightMode::Formula;
            report.scores["memory_symmetry_formula"] = memory_symmetry(pair_mse, frames, mc);
        }
    }
    return report;
}

RunResult score_manifest(const RunManifest& m, const BenchConfig& cfg, const Providers& base)
{
    RunResult result;
    result.video_id = m.video_id;
    result.model = m.model;
    result.task = m.task;
    try {
        const FrameSequence frames = load_frames(m.video, m.fps);
        std::optional<PoseSequence> poses;
        if (m.pose_file) {
            poses = parse_poses(m.pose_format, read_text(*m.pose_file));
        }
        std::optional<PoseSequence> command;
        if (m.command_kind == CommandKind::Poses || m.task.type == TaskType::CameraFollowing) {
            if (!m.task.command_poses) {
                throw Error("command_kind poses requires task.command_poses");
            }
            command = parse_poses(m.pose_format, read_text(*m.task.command_poses));
        }
        std::optional<SidecarScores> sidecar;
        if (m.sidecar_scores) {
            sidecar = parse_sidecar(read_text(*m.sidecar_scores));
        }
        Providers providers = base;
        if (m.reconstructed_frames) {
            auto rebuilt = std::make_shared<const std::vector<Frame>>(load_frames(*m.reconstructed_frames, m.fps).frames());
            providers.reconstructor = [rebuilt](const Frame&, const Frame&, std::size_t index) {
                const std::size_t slot = (index - 1) / 2;
                if (slot >= rebuilt->size()) {
                    throw Error("reconstructed frame set is missing frame " + std::to_string(index + 1));
                }
                return (*rebuilt)[slot];
            };
        }
        RunInputs in;
        in.frames = &frames;
        in.poses = poses ? &*poses : nullptr;
        in.command = command ? &*command : nullptr;
        in.sidecar = sidecar ? &*sidecar : nullptr;
        result.report = score_run(in, m.task, cfg, providers);
    } catch (const std::exception& e) {
        result.error = e.what();
    }
    return result;
}

std::vector<RunResult> run_batch(const std::vector<RunManifest>& manifests, const BenchConfig& cfg,
                                 const Providers& providers, int jobs)
{
    std::vector<RunResult> results(manifests.size());
    const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(manifests.size(), 1));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < manifests.size(); i = next++) {
            results[i] = score_manifest(manifests[i], cfg, providers);
        }
    };
    if (workers <= 1) {
        work();
        return results;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back(work);
    }
    pool.clear();
    return results;
}

nlohmann::ordered_json to_json(const RunResult& r)
{
    nlohmann::ordered_json j;
    j["video_id"] = r.video_id;
    j["model"] = r.model;
    j["task"] = to_json(r.task);
    if (!r.report) {
        j["status"] = "failed";
        j["error"] = r.error;
        return j;
    }
    j["status"] = "ok";
    nlohmann::ordered_json scores = nlohmann::ordered_json::object();
    for (std::string_view name : kMetricNames) {
        if (const auto it = r.report->scores.find(std::string(name)); it != r.report->scores.end()) {
            scores[std::string(name)] = it->second;
        }
    }
    for (const auto& [name, value] : r.report->scores) {
        if (!scores.contains(name)) {
            scores[name] = value;
        }
    }
    j["scores"] = scores;
    j["absent"] = r.report->absent;
    j["notes"] = r.report->notes;
    return j;
}

RunResult run_result_from_json(const nlohmann::json& j)
{
    try {
        RunResult r;
        r.video_id = j.value("video_id", std::string());
        r.model = j.value("model", std::string());
        r.task = task_from_json(j.at("task"));
        if (j.value("status", std::string("ok")) != "ok") {
            r.error = j.value("error", std::string("failed"));
            return r;
        }
        MetricReport report;
        for (const auto& [name, value] : j.at("scores").items()) {
            report.scores[name] = value.get<double>();
        }
        if (j.contains("absent")) {
            report.absent = j["absent"].get<std::vector<std::string>>();
        }
        if (j.contains("notes")) {
            report.notes = j["notes"].get<std::vector<std::string>>();
        }
        r.report = std::move(report);
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed run report: ") + e.what());
    }
}

std::string emit_run_reports(const std::vector<RunResult>& results)
{
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        runs.push_back(to_json(r));
    }
    nlohmann::ordered_json doc;
    doc["runs"] = runs;
    return write_fixed_json(doc, 6);
}

}  // namespace wmb
