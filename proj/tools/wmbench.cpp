// wmbench command-line front end.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "wmb/actions.hpp"
#include "wmb/config.hpp"
#include "wmb/filter.hpp"
#include "wmb/frame_io.hpp"
#include "wmb/json_writer.hpp"
#include "wmb/leaderboard.hpp"
#include "wmb/scoring.hpp"
#include "wmb/tasks.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw wmb::Error("cannot write " + path);
    }
    out << text;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw wmb::UsageError("cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::ordered_json signal_json(const wmb::ControlSignal& s)
{
    nlohmann::ordered_json j;
    j["keyboard"] = s.keyboard;
    j["mouse"] = s.mouse;
    j["keys"] = s.keys;
    j["text"] = s.text;
    if (s.extended) {
        j["extended"] = true;
    }
    return j;
}

nlohmann::ordered_json action_json(const wmb::ActionQuadruple& a, const wmb::ControlSignal& s)
{
    nlohmann::ordered_json j;
    j["difficulty"] = a.difficulty;
    j["t_id"] = a.t_id;
    j["r_id"] = a.r_id;
    j["valid"] = a.valid;
    const nlohmann::ordered_json signal = signal_json(s);
    for (const auto& [k, v] : signal.items()) {
        j[k] = v;
    }
    return j;
}

std::string export_actions()
{
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta;
    meta["action_count"] = wmb::full_table().size();
    meta["keyboard_subset_count"] = wmb::keyboard_subset().size();
    meta["axes"] = "translation x right, y up, z forward; rotation pitch up, yaw right, roll clockwise";
    nlohmann::ordered_json conflicts = nlohmann::ordered_json::array();
    for (const auto& id : wmb::validity_conflicts()) {
        nlohmann::ordered_json c;
        c["t_id"] = id.t_id;
        c["r_id"] = id.r_id;
        c["full_table_valid"] = wmb::full_table_entry(id.t_id, id.r_id).valid;
        c["keyboard_table_valid"] = 1 - c["full_table_valid"].get<int>();
        conflicts.push_back(c);
    }
    meta["validity_conflicts"] = conflicts;
    nlohmann::ordered_json errata = nlohmann::ordered_json::array();
    for (const auto& p : wmb::memory_pairs()) {
        if (p.suspected_erratum) {
            errata.push_back("memory pair " + std::to_string(p.id) +
                             ": translation directions published with tilt mouse encodings");
        }
    }
    errata.push_back("rotation ids 23-26: published names repeat; axes follow the id pattern "
                     "(23 down+right+cw, 24 down+right+ccw, 25 down+left+cw, 26 down+left+ccw)");
    meta["suspected_errata"] = errata;
    doc["metadata"] = meta;

    nlohmann::ordered_json full = nlohmann::ordered_json::array();
    for (const auto& a : wmb::full_table()) {
        full.push_back(action_json(a, wmb::control_signal(a.t_id, a.r_id)));
    }
    doc["full_table"] = full;

    nlohmann::ordered_json subset = nlohmann::ordered_json::array();
    for (const auto& e : wmb::keyboard_subset()) {
        subset.push_back(action_json(e.action, e.signal));
    }
    doc["keyboard_subset"] = subset;

    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& p : wmb::memory_pairs()) {
        nlohmann::ordered_json j;
        j["id"] = p.id;
        auto first = signal_json(p.first_signal);
        first["t_id"] = p.first.t_id;
        first["r_id"] = p.first.r_id;
        first["direction"] = p.first_direction;
        auto second = signal_json(p.second_signal);
        second["t_id"] = p.second.t_id;
        second["r_id"] = p.second.r_id;
        second["direction"] = p.second_direction;
        j["action1"] = first;
        j["action2"] = second;
        j["text"] = p.text;
        j["suspected_erratum"] = p.suspected_erratum;
        pairs.push_back(j);
    }
    doc["memory_pairs"] = pairs;
    return doc.dump(2) + "\n";
}

std::array<int, 3> parse_signs(const std::string& text)
{
    std::array<int, 3> signs{};
    std::stringstream in(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(in, item, ',')) {
        if (i >= 3 || (item != "1" && item != "+1" && item != "-1")) {
            throw wmb::UsageError("--rectify expects three comma-separated signs, e.g. 1,-1,1");
        }
        signs[i++] = item == "-1" ? -1 : 1;
    }
    if (i != 3) {
        throw wmb::UsageError("--rectify expects three comma-separated signs, e.g. 1,-1,1");
    }
    return signs;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"World-model benchmark toolkit: tasks, scoring, refinement and leaderboards"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "Flat key=value config file (falls back to $IWORLD_CONFIG)");

    auto* tasks = app.add_subcommand("tasks", "Task specifications");
    tasks->require_subcommand(1);
    auto* generate = tasks->add_subcommand("generate", "Generate task specs");
    std::string task_type;
    int count = 1;
    std::uint64_t seed = 0;
    bool exhaustive = false;
    std::string output;
    generate->add_option("--type", task_type, "action_d1..action_d4, memory or camera_following")->required();
    generate->add_option("--count", count, "Number of tasks")->check(CLI::PositiveNumber);
    generate->add_option("--seed", seed, "Sampling seed");
    generate->add_flag("--exhaustive", exhaustive, "Enumerate candidates in table order");
    generate->add_option("-o,--output", output, "Output file (default stdout)");

    auto* score = app.add_subcommand("score", "Score runs described by manifests");
    std::vector<std::string> manifests;
    int jobs = 1;
    score->add_option("-m,--manifest", manifests, "Run manifest JSON (repeatable)")->required();
    score->add_option("-j,--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    score->add_option("-o,--output", output, "Output file (default stdout)");

    auto* refine = app.add_subcommand("refine", "Detect anomalies and emit clean segments");
    std::string video;
    std::string video_id;
    double fps = 30.0;
    std::string clips_dir;
    refine->add_option("--video", video, "PNG directory or packed raw file")->required();
    refine->add_option("--fps", fps, "Frame rate")->check(CLI::PositiveNumber);
    refine->add_option("--video-id", video_id, "Identifier echoed in the output");
    refine->add_option("--emit-clips", clips_dir, "Write each segment as a packed raw clip into this directory");
    refine->add_option("-o,--output", output, "Output file (default stdout)");

    auto* agg = app.add_subcommand("aggregate", "Aggregate run reports into a leaderboard");
    std::vector<std::string> reports;
    std::string format;
    agg->add_option("-r,--reports", reports, "Run report JSON files")->required();
    agg->add_option("-f,--format", format, "json or csv")->required();
    agg->add_option("-o,--output", output, "Output file (default stdout)");

    auto* actions = app.add_subcommand("actions", "Action tables");
    actions->require_subcommand(1);
    auto* exp = actions->add_subcommand("export", "Export action tables");
    std::string export_format = "json";
    exp->add_option("-f,--format", export_format, "Output format (json)");
    exp->add_option("-o,--output", output, "Output file (default stdout)");

    auto* poses = app.add_subcommand("poses", "Pose files");
    poses->require_subcommand(1);
    auto* convert = poses->add_subcommand("convert", "Convert between pose formats");
    std::string from_fmt;
    std::string to_fmt;
    std::string input;
    std::string signs;
    convert->add_option("--from", from_fmt, "matrix3x4, matrix4x4, seven-element or six-dof")->required();
    convert->add_option("--to", to_fmt, "Target format")->required();
    convert->add_option("-i,--input", input, "Input pose file")->required();
    convert->add_option("--rectify", signs, "Axis signs applied as diag(sx,sy,sz), e.g. 1,-1,1");
    convert->add_option("-o,--output", output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        const wmb::BenchConfig cfg =
            wmb::resolve_config(config_path.empty() ? std::nullopt : std::optional<std::string>(config_path));

        if (*generate) {
            wmb::TaskRequest req;
            req.type = wmb::parse_task_type(task_type);
            req.count = count;
            req.seed = seed;
            req.exhaustive = exhaustive;
            req.memory_split = cfg.memory_split;
            nlohmann::ordered_json list = nlohmann::ordered_json::array();
            for (const auto& t : wmb::generate_tasks(req)) {
                list.push_back(wmb::to_json(t));
            }
            nlohmann::ordered_json doc;
            doc["tasks"] = list;
            write_output(output, doc.dump(2) + "\n");
            return kExitOk;
        }

        if (*score) {
            std::vector<wmb::RunManifest> loaded;
            for (const auto& m : manifests) {
                loaded.push_back(wmb::load_manifest(m));
            }
            const auto results = wmb::run_batch(loaded, cfg, wmb::default_providers(cfg), jobs);
            write_output(output, wmb::emit_run_reports(results));
            int rc = kExitOk;
            for (const auto& r : results) {
                if (!r.report) {
                    std::cerr << "error: " << r.video_id << ": " << r.error << "\n";
                    rc = kExitFailure;
                } else {
                    for (const auto& note : r.report->notes) {
                        if (note.rfind("warning:", 0) == 0) {
                            std::cerr << r.video_id << ": " << note << "\n";
                        }
                    }
                }
            }
            return rc;
        }

        if (*refine) {
            const wmb::FrameSequence seq = wmb::load_frames(video, fps);
            const auto result = wmb::refine(seq, cfg.filter);
            nlohmann::ordered_json doc;
            doc["video_id"] = video_id.empty() ? std::filesystem::path(video).stem().string() : video_id;
            nlohmann::ordered_json segs = nlohmann::ordered_json::array();
            for (const auto& s : result.segments) {
                segs.push_back({{"start", s.start}, {"end", s.end}});
            }
            doc["segments"] = segs;
            doc["flags"] = result.flags;
            doc["config"] = wmb::to_json(cfg.filter);
            if (!clips_dir.empty()) {
                std::filesystem::create_directories(clips_dir);
                nlohmann::ordered_json clips = nlohmann::ordered_json::array();
                for (const auto& s : result.segments) {
                    const auto clip = seq.slice(static_cast<std::size_t>(s.start - 1), static_cast<std::size_t>(s.length()));
                    const auto path = std::filesystem::path(clips_dir) /
                                      (doc["video_id"].get<std::string>() + "_" + std::to_string(s.start) + "_" +
                                       std::to_string(s.end) + ".iwfr");
                    wmb::write_packed_raw(path, clip.frames());
                    clips.push_back(path.string());
                }
                doc["clips"] = clips;
            }
            write_output(output, wmb::write_fixed_json(doc, 6));
            return kExitOk;
        }

        if (*agg) {
            if (format != "json" && format != "csv") {
                throw wmb::UsageError("unknown report format '" + format + "' (expected json or csv)");
            }
            std::vector<wmb::RunResult> runs;
            for (const auto& path : reports) {
                nlohmann::json doc;
                try {
                    doc = nlohmann::json::parse(read_file(path));
                } catch (const nlohmann::json::exception& e) {
                    throw wmb::Error(path + " is not valid JSON: " + e.what());
                }
                for (const auto& r : doc.at("runs")) {
                    runs.push_back(wmb::run_result_from_json(r));
                }
            }
            const auto rows = wmb::aggregate(wmb::group_by_model(runs));
            write_output(output, wmb::emit_report(rows, format));
            return kExitOk;
        }

        if (*exp) {
            if (export_format != "json") {
                throw wmb::UsageError("unknown export format '" + export_format + "' (expected json)");
            }
            write_output(output, export_actions());
            return kExitOk;
        }

        if (*convert) {
            wmb::PoseFormat from{};
            wmb::PoseFormat to{};
            try {
                from = wmb::parse_pose_format(from_fmt);
                to = wmb::parse_pose_format(to_fmt);
            } catch (const wmb::Error& e) {
                throw wmb::UsageError(e.what());
            }
            wmb::PoseSequence seq = wmb::parse_poses(from, read_file(input));
            if (!signs.empty()) {
                auto r = wmb::rectify(seq, parse_signs(signs), cfg.handedness);
                if (r.handedness_flip) {
                    std::cerr << "warning: axis signs flip handedness"
                              << (cfg.handedness == wmb::HandednessPolicy::NegateX ? "; x sign negated\n" : "\n");
                }
                seq = std::move(r.poses);
            }
            write_output(output, wmb::serialize_poses(to, seq));
            return kExitOk;
        }
    } catch (const wmb::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
