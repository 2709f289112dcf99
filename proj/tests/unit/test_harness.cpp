#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "bundle.hpp"
#include "leaderboard_fixture.hpp"
#include "random_frames.hpp"
#include "wmb/config.hpp"
#include "wmb/json_writer.hpp"
#include "wmb/leaderboard.hpp"
#include "wmb/scoring.hpp"
#include "wmb/tasks.hpp"

using namespace wmb;
namespace fs = std::filesystem;

TEST_CASE("config parsing")
{
    const auto cfg = parse_config(
        "# comment\n[visual]\nlambda = 4\nk=20 ; trailing\nbreaker_latching = false\n"
        "memory_weight_mode = both\npercentile_rule = linear\nhandedness = negate_x\nmin_len = 40\n");
    CHECK(cfg.visual.lambda == 4.0);
    CHECK(cfg.visual.k == 20.0);
    CHECK(cfg.trajectory.k == 20.0);
    CHECK_FALSE(cfg.visual.breaker_latching);
    CHECK(cfg.memory_weights == WeightSelection::Both);
    CHECK(cfg.percentile_rule == PercentileRule::Linear);
    CHECK(cfg.handedness == HandednessPolicy::NegateX);
    CHECK(cfg.filter.min_len == 40);

    CHECK_THROWS_AS(parse_config("no_such_key = 1\n"), UsageError);
    CHECK_THROWS_AS(parse_config("lambda = abc\n"), UsageError);
    CHECK_THROWS_AS(parse_config("lambda\n"), UsageError);
    CHECK_THROWS_AS(parse_config("alpha = 0.2\n"), UsageError);  // beta must exceed alpha
    CHECK_THROWS_AS(parse_config("density_tau = 2\n"), UsageError);
}

TEST_CASE("config resolution prefers the explicit path over the environment")
{
    const auto dir = fs::temp_directory_path() / "wmb_config_test";
    fs::create_directories(dir);
    std::ofstream(dir / "a.cfg") << "lambda = 3\n";
    std::ofstream(dir / "b.cfg") << "lambda = 7\n";
    ::setenv("IWORLD_CONFIG", (dir / "b.cfg").c_str(), 1);
    CHECK(resolve_config(std::nullopt).visual.lambda == 7.0);
    CHECK(resolve_config((dir / "a.cfg").string()).visual.lambda == 3.0);
    ::unsetenv("IWORLD_CONFIG");
    CHECK(resolve_config(std::nullopt).visual.lambda == kDefaultLambda);
    CHECK_THROWS_AS(load_config(dir / "missing.cfg"), UsageError);
    fs::remove_all(dir);
}

TEST_CASE("task types and generation")
{
    for (auto t : {TaskType::ActionD1, TaskType::ActionD2, TaskType::ActionD3, TaskType::ActionD4, TaskType::Memory,
                   TaskType::CameraFollowing}) {
        CHECK(parse_task_type(to_string(t)) == t);
    }
    CHECK_THROWS_AS(parse_task_type("action_d9"), UsageError);

    // The keyboard table marks every difficulty-4 action invalid.
    CHECK(action_candidates(4).empty());
    CHECK(action_pool(4).size() == 16);
    for (int d = 1; d <= 3; ++d) {
        const auto c = action_candidates(d);
        CHECK_FALSE(c.empty());
        CHECK(action_pool(d) == c);
        for (const auto& a : c) {
            CHECK(difficulty(a.t_id, a.r_id) == d);
            const auto& sub = keyboard_subset();
            const auto it = std::find_if(sub.begin(), sub.end(), [&](const KeyboardAction& k) {
                return k.action.t_id == a.t_id && k.action.r_id == a.r_id;
            });
            REQUIRE(it != sub.end());
            CHECK(it->action.valid == 1);
        }
    }

    TaskRequest req;
    req.type = TaskType::ActionD2;
    req.count = 20;
    req.seed = 99;
    const auto a = generate_tasks(req);
    const auto b = generate_tasks(req);
    REQUIRE(a.size() == 20);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(to_json(a[i]) == to_json(b[i]));
        CHECK_NOTHROW(validate(a[i]));
        CHECK(task_from_json(to_json(a[i])).action == a[i].action);
    }
    req.seed = 100;
    CHECK(to_json(generate_tasks(req)[0]) != to_json(a[0]));

    req.type = TaskType::ActionD4;
    for (const auto& t : generate_tasks(req)) CHECK(difficulty(t.action->t_id, t.action->r_id) == 4);

    req.type = TaskType::Memory;
    req.exhaustive = true;
    req.count = 12;
    const auto mem = generate_tasks(req);
    CHECK(*mem[0].memory_pair == 1);
    CHECK(*mem[10].memory_pair == 1);
    CHECK(*mem[0].memory_split == 40);

    req.type = TaskType::CameraFollowing;
    CHECK(*generate_tasks(req)[3].command_poses == "camera_path_0004.txt");
    CHECK(generate_tasks(req)[0].source_frame == "source_0001.png");
    req.count = 0;
    CHECK_THROWS_AS(generate_tasks(req), UsageError);

    TaskSpec bad;
    bad.type = TaskType::ActionD3;
    bad.action = ActionId{1, 0};
    CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("fixed-precision json writer")
{
    nlohmann::ordered_json j;
    j["b"] = 0.5;
    j["a"] = 3;
    j["z"] = -0.0000001;
    j["list"] = {1.25, "x"};
    const std::string out = write_fixed_json(j, 4);
    CHECK(out == "{\n  \"b\": 0.5000,\n  \"a\": 3,\n  \"z\": 0.0000,\n  \"list\": [\n    1.2500,\n    \"x\"\n  ]\n}\n");
    CHECK(format_fixed(-0.0, 2) == "0.00");
    CHECK(format_fixed(2.0 / 3, 6) == "0.666667");
}

TEST_CASE("leaderboard averages, ranks and emits")
{
    std::map<std::string, std::vector<MetricReport>> reports;
    for (const auto& row : fixtures::kPublishedLeaderboard) {
        MetricReport r;
        for (std::size_t m = 0; m < 8; ++m) r.scores[std::string(kLeaderboardMetrics[m])] = row.means[m];
        reports[std::string(row.model)].push_back(r);
    }
    const auto rows = aggregate(reports);
    REQUIRE(rows.size() == 14);
    std::set<int> ranks;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ranks.insert(rows[i].rank);
        CHECK(rows[i].rank == int(i) + 1);
        if (i > 0) CHECK(rows[i - 1].avg >= rows[i].avg);
        CHECK(rows[i].avg == doctest::Approx(std::accumulate(rows[i].means.begin(), rows[i].means.end(), 0.0) / 8));
    }
    CHECK(ranks.size() == 14);
    CHECK(rows.front().model == "HY-World 1.5");

    const std::string csv = emit_report(rows, "csv");
    CHECK(csv.rfind("Model,IQ,BC,CTC,SR,MS,TA,MSym,TAl,Avg\n", 0) == 0);
    CHECK(csv.find("HY-World 1.5,0.6675,0.8051,0.7819,0.6634,0.9921,0.7472,0.8481,0.6776,0.7729") !=
          std::string::npos);
    const auto j = nlohmann::json::parse(emit_report(rows, "json"));
    CHECK(j["leaderboard"].size() == 14);
    CHECK(j["leaderboard"][0]["rank"] == 1);
    CHECK_THROWS_AS(emit_report(rows, "xml"), UsageError);
    CHECK_THROWS_AS(emit_report(rows, ""), UsageError);

    reports["broken"].push_back(MetricReport{});
    CHECK_THROWS_AS(aggregate(reports), Error);
}

TEST_CASE("ties are broken by model name")
{
    MetricReport r;
    for (auto m : kLeaderboardMetrics) r.scores[std::string(m)] = 0.5;
    const auto rows = aggregate({{"zeta", {r}}, {"alpha", {r}}});
    CHECK(rows[0].model == "alpha");
    CHECK(rows[1].rank == 2);
}

TEST_CASE("scoring a bundle produces every applicable metric")
{
    const auto dir = fs::temp_directory_path() / "wmb_harness_bundle";
    fs::remove_all(dir);
    const auto paths = bundle::write_bundle(dir);
    std::vector<RunManifest> manifests;
    for (const auto& p : paths) manifests.push_back(load_manifest(p));
    const BenchConfig cfg;
    const auto results = run_batch(manifests, cfg, default_providers(cfg), 2);
    REQUIRE(results.size() == paths.size());
    for (const auto& r : results) {
        INFO(r.video_id << ": " << r.error);
        REQUIRE(r.report);
        for (const auto& [name, v] : r.report->scores) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        const auto& s = r.report->scores;
        CHECK(s.count("image_quality"));
        CHECK(s.count("motion_smoothness"));
        if (r.task.type == TaskType::Memory) {
            CHECK(s.count("memory_symmetry"));
            CHECK(s.count("trajectory_alignment"));
            CHECK(s.count("trajectory_accuracy"));
        } else if (r.task.type == TaskType::CameraFollowing) {
            CHECK(s.count("trajectory_tolerance"));
            CHECK_FALSE(s.count("trajectory_accuracy"));
        } else {
            CHECK(s.count("trajectory_accuracy"));
            CHECK_FALSE(s.count("memory_symmetry"));
        }
    }
    const auto grouped = group_by_model(results);
    CHECK(grouped.size() == 2);
    CHECK(aggregate(grouped).size() == 2);

    // Round trip through the report JSON.
    const auto back = run_result_from_json(to_json(results[0]));
    CHECK(back.video_id == results[0].video_id);
    CHECK(back.report->scores.size() == results[0].report->scores.size());
    fs::remove_all(dir);
}

TEST_CASE("missing poses are reported as absent, missing video as failure")
{
    const auto dir = fs::temp_directory_path() / "wmb_harness_missing";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::vector<Frame> frames(5, testgen::gradient_frame(16, 16, 0));
    write_packed_raw(dir / "v.iwfr", frames);
    nlohmann::json m = {{"video", "v.iwfr"}, {"model", "m"}, {"task", {{"task_type", "action_d1"},
                                                                       {"action", {{"t_id", 1}, {"r_id", 0}}}}}};
    const BenchConfig cfg;
    const auto ok = score_manifest(parse_manifest(m, dir), cfg, default_providers(cfg));
    REQUIRE(ok.report);
    CHECK(ok.report->absent == std::vector<std::string>{"trajectory_accuracy"});
    CHECK(ok.video_id == "v");

    m["video"] = "nope.iwfr";
    const auto failed = score_manifest(parse_manifest(m, dir), cfg, default_providers(cfg));
    CHECK_FALSE(failed.report);
    CHECK_FALSE(failed.error.empty());
    const auto j = to_json(failed);
    CHECK(j["status"] == "failed");
    CHECK_THROWS_AS(parse_manifest(nlohmann::json{{"model", "x"}}, dir), Error);
    fs::remove_all(dir);
}

TEST_CASE("sidecar scores override the providers")
{
    const auto s = parse_sidecar(R"([{"frame_index": 1, "quality": 80}, {"frame_index": 2, "noise": 3.5}])");
    CHECK(s.quality.at(1) == 80.0);
    CHECK(s.noise.at(2) == 3.5);
    CHECK_THROWS_AS(parse_sidecar(R"([{"frame_index": 0, "quality": 1}])"), Error);
    CHECK_THROWS_AS(parse_sidecar("{}"), Error);

    std::vector<Frame> frames(4, testgen::gradient_frame(16, 16, 0));
    const FrameSequence seq(frames);
    SidecarScores all;
    for (int i = 1; i <= 4; ++i) all.quality[i] = 25.0;
    TaskSpec task;
    task.type = TaskType::ActionD1;
    task.action = ActionId{1, 0};
    RunInputs in;
    in.frames = &seq;
    in.sidecar = &all;
    const BenchConfig cfg;
    const auto report = score_run(in, task, cfg, default_providers(cfg));
    CHECK(report.scores.at("image_quality") == doctest::Approx(0.25));
}

TEST_CASE("synthesized memory commands must match the run length")
{
    TaskSpec task;
    task.type = TaskType::Memory;
    task.memory_pair = 3;
    task.memory_split = 5;
    const BenchConfig cfg;
    CHECK(synthesize_command(task, 11, cfg)->size() == 11);
    CHECK_THROWS_AS(synthesize_command(task, 12, cfg), Error);
    task.type = TaskType::CameraFollowing;
    task.memory_pair.reset();
    task.memory_split.reset();
    task.command_poses = "x.txt";
    CHECK_FALSE(synthesize_command(task, 12, cfg));
}
