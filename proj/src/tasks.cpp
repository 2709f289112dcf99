#include "wmb/tasks.hpp"

#include <array>
#include <cstdio>
#include <random>

#include "wmb/config.hpp"

namespace wmb {
namespace {

constexpr std::array<std::string_view, 6> kTypeNames = {"action_d1", "action_d2", "action_d3",
                                                        "action_d4", "memory",    "camera_following"};

std::string numbered(const char* stem, std::size_t i, const char* ext)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%04zu%s", stem, i + 1, ext);
    return buf;
}

}  // namespace

TaskType parse_task_type(std::string_view name)
{
    for (std::size_t i = 0; i < kTypeNames.size(); ++i) {
        if (kTypeNames[i] == name) {
            return static_cast<TaskType>(i);
        }
    }
    throw UsageError("unknown task type '" + std::string(name) +
                     "' (expected action_d1..action_d4, memory or camera_following)");
}

std::string_view to_string(TaskType type)
{
    return kTypeNames[static_cast<std::size_t>(type)];
}

int task_difficulty(TaskType type)
{
    switch (type) {
    case TaskType::ActionD1: return 1;
    case TaskType::ActionD2: return 2;
    case TaskType::ActionD3: return 3;
    case TaskType::ActionD4: return 4;
    default: return 0;
    }
}

void validate(const TaskSpec& task)
{
    const int d = task_difficulty(task.type);
    if (d > 0) {
        if (!task.action || task.memory_pair || task.command_poses) {
            throw Error(std::string(to_string(task.type)) + " task needs exactly an action");
        }
        if (difficulty(task.action->t_id, task.action->r_id) != d) {
            throw Error("action difficulty does not match task type " + std::string(to_string(task.type)));
        }
    } else if (task.type == TaskType::Memory) {
        if (!task.memory_pair || task.action || task.command_poses) {
            throw Error("memory task needs exactly a memory_pair");
        }
        memory_pair(*task.memory_pair);
        if (task.memory_split && *task.memory_split < 1) {
            throw Error("memory_split must be at least 1");
        }
    } else {
        if (!task.command_poses || task.action || task.memory_pair) {
            throw Error("camera_following task needs exactly command_poses");
        }
    }
}

std::vector<ActionId> action_candidates(int wanted)
{
    std::vector<ActionId> out;
    for (const auto& entry : keyboard_subset()) {
        if (entry.action.difficulty == wanted && entry.action.valid == 1) {
            out.push_back({entry.action.t_id, entry.action.r_id});
        }
    }
    return out;
}

std::vector<ActionId> action_pool(int wanted)
{
    std::vector<ActionId> out = action_candidates(wanted);
    if (out.empty()) {
        for (const auto& entry : keyboard_subset()) {
            if (entry.action.difficulty == wanted) {
                out.push_back({entry.action.t_id, entry.action.r_id});
            }
        }
    }
    return out;
}

std::vector<TaskSpec> generate_tasks(const TaskRequest& request)
{
    if (request.count < 1) {
        throw UsageError("task count must be at least 1");
    }
    std::mt19937_64 rng(request.seed);
    std::vector<TaskSpec> tasks;
    tasks.reserve(static_cast<std::size_t>(request.count));

    const int d = task_difficulty(request.type);
    std::vector<ActionId> actions;
    if (d > 0) {
        actions = action_pool(d);
        if (actions.empty()) {
            throw Error("no actions of difficulty " + std::to_string(d));
        }
    }

    for (std::size_t i = 0; i < static_cast<std::size_t>(request.count); ++i) {
        TaskSpec t;
        t.type = request.type;
        t.source_frame = numbered("source", i, ".png");
        if (d > 0) {
            t.action = request.exhaustive ? actions[i % actions.size()] : actions[rng() % actions.size()];
        } else if (request.type == TaskType::Memory) {
            t.memory_pair = request.exhaustive ? static_cast<int>(i % kMemoryPairCount) + 1
                                               : static_cast<int>(rng() % kMemoryPairCount) + 1;
            t.memory_split = request.memory_split;
        } else {
            t.command_poses = numbered("camera_path", i, ".txt");
        }
        t.seed = rng();
        tasks.push_back(std::move(t));
    }
    return tasks;
}

nlohmann::ordered_json to_json(const TaskSpec& task)
{
    nlohmann::ordered_json j;
    j["task_type"] = std::string(to_string(task.type));
    if (task.action) {
        j["action"] = {{"t_id", task.action->t_id}, {"r_id", task.action->r_id}};
    }
    if (task.memory_pair) {
        j["memory_pair"] = *task.memory_pair;
    }
    if (task.memory_split) {
        j["memory_split"] = *task.memory_split;
    }
    if (task.command_poses) {
        j["command_poses"] = *task.command_poses;
    }
    j["source_frame"] = task.source_frame;
    j["seed"] = task.seed;
    return j;
}

TaskSpec task_from_json(const nlohmann::json& j)
{
    try {
        TaskSpec t;
        t.type = parse_task_type(j.at("task_type").get<std::string>());
        if (j.contains("action")) {
            t.action = ActionId{j["action"].at("t_id").get<int>(), j["action"].at("r_id").get<int>()};
        }
        if (j.contains("memory_pair")) {
            t.memory_pair = j["memory_pair"].get<int>();
        }
        if (j.contains("memory_split")) {
            t.memory_split = j["memory_split"].get<int>();
        }
        if (j.contains("command_poses")) {
            t.command_poses = j["command_poses"].get<std::string>();
        }
        t.source_frame = j.value("source_frame", std::string());
        t.seed = j.value("seed", std::uint64_t{0});
        validate(t);
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed task: ") + e.what());
    }
}

}  // namespace wmb
