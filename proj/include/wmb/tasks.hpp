#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wmb/actions.hpp"

namespace wmb {

enum class TaskType { ActionD1, ActionD2, ActionD3, ActionD4, Memory, CameraFollowing };

TaskType parse_task_type(std::string_view name);
std::string_view to_string(TaskType type);
/// Difficulty class of an action task, 0 for the other types.
int task_difficulty(TaskType type);

struct TaskSpec {
    TaskType type = TaskType::ActionD1;
    std::optional<ActionId> action;
    std::optional<int> memory_pair;
    std::optional<int> memory_split;  ///< steps per leg of a memory loop
    std::optional<std::string> command_poses;
    std::string source_frame;
    std::uint64_t seed = 0;
};

/// Throws if the fields present do not match the task type.
void validate(const TaskSpec& task);

struct TaskRequest {
    TaskType type = TaskType::ActionD1;
    int count = 1;
    std::uint64_t seed = 0;
    /// Enumerate candidates in table order (cycling when count exceeds them)
    /// instead of sampling.
    bool exhaustive = false;
    int memory_split = 40;
};

/// Valid keyboard-table actions of the requested difficulty.
std::vector<ActionId> action_candidates(int difficulty);

/// Actions sampled for a difficulty class: the valid candidates, or every
/// keyboard-table action of that difficulty when none is marked valid.
std::vector<ActionId> action_pool(int difficulty);

std::vector<TaskSpec> generate_tasks(const TaskRequest& request);

nlohmann::ordered_json to_json(const TaskSpec& task);
TaskSpec task_from_json(const nlohmann::json& j);

}  // namespace wmb
