#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "wmb/pose.hpp"

namespace wmb {

inline constexpr int kActionIdCount = 27;
inline constexpr int kMemoryPairCount = 10;

struct ActionId {
    int t_id = 0;
    int r_id = 0;
    friend bool operator==(const ActionId&, const ActionId&) = default;
};

/// Difficulty, translation id, rotation id, validity.
struct ActionQuadruple {
    int difficulty = 1;
    int t_id = 0;
    int r_id = 0;
    int valid = 0;
    friend bool operator==(const ActionQuadruple&, const ActionQuadruple&) = default;
};

/// One action rendered for keyboard/mouse driven models.
struct ControlSignal {
    std::array<int, 4> keyboard{};  ///< W, S, A, D
    std::vector<double> mouse;      ///< pitch, yaw; a third roll entry only for extended roll actions
    std::string keys;               ///< "-" when the action has no key binding
    std::string text;
    bool extended = false;          ///< composed rather than taken from the keyboard table
};

struct KeyboardAction {
    ActionQuadruple action;
    ControlSignal signal;
};

struct MemoryPair {
    int id = 0;
    ActionId first;
    ActionId second;
    ControlSignal first_signal;
    ControlSignal second_signal;
    std::string first_direction;
    std::string second_direction;
    std::string text;
    /// Translation pair whose published encoding reuses the tilt mouse values.
    bool suspected_erratum = false;
};

/// Per-axis signs of a translation id in the camera frame (x right, y up, z forward).
Eigen::Vector3i translation_axes(int t_id);
/// Per-axis signs of a rotation id as (pitch, yaw, roll); positive means up, right or clockwise.
Eigen::Vector3i rotation_axes(int r_id);

std::string_view translation_name(int t_id);
std::string_view rotation_name(int r_id);

int axis_count_translation(int t_id);
int axis_count_rotation(int r_id);

/// Sum of the component axes; complete stillness counts as 1.
int difficulty(int t_id, int r_id);

/// All 729 combinations in published order, with published validity.
const std::vector<ActionQuadruple>& full_table();
const ActionQuadruple& full_table_entry(int t_id, int r_id);

/// The 81 keyboard-operable combinations (T, R in 0..8) in published order.
const std::vector<KeyboardAction>& keyboard_subset();
bool in_keyboard_subset(int t_id, int r_id);

/// Actions whose validity differs between the full table and the keyboard table.
std::vector<ActionId> validity_conflicts();

ControlSignal control_signal(int t_id, int r_id);

struct Description {
    std::string text;
    bool extended = false;
};

Description describe(int t_id, int r_id);

const std::vector<MemoryPair>& memory_pairs();
const MemoryPair& memory_pair(int id);

/// Constant-velocity camera-to-world trajectory of `frames` poses starting at
/// `start`. Each step is composed in the body frame: C_{k+1} = C_k * step.
PoseSequence to_pose_deltas(int t_id, int r_id, double step_translation, double step_rotation, int frames,
                            const Pose& start = Pose::identity());

/// Single body-frame step for an action.
Pose action_step(int t_id, int r_id, double step_translation, double step_rotation);

/// Out-and-back camera-to-world trajectory: `steps` of the first action then
/// `steps` of the second, 2*steps+1 poses in total.
PoseSequence memory_loop(const MemoryPair& pair, int steps, double step_translation, double step_rotation);

}  // namespace wmb
