#include "wmb/actions.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

#include "action_tables.hpp"

namespace wmb {
namespace {

struct Direction {
    const char* name;
    int a;
    int b;
    int c;
};

// x right, y up, z forward.
constexpr std::array<Direction, kActionIdCount> kTranslations = {{
    {"Stationary", 0, 0, 0},
    {"Forward", 0, 0, 1},
    {"Backward", 0, 0, -1},
    {"Left", -1, 0, 0},
    {"Right", 1, 0, 0},
    {"Forward+Left", -1, 0, 1},
    {"Forward+Right", 1, 0, 1},
    {"Backward+Left", -1, 0, -1},
    {"Backward+Right", 1, 0, -1},
    {"Upward", 0, 1, 0},
    {"Downward", 0, -1, 0},
    {"Forward+Upward", 0, 1, 1},
    {"Forward+Downward", 0, -1, 1},
    {"Backward+Upward", 0, 1, -1},
    {"Backward+Downward", 0, -1, -1},
    {"Left+Upward", -1, 1, 0},
    {"Left+Downward", -1, -1, 0},
    {"Right+Upward", 1, 1, 0},
    {"Right+Downward", 1, -1, 0},
    {"Forward+Left+Upward", -1, 1, 1},
    {"Forward+Right+Upward", 1, 1, 1},
    {"Forward+Left+Downward", -1, -1, 1},
    {"Forward+Right+Downward", 1, -1, 1},
    {"Backward+Left+Upward", -1, 1, -1},
    {"Backward+Right+Upward", 1, 1, -1},
    {"Backward+Left+Downward", -1, -1, -1},
    {"Backward+Right+Downward", 1, -1, -1},
}};

// pitch (up +), yaw (right +), roll (clockwise +). Names are kept as published;
// ids 24 and 25 carry the axes the id pattern implies.
constexpr std::array<Direction, kActionIdCount> kRotations = {{
    {"Stationary", 0, 0, 0},
    {"Camera Up", 1, 0, 0},
    {"Camera Down", -1, 0, 0},
    {"Camera Right", 0, 1, 0},
    {"Camera Left", 0, -1, 0},
    {"Camera Up+Right", 1, 1, 0},
    {"Camera Up+Left", 1, -1, 0},
    {"Camera Down+Right", -1, 1, 0},
    {"Camera Down+Left", -1, -1, 0},
    {"Clockwise", 0, 0, 1},
    {"Counterclockwise", 0, 0, -1},
    {"Camera Up+Clockwise", 1, 0, 1},
    {"Camera Up+Counterclockwise", 1, 0, -1},
    {"Camera Down+Clockwise", -1, 0, 1},
    {"Camera Down+Counterclockwise", -1, 0, -1},
    {"Camera Left+Clockwise", 0, -1, 1},
    {"Camera Left+Counterclockwise", 0, -1, -1},
    {"Camera Right+Clockwise", 0, 1, 1},
    {"Camera Right+Counterclockwise", 0, 1, -1},
    {"Camera Up+Right+Clockwise", 1, 1, 1},
    {"Camera Up+Right+Counterclockwise", 1, 1, -1},
    {"Camera Up+Left+Clockwise", 1, -1, 1},
    {"Camera Up+Left+Counterclockwise", 1, -1, -1},
    {"Camera Down+Right+Clockwise", -1, 1, 1},
    {"Camera Down+Left+Counterclockwise", -1, 1, -1},
    {"Camera Down+Right+Clockwise", -1, -1, 1},
    {"Camera Down+Left+Counterclockwise", -1, -1, -1},
}};

void check_id(int id)
{
    if (id < 0 || id >= kActionIdCount) {
        throw Error("action id " + std::to_string(id) + " out of range [0,26]");
    }
}

int nonzero(const Direction& d)
{
    return (d.a != 0) + (d.b != 0) + (d.c != 0);
}

ControlSignal from_row(const detail::TableSixRow& row)
{
    ControlSignal s;
    s.keyboard = row.keyboard;
    s.mouse = {row.mouse[0], row.mouse[1]};
    s.keys = row.keys;
    s.text = row.text;
    return s;
}

const detail::TableSixRow* find_keyboard_row(int t_id, int r_id)
{
    for (const auto& row : detail::kKeyboardTable) {
        if (row.t_id == t_id && row.r_id == r_id) {
            return &row;
        }
    }
    return nullptr;
}

std::string composed_text(int t_id, int r_id)
{
    const bool moves = t_id != 0;
    const bool turns = r_id != 0;
    std::string text;
    if (moves) {
        text = "The camera translates " + std::string(kTranslations[t_id].name) + ".";
    }
    if (turns) {
        const std::string rot = "the camera rotates " + std::string(kRotations[r_id].name) + ".";
        text += moves ? " At the same time, " + rot : "The camera rotates " + std::string(kRotations[r_id].name) + ".";
    }
    if (!moves && !turns) {
        text = "The camera remains stationary.";
    }
    return text;
}

struct MemoryRow {
    int id;
    ActionId first;
    ActionId second;
    std::array<int, 4> kb1;
    std::array<double, 2> mouse1;
    const char* dir1;
    const char* keys1;
    std::array<int, 4> kb2;
    std::array<double, 2> mouse2;
    const char* dir2;
    const char* keys2;
    const char* text;
};

constexpr const char* kSameMagnitude = " Third, ensure the magnitude of motion before and after is the same.";

const std::array<MemoryRow, kMemoryPairCount> kMemoryRows = {{
    {1, {1, 0}, {2, 0}, {1, 0, 0, 0}, {0.0, 0.0}, "Forward", "W", {0, 1, 0, 0}, {0.0, 0.0}, "Backward", "S",
     "First, The camera pushes forward (W). Second, The camera pulls back (S)."},
    {2, {2, 0}, {1, 0}, {0, 1, 0, 0}, {0.0, 0.0}, "Backward", "S", {1, 0, 0, 0}, {0.0, 0.0}, "Forward", "W",
     "First, The camera pulls back (S). Second, The camera pushes forward (W)."},
    {3, {3, 0}, {4, 0}, {0, 0, 1, 0}, {0.0, 0.0}, "Left", "A", {0, 0, 0, 1}, {0.0, 0.0}, "Right", "D",
     "First, The camera moves to the left (A). Second, The camera moves to the right (D)."},
    {4, {4, 0}, {3, 0}, {0, 0, 0, 1}, {0.0, 0.0}, "Right", "D", {0, 0, 1, 0}, {0.0, 0.0}, "Left", "A",
     "First, The camera moves to the right (D). Second, The camera moves to the left (A)."},
    {5, {0, 1}, {0, 2}, {0, 0, 0, 0}, {1.0, 0.0}, "Camera Up", "↑", {0, 0, 0, 0}, {-1.0, 0.0}, "Camera Down", "↓",
     "First, The camera tilts up (↑). Second, The camera tilts down (↓)."},
    {6, {0, 2}, {0, 1}, {0, 0, 0, 0}, {-1.0, 0.0}, "Camera Down", "↓", {0, 0, 0, 0}, {1.0, 0.0}, "Camera Up", "↑",
     "First, The camera tilts down (↓). Second, The camera tilts up (↑)."},
    {7, {0, 4}, {0, 3}, {0, 0, 0, 0}, {0.0, -1.0}, "Camera Left", "←", {0, 0, 0, 0}, {0.0, 1.0}, "Camera Right", "→",
     "First, The camera pans to the left (←). Second, The camera pans to the right (→)."},
    {8, {0, 3}, {0, 4}, {0, 0, 0, 0}, {0.0, 1.0}, "Camera Right", "→", {0, 0, 0, 0}, {0.0, -1.0}, "Camera Left", "←",
     "First, The camera pans to the right (→). Second, The camera pans to the left (←)."},
    {9, {9, 0}, {10, 0}, {0, 0, 0, 0}, {1.0, 0.0}, "Upward", "-", {0, 0, 0, 0}, {-1.0, 0.0}, "Downward", "-",
     "First, The camera tilts up (↑). Second, The camera tilts down (↓)."},
    {10, {10, 0}, {9, 0}, {0, 0, 0, 0}, {-1.0, 0.0}, "Downward", "-", {0, 0, 0, 0}, {1.0, 0.0}, "Upward", "-",
     "First, The camera tilts down (↓). Second, The camera tilts up (↑)."},
}};

ControlSignal memory_signal(const ActionId& action, const std::array<int, 4>& kb, const std::array<double, 2>& mouse,
                            const char* keys)
{
    ControlSignal s = control_signal(action.t_id, action.r_id);
    s.keyboard = kb;
    s.mouse = {mouse[0], mouse[1]};
    s.keys = keys;
    return s;
}

}  // namespace

Eigen::Vector3i translation_axes(int t_id)
{
    check_id(t_id);
    const auto& d = kTranslations[t_id];
    return {d.a, d.b, d.c};
}

Eigen::Vector3i rotation_axes(int r_id)
{
    check_id(r_id);
    const auto& d = kRotations[r_id];
    return {d.a, d.b, d.c};
}

std::string_view translation_name(int t_id)
{
    check_id(t_id);
    return kTranslations[t_id].name;
}

std::string_view rotation_name(int r_id)
{
    check_id(r_id);
    return kRotations[r_id].name;
}

int axis_count_translation(int t_id)
{
    check_id(t_id);
    return nonzero(kTranslations[t_id]);
}

int axis_count_rotation(int r_id)
{
    check_id(r_id);
    return nonzero(kRotations[r_id]);
}

int difficulty(int t_id, int r_id)
{
    return std::max(1, axis_count_translation(t_id) + axis_count_rotation(r_id));
}

const std::vector<ActionQuadruple>& full_table()
{
    static const std::vector<ActionQuadruple> table = [] {
        std::vector<ActionQuadruple> out;
        out.reserve(detail::kFullTable.size());
        for (const auto& row : detail::kFullTable) {
            out.push_back({difficulty(row.t_id, row.r_id), row.t_id, row.r_id, row.valid});
        }
        return out;
    }();
    return table;
}

const ActionQuadruple& full_table_entry(int t_id, int r_id)
{
    check_id(t_id);
    check_id(r_id);
    static const std::vector<std::size_t> index = [] {
        std::vector<std::size_t> idx(kActionIdCount * kActionIdCount);
        const auto& table = full_table();
        for (std::size_t i = 0; i < table.size(); ++i) {
            idx[table[i].t_id * kActionIdCount + table[i].r_id] = i;
        }
        return idx;
    }();
    return full_table()[index[t_id * kActionIdCount + r_id]];
}

const std::vector<KeyboardAction>& keyboard_subset()
{
    static const std::vector<KeyboardAction> subset = [] {
        std::vector<KeyboardAction> out;
        out.reserve(detail::kKeyboardTable.size());
        for (const auto& row : detail::kKeyboardTable) {
            out.push_back({{difficulty(row.t_id, row.r_id), row.t_id, row.r_id, row.valid}, from_row(row)});
        }
        return out;
    }();
    return subset;
}

bool in_keyboard_subset(int t_id, int r_id)
{
    return t_id >= 0 && t_id <= 8 && r_id >= 0 && r_id <= 8;
}

std::vector<ActionId> validity_conflicts()
{
    std::vector<ActionId> out;
    for (const auto& entry : keyboard_subset()) {
        if (full_table_entry(entry.action.t_id, entry.action.r_id).valid != entry.action.valid) {
            out.push_back({entry.action.t_id, entry.action.r_id});
        }
    }
    return out;
}

ControlSignal control_signal(int t_id, int r_id)
{
    check_id(t_id);
    check_id(r_id);
    if (const auto* row = find_keyboard_row(t_id, r_id)) {
        return from_row(*row);
    }
    const Eigen::Vector3i t = translation_axes(t_id);
    const Eigen::Vector3i r = rotation_axes(r_id);
    ControlSignal s;
    s.keyboard = {t.z() > 0, t.z() < 0, t.x() < 0, t.x() > 0};
    s.mouse = {static_cast<double>(r.x()), static_cast<double>(r.y())};
    if (r.z() != 0) {
        s.mouse.push_back(static_cast<double>(r.z()));
    }
    s.keys = "-";
    s.text = composed_text(t_id, r_id);
    s.extended = true;
    return s;
}

Description describe(int t_id, int r_id)
{
    const ControlSignal s = control_signal(t_id, r_id);
    return {s.text, s.extended};
}

const std::vector<MemoryPair>& memory_pairs()
{
    static const std::vector<MemoryPair> pairs = [] {
        std::vector<MemoryPair> out;
        for (const auto& row : kMemoryRows) {
            MemoryPair p;
            p.id = row.id;
            p.first = row.first;
            p.second = row.second;
            p.first_signal = memory_signal(row.first, row.kb1, row.mouse1, row.keys1);
            p.second_signal = memory_signal(row.second, row.kb2, row.mouse2, row.keys2);
            p.first_direction = row.dir1;
            p.second_direction = row.dir2;
            p.text = std::string(row.text) + kSameMagnitude;
            p.suspected_erratum = row.first.t_id >= 9;
            out.push_back(std::move(p));
        }
        return out;
    }();
    return pairs;
}

const MemoryPair& memory_pair(int id)
{
    if (id < 1 || id > kMemoryPairCount) {
        throw Error("memory pair id " + std::to_string(id) + " out of range [1,10]");
    }
    return memory_pairs()[static_cast<std::size_t>(id - 1)];
}

Pose action_step(int t_id, int r_id, double step_translation, double step_rotation)
{
    const Eigen::Vector3d dir = translation_axes(t_id).cast<double>();
    const Eigen::Vector3i rot = rotation_axes(r_id);
    Pose step;
    if (dir.squaredNorm() > 0.0) {
        step.translation = step_translation * dir.normalized();
    }
    const Eigen::AngleAxisd pitch(-step_rotation * rot.x(), Eigen::Vector3d::UnitX());
    const Eigen::AngleAxisd yaw(step_rotation * rot.y(), Eigen::Vector3d::UnitY());
    const Eigen::AngleAxisd roll(-step_rotation * rot.z(), Eigen::Vector3d::UnitZ());
    step.rotation = (pitch * yaw * roll).toRotationMatrix();
    return step;
}

PoseSequence to_pose_deltas(int t_id, int r_id, double step_translation, double step_rotation, int frames,
                            const Pose& start)
{
    if (frames < 2) {
        throw Error("pose deltas need at least two frames");
    }
    if (!(step_translation > 0.0) || !(step_rotation > 0.0)) {
        throw Error("step sizes must be positive");
    }
    const Pose step = action_step(t_id, r_id, step_translation, step_rotation);
    PoseSequence out;
    out.reserve(static_cast<std::size_t>(frames));
    out.push_back(start);
    for (int k = 1; k < frames; ++k) {
        out.push_back(out.back() * step);
    }
    return out;
}

PoseSequence memory_loop(const MemoryPair& pair, int steps, double step_translation, double step_rotation)
{
    if (steps < 1) {
        throw Error("memory loop needs at least one step per leg");
    }
    PoseSequence out = to_pose_deltas(pair.first.t_id, pair.first.r_id, step_translation, step_rotation, steps + 1);
    const PoseSequence back =
        to_pose_deltas(pair.second.t_id, pair.second.r_id, step_translation, step_rotation, steps + 1, out.back());
    out.insert(out.end(), back.begin() + 1, back.end());
    return out;
}

}  // namespace wmb
