#pragma once

// Published per-model metric means and averages for fourteen models, in the
// order they were printed.

#include <array>
#include <string_view>

namespace fixtures {

struct LeaderboardEntry {
    std::string_view model;
    std::array<double, 8> means;  // IQ BC CTC SR MS TA MSym TAl
    double avg;
};

inline constexpr std::array<LeaderboardEntry, 14> kPublishedLeaderboard = {{
    {"HY-World 1.5", {0.6675, 0.8051, 0.7819, 0.6634, 0.9921, 0.7472, 0.8481, 0.6776}, 0.7729},
    {"HunyuanVideo-1.5", {0.7128, 0.7027, 0.7477, 0.5545, 0.9908, 0.6844, 0.6336, 0.6449}, 0.7089},
    {"videox-fun-Wan", {0.6410, 0.5972, 0.5473, 0.5998, 0.9858, 0.7172, 0.9009, 0.6876}, 0.7096},
    {"NVIDIA Cosmos", {0.6778, 0.6952, 0.7170, 0.4363, 0.9907, 0.4955, 0.3738, 0.6419}, 0.6285},
    {"YUME 1.5", {0.6232, 0.3810, 0.4165, 0.4023, 0.9765, 0.7113, 0.5276, 0.5988}, 0.5796},
    {"RealCam-I2V", {0.6227, 0.4130, 0.5547, 0.6269, 0.9860, 0.5630, 0.7948, 0.6668}, 0.6535},
    {"CogVideoX-I2V", {0.6521, 0.8988, 0.8129, 0.7951, 0.9938, 0.5950, 0.6010, 0.4084}, 0.7196},
    {"CamI2V", {0.5284, 0.4343, 0.3568, 0.4297, 0.9861, 0.6314, 0.3631, 0.6038}, 0.5417},
    {"AC3D", {0.4573, 0.7307, 0.6524, 0.5332, 0.9919, 0.5785, 0.9068, 0.6250}, 0.6845},
    {"Matrix-game 2.0", {0.4851, 0.2963, 0.2937, 0.4149, 0.9848, 0.7008, 0.3311, 0.6362}, 0.5179},
    {"CameraCtrl", {0.4473, 0.3717, 0.2511, 0.4545, 0.9796, 0.6778, 0.4279, 0.6097}, 0.5274},
    {"MotionCtrl", {0.4562, 0.3980, 0.2012, 0.4294, 0.9735, 0.6730, 0.3098, 0.5932}, 0.5043},
    {"WAN 2.2", {0.5545, 0.3886, 0.3411, 0.3428, 0.9557, 0.6514, 0.4480, 0.5703}, 0.5315},
    {"ASTRA", {0.5335, 0.5091, 0.4338, 0.5488, 0.9799, 0.6115, 0.4323, 0.5518}, 0.5751},
}};

}  // namespace fixtures
