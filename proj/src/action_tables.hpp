#pragma once

#include <array>

namespace wmb::detail {

struct TableFiveRow {
    int difficulty;
    int t_id;
    int r_id;
    int valid;
};

struct TableSixRow {
    int difficulty;
    int t_id;
    int r_id;
    const char* keys;
    int valid;
    std::array<int, 4> keyboard;
    std::array<double, 2> mouse;
    const char* text;
};

extern const std::array<TableFiveRow, 729> kFullTable;
extern const std::array<TableSixRow, 81> kKeyboardTable;

}  // namespace wmb::detail
