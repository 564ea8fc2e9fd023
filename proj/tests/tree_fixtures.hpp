#pragma once

#include "support.hpp"

namespace heartml::test {

// Three 8-row nominal fixtures (features f0..f2, balanced binary class) with hand-computed
// gains and gain ratios; `root` is the attribute the gain-ratio rule picks.
struct SplitFixture {
    const char* name;
    Dataset data;
    double gain[3];
    double ratio[3];
    std::size_t root;
};

inline std::vector<SplitFixture> split_fixtures() {
    return {
        // f0 separates all but one row per side: gain 1 - H(1,3) = 0.548795.
        {"one dominant attribute",
         nominal_table({2, 3, 2}, {{0, 0, 0, 0}, {0, 1, 1, 0}, {0, 2, 0, 0}, {0, 0, 1, 1},
                                   {1, 1, 0, 1}, {1, 2, 1, 1}, {1, 0, 0, 1}, {1, 1, 1, 1}}),
         {0.548795, 0.015712, 0.048795},
         {0.548795, 0.010064, 0.048795},
         0},
        // f1 has three branches (3/3/2 rows): gain 0.655639, split info 1.561278.
        {"three-way split wins",
         nominal_table({2, 3, 2}, {{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 1, 1, 1},
                                   {1, 2, 0, 1}, {1, 2, 1, 1}, {0, 1, 1, 1}, {1, 0, 0, 0}}),
         {0.188722, 0.655639, 0.188722},
         {0.188722, 0.419937, 0.188722},
         1},
        // f0 isolates a single row: best ratio (0.253742) but gain 0.137925 is below the mean
        // gain 0.177027, so f2 (gain 0.344361, ratio 0.229574) is chosen.
        {"mean-gain guard",
         nominal_table({2, 2, 4}, {{0, 1, 1, 0}, {0, 1, 3, 0}, {0, 0, 2, 0}, {1, 0, 3, 0},
                                   {0, 1, 1, 1}, {0, 0, 2, 1}, {0, 0, 1, 1}, {0, 0, 1, 1}}),
         {0.137925, 0.048795, 0.344361},
         {0.253742, 0.051124, 0.229574},
         2},
    };
}

}  // namespace heartml::test
