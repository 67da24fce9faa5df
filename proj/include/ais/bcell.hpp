#pragma once

#include <cstddef>
#include <vector>

namespace ais {

enum class CellState { active, memory, eliminated };

// Antibody: a synthetic point in feature space that detects nearby
// antigens (data points).
struct BCell {
    std::vector<double> vector;
    std::size_t recognized_count = 0;
    CellState state = CellState::active;
    std::size_t birth_generation = 0;
};

}  // namespace ais
