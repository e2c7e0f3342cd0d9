// Copyright 2026 The qa3c authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <array>
#include <cstdint>

#include "qa3c/env/env.hpp"

namespace qa3c {

inline constexpr int kCrossingSize = 9;
inline constexpr int kCrossingCells = kCrossingSize * kCrossingSize;

enum class Cell : std::uint8_t { empty = 0, wall, goal };
enum class Heading : int { east = 0, south = 1, west = 2, north = 3 };

using CrossingGrid = std::array<Cell, kCrossingCells>;

/// 9x9 gridworld with N full-span interior walls, each pierced by a single
/// gap. The agent starts at (1,1) facing east; the goal sits at (7,7).
/// Observations are the 7x7 window in front of the agent, 3 channels per
/// cell. Actions: turn left, turn right, forward, and three declared no-ops.
class SimpleCrossing final : public Env {
  public:
    explicit SimpleCrossing(int n_crossings, int max_steps = 0);

    const EnvSpec &spec() const override { return spec_; }
    std::vector<double> reset(Rng &rng) override;
    StepResult step(int action) override;

    Cell cell(int x, int y) const {
        return grid_[static_cast<std::size_t>(y * kCrossingSize + x)];
    }
    const CrossingGrid &grid() const { return grid_; }
    std::pair<int, int> agent_pos() const { return {agent_x_, agent_y_}; }
    Heading heading() const { return heading_; }
    int steps_taken() const { return steps_; }
    int n_crossings() const { return n_crossings_; }

    /// 147-vector view: agent at the bottom-center of a 7x7 window whose
    /// "up" is the facing direction; out-of-window cells encode as 0.
    std::vector<double> observe() const;

    static bool bfs_solvable(const CrossingGrid &grid);

  private:
    void generate(Rng &rng);

    EnvSpec spec_;
    CrossingGrid grid_{};
    int agent_x_ = 1;
    int agent_y_ = 1;
    Heading heading_ = Heading::east;
    int steps_ = 0;
    bool done_ = true;
    int n_crossings_ = 1;
};

} // namespace qa3c
