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
#include "qa3c/env/crossing.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "qa3c/errors.hpp"

namespace qa3c {

namespace {

constexpr int kSize = kCrossingSize;
constexpr int kStartX = 1, kStartY = 1;
constexpr int kGoalX = 7, kGoalY = 7;

// Heading unit vectors: east, south, west, north in (x, y) with y downward.
constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

Cell &cell_at(CrossingGrid &g, int x, int y) {
    return g[static_cast<std::size_t>(y * kSize + x)];
}

Cell cell_at(const CrossingGrid &g, int x, int y) {
    return g[static_cast<std::size_t>(y * kSize + x)];
}

} // namespace

SimpleCrossing::SimpleCrossing(int n_crossings, int max_steps)
    : n_crossings_(n_crossings) {
    if (n_crossings < 1 || n_crossings > 3) {
        throw ConfigError(
            "crossing: wall count must be 1..3 (even coordinates 2, 4, 6 are "
            "the only places a wall can go), got " +
            std::to_string(n_crossings));
    }
    const int steps = max_steps > 0 ? max_steps : 4 * kSize * kSize;
    spec_ = EnvSpec{"crossing-s9n" + std::to_string(n_crossings),
                    7 * 7 * 3, 6, steps, std::nullopt};
}

bool SimpleCrossing::bfs_solvable(const CrossingGrid &grid) {
    std::array<bool, kCrossingCells> seen{};
    std::deque<std::pair<int, int>> queue;
    queue.emplace_back(kStartX, kStartY);
    seen[kStartY * kSize + kStartX] = true;
    while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        if (x == kGoalX && y == kGoalY) {
            return true;
        }
        for (int d = 0; d < 4; ++d) {
            const int nx = x + kDx[d];
            const int ny = y + kDy[d];
            if (nx < 0 || ny < 0 || nx >= kSize || ny >= kSize) {
                continue;
            }
            if (seen[static_cast<std::size_t>(ny * kSize + nx)] ||
                cell_at(grid, nx, ny) == Cell::wall) {
                continue;
            }
            seen[static_cast<std::size_t>(ny * kSize + nx)] = true;
            queue.emplace_back(nx, ny);
        }
    }
    return false;
}

void SimpleCrossing::generate(Rng &rng) {
    // Openings are drawn independently at random odd coordinates; layouts
    // that happen to close off the goal are redrawn until BFS passes.
    for (int attempt = 0; attempt < 1000; ++attempt) {
        grid_.fill(Cell::empty);
        for (int i = 0; i < kSize; ++i) {
            cell_at(grid_, i, 0) = Cell::wall;
            cell_at(grid_, i, kSize - 1) = Cell::wall;
            cell_at(grid_, 0, i) = Cell::wall;
            cell_at(grid_, kSize - 1, i) = Cell::wall;
        }

        std::array<int, 3> coords = {2, 4, 6};
        for (int i = 2; i > 0; --i) {
            const int j = static_cast<int>(
                rng.below(static_cast<std::uint64_t>(i + 1)));
            std::swap(coords[static_cast<std::size_t>(i)],
                      coords[static_cast<std::size_t>(j)]);
        }

        for (int k = 0; k < n_crossings_; ++k) {
            const int c = coords[static_cast<std::size_t>(k)];
            const int opening = 1 + 2 * static_cast<int>(rng.below(4));
            const bool vertical = (k % 2 == 0);
            for (int i = 1; i < kSize - 1; ++i) {
                if (vertical) {
                    cell_at(grid_, c, i) = Cell::wall;
                } else {
                    cell_at(grid_, i, c) = Cell::wall;
                }
            }
            if (vertical) {
                cell_at(grid_, c, opening) = Cell::empty;
            } else {
                cell_at(grid_, opening, c) = Cell::empty;
            }
        }

        cell_at(grid_, kGoalX, kGoalY) = Cell::goal;
        if (bfs_solvable(grid_)) {
            return;
        }
    }
    throw ConfigError("crossing: could not generate a solvable grid");
}

std::vector<double> SimpleCrossing::reset(Rng &rng) {
    generate(rng);
    agent_x_ = kStartX;
    agent_y_ = kStartY;
    heading_ = Heading::east;
    steps_ = 0;
    done_ = false;
    return observe();
}

std::vector<double> SimpleCrossing::observe() const {
    const int fx = kDx[static_cast<int>(heading_)];
    const int fy = kDy[static_cast<int>(heading_)];
    // Window right-hand axis: the facing vector rotated a quarter turn
    // clockwise on screen, i.e. (fx, fy) -> (-fy, fx).
    const int rx = -fy;
    const int ry = fx;

    std::vector<double> out(7 * 7 * 3, 0.0);
    for (int wy = 0; wy < 7; ++wy) {
        for (int wx = 0; wx < 7; ++wx) {
            const int forward = 6 - wy; // agent sits at the bottom row
            const int lateral = wx - 3; // centered on the agent column
            const int gx = agent_x_ + forward * fx + lateral * rx;
            const int gy = agent_y_ + forward * fy + lateral * ry;

            double code = 0.0; // out of bounds reads as "unseen"
            if (gx >= 0 && gy >= 0 && gx < kSize && gy < kSize) {
                switch (cell_at(grid_, gx, gy)) {
                case Cell::empty:
                    code = 1.0;
                    break;
                case Cell::wall:
                    code = 2.0;
                    break;
                case Cell::goal:
                    code = 3.0;
                    break;
                }
            }
            const std::size_t base =
                static_cast<std::size_t>((wy * 7 + wx) * 3);
            out[base] = code;
            // color and state channels stay 0 for every object here
        }
    }
    return out;
}

StepResult SimpleCrossing::step(int action) {
    if (done_) {
        throw UsageError("crossing: step on a finished episode");
    }
    if (action < 0 || action > 5) {
        throw UsageError("crossing: action must be in 0..5, got " +
                         std::to_string(action));
    }

    switch (action) {
    case 0:
        heading_ = static_cast<Heading>((static_cast<int>(heading_) + 3) % 4);
        break;
    case 1:
        heading_ = static_cast<Heading>((static_cast<int>(heading_) + 1) % 4);
        break;
    case 2: {
        const int nx = agent_x_ + kDx[static_cast<int>(heading_)];
        const int ny = agent_y_ + kDy[static_cast<int>(heading_)];
        if (cell_at(grid_, nx, ny) != Cell::wall) {
            agent_x_ = nx;
            agent_y_ = ny;
        }
        break;
    }
    default:
        break; // pick up, drop, toggle: declared no-ops
    }
    ++steps_;

    StepResult out;
    out.obs = observe();
    out.terminal = cell_at(grid_, agent_x_, agent_y_) == Cell::goal;
    out.truncated = steps_ >= spec_.max_steps;
    out.reward =
        out.terminal
            ? 1.0 - 0.9 * (static_cast<double>(steps_) /
                           static_cast<double>(spec_.max_steps))
            : 0.0;
    done_ = out.terminal || out.truncated;
    return out;
}

} // namespace qa3c
