// Copyright 2026 The dqtrl Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/**
 * @file gridworld.hpp
 * @brief Empty 5x5 grid task (walled border, 3x3 interior).
 *
 * Coordinates are (x, y) with x to the east and y to the south; the
 * interior spans 1..3 on both axes. The agent starts at (1, 1) facing east
 * and the goal sits at (3, 3).
 *
 * Rewards: 1 - 0.9 * step_count / 100 on reaching the goal, 0 otherwise.
 * Episodes end on the goal or after 100 steps.
 *
 * Observation: a 7x7 egocentric window with the agent at window cell (3, 6)
 * looking towards row 0. Each cell carries (object, color, state) codes
 * using the MiniGrid integer vocabulary restricted to this task:
 *
 *   object: unseen 0, empty 1, wall 2, goal 8   (divided by 10)
 *   color:  none 0, green 1, grey 5             (divided by 5)
 *   state:  always 0                            (divided by 2)
 *
 * Cells outside the 5x5 grid are unseen. The flat index of channel c at
 * window cell (vx, vy) is (vx * 7 + vy) * 3 + c, i.e. a column-major
 * (7, 7, 3) image flattened in C order.
 */

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>

namespace dqtrl {

namespace grid {

inline constexpr int kSize = 5;
inline constexpr int kMaxSteps = 4 * kSize * kSize;
inline constexpr int kView = 7;
inline constexpr int kChannels = 3;
inline constexpr std::size_t kObsSize = kView * kView * kChannels;
inline constexpr int kNumActions = 3;

inline constexpr int kObjectUnseen = 0;
inline constexpr int kObjectEmpty = 1;
inline constexpr int kObjectWall = 2;
inline constexpr int kObjectGoal = 8;
inline constexpr int kColorNone = 0;
inline constexpr int kColorGreen = 1;
inline constexpr int kColorGrey = 5;
inline constexpr double kObjectMax = 10.0;
inline constexpr double kColorMax = 5.0;
inline constexpr double kStateMax = 2.0;

} // namespace grid

enum class Direction : int {
    kEast = 0,
    kSouth = 1,
    kWest = 2,
    kNorth = 3,
};

enum class Action : int {
    kLeft = 0,
    kRight = 1,
    kForward = 2,
};

struct Position {
    int x = 0;
    int y = 0;

    auto operator<=>(const Position&) const = default;
};

struct EnvState {
    Position agent_pos{1, 1};
    Direction agent_dir = Direction::kEast;
    Position goal_pos{3, 3};
    int step_count = 0;
    bool done = false;

    bool operator==(const EnvState&) const = default;
};

using Observation = std::array<double, grid::kObsSize>;

struct ResetResult {
    EnvState state;
    Observation obs;
};

struct StepResult {
    EnvState state;
    Observation obs;
    double reward = 0.0;
    bool done = false;
};

/// The layout is fixed; `seed` is accepted for interface symmetry only.
ResetResult reset(std::uint64_t seed = 0);

/// Throws ContractViolation when `state.done` is set.
StepResult step(const EnvState& state, Action action);

Observation encode_obs(const EnvState& state);

/// Throws IndexError for codes outside {0, 1, 2}.
Action action_from_index(int index);

/// Window cell (vx, vy) -> grid coordinates for an agent at `pos` facing `dir`.
Position view_to_world(Position pos, Direction dir, int vx, int vy);

} // namespace dqtrl
