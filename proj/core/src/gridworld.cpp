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

#include "dqtrl/gridworld.hpp"

#include <string>

#include "dqtrl/errors.hpp"

namespace dqtrl {

namespace {

Position direction_vector(Direction dir) {
    switch (dir) {
    case Direction::kEast:
        return {1, 0};
    case Direction::kSouth:
        return {0, 1};
    case Direction::kWest:
        return {-1, 0};
    case Direction::kNorth:
        return {0, -1};
    }
    return {0, 0};
}

bool inside(Position p) {
    return p.x >= 0 && p.x < grid::kSize && p.y >= 0 && p.y < grid::kSize;
}

bool is_wall(Position p) {
    return p.x == 0 || p.y == 0 || p.x == grid::kSize - 1 || p.y == grid::kSize - 1;
}

Direction rotate(Direction dir, int quarter_turns) {
    return static_cast<Direction>(((static_cast<int>(dir) + quarter_turns) % 4 + 4) % 4);
}

} // namespace

Position view_to_world(Position pos, Direction dir, int vx, int vy) {
    const Position f = direction_vector(dir);
    const Position r{-f.y, f.x};
    const int ahead = (grid::kView - 1) - vy;
    const int lateral = vx - grid::kView / 2;
    return {pos.x + f.x * ahead + r.x * lateral, pos.y + f.y * ahead + r.y * lateral};
}

Observation encode_obs(const EnvState& state) {
    Observation obs{};
    for (int vx = 0; vx < grid::kView; ++vx) {
        for (int vy = 0; vy < grid::kView; ++vy) {
            const Position w = view_to_world(state.agent_pos, state.agent_dir, vx, vy);
            int object = grid::kObjectUnseen;
            int color = grid::kColorNone;
            if (inside(w)) {
                if (is_wall(w)) {
                    object = grid::kObjectWall;
                    color = grid::kColorGrey;
                } else if (w == state.goal_pos) {
                    object = grid::kObjectGoal;
                    color = grid::kColorGreen;
                } else {
                    object = grid::kObjectEmpty;
                }
            }
            const std::size_t base = static_cast<std::size_t>(vx * grid::kView + vy) * 3;
            obs[base] = object / grid::kObjectMax;
            obs[base + 1] = color / grid::kColorMax;
            obs[base + 2] = 0.0 / grid::kStateMax;
        }
    }
    return obs;
}

ResetResult reset(std::uint64_t /*seed*/) {
    EnvState state;
    return {state, encode_obs(state)};
}

Action action_from_index(int index) {
    if (index < 0 || index >= grid::kNumActions) {
        throw IndexError("action index " + std::to_string(index) + " out of range");
    }
    return static_cast<Action>(index);
}

StepResult step(const EnvState& state, Action action) {
    if (state.done) {
        throw ContractViolation("step called on a finished episode");
    }
    StepResult result{state, {}, 0.0, false};
    EnvState& next = result.state;
    ++next.step_count;

    switch (action) {
    case Action::kLeft:
        next.agent_dir = rotate(next.agent_dir, -1);
        break;
    case Action::kRight:
        next.agent_dir = rotate(next.agent_dir, 1);
        break;
    case Action::kForward: {
        const Position f = direction_vector(next.agent_dir);
        const Position target{next.agent_pos.x + f.x, next.agent_pos.y + f.y};
        if (!is_wall(target)) {
            next.agent_pos = target;
        }
        if (next.agent_pos == next.goal_pos) {
            next.done = true;
            result.reward = 1.0 - 0.9 * (static_cast<double>(next.step_count) / grid::kMaxSteps);
        }
        break;
    }
    default:
        throw IndexError("unknown action");
    }

    if (next.step_count >= grid::kMaxSteps) {
        next.done = true;
    }
    result.done = next.done;
    result.obs = encode_obs(next);
    return result;
}

} // namespace dqtrl
