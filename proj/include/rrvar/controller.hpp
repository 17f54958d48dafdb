#pragma once

#include <algorithm>
#include <cmath>
#include <deque>

#include "rrvar/error.hpp"

namespace rrvar {

inline constexpr int kMinDegree = 3;
inline constexpr int kMaxDegree = 9;
inline constexpr int kDissentWindow = 16;
inline constexpr double kEwmaAlpha = 0.25;

// Maps a smoothed fault estimate to the replication degree that masks it:
// 2*ceil(f)+1 replicas tolerate ceil(f) corrupt ones, clamped to [3, 9].
inline int ideal_from_fhat(double f_hat) {
    const int faults = static_cast<int>(std::ceil(f_hat));
    const int degree = 2 * faults + 1;
    return std::clamp(degree, kMinDegree, kMaxDegree);
}

// Feedback state for one redundancy controller. window holds the most
// recent dissent observations (at most kDissentWindow of them).
struct RedundanceState {
    std::deque<int> window;
    double f_hat = 0.0;
    int ideal_degree = kMinDegree;
};

// One controller update for a dissent observation. Returns true when the
// ideal degree changed, so callers can emit an adaptation event.
inline bool controller_step(RedundanceState& state, int dissent) {
    if (dissent < 0) throw Error("negative dissent observation");
    state.window.push_back(dissent);
    while (static_cast<int>(state.window.size()) > kDissentWindow)
        state.window.pop_front();
    const int peak = *std::max_element(state.window.begin(), state.window.end());
    state.f_hat = (1.0 - kEwmaAlpha) * state.f_hat + kEwmaAlpha * peak;
    const int next = ideal_from_fhat(state.f_hat);
    const bool changed = next != state.ideal_degree;
    state.ideal_degree = next;
    return changed;
}

}  // namespace rrvar
