#pragma once

#include "distribution.hpp"
#include "tree.hpp"

#include <span>
#include <string>
#include <vector>

namespace affine {

struct EuiResult {
    EuInterval value;
    /// Set when the tree contained Finite leaves, whose expected-utility range
    /// was taken over the convex hull (the same interval, since EU is linear).
    bool finite_hulled = false;
};

/// Exact expected-utility interval of the tree's world, computed bottom-up with
/// the greedy weight-shifting bounds at every star.
EuiResult eui(const AffineTree& t, const UtilityFunction& f);

/// Strict interval dominance: the winner's lower bound exceeds the loser's upper.
inline bool dominates(const EuInterval& winner, const EuInterval& loser) {
    return loser.hi() < winner.lo();
}

struct PlanValue {
    std::string name;
    EuInterval value;
};

struct EliminationOutcome {
    /// Indices of surviving entries, in input order.
    std::vector<size_t> survivors;
    struct Elimination {
        size_t loser;
        size_t winner;
    };
    std::vector<Elimination> log;
};

/// Removes every entry strictly dominated by some other entry; the log lists all
/// (loser, winner) pairs in input order.
EliminationOutcome eliminate_dominated(std::span<const PlanValue> entries);

}  // namespace affine
