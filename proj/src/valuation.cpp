#include "valuation.hpp"

#include "errors.hpp"

#include <algorithm>
#include <numeric>

namespace affine {
namespace {

// Greedy extreme of sum q_i * value_i over the weight polytope: start every
// weight at its lower bound and feed the slack 1 - sum(lo) to the children in
// value order (ascending to annihilate for the minimum, descending to reinforce
// for the maximum), each up to its capacity hi - lo. Ties break on the canonical
// branch position, which only affects the argument, never the extreme value.
Rational greedy_extreme(std::span<const AffineTree::Branch> branches,
                        std::span<const Rational> values, bool minimize) {
    Rational slack(1);
    Rational result;
    for (size_t i = 0; i < branches.size(); ++i) {
        slack -= branches[i].weight.lo();
        result += branches[i].weight.lo() * values[i];
    }
    if (slack.is_negative()) throw ValidationError("star weights cannot sum to 1");

    std::vector<size_t> order(branches.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return minimize ? values[a] < values[b] : values[b] < values[a];
    });
    for (size_t i : order) {
        if (slack.is_zero()) break;
        const Rational capacity = branches[i].weight.hi() - branches[i].weight.lo();
        const Rational give = rat_min(slack, capacity);
        if (give.is_zero()) continue;
        result += give * values[i];
        slack -= give;
    }
    if (!slack.is_zero()) throw ValidationError("star weights cannot sum to 1");
    return result;
}

EuInterval eui_walk(const AffineTree& t, const UtilityFunction& f) {
    switch (t.kind()) {
        case AffineTree::Kind::State: {
            return EuInterval::point(f.value(t.leaf_state()));
        }
        case AffineTree::Kind::Set:
        case AffineTree::Kind::Finite: {
            if (t.leaf_set().empty()) throw ValidationError("empty leaf set");
            return {f.min_over(t.leaf_set()), f.max_over(t.leaf_set())};
        }
        case AffineTree::Kind::Star:
            break;
    }
    const auto branches = t.branches();
    if (branches.empty()) throw ValidationError("star without branches");
    std::vector<Rational> lows, highs;
    lows.reserve(branches.size());
    highs.reserve(branches.size());
    for (const auto& br : branches) {
        const EuInterval child = eui_walk(br.child, f);
        lows.push_back(child.lo());
        highs.push_back(child.hi());
    }
    return {greedy_extreme(branches, lows, true), greedy_extreme(branches, highs, false)};
}

}  // namespace

EuiResult eui(const AffineTree& t, const UtilityFunction& f) {
    if (!same_space(t.space(), f.space())) {
        throw Error("utility function over a different state space");
    }
    return {eui_walk(t, f), t.has_finite_leaf()};
}

EliminationOutcome eliminate_dominated(std::span<const PlanValue> entries) {
    EliminationOutcome out;
    std::vector<bool> dominated(entries.size(), false);
    for (size_t loser = 0; loser < entries.size(); ++loser) {
        for (size_t winner = 0; winner < entries.size(); ++winner) {
            if (winner == loser) continue;
            if (dominates(entries[winner].value, entries[loser].value)) {
                dominated[loser] = true;
                out.log.push_back({loser, winner});
            }
        }
    }
    for (size_t i = 0; i < entries.size(); ++i) {
        if (!dominated[i]) out.survivors.push_back(i);
    }
    return out;
}

}  // namespace affine
