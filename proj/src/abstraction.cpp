#include "abstraction.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cassert>

namespace affine {
namespace {

void require_valid(const AbstractAction& a, const char* what) {
    const auto report = validate_abstract(a);
    if (!report.ok()) {
        throw ValidationError(std::string(what) + " produced an invalid action: " +
                              report.str());
    }
}

int compare_effects(const AbstractEffect& a, const AbstractEffect& b) {
    for (size_t s = 0; s < a.map.size(); ++s) {
        if (a.map[s] != b.map[s]) return a.map[s] < b.map[s] ? -1 : 1;
    }
    return 0;
}

bool branch_less(const AbstractBranch& a, const AbstractBranch& b) {
    if (a.condition != b.condition) return a.condition < b.condition;
    if (a.prob != b.prob) return a.prob < b.prob;
    return compare_effects(a.effect, b.effect) < 0;
}

}  // namespace

AbstractBranch bundle_branches(std::span<const AbstractBranch> branches) {
    if (branches.size() < 2) throw UsageError("bundling needs at least two branches");
    StateSet condition = branches.front().condition;
    AbstractEffect effect = branches.front().effect;
    bool same_condition = true;
    for (size_t i = 1; i < branches.size(); ++i) {
        same_condition = same_condition && branches[i].condition == condition;
        condition = condition.unite(branches[i].condition);
        effect = effect_union(effect, branches[i].effect);
    }
    Interval prob = branches.front().prob;
    if (same_condition) {
        for (size_t i = 1; i < branches.size(); ++i) {
            prob = interval_add(prob, branches[i].prob);
        }
    } else {
        Rational lo = branches.front().prob.lo();
        Rational hi_sum = branches.front().prob.hi();
        for (size_t i = 1; i < branches.size(); ++i) {
            lo = rat_min(lo, branches[i].prob.lo());
            hi_sum += branches[i].prob.hi();
        }
        prob = Interval(std::move(lo), rat_min(hi_sum, Rational(1)));
    }
    return {condition, prob, std::move(effect)};
}

AbstractBranch combine_branches(std::span<const AbstractBranch> branches) {
    if (branches.size() < 2) throw UsageError("combining needs at least two branches");
    StateSet condition = branches.front().condition;
    AbstractEffect effect = branches.front().effect;
    bool same_condition = true;
    Rational lo = branches.front().prob.lo();
    Rational hi = branches.front().prob.hi();
    for (size_t i = 1; i < branches.size(); ++i) {
        same_condition = same_condition && branches[i].condition == condition;
        condition = condition.unite(branches[i].condition);
        effect = effect_union(effect, branches[i].effect);
        lo = rat_min(lo, branches[i].prob.lo());
        hi = rat_max(hi, branches[i].prob.hi());
    }
    if (!same_condition) lo = Rational(0);
    return {condition, Interval(std::move(lo), std::move(hi)), std::move(effect)};
}

std::optional<AbstractBranch> compose_branches(const AbstractBranch& first,
                                               const AbstractBranch& second) {
    StateSet condition;
    for (uint32_t s : first.condition.states()) {
        if (first.effect.apply(s).intersects(second.condition)) condition = condition.with(s);
    }
    if (condition.empty()) return std::nullopt;
    return AbstractBranch{condition, interval_mul(first.prob, second.prob),
                          effect_compose(first.effect, second.effect)};
}

AbstractAction intra_abstract(const AbstractAction& a, const BranchGroups& grouping) {
    std::vector<bool> seen(a.branches.size(), false);
    for (const auto& group : grouping.groups) {
        if (group.empty()) throw UsageError("branch groups must be nonempty");
        for (size_t idx : group) {
            if (idx >= a.branches.size()) throw UsageError("branch group index out of range");
            if (seen[idx]) throw UsageError("branch groups must be disjoint");
            seen[idx] = true;
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw UsageError("branch groups must cover every branch");
    }

    // groups ordered by smallest member for stable output
    std::vector<std::vector<size_t>> groups = grouping.groups;
    for (auto& group : groups) std::sort(group.begin(), group.end());
    std::sort(groups.begin(), groups.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });

    AbstractAction out{a.space, {}};
    for (const auto& group : groups) {
        if (group.size() == 1) {
            out.branches.push_back(a.branches[group.front()]);
            continue;
        }
        std::vector<AbstractBranch> members;
        members.reserve(group.size());
        for (size_t idx : group) members.push_back(a.branches[idx]);
        out.branches.push_back(bundle_branches(members));
    }
    require_valid(out, "bundling");
    return out;
}

AbstractAction inter_abstract(std::span<const AbstractAction> actions) {
    if (actions.size() < 2) throw UsageError("inter-abstraction needs at least two actions");
    std::vector<AbstractAction> normalized;
    normalized.reserve(actions.size());
    for (const auto& action : actions) {
        auto n = normalize_conditions(action);
        std::sort(n.branches.begin(), n.branches.end(), branch_less);
        normalized.push_back(std::move(n));
    }
    const size_t count = normalized.front().branches.size();
    for (const auto& action : normalized) {
        if (action.branches.size() != count) {
            throw UsageError("actions have unalignable branch structures (branch counts "
                             "differ after condition normalization)");
        }
    }
    for (size_t i = 0; i < count; ++i) {
        for (const auto& action : normalized) {
            if (action.branches[i].condition != normalized.front().branches[i].condition) {
                throw UsageError("actions have unalignable branch structures (conditions "
                                 "differ after condition normalization)");
            }
        }
    }
    AbstractAction out{actions.front().space, {}};
    out.branches.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        std::vector<AbstractBranch> column;
        column.reserve(normalized.size());
        for (const auto& action : normalized) column.push_back(action.branches[i]);
        out.branches.push_back(combine_branches(column));
    }
    require_valid(out, "inter-abstraction");
    return out;
}

AbstractAction seq_abstract(const AbstractAction& first, const AbstractAction& second) {
    AbstractAction out{first.space, {}};
    for (const auto& a : first.branches) {
        for (const auto& b : second.branches) {
            if (auto composed = compose_branches(a, b)) {
                out.branches.push_back(std::move(*composed));
            }
        }
    }
    // exhaustiveness follows from the inputs': every state reaches some
    // second-stage condition through the first stage's (nonempty) effect image
    StateSet covered;
    for (const auto& br : out.branches) covered = covered.unite(br.condition);
    assert(covered == first.space->all());
    require_valid(out, "sequential abstraction");
    return out;
}

}  // namespace affine
