#pragma once

#include "action.hpp"
#include "tree.hpp"

#include <string>
#include <vector>

namespace affine {

/// Named sequence of abstract actions.
struct Plan {
    std::string name;
    std::vector<AbstractAction> steps;
};

enum class Rule { PR1 = 1, PR2 = 2, PR3 = 3 };

/// 1 iff b is in C.
inline int indicator_state(uint32_t b, StateSet c) { return c.contains(b) ? 1 : 0; }

/// [1,1] when C covers B, [0,0] when they are disjoint, [0,1] otherwise.
Interval indicator_set(StateSet b, StateSet c);

/// First-rule output: may contain discrete Finite leaves, so it cannot be fed
/// back into a projection rule. Supports sampling and hull-lifting only.
class Pr1Tree {
public:
    explicit Pr1Tree(AffineTree t) : tree_(std::move(t)) {}
    const AffineTree& tree() const { return tree_; }
    /// Finite leaves become Set leaves; reproduces the second rule's output.
    AffineTree ch_lifted() const;

private:
    AffineTree tree_;
};

/// Replaces every state leaf b with a star over the action's branches: weight
/// P_i when b meets the condition (else [0,0], kept), child the raw effect image
/// E_i(b) as a Finite leaf (State when singleton). Input must be standard.
Pr1Tree pr1(const AbstractAction& a, const AffineTree& t);

/// As pr1 but children are the convex hulls Set(E_i(b)); output is a valid
/// affine world and can be standardized for chaining.
AffineTree pr2(const AbstractAction& a, const AffineTree& t);

/// Set-level rule: every leaf with support B becomes a star with weights
/// S_B(C_i) * P_i and children Set(E_i(B and C_i)); branches with an empty
/// condition intersection are dropped. State leaves are treated as singletons.
AffineTree pr3(const AbstractAction& a, const AffineTree& t);

struct StepMetrics {
    size_t depth = 0;
    size_t leaves = 0;
};

struct ProjectionResult {
    AffineTree tree;
    std::vector<StepMetrics> per_step;
};

/// Folds the rule over the plan's steps. PR2 standardizes the tree before each
/// step; PR3 applies directly. PR1 is not plan-projectable.
ProjectionResult project_plan(const Plan& plan, const AffineTree& start, Rule rule);

}  // namespace affine
