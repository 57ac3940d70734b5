#pragma once

#include "rng.hpp"
#include "tree.hpp"

#include <span>
#include <vector>

namespace affine {

/// Deterministic state transformer: a total map state -> state.
struct PrimitiveEffect {
    StateSpacePtr space;
    std::vector<uint32_t> map;

    uint32_t apply(uint32_t s) const { return map[s]; }
    static PrimitiveEffect identity(StateSpacePtr space);
};

/// Nondeterministic state transformer: a total map state -> nonempty state set.
struct AbstractEffect {
    StateSpacePtr space;
    std::vector<StateSet> map;

    StateSet apply(uint32_t s) const { return map[s]; }
    /// Pointwise union of images over a set of source states.
    StateSet apply_set(StateSet b) const;
    static AbstractEffect identity(StateSpacePtr space);
    static AbstractEffect lift(const PrimitiveEffect& e);

    friend bool operator==(const AbstractEffect& a, const AbstractEffect& b) {
        return a.map == b.map;
    }
};

struct PrimitiveBranch {
    StateSet condition;
    Rational prob;
    PrimitiveEffect effect;
};

/// Probabilistic action: condition/probability/effect branches. Valid when the
/// conditions jointly cover the state space and, for every state, the
/// probabilities of the branches whose condition holds sum to exactly 1.
struct PrimitiveAction {
    StateSpacePtr space;
    std::vector<PrimitiveBranch> branches;
};

struct AbstractBranch {
    StateSet condition;
    Interval prob;
    AbstractEffect effect;
};

/// Interval-probability action with set-valued effects. Valid when conditions
/// jointly cover the state space and at least one primitive instantiation exists.
struct AbstractAction {
    StateSpacePtr space;
    std::vector<AbstractBranch> branches;
};

ValidationReport validate_primitive(const PrimitiveAction& a);

/// The post-action distribution from state b: mass of a = sum of p_i over
/// branches with b in C_i and effect(b) = a.
Distribution apply_primitive_state(const PrimitiveAction& a, uint32_t b);

/// Extension to distributions: sum_b P(b) * action(b).
Distribution apply_primitive_dist(const PrimitiveAction& a, const Distribution& p);

/// Rewrites the branches over the partition of states by identical condition
/// signatures, making conditions mutually exclusive and jointly exhaustive while
/// preserving the action's semantics.
PrimitiveAction normalize_conditions(const PrimitiveAction& a);
AbstractAction normalize_conditions(const AbstractAction& a);

bool effect_instantiates(const PrimitiveEffect& e, const AbstractEffect& abstract);

/// Branchwise instantiation: identical conditions, in-interval probabilities,
/// in-set effects, and the primitive action itself valid.
bool action_instantiates(const PrimitiveAction& concrete, const AbstractAction& abstract);

/// Exhaustiveness plus exact feasibility of the probability system
/// { p_i in P_i, per-state sums = 1 }; infeasible actions have no instantiation.
ValidationReport validate_abstract(const AbstractAction& a);

/// Some primitive instantiation: probabilities drawn as a random convex mix of
/// vertices of the feasible probability polytope, effects drawn pointwise.
/// Throws ValidationError when no instantiation exists.
PrimitiveAction sample_instantiation(const AbstractAction& a, Rng& rng);

AbstractEffect effect_union(const AbstractEffect& a, const AbstractEffect& b);
/// second after first: s -> union of second's images over first's image of s.
AbstractEffect effect_compose(const AbstractEffect& first, const AbstractEffect& second);

/// Point intervals and singleton effect images.
AbstractAction to_abstract(const PrimitiveAction& a);

}  // namespace affine
