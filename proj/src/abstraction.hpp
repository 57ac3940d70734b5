#pragma once

#include "action.hpp"

#include <optional>
#include <span>
#include <vector>

namespace affine {

/// Partition of an action's branch indices into nonempty disjoint groups
/// covering all indices.
struct BranchGroups {
    std::vector<std::vector<size_t>> groups;
};

/// Merge branches of one action (>= 2): union condition and effects; the
/// probability is the clamped interval sum when all conditions agree, else
/// [min of lows, clamped sum of highs].
AbstractBranch bundle_branches(std::span<const AbstractBranch> branches);

/// Merge corresponding branches across actions (>= 2): union condition and
/// effects; the probability is the interval hull when all conditions agree,
/// else [0, max of highs].
AbstractBranch combine_branches(std::span<const AbstractBranch> branches);

/// Chain two branches: condition restricted to the states whose first-effect
/// image reaches the second condition, probabilities multiplied, effects
/// composed. Empty when no state qualifies.
std::optional<AbstractBranch> compose_branches(const AbstractBranch& first,
                                               const AbstractBranch& second);

/// Replaces each multi-branch group by its bundle. Throws ValidationError when
/// the result admits no instantiation.
AbstractAction intra_abstract(const AbstractAction& a, const BranchGroups& groups);

/// Branchwise combination of condition-normalized actions, paired by canonical
/// branch order; throws UsageError when the branch structures do not align.
AbstractAction inter_abstract(std::span<const AbstractAction> actions);

/// One action covering `first` followed by `second`: all pairwise branch
/// compositions with empty results dropped.
AbstractAction seq_abstract(const AbstractAction& first, const AbstractAction& second);

}  // namespace affine
