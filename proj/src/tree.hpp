#pragma once

#include "distribution.hpp"
#include "rng.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace affine {

/// Recursive interval-weighted tree denoting a convex set of distributions.
///
/// Node kinds:
///   State(s)   — the point mass on s
///   Set(B)     — all distributions supported inside B (the convex hull of B)
///   Finite(B)  — the discrete set of point masses on B; produced only by the
///                first projection rule and not accepted by further projection
///   Star       — interval-weighted mixture of its children
///
/// Trees are immutable values; copies share structure. Branches are kept in a
/// canonical order (child form, then interval) so structural equality and
/// serialized output are stable; the denoted world is order-independent.
class AffineTree {
public:
    enum class Kind : uint8_t { State, Set, Finite, Star };
    struct Branch;

    static AffineTree state(StateSpacePtr space, uint32_t s);
    static AffineTree set(StateSpacePtr space, StateSet b);
    static AffineTree finite(StateSpacePtr space, StateSet b);
    static AffineTree star(StateSpacePtr space, std::vector<Branch> branches);

    Kind kind() const;
    bool is_leaf() const { return kind() != Kind::Star; }
    uint32_t leaf_state() const;
    /// Leaf support; for State leaves the singleton.
    StateSet leaf_set() const;
    std::span<const Branch> branches() const;
    const StateSpacePtr& space() const { return space_; }

    /// Edge count of the longest root-to-leaf path; leaves have depth 0.
    size_t depth() const;
    size_t leaf_count() const;
    bool has_finite_leaf() const;

    /// Canonical total order; 0 means structural equality.
    int compare(const AffineTree& o) const;
    bool operator==(const AffineTree& o) const { return compare(o) == 0; }
    bool operator<(const AffineTree& o) const { return compare(o) < 0; }

private:
    struct Node;
    AffineTree(StateSpacePtr space, std::shared_ptr<const Node> node)
        : space_(std::move(space)), node_(std::move(node)) {}
    StateSpacePtr space_;
    std::shared_ptr<const Node> node_;
};

struct AffineTree::Branch {
    Interval weight;
    AffineTree child;
};

struct ValidationIssue {
    std::string path;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string str() const;
};

/// Mass assignment: distinct nonempty focal sets with masses >= 0 summing to 1.
struct MassAssignment {
    struct Focal {
        StateSet set;
        Rational mass;
    };
    std::vector<Focal> focals;
};

/// Interval-valued masses: focal sets distinct, sum of lows <= 1 <= sum of highs.
struct IntervalMassAssignment {
    struct Focal {
        StateSet set;
        Interval mass;
    };
    std::vector<Focal> focals;
};

/// Structural validity: nonempty leaf sets and per-star weight feasibility
/// (sum of lows <= 1 <= sum of highs). Report-valued; lists each violating node.
ValidationReport validate(const AffineTree& t);

/// One branch [P(s), P(s)] -> State(s) per state with positive mass.
AffineTree from_distribution(const Distribution& p);

/// Star with branch [m_i, m_i] -> Set(B_i) per focal element; denotes exactly the
/// distributions consistent with the mass assignment's belief function.
AffineTree from_belief(const StateSpacePtr& space, const MassAssignment& m);

/// Star with branch M_i -> Set(B_i) per focal element.
AffineTree from_ima(const StateSpacePtr& space, const IntervalMassAssignment& ima);

/// Depth-1 star with one branch per leaf, weighted by the product of the
/// intervals along the root-to-leaf path. The result's world contains the input's.
AffineTree flatten(const AffineTree& t);

/// Replaces the indexed branches (>= 2 of them) of a star by a single branch:
/// clamped interval sum, child covering the merged leaf-worlds. Result contains
/// the input's world.
AffineTree merge_branches(const AffineTree& star, std::vector<size_t> indices);

/// Branchwise interval hull + leaf-world cover over equal-arity stars. The result
/// contains every input's world.
AffineTree merge_stars(std::span<const AffineTree> stars);

/// Expands every Set leaf into a star of [0,1]-weighted State leaves (singletons
/// collapse to State); world unchanged. Throws on Finite leaves.
AffineTree standardize(const AffineTree& t);

/// A member of the tree's world, drawn without rejection.
Distribution sample_member(const AffineTree& t, Rng& rng);

/// Weight vector with q_i inside bounds_i and sum exactly 1, drawn without
/// rejection by sequentially shrinking each coordinate's feasible range.
std::vector<Rational> sample_affine_weights(std::span<const Interval> bounds, Rng& rng,
                                            unsigned grain = 32);

}  // namespace affine
