#include "projection.hpp"

#include "errors.hpp"

namespace affine {
namespace {

bool is_standard(const AffineTree& t) {
    if (t.is_leaf()) return t.kind() == AffineTree::Kind::State;
    for (const auto& br : t.branches()) {
        if (!is_standard(br.child)) return false;
    }
    return true;
}

template <typename LeafFn>
AffineTree map_leaves(const AffineTree& t, const LeafFn& fn) {
    if (t.is_leaf()) return fn(t);
    std::vector<AffineTree::Branch> branches;
    branches.reserve(t.branches().size());
    for (const auto& br : t.branches()) {
        branches.push_back({br.weight, map_leaves(br.child, fn)});
    }
    return AffineTree::star(t.space(), std::move(branches));
}

AffineTree ch_lift_walk(const AffineTree& t) {
    switch (t.kind()) {
        case AffineTree::Kind::Finite:
            return AffineTree::set(t.space(), t.leaf_set());
        case AffineTree::Kind::State:
        case AffineTree::Kind::Set:
            return t;
        case AffineTree::Kind::Star:
            break;
    }
    std::vector<AffineTree::Branch> branches;
    branches.reserve(t.branches().size());
    for (const auto& br : t.branches()) {
        branches.push_back({br.weight, ch_lift_walk(br.child)});
    }
    return AffineTree::star(t.space(), std::move(branches));
}

}  // namespace

Interval indicator_set(StateSet b, StateSet c) {
    if (b.subset_of(c)) return Interval::point(Rational(1));
    if (!b.intersects(c)) return Interval::point(Rational(0));
    return Interval::unit();
}

AffineTree Pr1Tree::ch_lifted() const { return ch_lift_walk(tree_); }

Pr1Tree pr1(const AbstractAction& a, const AffineTree& t) {
    if (!is_standard(t)) throw ValidationError("the first projection rule needs a standard tree");
    return Pr1Tree(map_leaves(t, [&](const AffineTree& leaf) {
        const uint32_t b = leaf.leaf_state();
        std::vector<AffineTree::Branch> branches;
        branches.reserve(a.branches.size());
        for (const auto& br : a.branches) {
            const Interval weight = br.condition.contains(b)
                                        ? br.prob
                                        : Interval::point(Rational(0));
            const StateSet image = br.effect.apply(b);
            AffineTree child = image.count() == 1
                                   ? AffineTree::state(t.space(), image.first())
                                   : AffineTree::finite(t.space(), image);
            branches.push_back({weight, std::move(child)});
        }
        return AffineTree::star(t.space(), std::move(branches));
    }));
}

AffineTree pr2(const AbstractAction& a, const AffineTree& t) {
    if (!is_standard(t)) throw ValidationError("the second projection rule needs a standard tree");
    return map_leaves(t, [&](const AffineTree& leaf) {
        const uint32_t b = leaf.leaf_state();
        std::vector<AffineTree::Branch> branches;
        branches.reserve(a.branches.size());
        for (const auto& br : a.branches) {
            const Interval weight = br.condition.contains(b)
                                        ? br.prob
                                        : Interval::point(Rational(0));
            branches.push_back({weight, AffineTree::set(t.space(), br.effect.apply(b))});
        }
        return AffineTree::star(t.space(), std::move(branches));
    });
}

AffineTree pr3(const AbstractAction& a, const AffineTree& t) {
    if (t.has_finite_leaf()) {
        throw ValidationError("the third projection rule does not accept discrete finite leaves");
    }
    return map_leaves(t, [&](const AffineTree& leaf) {
        const StateSet b = leaf.leaf_set();
        std::vector<AffineTree::Branch> branches;
        branches.reserve(a.branches.size());
        for (const auto& br : a.branches) {
            const StateSet touched = b.intersect(br.condition);
            if (touched.empty()) continue;  // weight is exactly [0,0]
            const Interval weight = interval_mul(indicator_set(b, br.condition), br.prob);
            branches.push_back({weight, AffineTree::set(t.space(), br.effect.apply_set(touched))});
        }
        return AffineTree::star(t.space(), std::move(branches));
    });
}

ProjectionResult project_plan(const Plan& plan, const AffineTree& start, Rule rule) {
    if (plan.steps.empty()) throw ValidationError("plan '" + plan.name + "' has no steps");
    if (rule == Rule::PR1) {
        throw UsageError("the first projection rule cannot project plans");
    }
    ProjectionResult result{start, {}};
    result.per_step.reserve(plan.steps.size());
    for (const auto& step : plan.steps) {
        if (rule == Rule::PR2) {
            result.tree = pr2(step, standardize(result.tree));
        } else {
            result.tree = pr3(step, result.tree);
        }
        result.per_step.push_back({result.tree.depth(), result.tree.leaf_count()});
    }
    return result;
}

}  // namespace affine
