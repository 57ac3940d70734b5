#include "tree.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace affine {

struct AffineTree::Node {
    Kind kind;
    uint32_t state = 0;
    StateSet set;
    std::vector<Branch> branches;
    size_t depth = 0;
    size_t leaves = 1;
    bool finite = false;
};

AffineTree AffineTree::state(StateSpacePtr space, uint32_t s) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::State;
    node->state = s;
    node->set = StateSet::single(s);
    return {std::move(space), std::move(node)};
}

AffineTree AffineTree::set(StateSpacePtr space, StateSet b) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Set;
    node->set = b;
    return {std::move(space), std::move(node)};
}

AffineTree AffineTree::finite(StateSpacePtr space, StateSet b) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Finite;
    node->set = b;
    node->finite = true;
    return {std::move(space), std::move(node)};
}

AffineTree AffineTree::star(StateSpacePtr space, std::vector<Branch> branches) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Star;
    for (const auto& br : branches) {
        if (!same_space(space, br.child.space())) {
            throw Error("star branches must share the parent's state space");
        }
        node->depth = std::max(node->depth, br.child.depth() + 1);
        node->finite = node->finite || br.child.has_finite_leaf();
    }
    node->depth = std::max<size_t>(node->depth, 1);
    std::sort(branches.begin(), branches.end(), [](const Branch& a, const Branch& b) {
        const int c = a.child.compare(b.child);
        if (c != 0) return c < 0;
        return a.weight < b.weight;
    });
    node->leaves = 0;
    for (const auto& br : branches) node->leaves += br.child.leaf_count();
    node->branches = std::move(branches);
    return {std::move(space), std::move(node)};
}

AffineTree::Kind AffineTree::kind() const { return node_->kind; }

uint32_t AffineTree::leaf_state() const {
    assert(node_->kind == Kind::State);
    return node_->state;
}

StateSet AffineTree::leaf_set() const {
    assert(node_->kind != Kind::Star);
    return node_->set;
}

std::span<const AffineTree::Branch> AffineTree::branches() const {
    assert(node_->kind == Kind::Star);
    return node_->branches;
}

size_t AffineTree::depth() const { return node_->depth; }
size_t AffineTree::leaf_count() const { return node_->leaves; }
bool AffineTree::has_finite_leaf() const { return node_->finite; }

int AffineTree::compare(const AffineTree& o) const {
    if (node_ == o.node_) return 0;
    const int ka = static_cast<int>(node_->kind);
    const int kb = static_cast<int>(o.node_->kind);
    if (ka != kb) return ka < kb ? -1 : 1;
    if (node_->kind != Kind::Star) {
        if (node_->set == o.node_->set) return 0;
        return node_->set < o.node_->set ? -1 : 1;
    }
    const auto& a = node_->branches;
    const auto& b = o.node_->branches;
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i) {
        if (int c = a[i].child.compare(b[i].child); c != 0) return c;
        if (auto c = a[i].weight <=> b[i].weight; c != 0) {
            return c < 0 ? -1 : 1;
        }
    }
    return 0;
}

std::string ValidationReport::str() const {
    if (ok()) return "ok";
    std::string out;
    for (const auto& issue : issues) {
        if (!out.empty()) out += "; ";
        out += issue.path + ": " + issue.message;
    }
    return out;
}

namespace {

void validate_walk(const AffineTree& t, const std::string& path, ValidationReport& report) {
    switch (t.kind()) {
        case AffineTree::Kind::State:
            if (t.leaf_state() >= t.space()->size()) {
                report.issues.push_back({path, "state index outside the state space"});
            }
            return;
        case AffineTree::Kind::Set:
        case AffineTree::Kind::Finite: {
            if (t.leaf_set().empty()) {
                report.issues.push_back({path, "leaf set must be nonempty"});
            } else if (!t.leaf_set().subset_of(t.space()->all())) {
                report.issues.push_back({path, "leaf set reaches outside the state space"});
            }
            return;
        }
        case AffineTree::Kind::Star: {
            const auto branches = t.branches();
            if (branches.empty()) {
                report.issues.push_back({path, "star must have at least one branch"});
                return;
            }
            Rational lo_sum, hi_sum;
            for (const auto& br : branches) {
                lo_sum += br.weight.lo();
                hi_sum += br.weight.hi();
            }
            if (Rational(1) < lo_sum || hi_sum < Rational(1)) {
                report.issues.push_back(
                    {path, "branch weights cannot sum to 1 (low sum " + lo_sum.str() +
                               ", high sum " + hi_sum.str() + ")"});
            }
            for (size_t i = 0; i < branches.size(); ++i) {
                validate_walk(branches[i].child, path + "." + std::to_string(i), report);
            }
            return;
        }
    }
}

/// Exact cover of the convex hull of the given subtrees' worlds: identical trees
/// stay as-is, plain leaves fold to the Set leaf over their union, anything else
/// gets wrapped in an all-[0,1] star.
AffineTree convex_cover(const StateSpacePtr& space, std::vector<AffineTree> parts) {
    assert(!parts.empty());
    bool all_equal = true;
    bool all_leaves = true;
    for (const auto& part : parts) {
        all_equal = all_equal && part == parts.front();
        all_leaves = all_leaves && part.is_leaf();
    }
    if (all_equal) return parts.front();
    if (all_leaves) {
        StateSet merged;
        for (const auto& part : parts) merged = merged.unite(part.leaf_set());
        return AffineTree::set(space, merged);
    }
    std::vector<AffineTree::Branch> branches;
    branches.reserve(parts.size());
    for (auto& part : parts) branches.push_back({Interval::unit(), std::move(part)});
    return AffineTree::star(space, std::move(branches));
}

void collect_flat(const AffineTree& t, const Interval& acc,
                  std::vector<AffineTree::Branch>& out) {
    if (t.is_leaf()) {
        out.push_back({acc, t});
        return;
    }
    for (const auto& br : t.branches()) {
        collect_flat(br.child, interval_mul(acc, br.weight), out);
    }
}

}  // namespace

ValidationReport validate(const AffineTree& t) {
    ValidationReport report;
    validate_walk(t, "root", report);
    return report;
}

AffineTree from_distribution(const Distribution& p) {
    std::vector<AffineTree::Branch> branches;
    for (uint32_t s = 0; s < p.space()->size(); ++s) {
        if (p.mass(s).is_zero()) continue;
        branches.push_back(
            {Interval::point(p.mass(s)), AffineTree::state(p.space(), s)});
    }
    return AffineTree::star(p.space(), std::move(branches));
}

namespace {

template <typename Focals>
void check_focals_distinct(const Focals& focals) {
    for (size_t i = 0; i < focals.size(); ++i) {
        if (focals[i].set.empty()) throw ValidationError("focal sets must be nonempty");
        for (size_t j = i + 1; j < focals.size(); ++j) {
            if (focals[i].set == focals[j].set) {
                throw ValidationError("focal sets must be distinct");
            }
        }
    }
}

}  // namespace

AffineTree from_belief(const StateSpacePtr& space, const MassAssignment& m) {
    if (m.focals.empty()) throw ValidationError("mass assignment must be nonempty");
    check_focals_distinct(m.focals);
    Rational total;
    for (const auto& f : m.focals) {
        if (f.mass.is_negative()) throw ValidationError("masses must be nonnegative");
        total += f.mass;
    }
    if (total != Rational(1)) {
        throw ValidationError("masses sum to " + total.str() + " (must be 1)");
    }
    std::vector<AffineTree::Branch> branches;
    branches.reserve(m.focals.size());
    for (const auto& f : m.focals) {
        branches.push_back({Interval::point(f.mass), AffineTree::set(space, f.set)});
    }
    return AffineTree::star(space, std::move(branches));
}

AffineTree from_ima(const StateSpacePtr& space, const IntervalMassAssignment& ima) {
    if (ima.focals.empty()) throw ValidationError("interval mass assignment must be nonempty");
    check_focals_distinct(ima.focals);
    Rational lo_sum, hi_sum;
    for (const auto& f : ima.focals) {
        lo_sum += f.mass.lo();
        hi_sum += f.mass.hi();
    }
    if (Rational(1) < lo_sum || hi_sum < Rational(1)) {
        throw ValidationError("interval masses cannot sum to 1 (low sum " + lo_sum.str() +
                              ", high sum " + hi_sum.str() + ")");
    }
    std::vector<AffineTree::Branch> branches;
    branches.reserve(ima.focals.size());
    for (const auto& f : ima.focals) {
        branches.push_back({f.mass, AffineTree::set(space, f.set)});
    }
    return AffineTree::star(space, std::move(branches));
}

AffineTree flatten(const AffineTree& t) {
    if (t.is_leaf()) return t;
    std::vector<AffineTree::Branch> branches;
    branches.reserve(t.leaf_count());
    collect_flat(t, Interval::point(Rational(1)), branches);
    return AffineTree::star(t.space(), std::move(branches));
}

AffineTree merge_branches(const AffineTree& star, std::vector<size_t> indices) {
    if (star.kind() != AffineTree::Kind::Star) throw UsageError("merge_branches needs a star");
    const auto branches = star.branches();
    std::sort(indices.begin(), indices.end());
    if (indices.size() < 2) throw UsageError("merge_branches needs at least two branches");
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
        throw UsageError("merge_branches indices must be distinct");
    }
    if (indices.back() >= branches.size()) throw UsageError("branch index out of range");

    Interval merged_weight = branches[indices.front()].weight;
    std::vector<AffineTree> merged_children{branches[indices.front()].child};
    for (size_t k = 1; k < indices.size(); ++k) {
        merged_weight = interval_add(merged_weight, branches[indices[k]].weight);
        merged_children.push_back(branches[indices[k]].child);
    }

    std::vector<AffineTree::Branch> out;
    out.reserve(branches.size() - indices.size() + 1);
    for (size_t i = 0; i < branches.size(); ++i) {
        if (!std::binary_search(indices.begin(), indices.end(), i)) {
            out.push_back(branches[i]);
        }
    }
    out.push_back({merged_weight, convex_cover(star.space(), std::move(merged_children))});
    return AffineTree::star(star.space(), std::move(out));
}

AffineTree merge_stars(std::span<const AffineTree> stars) {
    if (stars.size() < 2) throw UsageError("merge_stars needs at least two stars");
    const size_t arity = stars.front().kind() == AffineTree::Kind::Star
                             ? stars.front().branches().size()
                             : 0;
    for (const auto& s : stars) {
        if (s.kind() != AffineTree::Kind::Star || s.branches().size() != arity || arity == 0) {
            throw UsageError("merge_stars needs stars of equal arity");
        }
    }
    std::vector<AffineTree::Branch> out;
    out.reserve(arity);
    for (size_t i = 0; i < arity; ++i) {
        Interval weight = stars.front().branches()[i].weight;
        std::vector<AffineTree> children;
        children.reserve(stars.size());
        for (const auto& s : stars) {
            weight = interval_hull(weight, s.branches()[i].weight);
            children.push_back(s.branches()[i].child);
        }
        out.push_back({weight, convex_cover(stars.front().space(), std::move(children))});
    }
    return AffineTree::star(stars.front().space(), std::move(out));
}

AffineTree standardize(const AffineTree& t) {
    switch (t.kind()) {
        case AffineTree::Kind::State:
            return t;
        case AffineTree::Kind::Finite:
            throw ValidationError("tree with discrete finite leaves cannot be standardized");
        case AffineTree::Kind::Set: {
            const auto states = t.leaf_set().states();
            if (states.empty()) throw ValidationError("empty leaf set");
            if (states.size() == 1) return AffineTree::state(t.space(), states.front());
            std::vector<AffineTree::Branch> branches;
            branches.reserve(states.size());
            for (uint32_t s : states) {
                branches.push_back({Interval::unit(), AffineTree::state(t.space(), s)});
            }
            return AffineTree::star(t.space(), std::move(branches));
        }
        case AffineTree::Kind::Star: {
            std::vector<AffineTree::Branch> branches;
            branches.reserve(t.branches().size());
            for (const auto& br : t.branches()) {
                branches.push_back({br.weight, standardize(br.child)});
            }
            return AffineTree::star(t.space(), std::move(branches));
        }
    }
    throw Error("unreachable tree kind");
}

std::vector<Rational> sample_affine_weights(std::span<const Interval> bounds, Rng& rng,
                                            unsigned grain) {
    const size_t n = bounds.size();
    std::vector<Rational> rest_lo(n + 1), rest_hi(n + 1);
    for (size_t i = n; i-- > 0;) {
        rest_lo[i] = rest_lo[i + 1] + bounds[i].lo();
        rest_hi[i] = rest_hi[i + 1] + bounds[i].hi();
    }
    if (Rational(1) < rest_lo[0] || rest_hi[0] < Rational(1)) {
        throw ValidationError("weight intervals cannot sum to 1");
    }
    std::vector<Rational> q(n);
    Rational assigned;
    for (size_t i = 0; i < n; ++i) {
        const Rational lo = rat_max(bounds[i].lo(), Rational(1) - assigned - rest_hi[i + 1]);
        const Rational hi = rat_min(bounds[i].hi(), Rational(1) - assigned - rest_lo[i + 1]);
        assert(lo <= hi);
        q[i] = rng.between(lo, hi, grain);
        assigned += q[i];
    }
    assert(assigned == Rational(1));
    return q;
}

Distribution sample_member(const AffineTree& t, Rng& rng) {
    switch (t.kind()) {
        case AffineTree::Kind::State:
            return Distribution::point(t.space(), t.leaf_state());
        case AffineTree::Kind::Finite: {
            const auto states = t.leaf_set().states();
            return Distribution::point(t.space(), states[rng.below(states.size())]);
        }
        case AffineTree::Kind::Set: {
            const auto states = t.leaf_set().states();
            const std::vector<Interval> unit(states.size(), Interval::unit());
            const auto weights = sample_affine_weights(unit, rng);
            std::vector<Rational> mass(t.space()->size(), Rational(0));
            for (size_t i = 0; i < states.size(); ++i) mass[states[i]] = weights[i];
            return Distribution::unchecked(t.space(), std::move(mass));
        }
        case AffineTree::Kind::Star: {
            const auto branches = t.branches();
            std::vector<Interval> bounds;
            bounds.reserve(branches.size());
            for (const auto& br : branches) bounds.push_back(br.weight);
            const auto weights = sample_affine_weights(bounds, rng);
            std::vector<Distribution> members;
            members.reserve(branches.size());
            for (const auto& br : branches) members.push_back(sample_member(br.child, rng));
            return dist_mix(weights, members);
        }
    }
    throw Error("unreachable tree kind");
}

}  // namespace affine
