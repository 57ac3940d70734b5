#pragma once

#include "action.hpp"
#include "tree.hpp"

#include <span>
#include <vector>

namespace affine::oracle {

/// Hard limits on the exact enumeration; larger inputs get a SizeError instead
/// of an open-ended run. `reduce_threshold` controls when a node's deduplicated
/// point set is additionally thinned to hull generators (exact, hull-preserving).
struct Caps {
    size_t max_states = 6;
    size_t max_arity = 6;
    size_t max_depth = 10;
    size_t node_product_cap = 250000;
    size_t reduce_threshold = 48;
};

/// All vertices of the weight polytope { q : q_i in Q_i, sum q = 1 }. Every
/// vertex fixes all but at most one coordinate at a bound, so the enumeration
/// walks the bound patterns with one derived coordinate and deduplicates.
std::vector<std::vector<Rational>> delta_vertices(std::span<const Interval> bounds,
                                                  const Caps& caps = {});

/// Finite generator set whose convex hull is exactly the tree's world (for trees
/// with Finite leaves: the hull of the world, flagged).
struct VertexSet {
    StateSpacePtr space;
    std::vector<Distribution> vertices;
    bool hull_of_finite = false;
};

VertexSet world_vertices(const AffineTree& t, const Caps& caps = {});

/// Exact convex-combination membership, decided by rational linear feasibility.
bool member(const Distribution& x, const VertexSet& vs);

/// Does sup's world contain sub's? Exact; compares convex hulls when Finite
/// leaves are present.
bool subsumes_exact(const AffineTree& sup, const AffineTree& sub, const Caps& caps = {});

/// n true members of the action's image of the tree's world, built by sampling
/// an instantiation and a member and applying one to the other.
std::vector<Distribution> sampled_action_image(const AbstractAction& a, const AffineTree& t,
                                               size_t n, Rng& rng);

/// Drops points that are exact convex combinations of the kept ones; the convex
/// hull is unchanged. Used internally above the reduce threshold and exposed for
/// tests.
std::vector<Distribution> hull_generators(std::vector<Distribution> points);

}  // namespace affine::oracle
