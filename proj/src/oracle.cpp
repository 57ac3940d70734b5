#include "oracle.hpp"

#include "errors.hpp"
#include "simplex.hpp"

#include <algorithm>
#include <cassert>

namespace affine::oracle {
namespace {

void dedup_sorted(std::vector<Distribution>& points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
}

std::vector<lp::Vector> raw_points(std::span<const Distribution> points) {
    std::vector<lp::Vector> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.masses());
    return out;
}

bool in_hull(const Distribution& x, std::span<const Distribution> gens) {
    return lp::in_convex_hull(raw_points(gens), x.masses());
}

}  // namespace

std::vector<std::vector<Rational>> delta_vertices(std::span<const Interval> bounds,
                                                  const Caps& caps) {
    const size_t n = bounds.size();
    if (n == 0) throw ValidationError("empty weight vector");
    if (n > caps.max_arity) {
        throw SizeError("star arity " + std::to_string(n) + " exceeds the oracle cap of " +
                        std::to_string(caps.max_arity));
    }
    Rational lo_sum, hi_sum;
    for (const auto& q : bounds) {
        lo_sum += q.lo();
        hi_sum += q.hi();
    }
    if (Rational(1) < lo_sum || hi_sum < Rational(1)) {
        throw ValidationError("weight intervals cannot sum to 1");
    }

    std::vector<std::vector<Rational>> vertices;
    std::vector<Rational> q(n);
    for (size_t free = 0; free < n; ++free) {
        const size_t patterns = size_t{1} << (n - 1);
        for (size_t pattern = 0; pattern < patterns; ++pattern) {
            Rational sum;
            size_t bit = 0;
            for (size_t i = 0; i < n; ++i) {
                if (i == free) continue;
                q[i] = (pattern >> bit & 1) ? bounds[i].hi() : bounds[i].lo();
                sum += q[i];
                ++bit;
            }
            Rational rest = Rational(1) - sum;
            if (rest < bounds[free].lo() || bounds[free].hi() < rest) continue;
            q[free] = std::move(rest);
            vertices.push_back(q);
        }
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

std::vector<Distribution> hull_generators(std::vector<Distribution> points) {
    dedup_sorted(points);
    if (points.size() <= 2) return points;
    std::vector<Distribution> kept;
    kept.reserve(points.size());
    for (auto& p : points) {
        if (kept.size() >= 2 && in_hull(p, kept)) continue;
        kept.push_back(std::move(p));
        // purge members that the new point made redundant
        for (size_t i = 0; i + 1 < kept.size();) {
            std::vector<Distribution> others;
            others.reserve(kept.size() - 1);
            for (size_t j = 0; j < kept.size(); ++j) {
                if (j != i) others.push_back(kept[j]);
            }
            if (in_hull(kept[i], others)) {
                kept.erase(kept.begin() + static_cast<ptrdiff_t>(i));
            } else {
                ++i;
            }
        }
    }
    dedup_sorted(kept);
    return kept;
}

namespace {

std::vector<Distribution> vertices_walk(const AffineTree& t, const Caps& caps, size_t depth) {
    if (depth > caps.max_depth) {
        throw SizeError("tree depth exceeds the oracle cap of " + std::to_string(caps.max_depth));
    }
    switch (t.kind()) {
        case AffineTree::Kind::State:
            return {Distribution::point(t.space(), t.leaf_state())};
        case AffineTree::Kind::Set:
        case AffineTree::Kind::Finite: {
            std::vector<Distribution> out;
            for (uint32_t s : t.leaf_set().states()) {
                out.push_back(Distribution::point(t.space(), s));
            }
            return out;
        }
        case AffineTree::Kind::Star:
            break;
    }

    const auto branches = t.branches();
    std::vector<Interval> bounds;
    bounds.reserve(branches.size());
    for (const auto& br : branches) bounds.push_back(br.weight);
    const auto weight_vertices = delta_vertices(bounds, caps);

    std::vector<std::vector<Distribution>> child_vertices;
    child_vertices.reserve(branches.size());
    for (const auto& br : branches) {
        child_vertices.push_back(vertices_walk(br.child, caps, depth + 1));
    }

    size_t total = 0;
    for (const auto& q : weight_vertices) {
        size_t combos = 1;
        for (size_t i = 0; i < q.size(); ++i) {
            if (!q[i].is_zero()) combos *= child_vertices[i].size();
        }
        total += combos;
        if (total > caps.node_product_cap) {
            throw SizeError("vertex product exceeds the oracle cap of " +
                            std::to_string(caps.node_product_cap) + " points per node");
        }
    }

    std::vector<Distribution> points;
    points.reserve(total);
    const size_t dim = t.space()->size();
    for (const auto& q : weight_vertices) {
        // odometer over the children with nonzero weight
        std::vector<size_t> active;
        for (size_t i = 0; i < q.size(); ++i) {
            if (!q[i].is_zero()) active.push_back(i);
        }
        std::vector<size_t> pick(active.size(), 0);
        for (;;) {
            std::vector<Rational> mass(dim, Rational(0));
            for (size_t k = 0; k < active.size(); ++k) {
                const size_t i = active[k];
                const Distribution& v = child_vertices[i][pick[k]];
                for (uint32_t s = 0; s < dim; ++s) {
                    if (!v.mass(s).is_zero()) mass[s] += q[i] * v.mass(s);
                }
            }
            points.push_back(Distribution::unchecked(t.space(), std::move(mass)));
            size_t k = 0;
            while (k < active.size()) {
                if (++pick[k] < child_vertices[active[k]].size()) break;
                pick[k] = 0;
                ++k;
            }
            if (k == active.size()) break;
        }
    }
    dedup_sorted(points);
    if (points.size() > caps.reduce_threshold) points = hull_generators(std::move(points));
    return points;
}

}  // namespace

VertexSet world_vertices(const AffineTree& t, const Caps& caps) {
    if (t.space()->size() > caps.max_states) {
        throw SizeError("state space size " + std::to_string(t.space()->size()) +
                        " exceeds the oracle cap of " + std::to_string(caps.max_states));
    }
    VertexSet out;
    out.space = t.space();
    out.hull_of_finite = t.has_finite_leaf();
    out.vertices = vertices_walk(t, caps, 0);
    return out;
}

bool member(const Distribution& x, const VertexSet& vs) {
    assert(same_space(x.space(), vs.space));
    return in_hull(x, vs.vertices);
}

bool subsumes_exact(const AffineTree& sup, const AffineTree& sub, const Caps& caps) {
    const VertexSet sup_vs = world_vertices(sup, caps);
    const VertexSet sub_vs = world_vertices(sub, caps);
    return std::all_of(sub_vs.vertices.begin(), sub_vs.vertices.end(),
                       [&](const Distribution& v) { return member(v, sup_vs); });
}

std::vector<Distribution> sampled_action_image(const AbstractAction& a, const AffineTree& t,
                                               size_t n, Rng& rng) {
    std::vector<Distribution> out;
    out.reserve(n);
    for (size_t k = 0; k < n; ++k) {
        const PrimitiveAction concrete = sample_instantiation(a, rng);
        const Distribution p = sample_member(t, rng);
        out.push_back(apply_primitive_dist(concrete, p));
    }
    return out;
}

}  // namespace affine::oracle
