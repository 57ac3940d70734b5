#include "action.hpp"

#include "errors.hpp"
#include "simplex.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace affine {

PrimitiveEffect PrimitiveEffect::identity(StateSpacePtr space) {
    std::vector<uint32_t> map(space->size());
    for (uint32_t s = 0; s < map.size(); ++s) map[s] = s;
    return {std::move(space), std::move(map)};
}

StateSet AbstractEffect::apply_set(StateSet b) const {
    StateSet out;
    for (uint32_t s : b.states()) out = out.unite(map[s]);
    return out;
}

AbstractEffect AbstractEffect::identity(StateSpacePtr space) {
    std::vector<StateSet> map(space->size());
    for (uint32_t s = 0; s < map.size(); ++s) map[s] = StateSet::single(s);
    return {std::move(space), std::move(map)};
}

AbstractEffect AbstractEffect::lift(const PrimitiveEffect& e) {
    std::vector<StateSet> map(e.map.size());
    for (uint32_t s = 0; s < map.size(); ++s) map[s] = StateSet::single(e.map[s]);
    return {e.space, std::move(map)};
}

namespace {

template <typename Action>
StateSet condition_union(const Action& a) {
    StateSet covered;
    for (const auto& br : a.branches) covered = covered.unite(br.condition);
    return covered;
}

template <typename Action>
void report_uncovered(const Action& a, ValidationReport& report) {
    const StateSet covered = condition_union(a);
    for (uint32_t s = 0; s < a.space->size(); ++s) {
        if (!covered.contains(s)) {
            report.issues.push_back(
                {"action", "conditions do not cover state '" + a.space->name(s) + "'"});
        }
    }
}

// Branch-index signature per state; equal signatures form the normalization classes.
template <typename Action>
std::vector<uint64_t> condition_signatures(const Action& a) {
    if (a.branches.size() > 64) throw ValidationError("actions are capped at 64 branches");
    std::vector<uint64_t> sig(a.space->size(), 0);
    for (size_t i = 0; i < a.branches.size(); ++i) {
        for (uint32_t s : a.branches[i].condition.states()) {
            sig[s] |= uint64_t{1} << i;
        }
    }
    return sig;
}

template <typename Action>
Action normalize_impl(const Action& a) {
    const auto sig = condition_signatures(a);
    std::map<uint64_t, StateSet> classes;
    for (uint32_t s = 0; s < sig.size(); ++s) {
        if (sig[s] == 0) {
            throw ValidationError("conditions do not cover state '" + a.space->name(s) + "'");
        }
        classes[sig[s]] = classes[sig[s]].with(s);
    }
    Action out{a.space, {}};
    std::vector<std::pair<StateSet, uint64_t>> ordered;
    ordered.reserve(classes.size());
    for (const auto& [signature, states] : classes) ordered.push_back({states, signature});
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [states, signature] : ordered) {
        for (size_t i = 0; i < a.branches.size(); ++i) {
            if (signature >> i & 1) {
                auto branch = a.branches[i];
                branch.condition = states;
                out.branches.push_back(std::move(branch));
            }
        }
    }
    return out;
}

// Rows of the instantiation system: one per distinct condition signature,
// requiring the probabilities of the branches in that signature to sum to 1.
lp::Matrix signature_rows(const AbstractAction& a) {
    const auto sig = condition_signatures(a);
    std::map<uint64_t, bool> seen;
    lp::Matrix rows;
    for (uint32_t s = 0; s < sig.size(); ++s) {
        if (sig[s] == 0 || seen[sig[s]]) continue;
        seen[sig[s]] = true;
        lp::Vector row(a.branches.size(), Rational(0));
        for (size_t i = 0; i < a.branches.size(); ++i) {
            if (sig[s] >> i & 1) row[i] = Rational(1);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

ValidationReport validate_primitive(const PrimitiveAction& a) {
    ValidationReport report;
    if (a.branches.empty()) {
        report.issues.push_back({"action", "action must have at least one branch"});
        return report;
    }
    for (size_t i = 0; i < a.branches.size(); ++i) {
        const auto& br = a.branches[i];
        if (br.prob.is_negative() || Rational(1) < br.prob) {
            report.issues.push_back({"branch " + std::to_string(i),
                                     "probability " + br.prob.str() + " outside [0,1]"});
        }
    }
    report_uncovered(a, report);
    for (uint32_t s = 0; s < a.space->size(); ++s) {
        Rational sum;
        bool covered = false;
        for (const auto& br : a.branches) {
            if (br.condition.contains(s)) {
                sum += br.prob;
                covered = true;
            }
        }
        if (covered && sum != Rational(1)) {
            report.issues.push_back({"state '" + a.space->name(s) + "'",
                                     "probabilities reaching this state sum to " + sum.str() +
                                         " (must be 1)"});
        }
    }
    return report;
}

Distribution apply_primitive_state(const PrimitiveAction& a, uint32_t b) {
    std::vector<Rational> mass(a.space->size(), Rational(0));
    for (const auto& br : a.branches) {
        if (br.condition.contains(b)) mass[br.effect.apply(b)] += br.prob;
    }
    return Distribution(a.space, std::move(mass));
}

Distribution apply_primitive_dist(const PrimitiveAction& a, const Distribution& p) {
    std::vector<Rational> mass(a.space->size(), Rational(0));
    for (uint32_t b = 0; b < a.space->size(); ++b) {
        if (p.mass(b).is_zero()) continue;
        const Distribution image = apply_primitive_state(a, b);
        for (uint32_t s = 0; s < mass.size(); ++s) {
            if (!image.mass(s).is_zero()) mass[s] += p.mass(b) * image.mass(s);
        }
    }
    return Distribution::unchecked(a.space, std::move(mass));
}

PrimitiveAction normalize_conditions(const PrimitiveAction& a) { return normalize_impl(a); }
AbstractAction normalize_conditions(const AbstractAction& a) { return normalize_impl(a); }

bool effect_instantiates(const PrimitiveEffect& e, const AbstractEffect& abstract) {
    for (uint32_t s = 0; s < e.map.size(); ++s) {
        if (!abstract.map[s].contains(e.map[s])) return false;
    }
    return true;
}

bool action_instantiates(const PrimitiveAction& concrete, const AbstractAction& abstract) {
    if (concrete.branches.size() != abstract.branches.size()) return false;
    for (size_t i = 0; i < concrete.branches.size(); ++i) {
        const auto& c = concrete.branches[i];
        const auto& a = abstract.branches[i];
        if (c.condition != a.condition) return false;
        if (c.prob < a.prob.lo() || a.prob.hi() < c.prob) return false;
        if (!effect_instantiates(c.effect, a.effect)) return false;
    }
    return validate_primitive(concrete).ok();
}

ValidationReport validate_abstract(const AbstractAction& a) {
    ValidationReport report;
    if (a.branches.empty()) {
        report.issues.push_back({"action", "action must have at least one branch"});
        return report;
    }
    for (size_t i = 0; i < a.branches.size(); ++i) {
        for (uint32_t s = 0; s < a.space->size(); ++s) {
            if (a.branches[i].effect.map[s].empty()) {
                report.issues.push_back({"branch " + std::to_string(i),
                                         "effect image of state '" + a.space->name(s) +
                                             "' must be nonempty"});
            }
        }
    }
    report_uncovered(a, report);
    if (!report.ok()) return report;

    const lp::Matrix rows = signature_rows(a);
    const lp::Vector ones(rows.size(), Rational(1));
    lp::Vector lo, hi;
    lo.reserve(a.branches.size());
    hi.reserve(a.branches.size());
    for (const auto& br : a.branches) {
        lo.push_back(br.prob.lo());
        hi.push_back(br.prob.hi());
    }
    if (!lp::feasible_box(rows, ones, lo, hi)) {
        report.issues.push_back(
            {"action",
             "no probability assignment satisfies the branch intervals "
             "(the action has no instantiation)"});
    }
    return report;
}

PrimitiveAction sample_instantiation(const AbstractAction& a, Rng& rng) {
    const auto report = validate_abstract(a);
    if (!report.ok()) {
        throw ValidationError("cannot instantiate: " + report.str());
    }
    const lp::Matrix rows = signature_rows(a);
    const lp::Vector ones(rows.size(), Rational(1));
    lp::Vector lo, hi;
    for (const auto& br : a.branches) {
        lo.push_back(br.prob.lo());
        hi.push_back(br.prob.hi());
    }

    // vertices of the probability polytope via random linear objectives
    const size_t picks = 1 + rng.below(2);
    std::vector<lp::Vector> vertices;
    for (size_t k = 0; k < picks; ++k) {
        lp::Vector cost(a.branches.size());
        for (auto& c : cost) {
            c = Rational(static_cast<long>(rng.below(19)) - 9);
        }
        const auto sol = lp::solve_box(rows, ones, cost, lo, hi);
        assert(sol.status == lp::Status::Optimal);
        vertices.push_back(sol.x);
    }
    std::vector<Interval> unit(vertices.size(), Interval::unit());
    const auto mix = sample_affine_weights(unit, rng);

    PrimitiveAction out{a.space, {}};
    out.branches.reserve(a.branches.size());
    for (size_t i = 0; i < a.branches.size(); ++i) {
        Rational p;
        for (size_t k = 0; k < vertices.size(); ++k) p += mix[k] * vertices[k][i];
        std::vector<uint32_t> map(a.space->size());
        for (uint32_t s = 0; s < map.size(); ++s) {
            const auto choices = a.branches[i].effect.map[s].states();
            map[s] = choices[rng.below(choices.size())];
        }
        out.branches.push_back(
            {a.branches[i].condition, std::move(p), {a.space, std::move(map)}});
    }
    assert(action_instantiates(out, a));
    return out;
}

AbstractEffect effect_union(const AbstractEffect& a, const AbstractEffect& b) {
    if (!same_space(a.space, b.space)) throw Error("effect union across state spaces");
    std::vector<StateSet> map(a.map.size());
    for (uint32_t s = 0; s < map.size(); ++s) map[s] = a.map[s].unite(b.map[s]);
    return {a.space, std::move(map)};
}

AbstractEffect effect_compose(const AbstractEffect& first, const AbstractEffect& second) {
    if (!same_space(first.space, second.space)) throw Error("effect composition across state spaces");
    std::vector<StateSet> map(first.map.size());
    for (uint32_t s = 0; s < map.size(); ++s) map[s] = second.apply_set(first.map[s]);
    return {first.space, std::move(map)};
}

AbstractAction to_abstract(const PrimitiveAction& a) {
    AbstractAction out{a.space, {}};
    out.branches.reserve(a.branches.size());
    for (const auto& br : a.branches) {
        out.branches.push_back(
            {br.condition, Interval::point(br.prob), AbstractEffect::lift(br.effect)});
    }
    return out;
}

}  // namespace affine
