#include "domain.hpp"

#include "errors.hpp"

#include <fstream>
#include <sstream>

namespace affine::io {

using nlohmann::json;

namespace {

// Builds a DOM while capturing non-integer number literals as strings; the
// default parser would round them through double.
struct ExactSax {
    json root;
    bool have_root = false;
    std::vector<json*> stack;
    std::string key_name;
    bool have_key = false;

    json* place(json value) {
        if (stack.empty()) {
            root = std::move(value);
            have_root = true;
            return &root;
        }
        json& top = *stack.back();
        if (top.is_object()) {
            auto& slot = top[key_name];
            slot = std::move(value);
            have_key = false;
            return &slot;
        }
        top.push_back(std::move(value));
        return &top.back();
    }

    bool null() { place(nullptr); return true; }
    bool boolean(bool v) { place(v); return true; }
    bool number_integer(json::number_integer_t v) { place(v); return true; }
    bool number_unsigned(json::number_unsigned_t v) { place(v); return true; }
    bool number_float(json::number_float_t, const std::string& literal) {
        place(json(literal));
        return true;
    }
    bool string(std::string& v) { place(v); return true; }
    bool binary(json::binary_t& v) { place(json::binary(v)); return true; }
    bool start_object(std::size_t) {
        stack.push_back(place(json::object()));
        return true;
    }
    bool key(std::string& v) {
        key_name = v;
        have_key = true;
        return true;
    }
    bool end_object() { stack.pop_back(); return true; }
    bool start_array(std::size_t) {
        stack.push_back(place(json::array()));
        return true;
    }
    bool end_array() { stack.pop_back(); return true; }
    bool parse_error(std::size_t position, const std::string&,
                     const nlohmann::detail::exception& ex) {
        throw ParseError("at byte " + std::to_string(position) + ": " + ex.what());
    }
};

[[noreturn]] void bad(const std::string& where, const std::string& message) {
    throw ValidationError(where + ": " + message);
}

uint32_t state_from_json(const StateSpacePtr& space, const json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a state name string");
    const auto idx = space->index(j.get<std::string>());
    if (!idx) bad(where, "unknown state '" + j.get<std::string>() + "'");
    return *idx;
}

StateSet set_from_json(const StateSpacePtr& space, const json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of state names");
    StateSet out;
    for (const auto& item : j) out = out.with(state_from_json(space, item, where));
    return out;
}

json set_to_json(const StateSpacePtr& space, StateSet set) {
    json out = json::array();
    for (uint32_t s : set.states()) out.push_back(space->name(s));
    return out;
}

Interval interval_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) bad(where, "expected an interval [lo, hi]");
    try {
        return {rational_from_json(j[0], where), rational_from_json(j[1], where)};
    } catch (const ValidationError& e) {
        bad(where, e.what());
    }
}

}  // namespace

json parse_exact_json(const std::string& text) {
    ExactSax sax;
    json::sax_parse(text, &sax);
    if (!sax.have_root) throw ParseError("empty document");
    return std::move(sax.root);
}

Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<int64_t>()));
    if (j.is_number_unsigned()) return Rational(static_cast<long>(j.get<uint64_t>()));
    if (j.is_string()) {
        if (auto r = Rational::parse(j.get<std::string>())) return *r;
        bad(where, "cannot read '" + j.get<std::string>() + "' as an exact number");
    }
    if (j.is_number_float()) {
        bad(where, "inexact float slipped past the exact parser");
    }
    bad(where, "expected a number, got " + std::string(j.type_name()));
}

json interval_to_json(const Interval& q) { return json::array({q.lo().str(), q.hi().str()}); }

json tree_to_json(const AffineTree& t) {
    switch (t.kind()) {
        case AffineTree::Kind::State:
            return {{"state", t.space()->name(t.leaf_state())}};
        case AffineTree::Kind::Set:
            return {{"ch", set_to_json(t.space(), t.leaf_set())}};
        case AffineTree::Kind::Finite:
            return {{"finite", set_to_json(t.space(), t.leaf_set())}};
        case AffineTree::Kind::Star:
            break;
    }
    json branches = json::array();
    for (const auto& br : t.branches()) {
        branches.push_back({{"interval", interval_to_json(br.weight)},
                            {"child", tree_to_json(br.child)}});
    }
    return {{"star", std::move(branches)}};
}

AffineTree tree_from_json(const StateSpacePtr& space, const json& j, const std::string& where) {
    if (!j.is_object() || j.size() != 1) {
        bad(where, "expected a world object with exactly one of: state, ch, star, dist, "
                   "belief, ima");
    }
    if (j.contains("state")) {
        return AffineTree::state(space, state_from_json(space, j["state"], where));
    }
    if (j.contains("ch")) {
        const StateSet set = set_from_json(space, j["ch"], where);
        if (set.empty()) bad(where, "leaf set must be nonempty");
        return AffineTree::set(space, set);
    }
    if (j.contains("star")) {
        const json& raw = j["star"];
        if (!raw.is_array() || raw.empty()) bad(where, "star needs a nonempty branch array");
        std::vector<AffineTree::Branch> branches;
        branches.reserve(raw.size());
        for (size_t i = 0; i < raw.size(); ++i) {
            const std::string branch_where = where + ".star[" + std::to_string(i) + "]";
            if (!raw[i].is_object() || !raw[i].contains("interval") ||
                !raw[i].contains("child")) {
                bad(branch_where, "branch needs 'interval' and 'child'");
            }
            branches.push_back({interval_from_json(raw[i]["interval"], branch_where),
                                tree_from_json(space, raw[i]["child"], branch_where)});
        }
        return AffineTree::star(space, std::move(branches));
    }
    if (j.contains("dist")) {
        const json& raw = j["dist"];
        if (!raw.is_object()) bad(where, "dist needs an object of state masses");
        std::vector<Rational> mass(space->size(), Rational(0));
        for (const auto& [name, value] : raw.items()) {
            const auto idx = space->index(name);
            if (!idx) bad(where, "unknown state '" + name + "'");
            mass[*idx] = rational_from_json(value, where + ".dist." + name);
        }
        try {
            return from_distribution(Distribution(space, std::move(mass)));
        } catch (const ValidationError& e) {
            bad(where, e.what());
        }
    }
    if (j.contains("belief")) {
        const json& raw = j["belief"];
        if (!raw.is_array()) bad(where, "belief needs an array of focal elements");
        MassAssignment m;
        for (const auto& focal : raw) {
            if (!focal.is_object() || !focal.contains("set") || !focal.contains("mass")) {
                bad(where, "each focal element needs 'set' and 'mass'");
            }
            m.focals.push_back({set_from_json(space, focal["set"], where),
                                rational_from_json(focal["mass"], where)});
        }
        try {
            return from_belief(space, m);
        } catch (const ValidationError& e) {
            bad(where, e.what());
        }
    }
    if (j.contains("ima")) {
        const json& raw = j["ima"];
        if (!raw.is_array()) bad(where, "ima needs an array of focal elements");
        IntervalMassAssignment m;
        for (const auto& focal : raw) {
            if (!focal.is_object() || !focal.contains("set") || !focal.contains("interval")) {
                bad(where, "each focal element needs 'set' and 'interval'");
            }
            m.focals.push_back({set_from_json(space, focal["set"], where),
                                interval_from_json(focal["interval"], where)});
        }
        try {
            return from_ima(space, m);
        } catch (const ValidationError& e) {
            bad(where, e.what());
        }
    }
    bad(where, "unknown world form '" + j.begin().key() + "'");
}

namespace {

json primitive_action_to_json(const PrimitiveAction& a) {
    json branches = json::array();
    for (const auto& br : a.branches) {
        json effect = json::object();
        for (uint32_t s = 0; s < a.space->size(); ++s) {
            effect[a.space->name(s)] = a.space->name(br.effect.apply(s));
        }
        branches.push_back({{"condition", set_to_json(a.space, br.condition)},
                            {"prob", br.prob.str()},
                            {"effect", std::move(effect)}});
    }
    return branches;
}

json abstract_action_to_json(const AbstractAction& a) {
    json branches = json::array();
    for (const auto& br : a.branches) {
        json effect = json::object();
        for (uint32_t s = 0; s < a.space->size(); ++s) {
            effect[a.space->name(s)] = set_to_json(a.space, br.effect.apply(s));
        }
        branches.push_back({{"condition", set_to_json(a.space, br.condition)},
                            {"prob", interval_to_json(br.prob)},
                            {"effect", std::move(effect)}});
    }
    return branches;
}

}  // namespace

json action_to_json(const NamedAction& a) {
    if (std::holds_alternative<PrimitiveAction>(a)) {
        return primitive_action_to_json(std::get<PrimitiveAction>(a));
    }
    return abstract_action_to_json(std::get<AbstractAction>(a));
}

NamedAction action_from_json(const StateSpacePtr& space, const json& branches,
                             const std::string& where) {
    if (!branches.is_array() || branches.empty()) {
        bad(where, "expected a nonempty array of branches");
    }
    // scalar probabilities and singleton effect targets everywhere -> primitive
    bool primitive = true;
    for (const auto& br : branches) {
        if (!br.is_object() || !br.contains("condition") || !br.contains("prob") ||
            !br.contains("effect")) {
            bad(where, "each branch needs 'condition', 'prob' and 'effect'");
        }
        if (br["prob"].is_array()) primitive = false;
        if (!br["effect"].is_object()) bad(where, "effect must map states to targets");
        for (const auto& [from, to] : br["effect"].items()) {
            (void)from;
            if (to.is_array()) primitive = false;
        }
    }

    auto read_effect_targets = [&](const json& effect, const std::string& branch_where) {
        std::vector<StateSet> map(space->size());
        for (const auto& [from, to] : effect.items()) {
            const auto idx = space->index(from);
            if (!idx) bad(branch_where, "unknown state '" + from + "' in effect");
            map[*idx] = to.is_array() ? set_from_json(space, to, branch_where)
                                      : StateSet::single(state_from_json(space, to, branch_where));
        }
        for (uint32_t s = 0; s < space->size(); ++s) {
            if (map[s].empty()) {
                bad(branch_where,
                    "effect must map every state ('" + space->name(s) + "' is missing)");
            }
        }
        return map;
    };

    if (primitive) {
        PrimitiveAction out{space, {}};
        for (size_t i = 0; i < branches.size(); ++i) {
            const std::string branch_where = where + "[" + std::to_string(i) + "]";
            const json& br = branches[i];
            auto sets = read_effect_targets(br["effect"], branch_where);
            std::vector<uint32_t> map(space->size());
            for (uint32_t s = 0; s < space->size(); ++s) map[s] = sets[s].first();
            out.branches.push_back({set_from_json(space, br["condition"], branch_where),
                                    rational_from_json(br["prob"], branch_where),
                                    {space, std::move(map)}});
        }
        return out;
    }
    AbstractAction out{space, {}};
    for (size_t i = 0; i < branches.size(); ++i) {
        const std::string branch_where = where + "[" + std::to_string(i) + "]";
        const json& br = branches[i];
        Interval prob = br["prob"].is_array()
                            ? interval_from_json(br["prob"], branch_where)
                            : Interval::point(rational_from_json(br["prob"], branch_where));
        out.branches.push_back({set_from_json(space, br["condition"], branch_where),
                                std::move(prob),
                                {space, read_effect_targets(br["effect"], branch_where)}});
    }
    return out;
}

AbstractAction as_abstract(const NamedAction& a) {
    if (std::holds_alternative<AbstractAction>(a)) return std::get<AbstractAction>(a);
    return to_abstract(std::get<PrimitiveAction>(a));
}

Domain load_domain_json(const std::string& text) {
    const json doc = parse_exact_json(text);
    if (!doc.is_object()) throw ValidationError("domain document must be an object");
    if (!doc.contains("states")) throw ValidationError("domain needs a 'states' array");
    if (!doc["states"].is_array()) throw ValidationError("'states' must be an array of names");

    Domain d;
    std::vector<std::string> names;
    for (const auto& name : doc["states"]) {
        if (!name.is_string()) throw ValidationError("'states' must be an array of names");
        names.push_back(name.get<std::string>());
    }
    d.space = StateSpace::make(std::move(names));

    if (doc.contains("utility")) {
        if (!doc["utility"].is_object()) throw ValidationError("'utility' must be an object");
        std::vector<Rational> values(d.space->size());
        std::vector<bool> seen(d.space->size(), false);
        for (const auto& [name, value] : doc["utility"].items()) {
            const auto idx = d.space->index(name);
            if (!idx) bad("utility", "unknown state '" + name + "'");
            values[*idx] = rational_from_json(value, "utility." + name);
            seen[*idx] = true;
        }
        for (uint32_t s = 0; s < d.space->size(); ++s) {
            if (!seen[s]) bad("utility", "missing value for state '" + d.space->name(s) + "'");
        }
        d.utility.emplace(d.space, std::move(values));
    }

    if (doc.contains("actions")) {
        if (!doc["actions"].is_object()) throw ValidationError("'actions' must be an object");
        for (const auto& [name, branches] : doc["actions"].items()) {
            NamedAction action = action_from_json(d.space, branches, "action '" + name + "'");
            const ValidationReport report =
                std::holds_alternative<PrimitiveAction>(action)
                    ? validate_primitive(std::get<PrimitiveAction>(action))
                    : validate_abstract(std::get<AbstractAction>(action));
            if (!report.ok()) {
                throw ValidationError("action '" + name + "': " + report.str());
            }
            d.actions.emplace(name, std::move(action));
        }
    }

    if (doc.contains("worlds")) {
        if (!doc["worlds"].is_object()) throw ValidationError("'worlds' must be an object");
        for (const auto& [name, body] : doc["worlds"].items()) {
            AffineTree tree = tree_from_json(d.space, body, "world '" + name + "'");
            const ValidationReport report = validate(tree);
            if (!report.ok()) {
                throw ValidationError("world '" + name + "': " + report.str());
            }
            d.worlds.emplace(name, std::move(tree));
        }
    }

    if (doc.contains("plans")) {
        if (!doc["plans"].is_object()) throw ValidationError("'plans' must be an object");
        for (const auto& [name, steps] : doc["plans"].items()) {
            if (!steps.is_array() || steps.empty()) {
                bad("plan '" + name + "'", "must be a nonempty array of action names");
            }
            std::vector<std::string> plan;
            for (const auto& step : steps) {
                if (!step.is_string()) {
                    bad("plan '" + name + "'", "steps must be action names");
                }
                const auto action = step.get<std::string>();
                if (!d.actions.contains(action)) {
                    bad("plan '" + name + "'", "references unknown action '" + action + "'");
                }
                plan.push_back(action);
            }
            d.plans.emplace(name, std::move(plan));
        }
    }

    for (const auto& key : doc.items()) {
        static const std::set<std::string> known{"states", "utility", "actions", "worlds",
                                                 "plans"};
        if (!known.contains(key.key())) {
            throw ValidationError("unknown top-level field '" + key.key() + "'");
        }
    }
    return d;
}

Domain load_domain_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_domain_json(buffer.str());
}

json emit_domain(const Domain& d) {
    json doc;
    doc["states"] = json::array();
    for (const auto& name : d.space->names()) doc["states"].push_back(name);
    if (d.utility) {
        json utility = json::object();
        for (uint32_t s = 0; s < d.space->size(); ++s) {
            utility[d.space->name(s)] = d.utility->value(s).str();
        }
        doc["utility"] = std::move(utility);
    }
    if (!d.actions.empty()) {
        json actions = json::object();
        for (const auto& [name, action] : d.actions) actions[name] = action_to_json(action);
        doc["actions"] = std::move(actions);
    }
    if (!d.worlds.empty()) {
        json worlds = json::object();
        for (const auto& [name, world] : d.worlds) worlds[name] = tree_to_json(world);
        doc["worlds"] = std::move(worlds);
    }
    if (!d.plans.empty()) {
        json plans = json::object();
        for (const auto& [name, steps] : d.plans) plans[name] = steps;
        doc["plans"] = std::move(plans);
    }
    return doc;
}

}  // namespace affine::io
