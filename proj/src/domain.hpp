#pragma once

#include "action.hpp"
#include "tree.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace affine::io {

/// Actions keep the representation they were written in; primitives are
/// promoted to abstract form on demand for projection.
using NamedAction = std::variant<PrimitiveAction, AbstractAction>;

struct Domain {
    StateSpacePtr space;
    std::optional<UtilityFunction> utility;
    std::map<std::string, NamedAction> actions;
    std::map<std::string, AffineTree> worlds;
    std::map<std::string, std::vector<std::string>> plans;
};

/// JSON parse that keeps non-integer number literals as their source text, so
/// decimals load as exact rationals (0.3 -> 3/10) instead of doubles.
nlohmann::json parse_exact_json(const std::string& text);

/// Parses and fully validates a domain document; throws ParseError on malformed
/// text and ValidationError naming the broken rule otherwise.
Domain load_domain_json(const std::string& text);
Domain load_domain_file(const std::string& path);

/// Canonical emission: sorted keys, every number as an exact "p" / "p/q" string.
/// load(emit(d)) reproduces emit(d) byte for byte.
nlohmann::json emit_domain(const Domain& d);

Rational rational_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json interval_to_json(const Interval& q);

nlohmann::json tree_to_json(const AffineTree& t);
AffineTree tree_from_json(const StateSpacePtr& space, const nlohmann::json& j,
                          const std::string& where);

nlohmann::json action_to_json(const NamedAction& a);
NamedAction action_from_json(const StateSpacePtr& space, const nlohmann::json& branches,
                             const std::string& where);

AbstractAction as_abstract(const NamedAction& a);

}  // namespace affine::io
