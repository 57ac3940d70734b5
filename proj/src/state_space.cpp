#include "state_space.hpp"

#include "errors.hpp"

namespace affine {

StateSpacePtr StateSpace::make(std::vector<std::string> names) {
    if (names.empty()) throw ValidationError("state space must be nonempty");
    if (names.size() > 64) throw ValidationError("state space exceeds the 64-state cap");
    auto space = std::shared_ptr<StateSpace>(new StateSpace());
    space->names_ = std::move(names);
    for (uint32_t i = 0; i < space->names_.size(); ++i) {
        if (space->names_[i].empty()) throw ValidationError("state names must be nonempty");
        auto [it, fresh] = space->index_.emplace(space->names_[i], i);
        if (!fresh) throw ValidationError("duplicate state name '" + space->names_[i] + "'");
    }
    return space;
}

std::optional<uint32_t> StateSpace::index(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool same_space(const StateSpacePtr& a, const StateSpacePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->names() == b->names();
}

}  // namespace affine
