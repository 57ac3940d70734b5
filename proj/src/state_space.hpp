#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace affine {

class StateSpace;
using StateSpacePtr = std::shared_ptr<const StateSpace>;

/// Subset of a state space, packed as a bitmask. Spaces are capped at 64 states.
struct StateSet {
    uint64_t bits = 0;

    static StateSet single(uint32_t s) { return {uint64_t{1} << s}; }
    static StateSet full(size_t n) {
        return {n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1};
    }

    bool contains(uint32_t s) const { return (bits >> s) & 1; }
    bool empty() const { return bits == 0; }
    size_t count() const { return static_cast<size_t>(std::popcount(bits)); }
    bool subset_of(StateSet o) const { return (bits & ~o.bits) == 0; }
    bool intersects(StateSet o) const { return (bits & o.bits) != 0; }
    StateSet unite(StateSet o) const { return {bits | o.bits}; }
    StateSet intersect(StateSet o) const { return {bits & o.bits}; }
    StateSet with(uint32_t s) const { return {bits | (uint64_t{1} << s)}; }

    /// Member states in ascending index order.
    std::vector<uint32_t> states() const {
        std::vector<uint32_t> out;
        out.reserve(count());
        for (uint64_t b = bits; b != 0; b &= b - 1) {
            out.push_back(static_cast<uint32_t>(std::countr_zero(b)));
        }
        return out;
    }
    uint32_t first() const { return static_cast<uint32_t>(std::countr_zero(bits)); }

    auto operator<=>(const StateSet&) const = default;
};

/// Ordered, immutable list of state names. The construction order is the canonical
/// order used for serialization and tie-breaking throughout.
class StateSpace {
public:
    /// Throws ValidationError on empty list, duplicate or empty names, or > 64 states.
    static StateSpacePtr make(std::vector<std::string> names);

    size_t size() const { return names_.size(); }
    const std::string& name(uint32_t i) const { return names_[i]; }
    std::optional<uint32_t> index(std::string_view name) const;
    StateSet all() const { return StateSet::full(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }

private:
    StateSpace() = default;
    std::vector<std::string> names_;
    std::map<std::string, uint32_t, std::less<>> index_;
};

/// Same object or same name sequence.
bool same_space(const StateSpacePtr& a, const StateSpacePtr& b);

}  // namespace affine
