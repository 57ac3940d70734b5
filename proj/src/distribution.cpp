#include "distribution.hpp"

#include "errors.hpp"

#include <cassert>

namespace affine {
namespace {

void check_total(const StateSpacePtr& space, const std::vector<Rational>& values,
                 const char* what) {
    if (!space) throw Error(std::string(what) + " without a state space");
    if (values.size() != space->size()) {
        throw ValidationError(std::string(what) + " must assign a value to every state");
    }
}

}  // namespace

Distribution::Distribution(StateSpacePtr space, std::vector<Rational> mass) {
    check_total(space, mass, "distribution");
    Rational total;
    for (const auto& m : mass) {
        if (m.is_negative()) throw ValidationError("distribution mass must be nonnegative");
        total += m;
    }
    if (total != Rational(1)) {
        throw ValidationError("distribution masses sum to " + total.str() + " (must be 1)");
    }
    space_ = std::move(space);
    mass_ = std::move(mass);
}

Distribution Distribution::unchecked(StateSpacePtr space, std::vector<Rational> mass) {
#ifndef NDEBUG
    return Distribution(std::move(space), std::move(mass));
#else
    Distribution d;
    d.space_ = std::move(space);
    d.mass_ = std::move(mass);
    return d;
#endif
}

Distribution Distribution::point(StateSpacePtr space, uint32_t s) {
    std::vector<Rational> mass(space->size(), Rational(0));
    mass[s] = Rational(1);
    return unchecked(std::move(space), std::move(mass));
}

Rational Distribution::mass_of(StateSet b) const {
    Rational total;
    for (uint32_t s : b.states()) total += mass_[s];
    return total;
}

StateSet Distribution::support() const {
    StateSet out;
    for (uint32_t s = 0; s < mass_.size(); ++s) {
        if (!mass_[s].is_zero()) out = out.with(s);
    }
    return out;
}

std::string Distribution::str() const {
    std::string out = "{";
    bool first = true;
    for (uint32_t s = 0; s < mass_.size(); ++s) {
        if (mass_[s].is_zero()) continue;
        if (!first) out += ", ";
        first = false;
        out += space_->name(s) + ": " + mass_[s].str();
    }
    return out + "}";
}

std::strong_ordering operator<=>(const Distribution& a, const Distribution& b) {
    assert(same_space(a.space_, b.space_));
    for (size_t i = 0; i < a.mass_.size(); ++i) {
        if (auto c = a.mass_[i] <=> b.mass_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

Distribution dist_mix(std::span<const Rational> weights, std::span<const Distribution> dists) {
    if (weights.empty() || weights.size() != dists.size()) {
        throw ValidationError("mixture needs one weight per distribution");
    }
    Rational total;
    for (const auto& w : weights) {
        if (w.is_negative() || Rational(1) < w) {
            throw ValidationError("affine-vector violation: weight " + w.str() +
                                  " outside [0,1]");
        }
        total += w;
    }
    if (total != Rational(1)) {
        throw ValidationError("affine-vector violation: weights sum to " + total.str());
    }
    const StateSpacePtr& space = dists.front().space();
    std::vector<Rational> mass(space->size(), Rational(0));
    for (size_t i = 0; i < weights.size(); ++i) {
        if (weights[i].is_zero()) continue;
        for (uint32_t s = 0; s < mass.size(); ++s) {
            mass[s] += weights[i] * dists[i].mass(s);
        }
    }
    return Distribution::unchecked(space, std::move(mass));
}

UtilityFunction::UtilityFunction(StateSpacePtr space, std::vector<Rational> value) {
    check_total(space, value, "utility function");
    space_ = std::move(space);
    value_ = std::move(value);
}

Rational UtilityFunction::min_over(StateSet b) const {
    const auto states = b.states();
    Rational best = value_[states.front()];
    for (uint32_t s : states) best = rat_min(best, value_[s]);
    return best;
}

Rational UtilityFunction::max_over(StateSet b) const {
    const auto states = b.states();
    Rational best = value_[states.front()];
    for (uint32_t s : states) best = rat_max(best, value_[s]);
    return best;
}

Rational UtilityFunction::expected(const Distribution& p) const {
    Rational total;
    for (uint32_t s = 0; s < value_.size(); ++s) {
        if (!p.mass(s).is_zero()) total += p.mass(s) * value_[s];
    }
    return total;
}

EuInterval::EuInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) {
        throw ValidationError("expected-utility interval with lower bound above upper");
    }
}

}  // namespace affine
