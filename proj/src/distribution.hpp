#pragma once

#include "interval.hpp"
#include "state_space.hpp"

#include <span>
#include <vector>

namespace affine {

/// Exact probability function over a state space: masses >= 0 summing to exactly 1.
class Distribution {
public:
    Distribution(StateSpacePtr space, std::vector<Rational> mass);
    /// Skips invariant checks in release builds; for hot paths that guarantee them.
    static Distribution unchecked(StateSpacePtr space, std::vector<Rational> mass);
    static Distribution point(StateSpacePtr space, uint32_t s);

    const StateSpacePtr& space() const { return space_; }
    const Rational& mass(uint32_t s) const { return mass_[s]; }
    const std::vector<Rational>& masses() const { return mass_; }
    Rational mass_of(StateSet b) const;
    StateSet support() const;
    std::string str() const;

    friend bool operator==(const Distribution& a, const Distribution& b) {
        return a.mass_ == b.mass_;
    }
    friend std::strong_ordering operator<=>(const Distribution& a, const Distribution& b);

private:
    Distribution() = default;
    StateSpacePtr space_;
    std::vector<Rational> mass_;
};

/// Pointwise mixture R(s) = sum_i q_i * P_i(s). Weights must be an affine vector
/// (each in [0,1], summing to 1); throws ValidationError otherwise.
Distribution dist_mix(std::span<const Rational> weights, std::span<const Distribution> dists);

/// Total utility assignment over a state space; values unrestricted in sign.
class UtilityFunction {
public:
    UtilityFunction(StateSpacePtr space, std::vector<Rational> value);
    const StateSpacePtr& space() const { return space_; }
    const Rational& value(uint32_t s) const { return value_[s]; }
    Rational min_over(StateSet b) const;
    Rational max_over(StateSet b) const;
    Rational expected(const Distribution& p) const;

private:
    StateSpacePtr space_;
    std::vector<Rational> value_;
};

/// Closed interval of expected utilities; endpoints are unbounded exact rationals.
class EuInterval {
public:
    EuInterval(Rational lo, Rational hi);
    static EuInterval point(const Rational& v) { return {v, v}; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

    friend bool operator==(const EuInterval& a, const EuInterval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    Rational lo_, hi_;
};

inline bool eui_subsumes(const EuInterval& outer, const EuInterval& inner) {
    return outer.lo() <= inner.lo() && inner.hi() <= outer.hi();
}

}  // namespace affine
