#pragma once

#include "errors.hpp"
#include "rational.hpp"

namespace affine {

/// Closed subinterval of [0,1]: branch weights and abstract branch probabilities.
class Interval {
public:
    Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_.is_negative() || hi_ < lo_ || Rational(1) < hi_) {
            throw ValidationError("interval [" + lo_.str() + ", " + hi_.str() +
                                  "] is not a closed subinterval of [0,1]");
        }
    }
    static Interval point(const Rational& q) { return {q, q}; }
    static Interval unit() { return {Rational(0), Rational(1)}; }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    bool is_point() const { return lo_ == hi_; }
    std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }
    friend std::strong_ordering operator<=>(const Interval& a, const Interval& b) {
        if (auto c = a.lo_ <=> b.lo_; c != 0) return c;
        return a.hi_ <=> b.hi_;
    }

private:
    Rational lo_, hi_;
};

/// Endpoint sums, each clamped into [0,1].
inline Interval interval_add(const Interval& a, const Interval& b) {
    const Rational one(1);
    return {rat_min(a.lo() + b.lo(), one), rat_min(a.hi() + b.hi(), one)};
}

inline Interval interval_mul(const Interval& a, const Interval& b) {
    return {a.lo() * b.lo(), a.hi() * b.hi()};
}

inline bool interval_subsumes(const Interval& outer, const Interval& inner) {
    return outer.lo() <= inner.lo() && inner.hi() <= outer.hi();
}

/// Smallest interval containing both.
inline Interval interval_hull(const Interval& a, const Interval& b) {
    return {rat_min(a.lo(), b.lo()), rat_max(a.hi(), b.hi())};
}

}  // namespace affine
