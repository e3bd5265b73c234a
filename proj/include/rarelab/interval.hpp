#pragma once

#include <cmath>
#include <vector>

namespace rarelab {

// Subinterval of [0,1] with explicit endpoint membership, so half-open
// partition conventions survive set algebra exactly.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = false;
    bool hi_closed = false;

    bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
    double length() const { return empty() ? 0.0 : hi - lo; }

    bool contains(double x) const {
        if (x < lo || x > hi) return false;
        if (x == lo && !lo_closed) return false;
        if (x == hi && !hi_closed) return false;
        return true;
    }

    // subset test with exact endpoint comparisons
    bool subset_of(const Interval& other) const {
        if (empty()) return true;
        if (lo < other.lo || (lo == other.lo && lo_closed && !other.lo_closed)) return false;
        if (hi > other.hi || (hi == other.hi && hi_closed && !other.hi_closed)) return false;
        return true;
    }

    Interval intersect(const Interval& other) const {
        Interval r;
        if (lo > other.lo) {
            r.lo = lo;
            r.lo_closed = lo_closed;
        } else if (lo < other.lo) {
            r.lo = other.lo;
            r.lo_closed = other.lo_closed;
        } else {
            r.lo = lo;
            r.lo_closed = lo_closed && other.lo_closed;
        }
        if (hi < other.hi) {
            r.hi = hi;
            r.hi_closed = hi_closed;
        } else if (hi > other.hi) {
            r.hi = other.hi;
            r.hi_closed = other.hi_closed;
        } else {
            r.hi = hi;
            r.hi_closed = hi_closed && other.hi_closed;
        }
        if (r.lo > r.hi) {
            r = Interval{};
        }
        return r;
    }

    bool overlaps(const Interval& other) const { return !intersect(other).empty(); }

    static Interval closed(double a, double b) { return {a, b, true, true}; }
    static Interval open(double a, double b) { return {a, b, false, false}; }
    static Interval left_closed(double a, double b) { return {a, b, true, false}; }
    static Interval right_closed(double a, double b) { return {a, b, false, true}; }
};

} // namespace rarelab
