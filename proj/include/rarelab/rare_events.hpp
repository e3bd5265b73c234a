#pragma once

#include <functional>
#include <vector>

#include "rarelab/dynsys.hpp"
#include "rarelab/interval.hpp"

namespace rarelab {

enum class MassKind { Exact, Estimated };

// A rare event: finite union of disjoint subintervals of [0,1] with its
// mu-measure, exact where the system has one, estimated otherwise.
struct IntervalUnion {
    std::vector<Interval> parts; // disjoint, sorted by lo
    double mu_mass = 0.0;
    MassKind mass_kind = MassKind::Exact;
    double std_err = 0.0;

    bool contains(double x) const {
        for (const auto& p : parts)
            if (p.contains(x)) return true;
        return false;
    }
    bool single() const { return parts.size() == 1; }
    double total_length() const {
        double acc = 0.0;
        for (const auto& p : parts) acc += p.length();
        return acc;
    }
    bool subset_of(const IntervalUnion& other) const;
};

// exact mass from the system's invariant measure
IntervalUnion make_interval_union(const SystemSpec& sys, std::vector<Interval> parts);
IntervalUnion make_estimated_union(std::vector<Interval> parts, double mass, double std_err);

// Symbolic itinerary of a point: finitely many head symbols, then a cycle
// repeated forever. Exact for every prefix length, unlike float itineraries.
struct Itinerary {
    std::vector<long> head;
    std::vector<long> cycle;

    long symbol(std::size_t i) const {
        if (i < head.size()) return head[i];
        return cycle[(i - head.size()) % cycle.size()];
    }
    std::vector<long> prefix(std::size_t n) const {
        std::vector<long> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = symbol(i);
        return w;
    }
};

struct RareFamilySpec {
    enum class Kind {
        DigitTail,         // Gauss: A_l = {a >= l} = (0, 1/l]
        CylinderAtPoint,   // A_l = xi_l(x*), x* given by its itinerary
        ShrinkingInterval, // A_l = [x* - r_l, x* + r_l], r_l = radius_scale / l
        UnionOfRankOne,    // Gauss: digits in [l, floor(hi_factor l)]
    };

    Kind kind = Kind::DigitTail;
    SystemSpec system = SystemSpec::gauss();
    Itinerary itinerary;                              // CylinderAtPoint
    double center = 0.0;                              // ShrinkingInterval
    double radius_scale = 0.25;                       // r_l = radius_scale / l
    double hi_factor = 2.0;                           // UnionOfRankOne
    std::function<double(const Interval&)> measure_fn; // overrides exact measure
};

IntervalUnion make_target(const RareFamilySpec& fam, long l);

// Partition of the UnionOfRankOne band [l, floor(hi_factor l)] into digit
// sub-bands at the given factors (ascending, in (1, hi_factor)).
std::vector<IntervalUnion> digit_band_parts(const SystemSpec& sys, long l, double hi_factor,
                                            const std::vector<double>& split_factors);

// ceil of j(A) = -2 log mu(A) / -log q
long rank_of(const IntervalUnion& a, double q);

struct CylinderApproximation {
    IntervalUnion approx;   // union of rank-n cylinders contained in A
    double boundary_loss;   // mu(A \ A') from cells straddling the boundary
    double truncated_loss;  // mu(A) not examined due to the enumeration cutoff
    long parts = 0;         // maximal intervals after coalescing adjacent cells
};

// Largest union of rank-`rank` cylinders inside the single interval A.
// Cylinders fully inside A are claimed as whole subtrees (their rank-n
// descendants tile them up to a measure-zero set of branch endpoints, which
// the returned union absorbs), so only boundary cells are enumerated.
// Gauss scans toward accumulation points are truncated where a cell's
// measure drops below rel_cutoff * mu(A); skipped mass is tracked exactly.
CylinderApproximation approximate_by_cylinders(const SystemSpec& sys, const IntervalUnion& a,
                                               long rank, double rel_cutoff = 1e-15,
                                               long max_cells = 2000000);

} // namespace rarelab
