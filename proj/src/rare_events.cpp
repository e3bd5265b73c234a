#include "rarelab/rare_events.hpp"

#include <algorithm>
#include <cmath>

#include "rarelab/errors.hpp"

namespace rarelab {

bool IntervalUnion::subset_of(const IntervalUnion& other) const {
    for (const auto& p : parts) {
        bool covered = false;
        for (const auto& q : other.parts) {
            if (p.subset_of(q)) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

namespace {

void validate_parts(std::vector<Interval>& parts) {
    for (auto& p : parts) {
        if (p.empty()) throw DegenerateTarget("empty part in interval union");
        if (p.lo < 0.0 || p.hi > 1.0) throw DegenerateTarget("part outside [0,1]");
    }
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i - 1].hi > parts[i].lo ||
            (parts[i - 1].hi == parts[i].lo && parts[i - 1].hi_closed && parts[i].lo_closed))
            throw DegenerateTarget("overlapping parts in interval union");
    }
}

} // namespace

IntervalUnion make_interval_union(const SystemSpec& sys, std::vector<Interval> parts) {
    validate_parts(parts);
    IntervalUnion u;
    u.parts = std::move(parts);
    u.mass_kind = MassKind::Exact;
    for (const auto& p : u.parts) u.mu_mass += invariant_measure(sys, p);
    if (!(u.mu_mass > 0.0)) throw DegenerateTarget("target has zero measure");
    return u;
}

IntervalUnion make_estimated_union(std::vector<Interval> parts, double mass, double std_err) {
    validate_parts(parts);
    if (!(mass > 0.0)) throw DegenerateTarget("target has zero estimated measure");
    IntervalUnion u;
    u.parts = std::move(parts);
    u.mu_mass = mass;
    u.mass_kind = MassKind::Estimated;
    u.std_err = std_err;
    return u;
}

IntervalUnion make_target(const RareFamilySpec& fam, long l) {
    if (l < 1) throw std::invalid_argument("make_target: l must be >= 1");
    const SystemSpec& sys = fam.system;

    Interval iv;
    switch (fam.kind) {
        case RareFamilySpec::Kind::DigitTail: {
            if (sys.kind() != MapKind::Gauss)
                throw std::invalid_argument("DigitTail is Gauss-only");
            iv = Interval::right_closed(0.0, 1.0 / static_cast<double>(l));
            break;
        }
        case RareFamilySpec::Kind::CylinderAtPoint: {
            iv = cylinder_interval(sys, fam.itinerary.prefix(static_cast<std::size_t>(l)));
            break;
        }
        case RareFamilySpec::Kind::ShrinkingInterval: {
            const double r = fam.radius_scale / static_cast<double>(l);
            iv = Interval::closed(std::max(0.0, fam.center - r), std::min(1.0, fam.center + r));
            break;
        }
        case RareFamilySpec::Kind::UnionOfRankOne: {
            if (sys.kind() != MapKind::Gauss)
                throw std::invalid_argument("UnionOfRankOne is Gauss-only");
            const auto hi_digit = static_cast<long>(std::floor(fam.hi_factor * static_cast<double>(l)));
            if (hi_digit < l) throw DegenerateTarget("UnionOfRankOne: empty digit band");
            iv = Interval::right_closed(1.0 / (static_cast<double>(hi_digit) + 1.0),
                                        1.0 / static_cast<double>(l));
            break;
        }
    }
    if (iv.empty()) throw DegenerateTarget("target interval is empty");

    if (fam.measure_fn) {
        const double mass = fam.measure_fn(iv);
        return make_estimated_union({iv}, mass, 0.0);
    }
    return make_interval_union(sys, {iv});
}

std::vector<IntervalUnion> digit_band_parts(const SystemSpec& sys, long l, double hi_factor,
                                            const std::vector<double>& split_factors) {
    if (sys.kind() != MapKind::Gauss)
        throw std::invalid_argument("digit_band_parts is Gauss-only");
    std::vector<long> cuts{l};
    for (double f : split_factors) {
        const auto d = static_cast<long>(std::floor(f * static_cast<double>(l)));
        if (d <= cuts.back()) throw std::invalid_argument("digit_band_parts: cuts not increasing");
        cuts.push_back(d);
    }
    const auto hi_digit = static_cast<long>(std::floor(hi_factor * static_cast<double>(l)));
    if (hi_digit < cuts.back()) throw std::invalid_argument("digit_band_parts: band too narrow");
    cuts.push_back(hi_digit + 1);

    std::vector<IntervalUnion> parts;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
        // digits k in [cuts[j], cuts[j+1]) <=> x in (1/cuts[j+1], 1/cuts[j]]
        parts.push_back(make_interval_union(
            sys, {Interval::right_closed(1.0 / static_cast<double>(cuts[j + 1]),
                                         1.0 / static_cast<double>(cuts[j]))}));
    }
    return parts;
}

long rank_of(const IntervalUnion& a, double q) {
    if (!(a.mu_mass > 0.0 && a.mu_mass < 1.0))
        throw std::invalid_argument("rank_of: need 0 < mu(A) < 1");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("rank_of: need q in (0,1)");
    const double j = (-2.0 * std::log(a.mu_mass)) / (-std::log(q));
    // tolerate float fuzz when j lands exactly on an integer
    return static_cast<long>(std::ceil(j - 1e-9));
}

namespace {

// Enumerates the union of rank-n cylinders inside the target interval.
// A cylinder fully inside the target contributes its whole subtree at once
// (nesting: every rank-n descendant is inside too, and they tile it up to a
// measure-zero set of branch endpoints), so the recursion only descends
// along cells that straddle one of the two target boundary points.
class CylinderEnumerator {
public:
    CylinderEnumerator(const SystemSpec& sys, const Interval& target, double target_mass, long rank,
                       double rel_cutoff, long max_cells)
        : sys_(sys), target_(target), rank_(rank),
          cutoff_mass_(rel_cutoff * target_mass), max_cells_(max_cells) {}

    void run() { visit(invariant_measure(sys_, target_)); }

    std::vector<Interval> kept;
    double boundary_loss = 0.0;
    double truncated_loss = 0.0;

private:
    void keep(const Interval& iv) {
        kept.push_back(iv);
        if (static_cast<long>(kept.size()) > max_cells_)
            throw std::runtime_error("approximate_by_cylinders: cell cap exceeded; raise rel_cutoff");
    }

    // Children of a node tile it and march monotonically across it, so the
    // scan stops once it has passed the target; the unexplored remainder is
    // node_mass minus what was scanned so far.
    void visit(double node_mass) {
        const long nb = sys_.branch_count();
        double explored = 0.0;
        bool seen = false;
        for (long k = nb < 0 ? 1 : 0;; ++k) {
            if (nb >= 0 && k >= nb) break;
            word_.push_back(k);
            bool admissible = true;
            Interval child;
            try {
                child = cylinder_interval(sys_, word_);
            } catch (const EmptyCylinder&) {
                admissible = false;
            }
            if (admissible) {
                const Interval inter = child.intersect(target_);
                if (!inter.empty()) {
                    seen = true;
                    const double inter_mass = invariant_measure(sys_, inter);
                    explored += inter_mass;
                    if (child.subset_of(target_)) {
                        keep(child);
                        // once inside, the remaining children march toward the
                        // node's accumulation end; if that whole span is still
                        // inside the target, claim it in one step
                        if (nb < 0) {
                            const double rest = std::max(0.0, node_mass - explored);
                            Interval span = remaining_span(child);
                            if (span.subset_of(target_)) {
                                if (!span.empty() && rest > 0.0) keep(span);
                                word_.pop_back();
                                return;
                            }
                            if (inter_mass < cutoff_mass_) {
                                word_.pop_back();
                                truncated_loss += rest;
                                return;
                            }
                        }
                    } else if (static_cast<long>(word_.size()) == rank_) {
                        boundary_loss += inter_mass;
                    } else {
                        visit(inter_mass);
                    }
                    if (nb < 0 && !child.subset_of(target_) && inter_mass < cutoff_mass_) {
                        word_.pop_back();
                        truncated_loss += std::max(0.0, node_mass - explored);
                        return;
                    }
                } else if (seen) {
                    word_.pop_back();
                    return;
                }
            }
            word_.pop_back();
            if (nb < 0 && k >= kDigitGuard) {
                truncated_loss += std::max(0.0, node_mass - explored);
                return;
            }
        }
    }

    // Span between the current child's accumulation-side edge and the parent
    // cylinder's accumulation endpoint v_w(0) (open there: that point is in
    // no child). Gauss inverse branches are decreasing, so v_w is increasing
    // iff |w| is even and the accumulation end alternates with depth parity.
    Interval remaining_span(const Interval& child) const {
        std::vector<long> parent_word(word_.begin(), word_.end() - 1);
        Interval parent = parent_word.empty() ? Interval::right_closed(0.0, 1.0)
                                              : cylinder_interval(sys_, parent_word);
        const bool acc_at_lo = parent_word.size() % 2 == 0;
        if (acc_at_lo) {
            return Interval{parent.lo, child.lo, false, !child.lo_closed};
        }
        return Interval{child.hi, parent.hi, !child.hi_closed, false};
    }

    static constexpr long kDigitGuard = 1000000;

    const SystemSpec& sys_;
    const Interval target_;
    const long rank_;
    const double cutoff_mass_;
    const long max_cells_;
    std::vector<long> word_;
};

// Coalesce adjacent kept intervals. Junction points are branch endpoints
// interior to the claimed span; absorbing them only adds a measure-zero set
// still inside the target.
std::vector<Interval> coalesce(std::vector<Interval> parts) {
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const auto& p : parts) {
        if (!out.empty() && out.back().hi == p.lo) {
            out.back().hi = p.hi;
            out.back().hi_closed = p.hi_closed;
        } else {
            out.push_back(p);
        }
    }
    return out;
}

} // namespace

CylinderApproximation approximate_by_cylinders(const SystemSpec& sys, const IntervalUnion& a,
                                               long rank, double rel_cutoff, long max_cells) {
    if (!a.single())
        throw std::invalid_argument("approximate_by_cylinders: A must be a single interval");
    if (rank < 1) throw std::invalid_argument("approximate_by_cylinders: rank must be >= 1");
    if (sys.kind() == MapKind::Intermittent)
        throw std::invalid_argument("approximate_by_cylinders: no exact cylinders for Intermittent");

    CylinderEnumerator en(sys, a.parts.front(), a.mu_mass, rank, rel_cutoff, max_cells);
    en.run();
    if (en.kept.empty())
        throw EmptyApproximation("no rank-" + std::to_string(rank) + " cylinder fits inside A");

    CylinderApproximation out;
    out.boundary_loss = en.boundary_loss;
    out.truncated_loss = en.truncated_loss;
    out.approx = make_interval_union(sys, coalesce(std::move(en.kept)));
    out.parts = static_cast<long>(out.approx.parts.size());
    return out;
}

} // namespace rarelab
