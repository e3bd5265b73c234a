#include "rarelab/dynsys.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rarelab/errors.hpp"

namespace rarelab {

namespace {

constexpr double kPwlStationaryResidual = 1e-14;

double log2_ratio(double a, double b) {
    // mu_Gauss([a,b]) = log2((1+b)/(1+a))
    return (std::log1p(b) - std::log1p(a)) / std::numbers::ln2;
}

} // namespace

SystemSpec SystemSpec::gauss() {
    SystemSpec s;
    s.kind_ = MapKind::Gauss;
    return s;
}

SystemSpec SystemSpec::doubling() {
    SystemSpec s;
    s.kind_ = MapKind::Doubling;
    return s;
}

SystemSpec SystemSpec::pwl_markov(std::vector<PwlBranch> branches) {
    SystemSpec s;
    s.kind_ = MapKind::PiecewiseLinearMarkov;
    s.pwl_ = std::move(branches);
    if (s.pwl_.empty()) throw std::invalid_argument("pwl_markov: no branches");
    double prev = 0.0;
    for (const auto& b : s.pwl_) {
        if (b.x_lo != prev) throw std::invalid_argument("pwl_markov: branches must tile [0,1)");
        if (!(b.x_hi > b.x_lo) || !(b.y_hi > b.y_lo))
            throw std::invalid_argument("pwl_markov: degenerate branch");
        prev = b.x_hi;
    }
    if (prev != 1.0) throw std::invalid_argument("pwl_markov: branches must tile [0,1)");
    // Markov property: image endpoints are breakpoints of the partition
    auto is_breakpoint = [&s](double y) {
        if (y == 1.0) return true;
        for (const auto& b : s.pwl_)
            if (b.x_lo == y) return true;
        return false;
    };
    for (const auto& b : s.pwl_) {
        if (!is_breakpoint(b.y_lo) || !is_breakpoint(b.y_hi))
            throw std::invalid_argument("pwl_markov: branch image is not a union of cells");
    }
    s.solve_pwl_stationary();
    return s;
}

SystemSpec SystemSpec::intermittent(double alpha, long burn_in_steps) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("intermittent: alpha must be in (0,1)");
    SystemSpec s;
    s.kind_ = MapKind::Intermittent;
    s.alpha_ = alpha;
    s.burn_in_ = burn_in_steps;
    return s;
}

void SystemSpec::solve_pwl_stationary() {
    const std::size_t n = pwl_.size();
    std::vector<double> h(n, 1.0), next(n, 0.0);
    auto normalize = [&](std::vector<double>& v) {
        double mass = 0.0;
        for (std::size_t j = 0; j < n; ++j) mass += v[j] * (pwl_[j].x_hi - pwl_[j].x_lo);
        for (auto& x : v) x /= mass;
    };
    normalize(h);
    for (int iter = 0; iter < 100000; ++iter) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t b = 0; b < n; ++b) {
                if (pwl_[b].y_lo <= pwl_[j].x_lo && pwl_[j].x_hi <= pwl_[b].y_hi)
                    acc += h[b] / pwl_[b].slope();
            }
            next[j] = acc;
        }
        normalize(next);
        double resid = 0.0;
        for (std::size_t j = 0; j < n; ++j) resid = std::max(resid, std::abs(next[j] - h[j]));
        h.swap(next);
        if (resid < kPwlStationaryResidual) break;
    }
    pwl_density_ = h;
}

long SystemSpec::branch_count() const {
    switch (kind_) {
        case MapKind::Gauss: return -1;
        case MapKind::Doubling: return 2;
        case MapKind::PiecewiseLinearMarkov: return static_cast<long>(pwl_.size());
        case MapKind::Intermittent: return 2;
    }
    return 0;
}

Interval SystemSpec::branch_domain(long branch) const {
    switch (kind_) {
        case MapKind::Gauss:
            if (branch < 1) throw std::invalid_argument("Gauss branch index must be >= 1");
            return Interval::right_closed(1.0 / (static_cast<double>(branch) + 1.0),
                                          1.0 / static_cast<double>(branch));
        case MapKind::Doubling:
        case MapKind::Intermittent:
            if (branch != 0 && branch != 1) throw std::invalid_argument("branch index out of range");
            return branch == 0 ? Interval::left_closed(0.0, 0.5) : Interval::left_closed(0.5, 1.0);
        case MapKind::PiecewiseLinearMarkov: {
            const auto& b = pwl_.at(static_cast<std::size_t>(branch));
            return Interval::left_closed(b.x_lo, b.x_hi);
        }
    }
    throw std::logic_error("unreachable");
}

Interval SystemSpec::branch_image(long branch) const {
    switch (kind_) {
        case MapKind::Gauss:
            if (branch < 1) throw std::invalid_argument("Gauss branch index must be >= 1");
            return Interval::left_closed(0.0, 1.0);
        case MapKind::Doubling:
        case MapKind::Intermittent:
            if (branch != 0 && branch != 1) throw std::invalid_argument("branch index out of range");
            return Interval::left_closed(0.0, 1.0);
        case MapKind::PiecewiseLinearMarkov: {
            const auto& b = pwl_.at(static_cast<std::size_t>(branch));
            return Interval::left_closed(b.y_lo, b.y_hi);
        }
    }
    throw std::logic_error("unreachable");
}

bool SystemSpec::branch_increasing(long) const { return kind_ != MapKind::Gauss; }

long SystemSpec::branch_of(double x) const {
    switch (kind_) {
        case MapKind::Gauss:
            return static_cast<long>(cf_digit(x));
        case MapKind::Doubling:
        case MapKind::Intermittent:
            return x < 0.5 ? 0 : 1;
        case MapKind::PiecewiseLinearMarkov: {
            for (std::size_t b = 0; b < pwl_.size(); ++b)
                if (x < pwl_[b].x_hi || b + 1 == pwl_.size()) return static_cast<long>(b);
            break;
        }
    }
    throw std::logic_error("unreachable");
}

double SystemSpec::inverse_branch(long branch, double y) const {
    switch (kind_) {
        case MapKind::Gauss:
            return 1.0 / (static_cast<double>(branch) + y);
        case MapKind::Doubling:
            return branch == 0 ? y / 2.0 : (y + 1.0) / 2.0;
        case MapKind::PiecewiseLinearMarkov: {
            const auto& b = pwl_.at(static_cast<std::size_t>(branch));
            return b.x_lo + (y - b.y_lo) / b.slope();
        }
        case MapKind::Intermittent: {
            if (branch == 1) return (y + 1.0) / 2.0;
            // monotone bisection for x(1 + 2^alpha x^alpha) = y on [0, 1/2]
            const double two_alpha = std::exp2(alpha_);
            double lo = 0.0, hi = 0.5;
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                const double f = mid * (1.0 + two_alpha * std::pow(mid, alpha_));
                (f < y ? lo : hi) = mid;
                if (hi - lo < 1e-17) break;
            }
            return 0.5 * (lo + hi);
        }
    }
    throw std::logic_error("unreachable");
}

double SystemSpec::inverse_branch_derivative(long branch, double y) const {
    switch (kind_) {
        case MapKind::Gauss: {
            const double d = static_cast<double>(branch) + y;
            return 1.0 / (d * d);
        }
        case MapKind::Doubling:
            return 0.5;
        case MapKind::PiecewiseLinearMarkov:
            return 1.0 / pwl_.at(static_cast<std::size_t>(branch)).slope();
        case MapKind::Intermittent: {
            if (branch == 1) return 0.5;
            const double x = inverse_branch(0, y);
            const double tprime = 1.0 + (1.0 + alpha_) * std::exp2(alpha_) * std::pow(x, alpha_);
            return 1.0 / tprime;
        }
    }
    throw std::logic_error("unreachable");
}

std::int64_t cf_digit(double x) {
    if (x == 0.0) throw GaussAtZero{};
    if (x < 0.0 || x > 1.0) throw std::domain_error("cf_digit: x outside (0,1]");
    if (x < GAUSS_MIN_X)
        throw std::domain_error("cf_digit: x below digit cap threshold 1e-12");
    auto k = static_cast<std::int64_t>(std::floor(1.0 / x));
    // enforce x in (1/(k+1), 1/k] exactly in double arithmetic
    while (x <= 1.0 / static_cast<double>(k + 1)) ++k;
    while (x > 1.0 / static_cast<double>(k)) --k;
    return k;
}

PointX evaluate_map(const SystemSpec& sys, PointX x) {
    const double v = x.value;
    switch (sys.kind()) {
        case MapKind::Gauss: {
            const auto k = cf_digit(v);
            const double t = 1.0 / v - static_cast<double>(k);
            return PointX{std::clamp(t, 0.0, 1.0)};
        }
        case MapKind::Doubling:
            return PointX{v < 0.5 ? 2.0 * v : 2.0 * v - 1.0};
        case MapKind::PiecewiseLinearMarkov: {
            const auto& b = sys.pwl_branches()[static_cast<std::size_t>(sys.branch_of(v))];
            const double t = b.y_lo + (v - b.x_lo) * b.slope();
            return PointX{std::clamp(t, 0.0, 1.0)};
        }
        case MapKind::Intermittent: {
            if (v < 0.5) {
                const double t = v * (1.0 + std::exp2(sys.alpha()) * std::pow(v, sys.alpha()));
                return PointX{std::min(t, 1.0)};
            }
            return PointX{2.0 * v - 1.0};
        }
    }
    throw std::logic_error("unreachable");
}

double invariant_measure_of_interval(const SystemSpec& sys, double a, double b) {
    if (!(a <= b)) throw std::invalid_argument("invariant_measure_of_interval: a > b");
    a = std::clamp(a, 0.0, 1.0);
    b = std::clamp(b, 0.0, 1.0);
    switch (sys.kind()) {
        case MapKind::Gauss:
            return log2_ratio(a, b);
        case MapKind::Doubling:
            return b - a;
        case MapKind::PiecewiseLinearMarkov: {
            const auto& branches = sys.pwl_branches();
            const auto& h = sys.pwl_stationary_density();
            double acc = 0.0;
            for (std::size_t j = 0; j < branches.size(); ++j) {
                const double lo = std::max(a, branches[j].x_lo);
                const double hi = std::min(b, branches[j].x_hi);
                if (hi > lo) acc += h[j] * (hi - lo);
            }
            return acc;
        }
        case MapKind::Intermittent:
            throw NoClosedFormMeasure(
                "intermittent map has no closed-form invariant measure; use a Birkhoff estimate");
    }
    throw std::logic_error("unreachable");
}

double invariant_measure(const SystemSpec& sys, const Interval& iv) {
    if (iv.empty()) return 0.0;
    return invariant_measure_of_interval(sys, iv.lo, iv.hi);
}

PointX sample_invariant(const SystemSpec& sys, SeededRng& rng) {
    switch (sys.kind()) {
        case MapKind::Gauss: {
            double x;
            do {
                x = std::exp2(rng.uniform()) - 1.0;
            } while (x < GAUSS_MIN_X);
            return PointX{x};
        }
        case MapKind::Doubling:
            return PointX{rng.uniform()};
        case MapKind::PiecewiseLinearMarkov: {
            const auto& branches = sys.pwl_branches();
            const auto& h = sys.pwl_stationary_density();
            double u = rng.uniform();
            for (std::size_t j = 0; j < branches.size(); ++j) {
                const double cell_mass = h[j] * (branches[j].x_hi - branches[j].x_lo);
                if (u < cell_mass || j + 1 == branches.size())
                    return PointX{std::min(branches[j].x_lo + u / h[j], branches[j].x_hi)};
                u -= cell_mass;
            }
            throw std::logic_error("unreachable");
        }
        case MapKind::Intermittent: {
            PointX x{rng.uniform_open()};
            for (long i = 0; i < sys.burn_in_steps(); ++i) x = evaluate_map(sys, x);
            return x;
        }
    }
    throw std::logic_error("unreachable");
}

Interval cylinder_interval(const SystemSpec& sys, const std::vector<long>& word) {
    if (word.empty()) throw std::invalid_argument("cylinder_interval: empty word");
    Interval j = sys.branch_domain(word.back());
    for (std::size_t i = word.size() - 1; i-- > 0;) {
        const long b = word[i];
        j = j.intersect(sys.branch_image(b));
        if (j.empty()) throw EmptyCylinder("inadmissible word: empty intersection with branch image");
        const double lo = sys.inverse_branch(b, j.lo);
        const double hi = sys.inverse_branch(b, j.hi);
        Interval pulled = sys.branch_increasing(b)
                              ? Interval{lo, hi, j.lo_closed, j.hi_closed}
                              : Interval{hi, lo, j.hi_closed, j.lo_closed};
        j = pulled.intersect(sys.branch_domain(b));
        if (j.empty()) throw EmptyCylinder("inadmissible word: empty pullback");
    }
    return j;
}

} // namespace rarelab
