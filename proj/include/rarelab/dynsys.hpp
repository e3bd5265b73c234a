#pragma once

#include <cstdint>
#include <vector>

#include "rarelab/interval.hpp"
#include "rarelab/rng.hpp"

namespace rarelab {

enum class MapKind { Gauss, Doubling, PiecewiseLinearMarkov, Intermittent };

// Point of the unit interval. Thin wrapper so API signatures say what they
// carry; hot loops unwrap to double.
struct PointX {
    double value = 0.0;
};

// One affine branch of a piecewise-linear Markov map: [x_lo, x_hi) is mapped
// increasing and onto [y_lo, y_hi). Markov: image endpoints must themselves
// be branch endpoints.
struct PwlBranch {
    double x_lo, x_hi, y_lo, y_hi;
    double slope() const { return (y_hi - y_lo) / (x_hi - x_lo); }
};

// Orbit points x < GAUSS_MIN_X would need CF digits beyond the cap 1e12;
// samplers redraw them and orbit code flags the sample (probability per step
// is below 2e-12).
inline constexpr double GAUSS_MIN_X = 1e-12;

class SystemSpec {
public:
    static SystemSpec gauss();
    static SystemSpec doubling();
    // branches must tile [0,1) left to right
    static SystemSpec pwl_markov(std::vector<PwlBranch> branches);
    // LSV form: T(x) = x(1 + 2^alpha x^alpha) on [0,1/2), 2x - 1 on [1/2,1)
    static SystemSpec intermittent(double alpha, long burn_in_steps = 4096);

    MapKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    long burn_in_steps() const { return burn_in_; }
    const std::vector<PwlBranch>& pwl_branches() const { return pwl_; }

    // negative for a countably infinite partition (Gauss)
    long branch_count() const;

    // Branch domain with the owning half-open convention:
    // Gauss I_k = (1/(k+1), 1/k]; dyadic/PWL branches closed on the left.
    Interval branch_domain(long branch) const;
    Interval branch_image(long branch) const;
    bool branch_increasing(long branch) const;

    // index of the branch whose domain contains x (Gauss: the CF digit)
    long branch_of(double x) const;

    // inverse branch v_branch applied to a point of the branch image
    double inverse_branch(long branch, double y) const;
    // |v'_branch(y)| w.r.t. Lebesgue
    double inverse_branch_derivative(long branch, double y) const;

    // stationary density value (PWL only; piecewise constant)
    const std::vector<double>& pwl_stationary_density() const { return pwl_density_; }

private:
    MapKind kind_ = MapKind::Doubling;
    double alpha_ = 0.5;
    long burn_in_ = 4096;
    std::vector<PwlBranch> pwl_;
    std::vector<double> pwl_density_; // per branch cell, w.r.t. Lebesgue

    void solve_pwl_stationary();
};

// T(x). Throws GaussAtZero for kind=Gauss and x = 0, and a domain error for
// Gauss points below GAUSS_MIN_X.
PointX evaluate_map(const SystemSpec& sys, PointX x);

// CF digit a(x) = floor(1/x), adjusted so that the half-open convention
// 1/(k+1) < x <= 1/k holds exactly in double arithmetic.
std::int64_t cf_digit(double x);

// mu([a,b]) in closed form (Gauss, Doubling) or from the exact stationary
// vector (PWL). Throws NoClosedFormMeasure for Intermittent.
double invariant_measure_of_interval(const SystemSpec& sys, double a, double b);
double invariant_measure(const SystemSpec& sys, const Interval& iv);

// One draw from the invariant measure. Intermittent uses a burn-in
// push-forward sample (uniform start iterated burn_in_steps times).
PointX sample_invariant(const SystemSpec& sys, SeededRng& rng);

// Rank-n cylinder [w_0, ..., w_{n-1}] as a single interval, endpoint
// membership tracked exactly. Throws EmptyCylinder for inadmissible words.
Interval cylinder_interval(const SystemSpec& sys, const std::vector<long>& word);

} // namespace rarelab
