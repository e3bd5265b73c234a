#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <vector>

namespace rarelab {

// Point of the compactified half-line [0, inf]; infinity is an explicit
// state, not a sentinel double.
class TimeValue {
public:
    static TimeValue finite(double t) { return TimeValue{t, false}; }
    static TimeValue infinity() { return TimeValue{0.0, true}; }

    bool is_infinite() const { return inf_; }
    double value() const { return v_; }
    double exp_neg() const { return inf_ ? 0.0 : std::exp(-v_); }

private:
    TimeValue(double v, bool inf) : v_(v), inf_(inf) {}
    double v_;
    bool inf_;
};

// d_[0,inf](s,t) = |e^-s - e^-t|
double metric_time(TimeValue s, TimeValue t);

struct SequenceDistance {
    double value;
    double truncation_bound; // 2^-J tail of the product metric
};

// product metric sum_{j<J} 2^-(j+1) d(a_j, b_j)
SequenceDistance metric_sequence(std::span<const TimeValue> a, std::span<const TimeValue> b,
                                 std::size_t truncation);

struct LimitLawSpec {
    enum class Kind {
        Exp,              // 1 - e^-t
        ExpTheta,         // (1-theta) + theta(1-e^{-theta t})
        Uniform01,
        Bernoulli,        // atoms at 0..m-1 with probs
        PointMass,        // atom at `point`
        ProductIID,       // `dim` iid copies of `component`
        PoissonCount,     // N_t, arrivals of intensity 1 at horizon t
        CompoundGeomCount // visits at horizon t near a theta-periodic point
    };

    Kind kind = Kind::Exp;
    double theta = 1.0;
    double t = 1.0;
    double point = 0.0;
    std::vector<double> probs;
    int dim = 1;
    std::shared_ptr<const LimitLawSpec> component;

    static LimitLawSpec exponential();
    static LimitLawSpec exp_theta(double theta);
    static LimitLawSpec uniform01();
    static LimitLawSpec bernoulli(std::vector<double> probs);
    static LimitLawSpec point_mass(double c);
    static LimitLawSpec product_iid(LimitLawSpec comp, int dim);
    static LimitLawSpec poisson_count(double t);
    static LimitLawSpec compound_geom_count(double t, double theta);
};

// exact CDF (1-dimensional kinds)
double cdf(const LimitLawSpec& law, double t);

// exact integral of the CDF over [0, t]
double cdf_integral0(const LimitLawSpec& law, double t);

// multi-dimensional CDF; for 1-dim kinds t must have one entry
double cdf_multi(const LimitLawSpec& law, std::span<const double> t);

// pmf of the counting kinds (and Bernoulli atoms)
double pmf(const LimitLawSpec& law, long k);

// P[N_(theta),t = k] for the compound Poisson counting limit: cluster
// arrivals of intensity theta carrying iid geometric(theta) batch sizes,
// so k visits split into j clusters as a negative-binomial convolution.
// Computed by exact convolution of the geometric batch law.
double compound_geom_pmf(double t, double theta, long k);

// Finite-dimensional distribution functions of a return-time law, with
// exact integration over the first coordinate. F~^[0] := 1.
class ReturnLawMarginals {
public:
    virtual ~ReturnLawMarginals() = default;
    // F~^[d](t_1..t_d), d = tail.size()
    virtual double df(std::span<const double> t) const = 0;
    // integral over s in [0,t0] of F~^[d+1](s, tail)
    virtual double integrated_df(double t0, std::span<const double> tail) const = 0;
};

// marginals of an iid sequence with the given 1-dim marginal law
class AnalyticIIDMarginals final : public ReturnLawMarginals {
public:
    explicit AnalyticIIDMarginals(LimitLawSpec marginal) : marginal_(std::move(marginal)) {}
    double df(std::span<const double> t) const override;
    double integrated_df(double t0, std::span<const double> tail) const override;

private:
    LimitLawSpec marginal_;
};

// The return->hitting duality: F^[d+1](t0, t1..td) =
// int_0^t0 [F~^[d](t1..td) - F~^[d+1](s, t1..td)] ds.
// t_vector carries (t0, ..., td), d+1 entries.
double duality_predict_hitting(const ReturnLawMarginals& ret_law, int d,
                               std::span<const double> t_vector);

// sup over the grid of |F~(t) - (1-theta) - theta int_0^t (1 - F~(s)) ds|;
// zero exactly for the ExpTheta(theta) law.
double fixed_point_residual(const ReturnLawMarginals& ret_law, double theta,
                            std::span<const double> grid);

} // namespace rarelab
