#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rarelab/dynsys.hpp"
#include "rarelab/errors.hpp"
#include "rarelab/rng.hpp"

using namespace rarelab;

namespace {

// three-branch Markov map used across tests: slopes 2, 2, 4; stationary
// density (2/3, 4/3, 4/3) solved by hand from h = T-hat h
SystemSpec test_pwl() {
    return SystemSpec::pwl_markov({
        {0.0, 0.5, 0.0, 1.0},
        {0.5, 0.75, 0.5, 1.0},
        {0.75, 1.0, 0.0, 1.0},
    });
}

} // namespace

TEST_CASE("evaluate_map on the concrete systems") {
    const auto gauss = SystemSpec::gauss();
    CHECK(evaluate_map(gauss, {0.7}).value == doctest::Approx(1.0 / 0.7 - 1.0).epsilon(1e-15));
    CHECK(evaluate_map(gauss, {0.7}).value == doctest::Approx(0.42857142857142855).epsilon(1e-12));

    const auto doubling = SystemSpec::doubling();
    CHECK(evaluate_map(doubling, {0.375}).value == 0.75);

    const auto lsv = SystemSpec::intermittent(0.5);
    // T(x) = x(1 + 2^a x^a): 0.25 * (1 + sqrt(2) * 0.5)
    const double oracle = 0.25 * (1.0 + std::sqrt(2.0) * std::sqrt(0.25));
    CHECK(evaluate_map(lsv, {0.25}).value == doctest::Approx(oracle).epsilon(1e-15));
    CHECK(evaluate_map(lsv, {0.25}).value == doctest::Approx(0.4267766952966369).epsilon(1e-12));
    CHECK(evaluate_map(lsv, {0.75}).value == 0.5);

    CHECK_THROWS_AS(evaluate_map(gauss, {0.0}), GaussAtZero);
}

TEST_CASE("cf_digit values and boundary convention") {
    CHECK(cf_digit(0.7) == 1);
    CHECK(cf_digit(0.3) == 3);
    CHECK(cf_digit(0.5) == 2); // 0.5 in I_2 = (1/3, 1/2]
    CHECK(cf_digit(1.0) == 1);
    CHECK(cf_digit(1.0 / 3.0) == 3);
    CHECK(cf_digit(0.25) == 4);
    CHECK_THROWS_AS(cf_digit(0.0), GaussAtZero);
    CHECK_THROWS(cf_digit(1e-13)); // below the digit cap

    // convention holds exactly in double arithmetic near many boundaries
    for (long k = 1; k <= 2000; ++k) {
        const double b = 1.0 / static_cast<double>(k);
        CHECK(cf_digit(b) == k);
        CHECK(cf_digit(std::nextafter(b, 0.0)) == k);
        if (k > 1) CHECK(cf_digit(std::nextafter(b, 1.0)) == k - 1);
    }
}

TEST_CASE("invariant measure closed forms") {
    const auto gauss = SystemSpec::gauss();
    const double m_lo = invariant_measure_of_interval(gauss, 0.0, 0.5);
    CHECK(m_lo == doctest::Approx(std::log(1.5) / std::numbers::ln2).epsilon(1e-15));
    CHECK(m_lo == doctest::Approx(0.5849625007211562).epsilon(1e-13));
    CHECK(invariant_measure_of_interval(gauss, 0.5, 1.0) ==
          doctest::Approx(1.0 - 0.5849625007211562).epsilon(1e-12));

    const auto doubling = SystemSpec::doubling();
    CHECK(invariant_measure_of_interval(doubling, 0.0, 0.25) == 0.25);

    CHECK_THROWS_AS(invariant_measure_of_interval(SystemSpec::intermittent(0.5), 0.0, 0.5),
                    NoClosedFormMeasure);
}

TEST_CASE("measure additivity") {
    const auto gauss = SystemSpec::gauss();
    const auto pwl = test_pwl();
    SeededRng rng(7, 0);
    for (int i = 0; i < 200; ++i) {
        double a = rng.uniform(), b = rng.uniform(), c = rng.uniform();
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        for (const auto* sys : {&gauss, &pwl}) {
            const double whole = invariant_measure_of_interval(*sys, a, c);
            const double split = invariant_measure_of_interval(*sys, a, b) +
                                 invariant_measure_of_interval(*sys, b, c);
            CHECK(std::abs(whole - split) <= 1e-12);
        }
    }
}

TEST_CASE("PWL stationary density matches the hand-solved eigenvector") {
    const auto pwl = test_pwl();
    const auto& h = pwl.pwl_stationary_density();
    REQUIRE(h.size() == 3);
    CHECK(h[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(h[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(h[2] == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

// mu(T^{-1} J) = mu(J), preimage computed branchwise. For Gauss the branch
// sum over k > K telescopes: sum_{k>K} mu(v_k J) = log2((K+1+b)/(K+1+a)),
// so the truncated sum plus this closed tail is exact.
TEST_CASE("invariance of the measure under branchwise preimages") {
    const auto gauss = SystemSpec::gauss();
    const auto doubling = SystemSpec::doubling();
    const auto pwl = test_pwl();

    auto preimage_measure = [](const SystemSpec& sys, double a, double b) {
        double acc = 0.0;
        const long nb = sys.branch_count();
        const long limit = nb < 0 ? 100000 : nb;
        for (long k = nb < 0 ? 1 : 0; k < limit + (nb < 0 ? 1 : 0); ++k) {
            const Interval img = sys.branch_image(k);
            const double lo = std::max(a, img.lo);
            const double hi = std::min(b, img.hi);
            if (hi <= lo) continue;
            const double x1 = sys.inverse_branch(k, lo);
            const double x2 = sys.inverse_branch(k, hi);
            acc += invariant_measure_of_interval(sys, std::min(x1, x2), std::max(x1, x2));
        }
        if (nb < 0) {
            const double kk = static_cast<double>(limit) + 1.0;
            acc += (std::log((kk + b) / (kk + a))) / std::numbers::ln2;
        }
        return acc;
    };

    SeededRng rng(11, 0);
    for (int i = 0; i < 25; ++i) {
        double a = rng.uniform(), b = rng.uniform();
        if (a > b) std::swap(a, b);
        CHECK(std::abs(preimage_measure(gauss, a, b) -
                       invariant_measure_of_interval(gauss, a, b)) <= 1e-10);
        CHECK(std::abs(preimage_measure(doubling, a, b) -
                       invariant_measure_of_interval(doubling, a, b)) <= 1e-12);
        CHECK(std::abs(preimage_measure(pwl, a, b) -
                       invariant_measure_of_interval(pwl, a, b)) <= 1e-12);
    }
}

TEST_CASE("sample_invariant inverse-CDF forms") {
    const auto gauss = SystemSpec::gauss();
    {
        SeededRng probe(42, 3), rng(42, 3);
        const double u = probe.uniform();
        CHECK(sample_invariant(gauss, rng).value ==
              doctest::Approx(std::exp2(u) - 1.0).epsilon(1e-15));
    }
    {
        // u = 0.5 -> sqrt(2) - 1 (inverse of log2(1+x))
        CHECK(std::exp2(0.5) - 1.0 == doctest::Approx(0.4142135623730951).epsilon(1e-15));
    }
    {
        const auto doubling = SystemSpec::doubling();
        SeededRng probe(42, 9), rng(42, 9);
        const double u = probe.uniform();
        CHECK(sample_invariant(doubling, rng).value == u);
    }
}

TEST_CASE("sample_invariant histograms match bin masses") {
    const int bins = 64;
    const long n = 100000;
    for (const auto& sys : {SystemSpec::gauss(), SystemSpec::doubling(), test_pwl()}) {
        SeededRng rng(2026, 17);
        std::vector<long> counts(bins, 0);
        for (long i = 0; i < n; ++i) {
            const double x = sample_invariant(sys, rng).value;
            int b = static_cast<int>(x * bins);
            if (b >= bins) b = bins - 1;
            ++counts[b];
        }
        const double loose = 4.0 / std::sqrt(static_cast<double>(n));
        for (int b = 0; b < bins; ++b) {
            const double p = invariant_measure_of_interval(sys, b / double(bins), (b + 1) / double(bins));
            const double phat = counts[b] / double(n);
            CHECK(std::abs(phat - p) <= loose);
            // tighter binomial band (4 sigma) so a wrong density actually fails
            CHECK(std::abs(phat - p) <= 4.0 * std::sqrt(p * (1 - p) / n) + 1e-9);
        }
    }
}

TEST_CASE("cylinder_interval frozen examples") {
    const auto gauss = SystemSpec::gauss();
    {
        const Interval c = cylinder_interval(gauss, {1});
        CHECK(c.lo == 0.5);
        CHECK(c.hi == 1.0);
        CHECK_FALSE(c.lo_closed);
        CHECK(c.hi_closed);
    }
    {
        // inverse-branch composition: v1(v1([0,1])) intersected with I_1
        const Interval c = cylinder_interval(gauss, {1, 1});
        CHECK(c.lo == 0.5);
        CHECK(c.hi == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
        CHECK_FALSE(c.lo_closed);
        CHECK_FALSE(c.hi_closed);
    }
    {
        const auto doubling = SystemSpec::doubling();
        const Interval c = cylinder_interval(doubling, {0, 1});
        CHECK(c.lo == 0.25);
        CHECK(c.hi == 0.5);
        CHECK(c.lo_closed);
        CHECK_FALSE(c.hi_closed);
    }
    {
        // branch 1 of the test PWL maps into [1/2,1): following with branch 0 is inadmissible
        CHECK_THROWS_AS(cylinder_interval(test_pwl(), {1, 0}), EmptyCylinder);
        const Interval c = cylinder_interval(test_pwl(), {1, 2});
        CHECK(c.subset_of(Interval::left_closed(0.5, 0.75)));
    }
}

TEST_CASE("cylinder nesting and digit identity") {
    const auto gauss = SystemSpec::gauss();
    SeededRng rng(5, 1);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<long> word;
        for (int i = 0; i < 5; ++i) word.push_back(1 + static_cast<long>(rng.below(6)));
        Interval outer = cylinder_interval(gauss, {word.begin(), word.begin() + 2});
        Interval inner = cylinder_interval(gauss, word);
        CHECK(inner.subset_of(outer));
    }
    for (int rep = 0; rep < 200; ++rep) {
        const double x = rng.uniform_open();
        const auto k = cf_digit(x);
        CHECK(evaluate_map(gauss, {x}).value ==
              doctest::Approx(1.0 / x - static_cast<double>(k)).epsilon(1e-12));
        if (k <= 50) {
            CHECK(cylinder_interval(gauss, {static_cast<long>(k)}).contains(x));
            CHECK_FALSE(cylinder_interval(gauss, {static_cast<long>(k + 1)}).contains(x));
        }
    }
}
