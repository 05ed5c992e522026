#include "support.hpp"

#include "qpwh/errors.hpp"
#include "qpwh/whfactor.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qpwh;
using testsupport::rel;

namespace {

ContourSpec c1d() { return ContourSpec::defaults(Plane::alpha1); }
ContourSpec c2d() { return ContourSpec::defaults(Plane::alpha2); }

const FactorEngine& engine()
{
    static const FactorEngine e(3.0, c1d(), c2d());
    return e;
}

const FactorLabel all_labels[] = {FactorLabel::MM, FactorLabel::MP, FactorLabel::PM, FactorLabel::PP};

} // namespace

TEST_SUITE("whfactor")
{
    TEST_CASE("label helpers")
    {
        for (FactorLabel l : all_labels) {
            CHECK(make_label(sign1(l), sign2(l)) == l);
            CHECK(factor_label_from_string(to_string(l)) == l);
        }
        CHECK(factor_label_from_string("+-") == FactorLabel::PM);
        CHECK(factor_label_from_string("MP") == FactorLabel::MP);
        CHECK_THROWS_AS(factor_label_from_string("px"), DomainError);
        CHECK(default_epsilon(3.0) == doctest::Approx(0.15));
        CHECK(default_epsilon(0.001) == doctest::Approx(1e-3));
    }

    TEST_CASE("rational sum split matches partial fractions")
    {
        const ShiftedContour below(c1d(), -0.15), above(c1d(), 0.15);
        QuadratureConfig cfg;
        const cplx i3(0.0, 3.0);
        auto f = [&](cplx z) { return 1.0 / ((z - i3) * (z + i3)); };
        // pole at -3i belongs to the plus part, pole at +3i to the minus part
        auto plus = [&](cplx z) { return -1.0 / (cplx(0.0, 6.0) * (z + i3)); };
        auto minus = [&](cplx z) { return 1.0 / (cplx(0.0, 6.0) * (z - i3)); };
        CHECK(std::abs(cauchy_split(f, 0.0, SplitSide::plus, below, cfg) - plus(0.0)) < 1e-8);
        for (int i = 0; i < 20; ++i) {
            cplx t = contour_point(c1d(), -9.5 + i);
            cplx p = cauchy_split(f, t, SplitSide::plus, below, cfg);
            cplx m = cauchy_split(f, t, SplitSide::minus, above, cfg);
            CHECK(std::abs(p - plus(t)) < 1e-8);
            CHECK(std::abs(m - minus(t)) < 1e-8);
            CHECK(std::abs(p + m - f(t)) < 1e-8);
        }
    }

    TEST_CASE("one-sided function has a vanishing opposite part")
    {
        const ShiftedContour above(c1d(), 0.15);
        auto f = [](cplx z) { return 1.0 / (z + cplx(0.0, 2.0)); };
        for (double s : {-4.0, 0.0, 1.0, 5.0})
            CHECK(std::abs(cauchy_split(f, contour_point(c1d(), s), SplitSide::minus, above, {})) < 1e-9);
    }

    TEST_CASE("rational factorization matches closed-form factors")
    {
        const ShiftedContour below(c1d(), -0.15), above(c1d(), 0.15);
        QuadratureConfig cfg;
        const cplx i2(0.0, 2.0), i3(0.0, 3.0);
        auto g = [&](cplx z) { return (z * z + 4.0) / (z * z + 9.0); };
        auto gp = [&](cplx z) { return (z + i2) / (z + i3); };
        auto gm = [&](cplx z) { return (z - i2) / (z - i3); };
        auto one = [](cplx) { return cplx(1.0); };
        for (int i = 0; i < 20; ++i) {
            cplx t = contour_point(c1d(), -12.0 + 1.3 * i);
            cplx P = cauchy_factorize(g, t, SplitSide::plus, below, cfg);
            cplx M = cauchy_factorize(g, t, SplitSide::minus, above, cfg);
            if (i < 10) {
                CHECK(std::abs(P - gp(t)) < 1e-8);
                CHECK(std::abs(M - gm(t)) < 1e-8);
            }
            CHECK(std::abs(P * M - g(t)) < 1e-8);
            CHECK(std::abs(cauchy_factorize(one, t, SplitSide::plus, below, cfg) - 1.0) < 1e-14);
        }
    }

    TEST_CASE("guard, side and winding errors")
    {
        const ShiftedContour below(c1d(), -0.15), above(c1d(), 0.15);
        auto f = [](cplx z) { return 1.0 / (z * z + 9.0); };
        cplx near = contour_point(c1d(), 1.0) - cplx(0.0, 0.149);
        CHECK_THROWS_AS(cauchy_split(f, near, SplitSide::plus, below, {}), GuardError);
        CHECK_THROWS_AS(cauchy_split(f, cplx(0.0, -1.0), SplitSide::plus, below, {}), GuardError);
        CHECK_THROWS_AS(cauchy_split(f, 0.0, SplitSide::plus, above, {}), DomainError);
        CHECK_THROWS_AS(cauchy_split(f, 0.0, SplitSide::minus, below, {}), DomainError);
        auto wind = [](cplx z) { return (z - cplx(0.0, 1.0)) / (z + cplx(0.0, 1.0)); };
        CHECK_THROWS_AS(cauchy_factorize(wind, 0.0, SplitSide::plus, below, {}), WindingError);
    }

    TEST_CASE("quarter factors reduce to their prefactor at alpha1 = 0")
    {
        const FactorEngine& e = engine();
        for (cplx a2 : {contour_point(c2d(), 2.0), contour_point(c2d(), -5.0)}) {
            cplx pp = e.quarter_factor(FactorLabel::PP, {0.0, a2});
            cplx mp = e.quarter_factor(FactorLabel::MP, {0.0, a2});
            cplx pm = e.quarter_factor(FactorLabel::PM, {0.0, a2});
            cplx expect_plus = 1.0 / sqrt_down(sqrt_down(3.0 + a2));
            cplx expect_minus = 1.0 / sqrt_down(sqrt_down(3.0 - a2));
            CHECK(rel(pp, expect_plus) < 1e-15);
            CHECK(rel(mp, expect_plus) < 1e-15);
            CHECK(rel(pm, expect_minus) < 1e-15);
        }
    }

    TEST_CASE("pairs of quarter factors reconstruct the explicit half factors on the contours")
    {
        const FactorEngine& e = engine();
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-12.0, 12.0);
        for (int i = 0; i < 25; ++i) {
            SpectralPoint p{contour_point(c1d(), u(rng)), contour_point(c2d(), u(rng))};
            cplx pp = e.quarter_factor(FactorLabel::PP, p), pm = e.quarter_factor(FactorLabel::PM, p);
            cplx mp = e.quarter_factor(FactorLabel::MP, p), mm = e.quarter_factor(FactorLabel::MM, p);
            CHECK(rel(pp * pm, half_factor(p, 3.0, HalfLabel::plus_circ)) < 1e-6);
            CHECK(rel(mp * mm, half_factor(p, 3.0, HalfLabel::minus_circ)) < 1e-6);
            CHECK(rel(pp * pm * mp * mm, e.full(p)) < 1e-6);
        }
    }

    TEST_CASE("direct domain checks and dispatch consistency")
    {
        const FactorEngine& e = engine();
        SpectralPoint upper{cplx(0.5, 1.0), cplx(-1.0, 2.0)};
        CHECK(e.in_domain(FactorLabel::PP, upper));
        CHECK_FALSE(e.in_domain(FactorLabel::MM, upper));
        CHECK_THROWS_AS(e.quarter_factor(FactorLabel::MM, upper), DomainError);
        FactorValue v = e.continue_factor(FactorLabel::PP, upper);
        CHECK(v.route == Route::direct);
        CHECK(std::abs(v.value - e.quarter_factor(FactorLabel::PP, upper)) <= 1e-10 * std::abs(v.value));
        CHECK(e.continue_factor(FactorLabel::PM, upper).route == Route::alpha2);
        CHECK(e.continue_factor(FactorLabel::MP, upper).route == Route::alpha1);
        CHECK(e.continue_factor(FactorLabel::MM, upper).route == Route::both);
    }

    TEST_CASE("continued factors reconstruct K at real points inside the disk")
    {
        const FactorEngine& e = engine();
        for (SpectralPoint p : {SpectralPoint{-1.5, -1.5}, SpectralPoint{0.4, -2.1}, SpectralPoint{-0.7, 1.3},
                                SpectralPoint{2.2, 0.5}}) {
            cplx prod = 1.0;
            for (FactorLabel l : all_labels)
                prod *= e.continue_factor(l, p).value;
            CHECK(rel(prod, e.full(p)) < 1e-6);
        }
        FactorValue v = e.continue_factor(FactorLabel::PP, {cplx(0.3, 0.5), -1.2});
        CHECK(v.route == Route::alpha2);
    }

    TEST_CASE("integral and division values agree where both apply")
    {
        const FactorEngine& e = engine();
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> u(-8.0, 8.0);
        for (int i = 0; i < 20; ++i) {
            // on both contours every label is in its natural domain
            SpectralPoint p{contour_point(c1d(), u(rng)), contour_point(c2d(), u(rng))};
            cplx direct = e.quarter_factor(FactorLabel::PP, p);
            cplx via_alpha2 = half_factor(p, 3.0, HalfLabel::plus_circ) / e.quarter_factor(FactorLabel::PM, p);
            cplx via_alpha1 = e.branch_check().circ_plus * half_factor(p, 3.0, HalfLabel::circ_plus) /
                              e.quarter_factor(FactorLabel::MP, p);
            CHECK(rel(via_alpha2, direct) < 1e-6);
            CHECK(rel(via_alpha1, direct) < 1e-6);
        }
    }

    TEST_CASE("branch check finds a unit constant")
    {
        const BranchCheck& bc = engine().branch_check();
        CHECK(std::abs(bc.circ_plus - 1.0) < 1e-12);
        CHECK(std::abs(bc.circ_minus - 1.0) < 1e-12);
        CHECK(bc.max_deviation < 1e-6);
        CHECK(&engine().branch_check() == &bc);
    }

    TEST_CASE("quarter factors do not depend on the contour offset")
    {
        const FactorEngine& e = engine();
        FactorEngine half(3.0, c1d(), c2d(), QuadratureConfig{}, e.eps() / 2.0);
        const double tol = 10.0 * e.config().rel_tol;
        for (double s : {-6.0, -1.0, 0.5, 3.0}) {
            SpectralPoint p{contour_point(c1d(), s), contour_point(c2d(), 0.7 * s + 1.0)};
            for (FactorLabel l : all_labels)
                CHECK(rel(half.quarter_factor(l, p), e.quarter_factor(l, p)) < tol);
        }
    }

    TEST_CASE("quarter factors decay like |alpha2|^(-1/4)")
    {
        const FactorEngine& e = engine();
        const cplx a1 = contour_point(c1d(), -2.0);
        std::vector<double> r, v;
        for (int i = 0; i <= 8; ++i) {
            double rad = std::pow(10.0, 2.0 + 2.0 * i / 8.0);
            r.push_back(rad);
            v.push_back(std::abs(e.quarter_factor(FactorLabel::PP, {a1, std::polar(rad, pi / 4.0)})));
        }
        CHECK(std::abs(testsupport::loglog_slope(r, v) + 0.25) < 0.03);
    }

    TEST_CASE("engine rejects invalid parameters")
    {
        CHECK_THROWS_AS(FactorEngine(-1.0, c1d(), c2d()), DomainError);
        ContourSpec bad = c1d();
        bad.a = 0.0;
        CHECK_THROWS_AS(FactorEngine(3.0, bad, c2d()), ContourError);
    }
}
