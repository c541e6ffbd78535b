#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "hypersurf/classify.hpp"
#include "hypersurf/families.hpp"
#include "hypersurf/grid.hpp"
#include "testutil.hpp"

using namespace hypersurf;

namespace {

std::vector<std::vector<double>> grid_for(std::size_t n, std::size_t count = 20) {
    return halton_grid(DomainBox::uniform(n), count);
}

}  // namespace

TEST_CASE("classifier end-to-end verdicts") {
    SUBCASE("binomial power") {
        Expression f = parse("(2*x + 3*y)^1.5", {"x", "y"});
        Classification c = classify(f, grid_for(2));
        CHECK(c.verdict == Verdict::MultinomialPower);
        REQUIRE(c.coefficients.size() == 2);
        CHECK(c.coefficients[0] == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(c.coefficients[1] == doctest::Approx(3.0).epsilon(1e-9));
        CHECK(c.degree == doctest::Approx(1.5).epsilon(1e-9));
        CHECK(c.fit_residual <= 1e-8);
        REQUIRE(c.developable.has_value());
        CHECK(*c.developable);
    }
    SUBCASE("constant returns to scale") {
        Expression f = parse("sqrt(x*y)", {"x", "y"});
        Classification c = classify(f, grid_for(2));
        CHECK(c.verdict == Verdict::LinearlyHomogeneousFlat);
        CHECK(c.homogeneity.returns_to_scale == ReturnsToScale::Constant);
        REQUIRE(c.developable.has_value());
        CHECK(*c.developable);
    }
    SUBCASE("counterexample: GK-zero but not flat") {
        Expression f = parse("(x + y + sqrt(y*z))^2", {"x", "y", "z"});
        Classification c = classify(f, grid_for(3));
        CHECK(c.verdict == Verdict::NotFlat);
        CHECK(c.gk_zero_but_not_flat);
        CHECK(c.riemann_max > 1e-6);
    }
    SUBCASE("not homogeneous") {
        Expression f = parse("x + y + 1", {"x", "y"});
        Classification c = classify(f, grid_for(2));
        CHECK(c.verdict == Verdict::NotHomogeneous);
    }
    SUBCASE("non-flat homogeneous function") {
        Expression f = parse("x^0.3*y^0.4", {"x", "y"});
        Classification c = classify(f, grid_for(2));
        CHECK(c.verdict == Verdict::NotFlat);
        CHECK_FALSE(c.gk_zero_but_not_flat);
    }
    SUBCASE("verdict is scaling-invariant") {
        Expression f = parse("(2*x + 3*y)^1.5", {"x", "y"});
        Expression f5 = parse("5*(2*x + 3*y)^1.5", {"x", "y"});
        auto grid = grid_for(2);
        Classification a = classify(f, grid);
        Classification b = classify(f5, grid);
        CHECK(a.verdict == b.verdict);
        // the fitted coefficients absorb the scale as 5^(1/r)
        double ratio = b.coefficients[0] / a.coefficients[0];
        CHECK(ratio == doctest::Approx(std::pow(5.0, 1.0 / 1.5)).epsilon(1e-9));
    }
}

TEST_CASE("multinomial fit") {
    auto grid = grid_for(2);
    SUBCASE("recovers (2, 3) for the binomial power") {
        Expression f = parse("(2*x + 3*y)^1.5", {"x", "y"});
        MultinomialFit fit = fit_multinomial(f, 1.5, std::array{1.0, 1.0}, grid);
        CHECK(fit.coefficients[0] == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(fit.coefficients[1] == doctest::Approx(3.0).epsilon(1e-9));
        CHECK(fit.residual <= 1e-9);
    }
    SUBCASE("sign canonicalization for even powers") {
        Expression f = parse("(x - y)^2", {"x", "y"});
        MultinomialFit fit = fit_multinomial(f, 2.0, std::array{2.0, 1.0}, grid);
        CHECK(fit.coefficients[0] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(fit.coefficients[1] == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(fit.residual <= 1e-9);
    }
    SUBCASE("r = 1 is rejected") {
        Expression f = parse("x^0.3*y^0.7", {"x", "y"});
        CHECK_THROWS_AS(fit_multinomial(f, 1.0, std::array{1.0, 1.0}, grid),
                        InvalidArgument);
    }
    SUBCASE("zero gradient at the base point is an error") {
        Expression f = parse("(x - y)^2", {"x", "y"});
        CHECK_THROWS_AS(fit_multinomial(f, 2.0, std::array{1.0, 1.0}, grid),
                        DomainError);
    }
}

TEST_CASE("multinomial round-trip across arities and degrees") {
    std::mt19937_64 rng(20240819);
    std::uniform_real_distribution<double> signed_coeff(-3.0, 3.0);
    std::uniform_real_distribution<double> positive_coeff(0.3, 3.0);
    const double degrees[] = {0.5, 1.5, 2.0, 3.0};
    for (int done = 0; done < 40; ++done) {
        std::size_t n = 2 + static_cast<std::size_t>(done % 4);
        double r = degrees[done % 4];
        auto grid = grid_for(n, 15);
        std::vector<double> c(n);
        if (r == 2.0) {
            // even powers tolerate sign changes of c.x; keep |c.x| away
            // from 0 so the degree estimate stays well conditioned
            for (;;) {
                for (auto& v : c) v = signed_coeff(rng);
                double min_abs = 1e30;
                for (const auto& p : grid) {
                    double dot = 0.0;
                    for (std::size_t i = 0; i < n; ++i) dot += c[i] * p[i];
                    min_abs = std::min(min_abs, std::fabs(dot));
                }
                if (min_abs > 0.3) break;
            }
        } else {
            for (auto& v : c) v = positive_coeff(rng);
        }

        FamilySpec spec;
        spec.tag = FamilyTag::Multinomial;
        spec.coefficients = c;
        spec.gamma = r;
        BuiltFamily built = build(spec, testutil::variable_names(n));
        Classification verdict = classify(built.ast, grid);
        CAPTURE(done);
        CHECK(verdict.verdict == Verdict::MultinomialPower);
        CHECK(verdict.fit_residual <= 1e-8);
    }
}

TEST_CASE("profile ODE vs closed form") {
    SUBCASE("reference pair r = 1.5, c = 0.7") {
        ProfileSolution sol = solve_profile_ode(1.5, 0.7, 0.1, 2.0);
        CHECK(sol.max_error < 1e-7);
        CHECK(sol.u.size() == 257);
    }
    SUBCASE("c = 0 degenerates to the constant trajectory w = r") {
        ProfileSolution sol = solve_profile_ode(2.0, 0.0, 0.1, 2.0);
        for (double w : sol.w_numeric) CHECK(w == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(sol.profile_c2() == 0.0);  // h(u) ~ u^r
    }
    SUBCASE("pole inside the range") {
        // pole at u = -r c = 1.0
        CHECK_THROWS_AS(solve_profile_ode(2.0, -0.5, 0.5, 1.5), DomainError);
        CHECK_THROWS_AS(solve_profile_ode(0.0, 0.5, 0.1, 1.0), InvalidArgument);
        CHECK_THROWS_AS(solve_profile_ode(2.0, 0.5, -1.0, 1.0), DomainError);
    }
    SUBCASE("closed form satisfies u w' - w + w^2/r = 0") {
        const double r = 1.7, c = 0.4;
        ProfileSolution sol = solve_profile_ode(r, c, 0.2, 1.8);
        for (double u : {0.3, 0.9, 1.5}) {
            double h = 1e-6;
            double wp = (sol.closed_form(u + h) - sol.closed_form(u - h)) / (2.0 * h);
            double w = sol.closed_form(u);
            CHECK(std::fabs(u * wp - w + w * w / r) < 1e-7);
        }
    }
}
