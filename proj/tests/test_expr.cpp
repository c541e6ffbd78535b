#include <doctest.h>

#include <array>
#include <cmath>
#include <cstring>
#include <numbers>

#include "hypersurf/expr.hpp"
#include "testutil.hpp"

using namespace hypersurf;

namespace {

double eval(const std::string& src, std::vector<std::string> vars,
            std::vector<double> point) {
    Expression e = parse(src, std::move(vars));
    return e(point);
}

}  // namespace

TEST_CASE("parse builds the expected tree for (x + 2*y)^3") {
    Expression got = parse("(x + 2*y)^3", {"x", "y"});
    ExprPtr expected = ExprNode::binary(
        BinaryOp::Pow,
        ExprNode::binary(BinaryOp::Add, ExprNode::variable(0),
                         ExprNode::binary(BinaryOp::Mul, ExprNode::constant(2.0),
                                          ExprNode::variable(1))),
        ExprNode::constant(3.0));
    CHECK(structurally_equal(*got.root(), *expected));
}

TEST_CASE("power is right-associative") {
    CHECK(eval("2^3^2", {}, {}) == 512.0);
    CHECK(eval("(2^3)^2", {}, {}) == 64.0);
}

TEST_CASE("precedence: ^ binds tighter than unary minus, * tighter than +") {
    CHECK(eval("-2^2", {}, {}) == -4.0);
    CHECK(eval("2 + 3*4", {}, {}) == 14.0);
    CHECK(eval("2*x^2", {"x"}, {3.0}) == 18.0);
    CHECK(eval("2^-3", {}, {}) == 0.125);
    CHECK(eval("6/3/2", {}, {}) == 1.0);
    CHECK(eval("8 - 3 - 2", {}, {}) == 3.0);
}

TEST_CASE("syntax errors carry the offending position") {
    try {
        parse("x + * y", {"x", "y"});
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
    CHECK_THROWS_AS(parse("log(", {"x"}), ParseError);
    CHECK_THROWS_AS(parse("2x", {"x"}), ParseError);  // no implicit multiplication
    CHECK_THROWS_AS(parse("x + z", {"x", "y"}), ParseError);
    CHECK_THROWS_AS(parse("", {"x"}), InvalidArgument);
    CHECK_THROWS_AS(parse("x + x", {"x", "x"}), InvalidArgument);
}

TEST_CASE("evaluation basics and domain errors") {
    CHECK(eval("(x+y)^2", {"x", "y"}, {1.0, 2.0}) == 9.0);
    CHECK(eval("sqrt(x*y)", {"x", "y"}, {4.0, 9.0}) == 6.0);
    CHECK_THROWS_AS(eval("log(x)", {"x"}, {0.0}), DomainError);
    CHECK_THROWS_AS(eval("sqrt(x)", {"x"}, {-1.0}), DomainError);
    CHECK_THROWS_AS(eval("1/x", {"x"}, {0.0}), DomainError);
    CHECK_THROWS_AS(eval("x^0.5", {"x"}, {-4.0}), DomainError);
    CHECK_THROWS_AS(eval("0^-1", {}, {}), DomainError);
    CHECK(eval("(-2)^3", {}, {}) == -8.0);
    CHECK(eval("(-2)^2", {}, {}) == 4.0);
}

TEST_CASE("predefined constants pi and e") {
    CHECK(eval("pi", {}, {}) == doctest::Approx(std::numbers::pi));
    CHECK(eval("e", {}, {}) == doctest::Approx(std::numbers::e));
    CHECK(eval("log(e)", {}, {}) == doctest::Approx(1.0));
}

TEST_CASE("hand-computed corpus") {
    struct Case {
        const char* src;
        std::vector<double> point;
        double expected;
    };
    // All over variables (x, y); unary cases ignore y.
    const Case corpus[] = {
        {"x + y", {1, 2}, 3},
        {"x - y", {5, 2}, 3},
        {"x*y", {3, 4}, 12},
        {"x/y", {9, 3}, 3},
        {"x^2 + y^2", {3, 4}, 25},
        {"(x + y)/(x - y)", {3, 1}, 2},
        {"sqrt(x^2 + y^2)", {3, 4}, 5},
        {"exp(0*x)", {7, 0}, 1},
        {"log(x*y)", {1, 1}, 0},
        {"abs(x - y)", {2, 5}, 3},
        {"-x + y", {3, 10}, 7},
        {"2*x + 3*y", {1, 1}, 5},
        {"x^0.5", {16, 0}, 4},
        {"x^-2", {2, 0}, 0.25},
        {"(2*x + 3*y)^1.5", {2, 4}, 64},
        {"x*y + x/y", {2, 2}, 5},
        {"1 + 2*3^2", {0, 0}, 19},
        {"(1 + 2)*3^2", {0, 0}, 27},
        {"sqrt(abs(y - x))", {5, 1}, 2},
        {"x^y", {2, 10}, 1024},
    };
    for (const auto& c : corpus) {
        CAPTURE(c.src);
        CHECK(eval(c.src, {"x", "y"}, c.point) == doctest::Approx(c.expected).epsilon(1e-14));
    }
}

TEST_CASE("round-trip: print then re-parse is structurally identical") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 200; ++trial) {
        testutil::RandomExpr gen(rng, 3);
        Expression e = gen.generate(4);
        std::string text = e.to_string();
        CAPTURE(text);
        Expression back = parse(text, e.variables());
        CHECK(e.structurally_equal_to(back));
    }
}

TEST_CASE("evaluation is pure: repeated calls are bit-identical") {
    std::mt19937_64 rng(7);
    testutil::RandomExpr gen(rng, 2);
    Expression e = gen.generate(4);
    auto p = testutil::random_point(rng, 2);
    double a = e(p);
    double b = e(p);
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("arity mismatch is rejected") {
    Expression e = parse("x + y", {"x", "y"});
    std::array<double, 3> p{1, 2, 3};
    CHECK_THROWS_AS(evaluate<double>(e, std::span<const double>(p)), InvalidArgument);
}
