#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace kahler;
using testing::to_sparse;
using sparse = testing::sparse_poly;

namespace {

errc parse_error(const std::string& text)
{
    try {
        (void)parse_poly(text);
    } catch (const error& e) {
        return e.code();
    }
    FAIL("no error for \"" << text << "\"");
    return errc::internal_inconsistency;
}

std::string parse_message(const std::string& text)
{
    try {
        (void)parse_poly(text);
    } catch (const error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("parse and evaluate basic polynomials")
{
    CHECK(to_sparse(parse_series("64*t^10 - 81*t^12")) == sparse{{10, 64}, {12, -81}});
    CHECK(to_sparse(parse_series("t")) == sparse{{1, 1}});
    CHECK(to_sparse(parse_series("(t^2+1)^2")) == sparse{{0, 1}, {2, 2}, {4, 1}});
    CHECK(to_sparse(parse_series("3/6*t")) == sparse{{1, rational(1, 2)}});
    CHECK(to_sparse(parse_series("  t ^ 3 *2 ")) == sparse{{3, 2}});
    CHECK(parse_series("t - t").is_zero());
    CHECK(to_sparse(parse_series("-t^2 + t")) == sparse{{1, 1}, {2, -1}});
    CHECK(to_sparse(parse_series("t^0")) == sparse{{0, 1}});
}

TEST_CASE("binomial expansion matches the binomial theorem")
{
    for (unsigned k = 0; k <= 12; ++k) {
        const truncated_series f = parse_series("(1+t)^" + std::to_string(k));
        sparse expected;
        for (unsigned j = 0; j <= k; ++j) {
            expected[static_cast<int>(j)] = rational(binomial(k, j));
        }
        CHECK(to_sparse(f) == expected);
    }
}

TEST_CASE("syntax errors")
{
    CHECK(parse_error("2t") == errc::syntax);
    CHECK(parse_error("2*x") == errc::syntax);
    CHECK(parse_error("t^2.5") == errc::syntax);
    CHECK(parse_error("t^(2)") == errc::syntax);
    CHECK(parse_error("t^-1") == errc::syntax);
    CHECK(parse_error("1.5*t") == errc::syntax);
    CHECK(parse_error("1/0") == errc::syntax);
    CHECK(parse_error("") == errc::syntax);
    CHECK(parse_error("   ") == errc::syntax);
    CHECK(parse_error("(t+1") == errc::syntax);
    CHECK(parse_error("t+") == errc::syntax);
    CHECK(parse_error("t)") == errc::syntax);
    CHECK(parse_error("t(t+1)") == errc::syntax);
    CHECK(parse_error("t t") == errc::syntax);
}

TEST_CASE("error messages carry the column")
{
    CHECK(parse_message("t + 2t").find("column 6") != std::string::npos);
    CHECK(parse_message("t^2.5").find("non-integer exponent") != std::string::npos);
    CHECK(parse_message("t + y").find("unknown variable 'y'") != std::string::npos);
}

TEST_CASE("degree guard")
{
    CHECK_THROWS_AS(parse_series("(1+t)^100000"), error);
    CHECK_NOTHROW(parse_series("t^1000"));
}

namespace {

poly_expr random_expr(std::mt19937& rng, int depth)
{
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
    std::uniform_int_distribution<int> small(0, 9);
    switch (pick(rng)) {
    case 0: return poly_expr::variable();
    case 1: {
        rational v(small(rng), 1 + small(rng) % 4);
        v.canonicalize();
        return poly_expr::literal(v);
    }
    case 2: return poly_expr::unary(poly_expr::kind::negate, random_expr(rng, depth - 1));
    case 3: return poly_expr::binary(poly_expr::kind::add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4:
        return poly_expr::binary(poly_expr::kind::subtract, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5:
        return poly_expr::binary(poly_expr::kind::multiply, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    default: return poly_expr::power_of(random_expr(rng, depth - 1), static_cast<unsigned long>(small(rng) % 4));
    }
}

} // namespace

TEST_CASE("printer output evaluates to the same polynomial")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const poly_expr e = random_expr(rng, 4);
        const std::string text = to_string(e);
        INFO(text);
        const poly_expr back = parse_poly(text);
        CHECK(evaluate(back) == evaluate(e));
        CHECK(to_string(back) == text);
    }
}

TEST_CASE("canonical expressions round-trip exactly")
{
    for (const char* text : {"t^8 + t^9", "64*t^10 - 81*t^12", "(t^2 + 1)^2", "-t + 1/2*t^3", "t*(t - 1)"}) {
        const poly_expr e = parse_poly(text);
        CHECK(parse_poly(to_string(e)) == e);
    }
}
