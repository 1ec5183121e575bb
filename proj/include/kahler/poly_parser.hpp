#pragma once

// Parser for exact polynomials in t.
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := base ('^' nonneg-int)?
//   base    := 't' | int ('/' positive-int)? | '(' expr ')'
//
// Whitespace is insignificant and implicit multiplication ("2t") is rejected.

#include "kahler/error.hpp"
#include "kahler/rational.hpp"
#include "kahler/series.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kahler {

struct poly_expr {
    enum class kind { variable, literal, negate, add, subtract, multiply, power };

    kind op = kind::literal;
    rational value;          // literal
    unsigned long exponent = 0; // power
    std::vector<poly_expr> children;

    static poly_expr variable() { return poly_expr{kind::variable, 0, 0, {}}; }
    static poly_expr literal(rational v) { return poly_expr{kind::literal, std::move(v), 0, {}}; }
    static poly_expr unary(kind k, poly_expr a) { return poly_expr{k, 0, 0, {std::move(a)}}; }
    static poly_expr binary(kind k, poly_expr a, poly_expr b)
    {
        return poly_expr{k, 0, 0, {std::move(a), std::move(b)}};
    }
    static poly_expr power_of(poly_expr base, unsigned long e) { return poly_expr{kind::power, 0, e, {std::move(base)}}; }

    friend bool operator==(const poly_expr& a, const poly_expr& b)
    {
        return a.op == b.op && a.value == b.value && a.exponent == b.exponent && a.children == b.children;
    }
};

/// Largest polynomial degree an expression may expand to.
inline constexpr long max_poly_degree = 1L << 16;

namespace detail {

class poly_parser
{
public:
    explicit poly_parser(std::string_view text) : text_(text) {}

    poly_expr parse()
    {
        skip_ws();
        if (pos_ == text_.size()) {
            fail("empty expression");
        }
        poly_expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            unexpected();
        }
        return e;
    }

private:
    poly_expr expr()
    {
        skip_ws();
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = text_[pos_] == '-';
            ++pos_;
        }
        poly_expr lhs = term();
        if (negate) {
            lhs = poly_expr::unary(poly_expr::kind::negate, std::move(lhs));
        }
        for (;;) {
            skip_ws();
            const char c = peek();
            if (c != '+' && c != '-') {
                return lhs;
            }
            ++pos_;
            poly_expr rhs = term();
            lhs = poly_expr::binary(c == '+' ? poly_expr::kind::add : poly_expr::kind::subtract, std::move(lhs),
                                    std::move(rhs));
        }
    }

    poly_expr term()
    {
        poly_expr lhs = factor();
        for (;;) {
            skip_ws();
            if (peek() != '*') {
                return lhs;
            }
            ++pos_;
            lhs = poly_expr::binary(poly_expr::kind::multiply, std::move(lhs), factor());
        }
    }

    poly_expr factor()
    {
        poly_expr b = base();
        skip_ws();
        if (peek() != '^') {
            return b;
        }
        ++pos_;
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
            fail("exponent must be a non-negative integer literal");
        }
        const std::size_t start = pos_;
        const std::string digits = read_digits();
        if (peek() == '.' || peek() == '/') {
            pos_ = start;
            fail("non-integer exponent");
        }
        if (digits.size() > 9) {
            pos_ = start;
            fail("exponent too large");
        }
        return poly_expr::power_of(std::move(b), std::stoul(digits));
    }

    poly_expr base()
    {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            poly_expr e = expr();
            skip_ws();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            integer num(read_digits());
            if (peek() == '.') {
                fail("decimal literals are not allowed; write a fraction such as 3/2");
            }
            integer den(1);
            if (peek() == '/') {
                ++pos_;
                if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                    fail("expected a positive integer denominator");
                }
                const std::size_t start = pos_;
                den = integer(read_digits());
                if (den == 0) {
                    pos_ = start;
                    fail("zero denominator");
                }
            }
            rational v{num, den};
            v.canonicalize();
            if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '(') {
                fail("implicit multiplication is not allowed; use '*'");
            }
            return poly_expr::literal(std::move(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size()
                   && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name != "t") {
                pos_ = start;
                fail("unknown variable '" + std::string(name) + "' (only t is allowed)");
            }
            skip_ws();
            if (peek() == '(' || std::isdigit(static_cast<unsigned char>(peek()))) {
                fail("implicit multiplication is not allowed; use '*'");
            }
            return poly_expr::variable();
        }
        if (c == '\0') {
            fail("unexpected end of input");
        }
        unexpected();
    }

    std::string read_digits()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    [[noreturn]] void unexpected() { fail(std::string("unexpected character '") + peek() + "'"); }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw error(errc::syntax, "column " + std::to_string(pos_ + 1) + ": " + msg);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline int precedence(const poly_expr& e)
{
    switch (e.op) {
    case poly_expr::kind::add:
    case poly_expr::kind::subtract: return 1;
    case poly_expr::kind::negate: return 1;
    case poly_expr::kind::multiply: return 2;
    case poly_expr::kind::power: return 3;
    case poly_expr::kind::literal: return e.value.get_den() == 1 ? 4 : 2;
    case poly_expr::kind::variable: return 4;
    }
    return 4;
}

inline void print(const poly_expr& e, std::string& out)
{
    auto child = [&out](const poly_expr& c, int min_prec) {
        if (precedence(c) < min_prec) {
            out += '(';
            print(c, out);
            out += ')';
        } else {
            print(c, out);
        }
    };
    switch (e.op) {
    case poly_expr::kind::variable: out += 't'; break;
    case poly_expr::kind::literal: out += e.value.get_str(); break;
    case poly_expr::kind::negate:
        out += '-';
        child(e.children[0], 2);
        break;
    case poly_expr::kind::add:
    case poly_expr::kind::subtract:
        child(e.children[0], 1);
        out += e.op == poly_expr::kind::add ? " + " : " - ";
        child(e.children[1], 2);
        break;
    case poly_expr::kind::multiply:
        child(e.children[0], 2);
        out += '*';
        child(e.children[1], 3);
        break;
    case poly_expr::kind::power:
        child(e.children[0], 4);
        out += '^';
        out += std::to_string(e.exponent);
        break;
    }
}

} // namespace detail

/// Parse text under the grammar above; throws error(errc::syntax) naming the column.
inline poly_expr parse_poly(std::string_view text) { return detail::poly_parser(text).parse(); }

/// Canonical printer; parse_poly(to_string(e)) == e.
inline std::string to_string(const poly_expr& e)
{
    std::string out;
    detail::print(e, out);
    return out;
}

/// Expand to an exact series (finite support, truncation `exact`).
inline truncated_series evaluate(const poly_expr& e)
{
    using k = poly_expr::kind;
    switch (e.op) {
    case k::variable: return truncated_series::monomial(1);
    case k::literal: return e.value == 0 ? truncated_series::zero() : truncated_series::monomial(0, e.value);
    case k::negate: return -evaluate(e.children[0]);
    case k::add: return evaluate(e.children[0]) + evaluate(e.children[1]);
    case k::subtract: return evaluate(e.children[0]) - evaluate(e.children[1]);
    case k::multiply: {
        truncated_series r = evaluate(e.children[0]) * evaluate(e.children[1]);
        if (r.degree() > max_poly_degree) {
            throw error(errc::invalid_input, "polynomial degree exceeds " + std::to_string(max_poly_degree));
        }
        return r;
    }
    case k::power: {
        const truncated_series b = evaluate(e.children[0]);
        if (e.exponent == 0) {
            return truncated_series::monomial(0);
        }
        if (b.is_zero()) {
            return b;
        }
        if (static_cast<long double>(b.degree()) * e.exponent > max_poly_degree) {
            throw error(errc::invalid_input, "polynomial degree exceeds " + std::to_string(max_poly_degree));
        }
        truncated_series result = truncated_series::monomial(0);
        truncated_series sq = b;
        for (unsigned long n = e.exponent;;) {
            if (n & 1UL) {
                result = result * sq;
            }
            n >>= 1;
            if (n == 0) {
                break;
            }
            sq = sq * sq;
        }
        return result;
    }
    }
    return truncated_series::zero();
}

inline truncated_series parse_series(std::string_view text) { return evaluate(parse_poly(text)); }

} // namespace kahler
