#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace kahler;
using testing::spec_of;

namespace {

errc analyze_error(const branch_spec& spec, const analyze_options& opts = {})
{
    try {
        (void)analyze(spec, opts);
    } catch (const error& e) {
        return e.code();
    }
    FAIL("analysis succeeded");
    return errc::internal_inconsistency;
}

} // namespace

TEST_CASE("regular branch")
{
    const ring_ptr r = analyze(spec_of({"t"}));
    CHECK(r->embdim == 1);
    CHECK(r->delta == 0);
    CHECK(r->conductor == 0);
    CHECK(r->gaps.empty());
    CHECK_FALSE(r->order_s);
    CHECK(r->gorenstein);
    CHECK(r->stable);
    CHECK(embedding_dimension(*r) == 1);
    CHECK(is_gorenstein(*r));
    CHECK_THROWS_AS(order_s(*r), error);
}

TEST_CASE("plane branch t^4+t^5, t^9")
{
    const ring_ptr r = analyze(spec_of(testing::plane_4_9));
    CHECK(r->gaps == std::vector<int>{1, 2, 3, 5, 6, 7, 10, 11, 14, 15, 19, 23});
    CHECK(r->delta == 12);
    CHECK(r->conductor == 24);
    CHECK(r->embdim == 2);
    // A plane curve of multiplicity 4 is cut out by one equation of order 4.
    CHECK(r->order_s == 3);
    CHECK(r->gorenstein);
}

TEST_CASE("space curve <5, 6, 14>")
{
    const ring_ptr r = analyze(spec_of({"t^5", "t^6", "t^14"}));
    CHECK(r->conductor == 14);
    CHECK(r->delta == 8);
    CHECK(r->gaps == std::vector<int>{1, 2, 3, 4, 7, 8, 9, 13});
    CHECK(r->embdim == 3);
}

TEST_CASE("embedding dimension")
{
    CHECK(embedding_dimension(*analyze(spec_of(testing::septic7))) == 7);
    CHECK(embedding_dimension(*analyze(spec_of({"t^4+t^5", "t^9", "t^4"}))) == 2);
    CHECK(embedding_dimension(*analyze(spec_of({"t^2", "t^3", "t^4", "t^5"}))) == 2);
}

TEST_CASE("order s")
{
    CHECK(order_s(*analyze(spec_of(testing::septic7))) == 1);
    CHECK(order_s(*analyze(spec_of(testing::cusp))) == 1);
    CHECK(order_s(*analyze(spec_of({"t^3", "t^4", "t^5"}))) == 1);
    CHECK(order_s(*analyze(spec_of({"t^3", "t^4"}))) == 2);
    CHECK(order_s(*analyze(spec_of({"t^5", "t^7"}))) == 4);
}

TEST_CASE("Gorenstein flag")
{
    CHECK(is_gorenstein(*analyze(spec_of(testing::cusp))));
    CHECK_FALSE(is_gorenstein(*analyze(spec_of({"t^3", "t^4", "t^5"}))));
    CHECK(is_gorenstein(*analyze(spec_of({"t"}))));
    CHECK_FALSE(analyze(spec_of({"t^3", "t^4", "t^5"}))->gorenstein);
}

TEST_CASE("cusp maximal-ideal filtration dimensions")
{
    const ring_ptr r = analyze(spec_of(testing::cusp));
    for (std::size_t d = 1; d + 1 < r->maximal_powers.size(); ++d) {
        CHECK(quotient_dim(r->maximal_powers[d], r->maximal_powers[d + 1], 2) == 2);
    }
}

TEST_CASE("validation errors")
{
    CHECK(analyze_error(branch_spec{}) == errc::invalid_input);
    CHECK(analyze_error(spec_of({"t^2", "1 + t"})) == errc::non_positive_valuation_generator);
    CHECK(analyze_error(spec_of({"t^2", "t - t"})) == errc::non_positive_valuation_generator);
    CHECK(analyze_error(spec_of({"t^2", "t^4"})) == errc::imprimitive_parametrization);
    CHECK(analyze_error(spec_of({"t^4", "t^6 + t^8"})) == errc::imprimitive_parametrization);
}

TEST_CASE("imprimitive message suggests the substitution")
{
    try {
        (void)analyze(spec_of({"t^2", "t^4"}));
    } catch (const error& e) {
        CHECK(std::string(e.what()).find("u = t^2") != std::string::npos);
    }
}

TEST_CASE("truncation cap")
{
    analyze_options opts;
    opts.initial_truncation = 16;
    opts.max_truncation = 16;
    CHECK(analyze_error(spec_of({"t^9", "t^14+t^15", "t^17", "t^29"}), opts) == errc::truncation_exhausted);
}

TEST_CASE("gcd one reached only at high valuation")
{
    const ring_ptr r = analyze(spec_of({"t^4", "t^6 + t^31"}));
    CHECK(r->gaps.back() + 1 == r->conductor);
    CHECK(r->delta == static_cast<int>(r->gaps.size()));
}

TEST_CASE("monomial branches agree with the sieve")
{
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> ncount(2, 4);
    for (int trial = 0; trial < 40; ++trial) {
        const std::vector<int> a = testing::random_primitive_tuple(rng, ncount(rng), 20);
        branch_spec spec;
        for (int x : a) {
            spec.generators.push_back(parse_poly("t^" + std::to_string(x)));
        }
        const ring_ptr r = analyze(spec);
        const auto s = testing::sieve(a);
        CHECK(r->gaps == s.gaps);
        CHECK(r->conductor == s.conductor);
        CHECK(r->gorenstein == s.symmetric);
    }
}

TEST_CASE("structural invariants on the corpus")
{
    for (const auto& spec : testing::branch_corpus(30, 1)) {
        INFO(spec.name);
        const ring_ptr r = analyze(spec);
        CHECK(r->delta == static_cast<int>(r->gaps.size()));
        CHECK(r->conductor == (r->gaps.empty() ? 0 : r->gaps.back() + 1));
        CHECK((r->embdim == 1) == (r->delta == 0));
        CHECK((r->delta == 0) == (r->conductor == 0));
        if (r->embdim >= 2) {
            CHECK(r->order_s >= 1);
        }
        // Semigroup closure below N/2.
        const std::vector<int> achieved = r->ring_basis.pivot_valuations();
        for (int u : achieved) {
            for (int v : achieved) {
                if (u + v < r->truncation / 2 && u <= v) {
                    CHECK(r->in_semigroup(u + v));
                }
            }
        }
        // Doubling invariance.
        analyze_options opts;
        opts.initial_truncation = 2 * r->truncation;
        const ring_ptr d = analyze(spec, opts);
        CHECK(d->gaps == r->gaps);
        CHECK(d->embdim == r->embdim);
        CHECK(d->order_s == r->order_s);
        CHECK(d->gorenstein == r->gorenstein);
    }
}

TEST_CASE("labels name generators in errors")
{
    branch_spec spec = spec_of({"t^2", "2"});
    spec.labels = {"x", "y"};
    try {
        (void)analyze(spec);
    } catch (const error& e) {
        CHECK(std::string(e.what()).find("(y = 2)") != std::string::npos);
    }
    try {
        (void)branch_spec::from_strings({"t^2", "2t"});
    } catch (const error& e) {
        CHECK(e.code() == errc::syntax);
        CHECK(std::string(e.what()).find("generator 2") != std::string::npos);
    }
}
