#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace kahler;
using testing::spec_of;

TEST_CASE("derivative modules")
{
    const ring_ptr plane = analyze(spec_of(testing::plane_4_9));
    const fractional_ideal D = derivative_module(plane);
    CHECK(D.vmin == 3);
    CHECK(D.values.gaps(0) == std::vector<int>{0, 1, 2, 4, 5, 6, 9, 10, 14});

    const ring_ptr reg = analyze(spec_of({"t"}));
    const fractional_ideal Dr = derivative_module(reg);
    CHECK(Dr.vmin == 0);
    CHECK(Dr.values.gaps(0).empty());

    CHECK(derivative_module(analyze(spec_of(testing::septic7))).vmin == 7);
}

TEST_CASE("septic branch")
{
    const differential_data d = compute(analyze(spec_of(testing::septic7)));
    CHECK(d.h_omega == 3);
    CHECK(d.v_Dinv == 3);
    CHECK(d.v_D == 7);
    CHECK(d.lambda_D == 10);
    CHECK(d.colength_tcD == 14);
    CHECK(d.ring->conductor == 14);
    CHECK(d.trace_D.vmin == 10);
    CHECK(d.maximal_torsion);
}

TEST_CASE("quartic branch")
{
    const differential_data d = compute(analyze(spec_of(testing::quartic4)));
    CHECK(d.h_omega == 15);
    CHECK(d.v_Dinv == 18);
    CHECK(d.v_D == 8);
    CHECK(d.colength_tcD == 37);
    CHECK(d.ring->conductor == 40);
    CHECK(d.trace_D.vmin == 26);
}

TEST_CASE("quartic plane branch")
{
    const differential_data d = compute(analyze(spec_of(testing::plane_4_9)));
    CHECK(d.h_omega == 6);
    CHECK(d.lambda_D == 9);
    CHECK(d.v_Dinv == 9);
    CHECK(d.ring->delta == 12);
}

TEST_CASE("regular branch")
{
    const differential_data d = compute(analyze(spec_of({"t"})));
    CHECK(d.h_omega == 0);
    CHECK(d.maximal_torsion);
    CHECK_FALSE(d.in_ms);
    CHECK_FALSE(d.mu_msJ);
}

TEST_CASE("cusp trace is the maximal ideal")
{
    const differential_data d = compute(analyze(spec_of(testing::cusp)));
    CHECK(d.h_omega == 1);
    CHECK(d.trace_is_maximal_ideal);
    CHECK(d.alpha == parse_series("t"));
}

TEST_CASE("J_min is an integral ideal of colength h")
{
    for (const auto& spec : testing::branch_corpus(20, 3)) {
        INFO(spec.name);
        const differential_data d = compute(analyze(spec));
        CHECK(is_integral(d.J_min));
        CHECK(colength_in_ring(d.J_min) == d.h_omega);
        CHECK(d.J_min.vmin == d.v_D + d.v_Dinv);
        CHECK(h_invariant(d.D) == d.h_omega);
        CHECK(h_invariant(d.J_min) == d.h_omega);
        CHECK(d.h_omega <= d.v_Dinv);
        CHECK(d.lambda_D <= d.ring->delta);
        CHECK(d.colength_tcD <= d.ring->conductor);
        CHECK(d.lambda_D - d.ring->delta == d.colength_tcD - d.ring->conductor);
        CHECK(d.v_D == d.ring->multiplicity - 1);
        // Isomorphic modules have the same trace.
        CHECK(trace(d.J_min).basis == d.trace_D.basis);
        if (d.mu_msJ) {
            CHECK(d.in_ms == true);
        }
    }
}

TEST_CASE("h depends on the ring, not the parametrization")
{
    // t -> t + t^2 reparametrizes the cusp.
    const differential_data a = compute(analyze(spec_of(testing::cusp)));
    const differential_data b = compute(analyze(spec_of({"(t+t^2)^2", "(t+t^2)^3"})));
    CHECK(a.h_omega == b.h_omega);
    CHECK(a.ring->gaps == b.ring->gaps);
    CHECK(a.lambda_D == b.lambda_D);
}
