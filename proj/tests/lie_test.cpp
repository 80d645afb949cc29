/*
   Copyright 2026 The darboux-workbench authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <catch2/catch_amalgamated.hpp>

#include <darboux/darboux.hpp>
#include <darboux/lie.hpp>

#include "testutil.hpp"

using namespace darboux;
using testutil::load_fixture;
using testutil::random_poly;
using testutil::random_rat;

TEST_CASE("lie derivative on Lorenz surfaces") {
    const SystemSpec b2s = load_fixture("lorenz_b2s.vf");
    const Poly f = parse_poly("x^2 - 2*z", b2s.variables);
    CHECK(lie_derivative(b2s.field, f) == f * Rat(-2));

    const SystemSpec b1r0 = load_fixture("lorenz_b1r0.vf");
    const Poly g = parse_poly("y^2 + z^2", b1r0.variables);
    CHECK(lie_derivative(b1r0.field, g) == g * Rat(-2));
}

TEST_CASE("lie derivative in one variable") {
    const Context c = make_context({"x"});
    const VectorField X = make_vector_field(c, {Poly::variable(c, 0)});
    CHECK(lie_derivative(X, parse_poly("x^3", c)) == parse_poly("3*x^3", c));
}

TEST_CASE("divergence") {
    CHECK(divergence(load_fixture("lorenz_b2s.vf").field) ==
          Poly::constant(make_context({"x", "y", "z"}), Rat(-4)));
    CHECK(divergence(load_fixture("rot2.vf").field).is_zero());
    CHECK(divergence(load_fixture("diag3.vf").field) ==
          Poly::constant(make_context({"x", "y", "z"}), Rat(3)));
}

TEST_CASE("jacobian matrix entries") {
    const Context c3 = make_context({"x", "y", "z"});
    const RfMatrix J = jacobian_matrix({parse_ratfunc("x/y", c3), parse_ratfunc("y/z", c3)});
    REQUIRE(J.rows == 2);
    REQUIRE(J.cols == 3);
    CHECK(J.at(0, 0) == parse_ratfunc("1/y", c3));
    CHECK(J.at(0, 1) == parse_ratfunc("-x/y^2", c3));
    CHECK(J.at(0, 2).is_zero());
    CHECK(J.at(1, 0).is_zero());
    CHECK(J.at(1, 1) == parse_ratfunc("1/z", c3));
    CHECK(J.at(1, 2) == parse_ratfunc("-y/z^2", c3));

    const Context c2 = make_context({"x", "y"});
    const RfMatrix J2 = jacobian_matrix({parse_ratfunc("x + y", c2)});
    CHECK(J2.at(0, 0) == RatFunc::constant(c2, Rat(1)));
    CHECK(J2.at(0, 1) == RatFunc::constant(c2, Rat(1)));

    const RfMatrix J3 = jacobian_matrix({parse_ratfunc("x^2", c2), parse_ratfunc("y^2", c2)});
    CHECK(J3.at(0, 0) == parse_ratfunc("2*x", c2));
    CHECK(J3.at(0, 1).is_zero());
    CHECK(J3.at(1, 1) == parse_ratfunc("2*y", c2));
}

TEST_CASE("functional independence verdicts") {
    const Context c3 = make_context({"x", "y", "z"});
    const auto indep =
        functionally_independent({parse_ratfunc("x/y", c3), parse_ratfunc("y/z", c3)}, 0);
    REQUIRE(indep.independent);
    // The certificate point reproduces full rank exactly.
    const RfMatrix J = jacobian_matrix({parse_ratfunc("x/y", c3), parse_ratfunc("y/z", c3)});
    QMatrix M(J.rows, J.cols);
    for (std::size_t i = 0; i < J.rows; ++i)
        for (std::size_t j = 0; j < J.cols; ++j) {
            auto v = J.at(i, j).eval(indep.point);
            REQUIRE(v);
            M.at(i, j) = *v;
        }
    CHECK(rank(M) == 2);

    const Context c2 = make_context({"x", "y"});
    const auto dep = functionally_independent(
        {parse_ratfunc("x + y", c2), parse_ratfunc("(x + y)^2", c2)}, 1);
    CHECK_FALSE(dep.independent);

    CHECK(functionally_independent({parse_ratfunc("x", c2)}, 2).independent);
}

TEST_CASE("lie derivative is a derivation") {
    const SystemSpec spec = load_fixture("lorenz_s13.vf");
    std::mt19937_64 rng(37);
    for (int i = 0; i < 110; ++i) {
        const Poly f = random_poly(rng, spec.variables, 3);
        const Poly g = random_poly(rng, spec.variables, 3);
        const Rat a = random_rat(rng), b = random_rat(rng);
        CHECK(lie_derivative(spec.field, f * g) ==
              f * lie_derivative(spec.field, g) + g * lie_derivative(spec.field, f));
        CHECK(lie_derivative(spec.field, f * a + g * b) ==
              lie_derivative(spec.field, f) * a + lie_derivative(spec.field, g) * b);
    }
}

TEST_CASE("verified Darboux pairs satisfy the defining identity") {
    const SystemSpec spec = load_fixture("lorenz_b1s1.vf");
    const Poly f = parse_poly("y^2 + z^2 - 28*x^2", spec.variables);
    const auto pair = verify_darboux(spec.field, f);
    REQUIRE(pair);
    CHECK((lie_derivative(spec.field, f) - pair->k * f).is_zero());
}
