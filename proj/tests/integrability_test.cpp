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

#include <darboux/integrability.hpp>

#include "testutil.hpp"

using namespace darboux;
using testutil::load_fixture;

namespace {

DarbouxPair pair_of(const SystemSpec& spec, const std::string& f, const std::string& k) {
    return DarbouxPair{parse_poly(f, spec.variables), parse_poly(k, spec.variables)};
}

}  // namespace

TEST_CASE("multiplier exponents on Lorenz r = 0 families") {
    const SystemSpec s2 = load_fixture("lorenz_s2r0b1.vf");
    auto res = multiplier_exponents({pair_of(s2, "y^2 + z^2", "-2")}, s2.field);
    REQUIRE(std::holds_alternative<MultiplierCertificate>(res));
    const auto& cert = std::get<MultiplierCertificate>(res);
    CHECK(cert.exponents == std::vector<Rat>{Rat(-2)});
    REQUIRE(cert.multiplier);
    CHECK(*cert.multiplier ==
          parse_ratfunc("1/((y^2 + z^2)^2)", s2.variables));
    CHECK(cert.residual_checked);
    CHECK(cert.integral_directions.empty());
    // Independent route: X(J) = 4 J = -J div X, expanded symbolically.
    CHECK(lie_derivative(s2.field, *cert.multiplier) == *cert.multiplier * Rat(4));

    const SystemSpec b2s = load_fixture("lorenz_b2s.vf");
    auto res2 = multiplier_exponents({pair_of(b2s, "x^2 - 2*z", "-2")}, b2s.field);
    REQUIRE(std::holds_alternative<MultiplierCertificate>(res2));
    const auto& cert2 = std::get<MultiplierCertificate>(res2);
    CHECK(cert2.exponents == std::vector<Rat>{Rat(-2)});
    REQUIRE(cert2.multiplier);
    CHECK(*cert2.multiplier == parse_ratfunc("1/((x^2 - 2*z)^2)", b2s.variables));
}

TEST_CASE("multiplier exponents can be unsolvable") {
    const Context c2 = make_context({"x", "y"});
    const VectorField X =
        make_vector_field(c2, {parse_poly("x^2", c2), parse_poly("y", c2)});
    const DarbouxPair p{parse_poly("x", c2), parse_poly("x", c2)};
    REQUIRE(is_darboux_pair(X, p.f, p.k));
    auto res = multiplier_exponents({p}, X);
    REQUIRE(std::holds_alternative<NoSolutionInfo>(res));
    CHECK_FALSE(std::get<NoSolutionInfo>(res).detail.empty());
}

TEST_CASE("multiplier with nontrivial homogeneous space minimizes the sup norm") {
    const SystemSpec d3 = load_fixture("diag3.vf");
    auto res = multiplier_exponents(
        {pair_of(d3, "x", "1"), pair_of(d3, "y", "1"), pair_of(d3, "z", "1")}, d3.field);
    REQUIRE(std::holds_alternative<MultiplierCertificate>(res));
    const auto& cert = std::get<MultiplierCertificate>(res);
    CHECK(cert.exponents == std::vector<Rat>{Rat(-1), Rat(-1), Rat(-1)});
    REQUIRE(cert.multiplier);
    CHECK(*cert.multiplier == parse_ratfunc("1/(x*y*z)", d3.variables));
    CHECK(cert.integral_directions.size() == 2);
}

TEST_CASE("first integral exponents") {
    const Context c2 = make_context({"x", "y"});
    const VectorField X = make_vector_field(c2, {parse_poly("x", c2), parse_poly("y", c2)});
    const std::vector<DarbouxPair> pairs{
        DarbouxPair{parse_poly("x", c2), parse_poly("1", c2)},
        DarbouxPair{parse_poly("y", c2), parse_poly("1", c2)}};
    const auto certs = first_integral_exponents(X, pairs);
    REQUIRE(certs.size() == 1);
    CHECK(certs[0].lambdas == std::vector<Rat>{Rat(1), Rat(-1)});

    // Equal cofactors always give the (1, -1) direction.
    const SystemSpec b2s = load_fixture("lorenz_b2s.vf");
    const Poly f = parse_poly("x^2 - 2*z", b2s.variables);
    const auto certs2 = first_integral_exponents(
        b2s.field, {DarbouxPair{f, parse_poly("-2", b2s.variables)},
                    DarbouxPair{f * f, parse_poly("-4", b2s.variables)}});
    REQUIRE(certs2.size() == 1);
    CHECK(certs2[0].lambdas == std::vector<Rat>{Rat(2), Rat(-1)});

    // A single pair with nonzero cofactor has no nontrivial direction.
    const SystemSpec s2 = load_fixture("lorenz_s2r0b1.vf");
    CHECK(first_integral_exponents(s2.field, {pair_of(s2, "y^2 + z^2", "-2")}).empty());
}

TEST_CASE("cofactor-space duality") {
    const SystemSpec d3 = load_fixture("diag3.vf");
    const std::vector<DarbouxPair> pairs{pair_of(d3, "x", "1"), pair_of(d3, "y", "1"),
                                         pair_of(d3, "z", "1")};
    auto mres = multiplier_exponents(pairs, d3.field);
    REQUIRE(std::holds_alternative<MultiplierCertificate>(mres));
    const auto certs = first_integral_exponents(d3.field, pairs);
    const auto& dirs = std::get<MultiplierCertificate>(mres).integral_directions;
    REQUIRE(certs.size() == dirs.size());
    for (std::size_t i = 0; i < certs.size(); ++i) CHECK(certs[i].lambdas == dirs[i]);
}

TEST_CASE("verify_jacobian_multiplier") {
    const SystemSpec rot2 = load_fixture("rot2.vf");
    CHECK(verify_jacobian_multiplier(rot2.field, parse_ratfunc("x^2 + y^2", rot2.variables))
              .status == JacobianCheck::Status::verified);

    const SystemSpec s2 = load_fixture("lorenz_s2r0b1.vf");
    CHECK(verify_jacobian_multiplier(s2.field,
                                     parse_ratfunc("1/((y^2 + z^2)^2)", s2.variables))
              .status == JacobianCheck::Status::verified);

    const Context c2 = make_context({"x", "y"});
    const VectorField X = make_vector_field(c2, {parse_poly("x", c2), parse_poly("y", c2)});
    const auto failed = verify_jacobian_multiplier(X, parse_ratfunc("x", c2));
    CHECK(failed.status == JacobianCheck::Status::failed);
    CHECK(failed.residual == parse_ratfunc("3*x", c2));

    CHECK(verify_jacobian_multiplier(rot2.field, parse_ratfunc("5", rot2.variables)).status ==
          JacobianCheck::Status::constant_warning);
    CHECK_THROWS_AS(verify_jacobian_multiplier(X, RatFunc(Poly::zero(c2))),
                    std::invalid_argument);
}

TEST_CASE("log-derivative multiplier checks (fractional exponents)") {
    const SystemSpec s1 = load_fixture("lorenz_s1r0b1.vf");
    const std::vector<DarbouxPair> pairs{pair_of(s1, "y^2 + z^2", "-2")};
    CHECK(verify_log_derivative_multiplier(s1.field, pairs, {Rat(-3, 2)}));
    CHECK_FALSE(verify_log_derivative_multiplier(s1.field, pairs, {Rat(1)}));

    const SystemSpec s2 = load_fixture("lorenz_s2r0b1.vf");
    const std::vector<DarbouxPair> pairs2{pair_of(s2, "y^2 + z^2", "-2")};
    CHECK(verify_log_derivative_multiplier(s2.field, pairs2, {Rat(-2)}));
}

TEST_CASE("log-derivative route agrees with the materialized multiplier") {
    // Cross-implementation oracle on integer exponents.
    const Context c2 = make_context({"x", "y"});
    const VectorField X = make_vector_field(c2, {parse_poly("x", c2), parse_poly("y", c2)});
    std::mt19937_64 rng(47);
    for (int i = 0; i < 40; ++i) {
        // Homogeneous Darboux polynomials with degree cofactors.
        Poly f(c2), g(c2);
        const unsigned d1 = 1 + rng() % 2, d2 = 1 + rng() % 2;
        for (unsigned k = 0; k <= d1; ++k)
            f.add_term(Monomial({k, d1 - k}), testutil::random_rat(rng, 3, 1));
        for (unsigned k = 0; k <= d2; ++k)
            g.add_term(Monomial({k, d2 - k}), testutil::random_rat(rng, 3, 1));
        if (f.is_zero() || g.is_zero()) continue;
        const auto pf = verify_darboux(X, f);
        const auto pg = verify_darboux(X, g);
        REQUIRE(pf);
        REQUIRE(pg);
        const long long e1 = static_cast<long long>(rng() % 5) - 2;
        const long long e2 = static_cast<long long>(rng() % 5) - 2;
        const std::vector<Rat> exps{Rat(e1), Rat(e2)};
        Poly num = Poly::constant(c2, Rat(1)), den = num;
        if (e1 >= 0) num = num * f.pow(static_cast<unsigned>(e1));
        else den = den * f.pow(static_cast<unsigned>(-e1));
        if (e2 >= 0) num = num * g.pow(static_cast<unsigned>(e2));
        else den = den * g.pow(static_cast<unsigned>(-e2));
        const RatFunc J(num, den);
        if (J.is_zero()) continue;
        const bool log_route = verify_log_derivative_multiplier(X, {*pf, *pg}, exps);
        const auto direct = verify_jacobian_multiplier(X, J);
        const bool direct_ok = direct.status != JacobianCheck::Status::failed;
        CHECK(log_route == direct_ok);
    }
}

TEST_CASE("solve_log_coefficients") {
    const SystemSpec shear = load_fixture("shear.vf");
    const auto sol = solve_log_coefficients(shear.field, parse_ratfunc("-x", shear.variables),
                                            {parse_ratfunc("y", shear.variables)});
    REQUIRE(sol);
    CHECK(sol->particular == std::vector<Rat>{Rat(1)});
    CHECK(sol->homogeneous.empty());

    const auto flipped = solve_log_coefficients(shear.field, parse_ratfunc("x", shear.variables),
                                                {parse_ratfunc("y", shear.variables)});
    REQUIRE(flipped);
    CHECK(flipped->particular == std::vector<Rat>{Rat(-1)});

    const Context c2 = make_context({"x", "y"});
    const VectorField X =
        make_vector_field(c2, {parse_poly("x", c2), parse_poly("2*y", c2)});
    const auto hom = solve_log_coefficients(X, RatFunc(Poly::zero(c2)),
                                            {parse_ratfunc("x", c2), parse_ratfunc("y", c2)});
    REQUIRE(hom);
    CHECK(hom->particular == std::vector<Rat>{Rat(0), Rat(0)});
    CHECK(hom->homogeneous == std::vector<std::vector<Rat>>{{Rat(2), Rat(-1)}});

    // Inconsistent: X(w0) has no matching log-derivative combination.
    const auto none = solve_log_coefficients(shear.field, parse_ratfunc("y", shear.variables),
                                             {parse_ratfunc("y", shear.variables)});
    CHECK_FALSE(none);
}

TEST_CASE("verify_elementary_first_integral") {
    const SystemSpec shear = load_fixture("shear.vf");
    ElementaryIntegralExpr good{parse_ratfunc("-x", shear.variables),
                                {LogTerm{Rat(1), parse_ratfunc("y", shear.variables)}}};
    CHECK(verify_elementary_first_integral(shear.field, good));

    ElementaryIntegralExpr bad{parse_ratfunc("x", shear.variables),
                               {LogTerm{Rat(1), parse_ratfunc("y", shear.variables)}}};
    CHECK_FALSE(verify_elementary_first_integral(shear.field, bad));

    // Log-free degenerate case: a rational first integral as w0.
    const Context c2 = make_context({"x", "y"});
    const VectorField X = make_vector_field(c2, {parse_poly("x", c2), parse_poly("y", c2)});
    ElementaryIntegralExpr ratl{parse_ratfunc("x/y", c2), {}};
    CHECK(verify_elementary_first_integral(X, ratl));
}

TEST_CASE("cramer reconstruction on diag3") {
    const SystemSpec d3 = load_fixture("diag3.vf");
    auto res = cramer_multiplier(
        d3.field, {parse_ratfunc("x/y", d3.variables), parse_ratfunc("y/z", d3.variables)}, 0);
    REQUIRE(std::holds_alternative<CramerData>(res));
    const CramerData& data = std::get<CramerData>(res);
    CHECK(data.pivot == 2);
    CHECK(data.Lambda == parse_ratfunc("1/(y*z)", d3.variables));
    CHECK(data.h == parse_ratfunc("y*z^2", d3.variables));
    CHECK(data.J == parse_ratfunc("1/(y*z^2)", d3.variables));
    CHECK_FALSE(data.constant_warning);
    // Re-check the invariants from the outside.
    CHECK(data.h * data.Lambda == RatFunc(d3.field.components[2]));
    CHECK(data.h * data.Lambdas[0] == -RatFunc(d3.field.components[0]));
    CHECK(data.h * data.Lambdas[1] == -RatFunc(d3.field.components[1]));
    CHECK(data.J * data.h == RatFunc::constant(d3.variables, Rat(1)));
    CHECK(lie_derivative(d3.field, data.J) ==
          -(data.J * RatFunc(divergence(d3.field))));
}

TEST_CASE("cramer reconstruction in two dimensions") {
    const Context c2 = make_context({"x", "y"});
    const VectorField X = make_vector_field(c2, {parse_poly("x", c2), parse_poly("y", c2)});
    auto res = cramer_multiplier(X, {parse_ratfunc("x/y", c2)}, 0);
    REQUIRE(std::holds_alternative<CramerData>(res));
    const CramerData& data = std::get<CramerData>(res);
    CHECK(data.Lambda == parse_ratfunc("1/y", c2));
    CHECK(data.h == parse_ratfunc("y^2", c2));
    CHECK(data.J == parse_ratfunc("1/y^2", c2));
}

TEST_CASE("cramer on a divergence-free field warns about constant J") {
    const SystemSpec rot2 = load_fixture("rot2.vf");
    auto res = cramer_multiplier(rot2.field, {parse_ratfunc("x^2 + y^2", rot2.variables)}, 0);
    REQUIRE(std::holds_alternative<CramerData>(res));
    const CramerData& data = std::get<CramerData>(res);
    CHECK(data.J == RatFunc::constant(rot2.variables, Rat(-2)));
    CHECK(data.constant_warning);
    CHECK(data.h == RatFunc::constant(rot2.variables, Rat(-1, 2)));
}

TEST_CASE("cramer usage errors and degeneracy") {
    const SystemSpec d3 = load_fixture("diag3.vf");
    CHECK_THROWS_AS(cramer_multiplier(d3.field, {parse_ratfunc("x/y", d3.variables)}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        cramer_multiplier(
            d3.field, {parse_ratfunc("x", d3.variables), parse_ratfunc("y", d3.variables)}, 0),
        std::invalid_argument);

    auto degenerate = cramer_multiplier(
        d3.field,
        {parse_ratfunc("x/y", d3.variables), parse_ratfunc("x^2/y^2", d3.variables)}, 0);
    REQUIRE(std::holds_alternative<DegenerateInput>(degenerate));
    CHECK_FALSE(std::get<DegenerateInput>(degenerate).independence.independent);
}

TEST_CASE("cramer scaling covariance") {
    const SystemSpec d3 = load_fixture("diag3.vf");
    const Rat c(3, 5);
    auto base = cramer_multiplier(
        d3.field, {parse_ratfunc("x/y", d3.variables), parse_ratfunc("y/z", d3.variables)}, 0);
    auto scaled = cramer_multiplier(
        d3.field,
        {c * parse_ratfunc("x/y", d3.variables), parse_ratfunc("y/z", d3.variables)}, 0);
    REQUIRE(std::holds_alternative<CramerData>(base));
    REQUIRE(std::holds_alternative<CramerData>(scaled));
    const CramerData& b = std::get<CramerData>(base);
    const CramerData& s = std::get<CramerData>(scaled);
    CHECK(s.Lambda == c * b.Lambda);
    for (std::size_t i = 0; i < b.Lambdas.size(); ++i) CHECK(s.Lambdas[i] == c * b.Lambdas[i]);
    CHECK(s.h * Rat(c) == b.h);
    CHECK(s.J == c * b.J);
}

TEST_CASE("euler identity residual vanishes") {
    const Context c3 = make_context({"x", "y", "z"});
    CHECK(euler_identity_residual({parse_ratfunc("x/y", c3), parse_ratfunc("y/z", c3)}, 2)
              .is_zero());
    for (std::size_t pivot : {0u, 1u, 2u})
        CHECK(euler_identity_residual(
                  {parse_ratfunc("x + y + z", c3), parse_ratfunc("x - y", c3)}, pivot)
                  .is_zero());
}
