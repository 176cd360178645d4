#include "doctest.h"

#include <vector>

#include "cartan/exterior.hpp"
#include "support/oracles.hpp"

using namespace cartan;

namespace {

DifferentialForm dx(int nvars, const IndexTuple& t) { return DifferentialForm::basis(nvars, t); }

Polynomial var(int nvars, int i) { return Polynomial::variable(nvars, i - 1); }  // 1-based here

AffineMap swap12(int n) {
    RationalMatrix a = RationalMatrix::identity(n);
    a.at(0, 0) = Rational(0);
    a.at(1, 1) = Rational(0);
    a.at(0, 1) = Rational(1);
    a.at(1, 0) = Rational(1);
    return AffineMap(a, std::vector<Rational>(n));
}

AffineMap random_affine(int n, Rng& rng) {
    // Keep resampling until invertible; determinant check is exact.
    for (;;) {
        RationalMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) = Rational(rng.int_in(-3, 3));
        if (determinant(a).is_zero()) continue;
        std::vector<Rational> b(n);
        for (auto& c : b) c = Rational(rng.int_in(-3, 3));
        return AffineMap(std::move(a), std::move(b));
    }
}

}  // namespace

TEST_CASE("index tuple enumeration") {
    CHECK(all_index_tuples(3, 2) == std::vector<IndexTuple>{{1, 2}, {1, 3}, {2, 3}});
    CHECK(all_index_tuples(4, 3).size() == 4);
    CHECK(all_index_tuples(6, 2).size() == 15);
    CHECK(all_index_tuples(3, 0) == std::vector<IndexTuple>{{}});
    CHECK(all_index_tuples(3, 4).empty());
}

TEST_CASE("wedge golden examples") {
    const int n = 3;
    CHECK(wedge(wedge(dx(n, {1}), dx(n, {2})), dx(n, {1})).is_zero());
    CHECK(wedge(dx(n, {2}), dx(n, {1})) == -dx(n, {1, 2}));
    CHECK(wedge(var(n, 2) * dx(n, {1}), dx(n, {3})) == var(n, 2) * dx(n, {1, 3}));
}

TEST_CASE("wedge is graded commutative, associative and bilinear") {
    const int n = 4;
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        Rng rng = Rng::for_trial(51, "wedge_unit", trial);
        const int ka = static_cast<int>(rng.below(3));
        const int kb = static_cast<int>(rng.below(3));
        DifferentialForm a = random_form(n, ka, 2, 4, rng);
        DifferentialForm b = random_form(n, kb, 2, 4, rng);
        DifferentialForm c = random_form(n, kb, 2, 4, rng);
        DifferentialForm ab = wedge(a, b);
        DifferentialForm ba = wedge(b, a);
        CHECK(ab == ((ka * kb) % 2 == 0 ? ba : -ba));
        CHECK(wedge(a, b + c) == wedge(a, b) + wedge(a, c));
        DifferentialForm e = random_form(n, 1, 2, 4, rng);
        CHECK(wedge(wedge(a, b), e) == wedge(a, wedge(b, e)));
    }
}

TEST_CASE("exterior derivative golden examples") {
    const int n3 = 3, n4 = 4;
    CHECK(exterior_derivative(var(n3, 2) * dx(n3, {3})) == dx(n3, {2, 3}));
    // Moving dx4 past three legs is an odd permutation, hence the sign.
    CHECK(exterior_derivative(var(n4, 4) * dx(n4, {1, 2, 3})) == -dx(n4, {1, 2, 3, 4}));
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        Rng rng = Rng::for_trial(53, "dd_unit", trial);
        Polynomial p = random_polynomial(n4, 3, 5, rng);
        CHECK(exterior_derivative(exterior_derivative(DifferentialForm::from_function(p))).is_zero());
    }
}

TEST_CASE("d squared vanishes in every degree") {
    const int n = 4;
    for (int degree = 0; degree <= n; ++degree) {
        for (std::uint64_t trial = 0; trial < 25; ++trial) {
            Rng rng = Rng::for_trial(59, "d2_unit", trial * 10 + degree);
            DifferentialForm a = random_form(n, degree, 3, 5, rng);
            CHECK(exterior_derivative(exterior_derivative(a)).is_zero());
        }
    }
}

TEST_CASE("graded Leibniz rule for d over wedge") {
    const int n = 4;
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        Rng rng = Rng::for_trial(61, "leibniz_d_unit", trial);
        const int ka = static_cast<int>(rng.below(3));
        DifferentialForm a = random_form(n, ka, 2, 4, rng);
        DifferentialForm b = random_form(n, static_cast<int>(rng.below(3)), 2, 4, rng);
        DifferentialForm lhs = exterior_derivative(wedge(a, b));
        DifferentialForm rhs = wedge(exterior_derivative(a), b);
        DifferentialForm mixed = wedge(a, exterior_derivative(b));
        rhs += ka % 2 == 0 ? mixed : -mixed;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("interior product golden examples and first-slot convention") {
    const int n = 3;
    CHECK(interior_product(VectorField::basis(n, 3), dx(n, {1, 2, 3})) == dx(n, {1, 2}));
    CHECK(interior_product(var(n, 1) * VectorField::basis(n, 1), dx(n, {1})) ==
          DifferentialForm::from_function(var(n, 1)));
    CHECK_THROWS_AS(interior_product(VectorField::basis(n, 1),
                                     DifferentialForm::from_function(var(n, 1))),
                    std::invalid_argument);
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        Rng rng = Rng::for_trial(67, "iota2_unit", trial);
        VectorField v = random_vector_field(n, 2, 4, rng);
        DifferentialForm a = random_form(n, 2 + static_cast<int>(rng.below(2)), 2, 4, rng);
        CHECK(interior_product(v, interior_product(v, a)).is_zero());
    }
}

TEST_CASE("interior product agrees with the evaluation oracle") {
    const int n = 4;
    for (std::uint64_t trial = 0; trial < 60; ++trial) {
        Rng rng = Rng::for_trial(71, "iota_oracle_unit", trial);
        const int k = 1 + static_cast<int>(rng.below(3));
        DifferentialForm a = random_form(n, k, 2, 4, rng);
        VectorField v = random_vector_field(n, 2, 4, rng);
        std::vector<Rational> point = oracle::random_rational_vector(n, rng);

        std::vector<std::vector<Rational>> rest;
        for (int s = 1; s < k; ++s) rest.push_back(oracle::random_rational_vector(n, rng));

        std::vector<std::vector<Rational>> with_v = rest;
        with_v.insert(with_v.begin(), oracle::eval_vf(v, point));

        CHECK(oracle::eval_form(interior_product(v, a), rest, point) ==
              oracle::eval_form(a, with_v, point));
    }
}

TEST_CASE("lie derivative golden examples and Cartan identities") {
    const int n = 3;
    CHECK(lie_derivative_form(VectorField::basis(n, 1), var(n, 1) * dx(n, {2})) == dx(n, {2}));
    CHECK(lie_derivative_form(VectorField::basis(n, 1), dx(n, {1, 2, 3})).is_zero());
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        Rng rng = Rng::for_trial(73, "lie_unit", trial);
        VectorField v = random_vector_field(n, 2, 4, rng);
        const int k = static_cast<int>(rng.below(3));
        DifferentialForm a = random_form(n, k, 2, 4, rng);
        DifferentialForm b = random_form(n, static_cast<int>(rng.below(2)), 2, 4, rng);
        CHECK(lie_derivative_form(v, exterior_derivative(a)) ==
              exterior_derivative(lie_derivative_form(v, a)));
        CHECK(lie_derivative_form(v, wedge(a, b)) ==
              wedge(lie_derivative_form(v, a), b) + wedge(a, lie_derivative_form(v, b)));
    }
}

TEST_CASE("lie derivative of a function is the directional derivative") {
    const int n = 3;
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        Rng rng = Rng::for_trial(79, "lie0_unit", trial);
        VectorField v = random_vector_field(n, 2, 4, rng);
        Polynomial f = random_polynomial(n, 3, 5, rng);
        CHECK(lie_derivative_form(v, DifferentialForm::from_function(f)) ==
              DifferentialForm::from_function(directional_derivative(v, f)));
    }
}

TEST_CASE("vector field bracket golden examples, Jacobi, and the iota identity") {
    const int n = 3;
    CHECK(vf_bracket(VectorField::basis(n, 1), var(n, 1) * VectorField::basis(n, 2)) ==
          VectorField::basis(n, 2));
    CHECK(vf_bracket(VectorField::basis(n, 1), VectorField::basis(n, 2)).is_zero());
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        Rng rng = Rng::for_trial(83, "vfb_unit", trial);
        VectorField u = random_vector_field(n, 2, 4, rng);
        VectorField v = random_vector_field(n, 2, 4, rng);
        VectorField w = random_vector_field(n, 2, 4, rng);
        CHECK(vf_bracket(u, u).is_zero());
        CHECK((vf_bracket(vf_bracket(u, v), w) + vf_bracket(vf_bracket(w, u), v) +
               vf_bracket(vf_bracket(v, w), u))
                  .is_zero());
        DifferentialForm a = random_form(n, 1 + static_cast<int>(rng.below(2)), 2, 4, rng);
        CHECK(interior_product(vf_bracket(u, v), a) ==
              lie_derivative_form(u, interior_product(v, a)) -
                  interior_product(v, lie_derivative_form(u, a)));
    }
}

TEST_CASE("pullback golden examples and naturality") {
    const int n = 3;
    const AffineMap sw = swap12(n);
    CHECK(pullback_form(sw, dx(n, {1})) == dx(n, {2}));
    CHECK(pullback_form(AffineMap::identity(n), var(n, 2) * dx(n, {1, 3})) ==
          var(n, 2) * dx(n, {1, 3}));
    for (std::uint64_t trial = 0; trial < 30; ++trial) {
        Rng rng = Rng::for_trial(89, "pullback_unit", trial);
        AffineMap phi = random_affine(n, rng);
        DifferentialForm a = random_form(n, static_cast<int>(rng.below(3)), 2, 4, rng);
        CHECK(pullback_form(phi, exterior_derivative(a)) ==
              exterior_derivative(pullback_form(phi, a)));
        DifferentialForm b = random_form(n, static_cast<int>(rng.below(2)), 2, 4, rng);
        CHECK(pullback_form(phi, wedge(a, b)) ==
              wedge(pullback_form(phi, a), pullback_form(phi, b)));
        AffineMap psi = random_affine(n, rng);
        CHECK(pullback_form(psi, pullback_form(phi, a)) ==
              pullback_form(phi.compose(psi), a));
    }
}

TEST_CASE("pushforward golden examples and naturality") {
    const int n = 3;
    const AffineMap sw = swap12(n);
    CHECK(pushforward_vf(sw, VectorField::basis(n, 1)) == VectorField::basis(n, 2));
    VectorField u0 = var(n, 2) * VectorField::basis(n, 1);
    CHECK(pushforward_vf(AffineMap::identity(n), u0) == u0);
    for (std::uint64_t trial = 0; trial < 30; ++trial) {
        Rng rng = Rng::for_trial(97, "pushforward_unit", trial);
        AffineMap phi = random_affine(n, rng);
        VectorField u = random_vector_field(n, 2, 4, rng);
        VectorField v = random_vector_field(n, 2, 4, rng);
        CHECK(pushforward_vf(phi, vf_bracket(u, v)) ==
              vf_bracket(pushforward_vf(phi, u), pushforward_vf(phi, v)));
        // Pullback and pushforward are mutually adjoint under contraction.
        DifferentialForm a = random_form(n, 1 + static_cast<int>(rng.below(2)), 2, 4, rng);
        CHECK(pullback_form(phi, interior_product(pushforward_vf(phi, u), a)) ==
              interior_product(u, pullback_form(phi, a)));
    }
}

TEST_CASE("poincare primitive golden example and inversion") {
    const int n = 3;
    DifferentialForm expected =
        Rational(1, 2) * (var(n, 1) * dx(n, {2})) - Rational(1, 2) * (var(n, 2) * dx(n, {1}));
    CHECK(poincare_primitive(dx(n, {1, 2})) == expected);
    CHECK_THROWS_AS(poincare_primitive(var(n, 1) * dx(n, {2})), NotClosedError);
    CHECK_THROWS_AS(poincare_primitive(DifferentialForm::from_function(var(n, 1))),
                    std::invalid_argument);
    for (std::uint64_t trial = 0; trial < 60; ++trial) {
        Rng rng = Rng::for_trial(101, "poincare_unit", trial);
        const int k = static_cast<int>(rng.below(3));
        DifferentialForm closed =
            exterior_derivative(random_form(n, k, 3, 5, rng));
        if (closed.is_zero()) continue;
        CHECK(exterior_derivative(poincare_primitive(closed)) == closed);
    }
}

TEST_CASE("form comparison is canonical") {
    const int n = 2;
    CHECK(form_equal(dx(n, {1, 2}), -wedge(dx(n, {2}), dx(n, {1}))));
    CHECK_FALSE(form_equal(dx(n, {1}), dx(n, {2})));
    CHECK(form_equal(dx(n, {1}) + Rational(0) * dx(n, {1}), dx(n, {1})));
    CHECK(form_equal(DifferentialForm(n, 1), DifferentialForm(n, 2)));  // both zero
}

TEST_CASE("printing of forms and vector fields") {
    const int n = 3;
    CHECK(DifferentialForm(n, 2).str() == "0");
    CHECK(dx(n, {1, 2}).str() == "dx1^dx2");
    CHECK((-dx(n, {1, 2})).str() == "-dx1^dx2");
    CHECK((var(n, 2) * dx(n, {1, 3})).str() == "x2 · dx1^dx3");
    CHECK((dx(n, {1, 2}) - dx(n, {2, 3})).str() == "dx1^dx2 - dx2^dx3");
    CHECK(((var(n, 1) + Polynomial::constant(n, Rational(1))) * dx(n, {2})).str() ==
          "(x1 + 1) · dx2");
    CHECK(DifferentialForm::from_function(var(n, 1)).str() == "x1");
    CHECK(VectorField::basis(n, 2).str() == "∂2");
    CHECK((-VectorField::basis(n, 1)).str() == "-∂1");
    CHECK((var(n, 2) * VectorField::basis(n, 3) - VectorField::basis(n, 1)).str() ==
          "-∂1 + x2 · ∂3");
}

TEST_CASE("affine map validation") {
    RationalMatrix sing(2, 2);
    sing.at(0, 0) = Rational(1);
    sing.at(1, 0) = Rational(1);
    CHECK_THROWS_AS(AffineMap(sing, std::vector<Rational>(2)), std::invalid_argument);
    Rng rng = Rng::for_trial(103, "affine_unit", 0);
    AffineMap phi = random_affine(3, rng);
    AffineMap id = phi.compose(phi.inverse_map());
    CHECK(id.matrix() == RationalMatrix::identity(3));
    for (const auto& c : id.offset()) CHECK(c.is_zero());
}
