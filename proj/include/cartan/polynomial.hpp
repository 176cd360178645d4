#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cartan/rational.hpp"
#include "cartan/rng.hpp"

namespace cartan {

/// Exponent vector of a monomial; length equals the ambient dimension.
using Exponents = std::vector<unsigned>;

/// Graded-lexicographic order: lower total degree first, ties broken
/// lexicographically. This is the canonical term order used for storage
/// and (reversed) for printing.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// The term map never holds zero coefficients, so it is a canonical form
/// and equality is structural. All operations are exact.
class Polynomial {
public:
    using TermMap = std::map<Exponents, Rational, GradedLexLess>;

    explicit Polynomial(int nvars);
    static Polynomial constant(int nvars, const Rational& c);
    static Polynomial variable(int nvars, int i);
    static Polynomial monomial(int nvars, Exponents exps, const Rational& c);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term; equals the whole polynomial iff is_constant().
    Rational constant_value() const;
    /// Total degree; -1 for the zero polynomial.
    int total_degree() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Rational& c, const Polynomial& p);

    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Exact partial derivative with respect to variable i (0-based).
    Polynomial partial(int i) const;
    /// Exact evaluation at a rational point.
    Rational eval(std::span<const Rational> point) const;
    /// Substitutes images[i] for variable i; images live in a common ring.
    Polynomial substitute(const std::vector<Polynomial>& images) const;

    /// Terms in descending graded-lex order, coefficients as "p/q"
    /// or integers, variables printed as x1..xn. Zero prints as "0".
    std::string str() const;

private:
    void add_term(const Exponents& e, const Rational& c);

    int nvars_;
    TermMap terms_;
};

/// Uniformly random polynomial with 1..3 terms, total degree <= max_degree,
/// integer coefficients in [-coeff_bound, coeff_bound]. Deterministic in the
/// generator state; may come out zero when a sampled coefficient is zero.
Polynomial random_polynomial(int nvars, int max_degree, long coeff_bound, Rng& rng);

}  // namespace cartan
