#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cartan/linalg.hpp"
#include "cartan/polynomial.hpp"

namespace cartan {

/// Strictly increasing coordinate indices, 1-based. The empty tuple is the
/// single key of a degree-0 form.
using IndexTuple = std::vector<int>;

/// All strictly increasing tuples of the given length with entries in
/// [1, nvars], in lexicographic order.
std::vector<IndexTuple> all_index_tuples(int nvars, int degree);

class NotClosedError : public std::runtime_error {
public:
    explicit NotClosedError(const std::string& what) : std::runtime_error(what) {}
};

/// Differential form on R^nvars with polynomial coefficients. Components are
/// stored only on strictly increasing index tuples; every sign produced by
/// reordering legs is absorbed at insertion time, so the representation is
/// canonical and equality is structural.
class DifferentialForm {
public:
    using ComponentMap = std::map<IndexTuple, Polynomial>;

    DifferentialForm(int nvars, int degree);
    /// Degree-0 form wrapping a function.
    static DifferentialForm from_function(Polynomial f);
    /// coeff * dx_{i1} ^ ... ^ dx_{ik}; indices may come unsorted or repeat
    /// (repeats give zero), signs from sorting are applied.
    static DifferentialForm monomial(int nvars, const IndexTuple& indices, Polynomial coeff);
    static DifferentialForm basis(int nvars, const IndexTuple& indices);

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    bool is_zero() const { return comps_.empty(); }
    const ComponentMap& comps() const { return comps_; }
    /// Component on a strictly increasing tuple; zero polynomial if absent.
    Polynomial coeff(const IndexTuple& indices) const;
    /// Component on an arbitrary tuple, with the antisymmetry sign applied;
    /// zero for repeated indices.
    Polynomial signed_coeff(IndexTuple indices) const;
    /// True when every component polynomial is constant.
    bool has_constant_coefficients() const;
    /// The unique function component of a degree-0 form.
    Polynomial function_part() const;

    DifferentialForm operator-() const;
    DifferentialForm& operator+=(const DifferentialForm& o);
    DifferentialForm& operator-=(const DifferentialForm& o);
    friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) { return a += b; }
    friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) { return a -= b; }
    friend DifferentialForm operator*(const Polynomial& f, const DifferentialForm& a);
    friend DifferentialForm operator*(const Rational& c, const DifferentialForm& a);

    bool operator==(const DifferentialForm& o) const {
        return nvars_ == o.nvars_ && degree_ == o.degree_ && comps_ == o.comps_;
    }
    bool operator!=(const DifferentialForm& o) const { return !(*this == o); }

    /// Signed sum "c · dx_i^dx_j^..." with components in lexicographic tuple
    /// order; degree-0 forms print as their function. Zero prints as "0".
    std::string str() const;

private:
    void add_comp(const IndexTuple& indices, const Polynomial& coeff);

    int nvars_;
    int degree_;
    ComponentMap comps_;
};

/// Polynomial vector field on R^nvars; comps[i] multiplies d/dx_{i+1}.
class VectorField {
public:
    explicit VectorField(int nvars);
    explicit VectorField(std::vector<Polynomial> comps);
    /// The coordinate field d/dx_i (1-based i).
    static VectorField basis(int nvars, int i);

    int nvars() const { return nvars_; }
    bool is_zero() const;
    const std::vector<Polynomial>& comps() const { return comps_; }
    /// Component multiplying d/dx_i (1-based i).
    const Polynomial& comp(int i) const;

    VectorField operator-() const;
    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(const Polynomial& f, const VectorField& v);
    friend VectorField operator*(const Rational& c, const VectorField& v);

    bool operator==(const VectorField& o) const = default;

    /// Signed sum "c · ∂i"; zero prints as "0".
    std::string str() const;

private:
    int nvars_;
    std::vector<Polynomial> comps_;
};

/// Invertible affine map x -> A x + b with exact rational inverse, the class
/// of diffeomorphisms that keeps polynomial coefficients polynomial.
class AffineMap {
public:
    AffineMap(RationalMatrix a, std::vector<Rational> b);
    static AffineMap identity(int n);

    int nvars() const { return matrix_.rows(); }
    const RationalMatrix& matrix() const { return matrix_; }
    const std::vector<Rational>& offset() const { return offset_; }
    const RationalMatrix& inverse_matrix() const { return inverse_; }

    /// Composition: (a.compose(b))(x) = a(b(x)).
    AffineMap compose(const AffineMap& o) const;
    AffineMap inverse_map() const;

private:
    RationalMatrix matrix_;
    std::vector<Rational> offset_;
    RationalMatrix inverse_;
};

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm exterior_derivative(const DifferentialForm& a);
/// Contraction on the first slot.
DifferentialForm interior_product(const VectorField& v, const DifferentialForm& a);
/// Cartan formula d ι_v + ι_v d; on degree 0 this is ι_v d.
DifferentialForm lie_derivative_form(const VectorField& v, const DifferentialForm& a);
/// v(f) = sum_i v^i ∂_i f.
Polynomial directional_derivative(const VectorField& v, const Polynomial& f);
VectorField vf_bracket(const VectorField& u, const VectorField& v);
DifferentialForm pullback_form(const AffineMap& phi, const DifferentialForm& a);
VectorField pushforward_vf(const AffineMap& phi, const VectorField& v);
/// Primitive of a closed form via the radial homotopy operator;
/// d(poincare_primitive(a)) = a. Throws NotClosedError otherwise.
DifferentialForm poincare_primitive(const DifferentialForm& a);
bool form_equal(const DifferentialForm& a, const DifferentialForm& b);

/// Random form of fixed degree: up to 3 components with random polynomial
/// coefficients. Deterministic in the generator state; may be zero.
DifferentialForm random_form(int nvars, int degree, int max_poly_degree, long coeff_bound, Rng& rng);
VectorField random_vector_field(int nvars, int max_poly_degree, long coeff_bound, Rng& rng);

}  // namespace cartan
