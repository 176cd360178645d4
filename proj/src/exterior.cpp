#include "cartan/exterior.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace cartan {

namespace {

void check_same_space(int a, int b, const char* op) {
    if (a != b) throw std::invalid_argument(std::string(op) + ": dimension mismatch");
}

/// Merges two strictly increasing tuples. Returns 0 on a shared index,
/// otherwise +1/-1, the parity of the shuffle that sorts a++b into out.
int merge_tuples(const IndexTuple& a, const IndexTuple& b, IndexTuple& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    int sign = 1;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining entries of a.
            if ((a.size() - i) % 2 == 1) sign = -sign;
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return sign;
}

/// Sorts an arbitrary tuple into increasing order. Returns 0 on repeats,
/// otherwise the permutation parity.
int sort_tuple(IndexTuple& t) {
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i) {
        for (std::size_t j = i; j > 0 && t[j] < t[j - 1]; --j) {
            std::swap(t[j], t[j - 1]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i] == t[i - 1]) return 0;
    }
    return sign;
}

}  // namespace

std::vector<IndexTuple> all_index_tuples(int nvars, int degree) {
    std::vector<IndexTuple> result;
    if (degree < 0 || degree > nvars) return result;
    IndexTuple current;
    auto recurse = [&](auto&& self, int next) -> void {
        if (static_cast<int>(current.size()) == degree) {
            result.push_back(current);
            return;
        }
        const int needed = degree - static_cast<int>(current.size());
        for (int i = next; i <= nvars - needed + 1; ++i) {
            current.push_back(i);
            self(self, i + 1);
            current.pop_back();
        }
    };
    recurse(recurse, 1);
    return result;
}

DifferentialForm::DifferentialForm(int nvars, int degree) : nvars_(nvars), degree_(degree) {
    if (nvars < 1) throw std::invalid_argument("DifferentialForm: nvars must be positive");
    if (degree < 0) throw std::invalid_argument("DifferentialForm: negative degree");
}

DifferentialForm DifferentialForm::from_function(Polynomial f) {
    DifferentialForm a(f.nvars(), 0);
    a.add_comp({}, f);
    return a;
}

DifferentialForm DifferentialForm::monomial(int nvars, const IndexTuple& indices, Polynomial coeff) {
    DifferentialForm a(nvars, static_cast<int>(indices.size()));
    IndexTuple sorted = indices;
    const int sign = sort_tuple(sorted);
    if (sign == 0) return a;
    a.add_comp(sorted, sign == 1 ? coeff : -coeff);
    return a;
}

DifferentialForm DifferentialForm::basis(int nvars, const IndexTuple& indices) {
    return monomial(nvars, indices, Polynomial::constant(nvars, Rational(1)));
}

void DifferentialForm::add_comp(const IndexTuple& indices, const Polynomial& coeff) {
    if (static_cast<int>(indices.size()) != degree_)
        throw std::invalid_argument("DifferentialForm: tuple length does not match degree");
    if (coeff.nvars() != nvars_)
        throw std::invalid_argument("DifferentialForm: coefficient lives in the wrong ring");
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 1 || indices[i] > nvars_)
            throw std::out_of_range("DifferentialForm: index out of range");
        if (i > 0 && indices[i] <= indices[i - 1])
            throw std::invalid_argument("DifferentialForm: tuple not strictly increasing");
    }
    if (coeff.is_zero()) return;
    auto [it, inserted] = comps_.try_emplace(indices, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

Polynomial DifferentialForm::coeff(const IndexTuple& indices) const {
    auto it = comps_.find(indices);
    return it == comps_.end() ? Polynomial(nvars_) : it->second;
}

Polynomial DifferentialForm::signed_coeff(IndexTuple indices) const {
    const int sign = sort_tuple(indices);
    if (sign == 0) return Polynomial(nvars_);
    Polynomial c = coeff(indices);
    return sign == 1 ? c : -c;
}

bool DifferentialForm::has_constant_coefficients() const {
    for (const auto& [t, c] : comps_) {
        if (!c.is_constant()) return false;
    }
    return true;
}

Polynomial DifferentialForm::function_part() const {
    if (degree_ != 0) throw std::logic_error("DifferentialForm: function_part of positive degree");
    return coeff({});
}

DifferentialForm DifferentialForm::operator-() const {
    DifferentialForm r(nvars_, degree_);
    for (const auto& [t, c] : comps_) r.comps_.emplace(t, -c);
    return r;
}

DifferentialForm& DifferentialForm::operator+=(const DifferentialForm& o) {
    check_same_space(nvars_, o.nvars_, "DifferentialForm::operator+");
    if (degree_ != o.degree_)
        throw std::invalid_argument("DifferentialForm: degree mismatch in sum");
    for (const auto& [t, c] : o.comps_) add_comp(t, c);
    return *this;
}

DifferentialForm& DifferentialForm::operator-=(const DifferentialForm& o) {
    return *this += -o;
}

DifferentialForm operator*(const Polynomial& f, const DifferentialForm& a) {
    DifferentialForm r(a.nvars_, a.degree_);
    for (const auto& [t, c] : a.comps_) r.add_comp(t, f * c);
    return r;
}

DifferentialForm operator*(const Rational& c, const DifferentialForm& a) {
    return Polynomial::constant(a.nvars(), c) * a;
}

std::string DifferentialForm::str() const {
    if (comps_.empty()) return "0";
    if (degree_ == 0) return comps_.begin()->second.str();
    std::ostringstream out;
    bool first = true;
    for (const auto& [t, c] : comps_) {
        std::string legs;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i > 0) legs += "^";
            legs += "dx" + std::to_string(t[i]);
        }
        std::string piece;
        bool negative = false;
        if (c.is_constant() && c.constant_value().is_one()) {
            piece = legs;
        } else if (c.is_constant() && (-c.constant_value()).is_one()) {
            piece = legs;
            negative = true;
        } else if (c.terms().size() == 1) {
            Polynomial lead = c;
            if (lead.terms().begin()->second.sign() < 0) {
                negative = true;
                lead = -lead;
            }
            piece = lead.str() + " · " + legs;
        } else {
            piece = "(" + c.str() + ") · " + legs;
        }
        if (first) {
            out << (negative ? "-" : "") << piece;
            first = false;
        } else {
            out << (negative ? " - " : " + ") << piece;
        }
    }
    return out.str();
}

VectorField::VectorField(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw std::invalid_argument("VectorField: nvars must be positive");
    comps_.assign(nvars, Polynomial(nvars));
}

VectorField::VectorField(std::vector<Polynomial> comps) : nvars_(static_cast<int>(comps.size())) {
    if (comps.empty()) throw std::invalid_argument("VectorField: no components");
    for (const auto& c : comps) {
        if (c.nvars() != nvars_)
            throw std::invalid_argument("VectorField: component count differs from its ring dimension");
    }
    comps_ = std::move(comps);
}

VectorField VectorField::basis(int nvars, int i) {
    VectorField v(nvars);
    if (i < 1 || i > nvars) throw std::out_of_range("VectorField::basis: index out of range");
    v.comps_[i - 1] = Polynomial::constant(nvars, Rational(1));
    return v;
}

bool VectorField::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

const Polynomial& VectorField::comp(int i) const {
    if (i < 1 || i > nvars_) throw std::out_of_range("VectorField::comp: index out of range");
    return comps_[i - 1];
}

VectorField VectorField::operator-() const {
    VectorField r(nvars_);
    for (int i = 0; i < nvars_; ++i) r.comps_[i] = -comps_[i];
    return r;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    check_same_space(nvars_, o.nvars_, "VectorField::operator+");
    for (int i = 0; i < nvars_; ++i) comps_[i] += o.comps_[i];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    check_same_space(nvars_, o.nvars_, "VectorField::operator-");
    for (int i = 0; i < nvars_; ++i) comps_[i] -= o.comps_[i];
    return *this;
}

VectorField operator*(const Polynomial& f, const VectorField& v) {
    VectorField r(v.nvars_);
    for (int i = 0; i < v.nvars_; ++i) r.comps_[i] = f * v.comps_[i];
    return r;
}

VectorField operator*(const Rational& c, const VectorField& v) {
    return Polynomial::constant(v.nvars(), c) * v;
}

std::string VectorField::str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < nvars_; ++i) {
        if (comps_[i].is_zero()) continue;
        const Polynomial& c = comps_[i];
        std::string piece;
        bool negative = false;
        if (c.is_constant() && c.constant_value().is_one()) {
            piece = "∂" + std::to_string(i + 1);
        } else if (c.is_constant() && (-c.constant_value()).is_one()) {
            piece = "∂" + std::to_string(i + 1);
            negative = true;
        } else if (c.terms().size() == 1) {
            Polynomial lead = c;
            if (lead.terms().begin()->second.sign() < 0) {
                negative = true;
                lead = -lead;
            }
            piece = lead.str() + " · ∂" + std::to_string(i + 1);
        } else {
            piece = "(" + c.str() + ") · ∂" + std::to_string(i + 1);
        }
        if (first) {
            out << (negative ? "-" : "") << piece;
            first = false;
        } else {
            out << (negative ? " - " : " + ") << piece;
        }
    }
    return out.str();
}

AffineMap::AffineMap(RationalMatrix a, std::vector<Rational> b)
    : matrix_(std::move(a)), offset_(std::move(b)), inverse_(0, 0) {
    if (matrix_.rows() != matrix_.cols())
        throw std::invalid_argument("AffineMap: matrix must be square");
    if (static_cast<int>(offset_.size()) != matrix_.rows())
        throw std::invalid_argument("AffineMap: offset length mismatch");
    auto inv = inverse(matrix_);
    if (!inv) throw std::invalid_argument("AffineMap: matrix is not invertible");
    inverse_ = std::move(*inv);
    if (matrix_ * inverse_ != RationalMatrix::identity(matrix_.rows()))
        throw std::logic_error("AffineMap: inverse verification failed");
}

AffineMap AffineMap::identity(int n) {
    return AffineMap(RationalMatrix::identity(n), std::vector<Rational>(n));
}

AffineMap AffineMap::compose(const AffineMap& o) const {
    check_same_space(nvars(), o.nvars(), "AffineMap::compose");
    // a(b(x)) = A_a A_b x + (A_a b_b + b_a)
    std::vector<Rational> offset = matrix_.apply(o.offset_);
    for (int i = 0; i < nvars(); ++i) offset[i] += offset_[i];
    return AffineMap(matrix_ * o.matrix_, std::move(offset));
}

AffineMap AffineMap::inverse_map() const {
    // x = A y + b  =>  y = A^{-1} x - A^{-1} b
    std::vector<Rational> offset = inverse_.apply(offset_);
    for (auto& c : offset) c = -c;
    return AffineMap(inverse_, std::move(offset));
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    check_same_space(a.nvars(), b.nvars(), "wedge");
    DifferentialForm r(a.nvars(), a.degree() + b.degree());
    IndexTuple merged;
    for (const auto& [ta, ca] : a.comps()) {
        for (const auto& [tb, cb] : b.comps()) {
            const int sign = merge_tuples(ta, tb, merged);
            if (sign == 0) continue;
            Polynomial c = ca * cb;
            r += DifferentialForm::monomial(a.nvars(), merged, sign == 1 ? c : -c);
        }
    }
    return r;
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
    DifferentialForm r(a.nvars(), a.degree() + 1);
    IndexTuple merged;
    for (const auto& [t, c] : a.comps()) {
        for (int i = 1; i <= a.nvars(); ++i) {
            Polynomial dc = c.partial(i - 1);
            if (dc.is_zero()) continue;
            const int sign = merge_tuples({i}, t, merged);
            if (sign == 0) continue;
            r += DifferentialForm::monomial(a.nvars(), merged, sign == 1 ? dc : -dc);
        }
    }
    return r;
}

DifferentialForm interior_product(const VectorField& v, const DifferentialForm& a) {
    check_same_space(v.nvars(), a.nvars(), "interior_product");
    if (a.degree() < 1)
        throw std::invalid_argument("interior_product: form must have positive degree");
    DifferentialForm r(a.nvars(), a.degree() - 1);
    for (const auto& [t, c] : a.comps()) {
        for (std::size_t j = 0; j < t.size(); ++j) {
            const Polynomial& vc = v.comp(t[j]);
            if (vc.is_zero()) continue;
            IndexTuple rest;
            rest.reserve(t.size() - 1);
            for (std::size_t m = 0; m < t.size(); ++m) {
                if (m != j) rest.push_back(t[m]);
            }
            Polynomial term = vc * c;
            r += DifferentialForm::monomial(a.nvars(), rest, j % 2 == 0 ? term : -term);
        }
    }
    return r;
}

DifferentialForm lie_derivative_form(const VectorField& v, const DifferentialForm& a) {
    check_same_space(v.nvars(), a.nvars(), "lie_derivative_form");
    DifferentialForm result = interior_product(v, exterior_derivative(a));
    if (a.degree() >= 1) result += exterior_derivative(interior_product(v, a));
    return result;
}

Polynomial directional_derivative(const VectorField& v, const Polynomial& f) {
    check_same_space(v.nvars(), f.nvars(), "directional_derivative");
    Polynomial r(f.nvars());
    for (int i = 1; i <= v.nvars(); ++i) r += v.comp(i) * f.partial(i - 1);
    return r;
}

VectorField vf_bracket(const VectorField& u, const VectorField& v) {
    check_same_space(u.nvars(), v.nvars(), "vf_bracket");
    const int n = u.nvars();
    std::vector<Polynomial> comps;
    comps.reserve(n);
    for (int i = 1; i <= n; ++i)
        comps.push_back(directional_derivative(u, v.comp(i)) - directional_derivative(v, u.comp(i)));
    return VectorField(std::move(comps));
}

namespace {

/// Coordinate images of phi as polynomials: phi_i(x) = sum_j A_ij x_j + b_i.
std::vector<Polynomial> coordinate_images(const RationalMatrix& a, const std::vector<Rational>& b) {
    const int n = a.rows();
    std::vector<Polynomial> images;
    images.reserve(n);
    for (int i = 0; i < n; ++i) {
        Polynomial p = Polynomial::constant(n, b[i]);
        for (int j = 0; j < n; ++j) {
            if (!a.at(i, j).is_zero()) p += a.at(i, j) * Polynomial::variable(n, j);
        }
        images.push_back(std::move(p));
    }
    return images;
}

}  // namespace

DifferentialForm pullback_form(const AffineMap& phi, const DifferentialForm& a) {
    check_same_space(phi.nvars(), a.nvars(), "pullback_form");
    const int n = a.nvars();
    const std::vector<Polynomial> images = coordinate_images(phi.matrix(), phi.offset());

    // phi^*(dx_i) = sum_j A_ij dx_j, constant 1-forms.
    std::vector<DifferentialForm> leg_images;
    leg_images.reserve(n);
    for (int i = 0; i < n; ++i) {
        DifferentialForm li(n, 1);
        for (int j = 0; j < n; ++j) {
            if (!phi.matrix().at(i, j).is_zero())
                li += DifferentialForm::monomial(n, {j + 1},
                                                 Polynomial::constant(n, phi.matrix().at(i, j)));
        }
        leg_images.push_back(std::move(li));
    }

    DifferentialForm r(n, a.degree());
    for (const auto& [t, c] : a.comps()) {
        DifferentialForm term = DifferentialForm::from_function(c.substitute(images));
        for (int leg : t) term = wedge(term, leg_images[leg - 1]);
        r += term;
    }
    return r;
}

VectorField pushforward_vf(const AffineMap& phi, const VectorField& v) {
    check_same_space(phi.nvars(), v.nvars(), "pushforward_vf");
    const int n = v.nvars();
    const AffineMap inv = phi.inverse_map();
    const std::vector<Polynomial> inv_images = coordinate_images(inv.matrix(), inv.offset());

    // (phi_* v)(y) = A · v(phi^{-1}(y))
    std::vector<Polynomial> pulled;
    pulled.reserve(n);
    for (int j = 1; j <= n; ++j) pulled.push_back(v.comp(j).substitute(inv_images));
    std::vector<Polynomial> comps;
    comps.reserve(n);
    for (int i = 0; i < n; ++i) {
        Polynomial p(n);
        for (int j = 0; j < n; ++j) {
            if (!phi.matrix().at(i, j).is_zero()) p += phi.matrix().at(i, j) * pulled[j];
        }
        comps.push_back(std::move(p));
    }
    return VectorField(std::move(comps));
}

DifferentialForm poincare_primitive(const DifferentialForm& a) {
    if (a.degree() < 1)
        throw std::invalid_argument("poincare_primitive: form must have positive degree");
    DifferentialForm da = exterior_derivative(a);
    if (!da.is_zero())
        throw NotClosedError("poincare_primitive: form is not closed, d gives " + da.str());

    // Radial homotopy: a monomial c x^E dx_I of leg count k integrates to
    // sum_j (-1)^{j-1} c/(|E|+k) x^E x_{i_j} dx_{I minus i_j}.
    const int n = a.nvars();
    const int k = a.degree();
    DifferentialForm r(n, k - 1);
    for (const auto& [t, c] : a.comps()) {
        for (const auto& [e, coeff] : c.terms()) {
            unsigned total = 0;
            for (unsigned exp : e) total += exp;
            const Rational weight = coeff / Rational(static_cast<long>(total) + k);
            for (std::size_t j = 0; j < t.size(); ++j) {
                Exponents bumped = e;
                bumped[t[j] - 1] += 1;
                IndexTuple rest;
                rest.reserve(t.size() - 1);
                for (std::size_t m = 0; m < t.size(); ++m) {
                    if (m != j) rest.push_back(t[m]);
                }
                Polynomial mono = Polynomial::monomial(n, bumped, j % 2 == 0 ? weight : -weight);
                r += DifferentialForm::monomial(n, rest, std::move(mono));
            }
        }
    }
    return r;
}

bool form_equal(const DifferentialForm& a, const DifferentialForm& b) {
    check_same_space(a.nvars(), b.nvars(), "form_equal");
    if (a.degree() == b.degree()) return a == b;
    // Forms of different degree only agree when both are zero.
    return a.is_zero() && b.is_zero();
}

DifferentialForm random_form(int nvars, int degree, int max_poly_degree, long coeff_bound, Rng& rng) {
    DifferentialForm a(nvars, degree);
    if (degree > nvars) return a;
    if (degree == 0) return DifferentialForm::from_function(random_polynomial(nvars, max_poly_degree, coeff_bound, rng));
    const auto ncomps = 1 + rng.below(3);
    for (std::uint64_t c = 0; c < ncomps; ++c) {
        // Distinct indices via partial selection, then sorted by monomial().
        IndexTuple t;
        while (static_cast<int>(t.size()) < degree) {
            const int candidate = 1 + static_cast<int>(rng.below(nvars));
            if (std::find(t.begin(), t.end(), candidate) == t.end()) t.push_back(candidate);
        }
        a += DifferentialForm::monomial(nvars, t, random_polynomial(nvars, max_poly_degree, coeff_bound, rng));
    }
    return a;
}

VectorField random_vector_field(int nvars, int max_poly_degree, long coeff_bound, Rng& rng) {
    std::vector<Polynomial> comps;
    comps.reserve(nvars);
    for (int i = 0; i < nvars; ++i) comps.push_back(random_polynomial(nvars, max_poly_degree, coeff_bound, rng));
    return VectorField(std::move(comps));
}

}  // namespace cartan
