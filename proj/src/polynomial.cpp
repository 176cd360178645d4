#include "cartan/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cartan {

namespace {

unsigned degree_of(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

void check_same_ring(const Polynomial& a, const Polynomial& b) {
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("Polynomial: dimension mismatch (" +
                                    std::to_string(a.nvars()) + " vs " + std::to_string(b.nvars()) + ")");
}

}  // namespace

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = degree_of(a), db = degree_of(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw std::invalid_argument("Polynomial: nvars must be positive");
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw std::out_of_range("Polynomial::variable: index out of range");
    Exponents e(nvars, 0);
    e[i] = 1;
    return monomial(nvars, std::move(e), Rational(1));
}

Polynomial Polynomial::monomial(int nvars, Exponents exps, const Rational& c) {
    if (static_cast<int>(exps.size()) != nvars)
        throw std::invalid_argument("Polynomial::monomial: exponent vector has wrong length");
    Polynomial p(nvars);
    p.add_term(exps, c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

Rational Polynomial::constant_value() const {
    auto it = terms_.find(Exponents(nvars_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    // Terms are graded-lex ordered, so the last one has maximal degree.
    return static_cast<int>(degree_of(terms_.rbegin()->first));
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_same_ring(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_same_ring(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same_ring(a, b);
    Polynomial r(a.nvars_);
    Exponents e(a.nvars_, 0);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
    Polynomial r(p.nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, pc] : p.terms_) r.terms_.emplace(e, c * pc);
    return r;
}

Polynomial Polynomial::partial(int i) const {
    if (i < 0 || i >= nvars_) throw std::out_of_range("Polynomial::partial: index out of range");
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponents d = e;
        d[i] -= 1;
        r.add_term(d, Rational(static_cast<long>(e[i])) * c);
    }
    return r;
}

Rational Polynomial::eval(std::span<const Rational> point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw std::invalid_argument("Polynomial::eval: point has wrong dimension");
    Rational total(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (int i = 0; i < nvars_; ++i) {
            for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
        }
        total += term;
    }
    return total;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
    if (static_cast<int>(images.size()) != nvars_)
        throw std::invalid_argument("Polynomial::substitute: wrong number of images");
    const int target_nvars = images.empty() ? nvars_ : images[0].nvars();
    Polynomial result(target_nvars);
    for (const auto& [e, c] : terms_) {
        Polynomial term = Polynomial::constant(target_nvars, c);
        for (int i = 0; i < nvars_; ++i) {
            for (unsigned k = 0; k < e[i]; ++k) term = term * images[i];
        }
        result += term;
    }
    return result;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Descending graded-lex: leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (first) {
            if (a.sign() < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        first = false;
        std::string vars;
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += "x" + std::to_string(i + 1);
            if (e[i] > 1) vars += "^" + std::to_string(e[i]);
        }
        if (vars.empty()) {
            out << a.str();
        } else if (a.is_one()) {
            out << vars;
        } else {
            out << a.str() << "*" << vars;
        }
    }
    return out.str();
}

Polynomial random_polynomial(int nvars, int max_degree, long coeff_bound, Rng& rng) {
    if (nvars < 1 || max_degree < 0 || coeff_bound < 1)
        throw std::invalid_argument("random_polynomial: bounds must be positive");
    Polynomial p(nvars);
    const auto nterms = 1 + rng.below(3);
    for (std::uint64_t t = 0; t < nterms; ++t) {
        const auto degree = rng.below(static_cast<std::uint64_t>(max_degree) + 1);
        Exponents e(nvars, 0);
        for (std::uint64_t k = 0; k < degree; ++k) e[rng.below(nvars)] += 1;
        const long c = rng.int_in(-coeff_bound, coeff_bound);
        // Skip colliding monomials instead of summing them, so every stored
        // coefficient stays inside [-coeff_bound, coeff_bound].
        if (p.terms().contains(e)) continue;
        p += Polynomial::monomial(nvars, std::move(e), Rational(c));
    }
    return p;
}

}  // namespace cartan
