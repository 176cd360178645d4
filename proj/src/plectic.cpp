#include "cartan/plectic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace cartan {

namespace {

std::string point_str(const std::vector<Rational>& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i > 0) s += ", ";
        s += p[i].str();
    }
    return s + ")";
}

/// Contraction matrix of a constant-valued 3-form: rows run over pairs
/// (j<k) in lexicographic order, and entry ((j,k), i) is ω_{ijk}. A vector
/// w lies in its kernel iff ι_w ω = 0 for the constant field w.
RationalMatrix contraction_matrix_at(const DifferentialForm& omega,
                                     const std::vector<IndexTuple>& pairs,
                                     const std::vector<Rational>* point) {
    const int n = omega.nvars();
    RationalMatrix m(static_cast<int>(pairs.size()), n);
    for (int row = 0; row < static_cast<int>(pairs.size()); ++row) {
        for (int i = 1; i <= n; ++i) {
            Polynomial c = omega.signed_coeff({i, pairs[row][0], pairs[row][1]});
            m.at(row, i - 1) = point ? c.eval(*point) : c.constant_value();
        }
    }
    return m;
}

VectorField constant_field(int n, const std::vector<Rational>& w) {
    std::vector<Polynomial> comps;
    comps.reserve(n);
    for (int i = 0; i < n; ++i) comps.push_back(Polynomial::constant(n, w[i]));
    return VectorField(std::move(comps));
}

/// Coordinate blocks: connected components of indices linked by sharing a
/// component tuple of ω.
std::vector<std::vector<int>> coordinate_blocks(const DifferentialForm& omega) {
    const int n = omega.nvars();
    std::vector<int> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [t, c] : omega.comps()) {
        for (std::size_t i = 1; i < t.size(); ++i) parent[find(t[i])] = find(t[0]);
    }
    std::vector<std::vector<int>> blocks;
    std::vector<int> block_of(n + 1, -1);
    for (int i = 1; i <= n; ++i) {
        const int root = find(i);
        if (block_of[root] < 0) {
            block_of[root] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[block_of[root]].push_back(i);
    }
    return blocks;
}

Polynomial random_polynomial_in(int nvars, const std::vector<int>& vars, int max_degree,
                                long coeff_bound, Rng& rng) {
    Polynomial p(nvars);
    const auto nterms = 1 + rng.below(3);
    for (std::uint64_t t = 0; t < nterms; ++t) {
        const auto degree = rng.below(static_cast<std::uint64_t>(max_degree) + 1);
        Exponents e(nvars, 0);
        for (std::uint64_t k = 0; k < degree; ++k) e[vars[rng.below(vars.size())] - 1] += 1;
        const long c = rng.int_in(-coeff_bound, coeff_bound);
        if (p.terms().contains(e)) continue;
        p += Polynomial::monomial(nvars, std::move(e), Rational(c));
    }
    return p;
}

}  // namespace

PlecticStructure::PlecticStructure(DifferentialForm omega, NondegeneracyCertificate cert,
                                   std::vector<std::vector<int>> blocks,
                                   std::optional<RowEchelon> echelon)
    : omega_(std::move(omega)),
      certificate_(std::move(cert)),
      blocks_(std::move(blocks)),
      echelon_(std::move(echelon)) {}

const RowEchelon& PlecticStructure::contraction_echelon() const {
    if (!echelon_)
        throw std::logic_error("PlecticStructure: no contraction factorization for polynomial omega");
    return *echelon_;
}

PlecticStructure PlecticStructure::r3_volume() {
    return check_two_plectic(DifferentialForm::basis(3, {1, 2, 3}));
}

PlecticStructure PlecticStructure::r6_block() {
    return check_two_plectic(DifferentialForm::basis(6, {1, 2, 3}) +
                             DifferentialForm::basis(6, {4, 5, 6}));
}

PlecticStructure check_two_plectic(DifferentialForm omega,
                                   std::vector<std::vector<Rational>> sample_points) {
    if (omega.degree() != 3)
        throw std::invalid_argument("check_two_plectic: omega must be a 3-form");
    const int n = omega.nvars();
    DifferentialForm domega = exterior_derivative(omega);
    if (!domega.is_zero())
        throw NotClosedError("check_two_plectic: omega is not closed, d gives " + domega.str());

    const std::vector<IndexTuple> pairs = all_index_tuples(n, 2);
    NondegeneracyCertificate cert;
    cert.constant_coefficients = omega.has_constant_coefficients();

    if (cert.constant_coefficients) {
        cert.contraction_matrix = contraction_matrix_at(omega, pairs, nullptr);
        RowEchelon echelon(cert.contraction_matrix);
        cert.matrix_rank = echelon.rank();
        if (cert.matrix_rank < n) {
            auto kernel = echelon.kernel_vector();
            VectorField witness = constant_field(n, *kernel);
            throw DegenerateError("check_two_plectic: omega is degenerate, ι_v omega = 0 for v = " +
                                      witness.str(),
                                  std::move(witness));
        }
        std::vector<std::vector<int>> blocks = coordinate_blocks(omega);
        return PlecticStructure(std::move(omega), std::move(cert), std::move(blocks),
                                std::move(echelon));
    }

    cert.sample_points.emplace_back(n, Rational(0));
    for (auto& p : sample_points) {
        if (static_cast<int>(p.size()) != n)
            throw std::invalid_argument("check_two_plectic: sample point has wrong dimension");
        cert.sample_points.push_back(std::move(p));
    }
    for (const auto& point : cert.sample_points) {
        RowEchelon echelon(contraction_matrix_at(omega, pairs, &point));
        cert.sample_ranks.push_back(echelon.rank());
        if (echelon.rank() < n) {
            auto kernel = echelon.kernel_vector();
            VectorField witness = constant_field(n, *kernel);
            throw DegenerateError("check_two_plectic: omega is degenerate at " + point_str(point) +
                                      ", ι_v omega vanishes there for v = " + witness.str(),
                                  std::move(witness));
        }
    }
    return PlecticStructure(std::move(omega), std::move(cert), {}, std::nullopt);
}

HamiltonianSolve solve_hamiltonian(const PlecticStructure& p, const DifferentialForm& alpha) {
    if (!p.constant_coefficients())
        throw std::invalid_argument("solve_hamiltonian: omega must have constant coefficients");
    if (alpha.degree() != 1 || alpha.nvars() != p.nvars())
        throw std::invalid_argument("solve_hamiltonian: alpha must be a 1-form on the same space");

    const int n = p.nvars();
    const std::vector<IndexTuple> pairs = all_index_tuples(n, 2);
    const RowEchelon& echelon = p.contraction_echelon();
    const DifferentialForm dalpha = exterior_derivative(alpha);

    // dα = −ι_v ω decouples per monomial x^E: the coefficient vector of x^E
    // on the pair components solves M w_E = −c_E for constant w_E.
    std::set<Exponents, GradedLexLess> exponents;
    for (const auto& [t, c] : dalpha.comps()) {
        for (const auto& [e, coeff] : c.terms()) exponents.insert(e);
    }

    std::vector<Polynomial> comps(n, Polynomial(n));
    bool solvable = true;
    for (const auto& e : exponents) {
        std::vector<Rational> rhs;
        rhs.reserve(pairs.size());
        for (const auto& pair : pairs) {
            const Polynomial component = dalpha.coeff(pair);
            auto it = component.terms().find(e);
            rhs.push_back(it == component.terms().end() ? Rational(0) : -it->second);
        }
        auto w = echelon.solve(rhs);
        if (!w) {
            solvable = false;
            continue;
        }
        for (int i = 0; i < n; ++i) {
            if (!(*w)[i].is_zero()) comps[i] += Polynomial::monomial(n, e, (*w)[i]);
        }
    }

    VectorField candidate(std::move(comps));
    DifferentialForm residual = dalpha + interior_product(candidate, p.omega());
    if (!solvable || !residual.is_zero()) {
        return HamiltonianSolve{std::nullopt, std::move(residual)};
    }
    return HamiltonianSolve{std::move(candidate), DifferentialForm(n, 2)};
}

VectorField hamiltonian_vector_field(const PlecticStructure& p, const DifferentialForm& alpha) {
    HamiltonianSolve s = solve_hamiltonian(p, alpha);
    if (!s.v)
        throw NotHamiltonianError("hamiltonian_vector_field: no solution, residual " +
                                      s.residual.str(),
                                  std::move(s.residual));
    return *std::move(s.v);
}

HamiltonianPair make_hamiltonian_pair(const PlecticStructure& p, DifferentialForm alpha) {
    VectorField v = hamiltonian_vector_field(p, alpha);
    return HamiltonianPair{std::move(alpha), std::move(v)};
}

HamiltonianPair semi_bracket(const PlecticStructure& p, const HamiltonianPair& a,
                             const HamiltonianPair& b) {
    DifferentialForm alpha = interior_product(b.v, interior_product(a.v, p.omega()));
    VectorField v = vf_bracket(a.v, b.v);
    // Validity of the result is a theorem; verify it anyway, exactly.
    if (exterior_derivative(alpha) + interior_product(v, p.omega()) != DifferentialForm(p.nvars(), 2))
        throw std::logic_error("semi_bracket: result failed the Hamiltonian equation");
    return HamiltonianPair{std::move(alpha), std::move(v)};
}

Polynomial jacobiator_JL(const PlecticStructure& p, const HamiltonianPair& a,
                         const HamiltonianPair& b, const HamiltonianPair& c) {
    return interior_product(a.v, interior_product(b.v, interior_product(c.v, p.omega())))
        .function_part();
}

Polynomial b_form(const HamiltonianPair& a, const HamiltonianPair& b) {
    Polynomial half_diff = interior_product(a.v, b.alpha).function_part() -
                           interior_product(b.v, a.alpha).function_part();
    return Rational(1, 2) * half_diff;
}

HamiltonianPair random_hamiltonian_pair(const PlecticStructure& p, int max_degree,
                                        long coeff_bound, Rng& rng) {
    if (!p.constant_coefficients())
        throw std::invalid_argument("random_hamiltonian_pair: omega must have constant coefficients");
    const int n = p.nvars();
    constexpr int kMaxAttempts = 64;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        DifferentialForm alpha(n, 1);
        for (const auto& block : p.blocks()) {
            for (int i : block) {
                alpha += DifferentialForm::monomial(
                    n, {i}, random_polynomial_in(n, block, max_degree, coeff_bound, rng));
            }
        }
        HamiltonianSolve s = solve_hamiltonian(p, alpha);
        if (s.v) return HamiltonianPair{std::move(alpha), *std::move(s.v)};
    }
    throw std::runtime_error("random_hamiltonian_pair: rejection budget exhausted; "
                             "the structure does not admit block-compatible sampling");
}

}  // namespace cartan
