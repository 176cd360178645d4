#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "cartan/exterior.hpp"
#include "cartan/linalg.hpp"

namespace cartan {

/// A 3-form failed nondegeneracy; carries a nonzero constant vector field
/// with ι_v ω = 0 (at the reported point, for polynomial ω).
class DegenerateError : public std::runtime_error {
public:
    DegenerateError(const std::string& what, VectorField witness)
        : std::runtime_error(what), witness_(std::move(witness)) {}
    const VectorField& witness() const { return witness_; }

private:
    VectorField witness_;
};

/// A 1-form admitted no Hamiltonian vector field; carries the nonzero
/// residual 2-form dα + ι_v ω of the best candidate v.
class NotHamiltonianError : public std::runtime_error {
public:
    NotHamiltonianError(const std::string& what, DifferentialForm residual)
        : std::runtime_error(what), residual_(std::move(residual)) {}
    const DifferentialForm& residual() const { return residual_; }

private:
    DifferentialForm residual_;
};

/// Evidence that ι_v ω = 0 forces v = 0. For constant ω this is the exact
/// rank of the contraction matrix M[(j,k), i] = ω_{ijk}; for polynomial ω
/// it is the pointwise rank at each sample point (origin always included),
/// a certificate rather than a global proof.
struct NondegeneracyCertificate {
    bool constant_coefficients = false;
    RationalMatrix contraction_matrix{0, 0};
    int matrix_rank = 0;
    std::vector<std::vector<Rational>> sample_points;
    std::vector<int> sample_ranks;
};

/// A closed nondegenerate 3-form together with its certificate and the
/// coordinate blocks its legs never mix (used by the pair generator).
class PlecticStructure {
public:
    int nvars() const { return omega_.nvars(); }
    const DifferentialForm& omega() const { return omega_; }
    bool constant_coefficients() const { return certificate_.constant_coefficients; }
    const NondegeneracyCertificate& certificate() const { return certificate_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    /// Echelon factorization of the contraction matrix (constant ω only).
    const RowEchelon& contraction_echelon() const;

    /// (R^3, dx1^dx2^dx3)
    static PlecticStructure r3_volume();
    /// (R^6, dx1^dx2^dx3 + dx4^dx5^dx6)
    static PlecticStructure r6_block();

    friend PlecticStructure check_two_plectic(DifferentialForm omega,
                                              std::vector<std::vector<Rational>> sample_points);

private:
    PlecticStructure(DifferentialForm omega, NondegeneracyCertificate cert,
                     std::vector<std::vector<int>> blocks, std::optional<RowEchelon> echelon);

    DifferentialForm omega_;
    NondegeneracyCertificate certificate_;
    std::vector<std::vector<int>> blocks_;
    std::optional<RowEchelon> echelon_;
};

/// Validates closedness exactly and nondegeneracy by exact rank (constant ω)
/// or pointwise rank at the origin and the given sample points (polynomial
/// ω). Throws NotClosedError or DegenerateError with witnesses.
PlecticStructure check_two_plectic(DifferentialForm omega,
                                   std::vector<std::vector<Rational>> sample_points = {});

/// A Hamiltonian 1-form with its vector field: dα = −ι_v ω exactly.
struct HamiltonianPair {
    DifferentialForm alpha;
    VectorField v;
    bool operator==(const HamiltonianPair&) const = default;
};

/// Outcome of the linear solve for dα = −ι_v ω against constant ω. On
/// failure `v` is empty and `residual` is the nonzero obstruction.
struct HamiltonianSolve {
    std::optional<VectorField> v;
    DifferentialForm residual;
};

HamiltonianSolve solve_hamiltonian(const PlecticStructure& p, const DifferentialForm& alpha);
/// Unique v with dα = −ι_v ω; throws NotHamiltonianError when none exists.
VectorField hamiltonian_vector_field(const PlecticStructure& p, const DifferentialForm& alpha);
HamiltonianPair make_hamiltonian_pair(const PlecticStructure& p, DifferentialForm alpha);

/// {α,β} = ι_{v_β} ι_{v_α} ω with vector field [v_α, v_β]; the result is
/// again a valid pair and this is re-verified before returning.
HamiltonianPair semi_bracket(const PlecticStructure& p, const HamiltonianPair& a,
                             const HamiltonianPair& b);
/// J_L(α,β,γ) = ι_{v_α} ι_{v_β} ι_{v_γ} ω.
Polynomial jacobiator_JL(const PlecticStructure& p, const HamiltonianPair& a,
                         const HamiltonianPair& b, const HamiltonianPair& c);
/// B(α,β) = ½(ι_{v_α}β − ι_{v_β}α).
Polynomial b_form(const HamiltonianPair& a, const HamiltonianPair& b);

/// Random valid pair: samples a block-compatible 1-form (each component
/// supported in one coordinate block and depending only on that block's
/// variables) and solves for v, resampling on failure with a bounded budget.
HamiltonianPair random_hamiltonian_pair(const PlecticStructure& p, int max_degree,
                                        long coeff_bound, Rng& rng);

}  // namespace cartan
