#pragma once

#include <string>
#include <variant>

#include "cartan/courant.hpp"
#include "cartan/plectic.hpp"
#include "cartan/report.hpp"

namespace cartan {

/// Element of the plectic 2-term complex: grade 0 is a Hamiltonian 1-form
/// with its vector field, grade 1 a smooth function. The differential sends
/// a function f to the pair (df, 0).
class PlecticElement {
public:
    static PlecticElement hamiltonian(HamiltonianPair p);
    static PlecticElement smooth(Polynomial f);

    int grade() const { return value_.index() == 0 ? 0 : 1; }
    const HamiltonianPair& pair() const;
    const Polynomial& function() const;
    int nvars() const;
    bool is_zero() const;

    PlecticElement operator-() const;
    friend PlecticElement operator+(const PlecticElement& a, const PlecticElement& b);
    friend PlecticElement operator-(const PlecticElement& a, const PlecticElement& b);
    bool operator==(const PlecticElement&) const = default;

    std::string str() const;

private:
    explicit PlecticElement(std::variant<HamiltonianPair, Polynomial> v)
        : value_(std::move(v)) {}
    std::variant<HamiltonianPair, Polynomial> value_;
};

/// Element of the Courant 2-term complex: grade 0 is a section of the split
/// bundle, grade 1 a smooth function. The differential is f -> (0, df).
class CourantElement {
public:
    static CourantElement of_section(Section e);
    static CourantElement smooth(Polynomial f);

    int grade() const { return value_.index() == 0 ? 0 : 1; }
    const Section& section() const;
    const Polynomial& function() const;
    int nvars() const;
    bool is_zero() const;

    CourantElement operator-() const;
    friend CourantElement operator+(const CourantElement& a, const CourantElement& b);
    friend CourantElement operator-(const CourantElement& a, const CourantElement& b);
    bool operator==(const CourantElement&) const = default;

    std::string str() const;

private:
    explicit CourantElement(std::variant<Section, Polynomial> v) : value_(std::move(v)) {}
    std::variant<Section, Polynomial> value_;
};

/// The semistrict Lie 2-algebra of Hamiltonian 1-forms: bracket of two
/// degree-0 elements is the contraction bracket, every bracket touching
/// degree 1 vanishes, and the jacobiator is the triple contraction of omega.
class PlecticLie2 {
public:
    explicit PlecticLie2(PlecticStructure p) : p_(std::move(p)) {}
    const PlecticStructure& structure() const { return p_; }
    int nvars() const { return p_.nvars(); }

private:
    PlecticStructure p_;
};

/// The semistrict Lie 2-algebra of a twisted Courant structure: degree-0
/// bracket is the skew bracket, the mixed bracket is [[e, f]] = 1/2 <e, Df>,
/// degree-1 brackets vanish, and the jacobiator is -T.
class CourantLie2 {
public:
    explicit CourantLie2(CourantStructure c) : c_(std::move(c)) {}
    const CourantStructure& structure() const { return c_; }
    int nvars() const { return c_.nvars(); }

private:
    CourantStructure c_;
};

PlecticElement l2_d(const PlecticLie2& inst, const PlecticElement& x);
CourantElement l2_d(const CourantLie2& inst, const CourantElement& x);

PlecticElement l2_bracket(const PlecticLie2& inst, const PlecticElement& x,
                          const PlecticElement& y);
CourantElement l2_bracket(const CourantLie2& inst, const CourantElement& x,
                          const CourantElement& y);

/// Trilinear degree-1 jacobiator; arguments must all be degree 0.
PlecticElement l2_jacobiator(const PlecticLie2& inst, const PlecticElement& x,
                             const PlecticElement& y, const PlecticElement& z);
CourantElement l2_jacobiator(const CourantLie2& inst, const CourantElement& x,
                             const CourantElement& y, const CourantElement& z);

/// Checks that the bracket is a chain map: the degree-0 bracket of Hamiltonian
/// forms is again Hamiltonian with the bracketed field, and the mixed-grade
/// brackets commute with the differential.
Report check_bracket_chain_map(const PlecticLie2& inst, const TrialConfig& cfg);
Report check_bracket_chain_map(const CourantLie2& inst, const TrialConfig& cfg);

/// Checks the jacobiator contract: total antisymmetry, the homotopy property
/// [x,[y,z]] - [[x,y],z] - [y,[x,z]] = d J(x,y,z), the coherence law relating
/// brackets of jacobiators to jacobiators of brackets, and the mixed-grade
/// bookkeeping rules.
Report check_jacobiator_identity(const PlecticLie2& inst, const TrialConfig& cfg);
Report check_jacobiator_identity(const CourantLie2& inst, const TrialConfig& cfg);

/// The embedding of the plectic algebra into the Courant algebra of the same
/// 2-plectic form: phi0(alpha) = (v_alpha, -alpha), phi1(f) = -f, and phi2 is
/// the pairing-defect homotopy -B.
class EmbeddingHom {
public:
    explicit EmbeddingHom(PlecticStructure p);
    const PlecticLie2& source() const { return source_; }
    const CourantLie2& target() const { return target_; }
    int nvars() const { return source_.nvars(); }

private:
    PlecticLie2 source_;
    CourantLie2 target_;
};

Section hom_phi0(const EmbeddingHom& h, const HamiltonianPair& a);
Polynomial hom_phi1(const EmbeddingHom& h, const Polynomial& f);
Polynomial hom_phi2(const EmbeddingHom& h, const HamiltonianPair& a, const HamiltonianPair& b);

/// Checks that phi = (phi0, phi1) is a chain map, that phi2 fills the two
/// bracket-compatibility squares (degree 0 and mixed), and that phi0 has
/// trivial kernel on the sampled forms.
Report check_hom_homotopy(const EmbeddingHom& h, const TrialConfig& cfg);

/// Checks the coherence law for (phi0, phi1, phi2) between the two
/// jacobiators, plus the closed-form value of both sides: each equals
/// 1/2 (i_{v_gamma} dB(alpha,beta) + cyclic).
Report check_hom_coherence(const EmbeddingHom& h, const TrialConfig& cfg);

}  // namespace cartan
