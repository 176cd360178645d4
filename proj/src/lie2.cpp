#include "cartan/lie2.hpp"

#include <stdexcept>
#include <utility>

namespace cartan {
namespace {

const Rational kHalf(1, 2);

[[noreturn]] void wrong_grade(const char* what) {
    throw std::invalid_argument(std::string(what) + ": element has the wrong grade");
}

}  // namespace

PlecticElement PlecticElement::hamiltonian(HamiltonianPair p) {
    return PlecticElement(std::variant<HamiltonianPair, Polynomial>(std::move(p)));
}

PlecticElement PlecticElement::smooth(Polynomial f) {
    return PlecticElement(std::variant<HamiltonianPair, Polynomial>(std::move(f)));
}

const HamiltonianPair& PlecticElement::pair() const {
    if (grade() != 0) wrong_grade("PlecticElement::pair");
    return std::get<HamiltonianPair>(value_);
}

const Polynomial& PlecticElement::function() const {
    if (grade() != 1) wrong_grade("PlecticElement::function");
    return std::get<Polynomial>(value_);
}

int PlecticElement::nvars() const {
    return grade() == 0 ? pair().alpha.nvars() : function().nvars();
}

bool PlecticElement::is_zero() const {
    if (grade() == 0) return pair().alpha.is_zero() && pair().v.is_zero();
    return function().is_zero();
}

PlecticElement PlecticElement::operator-() const {
    if (grade() == 0) return hamiltonian({-pair().alpha, -pair().v});
    return smooth(-function());
}

PlecticElement operator+(const PlecticElement& a, const PlecticElement& b) {
    if (a.grade() != b.grade())
        throw std::invalid_argument("PlecticElement: sum of elements of different grades");
    if (a.grade() == 0)
        return PlecticElement::hamiltonian(
            {a.pair().alpha + b.pair().alpha, a.pair().v + b.pair().v});
    return PlecticElement::smooth(a.function() + b.function());
}

PlecticElement operator-(const PlecticElement& a, const PlecticElement& b) { return a + (-b); }

std::string PlecticElement::str() const {
    if (grade() == 0) return "{alpha = " + pair().alpha.str() + ", v = " + pair().v.str() + "}";
    return "{f = " + function().str() + "}";
}

CourantElement CourantElement::of_section(Section e) {
    return CourantElement(std::variant<Section, Polynomial>(std::move(e)));
}

CourantElement CourantElement::smooth(Polynomial f) {
    return CourantElement(std::variant<Section, Polynomial>(std::move(f)));
}

const Section& CourantElement::section() const {
    if (grade() != 0) wrong_grade("CourantElement::section");
    return std::get<Section>(value_);
}

const Polynomial& CourantElement::function() const {
    if (grade() != 1) wrong_grade("CourantElement::function");
    return std::get<Polynomial>(value_);
}

int CourantElement::nvars() const {
    return grade() == 0 ? section().nvars() : function().nvars();
}

bool CourantElement::is_zero() const {
    return grade() == 0 ? section().is_zero() : function().is_zero();
}

CourantElement CourantElement::operator-() const {
    if (grade() == 0) return of_section(-section());
    return smooth(-function());
}

CourantElement operator+(const CourantElement& a, const CourantElement& b) {
    if (a.grade() != b.grade())
        throw std::invalid_argument("CourantElement: sum of elements of different grades");
    if (a.grade() == 0) return CourantElement::of_section(a.section() + b.section());
    return CourantElement::smooth(a.function() + b.function());
}

CourantElement operator-(const CourantElement& a, const CourantElement& b) { return a + (-b); }

std::string CourantElement::str() const {
    if (grade() == 0) return section().str();
    return "{f = " + function().str() + "}";
}

PlecticElement l2_d(const PlecticLie2& inst, const PlecticElement& x) {
    if (x.grade() != 1)
        throw std::invalid_argument("l2_d: the differential only applies to grade 1");
    DifferentialForm df = exterior_derivative(DifferentialForm::from_function(x.function()));
    return PlecticElement::hamiltonian({std::move(df), VectorField(inst.nvars())});
}

CourantElement l2_d(const CourantLie2&, const CourantElement& x) {
    if (x.grade() != 1)
        throw std::invalid_argument("l2_d: the differential only applies to grade 1");
    return CourantElement::of_section(d_operator(x.function()));
}

PlecticElement l2_bracket(const PlecticLie2& inst, const PlecticElement& x,
                          const PlecticElement& y) {
    if (x.grade() == 0 && y.grade() == 0)
        return PlecticElement::hamiltonian(semi_bracket(inst.structure(), x.pair(), y.pair()));
    // Every bracket touching grade 1 vanishes; the zero lives in grade 1.
    return PlecticElement::smooth(Polynomial::constant(inst.nvars(), Rational(0)));
}

CourantElement l2_bracket(const CourantLie2& inst, const CourantElement& x,
                          const CourantElement& y) {
    const CourantStructure& c = inst.structure();
    if (x.grade() == 0 && y.grade() == 0)
        return CourantElement::of_section(twisted_bracket(c, x.section(), y.section()));
    if (x.grade() == 0 && y.grade() == 1)
        return CourantElement::smooth(
            kHalf * bilinear_form(x.section(), d_operator(y.function())));
    if (x.grade() == 1 && y.grade() == 0)
        return CourantElement::smooth(
            -(kHalf * bilinear_form(y.section(), d_operator(x.function()))));
    return CourantElement::smooth(Polynomial::constant(inst.nvars(), Rational(0)));
}

PlecticElement l2_jacobiator(const PlecticLie2& inst, const PlecticElement& x,
                             const PlecticElement& y, const PlecticElement& z) {
    if (x.grade() != 0 || y.grade() != 0 || z.grade() != 0)
        throw std::invalid_argument("l2_jacobiator: all arguments must have grade 0");
    return PlecticElement::smooth(jacobiator_JL(inst.structure(), x.pair(), y.pair(), z.pair()));
}

CourantElement l2_jacobiator(const CourantLie2& inst, const CourantElement& x,
                             const CourantElement& y, const CourantElement& z) {
    if (x.grade() != 0 || y.grade() != 0 || z.grade() != 0)
        throw std::invalid_argument("l2_jacobiator: all arguments must have grade 0");
    return CourantElement::smooth(
        -jacobiator_T(inst.structure(), x.section(), y.section(), z.section()));
}

namespace {

template <class Inst, class Elem>
Elem homotopy_defect(const Inst& inst, const Elem& x, const Elem& y, const Elem& z) {
    return l2_bracket(inst, x, l2_bracket(inst, y, z)) -
           l2_bracket(inst, l2_bracket(inst, x, y), z) -
           l2_bracket(inst, y, l2_bracket(inst, x, z)) -
           l2_d(inst, l2_jacobiator(inst, x, y, z));
}

template <class Inst, class Elem>
Elem coherence_defect(const Inst& inst, const Elem& x, const Elem& y, const Elem& z,
                      const Elem& w) {
    auto br = [&](const Elem& a, const Elem& b) { return l2_bracket(inst, a, b); };
    auto jac = [&](const Elem& a, const Elem& b, const Elem& c) {
        return l2_jacobiator(inst, a, b, c);
    };
    Elem lhs = br(x, jac(y, z, w)) + jac(x, br(y, z), w) + jac(x, z, br(y, w)) +
               br(jac(x, y, z), w) + br(z, jac(x, y, w));
    Elem rhs = jac(x, y, br(z, w)) + jac(br(x, y), z, w) + br(y, jac(x, z, w)) +
               jac(y, br(x, z), w) + jac(y, z, br(x, w));
    return lhs - rhs;
}

template <class Inst, class Elem, class Draw0, class Draw1>
Report jacobiator_report(const Inst& inst, const TrialConfig& cfg, const char* scope_prefix,
                         const Draw0& draw0, const Draw1& draw1) {
    Report report;
    const std::string prefix = scope_prefix;

    report.add(run_check(
        "jacobiator_antisymmetry", "J(x,y,z) = -J(y,x,z) = -J(x,z,y)", cfg,
        prefix + ".antisym", [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            Elem x = draw0(rng), y = draw0(rng), z = draw0(rng);
            Elem j = l2_jacobiator(inst, x, y, z);
            Elem swap_xy = j + l2_jacobiator(inst, y, x, z);
            Elem swap_yz = j + l2_jacobiator(inst, x, z, y);
            if (swap_xy.is_zero() && swap_yz.is_zero()) return std::nullopt;
            return "x=" + x.str() + ", y=" + y.str() + ", z=" + z.str();
        }));

    report.add(run_check(
        "bracket_homotopy", "[x,[y,z]] - [[x,y],z] - [y,[x,z]] = d J(x,y,z)", cfg,
        prefix + ".homotopy", [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            Elem x = draw0(rng), y = draw0(rng), z = draw0(rng);
            Elem defect = homotopy_defect(inst, x, y, z);
            if (defect.is_zero()) return std::nullopt;
            return "x=" + x.str() + ", y=" + y.str() + ", z=" + z.str() +
                   ", defect=" + defect.str();
        }));

    report.add(run_check(
        "jacobiator_coherence",
        "[x,J(y,z,w)] + J(x,[y,z],w) + J(x,z,[y,w]) + [J(x,y,z),w] + [z,J(x,y,w)] = "
        "J(x,y,[z,w]) + J([x,y],z,w) + [y,J(x,z,w)] + J(y,[x,z],w) + J(y,z,[x,w])",
        cfg, prefix + ".coherence", [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            Elem x = draw0(rng), y = draw0(rng), z = draw0(rng), w = draw0(rng);
            Elem defect = coherence_defect(inst, x, y, z, w);
            if (defect.is_zero()) return std::nullopt;
            return "x=" + x.str() + ", y=" + y.str() + ", z=" + z.str() + ", w=" + w.str() +
                   ", defect=" + defect.str();
        }));

    report.add(run_check(
        "mixed_grade_bookkeeping",
        "[x,f] = -[f,x] in grade 1, [f,g] = 0, and [x,y] stays in grade 0", cfg,
        prefix + ".grades", [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            Elem x = draw0(rng), y = draw0(rng);
            Elem f = draw1(rng), g = draw1(rng);
            Elem xf = l2_bracket(inst, x, f);
            Elem fx = l2_bracket(inst, f, x);
            if (xf.grade() != 1 || fx.grade() != 1)
                return std::string("mixed bracket did not land in grade 1");
            if (!(xf + fx).is_zero())
                return "x=" + x.str() + ", f=" + f.str() + ", [x,f]+[f,x]=" + (xf + fx).str();
            if (!l2_bracket(inst, f, g).is_zero())
                return "f=" + f.str() + ", g=" + g.str() + ", [f,g] nonzero";
            if (l2_bracket(inst, x, y).grade() != 0) return "degree-0 bracket left grade 0";
            return std::nullopt;
        }));

    return report;
}

}  // namespace

Report check_bracket_chain_map(const PlecticLie2& inst, const TrialConfig& cfg) {
    const PlecticStructure& p = inst.structure();
    auto draw0 = [&](Rng& rng) {
        return random_hamiltonian_pair(p, cfg.max_degree, cfg.coeff_bound, rng);
    };
    Report report;

    report.add(run_check(
        "hamiltonian_closure", "d{a,b} = -i_{[v_a,v_b]} omega and v_{a,b} = [v_a, v_b]", cfg,
        "lie2.plectic.closure", [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            HamiltonianPair a = draw0(rng), b = draw0(rng);
            HamiltonianPair ab = semi_bracket(p, a, b);
            DifferentialForm residual =
                exterior_derivative(ab.alpha) + interior_product(ab.v, p.omega());
            if (residual.is_zero() && ab.v == vf_bracket(a.v, b.v)) return std::nullopt;
            return "a=" + a.alpha.str() + ", b=" + b.alpha.str() +
                   ", residual=" + residual.str();
        }));

    report.add(run_check(
        "chain_map_mixed", "d[x, f] = [x, df] and d[f, x] = [df, x] (all zero here)", cfg,
        "lie2.plectic.mixed", [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            PlecticElement x = PlecticElement::hamiltonian(draw0(rng));
            PlecticElement f = PlecticElement::smooth(
                random_polynomial(inst.nvars(), cfg.max_degree, cfg.coeff_bound, rng));
            PlecticElement left = l2_d(inst, l2_bracket(inst, x, f)) -
                                  l2_bracket(inst, x, l2_d(inst, f));
            PlecticElement right = l2_d(inst, l2_bracket(inst, f, x)) -
                                   l2_bracket(inst, l2_d(inst, f), x);
            if (left.is_zero() && right.is_zero()) return std::nullopt;
            return "x=" + x.str() + ", f=" + f.str();
        }));

    return report;
}

Report check_bracket_chain_map(const CourantLie2& inst, const TrialConfig& cfg) {
    const int n = inst.nvars();
    auto draw0 = [&](Rng& rng) {
        return CourantElement::of_section(
            random_section(n, cfg.max_degree, cfg.coeff_bound, rng));
    };
    auto draw1 = [&](Rng& rng) {
        return CourantElement::smooth(random_polynomial(n, cfg.max_degree, cfg.coeff_bound, rng));
    };
    Report report;

    report.add(run_check(
        "chain_map_left", "D[[e, f]] = [[e, Df]]", cfg, "lie2.courant.left",
        [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            CourantElement e = draw0(rng), f = draw1(rng);
            CourantElement defect = l2_d(inst, l2_bracket(inst, e, f)) -
                                    l2_bracket(inst, e, l2_d(inst, f));
            if (defect.is_zero()) return std::nullopt;
            return "e=" + e.str() + ", f=" + f.str() + ", defect=" + defect.str();
        }));

    report.add(run_check(
        "chain_map_right", "D[[f, e]] = [[Df, e]]", cfg, "lie2.courant.right",
        [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            CourantElement e = draw0(rng), f = draw1(rng);
            CourantElement defect = l2_d(inst, l2_bracket(inst, f, e)) -
                                    l2_bracket(inst, l2_d(inst, f), e);
            if (defect.is_zero()) return std::nullopt;
            return "e=" + e.str() + ", f=" + f.str() + ", defect=" + defect.str();
        }));

    report.add(run_check(
        "degree_one_bracket_vanishes", "[[f, g]] = 0", cfg, "lie2.courant.deg1",
        [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            CourantElement f = draw1(rng), g = draw1(rng);
            if (l2_bracket(inst, f, g).is_zero()) return std::nullopt;
            return "f=" + f.str() + ", g=" + g.str();
        }));

    return report;
}

Report check_jacobiator_identity(const PlecticLie2& inst, const TrialConfig& cfg) {
    auto draw0 = [&](Rng& rng) {
        return PlecticElement::hamiltonian(
            random_hamiltonian_pair(inst.structure(), cfg.max_degree, cfg.coeff_bound, rng));
    };
    auto draw1 = [&](Rng& rng) {
        return PlecticElement::smooth(
            random_polynomial(inst.nvars(), cfg.max_degree, cfg.coeff_bound, rng));
    };
    return jacobiator_report<PlecticLie2, PlecticElement>(inst, cfg, "lie2.plectic", draw0,
                                                          draw1);
}

Report check_jacobiator_identity(const CourantLie2& inst, const TrialConfig& cfg) {
    auto draw0 = [&](Rng& rng) {
        return CourantElement::of_section(
            random_section(inst.nvars(), cfg.max_degree, cfg.coeff_bound, rng));
    };
    auto draw1 = [&](Rng& rng) {
        return CourantElement::smooth(
            random_polynomial(inst.nvars(), cfg.max_degree, cfg.coeff_bound, rng));
    };
    return jacobiator_report<CourantLie2, CourantElement>(inst, cfg, "lie2.courant", draw0,
                                                          draw1);
}

EmbeddingHom::EmbeddingHom(PlecticStructure p)
    : source_(PlecticLie2(p)), target_(CourantLie2(CourantStructure::twisted(p.omega()))) {}

Section hom_phi0(const EmbeddingHom&, const HamiltonianPair& a) {
    return Section(a.v, -a.alpha);
}

Polynomial hom_phi1(const EmbeddingHom&, const Polynomial& f) { return -f; }

Polynomial hom_phi2(const EmbeddingHom&, const HamiltonianPair& a, const HamiltonianPair& b) {
    return -b_form(a, b);
}

Report check_hom_homotopy(const EmbeddingHom& h, const TrialConfig& cfg) {
    const PlecticStructure& p = h.source().structure();
    const CourantStructure& c = h.target().structure();
    const int n = h.nvars();
    auto draw_pair = [&](Rng& rng) {
        return random_hamiltonian_pair(p, cfg.max_degree, cfg.coeff_bound, rng);
    };
    auto draw_fn = [&](Rng& rng) {
        return random_polynomial(n, cfg.max_degree, cfg.coeff_bound, rng);
    };
    auto exact_pair = [&](const Polynomial& f) {
        return HamiltonianPair{exterior_derivative(DifferentialForm::from_function(f)),
                               VectorField(n)};
    };
    Report report;

    report.add(run_check(
        "hom_chain_map", "phi0(df) = D(phi1(f))", cfg, "lie2.hom.chain",
        [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            Polynomial f = draw_fn(rng);
            Section defect = hom_phi0(h, exact_pair(f)) - d_operator(hom_phi1(h, f));
            if (defect.is_zero()) return std::nullopt;
            return "f=" + f.str() + ", defect=" + defect.str();
        }));

    report.add(run_check(
        "hom_homotopy_degree0", "[[phi0(a), phi0(b)]] - phi0({a,b}) = D(phi2(a,b))", cfg,
        "lie2.hom.deg0", [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            HamiltonianPair a = draw_pair(rng), b = draw_pair(rng);
            Section defect = twisted_bracket(c, hom_phi0(h, a), hom_phi0(h, b)) -
                             hom_phi0(h, semi_bracket(p, a, b)) -
                             d_operator(hom_phi2(h, a, b));
            if (defect.is_zero()) return std::nullopt;
            return "a=" + a.alpha.str() + ", b=" + b.alpha.str() +
                   ", defect=" + defect.str();
        }));

    report.add(run_check(
        "hom_homotopy_mixed", "[[phi0(a), phi1(f)]] = phi2(a, df)", cfg, "lie2.hom.mixed",
        [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            HamiltonianPair a = draw_pair(rng);
            Polynomial f = draw_fn(rng);
            CourantElement mixed =
                l2_bracket(h.target(), CourantElement::of_section(hom_phi0(h, a)),
                           CourantElement::smooth(hom_phi1(h, f)));
            Polynomial defect = mixed.function() - hom_phi2(h, a, exact_pair(f));
            CourantElement mixed_rev =
                l2_bracket(h.target(), CourantElement::smooth(hom_phi1(h, f)),
                           CourantElement::of_section(hom_phi0(h, a)));
            Polynomial defect_rev = mixed_rev.function() - hom_phi2(h, exact_pair(f), a);
            if (defect.is_zero() && defect_rev.is_zero()) return std::nullopt;
            return "a=" + a.alpha.str() + ", f=" + f.str() + ", defect=" + defect.str();
        }));

    report.add(run_check(
        "hom_phi0_injective", "phi0(a) = 0 only for a = 0", cfg, "lie2.hom.injective",
        [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            HamiltonianPair a = draw_pair(rng);
            if (a.alpha.is_zero() || !hom_phi0(h, a).is_zero()) return std::nullopt;
            return "a=" + a.alpha.str() + " maps to zero";
        }));

    return report;
}

Report check_hom_coherence(const EmbeddingHom& h, const TrialConfig& cfg) {
    const PlecticStructure& p = h.source().structure();
    auto draw_pair = [&](Rng& rng) {
        return random_hamiltonian_pair(p, cfg.max_degree, cfg.coeff_bound, rng);
    };
    auto mixed = [&](const CourantElement& a, const CourantElement& b) {
        return l2_bracket(h.target(), a, b).function();
    };
    auto lhs_of = [&](const HamiltonianPair& x, const HamiltonianPair& y,
                      const HamiltonianPair& z) {
        CourantElement j = l2_jacobiator(
            h.target(), CourantElement::of_section(hom_phi0(h, x)),
            CourantElement::of_section(hom_phi0(h, y)),
            CourantElement::of_section(hom_phi0(h, z)));
        return j.function() - hom_phi1(h, jacobiator_JL(p, x, y, z));
    };
    auto rhs_of = [&](const HamiltonianPair& x, const HamiltonianPair& y,
                      const HamiltonianPair& z) {
        auto sect = [&](const HamiltonianPair& a) {
            return CourantElement::of_section(hom_phi0(h, a));
        };
        auto fn = [](Polynomial g) { return CourantElement::smooth(std::move(g)); };
        return hom_phi2(h, x, semi_bracket(p, y, z)) -
               hom_phi2(h, semi_bracket(p, x, y), z) -
               hom_phi2(h, y, semi_bracket(p, x, z)) -
               mixed(fn(hom_phi2(h, x, y)), sect(z)) +
               mixed(sect(x), fn(hom_phi2(h, y, z))) -
               mixed(sect(y), fn(hom_phi2(h, x, z)));
    };
    auto closed_of = [&](const HamiltonianPair& x, const HamiltonianPair& y,
                         const HamiltonianPair& z) {
        return kHalf * (directional_derivative(z.v, b_form(x, y)) +
                        directional_derivative(x.v, b_form(y, z)) +
                        directional_derivative(y.v, b_form(z, x)));
    };
    Report report;

    report.add(run_check(
        "hom_coherence_law",
        "J'(phi0 x, phi0 y, phi0 z) - phi1(J(x,y,z)) = phi2(x,[y,z]) - phi2([x,y],z) - "
        "phi2(y,[x,z]) - [[phi2(x,y), phi0(z)]] + [[phi0(x), phi2(y,z)]] - [[phi0(y), "
        "phi2(x,z)]]",
        cfg, "lie2.hom.coherence", [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            HamiltonianPair x = draw_pair(rng), y = draw_pair(rng), z = draw_pair(rng);
            Polynomial defect = lhs_of(x, y, z) - rhs_of(x, y, z);
            if (defect.is_zero()) return std::nullopt;
            return "x=" + x.alpha.str() + ", y=" + y.alpha.str() + ", z=" + z.alpha.str() +
                   ", defect=" + defect.str();
        }));

    report.add(run_check(
        "hom_coherence_lhs_value",
        "J'(phi0 x, phi0 y, phi0 z) - phi1(J(x,y,z)) = 1/2 (v_z B(x,y) + v_x B(y,z) + v_y "
        "B(z,x))",
        cfg, "lie2.hom.lhs_value", [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            HamiltonianPair x = draw_pair(rng), y = draw_pair(rng), z = draw_pair(rng);
            Polynomial defect = lhs_of(x, y, z) - closed_of(x, y, z);
            if (defect.is_zero()) return std::nullopt;
            return "x=" + x.alpha.str() + ", y=" + y.alpha.str() + ", z=" + z.alpha.str() +
                   ", defect=" + defect.str();
        }));

    report.add(run_check(
        "hom_coherence_rhs_value",
        "the phi2 side equals the same cyclic value", cfg, "lie2.hom.rhs_value",
        [&](std::uint64_t, Rng& rng) -> std::optional<std::string> {
            HamiltonianPair x = draw_pair(rng), y = draw_pair(rng), z = draw_pair(rng);
            Polynomial defect = rhs_of(x, y, z) - closed_of(x, y, z);
            if (defect.is_zero()) return std::nullopt;
            return "x=" + x.alpha.str() + ", y=" + y.alpha.str() + ", z=" + z.alpha.str() +
                   ", defect=" + defect.str();
        }));

    return report;
}

}  // namespace cartan
