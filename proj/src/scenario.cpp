#include "cartan/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "cartan/lie2.hpp"
#include "cartan/plectic.hpp"

namespace cartan {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
    throw ScenarioError(origin + ": " + msg);
}

std::string type_name(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return "null";
        case json::value_t::object: return "object";
        case json::value_t::array: return "array";
        case json::value_t::string: return "string";
        case json::value_t::boolean: return "boolean";
        case json::value_t::number_integer:
        case json::value_t::number_unsigned: return "integer";
        case json::value_t::number_float: return "float";
        default: return "value";
    }
}

const json& member(const json& j, const char* key, const std::string& ctx,
                   const std::string& origin) {
    if (!j.is_object()) fail(origin, ctx + ": expected an object, got " + type_name(j));
    auto it = j.find(key);
    if (it == j.end()) fail(origin, ctx + ": missing required key \"" + key + "\"");
    return *it;
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& ctx, const std::string& origin) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return key == k; }) == known.end())
            fail(origin, ctx + ": unknown key \"" + key + "\"");
    }
}

long get_integer(const json& j, long lo, long hi, const std::string& ctx,
                 const std::string& origin) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        fail(origin, ctx + ": expected an integer, got " + type_name(j));
    const long v = j.get<long>();
    if (v < lo || v > hi)
        fail(origin, ctx + ": value " + std::to_string(v) + " out of range [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

Rational parse_rational(const json& j, const std::string& ctx, const std::string& origin) {
    if (!j.is_string())
        fail(origin, ctx + ": rationals are strings like \"-3/4\" (floats are never allowed), got " +
                         type_name(j));
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail(origin, ctx + ": " + e.what());
    }
}

Polynomial parse_polynomial(const json& j, int n, const std::string& ctx,
                            const std::string& origin) {
    if (!j.is_array())
        fail(origin, ctx + ": a polynomial is a list of {\"coeff\", \"exps\"} terms, got " +
                         type_name(j));
    Polynomial p(n);
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string tctx = ctx + "[" + std::to_string(t) + "]";
        const json& term = j[t];
        if (!term.is_object()) fail(origin, tctx + ": expected an object, got " + type_name(term));
        reject_unknown_keys(term, {"coeff", "exps"}, tctx, origin);
        const Rational c = parse_rational(member(term, "coeff", tctx, origin), tctx + ".coeff", origin);
        const json& je = member(term, "exps", tctx, origin);
        if (!je.is_array() || je.size() != static_cast<std::size_t>(n))
            fail(origin, tctx + ".exps: expected a list of " + std::to_string(n) +
                             " exponents (the ambient dimension)");
        Exponents e(n, 0);
        for (int i = 0; i < n; ++i)
            e[i] = static_cast<unsigned>(
                get_integer(je[i], 0, 1000, tctx + ".exps[" + std::to_string(i) + "]", origin));
        p += Polynomial::monomial(n, std::move(e), c);
    }
    return p;
}

DifferentialForm parse_form(const json& j, int n, int forced_degree, const std::string& ctx,
                            const std::string& origin) {
    if (!j.is_array())
        fail(origin, ctx + ": a form is a list of {\"indices\", \"poly\"} components, got " +
                         type_name(j));
    int degree = forced_degree;
    if (degree < 0) {
        if (j.empty())
            fail(origin, ctx + ": cannot infer the degree of an empty form; "
                               "give at least one component");
        const json& head = j[0];
        if (!head.is_object() || !head.contains("indices") || !head["indices"].is_array())
            fail(origin, ctx + "[0]: expected a {\"indices\", \"poly\"} component");
        degree = static_cast<int>(head["indices"].size());
    }
    DifferentialForm f(n, degree);
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string tctx = ctx + "[" + std::to_string(t) + "]";
        const json& comp = j[t];
        if (!comp.is_object()) fail(origin, tctx + ": expected an object, got " + type_name(comp));
        reject_unknown_keys(comp, {"indices", "poly"}, tctx, origin);
        const json& ji = member(comp, "indices", tctx, origin);
        if (!ji.is_array() || ji.size() != static_cast<std::size_t>(degree))
            fail(origin, tctx + ".indices: expected " + std::to_string(degree) +
                             " strictly increasing 1-based indices (degree " +
                             std::to_string(degree) + ")");
        IndexTuple tuple(degree);
        for (int i = 0; i < degree; ++i) {
            tuple[i] = static_cast<int>(
                get_integer(ji[i], 1, n, tctx + ".indices[" + std::to_string(i) + "]", origin));
            if (i > 0 && tuple[i] <= tuple[i - 1])
                fail(origin, tctx + ".indices: must be strictly increasing");
        }
        f += DifferentialForm::monomial(n, tuple,
                                        parse_polynomial(member(comp, "poly", tctx, origin), n,
                                                         tctx + ".poly", origin));
    }
    return f;
}

VectorField parse_vector_field(const json& j, int n, const std::string& ctx,
                               const std::string& origin) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(n))
        fail(origin, ctx + ": a vector field is a list of " + std::to_string(n) +
                         " polynomials (one per coordinate)");
    std::vector<Polynomial> comps;
    comps.reserve(n);
    for (int i = 0; i < n; ++i)
        comps.push_back(parse_polynomial(j[i], n, ctx + "[" + std::to_string(i) + "]", origin));
    return VectorField(std::move(comps));
}

Section parse_section(const json& j, int n, const std::string& ctx, const std::string& origin) {
    if (!j.is_object()) fail(origin, ctx + ": a section is {\"v\": …, \"alpha\": …}");
    reject_unknown_keys(j, {"v", "alpha"}, ctx, origin);
    VectorField v = parse_vector_field(member(j, "v", ctx, origin), n, ctx + ".v", origin);
    DifferentialForm alpha =
        parse_form(member(j, "alpha", ctx, origin), n, 1, ctx + ".alpha", origin);
    return Section(std::move(v), std::move(alpha));
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) != 0 || c == '_';
    });
}

const std::vector<std::string>& operation_names() {
    static const std::vector<std::string> ops = {
        "hamiltonian_vector_field", "semi_bracket", "twisted_bracket", "curvature",
        "adjoint_action",           "phi0",         "phi2",
    };
    return ops;
}

}  // namespace

const std::vector<std::string>& suite_registry() {
    static const std::vector<std::string> names = {
        "ring_laws",    "exterior_calculus", "plectic",      "courant_def21",
        "courant_def22", "curvature",        "lie2_plectic", "lie2_courant",
        "embedding",    "symmetry",          "symmetry_negative", "degeneracy_r4",
    };
    return names;
}

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t offset = std::min(e.byte, text.size());
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(origin, "parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + " (offset " + std::to_string(offset) + "): " +
                         e.what());
    }
    if (!j.is_object()) fail(origin, "top level: expected an object, got " + type_name(j));
    reject_unknown_keys(j,
                        {"dimension", "omega", "named_objects", "suites", "trials", "seed",
                         "max_degree", "coeff_bound", "sample_points"},
                        "top level", origin);

    Scenario s;
    s.dimension =
        static_cast<int>(get_integer(member(j, "dimension", "top level", origin), 1, 64,
                                     "dimension", origin));
    const int n = s.dimension;

    s.omega = j.contains("omega") ? parse_form(j["omega"], n, 3, "omega", origin)
                                  : DifferentialForm(n, 3);

    if (j.contains("named_objects")) {
        const json& jn = j["named_objects"];
        if (!jn.is_object()) fail(origin, "named_objects: expected an object");
        for (const auto& [name, spec] : jn.items()) {
            const std::string ctx = "named_objects." + name;
            if (!valid_identifier(name))
                fail(origin, ctx + ": names must be identifiers (letters, digits, '_')");
            const auto& ops = operation_names();
            if (name == "omega" || std::find(ops.begin(), ops.end(), name) != ops.end())
                fail(origin, ctx + ": name is reserved");
            if (!spec.is_object() || spec.size() != 1)
                fail(origin, ctx + ": expected exactly one of "
                                   "{\"form\": …}, {\"vector_field\": …}, {\"section\": …}");
            const auto& [kind, body] = *spec.items().begin();
            if (kind == "form")
                s.named_objects.emplace(name, parse_form(body, n, -1, ctx + ".form", origin));
            else if (kind == "vector_field")
                s.named_objects.emplace(
                    name, parse_vector_field(body, n, ctx + ".vector_field", origin));
            else if (kind == "section")
                s.named_objects.emplace(name, parse_section(body, n, ctx + ".section", origin));
            else
                fail(origin, ctx + ": unknown object kind \"" + kind +
                                 "\" (use form, vector_field, or section)");
        }
    }

    if (j.contains("suites")) {
        const json& js = j["suites"];
        if (!js.is_array()) fail(origin, "suites: expected a list of suite names");
        for (std::size_t i = 0; i < js.size(); ++i) {
            if (!js[i].is_string())
                fail(origin, "suites[" + std::to_string(i) + "]: expected a string");
            s.suites.push_back(js[i].get<std::string>());
        }
    }

    if (j.contains("trials"))
        s.config.trials = static_cast<std::uint64_t>(
            get_integer(j["trials"], 1, 1000000, "trials", origin));
    if (j.contains("seed")) {
        const json& jseed = j["seed"];
        if (!jseed.is_number_integer() && !jseed.is_number_unsigned())
            fail(origin, "seed: expected an unsigned integer");
        if (jseed.is_number_integer() && jseed.get<long long>() < 0)
            fail(origin, "seed: must be non-negative");
        s.config.seed = jseed.get<std::uint64_t>();
    }
    if (j.contains("max_degree"))
        s.config.max_degree =
            static_cast<int>(get_integer(j["max_degree"], 0, 16, "max_degree", origin));
    if (j.contains("coeff_bound"))
        s.config.coeff_bound = get_integer(j["coeff_bound"], 1, 1000000, "coeff_bound", origin);

    if (j.contains("sample_points")) {
        const json& jp = j["sample_points"];
        if (!jp.is_array()) fail(origin, "sample_points: expected a list of rational vectors");
        for (std::size_t i = 0; i < jp.size(); ++i) {
            const std::string ctx = "sample_points[" + std::to_string(i) + "]";
            const json& pt = jp[i];
            if (!pt.is_array() || pt.size() != static_cast<std::size_t>(n))
                fail(origin, ctx + ": expected a vector of " + std::to_string(n) + " rationals");
            std::vector<Rational> point;
            point.reserve(n);
            for (int k = 0; k < n; ++k)
                point.push_back(
                    parse_rational(pt[k], ctx + "[" + std::to_string(k) + "]", origin));
            s.sample_points.push_back(std::move(point));
        }
    }
    return s;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError(path + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

void validate_for_suites(const Scenario& s) {
    const auto& registry = suite_registry();
    // Suites that never touch the twist, and suites that need Hamiltonian
    // data (hence a certified nondegenerate twist).
    const std::vector<std::string> omega_free = {"ring_laws", "exterior_calculus",
                                                 "degeneracy_r4"};
    const std::vector<std::string> needs_plectic = {"plectic", "lie2_plectic", "embedding",
                                                    "symmetry", "symmetry_negative"};
    auto contains = [](const std::vector<std::string>& v, const std::string& x) {
        return std::find(v.begin(), v.end(), x) != v.end();
    };

    bool uses_omega = false, uses_plectic = false;
    std::string omega_suite, plectic_suite;
    for (const auto& name : s.suites) {
        if (!contains(registry, name)) {
            std::string known;
            for (const auto& r : registry) known += (known.empty() ? "" : ", ") + r;
            throw ScenarioError("unknown suite \"" + name + "\"; registered suites: " + known);
        }
        if (!contains(omega_free, name) && !uses_omega) {
            uses_omega = true;
            omega_suite = name;
        }
        if (contains(needs_plectic, name) && !uses_plectic) {
            uses_plectic = true;
            plectic_suite = name;
        }
    }

    if (uses_omega) {
        const DifferentialForm d = exterior_derivative(s.omega);
        if (!d.is_zero())
            throw NotClosedError("suite \"" + omega_suite +
                                 "\" requires a closed twist, but d(omega) = " + d.str());
    }
    if (uses_plectic) {
        // Throws DegenerateError with a kernel witness when the twist is not
        // 2-plectic; suites drawing Hamiltonian pairs need the certificate.
        check_two_plectic(s.omega, s.sample_points);
    }
}

Scenario load_scenario(const std::string& path, const std::vector<std::string>& suite_override) {
    Scenario s = parse_scenario_file(path);
    if (!suite_override.empty()) s.suites = suite_override;
    validate_for_suites(s);
    return s;
}

bool overall_pass(const std::vector<SuiteResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const SuiteResult& r) { return r.report.overall_pass(); });
}

// ---------------------------------------------------------------------------
// Expression evaluation for `show`.
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Kind { Ident, LParen, RParen, Comma, End } kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                      src[j] == '_'))
                ++j;
            out.push_back({Token::Ident, src.substr(i, j - i), i});
            i = j;
        } else if (c == '(') {
            out.push_back({Token::LParen, "(", i});
            ++i;
        } else if (c == ')') {
            out.push_back({Token::RParen, ")", i});
            ++i;
        } else if (c == ',') {
            out.push_back({Token::Comma, ",", i});
            ++i;
        } else {
            throw ScenarioError("expression: unexpected character '" + std::string(1, c) +
                                "' at position " + std::to_string(i));
        }
    }
    out.push_back({Token::End, "", src.size()});
    return out;
}

using Value = std::variant<Polynomial, DifferentialForm, VectorField, Section>;

std::string value_kind(const Value& v) {
    switch (v.index()) {
        case 0: return "a function";
        case 1: {
            const auto& f = std::get<DifferentialForm>(v);
            return "a degree-" + std::to_string(f.degree()) + " form";
        }
        case 2: return "a vector field";
        default: return "a section";
    }
}

/// Evaluates one parsed expression; the structures the operations need are
/// built on first use and shared.
class Evaluator {
public:
    explicit Evaluator(const Scenario& s) : s_(s) {}

    Value eval(std::vector<Token>& toks, std::size_t& at) {
        const Token tok = expect(toks, at, Token::Ident, "a name or an operation");
        if (toks[at].kind != Token::LParen) return lookup(tok.text);
        ++at;  // consume '('
        std::vector<Value> args;
        if (toks[at].kind != Token::RParen) {
            args.push_back(eval(toks, at));
            while (toks[at].kind == Token::Comma) {
                ++at;
                args.push_back(eval(toks, at));
            }
        }
        expect(toks, at, Token::RParen, "')'");
        return apply(tok.text, std::move(args));
    }

private:
    static Token expect(std::vector<Token>& toks, std::size_t& at, Token::Kind kind,
                        const std::string& what) {
        if (toks[at].kind != kind)
            throw ScenarioError("expression: expected " + what + " at position " +
                                std::to_string(toks[at].pos));
        return toks[at++];
    }

    Value lookup(const std::string& name) const {
        auto it = s_.named_objects.find(name);
        if (it != s_.named_objects.end())
            return std::visit([](const auto& x) -> Value { return x; }, it->second);
        if (name == "omega") return s_.omega;
        std::string known = "omega";
        for (const auto& [k, v] : s_.named_objects) {
            (void)v;
            known += ", " + k;
        }
        throw ScenarioError("expression: unknown name \"" + name + "\"; known objects: " + known);
    }

    const PlecticStructure& plectic() {
        if (!plectic_) plectic_ = check_two_plectic(s_.omega, s_.sample_points);
        return *plectic_;
    }

    const CourantStructure& courant() {
        if (!courant_) courant_ = CourantStructure::twisted(s_.omega);
        return *courant_;
    }

    const EmbeddingHom& hom() {
        if (!hom_) hom_ = EmbeddingHom(plectic());
        return *hom_;
    }

    static const DifferentialForm& as_form(const Value& v, int degree, const std::string& op,
                                           int slot) {
        const auto* f = std::get_if<DifferentialForm>(&v);
        if (f == nullptr || f->degree() != degree)
            throw ScenarioError("expression: " + op + " needs a degree-" +
                                std::to_string(degree) + " form in argument " +
                                std::to_string(slot) + ", got " + value_kind(v));
        return *f;
    }

    static const Section& as_section(const Value& v, const std::string& op, int slot) {
        const auto* e = std::get_if<Section>(&v);
        if (e == nullptr)
            throw ScenarioError("expression: " + op + " needs a section in argument " +
                                std::to_string(slot) + ", got " + value_kind(v));
        return *e;
    }

    HamiltonianPair pair_of(const Value& v, const std::string& op, int slot) {
        return make_hamiltonian_pair(plectic(), as_form(v, 1, op, slot));
    }

    Value apply(const std::string& op, std::vector<Value> args) {
        auto arity = [&](std::size_t want) {
            if (args.size() != want)
                throw ScenarioError("expression: " + op + " takes " + std::to_string(want) +
                                    " argument(s), got " + std::to_string(args.size()));
        };
        if (op == "hamiltonian_vector_field") {
            arity(1);
            return hamiltonian_vector_field(plectic(), as_form(args[0], 1, op, 1));
        }
        if (op == "semi_bracket") {
            arity(2);
            return semi_bracket(plectic(), pair_of(args[0], op, 1), pair_of(args[1], op, 2)).alpha;
        }
        if (op == "twisted_bracket") {
            arity(2);
            return twisted_bracket(courant(), as_section(args[0], op, 1),
                                   as_section(args[1], op, 2));
        }
        if (op == "curvature") {
            arity(1);
            const int n = s_.dimension;
            std::vector<VectorField> samples;
            samples.reserve(n);
            for (int i = 1; i <= n; ++i) samples.push_back(VectorField::basis(n, i));
            return curvature_three_form(courant(), Connection(as_form(args[0], 2, op, 1)),
                                        samples);
        }
        if (op == "adjoint_action") {
            arity(2);
            return adjoint_action(courant(), as_section(args[0], op, 1),
                                  as_section(args[1], op, 2));
        }
        if (op == "phi0") {
            arity(1);
            return hom_phi0(hom(), pair_of(args[0], op, 1));
        }
        if (op == "phi2") {
            arity(2);
            return hom_phi2(hom(), pair_of(args[0], op, 1), pair_of(args[1], op, 2));
        }
        std::string ops;
        for (const auto& o : operation_names()) ops += (ops.empty() ? "" : ", ") + o;
        throw ScenarioError("expression: unknown operation \"" + op +
                            "\"; registered operations: " + ops);
    }

    const Scenario& s_;
    std::optional<PlecticStructure> plectic_;
    std::optional<CourantStructure> courant_;
    std::optional<EmbeddingHom> hom_;
};

}  // namespace

std::string show_expression(const Scenario& s, const std::string& expr) {
    std::vector<Token> toks = tokenize(expr);
    std::size_t at = 0;
    Evaluator ev(s);
    const Value v = ev.eval(toks, at);
    if (toks[at].kind != Token::End)
        throw ScenarioError("expression: trailing input at position " +
                            std::to_string(toks[at].pos));
    return std::visit([](const auto& x) { return x.str(); }, v);
}

}  // namespace cartan
