#ifndef LCA_IO_HPP
#define LCA_IO_HPP

#include "aut.hpp"
#include "classify.hpp"
#include "lca.hpp"
#include "normalize.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lca::io {

using json = nlohmann::ordered_json;

/// Malformed input; `where` is a byte offset or a JSON pointer.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string where, std::string message)
        : std::runtime_error(where + ": " + message), where_(std::move(where)), message_(std::move(message))
    {
    }
    const std::string& where() const { return where_; }
    const std::string& message() const { return message_; }

private:
    std::string where_, message_;
};

// ---------------------------------------------------------------------------
// Scalars and polynomials

inline const char* var_key(Var v)
{
    switch (v) {
    case Var::lambda: return "lambda";
    case Var::mu: return "mu";
    case Var::partial: return "partial";
    case Var::x: return "x";
    case Var::y: return "y";
    }
    return "?";
}

inline json rat_to_json(const Rat& r) { return to_string(r); }

inline Rat rat_from_json(const json& j, const std::string& path)
{
    try {
        if (j.is_string()) return parse_rat(j.get<std::string>());
        if (j.is_number_integer()) return Rat(j.get<long>());
    } catch (const std::exception& e) {
        throw ParseError(path, e.what());
    }
    throw ParseError(path, "expected a rational as a decimal string");
}

inline json poly_to_json(const MPoly& p)
{
    json out = json::array();
    for (const auto& [m, c] : p.terms()) {
        json t;
        t["num"] = c.get_num().get_str();
        t["den"] = c.get_den().get_str();
        for (Var v : kAllVars)
            if (m.exp(v)) t[var_key(v)] = m.exp(v);
        out.push_back(std::move(t));
    }
    return out;
}

inline MPoly poly_from_json(const json& j, const std::string& path)
{
    if (!j.is_array()) throw ParseError(path, "polynomial must be a list of terms");
    std::vector<MPoly::Term> terms;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& t = j[i];
        const std::string at = path + "/" + std::to_string(i);
        if (!t.is_object()) throw ParseError(at, "term must be an object");
        std::array<unsigned, kNumVars> e{};
        for (const auto& [key, value] : t.items()) {
            if (key == "num" || key == "den") continue;
            std::size_t slot = kNumVars;
            for (std::size_t v = 0; v < kNumVars; ++v)
                if (key == var_key(kAllVars[v])) slot = v;
            if (slot == kNumVars) throw ParseError(at + "/" + key, "unknown field");
            if (!value.is_number_unsigned() || value.get<std::uint64_t>() > Monomial::kMaxExponent)
                throw ParseError(at + "/" + key, "exponent must be a small non-negative integer");
            e[slot] = value.get<unsigned>();
        }
        if (!t.contains("num")) throw ParseError(at, "missing \"num\"");
        Rat num = rat_from_json(t["num"], at + "/num");
        Rat den = t.contains("den") ? rat_from_json(t["den"], at + "/den") : Rat(1);
        if (den == 0) throw ParseError(at + "/den", "zero denominator");
        terms.emplace_back(Monomial::from_exponents(e), num / den);
    }
    return MPoly::from_terms(std::move(terms));
}

inline json matrix_to_json(const PolyMatrix& m)
{
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(poly_to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

inline PolyMatrix matrix_from_json(const json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 2) throw ParseError(path, "expected a 2x2 matrix");
    PolyMatrix m(2, 2);
    for (std::size_t r = 0; r < 2; ++r) {
        if (!j[r].is_array() || j[r].size() != 2) throw ParseError(path + "/" + std::to_string(r), "expected a row of two polynomials");
        for (std::size_t c = 0; c < 2; ++c) {
            std::string at = path + "/" + std::to_string(r) + "/" + std::to_string(c);
            m(r, c) = poly_from_json(j[r][c], at);
            if (!m(r, c).uses_only({Var::partial})) throw ParseError(at, "matrix entries must be polynomials in ∂");
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Algebra files

struct AlgebraFile {
    int rank = 2;
    StructurePolys structure; ///< rank 2
    MPoly rank1;              ///< rank 1: [L_λ L] = rank1 · L
};

inline json structure_to_json(const StructurePolys& s)
{
    json b;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            b[std::to_string(i + 1) + "," + std::to_string(j + 1)] = json::array({poly_to_json(s.at(i, j, 0)), poly_to_json(s.at(i, j, 1))});
    return json{{"rank", 2}, {"brackets", b}};
}

inline json algebra_to_json(const LCA2& r) { return structure_to_json(r.structure()); }

inline json rank1_to_json(const MPoly& f) { return json{{"rank", 1}, {"brackets", {{"1,1", json::array({poly_to_json(f)})}}}}; }

inline AlgebraFile algebra_from_json(const json& j)
{
    if (!j.is_object()) throw ParseError("/", "algebra file must be an object");
    if (!j.contains("rank") || !j["rank"].is_number_integer()) throw ParseError("/rank", "missing integer rank");
    if (!j.contains("brackets") || !j["brackets"].is_object()) throw ParseError("/brackets", "missing bracket table");
    AlgebraFile out;
    out.rank = j["rank"].get<int>();
    if (out.rank != 1 && out.rank != 2) throw ParseError("/rank", "rank must be 1 or 2");
    const json& b = j["brackets"];
    auto components = [&](const std::string& key, std::size_t count) {
        const std::string path = "/brackets/" + key;
        const json& entry = b[key];
        if (!entry.is_array() || entry.size() != count)
            throw ParseError(path, "expected " + std::to_string(count) + " component polynomial(s)");
        std::vector<MPoly> polys;
        for (std::size_t k = 0; k < count; ++k) {
            polys.push_back(poly_from_json(entry[k], path + "/" + std::to_string(k)));
            if (!polys.back().uses_only({Var::lambda, Var::partial}))
                throw ParseError(path + "/" + std::to_string(k), "structure polynomials use only lambda and partial");
        }
        return polys;
    };
    for (const auto& [key, value] : b.items()) {
        (void)value;
        bool known = out.rank == 1 ? key == "1,1" : (key == "1,1" || key == "1,2" || key == "2,1" || key == "2,2");
        if (!known) throw ParseError("/brackets/" + key, "unknown bracket entry");
    }
    if (out.rank == 1) {
        if (!b.contains("1,1")) throw ParseError("/brackets", "missing \"1,1\"");
        out.rank1 = components("1,1", 1)[0];
        return out;
    }
    for (const char* key : {"1,1", "1,2", "2,2"})
        if (!b.contains(key)) throw ParseError("/brackets", std::string("missing \"") + key + "\"");
    auto put = [&](std::size_t i, std::size_t jj, const std::vector<MPoly>& polys) {
        for (std::size_t k = 0; k < 2; ++k) out.structure.at(i, jj, k) = polys[k];
    };
    put(0, 0, components("1,1", 2));
    put(0, 1, components("1,2", 2));
    put(1, 1, components("2,2", 2));
    if (b.contains("2,1")) {
        put(1, 0, components("2,1", 2)); // checked by the skew test, not trusted
    } else {
        for (std::size_t k = 0; k < 2; ++k) out.structure.at(1, 0, k) = -subst2(out.structure.at(0, 1, k), -lam() - del(), del());
    }
    return out;
}

inline json parse_text(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
}

inline json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_text(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + " " + e.where(), e.message());
    }
}

// ---------------------------------------------------------------------------
// Results

inline json report_to_json(const ValidationReport& report)
{
    json v = json::array();
    for (const auto& violation : report.violations) {
        json r = json::array();
        for (const auto& p : violation.residual) r.push_back(poly_to_json(p));
        v.push_back({{"kind", violation.kind}, {"indices", violation.indices}, {"residual", r}});
    }
    return json{{"valid", report.valid()}, {"violations", v}};
}

inline json form_to_json(const CanonicalForm& f)
{
    using Kind = CanonicalForm::Kind;
    json out{{"type", kind_name(f.kind)}};
    switch (f.kind) {
    case Kind::Commutative:
    case Kind::Rcs: break;
    case Kind::SemisimpleVirVir: out["qualified"] = f.qualified; break;
    case Kind::Rnil:
        out["Q"] = poly_to_json(f.poly);
        out["scalar"] = rat_to_json(f.scalar);
        break;
    case Kind::Rsol: out["a"] = poly_to_json(f.poly); break;
    case Kind::Rcdq:
        out["c"] = rat_to_json(f.c);
        out["d"] = rat_to_json(f.d);
        out["Qc"] = poly_to_json(f.poly);
        out["params"] = {{"beta", rat_to_json(f.beta)}, {"gamma", rat_to_json(f.gamma)}};
        break;
    }
    return out;
}

inline CanonicalForm form_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) throw ParseError("/type", "missing form type");
    const std::string type = j["type"].get<std::string>();
    auto field = [&](const char* key) -> const json& {
        if (!j.contains(key)) throw ParseError(std::string("/") + key, "missing field");
        return j[key];
    };
    try {
        if (type == "Commutative") return CanonicalForm::commutative();
        if (type == "SemisimpleVirVir") return CanonicalForm::semisimple(j.value("qualified", false));
        if (type == "Rcs") return CanonicalForm::rcs();
        if (type == "Rnil")
            return CanonicalForm::rnil(poly_from_json(field("Q"), "/Q"), j.contains("scalar") ? rat_from_json(j["scalar"], "/scalar") : Rat(1));
        if (type == "Rsol") return CanonicalForm::rsol(poly_from_json(field("a"), "/a"));
        if (type == "Rcdq")
            return CanonicalForm::rcdq(rat_from_json(field("c"), "/c"), rat_from_json(field("d"), "/d"), poly_from_json(field("Qc"), "/Qc"));
    } catch (const std::invalid_argument& e) {
        throw ParseError("/", e.what());
    }
    throw ParseError("/type", "unknown form type " + type);
}

inline json certificate_to_json(const Certificate& c)
{
    json steps = json::array();
    for (const auto& s : c.steps) {
        json step{{"rule", s.rule}, {"matrix", matrix_to_json(s.matrix)}};
        step["residual_degree"] = s.residual_degree == kMinusInfinity ? json(nullptr) : json(s.residual_degree);
        steps.push_back(std::move(step));
    }
    json out;
    out["case"] = c.case_tag ? json(case_name(*c.case_tag)) : json(nullptr);
    out["abelian_method"] = c.abelian_method;
    out["qualified"] = c.qualified;
    out["steps"] = steps;
    out["lemmas"] = c.lemmas;
    return out;
}

inline json classification_to_json(const Classification& c)
{
    // No splitting basis is computed for Vir + Vir.
    bool has_change = c.form.kind != CanonicalForm::Kind::SemisimpleVirVir;
    return json{{"form", form_to_json(c.form)},
                {"basis_change", has_change ? matrix_to_json(c.change.m) : json(nullptr)},
                {"certificate", certificate_to_json(c.certificate)}};
}

inline json aut_element_to_json(const AutElement& e)
{
    return json{{"k1", rat_to_json(e.k1)}, {"k2", rat_to_json(e.k2)}, {"f", poly_to_json(e.f)}};
}

inline json witness_to_json(const IsoWitness& w)
{
    return json{{"s", rat_to_json(w.s)}, {"t", rat_to_json(w.t)}, {"p", poly_to_json(w.p)}, {"k", rat_to_json(w.k)}, {"scalar_only", w.scalar_only}};
}

inline json descriptor_to_json(const AutGroupDescriptor& d)
{
    json gens = json::array();
    for (const auto& g : d.generators) gens.push_back(aut_element_to_json(g));
    json out{{"group", group_name(d.group)}, {"constraints", d.constraints}, {"generators", gens}};
    if (d.dim) out["dim"] = d.dim;
    if (!d.matrices.empty()) {
        json ms = json::array();
        for (const auto& m : d.matrices) ms.push_back(matrix_to_json(m));
        out["matrices"] = ms;
    }
    return out;
}

} // namespace lca::io

#endif
