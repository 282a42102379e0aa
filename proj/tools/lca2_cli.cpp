// lca2: command-line front end for rank-two Lie conformal algebras.
//
// Exit codes: 0 success or true, 1 well-formed but false, 2 usage, parse or internal error.

#include "lca/lca2.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

using namespace lca;
using io::json;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

struct Options {
    std::string file, file_b, output;
    int degree_bound = -1;
    std::uint64_t seed = 1;
    int max_deg = 2;
    bool json = false;
    bool analyze = false;
};

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

LCA2 load_rank2(const std::string& path)
{
    auto file = io::algebra_from_json(io::read_file(path));
    if (file.rank != 2) throw io::ParseError(path, "expected a rank-two algebra");
    return LCA2(file.structure);
}

/// Validates, reporting the first violation on stderr. Returns nullopt when invalid.
std::optional<LCA2> load_valid(const std::string& path)
{
    LCA2 r = load_rank2(path);
    auto report = validate(r);
    if (!report.valid()) {
        const auto& v = report.violations.front();
        std::cerr << path << ": not a Lie conformal algebra (" << v.kind << "), residual " << v.residual.front() << "\n";
        return std::nullopt;
    }
    return r;
}

std::string indices(const std::vector<int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

json ranks(const std::vector<Submodule>& series)
{
    json out = json::array();
    for (const auto& m : series) out.push_back(m.rank());
    return out;
}

int cmd_check(const Options& o)
{
    auto file = io::algebra_from_json(io::read_file(o.file));
    if (file.rank == 1) {
        auto v = classify_rank1(file.rank1);
        bool ok = v.kind != Rank1Verdict::Kind::Invalid;
        if (o.json) {
            json doc{{"valid", ok}};
            if (!ok) doc["residual"] = io::poly_to_json(v.residual);
            emit(doc);
        } else {
            std::cout << (ok ? "valid" : "invalid: " + v.reason + ", residual " + v.residual.to_string()) << "\n";
        }
        return ok ? kTrue : kFalse;
    }

    LCA2 r(file.structure);
    auto lambda_report = validate(r);
    auto nth_report = check_axioms_nth(r);
    json doc = io::report_to_json(lambda_report);
    doc["nth_products_agree"] = lambda_report.valid() == nth_report.valid();
    if (o.analyze && r.validated()) {
        auto ds = derived_series(r);
        auto lcs = lower_central_series(r);
        doc["analysis"] = {{"derived_series_ranks", ranks(ds)},
                           {"lower_central_series_ranks", ranks(lcs)},
                           {"center_rank", center(r).rank()},
                           {"solvable", ds.back().is_zero()},
                           {"nilpotent", lcs.back().is_zero()}};
    }
    if (o.json) {
        emit(doc);
    } else {
        if (lambda_report.valid()) {
            std::cout << "valid\n";
        } else {
            for (const auto& v : lambda_report.violations) {
                std::cout << "violation " << v.kind << " [" << indices(v.indices) << "]:";
                for (const auto& p : v.residual) std::cout << " " << p;
                std::cout << "\n";
            }
        }
        if (doc.contains("analysis")) {
            const auto& a = doc["analysis"];
            std::cout << "derived series ranks: " << a["derived_series_ranks"].dump() << "\n"
                      << "lower central series ranks: " << a["lower_central_series_ranks"].dump() << "\n"
                      << "center rank: " << a["center_rank"].dump() << "\n"
                      << "solvable: " << a["solvable"].dump() << ", nilpotent: " << a["nilpotent"].dump() << "\n";
        }
    }
    return lambda_report.valid() ? kTrue : kFalse;
}

Classification run_classify(const LCA2& r, const Options& o)
{
    ClassifyOptions opts;
    opts.degree_bound = o.degree_bound;
    auto result = classify(r, opts);
    if (result.form.kind != CanonicalForm::Kind::SemisimpleVirVir &&
        apply_basis_change(r, result.change.m).structure() != result.form.structure())
        throw InternalInconsistency("cli-revalidation", "emitted basis change does not reproduce the canonical form");
    return result;
}

void print_matrix(const PolyMatrix& m)
{
    for (std::size_t i = 0; i < 2; ++i) std::cout << "  [" << m(i, 0) << ", " << m(i, 1) << "]\n";
}

int cmd_classify(const Options& o)
{
    auto r = load_valid(o.file);
    if (!r) return kFalse;
    auto result = run_classify(*r, o);
    if (o.json) {
        emit(io::classification_to_json(result));
        return kTrue;
    }
    std::cout << result.form.to_string() << "\n";
    if (result.certificate.case_tag) std::cout << "case: " << case_name(*result.certificate.case_tag) << "\n";
    if (result.form.kind != CanonicalForm::Kind::SemisimpleVirVir) {
        std::cout << "basis change (rows are the canonical generators):\n";
        print_matrix(result.change.m);
    }
    for (const auto& step : result.certificate.steps) {
        std::cout << "step " << step.rule << ", residual degree "
                  << (step.residual_degree == kMinusInfinity ? std::string("-inf") : std::to_string(step.residual_degree)) << "\n";
    }
    for (const auto& l : result.certificate.lemmas) std::cout << "note: " << l << "\n";
    return kTrue;
}

int cmd_iso(const Options& o)
{
    auto ra = load_valid(o.file);
    auto rb = load_valid(o.file_b);
    if (!ra || !rb) return kFalse;
    auto ca = run_classify(*ra, o);
    auto cb = run_classify(*rb, o);
    auto res = are_isomorphic(ca.form, cb.form);
    json doc{{"isomorphic", res.isomorphic}, {"form_a", io::form_to_json(ca.form)}, {"form_b", io::form_to_json(cb.form)}};
    std::optional<PolyMatrix> full;
    if (res.isomorphic && res.witness && ca.form.kind != CanonicalForm::Kind::SemisimpleVirVir) {
        // Second file basis -> canonical B -> canonical A -> first file basis.
        PolyMatrix m = ca.change.inverse().m * res.witness->matrix() * cb.change.m;
        if (apply_basis_change(*rb, m).structure() != ra->structure())
            throw InternalInconsistency("iso-witness", "composed witness does not map the second algebra onto the first");
        full = m;
        doc["witness"] = io::witness_to_json(*res.witness);
        doc["matrix"] = io::matrix_to_json(m);
    }
    if (o.json) {
        emit(doc);
    } else {
        std::cout << (res.isomorphic ? "isomorphic" : "not isomorphic") << "\n"
                  << "first: " << ca.form.to_string() << "\nsecond: " << cb.form.to_string() << "\n";
        if (full) {
            std::cout << "basis change on the second algebra giving the first:\n";
            print_matrix(*full);
        }
    }
    return res.isomorphic ? kTrue : kFalse;
}

int cmd_aut(const Options& o)
{
    auto r = load_valid(o.file);
    if (!r) return kFalse;
    auto result = run_classify(*r, o);
    auto desc = automorphism_group(result.form);
    if (o.json) {
        json doc = io::descriptor_to_json(desc);
        doc["form"] = io::form_to_json(result.form);
        emit(doc);
        return kTrue;
    }
    std::cout << result.form.to_string() << "\ngroup: " << group_name(desc.group);
    if (desc.dim) std::cout << " (dim " << desc.dim << ")";
    std::cout << "\n";
    for (const auto& c : desc.constraints) std::cout << "constraint: " << c << "\n";
    for (const auto& g : desc.generators)
        std::cout << "generator: k1=" << to_string(g.k1) << " k2=" << to_string(g.k2) << " f=" << g.f << "\n";
    return kTrue;
}

int cmd_table(const Options& o)
{
    json rows = json::array();
    bool all = true;
    for (int c : {1, 0, -1, -4, -6}) {
        auto span = table_row_span(c);
        MPoly q = span.size() > 1 ? table_row(c, 1, 1) : table_row(c, 1);
        LCA2 r(cdq_structure(c, 0, q));
        bool ok = validate(r).valid() && check_axioms_nth(r).valid();
        all = all && ok;
        json basis = json::array();
        for (const auto& b : span) basis.push_back(io::poly_to_json(b));
        rows.push_back({{"c", std::to_string(c)}, {"basis", basis}, {"verified", ok}});
        if (!o.json) {
            std::cout << "c = " << c << ":";
            for (std::size_t i = 0; i < span.size(); ++i) std::cout << (i ? " + " : " ") << (i ? "gamma*(" : "beta*(") << span[i] << ")";
            std::cout << (ok ? "  verified" : "  FAILED") << "\n";
        }
    }
    if (o.json) emit(json{{"rows", rows}});
    return all ? kTrue : kFalse;
}

int cmd_scramble(const Options& o)
{
    auto r = load_valid(o.file);
    if (!r) return kFalse;
    auto [scrambled, change] = scramble(*r, o.seed, o.max_deg);
    json algebra = io::algebra_to_json(scrambled);
    if (!o.output.empty()) {
        std::ofstream out(o.output);
        if (!out) throw io::ParseError(o.output, "cannot write file");
        out << algebra.dump(2) << "\n";
    }
    if (o.json) {
        emit(json{{"algebra", algebra}, {"basis_change", io::matrix_to_json(change.m)}});
    } else {
        if (o.output.empty()) std::cout << algebra.dump(2) << "\n";
        std::cout << "basis change (rows are the new generators):\n";
        print_matrix(change.m);
    }
    return kTrue;
}

int cmd_rank1(const Options& o)
{
    auto file = io::algebra_from_json(io::read_file(o.file));
    if (file.rank != 1) throw io::ParseError(o.file, "expected a rank-one algebra");
    auto v = classify_rank1(file.rank1);
    const char* kind = v.kind == Rank1Verdict::Kind::Invalid ? "Invalid" : v.kind == Rank1Verdict::Kind::Commutative ? "Commutative" : "Virasoro";
    if (o.json) {
        json doc{{"kind", kind}};
        if (v.kind == Rank1Verdict::Kind::Virasoro) doc["alpha"] = io::rat_to_json(v.alpha);
        if (v.kind == Rank1Verdict::Kind::Invalid) {
            doc["reason"] = v.reason;
            doc["residual"] = io::poly_to_json(v.residual);
        }
        emit(doc);
    } else {
        std::cout << kind;
        if (v.kind == Rank1Verdict::Kind::Virasoro) std::cout << ", alpha = " << to_string(v.alpha);
        if (v.kind == Rank1Verdict::Kind::Invalid) std::cout << ": " << v.reason << ", residual " << v.residual;
        std::cout << "\n";
    }
    return v.kind == Rank1Verdict::Kind::Invalid ? kFalse : kTrue;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rank-two Lie conformal algebras: check, classify, compare"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "Emit a single JSON document");
    app.add_option("--degree-bound", o.degree_bound, "Coordinate degree bound for the abelian ideal search");

    auto* check = app.add_subcommand("check", "Verify the axioms");
    check->add_option("file", o.file)->required();
    check->add_flag("--analyze", o.analyze, "Also report derived and lower central series and the center");
    auto* cls = app.add_subcommand("classify", "Reduce to a canonical form");
    cls->add_option("file", o.file)->required();
    auto* iso = app.add_subcommand("iso", "Decide isomorphism of two algebras");
    iso->add_option("file_a", o.file)->required();
    iso->add_option("file_b", o.file_b)->required();
    auto* aut = app.add_subcommand("aut", "Describe the automorphism group");
    aut->add_option("file", o.file)->required();
    auto* table = app.add_subcommand("table", "Print and verify the exceptional Q_c rows");
    auto* scr = app.add_subcommand("scramble", "Apply a seeded random change of basis");
    scr->add_option("file", o.file)->required();
    scr->add_option("--seed", o.seed, "Random seed");
    scr->add_option("--max-deg", o.max_deg, "Degree budget of the basis change")->check(CLI::NonNegativeNumber);
    scr->add_option("-o,--output", o.output, "Write the scrambled algebra here");
    auto* r1 = app.add_subcommand("rank1", "Classify a rank-one bracket");
    r1->add_option("file", o.file)->required();
    for (auto* sub : {check, cls, iso, aut, table, scr, r1}) {
        sub->add_flag("--json", o.json, "Emit a single JSON document");
        sub->add_option("--degree-bound", o.degree_bound, "Coordinate degree bound for the abelian ideal search");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        if (*check) return cmd_check(o);
        if (*cls) return cmd_classify(o);
        if (*iso) return cmd_iso(o);
        if (*aut) return cmd_aut(o);
        if (*table) return cmd_table(o);
        if (*scr) return cmd_scramble(o);
        if (*r1) return cmd_rank1(o);
    } catch (const io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
