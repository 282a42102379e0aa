// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace lca;

namespace {

MPoly s() { return vir_poly(); }
MPoly u() { return u_poly(); }

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why)
    {
        if (pass) detail = why;
        pass = false;
    }
};

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
};

/// Parameter instantiations (β, γ) used for each table row.
std::vector<std::pair<Rat, Rat>> row_parameters(int c)
{
    if (table_row_span(c).size() == 2) return {{1, 0}, {0, 1}, {1, 1}, {3, -2}};
    return {{1, 0}, {3, 0}};
}

Outcome table_verification()
{
    Outcome o;
    int count = 0;
    for (int c : {1, 0, -1, -4, -6})
        for (const auto& [beta, gamma] : row_parameters(c)) {
            LCA2 r(cdq_structure(c, 0, table_row(c, beta, gamma)));
            auto lambda = validate(r);
            auto nth = check_axioms_nth(r);
            ++count;
            if (!lambda.valid() || !nth.valid())
                o.fail("c = " + std::to_string(c) + ", beta = " + to_string(beta) + ", gamma = " + to_string(gamma) + " has a nonzero residual");
        }
    if (o.pass) o.detail = std::to_string(count) + " instances, all residuals zero under both checkers";
    return o;
}

Outcome nonexistence()
{
    Outcome o;
    std::ostringstream msg;
    for (auto [c, n] : std::vector<std::pair<int, int>>{{-2, 5}, {-3, 6}, {-5, 8}, {-7, 10}, {-8, 11}, {-10, 13}}) {
        auto sol = oracle::homogeneous_solutions(c, n);
        msg << "(" << c << "," << n << "): sol " << sol.basis.size() << ", removable " << sol.coboundary_rank << "; ";
        if (sol.quotient_dim() != 0) o.fail("(c, n) = (" + std::to_string(c) + ", " + std::to_string(n) + ") has a non-removable solution");
    }
    if (o.pass) o.detail = msg.str();
    return o;
}

Outcome solution_dimensions()
{
    Outcome o;
    std::ostringstream msg;
    for (auto [c, n] : std::vector<std::pair<int, int>>{{1, 1}, {0, 2}, {0, 3}, {-1, 3}, {-1, 4}, {-4, 7}, {-6, 9}}) {
        auto sol = oracle::homogeneous_solutions(c, n);
        std::string tag = "(" + std::to_string(c) + ", " + std::to_string(n) + ")";
        msg << tag << ": " << sol.quotient_dim() << "; ";
        if (sol.quotient_dim() != 1) {
            o.fail(tag + " quotient dimension " + std::to_string(sol.quotient_dim()));
            continue;
        }
        // The table element of degree n must be a solution that no change of basis removes,
        // so it spans the one-dimensional quotient.
        MPoly row;
        for (const auto& b : table_row_span(c))
            if (b.total_degree() == n) row = b;
        if (row.is_zero() || !solve_in_span(sol.basis, row)) {
            o.fail(tag + " table row is not a solution");
            continue;
        }
        if (solve_coboundary(c, 0, row)) o.fail(tag + " table row is removable");
    }
    if (o.pass) o.detail = msg.str();
    return o;
}

Outcome obstruction_identities()
{
    Outcome o;
    std::vector<Rat> cs;
    for (int c = -14; c <= 4; ++c) cs.push_back(c);
    for (int num : {-7, -5, -3, -1, 1, 3, 5, 7, 11}) cs.push_back(make_rat(num, 2));
    for (int num : {-11, -4, -2, 2, 4, 13}) cs.push_back(make_rat(num, 3));
    for (int num : {-9, -1, 3, 17}) cs.push_back(make_rat(num, 7));
    cs.push_back(make_rat(1, 101));
    cs.push_back(make_rat(-201, 100));
    int checks = 0;
    for (const auto& c : cs)
        for (int m = 2; m <= 12; ++m) {
            ++checks;
            if (!obstruction_polynomial(1, m, c).is_zero()) o.fail("h_1 nonzero");
            if (obstruction_polynomial(0, m, c).is_zero() != (c + m - 2 == 0)) o.fail("h_0 condition fails at m = " + std::to_string(m));
            if (obstruction_polynomial(2, m, c).is_zero() != (c + m - 1 == 0)) o.fail("h_2 condition fails at m = " + std::to_string(m));
            if (obstruction_polynomial(3, m, c).is_zero() != (c + m == 0)) o.fail("h_3 condition fails at m = " + std::to_string(m));
        }
    if (o.pass) o.detail = std::to_string(cs.size()) + " values of c, " + std::to_string(checks) + " (c, m) pairs";
    return o;
}

std::vector<CanonicalForm> roundtrip_sources()
{
    return {CanonicalForm::commutative(),
            CanonicalForm::rcs(),
            CanonicalForm::rnil(s()),
            CanonicalForm::rnil(s() * del()),
            CanonicalForm::rnil(s() * u() + 3 * s()),
            CanonicalForm::rsol(lam()),
            CanonicalForm::rsol(lam().pow(2) + 1),
            CanonicalForm::rsol(lam().pow(3) - 2 * lam()),
            CanonicalForm::rcdq(1, 0, table_row(1, 1)),
            CanonicalForm::rcdq(0, 0, table_row(0, 1, 2)),
            CanonicalForm::rcdq(0, 0, table_row(0, 0, 1)),
            CanonicalForm::rcdq(-1, 0, table_row(-1, 2, 1)),
            CanonicalForm::rcdq(-1, 0, table_row(-1, 0, 1)),
            CanonicalForm::rcdq(-4, 0, table_row(-4, 1)),
            CanonicalForm::rcdq(-6, 0, table_row(-6, 1)),
            CanonicalForm::rcdq(2, 1, MPoly()),
            CanonicalForm::rcdq(0, -3, MPoly()),
            CanonicalForm::rcdq(5, 0, MPoly())};
}

Outcome roundtrip()
{
    Outcome o;
    int runs = 0;
    for (const auto& source : roundtrip_sources()) {
        LCA2 base = source.algebra();
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            auto [r, change] = scramble(base, seed, 4);
            ++runs;
            try {
                auto result = classify(r);
                if (!are_isomorphic(result.form, source).isomorphic) {
                    o.fail(source.to_string() + " seed " + std::to_string(seed) + " classified as " + result.form.to_string());
                } else if (apply_basis_change(r, result.change.m).structure() != result.form.structure()) {
                    o.fail(source.to_string() + " seed " + std::to_string(seed) + ": basis change does not reproduce the form");
                }
            } catch (const std::exception& e) {
                o.fail(source.to_string() + " seed " + std::to_string(seed) + ": " + e.what());
            }
        }
    }
    if (o.pass) o.detail = std::to_string(runs) + " scrambles classified and reproduced";
    return o;
}

Outcome checker_agreement()
{
    Outcome o;
    auto sources = roundtrip_sources();
    int valid = 0, corrupted = 0, caught = 0;
    for (int i = 0; i < 50; ++i) {
        LCA2 base = sources[static_cast<std::size_t>(i) % sources.size()].algebra();
        auto [r, change] = scramble(base, 1000 + static_cast<std::uint64_t>(i), 2);
        bool a = check_axioms_lambda(r).valid(), b = check_axioms_nth(r).valid();
        ++valid;
        if (!a || !b) o.fail("valid instance " + std::to_string(i) + " rejected");

        // Systematic corruption: slot i mod 8, monomial λ^p ∂^q with p + q cycling through 0..3.
        StructurePolys bad = r.structure();
        unsigned p = static_cast<unsigned>(i / 8) % 3, q = static_cast<unsigned>(i) % 2;
        bad.q[static_cast<std::size_t>(i) % 8] += MPoly(Rat(1 + i % 3)) * lam().pow(p) * del().pow(q);
        LCA2 broken(bad);
        bool ca = check_axioms_lambda(broken).valid(), cb = check_axioms_nth(broken).valid();
        ++corrupted;
        if (!ca) ++caught;
        if (ca != cb) o.fail("checkers disagree on corrupted instance " + std::to_string(i));
    }
    if (o.pass)
        o.detail = std::to_string(valid) + " valid and " + std::to_string(corrupted) + " corrupted instances agree (" + std::to_string(caught) +
                   " corruptions rejected)";
    return o;
}

Outcome automorphisms()
{
    Outcome o;
    std::vector<CanonicalForm> forms = roundtrip_sources();
    forms.push_back(CanonicalForm::semisimple());
    int generators = 0;
    for (const auto& f : forms) {
        auto g = automorphism_group(f);
        LCA2 r = f.algebra();
        for (const auto& e : g.generators) {
            ++generators;
            if (!is_automorphism(r, e)) o.fail("generator of " + f.to_string() + " is not an automorphism");
        }
        for (const auto& m : g.matrices) {
            ++generators;
            if (!is_automorphism(r, m)) o.fail("matrix generator of " + f.to_string() + " is not an automorphism");
        }
    }
    auto ss = bounded_aut_search(r_ss(), 2, {-2, -1, 0, 1, 2});
    if (ss.size() != 2) o.fail("Vir + Vir search found " + std::to_string(ss.size()) + " maps");
    std::size_t checked = 0;
    for (const auto& f : forms) {
        if (f.kind != CanonicalForm::Kind::Rcdq) continue;
        auto g = automorphism_group(f);
        for (const auto& m : bounded_aut_search(f.algebra(), 2, {-2, -1, 0, 1, 2})) {
            ++checked;
            if (!g.admits(m)) o.fail(f.to_string() + " has an automorphism outside its descriptor");
        }
    }
    if (o.pass)
        o.detail = std::to_string(generators) + " generators verified; Vir + Vir search found 2 maps; " + std::to_string(checked) +
                   " automorphisms of the semidirect family inside their descriptors";
    return o;
}

Outcome coboundary_lemmas()
{
    Outcome o;
    int rows = 0;
    for (int c : {1, 0, -1, -4, -6})
        for (const auto& [beta, gamma] : row_parameters(c)) {
            ++rows;
            if (solve_coboundary(c, 0, table_row(c, beta, gamma))) o.fail("table row c = " + std::to_string(c) + " is a coboundary");
        }
    std::vector<std::pair<Rat, Rat>> pairs{{1, 0}, {0, 0}, {-1, 0}, {2, 0}, {-2, 0}, {-4, 0}, {-6, 0}, {make_rat(1, 2), 0}, {7, 0}, {-3, 0},
                                           {2, 1}, {1, 1}, {0, 1}, {-1, 2}, {3, -1}, {make_rat(5, 3), 2}, {-4, make_rat(1, 2)}, {1, -5}, {0, -2}, {-6, 3}};
    for (const auto& [c, d] : pairs)
        if (!oracle::same_span(coboundary_kernel(c, d), oracle::closed_form_kernel(c, d)))
            o.fail("kernel mismatch at c = " + to_string(c) + ", d = " + to_string(d));
    if (o.pass) o.detail = std::to_string(rows) + " table rows are not coboundaries; " + std::to_string(pairs.size()) + " kernels match";
    return o;
}

Outcome isomorphism_oracle()
{
    Outcome o;
    using F = CanonicalForm;
    std::vector<std::pair<F, F>> same{
        {F::rnil(4 * s()), F::rnil(s())},
        {F::rnil(s()), F::rnil(3 * s())},
        {F::rnil(-1 * s() * del()), F::rnil(s() * del())},
        {F::rnil(2 * s() * u()), F::rnil(s() * u())},
        {F::rnil(9 * s() * del()), F::rnil(s() * del())},
        {F::rsol(3 * lam()), F::rsol(lam())},
        {F::rsol(-1 * lam().pow(2) - 1), F::rsol(lam().pow(2) + 1)},
        {F::rsol(2 * lam() + 2), F::rsol(lam() + 1)},
        {F::rsol(lam()), F::rsol(lam())},
        {F::rnil(s()), F::rnil(s())},
    };
    std::vector<std::pair<F, F>> different{
        {F::rnil(s()), F::rnil(s() * del())},
        {F::rnil(s() * del()), F::rnil(s() * u())},
        {F::rsol(lam()), F::rsol(lam() + 1)},
        {F::rsol(lam().pow(2)), F::rsol(lam().pow(2) + 1)},
        {F::rnil(s()), F::rsol(lam())},
        {F::rsol(lam()), F::rnil(s() * del())},
        {F::rnil(s() * u() + s()), F::rnil(s() * u())},
        {F::rsol(lam() + 2), F::rsol(lam() - 2)},
        {F::rsol(MPoly(1)), F::rsol(lam())},
        {F::rnil(s()), F::rnil(s() * del() + s())},
    };
    int agree = 0;
    auto run = [&](const std::vector<std::pair<F, F>>& pairs, bool expected) {
        for (const auto& [f1, f2] : pairs) {
            bool decided = are_isomorphic(f1, f2).isomorphic;
            bool found = !bounded_iso_search(f2.algebra(), f1.algebra(), 1, {-3, -2, -1, 0, 1, 2, 3}).empty();
            if (decided != found || decided != expected)
                o.fail(f1.to_string() + " vs " + f2.to_string() + ": decided " + (decided ? "yes" : "no") + ", search " + (found ? "yes" : "no"));
            else
                ++agree;
        }
    };
    run(same, true);
    run(different, false);
    if (o.pass) o.detail = std::to_string(agree) + " pairs agree (10 isomorphic, 10 not)";
    return o;
}

} // namespace

int main()
{
    std::vector<Criterion> criteria{
        {1, "table rows satisfy both axiom checkers", 1, table_verification},
        {2, "non-existence in degrees n = 3 - c", 10, nonexistence},
        {3, "one-dimensional solution spaces match the table", 10, solution_dimensions},
        {4, "obstruction polynomial identities", 5, obstruction_identities},
        {5, "scramble roundtrip classification", 300, roundtrip},
        {6, "lambda and n-th product checkers agree", 30, checker_agreement},
        {7, "automorphism descriptors and bounded search", 120, automorphisms},
        {8, "coboundary lemmas", 5, coboundary_lemmas},
        {9, "brute-force isomorphism oracle", 60, isomorphism_oracle},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.pass && elapsed > c.budget_seconds) o.fail("over the time budget");
        if (!o.pass) ++failures;
        std::printf("%s %d %s [exact; %.2f s of %.0f s] %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, elapsed, c.budget_seconds,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
