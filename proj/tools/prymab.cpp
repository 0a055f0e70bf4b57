// prymab: exact analysis and classification of Prym families of abelian
// covers of the projective line.
//
// Subcommands: analyze, verify, search, table.  Exit codes: 0 success,
// 1 internal invariant violation (or a contradicted table flag under
// --import), 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "prymab/prymab.hpp"

using nlohmann::json;
using namespace prymab;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error(validation_error::kind::parse, "cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string join(const std::vector<long long>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::string chi_str(const GroupElement& e) { return "(" + join(e) + ")"; }

std::string gens_str(const std::vector<GroupElement>& gens) {
    if (gens.empty()) return "<0>";
    std::string s = "<";
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) s += "; ";
        s += join(gens[i]);
    }
    return s + ">";
}

// Renders a quadratic differential in the display style
//   num(z) (dz)^2 / prod (z - z_j)^k
// The stored numerator sits over the product of all (z - z_j); it is divided
// down here so only the actual poles appear.
std::string quad_str(const QuadDifferential& q, const std::vector<Rat>& pts) {
    std::vector<Rat> num = q.poly_coeffs;
    for (std::size_t j = 0; j < q.pole_orders.size(); ++j) {
        if (q.pole_orders[j] != 0) continue;
        // synthetic division by (z - z_j); the factor divides exactly
        std::vector<Rat> quot(num.size() - 1, Rat(0));
        Rat carry = 0;
        for (std::size_t i = num.size(); i-- > 1;) {
            quot[i - 1] = num[i] + carry;
            carry = quot[i - 1] * pts[j];
        }
        if (num[0] + carry != 0) throw internal_error("display reduction left a remainder");
        num = std::move(quot);
    }

    std::ostringstream text;
    bool first = true;
    for (std::size_t i = num.size(); i-- > 0;) {
        Rat c = num[i];
        if (c == 0) continue;
        if (first) {
            if (c < 0) { text << "-"; c = -c; }
        } else {
            text << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        if (i == 0 || c != 1) text << c.str();
        if (i > 0) {
            if (c != 1) text << "*";
            text << "z";
            if (i > 1) text << "^" << i;
        }
    }
    if (first) text << "0";
    std::ostringstream out;
    out << "(" << text.str() << ") (dz)^2 /";
    for (std::size_t j = 0; j < q.pole_orders.size(); ++j) {
        if (q.pole_orders[j] == 0) continue;
        out << " (z - " << pts[j].str() << ")";
        if (q.pole_orders[j] > 1) out << "^" << q.pole_orders[j];
    }
    return out.str();
}

struct Analysis {
    PrymDatum datum;
    ConditionReport report;
    EigenspaceTable table;
    long long genus_top, genus_mid, dim, ram, br;
    std::vector<long long> polarization;
};

Analysis analyze_datum(const PrymDatum& p, int trials, std::uint64_t seed, const B2Catalog* cat) {
    Analysis a{p, full_report(p, trials, seed, cat), eigenspace_table(p), 0, 0, 0, 0, 0, {}};
    a.genus_top = genus_total(p.cover);
    a.genus_mid = genus_quotient(p);
    a.dim = a.genus_top - a.genus_mid;
    auto rb = ram_branch_counts(p);
    a.ram = rb.ram;
    a.br = rb.br;
    a.polarization = polarization_type(p);
    return a;
}

json analysis_to_json(const Analysis& a) {
    json j;
    j["N"] = a.datum.cover.modulus;
    json rows = json::array();
    for (std::size_t i = 0; i < a.datum.cover.arity(); ++i)
        rows.push_back(a.datum.cover.monodromy.row(i));
    j["A"] = rows;
    json hg = json::array();
    for (const auto& g : a.datum.subgroup.generators) hg.push_back(g);
    j["H_generators"] = hg;
    j["deck_group"] = group_label(a.datum.cover.group);
    j["H"] = group_label(a.datum.subgroup);
    j["quotient_group"] = group_label(invariant_factors(a.datum.cover.group, &a.datum.subgroup));
    j["genus_total"] = a.genus_top;
    j["genus_intermediate"] = a.genus_mid;
    j["prym_dimension"] = a.dim;
    j["ram_points"] = a.ram;
    j["branch_points"] = a.br;
    j["polarization"] = a.polarization;
    json chars = json::array();
    for (const auto& e : a.table.entries)
        chars.push_back(json{{"chi", e.rep}, {"dim", e.dim}, {"anti", e.anti}});
    j["eigenspaces"] = chars;
    j["dim_P"] = a.report.dim_pg;
    j["s_minus_3"] = a.report.s_minus_3;
    j["A_holds"] = a.report.cond_a;
    j["B1_holds"] = a.report.cond_b1;
    if (a.report.b1_self_paired_rule) j["B1_self_paired_rule"] = true;
    j["B"] = a.report.b.established
                 ? json{{"established", true},
                        {"via_B1", a.report.b.via_b1},
                        {"witness", a.report.b.witness}}
                 : json{{"established", false}};
    if (a.report.b2.established) {
        json kg = json::array();
        for (const auto& g : a.report.b2.k_generators) kg.push_back(g);
        j["B2"] = json{{"established", true},
                       {"K_generators", kg},
                       {"K_order", a.report.b2.k_order},
                       {"route", a.report.b2.route}};
    } else {
        j["B2"] = json{{"established", false}};
    }
    json summands = json::array();
    for (const auto& s : a.report.summands)
        summands.push_back(json{{"chi", s.chi_a},
                                {"minus_chi", s.chi_b},
                                {"self_paired", s.self_paired},
                                {"dims", {s.dim_a, s.dim_b}},
                                {"dim", s.dim}});
    j["summands"] = summands;
    return j;
}

void print_analysis(std::ostream& out, const Analysis& a) {
    const auto& p = a.datum;
    out << "datum: N=" << p.cover.modulus << ", A=";
    for (std::size_t i = 0; i < p.cover.arity(); ++i) {
        if (i) out << ";";
        out << join(p.cover.monodromy.row(i));
    }
    out << ", H=" << gens_str(p.subgroup.generators) << "\n";
    out << "deck group " << group_label(p.cover.group) << ", H " << group_label(p.subgroup)
        << ", quotient group " << group_label(invariant_factors(p.cover.group, &p.subgroup))
        << ", s=" << p.cover.branch_count() << "\n";
    out << "genus: total " << a.genus_top << ", intermediate " << a.genus_mid
        << ", prym dimension " << a.dim << "\n";
    out << "intermediate cover: " << a.ram << " ramification points over " << a.br
        << " branch points\n";
    out << "polarization type: (" << join(a.polarization) << ")\n";
    out << "eigenspaces:\n";
    for (const auto& e : a.table.entries)
        out << "  chi=" << chi_str(e.rep) << "  dim " << e.dim << (e.anti ? "  anti" : "") << "\n";
    out << "invariant Sym^2 summands:\n";
    for (const auto& s : a.report.summands) {
        if (s.self_paired)
            out << "  Sym^2 V_" << chi_str(s.chi_a) << ": dim " << s.dim << "\n";
        else
            out << "  V_" << chi_str(s.chi_a) << " x V_" << chi_str(s.chi_b) << ": " << s.dim_a
                << " x " << s.dim_b << " -> " << s.dim << "\n";
    }
    out << "dim P = " << a.report.dim_pg << ", s-3 = " << a.report.s_minus_3 << "\n";
    out << "condition A:  " << (a.report.cond_a ? "holds" : "fails") << "\n";
    out << "condition B1: " << (a.report.cond_b1 ? "holds" : "not established");
    if (a.report.b1_self_paired_rule) out << "  [one-dimensional self-paired reading]";
    out << "\n";
    out << "condition B:  ";
    if (a.report.b.established) {
        out << "established";
        if (a.report.b.via_b1)
            out << " (implied by B1)";
        else
            out << " at branch points (" << join(a.report.b.witness) << ")";
    } else {
        out << "not established";
    }
    out << "\n";
    out << "condition B2: ";
    if (a.report.b2.established)
        out << "established with K=" << gens_str(a.report.b2.k_generators) << " of order "
            << a.report.b2.k_order << " [" << a.report.b2.route << "]";
    else
        out << "not established";
    out << "\n";
}

// ---------------------------------------------------------------- verify

struct GoldenExample {
    std::string name;
    std::string datum_text;
    long long g_tilde, g, p, ram, br, dim_pg;
    bool a_holds, b1_holds, b_established;
    std::map<GroupElement, long long> anti_dims; // expected anti character dims
};

std::vector<GoldenExample> golden_examples() {
    return {
        {"cyclic6-genus3", "N=6; A=1,3,4,4; H=2", 3, 0, 3, 5, 5, 1, true, true, true,
         {{{1}, 1}, {{2}, 1}, {{4}, 0}, {{5}, 1}}},
        {"z3xz3-genus4", "N=3; A=1,1,1,0;0,0,2,1; H=0,1", 4, 1, 3, 3, 3, 1, true, true, true,
         {{{1, 1}, 1}, {{1, 2}, 1}, {{2, 1}, 1}}},
        {"cyclic6-genus7", "N=6; A=1,1,1,1,2; H=2", 7, 1, 6, 6, 6, 2, true, true, true,
         {{{1}, 3}, {{2}, 2}, {{4}, 1}, {{5}, 0}}},
        {"z3xz3-genus7", "N=3; A=1,0,1,2,2;0,2,2,0,2; H=0,1", 7, 2, 5, 3, 3, 2, true, false, true,
         {{{0, 2}, 1}, {{1, 1}, 1}, {{2, 1}, 1}, {{1, 2}, 1}, {{2, 2}, 1}}},
        {"z2cube-genus5", "N=2; A=0,0,1,1,0,0;0,1,1,1,0,1;1,1,1,1,1,1; H=1,0,0;0,1,0", 5, 2, 3,
         0, 0, 3, true, false, true,
         {{{0, 1, 0}, 1}, {{1, 0, 1}, 1}, {{1, 1, 1}, 1}}},
    };
}

int cmd_verify(bool as_json, const std::string& perturb) {
    json results = json::array();
    int failures = 0;
    for (auto ex : golden_examples()) {
        if (ex.name == perturb) ex.g_tilde += 1; // deliberate mismatch, for testing the harness
        std::vector<std::string> diffs;
        std::vector<std::string> notes;
        try {
            auto blocks = parse_datum_blocks(ex.datum_text);
            auto p = datum_from_block(blocks.at(0));
            auto a = analyze_datum(p, 5, 1, nullptr);
            auto expect = [&](const std::string& what, long long got, long long want) {
                if (got != want)
                    diffs.push_back(what + ": got " + std::to_string(got) + ", expected " +
                                    std::to_string(want));
            };
            expect("genus_total", a.genus_top, ex.g_tilde);
            expect("genus_intermediate", a.genus_mid, ex.g);
            expect("prym_dimension", a.dim, ex.p);
            expect("ram", a.ram, ex.ram);
            expect("br", a.br, ex.br);
            expect("dim_P", a.report.dim_pg, ex.dim_pg);
            expect("A", a.report.cond_a, ex.a_holds);
            expect("B1", a.report.cond_b1, ex.b1_holds);
            expect("B", a.report.b.established, ex.b_established);
            for (const auto& [chi, want] : ex.anti_dims) {
                bool found = false;
                for (const auto& e : a.table.entries)
                    if (e.rep == chi) {
                        found = true;
                        if (!e.anti) diffs.push_back("chi " + chi_str(chi) + " not anti-invariant");
                        expect("dim of chi " + chi_str(chi), e.dim, want);
                    }
                if (!found) diffs.push_back("character " + chi_str(chi) + " missing");
            }

            // the two multiplication images of the genus 7 cyclic family are
            // 1/prod(z-z_j) and z/prod(z-z_j) times (dz)^2
            if (ex.name == "cyclic6-genus7") {
                auto basis = sym2_invariant_basis(p);
                std::vector<Rat> pts;
                for (long long i = 0; i < 5; ++i) pts.push_back(Rat(i));
                auto q1 = multiply(p.cover, basis.pairs.at(0), pts);
                auto q2 = multiply(p.cover, basis.pairs.at(1), pts);
                notes.push_back("m(pair 1) = " + quad_str(q1, pts));
                notes.push_back("m(pair 2) = " + quad_str(q2, pts));
                if (q1.poly_coeffs != std::vector<Rat>{Rat(1)})
                    diffs.push_back("m(alpha_1 . beta) is not (dz)^2/prod(z-z_j)");
                if (q1.pole_orders != std::vector<int>(5, 1))
                    diffs.push_back("m(alpha_1 . beta) has wrong poles");
                if (q2.poly_coeffs != std::vector<Rat>{Rat(0), Rat(1)})
                    diffs.push_back("m(alpha_2 . beta) is not z (dz)^2/prod(z-z_j)");
            }
            // the three squared forms of the six-point family stay independent
            if (ex.name == "z2cube-genus5") {
                auto basis = sym2_invariant_basis(p);
                std::vector<Rat> pts;
                for (long long i = 0; i < 6; ++i) pts.push_back(Rat(i));
                for (std::size_t k = 0; k < basis.pairs.size(); ++k)
                    notes.push_back("m(pair " + std::to_string(k + 1) + ") = " +
                                    quad_str(multiply(p.cover, basis.pairs[k], pts), pts));
                if (multiplication_rank(p.cover, basis.pairs, pts) != 3)
                    diffs.push_back("squared forms are not independent");
            }
        } catch (const std::exception& e) {
            diffs.push_back(std::string("exception: ") + e.what());
        }

        bool pass = diffs.empty();
        failures += !pass;
        if (as_json) {
            results.push_back(json{
                {"example", ex.name}, {"pass", pass}, {"diffs", diffs}, {"images", notes}});
        } else {
            std::cout << (pass ? "PASS" : "FAIL") << "  " << ex.name << "\n";
            for (const auto& n : notes) std::cout << "      " << n << "\n";
            for (const auto& d : diffs) std::cout << "      " << d << "\n";
        }
    }
    if (as_json) {
        std::cout << json{{"examples", results}, {"failures", failures}}.dump(2) << "\n";
    } else {
        std::cout << (5 - failures) << "/5 examples verified\n";
    }
    return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- table/search

std::vector<TableRow> computed_rows(const SearchSpec& spec, const B2Catalog* cat) {
    std::vector<TableRow> rows;
    for (const auto& r : run_search(spec, cat)) rows.push_back(to_table_row(r));
    return rows;
}

void flag_footnote() {
    std::cerr << "note: B1/B2/B read Y = established, Y* = established through the "
                 "one-dimensional self-paired reading of B1, - = not established "
                 "(one-sided: never a disproof)\n";
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw validation_error(validation_error::kind::parse, "cannot write file: " + path);
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact classification of Prym families of abelian covers of the line"};
    app.require_subcommand(1);

    std::string datum_file, spec_file, import_file, catalog_file, out_file, json_file;
    std::string perturb;
    int trials = 5;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool as_json = false;

    auto* analyze = app.add_subcommand("analyze", "analyze the data in a datum file");
    analyze->add_option("file", datum_file, "datum file")->required();
    analyze->add_flag("--json", as_json, "machine-readable output");
    analyze->add_option("--trials", trials, "branch tuples tried for condition B");
    analyze->add_option("--seed", seed, "seed for the tuple stream");
    analyze->add_option("--catalog", catalog_file, "catalog of known special quotient families");

    auto* verify = app.add_subcommand("verify", "recompute the built-in worked examples");
    verify->add_flag("--json", as_json, "machine-readable output");
    verify->add_option("--perturb-example", perturb, "perturb one expected value (test hook)")
        ->group("");

    auto* search = app.add_subcommand("search", "classify all families in a search window");
    search->add_option("spec", spec_file, "search spec file")->required();
    search->add_option("--out", out_file, "write CSV here instead of stdout");
    search->add_option("--json", json_file, "also write rows as JSON");
    search->add_option("--trials", trials, "branch tuples tried for condition B");
    search->add_option("--seed", seed, "seed for the tuple stream");
    search->add_option("--threads", threads, "worker threads");
    search->add_option("--catalog", catalog_file, "catalog of known special quotient families");

    auto* table = app.add_subcommand("table", "emit the classification table, optionally compared "
                                              "against an imported one");
    table->add_option("spec", spec_file, "search spec file")->required();
    table->add_option("--import", import_file, "imported rows to compare against");
    table->add_option("--out", out_file, "write CSV here instead of stdout");
    table->add_option("--json", json_file, "also write rows and the comparison as JSON");
    table->add_option("--trials", trials, "branch tuples tried for condition B");
    table->add_option("--seed", seed, "seed for the tuple stream");
    table->add_option("--threads", threads, "worker threads");
    table->add_option("--catalog", catalog_file, "catalog of known special quotient families");

    CLI11_PARSE(app, argc, argv);

    try {
        B2Catalog catalog;
        bool have_catalog = false;
        if (!catalog_file.empty()) {
            std::vector<std::string> errors;
            catalog = parse_catalog(read_file(catalog_file), &errors);
            for (const auto& e : errors) std::cerr << "catalog: " << e << "\n";
            have_catalog = true;
        }

        if (app.got_subcommand(analyze)) {
            auto blocks = parse_datum_blocks(read_file(datum_file));
            if (blocks.empty())
                throw validation_error(validation_error::kind::parse, "no datum blocks in file");
            json out = json::array();
            for (const auto& blk : blocks) {
                PrymDatum p;
                try {
                    p = datum_from_block(blk);
                } catch (validation_error& e) {
                    throw validation_error(e.what_kind,
                                           "block at line " + std::to_string(blk.line) + ": " +
                                               e.what(),
                                           blk.line);
                }
                auto a = analyze_datum(p, trials, seed, have_catalog ? &catalog : nullptr);
                if (as_json)
                    out.push_back(analysis_to_json(a));
                else {
                    print_analysis(std::cout, a);
                    std::cout << "\n";
                }
            }
            if (as_json) std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (app.got_subcommand(verify)) return cmd_verify(as_json, perturb);

        if (app.got_subcommand(search)) {
            SearchSpec spec = parse_search_spec(read_file(spec_file));
            spec.trials = trials;
            spec.seed = seed;
            spec.threads = threads;
            auto rows = computed_rows(spec, have_catalog ? &catalog : nullptr);
            write_out(out_file, csv_serialize(rows));
            if (!json_file.empty()) write_out(json_file, rows_to_json(rows).dump(2) + "\n");
            flag_footnote();
            return 0;
        }

        if (app.got_subcommand(table)) {
            SearchSpec spec = parse_search_spec(read_file(spec_file));
            spec.trials = trials;
            spec.seed = seed;
            spec.threads = threads;
            auto rows = computed_rows(spec, have_catalog ? &catalog : nullptr);

            if (import_file.empty()) {
                write_out(out_file, csv_serialize(rows));
                if (!json_file.empty()) write_out(json_file, rows_to_json(rows).dump(2) + "\n");
                flag_footnote();
                return 0;
            }

            std::vector<std::string> errors;
            auto imported = csv_parse(read_file(import_file), &errors);
            for (auto& t : imported) t.provenance = "imported";
            for (const auto& e : errors) std::cerr << "import: " << e << "\n";

            auto cmp = compare_tables(rows, imported);
            auto merged = rows;
            for (const auto& t : cmp.passthrough) merged.push_back(t);
            write_out(out_file, csv_serialize(merged));

            std::ostringstream rep;
            rep << "imported rows: " << imported.size() << " (" << cmp.passthrough.size()
                << " non-abelian, carried through unrecomputed)\n";
            rep << "matched by invariant tuple and flags: " << cmp.matched.size() << "\n";
            if (!cmp.unmatched_imported.empty()) {
                rep << "imported rows without a covering computed row:\n";
                for (const auto& t : cmp.unmatched_imported)
                    rep << "  " << t.r << "," << t.g_tilde << "," << t.g << "," << t.p << ","
                        << t.group << "," << t.h << "," << t.ram << "," << t.br << "," << t.quotient
                        << " [" << t.b1 << t.b2 << t.b << "]\n";
            }
            rep << "computed rows not in the import: " << cmp.unmatched_computed.size() << "\n";
            if (!cmp.b1_conflicts.empty()) {
                rep << "B1 CONFLICTS (imported B1 established, never computed):\n";
                for (const auto& t : cmp.b1_conflicts)
                    rep << "  " << t.r << "," << t.g_tilde << "," << t.g << "," << t.p << ","
                        << t.group << "," << t.h << "\n";
            }
            std::cerr << rep.str();
            flag_footnote();
            if (!json_file.empty()) {
                json j;
                j["rows"] = rows_to_json(merged);
                j["comparison"] = json{{"matched", cmp.matched.size()},
                                       {"unmatched_imported", rows_to_json(cmp.unmatched_imported)},
                                       {"unmatched_computed", rows_to_json(cmp.unmatched_computed)},
                                       {"passthrough", rows_to_json(cmp.passthrough)},
                                       {"b1_conflicts", rows_to_json(cmp.b1_conflicts)}};
                write_out(json_file, j.dump(2) + "\n");
            }
            return cmp.b1_conflicts.empty() ? 0 : 1;
        }
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
