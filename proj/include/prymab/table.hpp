#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "prymab/search.hpp"

namespace prymab {

/// One row of the classification table.  Flags are "Y" (established), "Y*"
/// (established through the one-dimensional self-paired reading of (B1)) or
/// "-" (not established; never a disproof).
struct TableRow {
    long long r = 0;        // number of branch points
    long long g_tilde = 0;  // genus of the total curve
    long long g = 0;        // genus of the intermediate curve
    long long p = 0;        // Prym dimension
    std::string group;      // deck group label
    std::string h;          // H label
    long long ram = 0;
    long long br = 0;
    std::string quotient;   // G/H label
    std::string b1, b2, b;
    std::string provenance; // computed | imported

    bool operator==(const TableRow&) const = default;
};

inline TableRow to_table_row(const SearchRow& row) {
    TableRow t;
    t.r = static_cast<long long>(row.datum.cover.branch_count());
    t.g_tilde = row.genus_top;
    t.g = row.genus_mid;
    t.p = row.dim;
    t.group = row.group_name;
    t.h = row.h_name;
    t.ram = row.ram;
    t.br = row.br;
    t.quotient = row.quotient_name;
    t.b1 = row.report.cond_b1 ? (row.report.b1_self_paired_rule ? "Y*" : "Y") : "-";
    t.b2 = row.report.b2.established ? "Y" : "-";
    t.b = row.report.b.established ? "Y" : "-";
    t.provenance = "computed";
    return t;
}

inline const char* csv_header() { return "r,gtilde,g,p,Gtilde,H,ram,br,G,B1,B2,B,provenance"; }

inline std::string csv_serialize(const std::vector<TableRow>& rows) {
    std::ostringstream out;
    out << csv_header() << "\n";
    for (const auto& t : rows)
        out << t.r << ',' << t.g_tilde << ',' << t.g << ',' << t.p << ',' << t.group << ','
            << t.h << ',' << t.ram << ',' << t.br << ',' << t.quotient << ',' << t.b1 << ','
            << t.b2 << ',' << t.b << ',' << t.provenance << "\n";
    return out.str();
}

/// Parses rows in the emitted schema.  Malformed rows are reported through
/// `errors` (1-based line numbers) and skipped; rows violating p = g~ - g are
/// flagged inconsistent and skipped too.
inline std::vector<TableRow> csv_parse(const std::string& text, std::vector<std::string>* errors) {
    std::vector<TableRow> rows;
    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            saw_header = true;
            if (line == csv_header()) continue;
            // fall through: header is optional
        }
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (f.size() != 13) {
            if (errors) errors->push_back("line " + std::to_string(line_no) + ": expected 13 fields, got " +
                                          std::to_string(f.size()));
            continue;
        }
        try {
            TableRow t;
            t.r = std::stoll(f[0]);
            t.g_tilde = std::stoll(f[1]);
            t.g = std::stoll(f[2]);
            t.p = std::stoll(f[3]);
            t.group = f[4];
            t.h = f[5];
            t.ram = std::stoll(f[6]);
            t.br = std::stoll(f[7]);
            t.quotient = f[8];
            t.b1 = f[9];
            t.b2 = f[10];
            t.b = f[11];
            t.provenance = f[12];
            if (t.p != t.g_tilde - t.g) {
                if (errors)
                    errors->push_back("line " + std::to_string(line_no) +
                                      ": inconsistent row, p != gtilde - g; skipped");
                continue;
            }
            rows.push_back(std::move(t));
        } catch (const std::exception&) {
            if (errors) errors->push_back("line " + std::to_string(line_no) + ": malformed numeric field");
        }
    }
    return rows;
}

inline nlohmann::json to_json(const TableRow& t) {
    return nlohmann::json{{"r", t.r},       {"gtilde", t.g_tilde}, {"g", t.g},
                          {"p", t.p},       {"Gtilde", t.group},   {"H", t.h},
                          {"ram", t.ram},   {"br", t.br},          {"G", t.quotient},
                          {"B1", t.b1},     {"B2", t.b2},          {"B", t.b},
                          {"provenance", t.provenance}};
}

inline nlohmann::json rows_to_json(const std::vector<TableRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : rows) arr.push_back(to_json(t));
    return arr;
}

/// Invariant tuple used to match computed rows against imported ones:
/// (r, g~, g, p, |Gtilde|, |H|, ram, br, |G|).  Group orders come from the
/// labels; non-abelian labels have no parseable order.
inline std::optional<std::vector<long long>> invariant_tuple(const TableRow& t) {
    long long og = label_order(t.group), oh = label_order(t.h), oq = label_order(t.quotient);
    if (og < 0 || oh < 0 || oq < 0) return std::nullopt;
    return std::vector<long long>{t.r, t.g_tilde, t.g, t.p, og, oh, t.ram, t.br, oq};
}

inline bool flag_established(const std::string& f) { return f == "Y" || f == "Y*"; }

/// Does the computed row establish at least everything the imported row has?
inline bool flags_cover(const TableRow& computed, const TableRow& imported) {
    auto ge = [](const std::string& a, const std::string& b) {
        return !flag_established(b) || flag_established(a);
    };
    return ge(computed.b1, imported.b1) && ge(computed.b2, imported.b2) && ge(computed.b, imported.b);
}

struct CompareOutcome {
    std::vector<std::pair<TableRow, TableRow>> matched; // (imported, covering computed row)
    std::vector<TableRow> unmatched_imported;           // no computed row covers them
    std::vector<TableRow> unmatched_computed;           // found, but absent from the import
    std::vector<TableRow> passthrough;                  // non-abelian imported rows, not compared
    std::vector<TableRow> b1_conflicts;                 // imported B1 established, ours never is
};

inline CompareOutcome compare_tables(const std::vector<TableRow>& computed,
                                     const std::vector<TableRow>& imported) {
    CompareOutcome out;
    std::vector<bool> used(computed.size(), false);
    for (const auto& imp : imported) {
        auto key = invariant_tuple(imp);
        if (!key) {
            out.passthrough.push_back(imp);
            continue;
        }
        bool b1_hit = false;
        const TableRow* cover = nullptr;
        for (std::size_t i = 0; i < computed.size(); ++i) {
            if (invariant_tuple(computed[i]) != key) continue;
            if (flag_established(computed[i].b1)) b1_hit = true;
            if (!cover && flags_cover(computed[i], imp)) {
                cover = &computed[i];
                used[i] = true;
            }
        }
        if (cover)
            out.matched.emplace_back(imp, *cover);
        else
            out.unmatched_imported.push_back(imp);
        if (flag_established(imp.b1) && !b1_hit) out.b1_conflicts.push_back(imp);
    }
    for (std::size_t i = 0; i < computed.size(); ++i)
        if (!used[i]) out.unmatched_computed.push_back(computed[i]);
    return out;
}

} // namespace prymab
