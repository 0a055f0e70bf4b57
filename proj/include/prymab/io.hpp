#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "prymab/conditions.hpp"
#include "prymab/cover.hpp"
#include "prymab/search.hpp"

namespace prymab {

/// One parsed datum block of the text format
///   N=6; A=1,1,1,1,2; H=2
/// Rows of A are separated by ';', entries by ','; H lists generator vectors
/// separated by ';'.  Whitespace is ignored, entries are reduced mod N, '#'
/// starts a comment, and blank lines separate blocks.
struct DatumBlock {
    long long modulus = 0;
    std::vector<std::vector<long long>> matrix_rows;
    std::vector<GroupElement> h_generators;
    long line = 0; // first line of the block, for error messages
};

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline std::vector<long long> parse_int_list(const std::string& text, long line) {
    std::vector<long long> out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = strip(tok);
        if (tok.empty())
            throw validation_error(validation_error::kind::parse,
                                   "line " + std::to_string(line) + ": empty entry", line);
        try {
            std::size_t used = 0;
            long long v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw validation_error(validation_error::kind::parse,
                                   "line " + std::to_string(line) + ": bad integer '" + tok + "'",
                                   line);
        }
    }
    if (out.empty())
        throw validation_error(validation_error::kind::parse,
                               "line " + std::to_string(line) + ": empty list", line);
    return out;
}

} // namespace detail

/// Splits a file into datum blocks.  A block's statements may be separated by
/// ';' or newlines; the values of A and H may themselves contain ';' (row and
/// generator separators), so the text is segmented at the key markers.
inline std::vector<DatumBlock> parse_datum_blocks(const std::string& text) {
    using detail::strip;
    std::vector<std::pair<std::string, long>> blocks; // flattened text + first line
    {
        std::istringstream in(text);
        std::string line, cur;
        long line_no = 0, start = 0;
        auto flush = [&] {
            if (!strip(cur).empty()) blocks.emplace_back(cur, start);
            cur.clear();
            start = 0;
        };
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            if (strip(line).empty()) {
                flush();
                continue;
            }
            if (cur.empty()) start = line_no;
            cur += line + ";";
        }
        flush();
    }

    std::vector<DatumBlock> out;
    for (auto& [body, start_line] : blocks) {
        DatumBlock blk;
        blk.line = start_line;
        // segment at key markers "N=", "A=", "H="
        struct Seg {
            char key;
            std::string value;
        };
        std::vector<Seg> segs;
        for (std::size_t i = 0; i < body.size(); ++i) {
            char c = body[i];
            if ((c == 'N' || c == 'A' || c == 'H')) {
                std::size_t j = i + 1;
                while (j < body.size() && std::isspace(static_cast<unsigned char>(body[j]))) ++j;
                if (j < body.size() && body[j] == '=') {
                    segs.push_back(Seg{c, ""});
                    i = j;
                    continue;
                }
            }
            if (segs.empty()) {
                if (!std::isspace(static_cast<unsigned char>(c)) && c != ';')
                    throw validation_error(validation_error::kind::parse,
                                           "line " + std::to_string(start_line) +
                                               ": expected N=, A= or H=",
                                           start_line);
                continue;
            }
            segs.back().value += c;
        }

        bool saw_n = false, saw_a = false;
        for (auto& seg : segs) {
            // trim separators around the value
            std::string v = strip(seg.value);
            while (!v.empty() && v.back() == ';') v.pop_back();
            v = strip(v);
            if (seg.key == 'N') {
                blk.modulus = detail::parse_int_list(v, start_line).at(0);
                saw_n = true;
            } else {
                std::vector<std::vector<long long>> rows;
                std::istringstream rs(v);
                std::string row;
                while (std::getline(rs, row, ';')) {
                    row = strip(row);
                    if (row.empty()) continue;
                    rows.push_back(detail::parse_int_list(row, start_line));
                }
                if (seg.key == 'A') {
                    blk.matrix_rows = std::move(rows);
                    saw_a = true;
                } else {
                    for (auto& r : rows) blk.h_generators.push_back(std::move(r));
                }
            }
        }
        if (!saw_n || !saw_a)
            throw validation_error(validation_error::kind::parse,
                                   "line " + std::to_string(start_line) + ": block needs N= and A=",
                                   start_line);
        out.push_back(std::move(blk));
    }
    return out;
}

/// Builds the Prym datum of a parsed block (reduces entries mod N).
inline PrymDatum datum_from_block(const DatumBlock& blk) {
    if (blk.modulus < 2)
        throw validation_error(validation_error::kind::parse,
                               "line " + std::to_string(blk.line) + ": N must be >= 2", blk.line);
    ModMatrix a = ModMatrix::from_rows(blk.modulus, blk.matrix_rows);
    std::vector<GroupElement> h;
    for (const auto& g : blk.h_generators) {
        GroupElement e(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            e[i] = ((g[i] % blk.modulus) + blk.modulus) % blk.modulus;
        h.push_back(std::move(e));
    }
    return make_prym(make_cover(blk.modulus, a), h);
}

/// Search spec files: key=value lines with keys N, m, s (value `a` or
/// `a..b`), max_group, H_order, G, trials, seed.  '#' comments allowed.
inline SearchSpec parse_search_spec(const std::string& text) {
    using detail::strip;
    SearchSpec spec;
    bool saw_n = false, saw_m = false, saw_s = false;
    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    auto parse_range = [&](const std::string& v, long long& lo, long long& hi) {
        auto dots = v.find("..");
        try {
            if (dots == std::string::npos) {
                lo = hi = std::stoll(v);
            } else {
                lo = std::stoll(v.substr(0, dots));
                hi = std::stoll(v.substr(dots + 2));
            }
        } catch (const std::exception&) {
            throw validation_error(validation_error::kind::parse,
                                   "line " + std::to_string(line_no) + ": bad range '" + v + "'",
                                   line_no);
        }
        if (lo > hi)
            throw validation_error(validation_error::kind::parse,
                                   "line " + std::to_string(line_no) + ": empty range", line_no);
    };
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw validation_error(validation_error::kind::parse,
                                   "line " + std::to_string(line_no) + ": expected key=value",
                                   line_no);
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        long long lo, hi;
        if (key == "N") {
            parse_range(value, lo, hi);
            spec.n_min = lo;
            spec.n_max = hi;
            saw_n = true;
        } else if (key == "m") {
            parse_range(value, lo, hi);
            spec.m_min = static_cast<std::size_t>(lo);
            spec.m_max = static_cast<std::size_t>(hi);
            saw_m = true;
        } else if (key == "s") {
            parse_range(value, lo, hi);
            spec.s_min = static_cast<std::size_t>(lo);
            spec.s_max = static_cast<std::size_t>(hi);
            saw_s = true;
        } else if (key == "max_group") {
            parse_range(value, lo, hi);
            spec.max_group = hi;
        } else if (key == "H_order") {
            parse_range(value, lo, hi);
            spec.h_order = hi;
        } else if (key == "trials") {
            parse_range(value, lo, hi);
            spec.trials = static_cast<int>(hi);
        } else if (key == "seed") {
            parse_range(value, lo, hi);
            spec.seed = static_cast<std::uint64_t>(hi);
        } else if (key == "G") {
            spec.group_shape = value;
        } else {
            throw validation_error(validation_error::kind::parse,
                                   "line " + std::to_string(line_no) + ": unknown key '" + key + "'",
                                   line_no);
        }
    }
    if (!saw_n || !saw_m || !saw_s)
        throw validation_error(validation_error::kind::parse, "spec needs N=, m= and s=");
    if (spec.n_min < 2)
        throw validation_error(validation_error::kind::parse, "N must be >= 2");
    if (spec.m_min < 1)
        throw validation_error(validation_error::kind::parse, "m must be >= 1");
    return spec;
}

/// Catalog files: CSV with columns group_order, s, local_orders
/// (dash-separated), label.
inline B2Catalog parse_catalog(const std::string& text, std::vector<std::string>* errors) {
    B2Catalog cat;
    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = detail::strip(line);
        if (line.empty() || line[0] == '#') continue;
        if (line_no == 1 && line.find("group_order") == 0) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) f.push_back(detail::strip(field));
        if (f.size() != 4) {
            if (errors) errors->push_back("line " + std::to_string(line_no) + ": expected 4 fields");
            continue;
        }
        try {
            CatalogEntry e;
            e.group_order = std::stoll(f[0]);
            e.s = std::stoll(f[1]);
            std::istringstream os(f[2]);
            std::string tok;
            while (std::getline(os, tok, '-')) e.local_orders.push_back(std::stoll(tok));
            std::sort(e.local_orders.begin(), e.local_orders.end());
            e.label = f[3];
            cat.entries.push_back(std::move(e));
        } catch (const std::exception&) {
            if (errors) errors->push_back("line " + std::to_string(line_no) + ": malformed entry");
        }
    }
    return cat;
}

} // namespace prymab
