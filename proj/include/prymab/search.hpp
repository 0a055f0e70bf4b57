#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prymab/conditions.hpp"
#include "prymab/cover.hpp"

namespace prymab {

/// Canonical key of a Prym datum.  Two data get the same key exactly when
/// they differ by row operations preserving the row span, a relabeling of the
/// branch points, or an automorphism of the deck group applied to columns and
/// H at once.
///
/// The key is the pair of row spans in (Z/N)^s canonically associated to the
/// datum: the span R of the matrix rows (the characters of the deck group,
/// written out as their value vectors on the columns) and the sub-span of
/// characters trivial on H.  Both are invariant under row operations and
/// deck-group automorphisms, and H is recovered from the pair by duality, so
/// only the branch relabeling is left to normalize: the key stores the
/// minimum over admissible column orders of the two Howell forms.
struct CanonicalKey {
    long long modulus = 0;
    std::size_t cols = 0;
    std::vector<long long> blob; // serialized pair of Howell forms

    bool operator==(const CanonicalKey&) const = default;
    bool operator<(const CanonicalKey& o) const {
        return std::tie(modulus, cols, blob) < std::tie(o.modulus, o.cols, o.blob);
    }
};

namespace detail {

inline std::vector<long long> serialize_forms(const ModMatrix& a, const ModMatrix& b) {
    std::vector<long long> v;
    v.push_back(static_cast<long long>(a.rows));
    v.insert(v.end(), a.entries.begin(), a.entries.end());
    v.push_back(-1);
    v.push_back(static_cast<long long>(b.rows));
    v.insert(v.end(), b.entries.begin(), b.entries.end());
    return v;
}

inline ModMatrix permuted_columns(const ModMatrix& m, const std::vector<std::size_t>& order) {
    ModMatrix out(m.modulus, m.rows, m.cols);
    for (std::size_t j = 0; j < m.cols; ++j)
        for (std::size_t i = 0; i < m.rows; ++i) out.at(i, j) = m.at(i, order[j]);
    return out;
}

} // namespace detail

inline CanonicalKey canonical_key(const PrymDatum& p) {
    const CoverDatum& d = p.cover;
    const long long n = d.modulus;
    const std::size_t s = d.branch_count();

    // the characters, and the sub-span of those trivial on H, as value
    // vectors on the columns
    auto chars = detail::character_reps(d);
    std::vector<std::vector<long long>> all_alphas, h_trivial_alphas;
    for (auto& [rep, alpha] : chars) {
        all_alphas.push_back(alpha);
        bool trivial = true;
        for (const auto& h : p.subgroup.generators)
            if (pairing(rep, h, n) != 0) { trivial = false; break; }
        if (trivial) h_trivial_alphas.push_back(alpha);
    }

    ModMatrix span_gens = howell_form(ModMatrix::from_rows(n, [&] {
        std::vector<std::vector<long long>> rows;
        for (std::size_t i = 0; i < d.arity(); ++i) rows.push_back(d.monodromy.row(i));
        return rows;
    }()));
    ModMatrix quot_gens = howell_form(ModMatrix::from_rows(n, h_trivial_alphas));

    // column signature: the value multisets over both spans; only columns
    // with equal signatures may trade places in the canonical order
    struct ColInfo {
        std::vector<long long> sig;
        std::vector<long long> exact; // full value vector, identifies equal columns
        std::size_t index;
    };
    std::vector<ColInfo> cols(s);
    for (std::size_t j = 0; j < s; ++j) {
        ColInfo& c = cols[j];
        c.index = j;
        std::vector<long long> v1, v2;
        for (const auto& a : all_alphas) v1.push_back(a[j]);
        for (const auto& a : h_trivial_alphas) v2.push_back(a[j]);
        c.exact = v1;
        c.exact.push_back(-1);
        c.exact.insert(c.exact.end(), v2.begin(), v2.end());
        std::sort(v1.begin(), v1.end());
        std::sort(v2.begin(), v2.end());
        c.sig = std::move(v1);
        c.sig.push_back(-1);
        c.sig.insert(c.sig.end(), v2.begin(), v2.end());
    }
    std::stable_sort(cols.begin(), cols.end(), [](const ColInfo& a, const ColInfo& b) {
        return std::tie(a.sig, a.exact) < std::tie(b.sig, b.exact);
    });

    // group boundaries by signature
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    for (std::size_t i = 0; i < s;) {
        std::size_t j = i + 1;
        while (j < s && cols[j].sig == cols[i].sig) ++j;
        groups.emplace_back(i, j);
        i = j;
    }

    // enumerate distinct arrangements: within each group, permutations of the
    // column list modulo equal columns
    std::vector<std::size_t> order(s);
    CanonicalKey best;
    bool have_best = false;
    auto consider = [&] {
        for (std::size_t j = 0; j < s; ++j) order[j] = cols[j].index;
        ModMatrix h1 = howell_form(detail::permuted_columns(span_gens, order));
        ModMatrix h2 = howell_form(detail::permuted_columns(quot_gens, order));
        CanonicalKey k{n, s, detail::serialize_forms(h1, h2)};
        if (!have_best || k < best) { best = std::move(k); have_best = true; }
    };

    // odometer over per-group next_permutation; ColInfo order inside a group
    // is permuted by `exact` so duplicate columns collapse
    std::function<void(std::size_t)> rec = [&](std::size_t gi) {
        if (gi == groups.size()) { consider(); return; }
        auto [lo, hi] = groups[gi];
        std::sort(cols.begin() + lo, cols.begin() + hi,
                  [](const ColInfo& a, const ColInfo& b) { return a.exact < b.exact; });
        do {
            rec(gi + 1);
        } while (std::next_permutation(cols.begin() + lo, cols.begin() + hi,
                                       [](const ColInfo& a, const ColInfo& b) {
                                           return a.exact < b.exact;
                                       }));
    };
    rec(0);
    return best;
}

/// Search window: ranges for N, m and the branch count, plus report knobs.
struct SearchSpec {
    long long n_min = 2, n_max = 2;
    std::size_t m_min = 1, m_max = 1;
    std::size_t s_min = 4, s_max = 4;
    long long max_group = 256;
    std::optional<long long> h_order;
    std::optional<std::string> group_shape; // invariant-factor label, e.g. C2xC4
    int trials = 5;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

namespace detail {

inline long long group_exponent(const SubgroupSpan& g) {
    long long e = 1;
    for (const auto& el : g.elements) e = std::lcm(e, element_order(el, g.ambient.modulus));
    return e;
}

} // namespace detail

/// Enumerates one representative (datum, H) per canonical key: columns are
/// nonzero, sum to zero, and span a group of exponent exactly N (families
/// whose deck group lives at a smaller modulus are enumerated there instead);
/// H runs over the nontrivial subgroups.  Deterministic order.
template <typename Callback>
void enumerate_data(const SearchSpec& spec, Callback&& cb) {
    if (spec.s_min < 4)
        throw validation_error(validation_error::kind::parse,
                               "searches need s >= 4 (smaller families are rigid)");
    std::set<CanonicalKey> seen;
    for (long long n = spec.n_min; n <= spec.n_max; ++n) {
        for (std::size_t m = spec.m_min; m <= spec.m_max; ++m) {
            // all nonzero elements of (Z/N)^m in lex order
            std::vector<GroupElement> elems;
            GroupElement v(m, 0);
            while (true) {
                std::size_t i = m;
                while (i > 0 && ++v[i - 1] == n) { v[i - 1] = 0; --i; }
                if (i == 0) break;
                elems.push_back(v);
            }
            std::sort(elems.begin(), elems.end());

            for (std::size_t s = spec.s_min; s <= spec.s_max; ++s) {
                std::vector<std::size_t> pick(s - 1, 0);
                std::vector<GroupElement> cols(s);
                std::function<void(std::size_t, GroupElement)> rec = [&](std::size_t depth,
                                                                         GroupElement sum) {
                    if (depth == s - 1) {
                        GroupElement last = neg_mod(sum, n);
                        if (is_zero(last)) return;
                        if (last < elems[pick[depth - 1]]) return; // keep columns sorted
                        cols[depth] = last;
                        // candidate multiset assembled; now the group filters
                        SubgroupSpan g = span(cols, {n, m});
                        if (g.order() > spec.max_group) return;
                        if (detail::group_exponent(g) != n) return;
                        if (spec.group_shape && group_label(g) != *spec.group_shape) return;
                        ModMatrix a(n, m, s);
                        for (std::size_t j = 0; j < s; ++j)
                            for (std::size_t i2 = 0; i2 < m; ++i2) a.at(i2, j) = cols[j][i2];
                        CoverDatum datum = make_cover(n, a);
                        for (const auto& h : subgroups(datum.group)) {
                            if (h.order() == 1) continue;
                            if (spec.h_order && h.order() != *spec.h_order) continue;
                            PrymDatum p{datum, h};
                            CanonicalKey key = canonical_key(p);
                            if (seen.insert(key).second) cb(std::move(p), std::move(key));
                        }
                        return;
                    }
                    std::size_t start = depth == 0 ? 0 : pick[depth - 1];
                    for (std::size_t i = start; i < elems.size(); ++i) {
                        pick[depth] = i;
                        cols[depth] = elems[i];
                        rec(depth + 1, add_mod(sum, elems[i], n));
                    }
                };
                rec(0, GroupElement(m, 0));
            }
        }
    }
}

/// One classified family.
struct SearchRow {
    PrymDatum datum;
    CanonicalKey key;
    ConditionReport report;
    long long genus_top = 0, genus_mid = 0, dim = 0, ram = 0, br = 0;
    std::string group_name, h_name, quotient_name;
};

namespace detail {

inline SearchRow classify(PrymDatum p, CanonicalKey key, int trials, std::uint64_t seed,
                          const B2Catalog* catalog) {
    SearchRow row;
    row.report = full_report(p, trials, seed, catalog);
    row.genus_top = genus_total(p.cover);
    row.genus_mid = genus_quotient(p);
    row.dim = row.genus_top - row.genus_mid;
    auto rb = ram_branch_counts(p);
    row.ram = rb.ram;
    row.br = rb.br;
    row.group_name = group_label(p.cover.group);
    row.h_name = group_label(p.subgroup);
    row.quotient_name = group_label(invariant_factors(p.cover.group, &p.subgroup));
    row.key = std::move(key);
    row.datum = std::move(p);
    return row;
}

} // namespace detail

/// Runs the classification over the whole window.  Rows are sorted by
/// (s, genus, quotient genus, canonical key); output is a pure function of
/// the spec (and catalog), whatever the thread count.
inline std::vector<SearchRow> run_search(const SearchSpec& spec, const B2Catalog* catalog = nullptr) {
    std::vector<std::pair<PrymDatum, CanonicalKey>> found;
    enumerate_data(spec, [&](PrymDatum p, CanonicalKey k) {
        found.emplace_back(std::move(p), std::move(k));
    });

    std::vector<SearchRow> rows(found.size());
    unsigned threads = std::max(1u, spec.threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < found.size(); ++i)
            rows[i] = detail::classify(std::move(found[i].first), std::move(found[i].second),
                                       spec.trials, spec.seed, catalog);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= found.size()) break;
                rows[i] = detail::classify(std::move(found[i].first), std::move(found[i].second),
                                           spec.trials, spec.seed, catalog);
            }
        };
        std::vector<std::future<void>> futs;
        for (unsigned t = 0; t < threads; ++t)
            futs.push_back(std::async(std::launch::async, worker));
        for (auto& f : futs) f.get();
    }

    std::sort(rows.begin(), rows.end(), [](const SearchRow& a, const SearchRow& b) {
        return std::tie(a.datum.cover.monodromy.cols, a.genus_top, a.genus_mid, a.key) <
               std::tie(b.datum.cover.monodromy.cols, b.genus_top, b.genus_mid, b.key);
    });
    return rows;
}

} // namespace prymab
