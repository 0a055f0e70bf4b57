#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prymab/cover.hpp"
#include "prymab/forms.hpp"

namespace prymab {

/// One summand V_chi (x) V_{-chi} of the invariant part of Sym^2 of the
/// anti-invariant forms; self-paired when 2 chi = 0.
struct SummandInfo {
    GroupElement chi_a, chi_b;
    bool self_paired = false;
    long long dim_a = 0, dim_b = 0;
    long long dim = 0; // contribution: dim_a * dim_b, or dim_a (dim_a + 1)/2 when self-paired

    bool operator==(const SummandInfo&) const = default;
};

/// Profile of all anti-invariant summands, one per unordered pair
/// {chi, -chi}, zero summands included.  Deterministic order.
inline std::vector<SummandInfo> summand_profile(const CoverDatum& d, const EigenspaceTable& t) {
    std::vector<SummandInfo> out;
    for (const auto& entry : t.entries) {
        if (!entry.anti) continue;
        std::vector<long long> neg_alpha(entry.alpha.size());
        for (std::size_t j = 0; j < entry.alpha.size(); ++j)
            neg_alpha[j] = (d.modulus - entry.alpha[j]) % d.modulus;
        const CharacterInfo& partner = t.at_alpha(neg_alpha);
        SummandInfo s;
        if (partner.alpha == entry.alpha) {
            s = SummandInfo{entry.rep, entry.rep, true, entry.dim, entry.dim,
                            entry.dim * (entry.dim + 1) / 2};
        } else if (entry.rep < partner.rep) {
            s = SummandInfo{entry.rep, partner.rep, false, entry.dim, partner.dim,
                            entry.dim * partner.dim};
        } else {
            continue;
        }
        out.push_back(std::move(s));
    }
    return out;
}

/// dim P = sum over anti-invariant pairs of d_chi d_{-chi}, counting each
/// unordered pair once and the self-paired ones as d(d+1)/2.
inline long long dim_pg(const PrymDatum& p) {
    EigenspaceTable t = eigenspace_table(p);
    long long total = 0;
    for (const auto& s : summand_profile(p.cover, t)) total += s.dim;
    return total;
}

/// Condition (A): dim P equals the moduli dimension s - 3 of the family.
inline bool cond_a(const PrymDatum& p) {
    return dim_pg(p) == static_cast<long long>(p.cover.branch_count()) - 3;
}

namespace detail {

struct B1Verdict {
    bool holds = false;
    bool self_paired_rule = false; // the 1-dimensional self-paired reading fired
};

inline B1Verdict cond_b1_on(const std::vector<SummandInfo>& profile, long long s_minus_3) {
    const SummandInfo* nonzero = nullptr;
    for (const auto& s : profile) {
        if (s.dim == 0) continue;
        if (nonzero) return {};
        nonzero = &s;
    }
    if (!nonzero) return {};
    if (!nonzero->self_paired) {
        long long lo = std::min(nonzero->dim_a, nonzero->dim_b);
        long long hi = std::max(nonzero->dim_a, nonzero->dim_b);
        if (lo == 1 && hi == s_minus_3) return {true, false};
        return {};
    }
    // a single 1-dimensional self-paired summand factors trivially
    if (nonzero->dim_a == 1 && s_minus_3 == 1) return {true, true};
    return {};
}

} // namespace detail

/// Condition (B1): the invariant Sym^2 space is a single tensor summand of
/// shape (1) x (s-3).
inline bool cond_b1(const PrymDatum& p) {
    EigenspaceTable t = eigenspace_table(p);
    return detail::cond_b1_on(summand_profile(p.cover, t),
                              static_cast<long long>(p.cover.branch_count()) - 3)
        .holds;
}

/// One-sided status for condition (B): established with a witness, or not
/// established (never "false" -- a non-witness is inconclusive).
struct BStatus {
    bool established = false;
    bool via_b1 = false;                // implied by (B1), synthetic witness
    std::vector<long long> witness;     // branch tuple when found directly
};

inline BStatus cond_b(const PrymDatum& p, int trials, std::uint64_t seed) {
    EigenspaceTable t = eigenspace_table(p);
    auto profile = summand_profile(p.cover, t);
    long long s3 = static_cast<long long>(p.cover.branch_count()) - 3;
    long long dim = 0;
    for (const auto& s : profile) dim += s.dim;

    if (detail::cond_b1_on(profile, s3).holds) return BStatus{true, true, {}};
    if (dim != s3) return {};
    auto pairs = invariant_sym_pairs(p.cover, t,
                                     [](const CharacterInfo& c) { return c.anti; });
    auto outcome = injectivity_check_on(p.cover, pairs, trials, seed);
    if (outcome.injective) return BStatus{true, false, outcome.witness};
    return {};
}

/// Catalog of quotient families known to move in special Jacobian families:
/// rows (group order, branch count, sorted local orders, label).
struct CatalogEntry {
    long long group_order = 0;
    long long s = 0;
    std::vector<long long> local_orders; // ascending
    std::string label;
};

struct B2Catalog {
    std::vector<CatalogEntry> entries;

    std::optional<std::string> find(long long group_order, long long s,
                                    std::vector<long long> local_orders) const {
        std::sort(local_orders.begin(), local_orders.end());
        for (const auto& e : entries)
            if (e.group_order == group_order && e.s == s && e.local_orders == local_orders)
                return e.label;
        return std::nullopt;
    }
};

/// One-sided status for the sufficient form of condition (B2): the Prym
/// family splits off the moving Jacobian of the quotient curve C~/K.
struct B2Status {
    bool established = false;
    std::vector<GroupElement> k_generators;
    long long k_order = 0;
    std::string route; // "quotient-family" or "catalog:<label>"
};

/// Searches subgroups K of the deck group in sorted order and certifies the
/// first one for which
///   (i)   every nonzero summand involves only characters trivial on K,
///   (ii)  the quotient family has invariant Sym^2 dimension s - 3 over the
///         characters trivial on K with an injective multiplication map
///         (or the quotient family appears in the catalog), and
///   (iii) the quotient cover is branched at all s points.
inline B2Status cond_b2_lite(const PrymDatum& p, int trials, std::uint64_t seed,
                             const B2Catalog* catalog = nullptr) {
    EigenspaceTable t = eigenspace_table(p);
    auto profile = summand_profile(p.cover, t);
    long long s3 = static_cast<long long>(p.cover.branch_count()) - 3;
    const long long n = p.cover.modulus;

    for (const auto& k : subgroups(p.cover.group)) {
        bool branched_everywhere = true;
        for (const auto& col : p.cover.columns)
            if (k.contains(col)) { branched_everywhere = false; break; }
        if (!branched_everywhere) continue;

        auto trivial_on_k = [&](const GroupElement& chi) {
            for (const auto& e : k.generators)
                if (pairing(chi, e, n) != 0) return false;
            return true;
        };
        bool moving_part_descends = true;
        for (const auto& s : profile) {
            if (s.dim == 0) continue;
            if (!trivial_on_k(s.chi_a) || !trivial_on_k(s.chi_b)) {
                moving_part_descends = false;
                break;
            }
        }
        if (!moving_part_descends) continue;

        std::string route;
        if (catalog) {
            std::vector<long long> orders;
            for (const auto& col : p.cover.columns)
                orders.push_back(order_in_quotient(col, k, n));
            if (auto label = catalog->find(p.cover.group.order() / k.order(),
                                           static_cast<long long>(p.cover.branch_count()),
                                           orders))
                route = "catalog:" + *label;
        }
        if (route.empty()) {
            // the pair count is exactly the invariant Sym^2 dimension of the
            // quotient family
            auto pairs = invariant_sym_pairs(
                p.cover, t, [&](const CharacterInfo& c) {
                    return !is_zero(c.alpha) && trivial_on_k(c.rep);
                });
            if (static_cast<long long>(pairs.size()) != s3) continue;
            auto outcome = injectivity_check_on(p.cover, pairs, trials, seed);
            if (!outcome.injective) continue;
            route = "quotient-family";
        }
        return B2Status{true, k.generators, k.order(), route};
    }
    return {};
}

/// Full decision record for one Prym datum.
struct ConditionReport {
    long long dim_pg = 0;
    long long s_minus_3 = 0;
    bool cond_a = false;
    bool cond_b1 = false;
    bool b1_self_paired_rule = false;
    BStatus b;
    B2Status b2;
    std::vector<SummandInfo> summands;
};

inline ConditionReport full_report(const PrymDatum& p, int trials, std::uint64_t seed,
                                   const B2Catalog* catalog = nullptr) {
    ConditionReport r;
    EigenspaceTable t = eigenspace_table(p);
    r.summands = summand_profile(p.cover, t);
    r.s_minus_3 = static_cast<long long>(p.cover.branch_count()) - 3;
    for (const auto& s : r.summands) r.dim_pg += s.dim;
    r.cond_a = r.dim_pg == r.s_minus_3;
    auto b1 = detail::cond_b1_on(r.summands, r.s_minus_3);
    r.cond_b1 = b1.holds;
    r.b1_self_paired_rule = b1.self_paired_rule;
    r.b = cond_b(p, trials, seed);
    r.b2 = cond_b2_lite(p, trials, seed, catalog);
    return r;
}

} // namespace prymab
