#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "prymab/errors.hpp"
#include "prymab/group.hpp"
#include "prymab/modmatrix.hpp"
#include "prymab/rational.hpp"

namespace prymab {

/// An abelian cover of the line, given by its monodromy matrix A over Z/N.
/// Column j is the local monodromy at the j-th branch point; columns sum to
/// zero, so the cover is unramified over infinity.  The deck group is the
/// column span.
struct CoverDatum {
    long long modulus = 2;               // N
    ModMatrix monodromy;                 // m x s, entries in [0, N)
    std::vector<GroupElement> columns;   // l_j
    SubgroupSpan group;                  // column span

    std::size_t branch_count() const { return monodromy.cols; } // s
    std::size_t arity() const { return monodromy.rows; }        // m
    Ambient ambient() const { return {modulus, arity()}; }
};

/// Validates (N, A) and materializes columns and deck group.
inline CoverDatum make_cover(long long modulus, const ModMatrix& a) {
    if (modulus < 2)
        throw validation_error(validation_error::kind::parse, "modulus must be >= 2");
    if (a.rows == 0 || a.cols == 0)
        throw validation_error(validation_error::kind::parse, "empty monodromy matrix");
    if (a.modulus != modulus)
        throw validation_error(validation_error::kind::mixed_ambient, "matrix modulus mismatch");
    if (a.cols < 3)
        throw validation_error(validation_error::kind::too_few_points,
                               "need at least 3 branch points, got " + std::to_string(a.cols));

    CoverDatum d;
    d.modulus = modulus;
    d.monodromy = a;
    for (std::size_t j = 0; j < a.cols; ++j) {
        GroupElement col = a.column(j);
        if (is_zero(col))
            throw validation_error(validation_error::kind::zero_column,
                                   "column " + std::to_string(j + 1) + " is zero",
                                   static_cast<long>(j + 1));
        d.columns.push_back(std::move(col));
    }
    GroupElement sum(a.rows, 0);
    for (const auto& c : d.columns) sum = add_mod(sum, c, modulus);
    if (!is_zero(sum))
        throw validation_error(validation_error::kind::column_sum_nonzero,
                               "columns do not sum to zero mod N");
    d.group = span(d.columns, {modulus, a.rows});
    return d;
}

/// Cover plus the subgroup H of the deck group whose quotient is the
/// intermediate curve.  H = {0} is tolerated (everything degenerates
/// gracefully); searches only ever produce nontrivial H.
struct PrymDatum {
    CoverDatum cover;
    SubgroupSpan subgroup; // H
};

inline PrymDatum make_prym(CoverDatum cover, const std::vector<GroupElement>& h_generators) {
    SubgroupSpan h = span(h_generators, cover.ambient());
    if (!subgroup_of(h, cover.group))
        throw validation_error(validation_error::kind::subgroup_not_contained,
                               "H is not contained in the deck group");
    return PrymDatum{std::move(cover), std::move(h)};
}

/// alpha = n.A with entries in [0, N), and the integer vector alpha~ computed
/// from the lifts of n and A to [0, N) (not reduced).
struct AlphaVector {
    std::vector<long long> alpha;       // in [0, N)
    std::vector<long long> alpha_lift;  // over Z
};

inline AlphaVector alpha_vector(const CoverDatum& d, const GroupElement& chi) {
    if (chi.size() != d.arity())
        throw validation_error(validation_error::kind::mixed_ambient, "character arity mismatch");
    AlphaVector av;
    av.alpha.resize(d.branch_count());
    av.alpha_lift.resize(d.branch_count());
    for (std::size_t j = 0; j < d.branch_count(); ++j) {
        long long lift = 0;
        for (std::size_t i = 0; i < d.arity(); ++i)
            lift += chi[i] * d.monodromy.at(i, j);
        av.alpha_lift[j] = lift;
        av.alpha[j] = lift % d.modulus;
    }
    return av;
}

inline long long column_gcd(const CoverDatum& d, std::size_t j) {
    long long g = d.modulus;
    for (std::size_t i = 0; i < d.arity(); ++i) g = std::gcd(g, d.monodromy.at(i, j));
    return g;
}

/// Ramification order over the j-th branch point (1-based j), equal to the
/// order of the j-th column in the deck group.
inline long long local_order(const CoverDatum& d, std::size_t j) {
    if (j < 1 || j > d.branch_count())
        throw validation_error(validation_error::kind::parse, "branch point index out of range");
    return d.modulus / column_gcd(d, j - 1);
}

/// Genus of the total curve from the Riemann-Hurwitz count
///   g = 1 + |G| ((s-2)/2 - (1/2N) sum_j gcd(N, column j)).
inline long long genus_total(const CoverDatum& d) {
    const long long deg = d.group.order();
    long long gcd_sum = 0;
    for (std::size_t j = 0; j < d.branch_count(); ++j) gcd_sum += column_gcd(d, j);
    Rat g = Rat(1) + Rat(deg) * (Rat(static_cast<long long>(d.branch_count()) - 2, 2) -
                                 Rat(gcd_sum, 2 * d.modulus));
    if (denominator(g) != 1 || g < 0)
        throw internal_error("total genus is not a nonnegative integer");
    return static_cast<long long>(numerator(g));
}

/// Dimension of the chi-eigenspace of holomorphic 1-forms:
///   d_chi = -1 + sum_j <-alpha_j / N>, and 0 for the trivial character.
inline long long eigenspace_dim(const CoverDatum& d, const GroupElement& chi) {
    AlphaVector av = alpha_vector(d, chi);
    bool trivial = std::all_of(av.alpha.begin(), av.alpha.end(),
                               [](long long a) { return a == 0; });
    if (trivial) return 0;
    long long sum = 0; // N * sum_j <-alpha_j/N>
    for (long long a : av.alpha)
        if (a != 0) sum += d.modulus - a;
    if (sum % d.modulus != 0) throw internal_error("eigenspace dimension is not an integer");
    long long dim = -1 + sum / d.modulus;
    if (dim < 0) throw internal_error("negative eigenspace dimension");
    return dim;
}

/// One character of the deck group: a canonical representative n in (Z/N)^m
/// together with alpha = n.A.  Characters are in bijection with the row span
/// of A; when the standard pairing identifies the deck group with its dual
/// (the generic case), the representative is the matching group element.
struct CharacterInfo {
    GroupElement rep;
    std::vector<long long> alpha;
    long long dim = 0;
    bool anti = false; // nontrivial on H
};

struct EigenspaceTable {
    std::vector<CharacterInfo> entries; // sorted by representative
    std::map<std::vector<long long>, std::size_t> by_alpha;

    long long total_dim() const {
        long long s = 0;
        for (const auto& e : entries) s += e.dim;
        return s;
    }
    long long anti_dim() const {
        long long s = 0;
        for (const auto& e : entries)
            if (e.anti) s += e.dim;
        return s;
    }
    const CharacterInfo& at_alpha(const std::vector<long long>& alpha) const {
        auto it = by_alpha.find(alpha);
        if (it == by_alpha.end()) throw internal_error("unknown character alpha vector");
        return entries[it->second];
    }
};

namespace detail {

// Enumerate the dual of the deck group: walk the row span of A, keeping one
// preimage n per alpha.  Preimages are then canonicalized: the matching deck
// group element when it is unique, otherwise the lex-least vector in the
// coset n + ann(G).
inline std::vector<std::pair<GroupElement, std::vector<long long>>>
character_reps(const CoverDatum& d) {
    const long long n = d.modulus;
    const std::size_t m = d.arity(), s = d.branch_count();

    std::map<std::vector<long long>, GroupElement> walk;
    std::vector<std::vector<long long>> queue;
    std::vector<long long> zero_alpha(s, 0);
    walk[zero_alpha] = GroupElement(m, 0);
    queue.push_back(zero_alpha);
    while (!queue.empty()) {
        auto alpha = queue.back();
        queue.pop_back();
        GroupElement rep = walk[alpha];
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<long long> next(s);
            for (std::size_t j = 0; j < s; ++j)
                next[j] = (alpha[j] + d.monodromy.at(i, j)) % n;
            if (walk.find(next) == walk.end()) {
                GroupElement r = rep;
                r[i] = (r[i] + 1) % n;
                walk[next] = r;
                queue.push_back(next);
            }
        }
    }

    // deck group elements grouped by the alpha vector they induce
    std::map<std::vector<long long>, std::vector<GroupElement>> from_group;
    for (const auto& g : d.group.elements)
        from_group[alpha_vector(d, g).alpha].push_back(g);

    // annihilator of the deck group, needed only when some character has no
    // deck-group representative (degenerate embeddings)
    std::optional<std::vector<GroupElement>> ann;
    auto annihilator = [&]() -> const std::vector<GroupElement>& {
        if (!ann) {
            std::vector<GroupElement> a;
            GroupElement v(m, 0);
            while (true) {
                bool kills = true;
                for (const auto& col : d.columns)
                    if (pairing(v, col, n) != 0) { kills = false; break; }
                if (kills) a.push_back(v);
                std::size_t i = 0;
                while (i < m && ++v[i] == n) { v[i] = 0; ++i; }
                if (i == m) break;
            }
            ann = std::move(a);
        }
        return *ann;
    };

    std::vector<std::pair<GroupElement, std::vector<long long>>> out;
    for (const auto& [alpha, rep] : walk) {
        auto it = from_group.find(alpha);
        if (it != from_group.end()) {
            out.emplace_back(*std::min_element(it->second.begin(), it->second.end()), alpha);
        } else {
            GroupElement least = rep;
            for (const auto& a : annihilator()) {
                GroupElement cand = add_mod(rep, a, n);
                if (cand < least) least = cand;
            }
            out.emplace_back(std::move(least), alpha);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// Full eigenspace table of the cover, with each character flagged
/// anti-invariant when it is nontrivial on H.
inline EigenspaceTable eigenspace_table(const PrymDatum& p) {
    EigenspaceTable t;
    for (auto& [rep, alpha] : detail::character_reps(p.cover)) {
        CharacterInfo info;
        info.rep = rep;
        info.alpha = alpha;
        info.dim = eigenspace_dim(p.cover, rep);
        info.anti = false;
        for (const auto& h : p.subgroup.generators)
            if (pairing(rep, h, p.cover.modulus) != 0) { info.anti = true; break; }
        t.entries.push_back(std::move(info));
    }
    for (std::size_t i = 0; i < t.entries.size(); ++i) t.by_alpha[t.entries[i].alpha] = i;

    if (t.total_dim() != genus_total(p.cover))
        throw internal_error("character dimensions do not sum to the total genus");
    return t;
}

/// Order of the image of g in G/H: least k >= 1 with k*g in H.
inline long long order_in_quotient(const GroupElement& g, const SubgroupSpan& h, long long modulus) {
    GroupElement acc = g;
    long long k = 1;
    while (!h.contains(acc)) { acc = add_mod(acc, g, modulus); ++k; }
    return k;
}

/// Genus of the intermediate curve C = C~/H, computed by Riemann-Hurwitz for
/// the quotient cover C -> P^1 and cross-checked against the dimension count
/// over the characters trivial on H.
inline long long genus_quotient(const PrymDatum& p) {
    const CoverDatum& d = p.cover;
    long long quot_order = d.group.order() / p.subgroup.order();
    Rat rh = Rat(-2);
    for (const auto& col : d.columns) {
        long long o = order_in_quotient(col, p.subgroup, d.modulus);
        rh += Rat(1) - Rat(1, o);
    }
    Rat g = Rat(1) + Rat(quot_order, 2) * rh;
    if (denominator(g) != 1 || g < 0)
        throw internal_error("quotient genus is not a nonnegative integer");
    long long g_rh = static_cast<long long>(numerator(g));

    EigenspaceTable t = eigenspace_table(p);
    long long g_chars = t.total_dim() - t.anti_dim();
    if (g_rh != g_chars)
        throw internal_error("inconsistent quotient genus: Riemann-Hurwitz gives " +
                             std::to_string(g_rh) + ", character count gives " +
                             std::to_string(g_chars));
    return g_rh;
}

/// Ramification points on C~ and branch points on C of the cover C~ -> C.
/// The branch point z_j contributes iff the inertia <l_j> n H is nontrivial.
struct RamBranch {
    long long ram = 0;
    long long br = 0;
};

inline RamBranch ram_branch_counts(const PrymDatum& p) {
    const CoverDatum& d = p.cover;
    long long quot_order = d.group.order() / p.subgroup.order();
    RamBranch rb;
    for (std::size_t j = 0; j < d.branch_count(); ++j) {
        const auto& col = d.columns[j];
        long long o = element_order(col, d.modulus);
        long long oq = order_in_quotient(col, p.subgroup, d.modulus);
        if (o == oq) continue; // inertia <l_j> n H trivial
        rb.ram += d.group.order() / o;
        rb.br += quot_order / oq;
    }
    return rb;
}

/// p = genus(C~) - genus(C), also the total anti-invariant dimension.
inline long long prym_dimension(const PrymDatum& p) {
    return genus_total(p.cover) - genus_quotient(p);
}

/// Polarization type of the Prym variety: (1,...,1,h,...,h) with h = |H|,
/// where 1 occurs g-1 times for an unramified intermediate cover and g times
/// otherwise.
inline std::vector<long long> polarization_type(const PrymDatum& p) {
    long long g = genus_quotient(p);
    long long dim = genus_total(p.cover) - g;
    if (dim == 0) return {};
    long long ones = (ram_branch_counts(p).ram == 0) ? g - 1 : g;
    if (ones < 0 || dim < ones)
        throw internal_error("polarization type out of range");
    std::vector<long long> type(ones, 1);
    type.resize(dim, p.subgroup.order());
    return type;
}

} // namespace prymab
