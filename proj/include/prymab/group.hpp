#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "prymab/errors.hpp"

namespace prymab {

/// Element of (Z/N)^m, componentwise arithmetic mod N.
using GroupElement = std::vector<long long>;

struct Ambient {
    long long modulus; // N
    std::size_t arity; // m
    bool operator==(const Ambient& o) const { return modulus == o.modulus && arity == o.arity; }
};

inline GroupElement add_mod(const GroupElement& a, const GroupElement& b, long long n) {
    GroupElement c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % n;
    return c;
}

inline GroupElement neg_mod(const GroupElement& a, long long n) {
    GroupElement c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (n - a[i]) % n;
    return c;
}

inline GroupElement scale_mod(long long k, const GroupElement& a, long long n) {
    GroupElement c(a.size());
    k %= n; if (k < 0) k += n;
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (k * a[i]) % n;
    return c;
}

inline bool is_zero(const GroupElement& a) {
    return std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; });
}

/// The bilinear pairing n.g = sum n_i g_i mod N; a character n takes the value
/// exp(2 pi i (n.g)/N) on g, so the pairing vanishes exactly where the
/// character is trivial.
inline long long pairing(const GroupElement& n, const GroupElement& g, long long modulus) {
    if (n.size() != g.size())
        throw validation_error(validation_error::kind::mixed_ambient, "pairing of elements of different arity");
    long long s = 0;
    for (std::size_t i = 0; i < n.size(); ++i) s = (s + n[i] * g[i]) % modulus;
    return s;
}

/// Least k >= 1 with k*g = 0; divides N.
inline long long element_order(const GroupElement& g, long long modulus) {
    long long ord = 1;
    for (long long x : g) {
        long long o = modulus / std::gcd(modulus, x);
        ord = std::lcm(ord, o);
    }
    return ord;
}

/// A subgroup of (Z/N)^m given by generators, with its element set
/// materialized in sorted order.
struct SubgroupSpan {
    Ambient ambient{2, 1};
    std::vector<GroupElement> generators;
    std::vector<GroupElement> elements; // sorted, closed under addition, contains 0

    long long order() const { return static_cast<long long>(elements.size()); }

    bool contains(const GroupElement& g) const {
        return std::binary_search(elements.begin(), elements.end(), g);
    }

    std::size_t index_of(const GroupElement& g) const {
        auto it = std::lower_bound(elements.begin(), elements.end(), g);
        if (it == elements.end() || *it != g)
            throw internal_error("element not in subgroup");
        return static_cast<std::size_t>(it - elements.begin());
    }

    bool operator==(const SubgroupSpan& o) const {
        return ambient == o.ambient && elements == o.elements;
    }
    bool operator<(const SubgroupSpan& o) const {
        if (order() != o.order()) return order() < o.order();
        return elements < o.elements;
    }
};

/// Additive closure of the generators.  Deterministic: the element list is
/// sorted lexicographically.
inline SubgroupSpan span(const std::vector<GroupElement>& generators, Ambient ambient) {
    for (const auto& g : generators)
        if (g.size() != ambient.arity)
            throw validation_error(validation_error::kind::mixed_ambient, "generator arity mismatch");
    std::set<GroupElement> seen;
    GroupElement zero(ambient.arity, 0);
    seen.insert(zero);
    std::vector<GroupElement> queue{zero};
    while (!queue.empty()) {
        GroupElement e = queue.back();
        queue.pop_back();
        for (const auto& g : generators) {
            GroupElement f = add_mod(e, g, ambient.modulus);
            if (seen.insert(f).second) queue.push_back(f);
        }
    }
    SubgroupSpan s;
    s.ambient = ambient;
    s.generators = generators;
    s.elements.assign(seen.begin(), seen.end());
    return s;
}

inline SubgroupSpan trivial_subgroup(Ambient ambient) {
    return span({}, ambient);
}

inline bool subgroup_of(const SubgroupSpan& h, const SubgroupSpan& g) {
    if (!(h.ambient == g.ambient)) return false;
    return std::all_of(h.elements.begin(), h.elements.end(),
                       [&](const GroupElement& e) { return g.contains(e); });
}

/// All subgroups of G, deduplicated by element set, sorted by (order,
/// element list).  |G| must not exceed max_order.
inline std::vector<SubgroupSpan> subgroups(const SubgroupSpan& g, long long max_order = 256) {
    if (g.order() > max_order)
        throw validation_error(validation_error::kind::bound_exceeded,
                               "group too large for subgroup enumeration");
    std::set<std::vector<GroupElement>> seen;
    std::vector<SubgroupSpan> out;
    std::vector<SubgroupSpan> work{trivial_subgroup(g.ambient)};
    seen.insert(work.front().elements);
    while (!work.empty()) {
        SubgroupSpan s = std::move(work.back());
        work.pop_back();
        out.push_back(s);
        for (const auto& e : g.elements) {
            if (s.contains(e)) continue;
            auto gens = s.generators;
            gens.push_back(e);
            SubgroupSpan bigger = span(gens, g.ambient);
            if (seen.insert(bigger.elements).second) work.push_back(std::move(bigger));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// Greedy generating sequence: repeatedly adjoin the smallest element of
// maximal order outside the current span.
inline std::vector<GroupElement> generating_sequence(const SubgroupSpan& g) {
    std::vector<GroupElement> gens;
    SubgroupSpan cur = trivial_subgroup(g.ambient);
    while (cur.order() < g.order()) {
        const GroupElement* best = nullptr;
        long long best_ord = 0;
        for (const auto& e : g.elements) {
            if (cur.contains(e)) continue;
            long long o = element_order(e, g.ambient.modulus);
            if (o > best_ord) { best_ord = o; best = &e; }
        }
        gens.push_back(*best);
        auto gl = cur.generators;
        gl.push_back(*best);
        cur = span(gl, g.ambient);
    }
    return gens;
}

// One expression of every element of G as a word in the given generators;
// word coefficients are reduced mod the generator orders.
inline std::map<GroupElement, std::vector<long long>>
element_words(const SubgroupSpan& g, const std::vector<GroupElement>& gens) {
    std::map<GroupElement, std::vector<long long>> words;
    std::vector<long long> orders(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        orders[i] = element_order(gens[i], g.ambient.modulus);
    GroupElement zero(g.ambient.arity, 0);
    words[zero] = std::vector<long long>(gens.size(), 0);
    std::vector<GroupElement> queue{zero};
    while (!queue.empty()) {
        GroupElement e = queue.back();
        queue.pop_back();
        for (std::size_t i = 0; i < gens.size(); ++i) {
            GroupElement f = add_mod(e, gens[i], g.ambient.modulus);
            auto it = words.find(f);
            if (it == words.end()) {
                auto w = words[e];
                w[i] = (w[i] + 1) % orders[i];
                words[f] = w;
                queue.push_back(f);
            }
        }
    }
    return words;
}

} // namespace detail

/// All automorphisms of G, each as a permutation of indices into G.elements.
/// Brute force over images of a generating sequence; feasible for the small
/// low-rank groups handled here.  Results include the identity and are sorted.
inline std::vector<std::vector<std::size_t>> automorphisms(const SubgroupSpan& g,
                                                           long long max_order = 64) {
    if (g.order() > max_order)
        throw validation_error(validation_error::kind::bound_exceeded,
                               "group too large for automorphism enumeration");
    auto gens = detail::generating_sequence(g);
    auto words = detail::element_words(g, gens);
    const std::size_t k = gens.size();
    const std::size_t sz = g.elements.size();
    std::vector<long long> gen_ord(k);
    for (std::size_t i = 0; i < k; ++i) gen_ord[i] = element_order(gens[i], g.ambient.modulus);

    std::set<std::vector<std::size_t>> result;
    std::vector<GroupElement> image(k);

    // candidates per slot: elements of the matching order
    std::vector<std::vector<GroupElement>> cands(k);
    for (std::size_t i = 0; i < k; ++i)
        for (const auto& e : g.elements)
            if (element_order(e, g.ambient.modulus) == gen_ord[i]) cands[i].push_back(e);

    std::vector<std::size_t> idx(k, 0);
    auto try_map = [&]() {
        std::vector<std::size_t> perm(sz);
        std::vector<bool> hit(sz, false);
        for (std::size_t ei = 0; ei < sz; ++ei) {
            const auto& w = words.at(g.elements[ei]);
            GroupElement val(g.ambient.arity, 0);
            for (std::size_t i = 0; i < k; ++i)
                val = add_mod(val, scale_mod(w[i], image[i], g.ambient.modulus), g.ambient.modulus);
            if (!g.contains(val)) return;
            std::size_t vi = g.index_of(val);
            if (hit[vi]) return; // not injective
            hit[vi] = true;
            perm[ei] = vi;
        }
        // the word table fixes only one expression per element, so verify the
        // map is additive before accepting it
        for (std::size_t a = 0; a < sz; ++a)
            for (std::size_t b = a; b < sz; ++b) {
                GroupElement sum = add_mod(g.elements[a], g.elements[b], g.ambient.modulus);
                GroupElement mapped = add_mod(g.elements[perm[a]], g.elements[perm[b]], g.ambient.modulus);
                if (g.elements[perm[g.index_of(sum)]] != mapped) return;
            }
        result.insert(perm);
    };

    // odometer over candidate tuples
    while (true) {
        for (std::size_t i = 0; i < k; ++i) image[i] = cands[i][idx[i]];
        try_map();
        std::size_t pos = 0;
        while (pos < k && ++idx[pos] == cands[pos].size()) { idx[pos] = 0; ++pos; }
        if (pos == k) break;
    }

    return std::vector<std::vector<std::size_t>>(result.begin(), result.end());
}

/// Apply an automorphism (as an element permutation) to a single element.
inline GroupElement apply_automorphism(const SubgroupSpan& g,
                                       const std::vector<std::size_t>& perm,
                                       const GroupElement& e) {
    return g.elements[perm[g.index_of(e)]];
}

/// Invariant factor decomposition d_1 | d_2 | ... of a finite abelian group
/// (or of the quotient G/collapse when a subgroup is passed), returned in
/// ascending divisibility order.  A cyclic subgroup of maximal order is a
/// direct summand, so we peel one off and repeat on the quotient.  Quotients
/// are tracked by a projection of G onto lex-least coset representatives.
inline std::vector<long long> invariant_factors(const SubgroupSpan& g,
                                                const SubgroupSpan* collapse_by = nullptr) {
    const long long n = g.ambient.modulus;
    std::map<GroupElement, GroupElement> proj;
    for (const auto& e : g.elements) {
        GroupElement least = e;
        if (collapse_by)
            for (const auto& h : collapse_by->elements) {
                GroupElement f = add_mod(e, h, n);
                if (f < least) least = f;
            }
        proj[e] = least;
    }
    std::set<GroupElement> start;
    for (auto& [e, r] : proj) start.insert(r);
    std::vector<GroupElement> cur(start.begin(), start.end());

    auto q_add = [&](const GroupElement& a, const GroupElement& b) {
        return proj.at(add_mod(a, b, n));
    };

    std::vector<long long> factors;
    while (cur.size() > 1) {
        long long max_ord = 0;
        GroupElement pivot;
        for (const auto& e : cur) {
            if (is_zero(e)) continue;
            long long o = 1;
            GroupElement acc = e;
            while (!is_zero(acc)) { acc = q_add(acc, e); ++o; }
            if (o > max_ord) { max_ord = o; pivot = e; }
        }
        factors.push_back(max_ord);

        std::vector<GroupElement> cyc;
        GroupElement acc(g.ambient.arity, 0);
        do { cyc.push_back(acc); acc = q_add(acc, pivot); } while (!is_zero(acc));

        std::map<GroupElement, GroupElement> collapse;
        for (const auto& e : cur) {
            GroupElement least = e;
            for (const auto& c : cyc) {
                GroupElement f = q_add(e, c);
                if (f < least) least = f;
            }
            collapse[e] = least;
        }
        std::set<GroupElement> next;
        for (const auto& e : cur) next.insert(collapse[e]);
        for (auto& [e, r] : proj) r = collapse.at(r);
        cur.assign(next.begin(), next.end());
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

/// Group label in the C2xC4 style, ascending invariant factors.
inline std::string group_label(const std::vector<long long>& factors) {
    if (factors.empty()) return "C1";
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += "x";
        s += "C" + std::to_string(factors[i]);
    }
    return s;
}

inline std::string group_label(const SubgroupSpan& g) { return group_label(invariant_factors(g)); }

/// Order of a group named like C6 or C2xC4; -1 if the label is not of that
/// shape (non-abelian labels from imported tables).
inline long long label_order(const std::string& label) {
    long long total = 1;
    std::size_t i = 0;
    while (i < label.size()) {
        if (label[i] != 'C') return -1;
        ++i;
        std::size_t j = i;
        while (j < label.size() && std::isdigit(static_cast<unsigned char>(label[j]))) ++j;
        if (j == i) return -1;
        total *= std::stoll(label.substr(i, j - i));
        i = j;
        if (i < label.size()) {
            if (label[i] != 'x') return -1;
            ++i;
        }
    }
    return total;
}

} // namespace prymab
