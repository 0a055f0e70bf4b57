#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "prymab/cover.hpp"
#include "prymab/linalg.hpp"

namespace prymab {

/// Exponent data of a basis 1-form
///   z^nu  w_1^{n_1} ... w_m^{n_m}  prod_j (z - z_j)^{e_j}  dz
/// for the character chi, with e_j = floor(-alpha~_j / N).
struct FormExponent {
    GroupElement chi;
    long long nu = 0;
    std::vector<long long> w_exponents;
    std::vector<long long> z_exponents;
};

/// The d_chi basis forms of the chi-eigenspace, nu = 0 .. d_chi - 1.
inline std::vector<FormExponent> form_basis(const CoverDatum& d, const GroupElement& chi) {
    long long dim = eigenspace_dim(d, chi);
    AlphaVector av = alpha_vector(d, chi);
    std::vector<long long> zexp(d.branch_count());
    for (std::size_t j = 0; j < d.branch_count(); ++j)
        zexp[j] = -((av.alpha_lift[j] + d.modulus - 1) / d.modulus); // floor(-a/N), a >= 0
    std::vector<FormExponent> out;
    for (long long nu = 0; nu < dim; ++nu)
        out.push_back(FormExponent{chi, nu, chi, zexp});
    return out;
}

/// Unordered product of two basis forms whose characters cancel.
struct SymPair {
    FormExponent a, b;
};

/// All invariant pairs over a character subset: one entry per unordered pair
/// {chi, -chi} with `selected` true (the subset must be closed under
/// negation), all combinations of basis forms; for 2chi = 0 only nu <= mu.
/// Deterministic order.
inline std::vector<SymPair> invariant_sym_pairs(
    const CoverDatum& d, const EigenspaceTable& table,
    const std::function<bool(const CharacterInfo&)>& selected) {
    std::vector<SymPair> pairs;
    for (const auto& entry : table.entries) {
        if (!selected(entry) || entry.dim == 0) continue;
        std::vector<long long> neg_alpha(entry.alpha.size());
        for (std::size_t j = 0; j < entry.alpha.size(); ++j)
            neg_alpha[j] = (d.modulus - entry.alpha[j]) % d.modulus;
        const CharacterInfo& partner = table.at_alpha(neg_alpha);
        if (!selected(partner))
            throw internal_error("character subset not closed under negation");
        auto basis_a = form_basis(d, entry.rep);
        if (partner.alpha == entry.alpha) {
            for (long long nu = 0; nu < entry.dim; ++nu)
                for (long long mu = nu; mu < entry.dim; ++mu)
                    pairs.push_back(SymPair{basis_a[nu], basis_a[mu]});
        } else if (entry.rep < partner.rep) {
            auto basis_b = form_basis(d, partner.rep);
            for (const auto& fa : basis_a)
                for (const auto& fb : basis_b) pairs.push_back(SymPair{fa, fb});
        }
    }
    return pairs;
}

struct SymBasis {
    std::vector<SymPair> pairs;
    std::size_t size() const { return pairs.size(); }
};

/// Basis of the deck-group-invariant part of Sym^2 of the anti-invariant
/// 1-forms: pairs of opposite anti-invariant characters.
inline SymBasis sym2_invariant_basis(const PrymDatum& p) {
    EigenspaceTable t = eigenspace_table(p);
    return SymBasis{invariant_sym_pairs(p.cover, t,
                                        [](const CharacterInfo& c) { return c.anti; })};
}

/// An invariant quadratic differential written over the common denominator:
///   num(z) (dz)^2 / prod_j (z - z_j),   deg num <= s - 4.
struct QuadDifferential {
    std::vector<Rat> poly_coeffs;  // numerator coefficients, ascending powers
    std::vector<int> pole_orders;  // per branch point, each 0 or 1
};

/// Product of the two forms of a pair, evaluated at concrete branch points.
/// The w-part cancels through the defining equations and contributes
/// (alpha~_j + alpha~'_j)/N to the exponent at z_j.
inline QuadDifferential multiply(const CoverDatum& d, const SymPair& pair,
                                 const std::vector<Rat>& branch_points) {
    const std::size_t s = d.branch_count();
    if (branch_points.size() != s)
        throw validation_error(validation_error::kind::parse,
                               "expected " + std::to_string(s) + " branch points");
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j)
            if (branch_points[i] == branch_points[j])
                throw validation_error(validation_error::kind::duplicate_branch_points,
                                       "branch points must be pairwise distinct");

    AlphaVector aa = alpha_vector(d, pair.a.chi);
    AlphaVector ab = alpha_vector(d, pair.b.chi);
    std::vector<long long> exponent(s);
    for (std::size_t j = 0; j < s; ++j) {
        long long lift_sum = aa.alpha_lift[j] + ab.alpha_lift[j];
        if (lift_sum % d.modulus != 0)
            throw validation_error(validation_error::kind::characters_do_not_cancel,
                                   "pair characters do not sum to zero");
        exponent[j] = pair.a.z_exponents[j] + pair.b.z_exponents[j] + lift_sum / d.modulus;
        if (exponent[j] < -1)
            throw internal_error("quadratic differential has a pole of order > 1");
    }

    // numerator over prod_j (z - z_j): z^(nu+nu') prod_j (z - z_j)^(E_j + 1)
    std::vector<Rat> poly(static_cast<std::size_t>(pair.a.nu + pair.b.nu) + 1, Rat(0));
    poly.back() = Rat(1);
    for (std::size_t j = 0; j < s; ++j) {
        for (long long k = 0; k < exponent[j] + 1; ++k) {
            std::vector<Rat> next(poly.size() + 1, Rat(0));
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] += poly[i];
                next[i] -= poly[i] * branch_points[j];
            }
            poly = std::move(next);
        }
    }
    if (poly.size() + 3 > s) // deg num <= s - 4, i.e. size <= s - 3
        throw internal_error("quadratic differential has a pole at infinity");

    QuadDifferential q;
    q.poly_coeffs = std::move(poly);
    q.pole_orders.resize(s);
    for (std::size_t j = 0; j < s; ++j) q.pole_orders[j] = exponent[j] == -1 ? 1 : 0;
    return q;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d649bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace detail

/// Deterministic branch tuples for the injectivity search: first
/// (0, 1, ..., s-1), then distinct integers in [-1000, 1000] drawn from the
/// seed.  Independent of platform RNG details.
inline std::vector<std::vector<long long>> branch_tuples(std::size_t s, int trials,
                                                         std::uint64_t seed) {
    std::vector<std::vector<long long>> tuples;
    std::vector<long long> first(s);
    for (std::size_t i = 0; i < s; ++i) first[i] = static_cast<long long>(i);
    tuples.push_back(std::move(first));
    std::uint64_t state = seed;
    while (tuples.size() < static_cast<std::size_t>(trials)) {
        std::vector<long long> t;
        while (t.size() < s) {
            long long v = static_cast<long long>(detail::splitmix64(state) % 2001) - 1000;
            if (std::find(t.begin(), t.end(), v) == t.end()) t.push_back(v);
        }
        tuples.push_back(std::move(t));
    }
    return tuples;
}

/// Rank of the multiplication map on the given pairs at concrete branch
/// points, over the monomial basis z^0 .. z^{s-4} of the target.
inline std::size_t multiplication_rank(const CoverDatum& d, const std::vector<SymPair>& pairs,
                                       const std::vector<Rat>& branch_points) {
    const std::size_t width = d.branch_count() - 3;
    std::vector<std::vector<Rat>> rows;
    for (const auto& pair : pairs) {
        QuadDifferential q = multiply(d, pair, branch_points);
        q.poly_coeffs.resize(width, Rat(0));
        rows.push_back(std::move(q.poly_coeffs));
    }
    if (rows.empty()) return 0;
    return rank_exact(rows);
}

/// Outcome of the injectivity search.  A failure to find a witness is never a
/// disproof: the map is generically of maximal rank or not, and only the
/// positive direction is certified.
struct InjectivityOutcome {
    bool injective = false;
    std::vector<long long> witness;             // tuple certifying injectivity
    std::vector<std::vector<long long>> tried;  // tuples examined
};

inline InjectivityOutcome injectivity_check_on(const CoverDatum& d,
                                               const std::vector<SymPair>& pairs, int trials,
                                               std::uint64_t seed) {
    InjectivityOutcome out;
    for (auto& tuple : branch_tuples(d.branch_count(), trials, seed)) {
        std::vector<Rat> pts(tuple.begin(), tuple.end());
        if (multiplication_rank(d, pairs, pts) == pairs.size()) {
            out.injective = true;
            out.witness = tuple;
            return out;
        }
        out.tried.push_back(tuple);
    }
    return out;
}

inline InjectivityOutcome injectivity_check(const PrymDatum& p, int trials, std::uint64_t seed) {
    return injectivity_check_on(p.cover, sym2_invariant_basis(p).pairs, trials, seed);
}

} // namespace prymab
