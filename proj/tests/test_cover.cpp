#include <catch2/catch_amalgamated.hpp>

#include "prymab/cover.hpp"

using namespace prymab;

namespace {

CoverDatum cover(long long n, const std::vector<std::vector<long long>>& rows) {
    return make_cover(n, ModMatrix::from_rows(n, rows));
}

PrymDatum prym(long long n, const std::vector<std::vector<long long>>& rows,
               const std::vector<GroupElement>& h_gens) {
    return make_prym(cover(n, rows), h_gens);
}

// The five worked families used throughout the suite.
PrymDatum cyclic6_g3() { return prym(6, {{1, 3, 4, 4}}, {{2}}); }
PrymDatum z3z3_g4() { return prym(3, {{1, 1, 1, 0}, {0, 0, 2, 1}}, {{0, 1}}); }
PrymDatum cyclic6_g7() { return prym(6, {{1, 1, 1, 1, 2}}, {{2}}); }
PrymDatum z3z3_g7() { return prym(3, {{1, 0, 1, 2, 2}, {0, 2, 2, 0, 2}}, {{0, 1}}); }
PrymDatum z2cube_g5() {
    return prym(2, {{0, 0, 1, 1, 0, 0}, {0, 1, 1, 1, 0, 1}, {1, 1, 1, 1, 1, 1}},
                {{1, 0, 0}, {0, 1, 0}});
}

} // namespace

TEST_CASE("validate accepts the worked families", "[cover]") {
    CHECK(cover(6, {{1, 3, 4, 4}}).group.order() == 6);
    auto d = cover(3, {{1, 1, 1, 0}, {0, 0, 2, 1}});
    CHECK(d.group.order() == 9);
    CHECK(d.columns[2] == GroupElement{1, 2});
}

TEST_CASE("validate rejects bad matrices", "[cover]") {
    SECTION("nonzero column sum") {
        try {
            cover(6, {{1, 3, 4, 3}});
            FAIL("expected rejection");
        } catch (const validation_error& e) {
            CHECK(e.what_kind == validation_error::kind::column_sum_nonzero);
        }
    }
    SECTION("zero column") {
        try {
            cover(6, {{1, 0, 5, 0}});
            FAIL("expected rejection");
        } catch (const validation_error& e) {
            CHECK(e.what_kind == validation_error::kind::zero_column);
            CHECK(e.index == 2);
        }
    }
    SECTION("too few branch points") {
        try {
            cover(4, {{2, 2}});
            FAIL("expected rejection");
        } catch (const validation_error& e) {
            CHECK(e.what_kind == validation_error::kind::too_few_points);
        }
    }
    SECTION("H must lie in the deck group") {
        CHECK_THROWS_AS(prym(6, {{2, 2, 2}}, {{1}}), validation_error);
    }
}

TEST_CASE("alpha vectors", "[cover]") {
    auto d1 = cover(6, {{1, 3, 4, 4}});
    auto a1 = alpha_vector(d1, {1});
    CHECK(a1.alpha == std::vector<long long>{1, 3, 4, 4});
    CHECK(a1.alpha_lift == std::vector<long long>{1, 3, 4, 4});

    auto d2 = cover(6, {{1, 1, 1, 1, 2}});
    auto a2 = alpha_vector(d2, {2});
    CHECK(a2.alpha == std::vector<long long>{2, 2, 2, 2, 4});
    CHECK(a2.alpha_lift == std::vector<long long>{2, 2, 2, 2, 4});
    auto a4 = alpha_vector(d2, {4});
    CHECK(a4.alpha_lift == std::vector<long long>{4, 4, 4, 4, 8});

    auto d3 = cover(3, {{1, 1, 1, 0}, {0, 0, 2, 1}});
    auto a3 = alpha_vector(d3, {1, 1});
    CHECK(a3.alpha == std::vector<long long>{1, 1, 0, 1});
    CHECK(a3.alpha_lift == std::vector<long long>{1, 1, 3, 1});
}

TEST_CASE("total genus", "[cover]") {
    CHECK(genus_total(cover(6, {{1, 3, 4, 4}})) == 3);
    CHECK(genus_total(cover(6, {{1, 1, 1, 1, 2}})) == 7);
    CHECK(genus_total(cover(2, {{1, 1, 1, 1, 1, 1}})) == 2); // hyperelliptic, 6 points
    CHECK(genus_total(cover(3, {{1, 1, 1, 0}, {0, 0, 2, 1}})) == 4);
    CHECK(genus_total(cover(3, {{1, 0, 1, 2, 2}, {0, 2, 2, 0, 2}})) == 7);
    CHECK(genus_total(z2cube_g5().cover) == 5);
}

TEST_CASE("local ramification orders", "[cover]") {
    auto d = cover(6, {{1, 3, 4, 4}});
    CHECK(local_order(d, 1) == 6);
    CHECK(local_order(d, 2) == 2);
    CHECK(local_order(d, 3) == 3);
    auto d3 = cover(3, {{1, 1, 1, 0}, {0, 0, 2, 1}});
    CHECK(local_order(d3, 4) == 3);
    for (std::size_t j = 1; j <= d.branch_count(); ++j)
        CHECK(local_order(d, j) == element_order(d.columns[j - 1], d.modulus));
}

TEST_CASE("eigenspace dimensions of the genus 7 cyclic family", "[cover]") {
    auto d = cover(6, {{1, 1, 1, 1, 2}});
    CHECK(eigenspace_dim(d, {1}) == 3);
    CHECK(eigenspace_dim(d, {2}) == 2);
    CHECK(eigenspace_dim(d, {3}) == 1);
    CHECK(eigenspace_dim(d, {4}) == 1);
    CHECK(eigenspace_dim(d, {5}) == 0);
    CHECK(eigenspace_dim(d, {0}) == 0);
}

TEST_CASE("eigenspace dimensions of the two-generator families", "[cover]") {
    auto d = cover(3, {{1, 0, 1, 2, 2}, {0, 2, 2, 0, 2}});
    CHECK(eigenspace_dim(d, {0, 2}) == 1);
    CHECK(eigenspace_dim(d, {1, 1}) == 1);
    CHECK(eigenspace_dim(d, {2, 1}) == 1);
    CHECK(eigenspace_dim(d, {1, 2}) == 1);
    CHECK(eigenspace_dim(d, {2, 2}) == 1);
    CHECK(eigenspace_dim(d, {0, 1}) == 0);
}

TEST_CASE("eigenspace table of the genus 7 cyclic family", "[cover]") {
    auto t = eigenspace_table(cyclic6_g7());
    REQUIRE(t.entries.size() == 6);
    std::map<GroupElement, std::pair<long long, bool>> got;
    for (const auto& e : t.entries) got[e.rep] = {e.dim, e.anti};
    CHECK(got[{1}] == std::make_pair(3LL, true));
    CHECK(got[{2}] == std::make_pair(2LL, true));
    CHECK(got[{4}] == std::make_pair(1LL, true));
    CHECK(got[{5}] == std::make_pair(0LL, true));
    CHECK(got[{3}].second == false);
    CHECK(got[{0}] == std::make_pair(0LL, false));
    CHECK(t.anti_dim() == 6);
    CHECK(t.total_dim() == 7);
}

TEST_CASE("eigenspace table of the five-point two-generator family", "[cover]") {
    auto t = eigenspace_table(z3z3_g7());
    std::set<GroupElement> anti_dim1;
    for (const auto& e : t.entries)
        if (e.anti && e.dim == 1) anti_dim1.insert(e.rep);
    CHECK(anti_dim1 == std::set<GroupElement>{{0, 2}, {1, 1}, {2, 1}, {1, 2}, {2, 2}});
}

TEST_CASE("eigenspace table with H equal to the full deck group", "[cover]") {
    auto p = make_prym(cover(6, {{1, 1, 1, 1, 2}}), {{1}});
    auto t = eigenspace_table(p);
    for (const auto& e : t.entries)
        CHECK(e.anti == !is_zero(e.rep));
    CHECK(t.anti_dim() == genus_total(p.cover));
}

TEST_CASE("quotient genus", "[cover]") {
    CHECK(genus_quotient(cyclic6_g7()) == 1);
    CHECK(genus_quotient(cyclic6_g3()) == 0);
    CHECK(genus_quotient(z2cube_g5()) == 2);
    CHECK(genus_quotient(z3z3_g4()) == 1);
}

TEST_CASE("ramification and branch counts", "[cover]") {
    auto rb1 = ram_branch_counts(cyclic6_g3());
    CHECK(rb1.ram == 5);
    CHECK(rb1.br == 5);

    auto rb2 = ram_branch_counts(z3z3_g4());
    CHECK(rb2.ram == 3);
    CHECK(rb2.br == 3);

    // unramified intermediate cover: all <l_j> n H trivial
    auto p = prym(3, {{1, 2, 1, 2}, {0, 0, 1, 2}}, {{0, 1}});
    for (const auto& col : p.cover.columns) {
        // oracle: enumerate the cyclic group generated by the column
        GroupElement acc(p.cover.arity(), 0);
        bool hits_h = false;
        do {
            acc = add_mod(acc, col, p.cover.modulus);
            if (!is_zero(acc) && p.subgroup.contains(acc)) hits_h = true;
        } while (!is_zero(acc));
        CHECK_FALSE(hits_h);
    }
    auto rb3 = ram_branch_counts(p);
    CHECK(rb3.ram == 0);
    CHECK(rb3.br == 0);

    auto rb4 = ram_branch_counts(cyclic6_g7());
    CHECK(rb4.ram == 6);
    CHECK(rb4.br == 6);
}

TEST_CASE("prym dimension", "[cover]") {
    CHECK(prym_dimension(cyclic6_g7()) == 6);
    CHECK(prym_dimension(cyclic6_g3()) == 3);
    CHECK(eigenspace_table(cyclic6_g7()).anti_dim() == 6);
    // trivial H: the intermediate curve is the total curve
    auto p = make_prym(cover(6, {{1, 3, 4, 4}}), {});
    CHECK(prym_dimension(p) == 0);
}

TEST_CASE("polarization types", "[cover]") {
    // classical unramified double cover of a genus 2 curve: principal type (1)
    auto etale = prym(2, {{1, 1, 0, 0, 0, 0}, {0, 0, 1, 1, 1, 1}}, {{1, 1}});
    CHECK(genus_quotient(etale) == 2);
    CHECK(ram_branch_counts(etale).ram == 0);
    CHECK(polarization_type(etale) == std::vector<long long>{1});

    CHECK(polarization_type(cyclic6_g3()) == std::vector<long long>{3, 3, 3});
    CHECK(polarization_type(cyclic6_g7()) == std::vector<long long>{1, 3, 3, 3, 3, 3});
}

TEST_CASE("riemann-hurwitz consistency of the intermediate cover", "[cover]") {
    for (const auto& p : {cyclic6_g3(), cyclic6_g7(), z3z3_g4(), z3z3_g7(), z2cube_g5()}) {
        long long gt = genus_total(p.cover);
        long long g = genus_quotient(p);
        long long rhs = p.subgroup.order() * (2 * g - 2);
        for (std::size_t j = 0; j < p.cover.branch_count(); ++j) {
            const auto& col = p.cover.columns[j];
            long long o = element_order(col, p.cover.modulus);
            long long oq = order_in_quotient(col, p.subgroup, p.cover.modulus);
            long long inertia = o / oq;
            long long pts = p.cover.group.order() / o;
            rhs += pts * (inertia - 1);
        }
        CHECK(2 * gt - 2 == rhs);
    }
}
