#include "doctest.h"

#include <limits>
#include <stdexcept>
#include <vector>

#include "apsat/search.hpp"

using namespace apsat;

namespace {

Ambient zn(std::uint64_t n) { return Ambient::of_group(Group::cyclic(n)); }

std::vector<std::uint64_t> witness_of(const SearchResult& r) {
    REQUIRE(r.witness.has_value());
    return r.witness->indices();
}

}  // namespace

TEST_CASE("lower bounds") {
    const BoundValue b3 = lower_bound(BoundKind::sat_3ap, 9);
    CHECK(b3.value == doctest::Approx(2.621820).epsilon(1e-6));
    CHECK(b3.ceiling == 3);

    const BoundValue bw = lower_bound(BoundKind::sat_w, 9);
    CHECK(bw.value == 3.0);
    CHECK(bw.ceiling == 3);

    const BoundValue bd = lower_bound(BoundKind::sat_diag, 9);
    CHECK(bd.value == doctest::Approx(3.772002).epsilon(1e-6));
    CHECK(bd.ceiling == 4);

    CHECK(lower_bound(BoundKind::sat_w, 49).value == 7.0);
    CHECK(lower_bound(BoundKind::sat_w, 49).ceiling == 7);
    CHECK(lower_bound(BoundKind::sat_w, 50).ceiling == 8);

    // n = 1 comes out exactly 1 in all three.
    CHECK(lower_bound(BoundKind::sat_3ap, 1).value == 1.0);
    CHECK(lower_bound(BoundKind::sat_3ap, 1).ceiling == 1);
    CHECK(lower_bound(BoundKind::sat_w, 1).ceiling == 1);
    CHECK(lower_bound(BoundKind::sat_diag, 1).ceiling == 1);

    // Ceilings come from integer inequalities, not floating rounding.
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        const std::uint64_t s = lower_bound(BoundKind::sat_3ap, n).ceiling;
        CHECK(3 * s * s - s >= 2 * n);
        CHECK((s == 1 || 3 * (s - 1) * (s - 1) - (s - 1) < 2 * n));
        const std::uint64_t w = lower_bound(BoundKind::sat_w, n).ceiling;
        CHECK(w * w >= n);
        CHECK((w - 1) * (w - 1) < n);
        const std::uint64_t d = lower_bound(BoundKind::sat_diag, n).ceiling;
        CHECK(d * d + d >= 2 * n);
        CHECK((d == 1 || (d - 1) * (d - 1) + (d - 1) < 2 * n));
    }

    CHECK_THROWS_AS(lower_bound(BoundKind::sat_w, 0), std::invalid_argument);
}

TEST_CASE("minimum saturating sets") {
    const Predicate tw = Predicate::saturating(WeightFamily::two_minus_one());

    const SearchResult z3 = min_saturating(zn(3), tw);
    CHECK(z3.found);
    CHECK(z3.min_size == 2);
    CHECK(witness_of(z3) == std::vector<std::uint64_t>{0, 1});
    CHECK(z3.exhaustive);
    CHECK(!z3.none_exists);

    const SearchResult z7 = min_saturating(zn(7), tw);
    CHECK(z7.min_size == 3);
    CHECK(witness_of(z7) == std::vector<std::uint64_t>{0, 1, 2});

    const SearchResult z5 = min_saturating(zn(5), tw);
    CHECK(z5.min_size == 3);
    CHECK(witness_of(z5) == std::vector<std::uint64_t>{0, 1, 2});

    // Trivial group: the empty set cannot cover the lone element.
    const SearchResult t = min_saturating(zn(1), tw);
    CHECK(t.min_size == 1);
    CHECK(witness_of(t) == std::vector<std::uint64_t>{0});

    // Witnesses really satisfy the predicate.
    for (const SearchResult* r : {&z3, &z7, &z5})
        CHECK(verify(zn(r->witness->group().order), *r->witness, tw).holds);

    CHECK_THROWS_AS(min_saturating(zn(7), Predicate::three_ap_free()), std::invalid_argument);
    CHECK_THROWS_AS(min_saturating(zn(7), Predicate::complete_three_ap()),
                    std::invalid_argument);
    CHECK_THROWS_AS(min_saturating(zn(7), Predicate::saturating(WeightFamily{})),
                    std::invalid_argument);
}

TEST_CASE("minimum three-ap saturating sets") {
    const SearchResult z9 = min_saturating(zn(9), Predicate::three_ap_saturating());
    CHECK(z9.min_size == 3);
    CHECK(witness_of(z9) == std::vector<std::uint64_t>{0, 1, 2});
    CHECK(verify(zn(9), *z9.witness, Predicate::three_ap_saturating()).holds);

    // Even order engages the doubling-kernel term in the pair capacity.
    const SearchResult z8 = min_saturating(zn(8), Predicate::three_ap_saturating());
    CHECK(z8.found);
    CHECK(verify(zn(8), *z8.witness, Predicate::three_ap_saturating()).holds);
    const BoundValue b = lower_bound(BoundKind::sat_3ap, 8);
    CHECK(*z8.min_size >= b.ceiling);
}

TEST_CASE("minimum complete sets and none-exists verdicts") {
    const Predicate ctw = Predicate::complete(WeightFamily::two_minus_one());

    const SearchResult z7 = min_complete_avoiding(zn(7), ctw);
    CHECK(z7.found);
    CHECK(z7.min_size == 3);
    CHECK(witness_of(z7) == std::vector<std::uint64_t>{0, 1, 3});
    CHECK(verify(zn(7), *z7.witness, ctw).holds);

    const SearchResult z16 = min_complete_avoiding(zn(16), ctw);
    CHECK(z16.min_size == 4);
    CHECK(witness_of(z16) == std::vector<std::uint64_t>{0, 1, 4, 5});
    CHECK(verify(zn(16), *z16.witness, ctw).holds);

    // Z_5 admits no complete (2,-1)-avoiding set at all.
    const SearchResult z5 = min_complete_avoiding(zn(5), ctw);
    CHECK(!z5.found);
    CHECK(z5.none_exists);
    CHECK(z5.exhaustive);
    CHECK(!z5.witness.has_value());

    CHECK_THROWS_AS(min_complete_avoiding(zn(7), Predicate::three_ap_saturating()),
                    std::invalid_argument);
    CHECK_THROWS_AS(min_complete_avoiding(zn(7), Predicate::sidon()), std::invalid_argument);
}

TEST_CASE("minimum complete progression-free sets in vector spaces") {
    const Ambient f3 = Ambient::of_group(Group::make({3, 3}));
    const SearchResult r3 = min_complete_avoiding(f3, Predicate::complete_three_ap());
    CHECK(r3.min_size == 4);
    CHECK(witness_of(r3) == std::vector<std::uint64_t>{0, 1, 3, 4});
    CHECK(verify(f3, *r3.witness, Predicate::complete_three_ap()).holds);

    const Ambient f5 = Ambient::of_group(Group::make({5, 5}));
    const SearchResult r5 = min_complete_avoiding(f5, Predicate::complete_three_ap());
    CHECK(r5.min_size == 5);
    CHECK(witness_of(r5) == std::vector<std::uint64_t>{0, 1, 5, 7, 17});
    CHECK(verify(f5, *r5.witness, Predicate::complete_three_ap()).holds);
}

TEST_CASE("line saturation search over small fields") {
    // Over F_2 the line family is empty, so only the full space saturates.
    const Ambient f2 = Ambient::of_field(FieldSpec::make(2, 1), 2);
    const SearchResult r = min_saturating(f2, Predicate::line_saturating());
    CHECK(r.min_size == 4);
    CHECK(witness_of(r) == std::vector<std::uint64_t>{0, 1, 2, 3});

    // Over F_3 line saturation coincides with 3-AP saturation.
    const Ambient f3 = Ambient::of_field(FieldSpec::make(3, 1), 2);
    const SearchResult l3 = min_saturating(f3, Predicate::line_saturating());
    const SearchResult a3 = min_saturating(f3, Predicate::three_ap_saturating());
    CHECK(l3.min_size == a3.min_size);
    CHECK(witness_of(l3) == witness_of(a3));

    CHECK_THROWS_AS(min_saturating(zn(9), Predicate::line_saturating()),
                    std::invalid_argument);
}

TEST_CASE("budget exhaustion and size limits") {
    const Predicate ctw = Predicate::complete(WeightFamily::two_minus_one());

    SearchOptions tiny;
    tiny.node_budget = 1;
    const SearchResult r = min_complete_avoiding(zn(16), ctw, tiny);
    CHECK(!r.exhaustive);
    CHECK(!r.found);
    CHECK(!r.none_exists);
    CHECK(r.nodes >= 1);

    SearchOptions capped;
    capped.size_limit = 3;
    const SearchResult c = min_complete_avoiding(zn(16), ctw, capped);
    CHECK(c.exhaustive);
    CHECK(!c.found);
    CHECK(!c.none_exists);  // sizes above the cap were never examined

    SearchOptions exact;
    exact.size_limit = 4;
    const SearchResult e = min_complete_avoiding(zn(16), ctw, exact);
    CHECK(e.found);
    CHECK(e.min_size == 4);
}

TEST_CASE("search determinism") {
    const Predicate p = Predicate::complete_three_ap();
    const Ambient a = Ambient::of_group(Group::make({3, 3}));
    const SearchResult r1 = min_complete_avoiding(a, p);
    const SearchResult r2 = min_complete_avoiding(a, p);
    CHECK(r1.nodes == r2.nodes);
    CHECK(r1.min_size == r2.min_size);
    CHECK(witness_of(r1) == witness_of(r2));
    CHECK(r1.nodes > 0);
}

TEST_CASE("audit chains") {
    const AuditChain c7 = audit_chain(Group::cyclic(7));
    CHECK(c7.exhaustive);
    CHECK(c7.chain_holds);
    CHECK(c7.sat_three_ap.min_size == 3);
    CHECK(c7.sat_two_minus_one.min_size == 3);
    CHECK(c7.a_three_ap.min_size == 3);
    CHECK(c7.a_two_minus_one.min_size == 3);

    const AuditChain c5 = audit_chain(Group::cyclic(5));
    CHECK(c5.exhaustive);
    CHECK(c5.chain_holds);
    CHECK(c5.sat_three_ap.min_size == 2);
    CHECK(c5.sat_two_minus_one.min_size == 3);
    CHECK(c5.a_three_ap.min_size == 2);
    CHECK(c5.a_two_minus_one.none_exists);

    const AuditChain c9 = audit_chain(Group::cyclic(9));
    CHECK(c9.chain_holds);
    CHECK(c9.sat_three_ap.min_size == 3);
    CHECK(c9.sat_two_minus_one.min_size == 4);
    CHECK(c9.a_three_ap.min_size == 4);
    CHECK(c9.a_two_minus_one.min_size == 4);

    const AuditChain c1 = audit_chain(Group::cyclic(1));
    CHECK(c1.chain_holds);
    CHECK(c1.sat_three_ap.min_size == 1);
    CHECK(c1.a_two_minus_one.min_size == 1);
}

TEST_CASE("search minima never undercut the closed-form bounds") {
    for (std::uint64_t m : {3ull, 5ull, 7ull, 9ull, 11ull}) {
        const SearchResult s3 = min_saturating(zn(m), Predicate::three_ap_saturating());
        CHECK(*s3.min_size >= lower_bound(BoundKind::sat_3ap, m).ceiling);
        const SearchResult sw =
            min_saturating(zn(m), Predicate::saturating(WeightFamily::two_minus_one()));
        CHECK(*sw.min_size >= lower_bound(BoundKind::sat_w, m).ceiling);
    }
}
