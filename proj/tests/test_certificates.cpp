#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apsat/certificates.hpp"
#include "apsat/constructions.hpp"

using namespace apsat;

namespace {

std::string error_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("group-spec parsing and printing") {
    for (const std::string s : {"Z7", "Z3xZ9", "Z2^3", "Z2^2xZ3", "Z9", "F5^1:2", "F2^3:1"}) {
        const Ambient a = parse_group_spec(s);
        CHECK(print_group_spec(a) == s);
    }

    CHECK(print_group_spec(parse_group_spec("Z2xZ2xZ2")) == "Z2^3");
    CHECK(print_group_spec(parse_group_spec("Z3xZ3xZ5")) == "Z3^2xZ5");

    const Ambient f = parse_group_spec("F5^1:2");
    CHECK(f.field_mode());
    CHECK(f.dim == 2);
    CHECK(f.group.factors == std::vector<std::uint64_t>{5, 5});
    const Ambient g = parse_group_spec("Z5^2");
    CHECK(!g.field_mode());
    CHECK(g.group.factors == f.group.factors);

    const Ambient e = parse_group_spec("F2^3:1");
    CHECK(e.field->q == 8);
    CHECK(e.group.factors == std::vector<std::uint64_t>{2, 2, 2});
}

TEST_CASE("group-spec errors carry the offending position") {
    for (const std::string bad : {"", "Z", "Z0", "z7", "Z7x", "Z3yZ9", "Z2^0", "Z2^4097",
                                  "F4^1:1", "F5^0:2", "F5^1:0", "F5^1", "Z7 ", "Q8"}) {
        CHECK_THROWS_AS(parse_group_spec(bad), std::invalid_argument);
    }
    const std::string msg = error_of([] { parse_group_spec("Z3yZ9"); });
    CHECK(contains(msg, "position"));
    CHECK(contains(msg, "Z3yZ9"));
}

TEST_CASE("predicate names round-trip") {
    for (const char* name : {"3ap-free", "3ap-saturating", "complete-3ap", "avoiding",
                             "saturating", "complete", "sidon", "cap", "line-saturating"}) {
        const auto kind = predicate_kind_from_name(name);
        REQUIRE(kind.has_value());
        CHECK(Predicate{*kind, {}}.name() == name);
    }
    CHECK(!predicate_kind_from_name("bogus").has_value());
    CHECK(!predicate_kind_from_name("").has_value());
}

TEST_CASE("decimal strings") {
    CHECK(decimal_string(0.0) == "0.000000");
    CHECK(decimal_string(2.5) == "2.500000");
    CHECK(decimal_string(3.7720019116502855) == "3.772002");
}

TEST_CASE("certificate JSON round-trips byte for byte") {
    const Ambient a = Ambient::of_group(Group::cyclic(7));
    const PointSet s = PointSet::from_indices(a.group, {0, 1, 3});
    const Predicate p = Predicate::complete(WeightFamily::two_minus_one());
    Certificate cert = make_certificate(a, s, verify(a, s, p));
    CHECK(cert.group == "Z7");
    CHECK(cert.result);
    CHECK(cert.set == std::vector<std::uint64_t>{0, 1, 3});

    cert.seconds = "0.001234";  // pin the timing for reproducible bytes
    cert.construction = Certificate::Construction{"demo", {{"m", "7"}}, 42};
    cert.search = Certificate::Search{3, false, 17, true};
    cert.bounds = {{"sat_w", "2.645751"}};

    const std::string text = certificate_to_json(cert);
    CHECK(text.back() == '\n');
    const Certificate back = certificate_from_json(text);
    CHECK(certificate_to_json(back) == text);
    CHECK(back.predicate == p);
    CHECK(back.set == cert.set);
    CHECK(back.result == cert.result);
    CHECK(back.seconds == "0.001234");
    REQUIRE(back.construction.has_value());
    CHECK(back.construction->name == "demo");
    CHECK(back.construction->params == cert.construction->params);
    CHECK(back.construction->seed == 42);
    REQUIRE(back.search.has_value());
    CHECK(back.search->minimum == 3);
    CHECK(back.search->nodes == 17);
    CHECK(back.bounds == cert.bounds);
}

TEST_CASE("rational weights serialize as integer quadruples") {
    const Ambient a = Ambient::of_group(Group::cyclic(9));
    const PointSet s = PointSet::from_indices(a.group, {0, 1});
    const Predicate p = Predicate::saturating(WeightFamily::half_half());
    const Certificate cert = make_certificate(a, s, verify(a, s, p));
    const std::string text = certificate_to_json(cert);
    CHECK(contains(text, "\"weights\""));
    const Certificate back = certificate_from_json(text);
    REQUIRE(back.predicate.weights.pairs.size() == 1);
    CHECK(back.predicate.weights.pairs[0].lambda1 == Coefficient::ratio(1, 2));
    CHECK(back.predicate.weights.pairs[0].lambda2 == Coefficient::ratio(1, 2));
}

TEST_CASE("field-scalar weights serialize as index pairs") {
    const Ambient a = Ambient::of_field(FieldSpec::make(2, 2), 1);  // GF(4)
    const PointSet s = PointSet::from_indices(a.group, {0, 1});
    const Predicate p = Predicate::avoiding(make_line_family(*a.field));
    const Certificate cert = make_certificate(a, s, verify(a, s, p));
    const std::string text = certificate_to_json(cert);
    CHECK(contains(text, "\"field_weights\""));
    const Certificate back = certificate_from_json(text);
    CHECK(back.predicate.weights.scalar_pairs ==
          std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 3}, {3, 2}});
}

TEST_CASE("witnesses round-trip for every type") {
    struct Case {
        Ambient a;
        std::vector<std::uint64_t> set;
        Predicate p;
    };
    const std::vector<Case> cases = {
        {Ambient::of_group(Group::cyclic(5)), {1, 2, 3}, Predicate::three_ap_free()},
        {Ambient::of_group(Group::cyclic(7)),
         {1, 2, 3},
         Predicate::avoiding(WeightFamily::two_minus_one())},
        {Ambient::of_group(Group::cyclic(7)), {0, 1}, Predicate::complete_three_ap()},
        {Ambient::of_group(Group::cyclic(10)), {0, 1, 2}, Predicate::sidon()},
    };
    for (const Case& c : cases) {
        const PointSet s = PointSet::from_indices(c.a.group, c.set);
        const VerificationReport rep = verify(c.a, s, c.p);
        REQUIRE(!rep.holds);
        REQUIRE(rep.witness.has_value());
        const Certificate cert = make_certificate(c.a, s, rep);
        const Certificate back = certificate_from_json(certificate_to_json(cert));
        REQUIRE(back.witness.has_value());
        CHECK(back.witness->type == rep.witness->type);
        CHECK(back.witness->a == rep.witness->a);
        CHECK(back.witness->a1 == rep.witness->a1);
        CHECK(back.witness->a2 == rep.witness->a2);
        CHECK(back.witness->weight_index == rep.witness->weight_index);
        CHECK(back.witness->x == rep.witness->x);
        CHECK(back.witness->sums == rep.witness->sums);
        CHECK(!back.result);
    }
}

TEST_CASE("reverify reproduces the certified outcome") {
    const ConstructionRecord lines =
        lines_construction(FieldSpec::make(5, 1), LinesVariant::axes_symmetric);
    const VerificationReport rep =
        verify(lines.ambient, lines.points, Predicate::three_ap_saturating());
    REQUIRE(rep.holds);
    Certificate cert = make_certificate(lines.ambient, lines.points, rep);
    CHECK(cert.group == "F5^1:2");
    CHECK(reverify(cert).holds);

    // Tampering with the set flips the verdict.
    Certificate tampered = cert;
    tampered.set.erase(std::find(tampered.set.begin(), tampered.set.end(), 5));
    CHECK(!reverify(tampered).holds);

    // A none-exists certificate records result = false over the empty set,
    // and reverification agrees that the empty set fails the predicate.
    Certificate none;
    none.group = "Z5";
    none.predicate = Predicate::complete(WeightFamily::two_minus_one());
    none.result = false;
    none.search = Certificate::Search{std::nullopt, true, 57, true};
    const Certificate nback = certificate_from_json(certificate_to_json(none));
    CHECK(nback.search->none_exists);
    CHECK(!nback.search->minimum.has_value());
    CHECK(reverify(nback).holds == nback.result);
}

TEST_CASE("certificate validation rejects corrupt input") {
    const Ambient a = Ambient::of_group(Group::cyclic(7));
    const PointSet s = PointSet::from_indices(a.group, {0, 1, 3});
    const Predicate p = Predicate::complete(WeightFamily::two_minus_one());
    const std::string good = certificate_to_json(make_certificate(a, s, verify(a, s, p)));

    auto mutate = [&](const std::string& from, const std::string& to) {
        std::string t = good;
        const auto pos = t.find(from);
        REQUIRE(pos != std::string::npos);
        t.replace(pos, from.size(), to);
        return t;
    };

    CHECK_THROWS_AS(certificate_from_json("not json"), std::runtime_error);
    CHECK_THROWS_AS(certificate_from_json("[]"), std::runtime_error);
    CHECK_THROWS_AS(certificate_from_json(mutate("\"schema_version\": 1", "\"schema_version\": 2")),
                    std::runtime_error);
    CHECK(contains(error_of([&] {
                       certificate_from_json(mutate("\"schema_version\": 1", "\"schema_version\": 2"));
                   }),
                   "schema_version"));
    CHECK_THROWS_AS(certificate_from_json(mutate("\"predicate\": \"complete\"",
                                                 "\"predicate\": \"nonsense\"")),
                    std::runtime_error);
    CHECK_THROWS_AS(certificate_from_json(mutate("\"group\": \"Z7\"", "\"group\": \"Z%\"")),
                    std::runtime_error);
    // Sets must be strictly increasing and in range.
    CHECK_THROWS_AS(certificate_from_json(mutate("[\n    0,\n    1,\n    3\n  ]",
                                                 "[\n    1,\n    1,\n    3\n  ]")),
                    std::runtime_error);
    CHECK_THROWS_AS(certificate_from_json(mutate("[\n    0,\n    1,\n    3\n  ]",
                                                 "[\n    0,\n    1,\n    9\n  ]")),
                    std::runtime_error);
    // Unknown keys are rejected.
    CHECK_THROWS_AS(certificate_from_json(mutate("\"result\"", "\"bogus\": 1,\n  \"result\"")),
                    std::runtime_error);
    CHECK(contains(error_of([&] {
                       certificate_from_json(mutate("\"result\"", "\"bogus\": 1,\n  \"result\""));
                   }),
                   "certificate:"));

    // Corrupt witnesses are named as such.
    const Ambient a5 = Ambient::of_group(Group::cyclic(5));
    const PointSet bad = PointSet::from_indices(a5.group, {1, 2, 3});
    const std::string wtext = certificate_to_json(
        make_certificate(a5, bad, verify(a5, bad, Predicate::three_ap_free())));
    std::string corrupted = wtext;
    const auto tpos = corrupted.find("\"3ap-triple\"");
    REQUIRE(tpos != std::string::npos);
    corrupted.replace(tpos, 12, "\"flimflam\"");
    CHECK(contains(error_of([&] { certificate_from_json(corrupted); }), "witness"));
}

TEST_CASE("certificates persist to disk") {
    const Ambient a = Ambient::of_group(Group::cyclic(7));
    const PointSet s = PointSet::from_indices(a.group, {1, 2, 4});
    Certificate cert = make_certificate(a, s, verify(a, s, Predicate::sidon()));
    cert.seconds = "0.000100";

    const std::string path = "apsat_test_certificate.json";
    save_certificate(cert, path);
    const Certificate back = load_certificate(path);
    CHECK(certificate_to_json(back) == certificate_to_json(cert));
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_certificate("definitely_missing_directory/nope.json"),
                    std::runtime_error);
}
