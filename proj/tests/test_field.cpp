#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "apsat/finite_field.hpp"

using namespace apsat;

TEST_CASE("prime fields") {
    const FieldSpec f5 = FieldSpec::make(5, 1);
    CHECK(f5.q == 5);
    CHECK(f5.prime_field());
    CHECK(f5.modulus_str() == "x");  // prime fields keep the trivial modulus
    CHECK(f5.primitive_element == 2);
    CHECK(f5.add(3, 4) == 2);
    CHECK(f5.mul(3, 4) == 2);
    CHECK(f5.neg(2) == 3);
    CHECK(f5.sub(1, 3) == 3);
    CHECK(f5.inv(3) == 2);
    CHECK(f5.pow(2, 4) == 1);
    CHECK(f5.from_integer(-1) == 4);
    CHECK(f5.from_integer(7) == 2);

    const FieldSpec f101 = FieldSpec::make(101, 1);
    CHECK(f101.primitive_element == 2);
    CHECK(f101.element_order(2) == 100);
    CHECK(f101.element_order(100) == 2);  // -1
}

TEST_CASE("prime-field squares follow the Euler criterion") {
    const FieldSpec f7 = FieldSpec::make(7, 1);
    // Squares mod 7: {0, 1, 2, 4}.
    CHECK(f7.is_square(0));
    CHECK(f7.is_square(1));
    CHECK(f7.is_square(2));
    CHECK(!f7.is_square(3));
    CHECK(f7.is_square(4));
    CHECK(!f7.is_square(5));
    CHECK(!f7.is_square(6));

    // -2 is a square mod p=5,7 resolves differently: 3 mod 5 is nonsquare, 5 mod 7 is nonsquare.
    CHECK(!FieldSpec::make(5, 1).is_square(3));
    CHECK(!FieldSpec::make(7, 1).is_square(5));
    CHECK(FieldSpec::make(11, 1).is_square(9));   // -2 = 9 = 3^2 (mod 11)
    CHECK(FieldSpec::make(17, 1).is_square(15));  // -2 = 15 = 7^2 (mod 17)
}

TEST_CASE("deterministic extension-field construction") {
    const FieldSpec f8 = FieldSpec::make(2, 3);
    CHECK(f8.q == 8);
    CHECK(f8.modulus == std::vector<std::uint64_t>{1, 1, 0, 1});  // x^3 + x + 1
    CHECK(f8.modulus_str() == "x^3+x+1");

    const FieldSpec f9 = FieldSpec::make(3, 2);
    CHECK(f9.q == 9);
    CHECK(f9.modulus == std::vector<std::uint64_t>{1, 0, 1});  // x^2 + 1
    CHECK(f9.modulus_str() == "x^2+1");

    const FieldSpec f4 = FieldSpec::make(2, 2);
    CHECK(f4.modulus_str() == "x^2+x+1");

    CHECK_THROWS_AS(FieldSpec::make(4, 1), std::invalid_argument);  // not prime
    CHECK_THROWS_AS(FieldSpec::make(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::make(2, 25), std::invalid_argument);  // exceeds the 2^24 cap
}

TEST_CASE("digit codec") {
    const FieldSpec f9 = FieldSpec::make(3, 2);
    CHECK(f9.digits(5) == std::vector<std::uint64_t>{2, 1});  // 5 = 2 + 1*3
    const std::vector<std::uint64_t> d{2, 1};
    CHECK(f9.from_digits(d) == 5);
    const std::vector<std::uint64_t> bad{3, 0};
    CHECK_THROWS_AS(f9.from_digits(bad), std::out_of_range);
    const std::vector<std::uint64_t> wrong_len{1};
    CHECK_THROWS_AS(f9.from_digits(wrong_len), std::invalid_argument);
}

TEST_CASE("extension-field arithmetic satisfies the field axioms on GF(9)") {
    const FieldSpec f = FieldSpec::make(3, 2);
    for (std::uint64_t a = 0; a < f.q; ++a) {
        CHECK(f.add(a, f.neg(a)) == 0);
        CHECK(f.mul(a, 1) == a);
        if (a != 0) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.pow(a, f.q - 1) == 1);
            CHECK((f.q - 1) % f.element_order(a) == 0);
        }
        for (std::uint64_t b = 0; b < f.q; ++b) {
            CHECK(f.mul(a, b) == f.mul(b, a));
            for (std::uint64_t c = 0; c < f.q; ++c)
                CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
    }
    CHECK(f.element_order(f.primitive_element) == 8);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
    CHECK_THROWS_AS(f.element_order(0), std::domain_error);

    // In GF(9) with modulus x^2+1 the class of x (index 3) squares to -1 = 2.
    CHECK(f.mul(3, 3) == 2);
}

TEST_CASE("characteristic 2: every element is a square") {
    const FieldSpec f8 = FieldSpec::make(2, 3);
    for (std::uint64_t a = 0; a < f8.q; ++a) CHECK(f8.is_square(a));
}

TEST_CASE("trace to subfield") {
    const FieldSpec f4 = FieldSpec::make(2, 2);
    // alpha (index 2) satisfies alpha^2 + alpha + 1 = 0, so tr(alpha) = alpha + alpha^2 = 1.
    CHECK(f4.trace_to_subfield(2, 1) == 1);
    CHECK(f4.trace_to_subfield(0, 1) == 0);
    CHECK(f4.trace_to_subfield(1, 1) == 0);  // 1 + 1 = 0 in characteristic 2

    const FieldSpec f16 = FieldSpec::make(2, 4);
    for (std::uint64_t x = 0; x < f16.q; ++x) {
        const std::uint64_t t = f16.trace_to_subfield(x, 2);
        // The trace lands in the subfield fixed by y -> y^4.
        CHECK(f16.pow(t, 4) == t);
        // Full trace into F_2 is additive and lands in {0,1}.
        CHECK(f16.trace_to_subfield(x, 1) <= 1);
    }
    CHECK_THROWS_AS(f16.trace_to_subfield(1, 3), std::invalid_argument);
}

TEST_CASE("ambient spaces") {
    const Group z6 = Group::cyclic(6);
    const Ambient ag = Ambient::of_group(z6);
    CHECK(!ag.field_mode());
    CHECK(ag.group.order == 6);
    CHECK_THROWS_AS(ag.index_to_vec(0), std::logic_error);
    CHECK_THROWS_AS(ag.scalar_mul(1, 0), std::logic_error);

    const Ambient af = Ambient::of_field(FieldSpec::make(5, 1), 2);
    CHECK(af.field_mode());
    CHECK(af.dim == 2);
    CHECK(af.group.factors == std::vector<std::uint64_t>{5, 5});
    CHECK_THROWS_AS(Ambient::of_field(FieldSpec::make(5, 1), 0), std::invalid_argument);
}

TEST_CASE("field-vector codec over GF(4)^2") {
    const Ambient a = Ambient::of_field(FieldSpec::make(2, 2), 2);
    CHECK(a.group.order == 16);
    // (alpha, 1): alpha has digits (0,1), 1 has digits (1,0); concatenated
    // group coordinates (0,1,1,0) encode to ((0*2+1)*2+1)*2+0 = 6.
    const std::vector<std::uint64_t> v{2, 1};
    CHECK(a.vec_to_index(v) == 6);
    CHECK(a.index_to_vec(6) == std::vector<std::uint64_t>{2, 1});
    for (std::uint64_t i = 0; i < a.group.order; ++i)
        CHECK(a.vec_to_index(a.index_to_vec(i)) == i);
    const std::vector<std::uint64_t> wrong{1};
    CHECK_THROWS_AS(a.vec_to_index(wrong), std::invalid_argument);

    // scalar_mul acts componentwise: alpha * (alpha, 1) = (alpha^2, alpha) = (alpha+1, alpha).
    const std::uint64_t idx = a.scalar_mul(2, 6);
    CHECK(a.index_to_vec(idx) == std::vector<std::uint64_t>{3, 2});
}

TEST_CASE("scalar_mul agrees with repeated addition on prime fields") {
    const Ambient a = Ambient::of_field(FieldSpec::make(5, 1), 2);
    for (std::uint64_t x = 0; x < a.group.order; ++x) {
        CHECK(a.scalar_mul(0, x) == 0);
        CHECK(a.scalar_mul(1, x) == x);
        CHECK(a.scalar_mul(2, x) == a.group.add(x, x));
        CHECK(a.scalar_mul(3, x) == a.group.add(x, a.group.add(x, x)));
    }
}

TEST_CASE("line families") {
    // {(lambda, 1-lambda) : lambda != 0, 1}, ordered by lambda.
    const WeightFamily f3 = make_line_family(FieldSpec::make(3, 1));
    CHECK(f3.field_mode());
    CHECK(f3.scalar_pairs == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 2}});

    const WeightFamily f2 = make_line_family(FieldSpec::make(2, 1));
    CHECK(f2.empty());  // F_2 has no scalar outside {0,1}

    const FieldSpec gf4 = FieldSpec::make(2, 2);
    const WeightFamily f4 = make_line_family(gf4);
    REQUIRE(f4.scalar_pairs.size() == 2);
    for (const auto& [l1, l2] : f4.scalar_pairs) CHECK(gf4.add(l1, l2) == 1);
    CHECK(f4.scalar_pairs.front().first == 2);
    CHECK(f4.scalar_pairs.back().first == 3);

    const WeightFamily f5 = make_line_family(FieldSpec::make(5, 1));
    CHECK(f5.scalar_pairs == std::vector<std::pair<std::uint64_t, std::uint64_t>>{
                                 {2, 4}, {3, 3}, {4, 2}});
}
