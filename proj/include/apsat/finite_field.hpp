#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apsat/group.hpp"

namespace apsat {

/** The finite field GF(p^k), built deterministically.
 *
 * Elements are stored as indices in [0, q): the element with polynomial
 * coordinates (c_0, ..., c_{k-1}) over F_p (c_0 the constant term) has
 * index sum c_i * p^i.  The reduction modulus is the monic irreducible of
 * degree k whose index (same encoding applied to its non-leading
 * coefficients) is smallest, and the canonical primitive element is the
 * element of smallest index whose multiplicative order is q - 1.
 */
struct FieldSpec {
    std::uint64_t p = 2;   // prime characteristic
    std::uint64_t k = 1;   // extension degree
    std::uint64_t q = 2;   // p^k
    std::vector<std::uint64_t> modulus;  // length k+1, low-to-high, monic
    std::uint64_t primitive_element = 0;

    static FieldSpec make(std::uint64_t p, std::uint64_t k);

    bool prime_field() const { return k == 1; }

    std::vector<std::uint64_t> digits(std::uint64_t x) const;
    std::uint64_t from_digits(std::span<const std::uint64_t> d) const;

    std::uint64_t zero() const { return 0; }
    std::uint64_t one() const { return 1; }
    /** Embeds an integer via n -> (n mod p) * 1. */
    std::uint64_t from_integer(std::int64_t n) const;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    /** Multiplicative inverse; throws std::domain_error on zero. */
    std::uint64_t inv(std::uint64_t a) const;

    /** Multiplicative order; throws std::domain_error on zero. */
    std::uint64_t element_order(std::uint64_t a) const;

    /** Trace into the subfield GF(p^h): sum of x^{p^{h*i}}, i < k/h.
     *  Requires h >= 1 and h | k; the result is fixed by x -> x^{p^h}. */
    std::uint64_t trace_to_subfield(std::uint64_t x, std::uint64_t h) const;

    /** Euler-criterion squareness test; 0 is a square, and in
     *  characteristic 2 every element is a square. */
    bool is_square(std::uint64_t x) const;

    std::string modulus_str() const;  // e.g. "x^3+x+1"

    bool operator==(const FieldSpec& other) const {
        return p == other.p && k == other.k && modulus == other.modulus;
    }
};

/** The ambient space predicates and constructions operate in: a plain
 *  finite abelian group, or the vector space F_{p^k}^dim whose additive
 *  image is Z_p^{k*dim}.
 *
 * In field mode a vector (v_1,...,v_dim) of field-element indices is
 * flattened to group coordinates by concatenating each element's base-p
 * digit vector (low digit first), and the group codec then applies.
 */
struct Ambient {
    Group group;
    std::optional<FieldSpec> field;
    std::uint64_t dim = 0;

    static Ambient of_group(Group g);
    static Ambient of_field(FieldSpec f, std::uint64_t dim);

    bool field_mode() const { return field.has_value(); }

    /** Field-vector codec (field mode only). */
    std::uint64_t vec_to_index(std::span<const std::uint64_t> elems) const;
    std::vector<std::uint64_t> index_to_vec(std::uint64_t index) const;

    /** Componentwise field-scalar action lambda * x (field mode only). */
    std::uint64_t scalar_mul(std::uint64_t lambda, std::uint64_t x) const;

    bool operator==(const Ambient& other) const;
};

/** The coefficient family {(lambda, 1 - lambda) : lambda in F_q \ {0,1}},
 *  stored as field-scalar pairs ordered by the index of lambda.  A set is
 *  a cap (no three points on an affine line) exactly when it avoids this
 *  family. */
WeightFamily make_line_family(const FieldSpec& f);

}  // namespace apsat
