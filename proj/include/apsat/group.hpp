#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "apsat/bitset.hpp"

namespace apsat {

/** Modular inverse of a modulo m, in [0, m). Throws std::domain_error
 *  when gcd(a, m) != 1.  By convention the inverse modulo 1 is 0. */
std::uint64_t mod_inverse(std::int64_t a, std::uint64_t m);

/** A finite abelian group presented as a product of cyclic factors
 *  Z_{m_1} x ... x Z_{m_r}.
 *
 * Elements are canonically stored as indices in [0, order).  The codec is
 * mixed radix with coords[0] most significant: index((c_1,...,c_r)) =
 * ((c_1 * m_2 + c_2) * m_3 + c_3) * ... .  For Z_3 x Z_3 the element (1,2)
 * has index 5.
 */
struct Group {
    std::vector<std::uint64_t> factors;
    std::uint64_t order = 1;
    std::uint64_t exponent = 1;

    /** Builds a group from its cyclic factor list (each factor >= 1,
     *  list non-empty, total order capped at 2^32). */
    static Group make(std::vector<std::uint64_t> factors);
    static Group cyclic(std::uint64_t m) { return make({m}); }

    std::size_t rank() const { return factors.size(); }

    std::uint64_t encode(std::span<const std::uint64_t> coords) const;
    std::vector<std::uint64_t> decode(std::uint64_t index) const;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;

    /** Additive order of the element with the given index. */
    std::uint64_t element_order(std::uint64_t a) const;

    bool operator==(const Group& other) const { return factors == other.factors; }
};

/** A rational coefficient num/den with den > 0 and gcd(num, den) = 1.
 *
 * A coefficient acts on a group element componentwise as multiplication
 * by num * den^{-1} mod m_i; the denominator must be coprime to the
 * group exponent at application time.
 */
struct Coefficient {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Coefficient integer(std::int64_t n) { return Coefficient{n, 1}; }
    /** Normalises sign and reduces by gcd; throws on zero denominator. */
    static Coefficient ratio(std::int64_t num, std::int64_t den);

    bool is_integer() const { return den == 1; }
    std::string str() const;  // "2", "-1", "1/2", ...

    bool operator==(const Coefficient&) const = default;
};

/** Applies a coefficient to one element. Throws std::domain_error when the
 *  denominator is not invertible modulo the group exponent. */
std::uint64_t coeff_apply(const Group& g, const Coefficient& c, std::uint64_t a);

/** Action table of a coefficient over the whole group: t[x] = c * x. */
std::vector<std::uint64_t> coeff_action_table(const Group& g, const Coefficient& c);

/** An ordered pair of coefficients (lambda_1, lambda_2) used in the
 *  expressions lambda_1 * a' + lambda_2 * a''. */
struct WeightPair {
    Coefficient lambda1;
    Coefficient lambda2;

    std::string str() const;  // "(2,-1)", "(1/2,1/2)", ...
    bool operator==(const WeightPair&) const = default;
};

/** lambda_1 * a + lambda_2 * b evaluated in g. */
std::uint64_t weight_eval(const Group& g, const WeightPair& w, std::uint64_t a,
                          std::uint64_t b);

/** A finite set of coefficient pairs.
 *
 * Either `pairs` (rational coefficients acting on any group) or
 * `scalar_pairs` (field scalars, stored as field-element indices and only
 * meaningful over a field-mode ambient space) is populated, never both.
 */
struct WeightFamily {
    std::vector<WeightPair> pairs;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> scalar_pairs;

    bool field_mode() const { return !scalar_pairs.empty(); }
    std::size_t size() const {
        return field_mode() ? scalar_pairs.size() : pairs.size();
    }
    bool empty() const { return pairs.empty() && scalar_pairs.empty(); }
    std::string str() const;

    static WeightFamily single(Coefficient l1, Coefficient l2);
    static WeightFamily two_minus_one();   // {(2,-1)}
    static WeightFamily one_one();         // {(1,1)}
    static WeightFamily one_minus_one();   // {(1,-1)}
    static WeightFamily half_half();       // {(1/2,1/2)}

    bool operator==(const WeightFamily&) const = default;
};

/** An immutable subset of a group, stored both as a sorted index list and
 *  as a bitset (the two representations always agree). */
class PointSet {
public:
    explicit PointSet(Group g);

    /** Sorts, deduplicates and range-checks the given indices. */
    static PointSet from_indices(Group g, std::vector<std::uint64_t> indices);
    static PointSet full(Group g);

    const Group& group() const { return group_; }
    bool contains(std::uint64_t index) const { return bits_.test(index); }
    std::uint64_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    const std::vector<std::uint64_t>& indices() const { return indices_; }
    const Bitset& bits() const { return bits_; }

    PointSet complement() const;

    bool operator==(const PointSet& other) const {
        return group_ == other.group_ && indices_ == other.indices_;
    }

private:
    Group group_;
    Bitset bits_;
    std::vector<std::uint64_t> indices_;
};

/** A + B, or the restricted sumset {a + b : a != b} when `restricted`.
 *  Both sets must live in the same group. */
PointSet sumset(const PointSet& a, const PointSet& b, bool restricted = false);

}  // namespace apsat
