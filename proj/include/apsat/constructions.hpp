#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "apsat/finite_field.hpp"
#include "apsat/predicates.hpp"

namespace apsat {

/** Raised by a composition/transfer operation when an input fails the
 *  hypothesis guaranteeing the claimed property; the message names the
 *  violated hypothesis. */
class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** A constructed point set plus its provenance: the construction name,
 *  its parameters, the ambient space, the closed-form size prediction
 *  (when one exists) and the predicates the construction guarantees. */
struct ConstructionRecord {
    std::string name;
    std::vector<std::pair<std::string, std::string>> params;
    Ambient ambient;
    PointSet points;
    std::optional<std::uint64_t> predicted_size;
    std::vector<Predicate> claims;
};

/** The parabola {(x, x^2) : x in F_q} in F_q^2, for odd q.  Always Sidon
 *  and 3-AP free; complete 3-AP free exactly when -2 is a nonsquare. */
ConstructionRecord parabola(const FieldSpec& field);

/** Per-orbit selection rule for the <-2>-orbit avoider sets R / R*. */
enum class OrbitRule {
    triple,  // exponents e = 2 (mod 3), e < 3*floor(o/3): floor(o/3) per orbit
    pair,    // odd exponents e < 2*floor(o/2): floor(o/2) per orbit
};

/** R / R* over the nonzero elements of a group with gcd(|G|, 6) = 1:
 *  walks each orbit of x -> -2x starting from the smallest unvisited
 *  index and keeps the rule's exponent pattern. */
PointSet orbit_avoider(const Group& g, OrbitRule rule);

/** Field form of the avoider sets over F_q^* (characteristic not 2, 3),
 *  as sorted field-element indices. */
std::vector<std::uint64_t> orbit_avoider_field(const FieldSpec& field, OrbitRule rule);

/** Field form wrapped as a point set in the 1-dimensional field ambient. */
PointSet orbit_avoider_set(const FieldSpec& field, OrbitRule rule);

enum class LinesVariant {
    axes_symmetric,  // L  = {(0,r), (r,0) : r not in R}: 3-AP saturating
    axes_star,       // L* = {(0,r) : r not in R*} + the full axis {(r,0)}: (2,-1)-saturating
};

/** The saturating axis sets L / L* in F_q^2, with their exact closed-form
 *  sizes 2(q-1)(o - floor(o/3))/o and 2(q-1) - (q-1)floor(o/2)/o, where o
 *  is the multiplicative order of -2. */
ConstructionRecord lines_construction(const FieldSpec& field, LinesVariant variant);

enum class AxesVariant {
    symmetric,  // both axes thinned by the TRIPLE rule: 3-AP saturating
    star,       // full first axis, second thinned by the PAIR rule: (2,-1)-saturating
};

/** Two-axis saturating sets in a direct product A x B of cyclic-factor
 *  groups (SYMMETRIC needs gcd(|A||B|, 6) = 1; STAR needs |A| odd and
 *  gcd(|B|, 6) = 1). */
ConstructionRecord axes_product(const Group& a, const Group& b, AxesVariant variant);

/** Singer difference set in Z_M, M = q^2+q+1, q = 2^n: the trace-zero
 *  exponent set of GF(q^3) over GF(q), translated so that doubling fixes
 *  it.  Complete (2,-1)-avoiding of size q+1; requires 1 <= n <= 5. */
ConstructionRecord singer(std::uint64_t n);

/** Does {d - d' : d != d' in s} hit every nonzero element exactly once? */
bool is_perfect_difference_set(const Group& g, const PointSet& s);

/** The five-block additive basis (7t+3 integers including 0, largest
 *  10t^2+8t), embedded in Z_{20t^2+16t+1} so sums never wrap.  Its
 *  sumset S+S (repeats allowed) covers [0, 14t^2+10t-1]. */
ConstructionRecord mrose(std::uint64_t t);

/** Modular form: picks the least t with 14t^2+10t-1 >= m and reduces the
 *  blocks mod m (m odd); the result is (1/2,1/2)-saturating in Z_m. */
ConstructionRecord mrose_mod(std::uint64_t m);

/** Bijective base-4 digits of k >= 1 (digits in {1,2,3,4}, most
 *  significant first). */
std::vector<std::uint64_t> base4_encode(std::uint64_t k);
std::uint64_t base4_decode(std::span<const std::uint64_t> digits);

/** H_l = {sum v_i 4^i : v_i in {2,3}, i < l}, sorted (H_0 = {0}). */
std::vector<std::uint64_t> layer_h(std::uint64_t l);
/** K_l = [(4^l-1)/3, 4(4^l-1)/3], the l-digit window; |K_l| = 4^l. */
std::pair<std::uint64_t, std::uint64_t> layer_k(std::uint64_t l);

/** The quaternary-numeral (2,-1)-saturating set of Z_m (m >= 2), split
 *  into the three cases by where m falls against 4^n:
 *  case 2 (m = 4^n): H_n, complete;
 *  case 3 (3m >= 4^n+2): H_n mod m, complete when 3m > 2(4^n-1);
 *  case 4 (otherwise): H_{k-1} + ... + H_{n-1} mod m with k maximal such
 *  that 3m <= 4^n - 4^{k-1}; size 2^n - 2^{k-1} < sqrt(3m). */
ConstructionRecord gyok3_set(std::uint64_t m);

/** Seeded random 3-AP saturating set in an odd-order group with |G| > 5:
 *  samples H0 with density sqrt(ln(n-1)/(n-1)) and adds every element the
 *  pairs of H0 leave uncovered, so saturation holds by construction. */
ConstructionRecord random_saturating(const Group& g, std::uint64_t seed);

enum class ProductMode {
    ap_free,                // factors 3-AP free (+ order > 2 differences in even groups)
    one_one_avoid,          // factors (1,1)-avoiding, zero excluded
    w_avoid_line,           // factors W-avoiding, all pairs summing to 1
    w_sat,                  // factors W-saturating, W a single pair summing to 1
    twominus_or_half_sat,   // w = (2,-1), or (1/2,1/2) with odd factors
    half_half_via_doubling, // factors (1,1)-saturating with 0: (1/2)(2H x 2H')
    one_minus_one_sat,      // factors (1,-1)-saturating with 0
};

/** Direct product H x H' with the mode's transfer guarantee.  Hypotheses
 *  are verified on the inputs and a HypothesisError (naming the failed
 *  hypothesis) is raised instead of emitting an unsound claim. */
ConstructionRecord product_compose(const Ambient& a, const PointSet& h,
                                   const Ambient& b, const PointSet& hprime,
                                   ProductMode mode, const WeightFamily& weights = {});

/** {lambda * s + d : s in S} in a field-mode ambient; lambda != 0. */
PointSet affine_transform(const Ambient& ambient, const PointSet& s,
                          std::uint64_t lambda, std::uint64_t translate);

/** Cyclic subgroup composition X = {a*n + b : a in S, b in T} in Z_{nm}
 *  for S in Z_m, T in Z_n and integer weights with w1 + w2 = 1; this is
 *  the subgroup/quotient composition along Z_m = <n> <= Z_{nm} with coset
 *  representatives [0, n).  Claims the strongest of saturating / avoiding
 *  / complete whose hypotheses (including the order-of-difference
 *  condition for avoidance) verify on the factors. */
ConstructionRecord subgroup_compose(const PointSet& s, const PointSet& t,
                                    std::int64_t w1, std::int64_t w2);

}  // namespace apsat
