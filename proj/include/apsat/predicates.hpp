#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "apsat/finite_field.hpp"
#include "apsat/group.hpp"

namespace apsat {

enum class PredicateKind {
    three_ap_free,        // no distinct x,y,z in S with 2x = y+z
    w_avoiding,           // no w in W and pairwise-distinct a,a',a'' in S with a = l1 a' + l2 a''
    three_ap_saturating,  // every x outside S: x = 2a-b or 2x = a+b, a != b in S
    w_saturating,         // every x outside S: x = l1 a + l2 b for some w, a != b in S
    complete_three_ap,    // three_ap_free and three_ap_saturating
    complete_w,           // w_avoiding and w_saturating
    sidon,                // all unordered pair sums (repeats allowed) distinct
    cap,                  // avoids the line family of the ambient field
    line_saturating,      // saturates with the line family of the ambient field
};

/** A verifiable property: a kind plus, for the W-parameterised kinds, the
 *  coefficient family.  cap and line_saturating derive their family from
 *  the ambient field. */
struct Predicate {
    PredicateKind kind = PredicateKind::three_ap_free;
    WeightFamily weights;

    static Predicate three_ap_free() { return {PredicateKind::three_ap_free, {}}; }
    static Predicate three_ap_saturating() { return {PredicateKind::three_ap_saturating, {}}; }
    static Predicate complete_three_ap() { return {PredicateKind::complete_three_ap, {}}; }
    static Predicate sidon() { return {PredicateKind::sidon, {}}; }
    static Predicate cap() { return {PredicateKind::cap, {}}; }
    static Predicate line_saturating() { return {PredicateKind::line_saturating, {}}; }
    static Predicate avoiding(WeightFamily w) { return {PredicateKind::w_avoiding, std::move(w)}; }
    static Predicate saturating(WeightFamily w) { return {PredicateKind::w_saturating, std::move(w)}; }
    static Predicate complete(WeightFamily w) { return {PredicateKind::complete_w, std::move(w)}; }

    /** Does the kind require an explicit weight family? */
    bool needs_weights() const;
    /** Kinds whose failure produces an avoidance triple. */
    bool has_avoidance_part() const;
    /** Kinds whose failure produces an uncovered element. */
    bool has_saturation_part() const;

    std::string name() const;  // CLI / certificate identifier

    bool operator==(const Predicate&) const = default;
};

/** Evidence for a failed check. */
struct Witness {
    enum class Type {
        avoid_triple,     // a = l1*a1 + l2*a2 (weight_index >= 0)
        three_ap_triple,  // 2*a = a1 + a2
        unsaturated,      // x has no admissible representation
        sidon_collision,  // sums[0]+sums[1] == sums[2]+sums[3]
    };

    Type type = Type::unsaturated;
    std::uint64_t a = 0, a1 = 0, a2 = 0;  // avoidance triples
    int weight_index = -1;                // position in the checked family
    std::uint64_t x = 0;                  // unsaturated element
    std::array<std::uint64_t, 4> sums{};  // sidon collisions

    /** Human-readable rendering, e.g. "2*2 = 1 + 3". */
    std::string describe() const;
};

struct VerificationReport {
    Predicate predicate;
    bool holds = false;
    std::optional<Witness> witness;
    double seconds = 0.0;
};

struct VerifyOptions {
    unsigned threads = 1;  // pair scans parallelise; results are thread-count independent
};

/** Checks a predicate on a point set.  The set must live in the ambient
 *  group; cap/line_saturating and field-scalar families additionally
 *  require a field-mode ambient.  Coefficients whose denominator is not
 *  invertible, or which act as the zero map on a nontrivial group, raise
 *  std::domain_error. */
VerificationReport verify(const Ambient& ambient, const PointSet& set,
                          const Predicate& predicate, const VerifyOptions& options = {});

/** Re-evaluates a witness against a set: returns true when the witness is
 *  genuine evidence that the predicate fails. */
bool witness_is_valid(const Ambient& ambient, const PointSet& set,
                      const Predicate& predicate, const Witness& witness);

/** Whole-group action tables (first[w][x] = lambda1 * x, second[w][x] =
 *  lambda2 * x) for each pair of a family, with the same applicability
 *  checks verify performs.  Shared with the exhaustive search layer. */
std::pair<std::vector<std::vector<std::uint64_t>>, std::vector<std::vector<std::uint64_t>>>
weight_action_tables(const Ambient& ambient, const WeightFamily& family);

}  // namespace apsat
