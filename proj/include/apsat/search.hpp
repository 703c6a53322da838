#pragma once

#include <cstdint>
#include <optional>

#include "apsat/predicates.hpp"

namespace apsat {

/** The three closed-form lower bounds on saturating-set size. */
enum class BoundKind {
    sat_3ap,   // |H| >= sqrt(2n/3 + 1/36) + 1/6
    sat_w,     // |H| >= ceil(sqrt(n)), single coefficient pair
    sat_diag,  // |H| >= sqrt(2n + 1/4) - 1/2, diagonal pairs (lambda, lambda)
};

struct BoundValue {
    double value = 0.0;        // exact formula value
    std::uint64_t ceiling = 0; // smallest integer satisfying the bound
};

/** Evaluates a bound for a group of order n >= 1.  The ceiling is computed
 *  from the equivalent integer inequality (3s^2-s >= 2n, s^2 >= n,
 *  s^2+s >= 2n), never from floating point. */
BoundValue lower_bound(BoundKind kind, std::uint64_t n);

struct SearchOptions {
    std::uint64_t node_budget = 1'000'000'000;   // candidate insertions explored
    std::optional<std::uint64_t> size_limit;     // optional cap on the layer size
};

struct SearchResult {
    bool found = false;        // witness of minimum size located
    bool none_exists = false;  // every admissible size was exhausted without a witness
    std::optional<std::uint64_t> min_size;
    std::optional<PointSet> witness;  // lexicographically smallest at min_size
    std::uint64_t nodes = 0;
    bool exhaustive = true;  // false when the node budget cut the search short
};

/** Minimum-size saturating set for a three_ap_saturating, w_saturating or
 *  line_saturating predicate: iterates sizes upward from a sound coverage
 *  bound, depth-first over lexicographically increasing index tuples with
 *  coverage pruning.  Deterministic. */
SearchResult min_saturating(const Ambient& ambient, const Predicate& predicate,
                            const SearchOptions& options = {});

/** Minimum-size complete set for complete_three_ap / complete_w; reports
 *  none_exists after exhausting every size up to |G|. */
SearchResult min_complete_avoiding(const Ambient& ambient, const Predicate& predicate,
                                   const SearchOptions& options = {});

/** The four minima of the inequality diagram for an odd-order group, with
 *  the diagram checked treating "none exists" as infinite:
 *  sat(3AP) <= sat((2,-1)) <= a((2,-1)) and sat(3AP) <= a(3AP) <= a((2,-1)). */
struct AuditChain {
    SearchResult sat_three_ap;
    SearchResult sat_two_minus_one;
    SearchResult a_three_ap;
    SearchResult a_two_minus_one;
    bool exhaustive = false;
    bool chain_holds = false;
};

AuditChain audit_chain(const Group& g, const SearchOptions& options = {});

}  // namespace apsat
