#include "apsat/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "apsat/bitset.hpp"

namespace apsat {

namespace {

struct BudgetExhausted {};

bool bound_holds(BoundKind kind, std::uint64_t s, std::uint64_t n) {
    using u128 = unsigned __int128;
    const u128 S = s, N = n;
    switch (kind) {
        case BoundKind::sat_3ap: return 3 * S * S - S >= 2 * N;
        case BoundKind::sat_w: return S * S >= N;
        case BoundKind::sat_diag: return S * S + S >= 2 * N;
    }
    return false;
}

/** Smallest layer size worth searching: with s elements the ordered pairs
 *  can cover at most |W|*s*(s-1) values (weights) or s*(s-1) end terms plus
 *  t2*s*(s-1)/2 middle terms (three-term progressions, t2 = doubling kernel
 *  size), and the s members excuse themselves.  Anything smaller cannot
 *  saturate, so skipping those sizes keeps the sweep exhaustive. */
std::uint64_t start_layer(std::uint64_t n, bool three_ap, std::uint64_t t2_count,
                          std::uint64_t wcount) {
    if (!three_ap && wcount == 0) return n;  // empty family: only the full set works
    using u128 = unsigned __int128;
    for (std::uint64_t s = 1;; ++s) {
        const u128 S = s;
        const bool ok = three_ap
                            ? 2 * S + (2 + u128(t2_count)) * S * (S - 1) >= 2 * u128(n)
                            : u128(wcount) * S * (S - 1) + S >= u128(n);
        if (ok) return s;
    }
}

/** Depth-first enumeration of one layer (all subsets of a fixed size, in
 *  lexicographic index order) with incremental coverage counters. */
struct Layered {
    const Group* g = nullptr;
    std::uint64_t n = 0;
    bool three_ap = false;  // progression coverage rules vs weight tables
    bool complete = false;  // additionally enforce the avoidance part
    std::uint64_t budget = 0;
    std::uint64_t nodes = 0;

    // Weight mode: per-pair whole-group action tables.
    std::vector<std::vector<std::uint64_t>> t1, t2;
    // Progression mode: doubling table and its preimage buckets
    // (half_flat[half_off[v] .. half_off[v+1]) lists the x with 2x = v).
    std::vector<std::uint64_t> dbl;
    std::vector<std::uint64_t> half_flat, half_off;
    std::uint64_t cmax = 0;  // max values coverable by one unordered pair

    std::uint64_t s = 0;  // current layer size
    std::vector<std::uint64_t> cnt;
    Bitset in_set;
    std::uint64_t uncovered = 0;
    std::vector<std::uint64_t> chosen;
    std::vector<std::uint64_t> journal;  // one entry per counter increment

    void bump(std::uint64_t x) {
        if (++cnt[x] == 1 && !in_set.test(x)) --uncovered;
        journal.push_back(x);
    }

    /** Inserts v and records every new coverage incidence; returns false
     *  when complete mode detects an avoidance violation with v as an
     *  argument (the caller must still undo the insertion). */
    bool insert(std::uint64_t v) {
        if (++nodes > budget) throw BudgetExhausted{};
        in_set.set(v);
        if (cnt[v] == 0) --uncovered;
        bool ok = true;
        if (three_ap) {
            // Any progression created by v either targets v (end term
            // v = 2a-b, or middle term 2v = a+b) and was already counted in
            // cnt[v] by earlier insertions, or re-reads as such an
            // incidence, so the cnt[v] pre-check is the whole avoidance
            // test and no inline check is needed here.
            for (std::uint64_t a : chosen) {
                bump(g->sub(dbl[v], a));
                bump(g->sub(dbl[a], v));
                const std::uint64_t sum = g->add(v, a);
                for (std::uint64_t i = half_off[sum]; i < half_off[sum + 1]; ++i)
                    bump(half_flat[i]);
            }
        } else {
            for (std::uint64_t a : chosen) {
                for (std::size_t w = 0; w < t1.size(); ++w) {
                    const std::uint64_t xa = g->add(t1[w][v], t2[w][a]);
                    bump(xa);
                    if (complete && in_set.test(xa) && xa != v && xa != a) ok = false;
                    const std::uint64_t xb = g->add(t1[w][a], t2[w][v]);
                    bump(xb);
                    if (complete && in_set.test(xb) && xb != v && xb != a) ok = false;
                }
            }
        }
        chosen.push_back(v);
        return ok;
    }

    void erase(std::uint64_t v, std::size_t jstart) {
        for (std::size_t j = journal.size(); j > jstart; --j) {
            const std::uint64_t x = journal[j - 1];
            if (--cnt[x] == 0 && !in_set.test(x)) ++uncovered;
        }
        journal.resize(jstart);
        in_set.reset(v);
        if (cnt[v] == 0) ++uncovered;
        chosen.pop_back();
    }

    /** With k elements placed, can the s-k remaining slots still cover
     *  everything?  Future unordered pairs number C(s,2)-C(k,2), each
     *  covers at most cmax values, and each future member excuses itself. */
    bool capacity_ok(std::uint64_t k) const {
        using u128 = unsigned __int128;
        const u128 future_pairs = (u128(s) * (s - 1) - u128(k) * (k - 1)) / 2;
        return u128(uncovered) <= u128(s - k) + u128(cmax) * future_pairs;
    }

    bool dfs(std::uint64_t k) {
        if (k == s) return uncovered == 0;
        const std::uint64_t lo = k == 0 ? 0 : chosen.back() + 1;
        const std::uint64_t hi = n - s + k;  // leave room for the remaining slots
        for (std::uint64_t v = lo; v <= hi; ++v) {
            // In complete mode cnt[v] > 0 means some pair already in the
            // set expresses v, so v can never join this branch.
            if (complete && cnt[v] > 0) continue;
            const std::size_t jstart = journal.size();
            const bool ok = insert(v);
            if (ok && capacity_ok(k + 1) && dfs(k + 1)) return true;
            erase(v, jstart);
        }
        return false;
    }

    std::optional<std::vector<std::uint64_t>> run_layer(std::uint64_t size) {
        s = size;
        std::fill(cnt.begin(), cnt.end(), std::uint64_t(0));
        in_set.clear();
        uncovered = n;
        chosen.clear();
        journal.clear();
        if (dfs(0)) return chosen;
        return std::nullopt;
    }
};

SearchResult run_search(const Ambient& ambient, const Predicate& predicate,
                        const SearchOptions& options, bool complete_mode) {
    const Group& g = ambient.group;
    const std::uint64_t n = g.order;

    Layered lay;
    lay.g = &g;
    lay.n = n;
    lay.complete = complete_mode;
    lay.budget = options.node_budget;

    std::uint64_t t2_count = 1, wcount = 0;
    if (predicate.kind == PredicateKind::three_ap_saturating ||
        predicate.kind == PredicateKind::complete_three_ap) {
        lay.three_ap = true;
        lay.dbl.resize(n);
        lay.half_off.assign(n + 1, 0);
        for (std::uint64_t x = 0; x < n; ++x) {
            lay.dbl[x] = g.add(x, x);
            ++lay.half_off[lay.dbl[x] + 1];
        }
        for (std::uint64_t v = 0; v < n; ++v) lay.half_off[v + 1] += lay.half_off[v];
        lay.half_flat.resize(n);
        std::vector<std::uint64_t> cursor(lay.half_off.begin(), lay.half_off.end() - 1);
        for (std::uint64_t x = 0; x < n; ++x) lay.half_flat[cursor[lay.dbl[x]]++] = x;
        for (std::uint64_t m : g.factors) t2_count *= std::gcd<std::uint64_t>(2, m);
        lay.cmax = 2 + t2_count;
    } else {
        WeightFamily storage;
        const WeightFamily* fam = &predicate.weights;
        if (predicate.kind == PredicateKind::line_saturating) {
            if (!ambient.field_mode())
                throw std::invalid_argument(predicate.name() +
                                            " requires a field-mode ambient space");
            storage = make_line_family(*ambient.field);
            fam = &storage;
        } else if (predicate.weights.empty()) {
            throw std::invalid_argument(predicate.name() +
                                        " requires a non-empty weight family");
        }
        std::tie(lay.t1, lay.t2) = weight_action_tables(ambient, *fam);
        wcount = lay.t1.size();
        lay.cmax = 2 * wcount;
    }

    lay.cnt.assign(n, 0);
    lay.in_set = Bitset(n);

    const std::uint64_t s0 = start_layer(n, lay.three_ap, t2_count, wcount);
    const std::uint64_t smax = std::min<std::uint64_t>(n, options.size_limit.value_or(n));

    SearchResult res;
    try {
        for (std::uint64_t size = s0; size <= smax; ++size) {
            if (auto w = lay.run_layer(size)) {
                res.found = true;
                res.min_size = size;
                res.witness = PointSet::from_indices(g, std::move(*w));
                break;
            }
        }
        if (!res.found && smax == n) res.none_exists = true;
    } catch (const BudgetExhausted&) {
        res.exhaustive = false;
    }
    res.nodes = lay.nodes;
    return res;
}

}  // namespace

BoundValue lower_bound(BoundKind kind, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("lower_bound requires a group order n >= 1");
    BoundValue b;
    switch (kind) {
        case BoundKind::sat_3ap:
            // sqrt(2n/3 + 1/36) + 1/6, written over the common denominator
            // so perfect squares come out exact.
            b.value = (std::sqrt(24.0 * static_cast<double>(n) + 1.0) + 1.0) / 6.0;
            break;
        case BoundKind::sat_w:
            b.value = std::sqrt(static_cast<double>(n));
            break;
        case BoundKind::sat_diag:
            b.value = (std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0;
            break;
    }
    std::uint64_t s = b.value > 4.0 ? static_cast<std::uint64_t>(b.value) - 3 : 1;
    while (!bound_holds(kind, s, n)) ++s;
    b.ceiling = s;
    return b;
}

SearchResult min_saturating(const Ambient& ambient, const Predicate& predicate,
                            const SearchOptions& options) {
    switch (predicate.kind) {
        case PredicateKind::three_ap_saturating:
        case PredicateKind::w_saturating:
        case PredicateKind::line_saturating:
            return run_search(ambient, predicate, options, /*complete_mode=*/false);
        default:
            throw std::invalid_argument("min_saturating expects a saturating predicate");
    }
}

SearchResult min_complete_avoiding(const Ambient& ambient, const Predicate& predicate,
                                   const SearchOptions& options) {
    switch (predicate.kind) {
        case PredicateKind::complete_three_ap:
        case PredicateKind::complete_w:
            return run_search(ambient, predicate, options, /*complete_mode=*/true);
        default:
            throw std::invalid_argument("min_complete_avoiding expects a complete predicate");
    }
}

AuditChain audit_chain(const Group& g, const SearchOptions& options) {
    const Ambient amb = Ambient::of_group(g);
    AuditChain chain;
    chain.sat_three_ap = min_saturating(amb, Predicate::three_ap_saturating(), options);
    chain.sat_two_minus_one =
        min_saturating(amb, Predicate::saturating(WeightFamily::two_minus_one()), options);
    chain.a_three_ap = min_complete_avoiding(amb, Predicate::complete_three_ap(), options);
    chain.a_two_minus_one =
        min_complete_avoiding(amb, Predicate::complete(WeightFamily::two_minus_one()), options);

    chain.exhaustive = chain.sat_three_ap.exhaustive && chain.sat_two_minus_one.exhaustive &&
                       chain.a_three_ap.exhaustive && chain.a_two_minus_one.exhaustive;

    // "No set of any size" counts as an infinite minimum.
    auto value = [](const SearchResult& r) -> std::optional<std::uint64_t> {
        if (r.found) return r.min_size;
        if (r.none_exists) return std::numeric_limits<std::uint64_t>::max();
        return std::nullopt;  // undetermined (budget ran out)
    };
    const auto s3 = value(chain.sat_three_ap);
    const auto sw = value(chain.sat_two_minus_one);
    const auto a3 = value(chain.a_three_ap);
    const auto aw = value(chain.a_two_minus_one);
    chain.chain_holds = s3 && sw && a3 && aw && *sw >= *s3 && *a3 >= *s3 && *aw >= *sw &&
                        *aw >= *a3;
    return chain;
}

}  // namespace apsat
