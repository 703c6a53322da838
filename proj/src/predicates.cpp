#include "apsat/predicates.hpp"

#include <chrono>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace apsat {

namespace {

// ----- weight family resolution and action tables ---------------------------

struct ActionTables {
    std::vector<std::uint64_t> t1, t2;  // t1[x] = lambda1 * x, t2[x] = lambda2 * x
};

void validate_rational_pair(const Group& g, const WeightPair& w) {
    for (const Coefficient& c : {w.lambda1, w.lambda2}) {
        if (g.order > 1) {
            const std::int64_t e = static_cast<std::int64_t>(g.exponent);
            if (c.num % e == 0)
                throw std::domain_error("coefficient " + c.str() +
                                        " acts as the zero map on the group");
        }
    }
}

std::vector<std::uint64_t> scalar_action_table(const Ambient& amb, std::uint64_t lambda) {
    if (lambda == 0) throw std::domain_error("field scalar 0 acts as the zero map");
    if (lambda >= amb.field->q)
        throw std::out_of_range("field scalar out of range for the ambient field");
    std::vector<std::uint64_t> t(amb.group.order);
    for (std::uint64_t x = 0; x < amb.group.order; ++x) t[x] = amb.scalar_mul(lambda, x);
    return t;
}

std::vector<ActionTables> build_tables(const Ambient& amb, const WeightFamily& fam) {
    std::vector<ActionTables> tabs;
    if (fam.field_mode()) {
        if (!amb.field_mode())
            throw std::invalid_argument(
                "field-scalar weight family requires a field-mode ambient space");
        for (const auto& [l1, l2] : fam.scalar_pairs)
            tabs.push_back({scalar_action_table(amb, l1), scalar_action_table(amb, l2)});
    } else {
        for (const WeightPair& w : fam.pairs) {
            validate_rational_pair(amb.group, w);
            tabs.push_back({coeff_action_table(amb.group, w.lambda1),
                            coeff_action_table(amb.group, w.lambda2)});
        }
    }
    return tabs;
}

const WeightFamily& resolve_family(const Ambient& amb, const Predicate& pred,
                                   WeightFamily& storage) {
    if (pred.kind == PredicateKind::cap || pred.kind == PredicateKind::line_saturating) {
        if (!amb.field_mode())
            throw std::invalid_argument(pred.name() + " requires a field-mode ambient space");
        storage = make_line_family(*amb.field);
        return storage;
    }
    if (pred.weights.empty())
        throw std::invalid_argument(pred.name() + " requires a non-empty weight family");
    return pred.weights;
}

// ----- parallel chunking -----------------------------------------------------

// Runs fn(chunk, lo, hi) over a contiguous partition of [0, count);
// deterministic merges are the caller's job.
template <typename Fn>
unsigned run_chunks(std::size_t count, unsigned threads, Fn&& fn) {
    unsigned nchunks = threads > 1 && count > 1
                           ? static_cast<unsigned>(std::min<std::size_t>(threads, count))
                           : 1;
    if (nchunks == 1) {
        fn(0u, std::size_t(0), count);
        return 1;
    }
    std::vector<std::thread> pool;
    pool.reserve(nchunks);
    const std::size_t step = (count + nchunks - 1) / nchunks;
    for (unsigned c = 0; c < nchunks; ++c) {
        const std::size_t lo = std::min<std::size_t>(c * step, count);
        const std::size_t hi = std::min<std::size_t>(lo + step, count);
        pool.emplace_back([&fn, c, lo, hi] { fn(c, lo, hi); });
    }
    for (auto& t : pool) t.join();
    return nchunks;
}

// ----- avoidance -------------------------------------------------------------

using AvoidCand = std::array<std::uint64_t, 4>;  // (a, a1, a2, weight index)

std::optional<Witness> avoid_w(const Ambient& amb, const PointSet& S,
                               const std::vector<ActionTables>& tabs, unsigned threads) {
    const Group& g = amb.group;
    const auto& idx = S.indices();
    const std::size_t K = idx.size();
    std::vector<std::optional<AvoidCand>> best(std::max(1u, threads));

    run_chunks(K, threads, [&](unsigned chunk, std::size_t lo, std::size_t hi) {
        std::optional<AvoidCand> local;
        for (std::size_t i = lo; i < hi; ++i) {
            const std::uint64_t a1 = idx[i];
            for (std::size_t j = 0; j < K; ++j) {
                if (j == i) continue;
                const std::uint64_t a2 = idx[j];
                for (std::size_t wi = 0; wi < tabs.size(); ++wi) {
                    const std::uint64_t v = g.add(tabs[wi].t1[a1], tabs[wi].t2[a2]);
                    if (v != a1 && v != a2 && S.contains(v)) {
                        AvoidCand cand{v, a1, a2, wi};
                        if (!local || cand < *local) local = cand;
                    }
                }
            }
        }
        best[chunk] = local;
    });

    std::optional<AvoidCand> merged;
    for (const auto& b : best)
        if (b && (!merged || *b < *merged)) merged = b;
    if (!merged) return std::nullopt;
    Witness w;
    w.type = Witness::Type::avoid_triple;
    w.a = (*merged)[0];
    w.a1 = (*merged)[1];
    w.a2 = (*merged)[2];
    w.weight_index = static_cast<int>((*merged)[3]);
    return w;
}

// Doubling preimages over the whole group: buckets[v] = {x : 2x = v}.
std::vector<std::vector<std::uint64_t>> doubling_preimages(const Group& g) {
    std::vector<std::vector<std::uint64_t>> buckets(g.order);
    for (std::uint64_t x = 0; x < g.order; ++x) buckets[g.add(x, x)].push_back(x);
    return buckets;
}

std::optional<Witness> avoid_three_ap(const Ambient& amb, const PointSet& S,
                                      unsigned threads) {
    const Group& g = amb.group;
    const auto& idx = S.indices();
    const std::size_t K = idx.size();

    // Preimages of doubling restricted to S: candidates for the middle term.
    std::vector<std::vector<std::uint64_t>> mid(g.order);
    for (std::uint64_t x : idx) mid[g.add(x, x)].push_back(x);

    using Cand = std::array<std::uint64_t, 3>;  // (x, y, z), y < z, 2x = y+z
    std::vector<std::optional<Cand>> best(std::max(1u, threads));

    run_chunks(K, threads, [&](unsigned chunk, std::size_t lo, std::size_t hi) {
        std::optional<Cand> local;
        for (std::size_t i = lo; i < hi; ++i) {
            const std::uint64_t y = idx[i];
            for (std::size_t j = i + 1; j < K; ++j) {
                const std::uint64_t z = idx[j];
                for (std::uint64_t x : mid[g.add(y, z)]) {
                    if (x == y || x == z) continue;
                    Cand cand{x, y, z};
                    if (!local || cand < *local) local = cand;
                }
            }
        }
        best[chunk] = local;
    });

    std::optional<Cand> merged;
    for (const auto& b : best)
        if (b && (!merged || *b < *merged)) merged = b;
    if (!merged) return std::nullopt;
    Witness w;
    w.type = Witness::Type::three_ap_triple;
    w.a = (*merged)[0];
    w.a1 = (*merged)[1];
    w.a2 = (*merged)[2];
    return w;
}

// ----- saturation ------------------------------------------------------------

std::optional<Witness> first_uncovered(const PointSet& S, const Bitset& covered) {
    for (std::uint64_t x = 0; x < covered.size(); ++x) {
        if (!S.contains(x) && !covered.test(x)) {
            Witness w;
            w.type = Witness::Type::unsaturated;
            w.x = x;
            return w;
        }
    }
    return std::nullopt;
}

std::optional<Witness> sat_w(const Ambient& amb, const PointSet& S,
                             const std::vector<ActionTables>& tabs, unsigned threads) {
    const Group& g = amb.group;
    const auto& idx = S.indices();
    const std::size_t K = idx.size();
    std::vector<Bitset> covered(std::max(1u, threads), Bitset(g.order));

    run_chunks(K, threads, [&](unsigned chunk, std::size_t lo, std::size_t hi) {
        Bitset& cov = covered[chunk];
        for (const auto& tab : tabs) {
            for (std::size_t i = lo; i < hi; ++i) {
                const std::uint64_t va = tab.t1[idx[i]];
                for (std::size_t j = 0; j < K; ++j) {
                    if (j == i) continue;
                    cov.set(g.add(va, tab.t2[idx[j]]));
                }
            }
        }
    });

    for (std::size_t c = 1; c < covered.size(); ++c) covered[0].or_with(covered[c]);
    return first_uncovered(S, covered[0]);
}

std::optional<Witness> sat_three_ap(const Ambient& amb, const PointSet& S,
                                    unsigned threads) {
    const Group& g = amb.group;
    const auto& idx = S.indices();
    const std::size_t K = idx.size();
    const auto buckets = doubling_preimages(g);
    std::vector<Bitset> covered(std::max(1u, threads), Bitset(g.order));

    run_chunks(K, threads, [&](unsigned chunk, std::size_t lo, std::size_t hi) {
        Bitset& cov = covered[chunk];
        for (std::size_t i = lo; i < hi; ++i) {
            const std::uint64_t a = idx[i];
            const std::uint64_t da = g.add(a, a);
            for (std::size_t j = 0; j < K; ++j) {
                if (j == i) continue;
                const std::uint64_t b = idx[j];
                cov.set(g.sub(da, b));             // end term: x = 2a - b
                if (j > i)                         // middle term: 2x = a + b
                    for (std::uint64_t x : buckets[g.add(a, b)]) cov.set(x);
            }
        }
    });

    for (std::size_t c = 1; c < covered.size(); ++c) covered[0].or_with(covered[c]);
    return first_uncovered(S, covered[0]);
}

// ----- sidon -----------------------------------------------------------------

std::optional<Witness> sidon_check(const Ambient& amb, const PointSet& S) {
    const Group& g = amb.group;
    const auto& idx = S.indices();
    Bitset seen(g.order);
    std::vector<std::uint64_t> fa(g.order), fb(g.order);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i; j < idx.size(); ++j) {
            const std::uint64_t s = g.add(idx[i], idx[j]);
            if (seen.test_and_set(s)) {
                fa[s] = idx[i];
                fb[s] = idx[j];
            } else {
                Witness w;
                w.type = Witness::Type::sidon_collision;
                w.sums = {fa[s], fb[s], idx[i], idx[j]};
                return w;
            }
        }
    }
    return std::nullopt;
}

VerificationReport finish(const Predicate& pred, std::optional<Witness> w,
                          std::chrono::steady_clock::time_point t0) {
    VerificationReport r;
    r.predicate = pred;
    r.holds = !w.has_value();
    r.witness = std::move(w);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace

bool Predicate::needs_weights() const {
    switch (kind) {
        case PredicateKind::w_avoiding:
        case PredicateKind::w_saturating:
        case PredicateKind::complete_w:
            return true;
        default:
            return false;
    }
}

bool Predicate::has_avoidance_part() const {
    switch (kind) {
        case PredicateKind::three_ap_free:
        case PredicateKind::w_avoiding:
        case PredicateKind::complete_three_ap:
        case PredicateKind::complete_w:
        case PredicateKind::cap:
            return true;
        default:
            return false;
    }
}

bool Predicate::has_saturation_part() const {
    switch (kind) {
        case PredicateKind::three_ap_saturating:
        case PredicateKind::w_saturating:
        case PredicateKind::complete_three_ap:
        case PredicateKind::complete_w:
        case PredicateKind::line_saturating:
            return true;
        default:
            return false;
    }
}

std::string Predicate::name() const {
    switch (kind) {
        case PredicateKind::three_ap_free: return "3ap-free";
        case PredicateKind::w_avoiding: return "avoiding";
        case PredicateKind::three_ap_saturating: return "3ap-saturating";
        case PredicateKind::w_saturating: return "saturating";
        case PredicateKind::complete_three_ap: return "complete-3ap";
        case PredicateKind::complete_w: return "complete";
        case PredicateKind::sidon: return "sidon";
        case PredicateKind::cap: return "cap";
        case PredicateKind::line_saturating: return "line-saturating";
    }
    return "unknown";
}

std::string Witness::describe() const {
    switch (type) {
        case Type::avoid_triple:
            return std::to_string(a) + " = w[" + std::to_string(weight_index) +
                   "](" + std::to_string(a1) + "," + std::to_string(a2) + ")";
        case Type::three_ap_triple:
            return "2*" + std::to_string(a) + " = " + std::to_string(a1) + " + " +
                   std::to_string(a2);
        case Type::unsaturated:
            return "element " + std::to_string(x) + " is not covered";
        case Type::sidon_collision:
            return std::to_string(sums[0]) + " + " + std::to_string(sums[1]) + " = " +
                   std::to_string(sums[2]) + " + " + std::to_string(sums[3]);
    }
    return "";
}

std::pair<std::vector<std::vector<std::uint64_t>>, std::vector<std::vector<std::uint64_t>>>
weight_action_tables(const Ambient& ambient, const WeightFamily& family) {
    auto tabs = build_tables(ambient, family);
    std::pair<std::vector<std::vector<std::uint64_t>>, std::vector<std::vector<std::uint64_t>>>
        out;
    for (auto& t : tabs) {
        out.first.push_back(std::move(t.t1));
        out.second.push_back(std::move(t.t2));
    }
    return out;
}

VerificationReport verify(const Ambient& ambient, const PointSet& set,
                          const Predicate& predicate, const VerifyOptions& options) {
    if (!(set.group() == ambient.group))
        throw std::invalid_argument("verify: point set does not live in the ambient group");
    const unsigned threads = std::max(1u, options.threads);
    const auto t0 = std::chrono::steady_clock::now();

    switch (predicate.kind) {
        case PredicateKind::three_ap_free:
            return finish(predicate, avoid_three_ap(ambient, set, threads), t0);
        case PredicateKind::three_ap_saturating:
            return finish(predicate, sat_three_ap(ambient, set, threads), t0);
        case PredicateKind::complete_three_ap: {
            auto w = avoid_three_ap(ambient, set, threads);
            if (!w) w = sat_three_ap(ambient, set, threads);
            return finish(predicate, std::move(w), t0);
        }
        case PredicateKind::sidon:
            return finish(predicate, sidon_check(ambient, set), t0);
        case PredicateKind::w_avoiding:
        case PredicateKind::w_saturating:
        case PredicateKind::complete_w:
        case PredicateKind::cap:
        case PredicateKind::line_saturating: {
            WeightFamily storage;
            const WeightFamily& fam = resolve_family(ambient, predicate, storage);
            const auto tabs = build_tables(ambient, fam);
            std::optional<Witness> w;
            if (predicate.has_avoidance_part())
                w = avoid_w(ambient, set, tabs, threads);
            if (!w && predicate.has_saturation_part())
                w = sat_w(ambient, set, tabs, threads);
            return finish(predicate, std::move(w), t0);
        }
    }
    throw std::logic_error("verify: unhandled predicate kind");
}

bool witness_is_valid(const Ambient& ambient, const PointSet& set,
                      const Predicate& predicate, const Witness& witness) {
    const Group& g = ambient.group;
    switch (witness.type) {
        case Witness::Type::three_ap_triple: {
            if (!predicate.has_avoidance_part()) return false;
            const std::uint64_t x = witness.a, y = witness.a1, z = witness.a2;
            return set.contains(x) && set.contains(y) && set.contains(z) && x != y &&
                   x != z && y != z && g.add(x, x) == g.add(y, z);
        }
        case Witness::Type::avoid_triple: {
            if (!predicate.has_avoidance_part()) return false;
            WeightFamily storage;
            const WeightFamily& fam = resolve_family(ambient, predicate, storage);
            const int wi = witness.weight_index;
            if (wi < 0 || static_cast<std::size_t>(wi) >= fam.size()) return false;
            const std::uint64_t a = witness.a, a1 = witness.a1, a2 = witness.a2;
            if (!set.contains(a) || !set.contains(a1) || !set.contains(a2)) return false;
            if (a == a1 || a == a2 || a1 == a2) return false;
            std::uint64_t v;
            if (fam.field_mode()) {
                const auto& [l1, l2] = fam.scalar_pairs[wi];
                v = g.add(ambient.scalar_mul(l1, a1), ambient.scalar_mul(l2, a2));
            } else {
                v = weight_eval(g, fam.pairs[wi], a1, a2);
            }
            return v == a;
        }
        case Witness::Type::unsaturated: {
            if (!predicate.has_saturation_part()) return false;
            const std::uint64_t x = witness.x;
            if (set.contains(x)) return false;
            // Independent recheck: no admissible pair may cover x.
            const auto& idx = set.indices();
            if (predicate.kind == PredicateKind::three_ap_saturating ||
                predicate.kind == PredicateKind::complete_three_ap) {
                for (std::uint64_t a : idx)
                    for (std::uint64_t b : idx) {
                        if (a == b) continue;
                        if (x == g.sub(g.add(a, a), b)) return false;
                        if (g.add(x, x) == g.add(a, b)) return false;
                    }
                return true;
            }
            WeightFamily storage;
            const WeightFamily& fam = resolve_family(ambient, predicate, storage);
            for (std::size_t wi = 0; wi < fam.size(); ++wi)
                for (std::uint64_t a : idx)
                    for (std::uint64_t b : idx) {
                        if (a == b) continue;
                        std::uint64_t v;
                        if (fam.field_mode()) {
                            const auto& [l1, l2] = fam.scalar_pairs[wi];
                            v = g.add(ambient.scalar_mul(l1, a), ambient.scalar_mul(l2, b));
                        } else {
                            v = weight_eval(g, fam.pairs[wi], a, b);
                        }
                        if (v == x) return false;
                    }
            return true;
        }
        case Witness::Type::sidon_collision: {
            if (predicate.kind != PredicateKind::sidon) return false;
            const auto& s = witness.sums;
            for (std::uint64_t e : s)
                if (!set.contains(e)) return false;
            if (g.add(s[0], s[1]) != g.add(s[2], s[3])) return false;
            const bool same_pair = (s[0] == s[2] && s[1] == s[3]) ||
                                   (s[0] == s[3] && s[1] == s[2]);
            return !same_pair;
        }
    }
    return false;
}

}  // namespace apsat
