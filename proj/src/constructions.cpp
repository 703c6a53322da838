#include "apsat/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <tuple>

namespace apsat {

namespace {

std::string u2s(std::uint64_t v) { return std::to_string(v); }

Group product_group(const Group& a, const Group& b) {
    std::vector<std::uint64_t> factors = a.factors;
    factors.insert(factors.end(), b.factors.begin(), b.factors.end());
    return Group::make(std::move(factors));
}

/** Walks the cycles of `next` over [1, n) from the smallest unvisited
 *  index and keeps the exponent pattern of the rule in each cycle. */
std::vector<std::uint64_t> orbit_select(std::uint64_t n,
                                        const std::vector<std::uint64_t>& next,
                                        OrbitRule rule) {
    std::vector<char> visited(n, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t start = 1; start < n; ++start) {
        if (visited[start]) continue;
        std::vector<std::uint64_t> cycle;
        std::uint64_t x = start;
        do {
            cycle.push_back(x);
            visited[x] = 1;
            x = next[x];
        } while (x != start);
        const std::uint64_t o = cycle.size();
        for (std::uint64_t e = 0; e < o; ++e) {
            const bool keep = rule == OrbitRule::triple ? e % 3 == 2 && e < 3 * (o / 3)
                                                        : e % 2 == 1 && e < 2 * (o / 2);
            if (keep) out.push_back(cycle[e]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool rational_pair_sums_to_one(const WeightPair& w) {
    return w.lambda1.num * w.lambda2.den + w.lambda2.num * w.lambda1.den ==
           w.lambda1.den * w.lambda2.den;
}

bool holds(const Ambient& amb, const PointSet& s, const Predicate& pred) {
    return verify(amb, s, pred).holds;
}

/** Multiplication by the coefficient must be injective for the product
 *  avoidance transfer; over Z-coefficients that is numerator coprime to
 *  the exponent. */
bool coeff_injective(const Coefficient& c, std::uint64_t exponent) {
    if (exponent == 1) return true;
    const std::int64_t e = static_cast<std::int64_t>(exponent);
    const std::uint64_t r = static_cast<std::uint64_t>(((c.num % e) + e) % e);
    return r != 0 && std::gcd(r, exponent) == 1;
}

std::uint64_t pow4(std::uint64_t n) { return std::uint64_t(1) << (2 * n); }

}  // namespace

ConstructionRecord parabola(const FieldSpec& field) {
    if (field.q % 2 == 0) throw std::invalid_argument("parabola requires odd field order");
    Ambient amb = Ambient::of_field(field, 2);
    std::vector<std::uint64_t> pts;
    pts.reserve(field.q);
    for (std::uint64_t x = 0; x < field.q; ++x) {
        const std::uint64_t vec[2] = {x, field.mul(x, x)};
        pts.push_back(amb.vec_to_index(vec));
    }
    const bool complete = !field.is_square(field.from_integer(-2));
    std::vector<Predicate> claims;
    claims.push_back(complete ? Predicate::complete_three_ap() : Predicate::three_ap_free());
    claims.push_back(Predicate::sidon());
    return {"parabola",
            {{"p", u2s(field.p)}, {"k", u2s(field.k)}},
            amb,
            PointSet::from_indices(amb.group, std::move(pts)),
            field.q,
            std::move(claims)};
}

PointSet orbit_avoider(const Group& g, OrbitRule rule) {
    if (std::gcd(g.order, std::uint64_t(6)) != 1)
        throw std::invalid_argument("orbit_avoider requires gcd(|G|, 6) = 1");
    const auto next = coeff_action_table(g, Coefficient::integer(-2));
    return PointSet::from_indices(g, orbit_select(g.order, next, rule));
}

std::vector<std::uint64_t> orbit_avoider_field(const FieldSpec& field, OrbitRule rule) {
    if (field.p == 2 || field.p == 3)
        throw std::invalid_argument("orbit_avoider requires characteristic other than 2, 3");
    const std::uint64_t m2 = field.from_integer(-2);
    std::vector<std::uint64_t> next(field.q);
    for (std::uint64_t x = 0; x < field.q; ++x) next[x] = field.mul(m2, x);
    return orbit_select(field.q, next, rule);
}

PointSet orbit_avoider_set(const FieldSpec& field, OrbitRule rule) {
    Ambient amb = Ambient::of_field(field, 1);
    std::vector<std::uint64_t> pts;
    for (std::uint64_t x : orbit_avoider_field(field, rule)) {
        const std::uint64_t vec[1] = {x};
        pts.push_back(amb.vec_to_index(vec));
    }
    return PointSet::from_indices(amb.group, std::move(pts));
}

ConstructionRecord lines_construction(const FieldSpec& field, LinesVariant variant) {
    if (field.p == 2 || field.p == 3)
        throw std::invalid_argument("lines_construction requires characteristic other than 2, 3");
    const std::uint64_t q = field.q;
    const std::uint64_t o = field.element_order(field.from_integer(-2));
    const bool star = variant == LinesVariant::axes_star;
    const auto excluded =
        orbit_avoider_field(field, star ? OrbitRule::pair : OrbitRule::triple);
    Bitset excl(q);
    for (std::uint64_t r : excluded) excl.set(r);

    Ambient amb = Ambient::of_field(field, 2);
    std::vector<std::uint64_t> pts;
    for (std::uint64_t r = 1; r < q; ++r) {
        const std::uint64_t vertical[2] = {field.zero(), r};  // (0, r)
        const std::uint64_t horizontal[2] = {r, field.zero()};  // (r, 0)
        if (!excl.test(r)) pts.push_back(amb.vec_to_index(vertical));
        if (star || !excl.test(r)) pts.push_back(amb.vec_to_index(horizontal));
    }
    const std::uint64_t predicted = star ? 2 * (q - 1) - (q - 1) / o * (o / 2)
                                         : 2 * (q - 1) / o * (o - o / 3);
    std::vector<Predicate> claims;
    if (star)
        claims.push_back(Predicate::saturating(WeightFamily::two_minus_one()));
    else
        claims.push_back(Predicate::three_ap_saturating());
    return {"lines",
            {{"p", u2s(field.p)},
             {"k", u2s(field.k)},
             {"variant", star ? "L*" : "L"},
             {"order_minus2", u2s(o)}},
            amb,
            PointSet::from_indices(amb.group, std::move(pts)),
            predicted,
            std::move(claims)};
}

ConstructionRecord axes_product(const Group& a, const Group& b, AxesVariant variant) {
    const bool star = variant == AxesVariant::star;
    if (star) {
        if (a.order % 2 == 0)
            throw std::invalid_argument("axes_product star requires |A| odd");
        if (std::gcd(b.order, std::uint64_t(6)) != 1)
            throw std::invalid_argument("axes_product star requires gcd(|B|, 6) = 1");
    } else if (std::gcd(a.order, std::uint64_t(6)) != 1 ||
               std::gcd(b.order, std::uint64_t(6)) != 1) {
        throw std::invalid_argument("axes_product requires gcd(|A||B|, 6) = 1");
    }

    Group prod = product_group(a, b);
    std::vector<std::uint64_t> pts;
    if (star) {
        for (std::uint64_t r = 1; r < a.order; ++r) pts.push_back(r * b.order);
        const PointSet rstar = orbit_avoider(b, OrbitRule::pair);
        for (std::uint64_t r = 1; r < b.order; ++r)
            if (!rstar.contains(r)) pts.push_back(r);
    } else {
        const PointSet ra = orbit_avoider(a, OrbitRule::triple);
        const PointSet rb = orbit_avoider(b, OrbitRule::triple);
        for (std::uint64_t r = 1; r < a.order; ++r)
            if (!ra.contains(r)) pts.push_back(r * b.order);
        for (std::uint64_t r = 1; r < b.order; ++r)
            if (!rb.contains(r)) pts.push_back(r);
    }
    std::vector<Predicate> claims;
    if (star) claims.push_back(Predicate::saturating(WeightFamily::two_minus_one()));
    claims.push_back(Predicate::three_ap_saturating());
    return {"axes-product",
            {{"a", u2s(a.order)}, {"b", u2s(b.order)}, {"variant", star ? "star" : "symmetric"}},
            Ambient::of_group(prod),
            PointSet::from_indices(prod, std::move(pts)),
            std::nullopt,
            std::move(claims)};
}

ConstructionRecord singer(std::uint64_t n) {
    if (n < 1 || n > 5) throw std::invalid_argument("singer requires 1 <= n <= 5");
    const std::uint64_t q = std::uint64_t(1) << n;
    const std::uint64_t M = q * q + q + 1;
    const FieldSpec f = FieldSpec::make(2, 3 * n);

    std::vector<std::uint64_t> d0;
    std::uint64_t power = f.one();
    for (std::uint64_t i = 0; i < M; ++i) {
        if (f.trace_to_subfield(power, n) == f.zero()) d0.push_back(i);
        power = f.mul(power, f.primitive_element);
    }
    if (d0.size() != q + 1)
        throw std::logic_error("singer: trace-zero exponent count is not q+1");

    const Group g = Group::cyclic(M);
    // Smallest translate fixed by doubling (it exists by the multiplier theorem).
    for (std::uint64_t s = 0; s < M; ++s) {
        Bitset shifted(M);
        for (std::uint64_t d : d0) shifted.set((d + s) % M);
        bool fixed = true;
        for (std::uint64_t d : d0)
            if (!shifted.test((2 * ((d + s) % M)) % M)) {
                fixed = false;
                break;
            }
        if (!fixed) continue;
        std::vector<std::uint64_t> pts;
        for (std::uint64_t d : d0) pts.push_back((d + s) % M);
        return {"singer",
                {{"n", u2s(n)}, {"M", u2s(M)}, {"shift", u2s(s)}, {"modulus", f.modulus_str()}},
                Ambient::of_group(g),
                PointSet::from_indices(g, std::move(pts)),
                q + 1,
                {Predicate::complete(WeightFamily::two_minus_one())}};
    }
    throw std::logic_error("singer: no doubling-fixed translate found");
}

bool is_perfect_difference_set(const Group& g, const PointSet& s) {
    std::vector<std::uint64_t> count(g.order, 0);
    for (std::uint64_t d : s.indices())
        for (std::uint64_t e : s.indices())
            if (d != e) ++count[g.sub(d, e)];
    for (std::uint64_t x = 1; x < g.order; ++x)
        if (count[x] != 1) return false;
    return count[0] == 0;
}

namespace {

std::vector<std::uint64_t> mrose_blocks(std::uint64_t t) {
    std::vector<std::uint64_t> out;
    const auto block = [&out](std::uint64_t start, std::uint64_t step, std::uint64_t end) {
        for (std::uint64_t v = start; v <= end; v += step) out.push_back(v);
    };
    block(0, 1, t);
    block(2 * t, t, 3 * t * t + t);
    block(3 * t * t + 2 * t, t + 1, 4 * t * t + 2 * t - 1);
    block(6 * t * t + 4 * t, 1, 6 * t * t + 5 * t);
    block(10 * t * t + 7 * t, 1, 10 * t * t + 8 * t);
    return out;
}

}  // namespace

ConstructionRecord mrose(std::uint64_t t) {
    if (t < 1) throw std::invalid_argument("mrose requires t >= 1");
    const Group g = Group::cyclic(20 * t * t + 16 * t + 1);
    return {"mrose",
            {{"t", u2s(t)}},
            Ambient::of_group(g),
            PointSet::from_indices(g, mrose_blocks(t)),
            7 * t + 3,
            {}};
}

ConstructionRecord mrose_mod(std::uint64_t m) {
    if (m % 2 == 0) throw std::invalid_argument("mrose_mod requires odd modulus");
    std::uint64_t t = 1;
    while (14 * t * t + 10 * t - 1 < m) ++t;
    std::vector<std::uint64_t> pts = mrose_blocks(t);
    for (std::uint64_t& v : pts) v %= m;
    const Group g = Group::cyclic(m);
    return {"mrose",
            {{"t", u2s(t)}, {"modulus", u2s(m)}},
            Ambient::of_group(g),
            PointSet::from_indices(g, std::move(pts)),
            std::nullopt,
            {Predicate::saturating(WeightFamily::half_half())}};
}

std::vector<std::uint64_t> base4_encode(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("base4_encode requires k >= 1");
    std::vector<std::uint64_t> digits;
    while (k > 0) {
        const std::uint64_t d = (k - 1) % 4 + 1;
        digits.push_back(d);
        k = (k - d) / 4;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::uint64_t base4_decode(std::span<const std::uint64_t> digits) {
    if (digits.empty()) throw std::invalid_argument("base4_decode requires at least one digit");
    std::uint64_t k = 0;
    for (std::uint64_t d : digits) {
        if (d < 1 || d > 4) throw std::invalid_argument("base4 digit out of {1,2,3,4}");
        k = 4 * k + d;
    }
    return k;
}

std::vector<std::uint64_t> layer_h(std::uint64_t l) {
    std::vector<std::uint64_t> out;
    out.reserve(std::size_t(1) << l);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << l); ++mask) {
        std::uint64_t v = 0;
        for (std::uint64_t i = 0; i < l; ++i)
            v += (2 + ((mask >> i) & 1)) << (2 * i);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<std::uint64_t, std::uint64_t> layer_k(std::uint64_t l) {
    const std::uint64_t third = (pow4(l) - 1) / 3;
    return {third, 4 * third};
}

ConstructionRecord gyok3_set(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("gyok3_set requires m >= 2");
    std::uint64_t n = 1;
    while (pow4(n) < m) ++n;
    const std::uint64_t third = (pow4(n) - 1) / 3;
    const Group g = Group::cyclic(m);

    std::uint64_t case_id;
    std::vector<std::uint64_t> pts;
    std::vector<Predicate> claims;
    std::optional<std::uint64_t> predicted;
    std::vector<std::pair<std::string, std::string>> params{{"m", u2s(m)}, {"n", u2s(n)}};

    if (m == pow4(n)) {
        case_id = 2;
        pts = layer_h(n);
        claims.push_back(Predicate::complete(WeightFamily::two_minus_one()));
        predicted = std::uint64_t(1) << n;
    } else if (3 * m >= pow4(n) + 2) {
        case_id = 3;
        pts = layer_h(n);
        for (std::uint64_t& v : pts) v %= m;
        params.emplace_back("x", u2s(std::max(third, pow4(n) - m)));
        // m = 2 degenerates: the coefficient 2 is the zero map mod 2, so the
        // (2,-1) predicates are inadmissible there; the set is the full group
        // and there is nothing non-vacuous to claim.
        if (m == 2)
            ;
        else if (3 * m > 2 * (pow4(n) - 1))
            claims.push_back(Predicate::complete(WeightFamily::two_minus_one()));
        else
            claims.push_back(Predicate::saturating(WeightFamily::two_minus_one()));
        predicted = std::uint64_t(1) << n;
    } else {
        case_id = 4;
        std::uint64_t k = 1;
        while (k + 1 <= n - 1 && 3 * m <= pow4(n) - pow4(k)) ++k;
        params.emplace_back("k", u2s(k));
        for (std::uint64_t l = k - 1; l <= n - 1; ++l) {
            auto h = layer_h(l);
            pts.insert(pts.end(), h.begin(), h.end());
        }
        for (std::uint64_t& v : pts) v %= m;
        claims.push_back(Predicate::saturating(WeightFamily::two_minus_one()));
        predicted = (std::uint64_t(1) << n) - (std::uint64_t(1) << (k - 1));
    }
    params.emplace_back("case", u2s(case_id));
    return {"gyok3", std::move(params), Ambient::of_group(g),
            PointSet::from_indices(g, std::move(pts)), predicted, std::move(claims)};
}

ConstructionRecord random_saturating(const Group& g, std::uint64_t seed) {
    if (g.order % 2 == 0 || g.order <= 5)
        throw std::invalid_argument("random_saturating requires odd order > 5");
    const std::uint64_t n = g.order;
    const double p = std::sqrt(std::log(double(n - 1)) / double(n - 1));

    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> h0;
    for (std::uint64_t x = 0; x < n; ++x) {
        const double u = double(rng() >> 11) * 0x1.0p-53;
        if (u < p) h0.push_back(x);
    }

    const auto dbl = coeff_action_table(g, Coefficient::integer(2));
    const auto half = coeff_action_table(g, Coefficient::ratio(1, 2));
    Bitset covered(n);
    for (std::uint64_t h : h0)
        for (std::uint64_t hp : h0) {
            if (h == hp) continue;
            covered.set(g.sub(dbl[h], hp));   // 2h - h'
            covered.set(half[g.add(h, hp)]);  // (h + h') / 2
        }
    Bitset in_h0(n);
    for (std::uint64_t h : h0) in_h0.set(h);
    std::vector<std::uint64_t> pts;
    for (std::uint64_t x = 0; x < n; ++x)
        if (in_h0.test(x) || !covered.test(x)) pts.push_back(x);

    char pbuf[32];
    std::snprintf(pbuf, sizeof pbuf, "%.6f", p);
    return {"random-saturating",
            {{"order", u2s(n)}, {"seed", u2s(seed)}, {"density", pbuf}},
            Ambient::of_group(g),
            PointSet::from_indices(g, std::move(pts)),
            std::nullopt,
            {Predicate::three_ap_saturating()}};
}

namespace {

const char* mode_name(ProductMode mode) {
    switch (mode) {
        case ProductMode::ap_free: return "ap_free";
        case ProductMode::one_one_avoid: return "one_one_avoid";
        case ProductMode::w_avoid_line: return "w_avoid_line";
        case ProductMode::w_sat: return "w_sat";
        case ProductMode::twominus_or_half_sat: return "twominus_or_half_sat";
        case ProductMode::half_half_via_doubling: return "half_half_via_doubling";
        case ProductMode::one_minus_one_sat: return "one_minus_one_sat";
    }
    return "?";
}

void require(bool ok, const std::string& hypothesis) {
    if (!ok) throw HypothesisError("hypothesis failed: " + hypothesis);
}

void require_factor_pred(const Ambient& amb, const PointSet& s, const Predicate& pred,
                         const char* which) {
    require(holds(amb, s, pred),
            std::string(which) + " factor is not " + pred.name() +
                (pred.weights.empty() ? "" : " for " + pred.weights.str()));
}

void require_sum_one(const WeightFamily& w, const std::optional<FieldSpec>& f) {
    if (w.field_mode()) {
        for (const auto& [l1, l2] : w.scalar_pairs)
            require(f && f->add(l1, l2) == f->one(), "scalar pair sums to 1");
    } else {
        for (const WeightPair& p : w.pairs)
            require(rational_pair_sums_to_one(p), "coefficient pair " + p.str() + " sums to 1");
    }
}

}  // namespace

ConstructionRecord product_compose(const Ambient& a, const PointSet& h, const Ambient& b,
                                   const PointSet& hprime, ProductMode mode,
                                   const WeightFamily& weights) {
    if (!(h.group() == a.group) || !(hprime.group() == b.group))
        throw std::invalid_argument("product_compose: set does not live in its ambient group");

    const bool joint_field =
        a.field_mode() && b.field_mode() && *a.field == *b.field;
    Ambient prod = joint_field ? Ambient::of_field(*a.field, a.dim + b.dim)
                               : Ambient::of_group(product_group(a.group, b.group));

    Predicate claim = Predicate::three_ap_free();
    switch (mode) {
        case ProductMode::ap_free: {
            for (const auto& [amb, s, which] :
                 {std::tuple{&a, &h, "first"}, std::tuple{&b, &hprime, "second"}}) {
                require_factor_pred(*amb, *s, Predicate::three_ap_free(), which);
                if (amb->group.order % 2 == 0) {
                    const auto& idx = s->indices();
                    for (std::size_t i = 0; i < idx.size(); ++i)
                        for (std::size_t j = i + 1; j < idx.size(); ++j)
                            require(amb->group.element_order(
                                        amb->group.sub(idx[i], idx[j])) > 2,
                                    "difference order exceeds 2 in an even-order factor");
                }
            }
            claim = Predicate::three_ap_free();
            break;
        }
        case ProductMode::one_one_avoid: {
            require(!h.contains(0) && !hprime.contains(0), "factors exclude the zero element");
            require_factor_pred(a, h, Predicate::avoiding(WeightFamily::one_one()), "first");
            require_factor_pred(b, hprime, Predicate::avoiding(WeightFamily::one_one()),
                                "second");
            claim = Predicate::avoiding(WeightFamily::one_one());
            break;
        }
        case ProductMode::w_avoid_line: {
            require(!weights.empty(), "weight family is non-empty");
            if (weights.field_mode())
                require(joint_field, "field-scalar weights need a common field");
            require_sum_one(weights, joint_field ? a.field : std::nullopt);
            if (!weights.field_mode()) {
                const std::uint64_t e = prod.group.exponent;
                for (const WeightPair& p : weights.pairs)
                    require(coeff_injective(p.lambda1, e) && coeff_injective(p.lambda2, e),
                            "coefficients act injectively (numerator coprime to exponent)");
            }
            require_factor_pred(a, h, Predicate::avoiding(weights), "first");
            require_factor_pred(b, hprime, Predicate::avoiding(weights), "second");
            claim = joint_field && weights == make_line_family(*a.field)
                        ? Predicate::cap()
                        : Predicate::avoiding(weights);
            break;
        }
        case ProductMode::w_sat: {
            require(weights.size() == 1, "weight family is a single pair");
            if (weights.field_mode())
                require(joint_field, "field-scalar weights need a common field");
            require_sum_one(weights, joint_field ? a.field : std::nullopt);
            require_factor_pred(a, h, Predicate::saturating(weights), "first");
            require_factor_pred(b, hprime, Predicate::saturating(weights), "second");
            claim = Predicate::saturating(weights);
            break;
        }
        case ProductMode::twominus_or_half_sat: {
            const bool two_minus =
                weights.pairs == WeightFamily::two_minus_one().pairs && !weights.field_mode();
            const bool half_half =
                weights.pairs == WeightFamily::half_half().pairs && !weights.field_mode();
            require(two_minus || half_half, "weight is (2,-1) or (1/2,1/2)");
            if (half_half)
                require(a.group.order % 2 == 1 && b.group.order % 2 == 1,
                        "odd-order factors for (1/2,1/2)");
            require_factor_pred(a, h, Predicate::saturating(weights), "first");
            require_factor_pred(b, hprime, Predicate::saturating(weights), "second");
            claim = Predicate::saturating(weights);
            break;
        }
        case ProductMode::half_half_via_doubling: {
            require(a.group.order % 2 == 1 && b.group.order % 2 == 1, "odd-order factors");
            require(h.contains(0) && hprime.contains(0), "factors contain the zero element");
            require_factor_pred(a, h, Predicate::saturating(WeightFamily::one_one()), "first");
            require_factor_pred(b, hprime, Predicate::saturating(WeightFamily::one_one()),
                                "second");
            claim = Predicate::saturating(WeightFamily::one_one());
            break;
        }
        case ProductMode::one_minus_one_sat: {
            require(h.contains(0) && hprime.contains(0), "factors contain the zero element");
            require_factor_pred(a, h, Predicate::saturating(WeightFamily::one_minus_one()),
                                "first");
            require_factor_pred(b, hprime,
                                Predicate::saturating(WeightFamily::one_minus_one()), "second");
            claim = Predicate::saturating(WeightFamily::one_minus_one());
            break;
        }
    }

    // Halving 2H x 2H' maps (2h, 2h') back to (h, h'), so every mode emits
    // the plain Cartesian product.
    std::vector<std::uint64_t> pts;
    pts.reserve(h.size() * hprime.size());
    for (std::uint64_t x : h.indices())
        for (std::uint64_t y : hprime.indices()) pts.push_back(x * b.group.order + y);

    return {"product-compose",
            {{"mode", mode_name(mode)},
             {"left", u2s(a.group.order)},
             {"right", u2s(b.group.order)}},
            prod,
            PointSet::from_indices(prod.group, std::move(pts)),
            h.size() * hprime.size(),
            {claim}};
}

PointSet affine_transform(const Ambient& ambient, const PointSet& s, std::uint64_t lambda,
                          std::uint64_t translate) {
    if (!ambient.field_mode())
        throw std::invalid_argument("affine_transform requires a field-mode ambient space");
    if (!(s.group() == ambient.group))
        throw std::invalid_argument("affine_transform: set does not live in the ambient group");
    if (lambda == 0 || lambda >= ambient.field->q)
        throw std::invalid_argument("affine_transform requires a nonzero field scalar");
    if (translate >= ambient.group.order)
        throw std::out_of_range("affine_transform: translate out of range");
    std::vector<std::uint64_t> pts;
    pts.reserve(s.size());
    for (std::uint64_t x : s.indices())
        pts.push_back(ambient.group.add(ambient.scalar_mul(lambda, x), translate));
    return PointSet::from_indices(ambient.group, std::move(pts));
}

ConstructionRecord subgroup_compose(const PointSet& s, const PointSet& t, std::int64_t w1,
                                    std::int64_t w2) {
    if (w1 + w2 != 1) throw std::invalid_argument("subgroup_compose requires w1 + w2 = 1");
    const Group& gs = s.group();
    const Group& gt = t.group();
    if (gs.rank() != 1 || gt.rank() != 1)
        throw std::invalid_argument("subgroup_compose uses the cyclic form: S in Z_m, T in Z_n");
    if (s.empty() || t.empty())
        throw std::invalid_argument("subgroup_compose requires non-empty factors");
    const std::uint64_t m = gs.order, n = gt.order;

    const WeightFamily w =
        WeightFamily::single(Coefficient::integer(w1), Coefficient::integer(w2));
    const Ambient amb_s = Ambient::of_group(gs), amb_t = Ambient::of_group(gt);

    // Avoidance transfers only when no difference order divides w1.
    const auto order_ok = [w1](const PointSet& set) {
        const auto& idx = set.indices();
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = i + 1; j < idx.size(); ++j) {
                const std::uint64_t ord =
                    set.group().element_order(set.group().sub(idx[i], idx[j]));
                if (static_cast<std::uint64_t>(std::llabs(w1)) % ord == 0) return false;
            }
        return true;
    };
    const bool sat_ok = holds(amb_s, s, Predicate::saturating(w)) &&
                        holds(amb_t, t, Predicate::saturating(w));
    const bool avoid_ok = holds(amb_s, s, Predicate::avoiding(w)) &&
                          holds(amb_t, t, Predicate::avoiding(w)) && order_ok(s) &&
                          order_ok(t);

    std::vector<Predicate> claims;
    if (sat_ok && avoid_ok) {
        claims.push_back(Predicate::complete(w));
    } else if (sat_ok) {
        claims.push_back(Predicate::saturating(w));
    } else if (avoid_ok) {
        claims.push_back(Predicate::avoiding(w));
    } else {
        throw HypothesisError(
            "hypothesis failed: factors are neither both saturating nor both avoiding "
            "with the difference-order condition");
    }

    const Group g = Group::cyclic(n * m);
    std::vector<std::uint64_t> pts;
    pts.reserve(s.size() * t.size());
    for (std::uint64_t aa : s.indices())
        for (std::uint64_t bb : t.indices()) pts.push_back(aa * n + bb);
    return {"subgroup-compose",
            {{"m", u2s(m)},
             {"n", u2s(n)},
             {"w1", std::to_string(w1)},
             {"w2", std::to_string(w2)}},
            Ambient::of_group(g),
            PointSet::from_indices(g, std::move(pts)),
            s.size() * t.size(),
            std::move(claims)};
}

}  // namespace apsat
