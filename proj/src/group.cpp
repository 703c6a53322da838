#include "apsat/group.hpp"

#include <numeric>
#include <stdexcept>

namespace apsat {

namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t(1) << 32;

// Extended Euclid on (a, m); returns (g, x) with a*x == g (mod m).
std::pair<std::uint64_t, std::int64_t> ext_gcd(std::uint64_t a, std::uint64_t m) {
    std::int64_t x0 = 1, x1 = 0;
    std::uint64_t r0 = a, r1 = m;
    while (r1 != 0) {
        const std::uint64_t q = r0 / r1;
        const std::uint64_t r2 = r0 - q * r1;
        const std::int64_t x2 = x0 - static_cast<std::int64_t>(q) * x1;
        r0 = r1; r1 = r2;
        x0 = x1; x1 = x2;
    }
    return {r0, x0};
}

std::uint64_t normalize_mod(std::int64_t v, std::uint64_t m) {
    if (m == 1) return 0;
    std::int64_t r = v % static_cast<std::int64_t>(m);
    if (r < 0) r += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t mod_inverse(std::int64_t a, std::uint64_t m) {
    if (m == 0) throw std::domain_error("mod_inverse: zero modulus");
    if (m == 1) return 0;
    const std::uint64_t an = normalize_mod(a, m);
    auto [g, x] = ext_gcd(an, m);
    if (g != 1)
        throw std::domain_error("mod_inverse: " + std::to_string(a) +
                                " is not invertible modulo " + std::to_string(m));
    return normalize_mod(x, m);
}

Group Group::make(std::vector<std::uint64_t> factors) {
    if (factors.empty())
        throw std::invalid_argument("Group::make: empty factor list");
    Group g;
    g.factors = std::move(factors);
    g.order = 1;
    g.exponent = 1;
    for (std::uint64_t m : g.factors) {
        if (m == 0) throw std::invalid_argument("Group::make: zero factor");
        if (g.order > kMaxOrder / m)
            throw std::invalid_argument("Group::make: group order exceeds 2^32");
        g.order *= m;
        g.exponent = std::lcm(g.exponent, m);
    }
    return g;
}

std::uint64_t Group::encode(std::span<const std::uint64_t> coords) const {
    if (coords.size() != factors.size())
        throw std::invalid_argument("Group::encode: coordinate count mismatch");
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (coords[i] >= factors[i])
            throw std::out_of_range("Group::encode: coordinate out of range");
        index = index * factors[i] + coords[i];
    }
    return index;
}

std::vector<std::uint64_t> Group::decode(std::uint64_t index) const {
    if (index >= order) throw std::out_of_range("Group::decode: index out of range");
    std::vector<std::uint64_t> coords(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
        coords[i] = index % factors[i];
        index /= factors[i];
    }
    return coords;
}

std::uint64_t Group::add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t res = 0, place = 1;
    for (std::size_t i = factors.size(); i-- > 0;) {
        const std::uint64_t m = factors[i];
        const std::uint64_t ca = a % m, cb = b % m;
        a /= m; b /= m;
        std::uint64_t c = ca + cb;
        if (c >= m) c -= m;
        res += c * place;
        place *= m;
    }
    return res;
}

std::uint64_t Group::neg(std::uint64_t a) const {
    std::uint64_t res = 0, place = 1;
    for (std::size_t i = factors.size(); i-- > 0;) {
        const std::uint64_t m = factors[i];
        const std::uint64_t ca = a % m;
        a /= m;
        res += (ca == 0 ? 0 : m - ca) * place;
        place *= m;
    }
    return res;
}

std::uint64_t Group::sub(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t res = 0, place = 1;
    for (std::size_t i = factors.size(); i-- > 0;) {
        const std::uint64_t m = factors[i];
        const std::uint64_t ca = a % m, cb = b % m;
        a /= m; b /= m;
        res += (ca >= cb ? ca - cb : ca + m - cb) * place;
        place *= m;
    }
    return res;
}

std::uint64_t Group::element_order(std::uint64_t a) const {
    std::uint64_t ord = 1;
    for (std::size_t i = factors.size(); i-- > 0;) {
        const std::uint64_t m = factors[i];
        const std::uint64_t ca = a % m;
        a /= m;
        ord = std::lcm(ord, m / std::gcd(ca, m));
    }
    return ord;
}

Coefficient Coefficient::ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("Coefficient::ratio: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    return Coefficient{num, den};
}

std::string Coefficient::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::uint64_t coeff_apply(const Group& g, const Coefficient& c, std::uint64_t a) {
    std::uint64_t res = 0, place = 1;
    for (std::size_t i = g.factors.size(); i-- > 0;) {
        const std::uint64_t m = g.factors[i];
        const std::uint64_t ca = a % m;
        a /= m;
        if (m > 1) {
            const std::uint64_t mult =
                (normalize_mod(c.num, m) * mod_inverse(c.den, m)) % m;
            res += (mult * ca % m) * place;
        }
        place *= m;
    }
    return res;
}

std::vector<std::uint64_t> coeff_action_table(const Group& g, const Coefficient& c) {
    // Validate invertibility of the denominator against the group exponent
    // up front so that a failure is reported once and uniformly.
    if (std::gcd(static_cast<std::uint64_t>(c.den), g.exponent) != 1)
        throw std::domain_error("coefficient " + c.str() +
                                " is not applicable: denominator shares a factor with the group exponent " +
                                std::to_string(g.exponent));
    std::vector<std::uint64_t> mult(g.factors.size());
    for (std::size_t i = 0; i < g.factors.size(); ++i) {
        const std::uint64_t m = g.factors[i];
        mult[i] = m == 1 ? 0 : (normalize_mod(c.num, m) * mod_inverse(c.den, m)) % m;
    }
    std::vector<std::uint64_t> table(g.order);
    for (std::uint64_t x = 0; x < g.order; ++x) {
        std::uint64_t a = x, res = 0, place = 1;
        for (std::size_t i = g.factors.size(); i-- > 0;) {
            const std::uint64_t m = g.factors[i];
            res += (mult[i] * (a % m) % m) * place;
            a /= m;
            place *= m;
        }
        table[x] = res;
    }
    return table;
}

std::string WeightPair::str() const {
    return "(" + lambda1.str() + "," + lambda2.str() + ")";
}

std::uint64_t weight_eval(const Group& g, const WeightPair& w, std::uint64_t a,
                          std::uint64_t b) {
    return g.add(coeff_apply(g, w.lambda1, a), coeff_apply(g, w.lambda2, b));
}

WeightFamily WeightFamily::single(Coefficient l1, Coefficient l2) {
    WeightFamily f;
    f.pairs.push_back(WeightPair{l1, l2});
    return f;
}

WeightFamily WeightFamily::two_minus_one() {
    return single(Coefficient::integer(2), Coefficient::integer(-1));
}

WeightFamily WeightFamily::one_one() {
    return single(Coefficient::integer(1), Coefficient::integer(1));
}

WeightFamily WeightFamily::one_minus_one() {
    return single(Coefficient::integer(1), Coefficient::integer(-1));
}

WeightFamily WeightFamily::half_half() {
    return single(Coefficient::ratio(1, 2), Coefficient::ratio(1, 2));
}

std::string WeightFamily::str() const {
    std::string s = "{";
    if (field_mode()) {
        for (std::size_t i = 0; i < scalar_pairs.size(); ++i) {
            if (i) s += ",";
            s += "(#" + std::to_string(scalar_pairs[i].first) + ",#" +
                 std::to_string(scalar_pairs[i].second) + ")";
        }
    } else {
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (i) s += ",";
            s += pairs[i].str();
        }
    }
    return s + "}";
}

PointSet::PointSet(Group g) : group_(std::move(g)), bits_(group_.order) {}

PointSet PointSet::from_indices(Group g, std::vector<std::uint64_t> indices) {
    PointSet s(std::move(g));
    for (std::uint64_t i : indices) {
        if (i >= s.group_.order)
            throw std::out_of_range("PointSet::from_indices: index " +
                                    std::to_string(i) + " out of range");
        s.bits_.set(i);
    }
    s.indices_.reserve(indices.size());
    for (std::uint64_t i = 0; i < s.group_.order; ++i)
        if (s.bits_.test(i)) s.indices_.push_back(i);
    return s;
}

PointSet PointSet::full(Group g) {
    std::vector<std::uint64_t> all(g.order);
    std::iota(all.begin(), all.end(), std::uint64_t(0));
    return from_indices(std::move(g), std::move(all));
}

PointSet PointSet::complement() const {
    std::vector<std::uint64_t> rest;
    rest.reserve(group_.order - indices_.size());
    for (std::uint64_t i = 0; i < group_.order; ++i)
        if (!bits_.test(i)) rest.push_back(i);
    return from_indices(group_, std::move(rest));
}

PointSet sumset(const PointSet& a, const PointSet& b, bool restricted) {
    if (!(a.group() == b.group()))
        throw std::invalid_argument("sumset: operands live in different groups");
    const Group& g = a.group();
    Bitset out(g.order);
    for (std::uint64_t x : a.indices())
        for (std::uint64_t y : b.indices()) {
            if (restricted && x == y) continue;
            out.set(g.add(x, y));
        }
    std::vector<std::uint64_t> idx;
    for (std::uint64_t i = 0; i < g.order; ++i)
        if (out.test(i)) idx.push_back(i);
    return PointSet::from_indices(g, std::move(idx));
}

}  // namespace apsat
