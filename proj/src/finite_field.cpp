#include "apsat/finite_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace apsat {

namespace {

constexpr std::uint64_t kMaxFieldSize = std::uint64_t(1) << 24;

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Dense polynomial over F_p, low-to-high, no trailing-zero guarantee.
using Poly = std::vector<std::uint64_t>;

std::size_t poly_degree(const Poly& f) {
    std::size_t d = f.size();
    while (d > 0 && f[d - 1] == 0) --d;
    return d == 0 ? 0 : d - 1;
}

bool poly_is_zero(const Poly& f) {
    return std::all_of(f.begin(), f.end(), [](std::uint64_t c) { return c == 0; });
}

// Remainder of f modulo the monic polynomial g.
Poly poly_mod(Poly f, const Poly& g, std::uint64_t p) {
    const std::size_t dg = poly_degree(g);
    while (!poly_is_zero(f) && poly_degree(f) >= dg) {
        const std::size_t df = poly_degree(f);
        const std::uint64_t lead = f[df];
        const std::size_t shift = df - dg;
        for (std::size_t i = 0; i <= dg; ++i) {
            const std::uint64_t t = lead * g[i] % p;
            f[i + shift] = (f[i + shift] + p - t) % p;
        }
    }
    f.resize(dg == 0 ? 1 : dg);
    return f;
}

bool poly_divides(const Poly& g, const Poly& f, std::uint64_t p) {
    return poly_is_zero(poly_mod(f, g, p));
}

}  // namespace

std::vector<std::uint64_t> FieldSpec::digits(std::uint64_t x) const {
    std::vector<std::uint64_t> d(k);
    for (std::uint64_t i = 0; i < k; ++i) {
        d[i] = x % p;
        x /= p;
    }
    return d;
}

std::uint64_t FieldSpec::from_digits(std::span<const std::uint64_t> d) const {
    if (d.size() != k)
        throw std::invalid_argument("FieldSpec::from_digits: wrong digit count");
    std::uint64_t x = 0;
    for (std::size_t i = k; i-- > 0;) {
        if (d[i] >= p) throw std::out_of_range("FieldSpec::from_digits: digit out of range");
        x = x * p + d[i];
    }
    return x;
}

FieldSpec FieldSpec::make(std::uint64_t p, std::uint64_t k) {
    if (!is_prime(p)) throw std::invalid_argument("FieldSpec::make: characteristic must be prime");
    if (k < 1) throw std::invalid_argument("FieldSpec::make: extension degree must be positive");
    FieldSpec f;
    f.p = p;
    f.k = k;
    f.q = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (f.q > kMaxFieldSize / p)
            throw std::invalid_argument("FieldSpec::make: field size exceeds 2^24");
        f.q *= p;
    }

    // Smallest monic irreducible of degree k: scan the non-leading
    // coefficient vectors in index order and trial-divide by every monic
    // polynomial of degree at most k/2.
    f.modulus.assign(k + 1, 0);
    f.modulus[k] = 1;
    if (k > 1) {
        bool found = false;
        for (std::uint64_t v = 0; v < f.q && !found; ++v) {
            if (v % p == 0) continue;  // divisible by x
            Poly cand(k + 1, 0);
            cand[k] = 1;
            std::uint64_t t = v;
            for (std::uint64_t i = 0; i < k; ++i) {
                cand[i] = t % p;
                t /= p;
            }
            bool irreducible = true;
            for (std::uint64_t d = 1; d <= k / 2 && irreducible; ++d) {
                std::uint64_t count = 1;
                for (std::uint64_t i = 0; i < d; ++i) count *= p;
                for (std::uint64_t w = 0; w < count && irreducible; ++w) {
                    Poly div(d + 1, 0);
                    div[d] = 1;
                    std::uint64_t u = w;
                    for (std::uint64_t i = 0; i < d; ++i) {
                        div[i] = u % p;
                        u /= p;
                    }
                    if (poly_divides(div, cand, p)) irreducible = false;
                }
            }
            if (irreducible) {
                f.modulus = cand;
                found = true;
            }
        }
        if (!found)
            throw std::logic_error("FieldSpec::make: no irreducible polynomial found");
    }

    // Smallest-index element of full multiplicative order.
    const auto factors = prime_factors(f.q - 1);
    f.primitive_element = 1;
    for (std::uint64_t x = 1; x < f.q; ++x) {
        bool primitive = true;
        for (std::uint64_t r : factors) {
            if (f.pow(x, (f.q - 1) / r) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            f.primitive_element = x;
            break;
        }
    }
    return f;
}

std::uint64_t FieldSpec::from_integer(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r);
}

std::uint64_t FieldSpec::add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t res = 0, place = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        std::uint64_t c = a % p + b % p;
        if (c >= p) c -= p;
        res += c * place;
        a /= p; b /= p;
        place *= p;
    }
    return res;
}

std::uint64_t FieldSpec::neg(std::uint64_t a) const {
    std::uint64_t res = 0, place = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        const std::uint64_t c = a % p;
        res += (c == 0 ? 0 : p - c) * place;
        a /= p;
        place *= p;
    }
    return res;
}

std::uint64_t FieldSpec::sub(std::uint64_t a, std::uint64_t b) const {
    return add(a, neg(b));
}

std::uint64_t FieldSpec::mul(std::uint64_t a, std::uint64_t b) const {
    if (a >= q || b >= q) throw std::out_of_range("FieldSpec::mul: index out of range");
    if (k == 1) return a * b % p;
    const auto da = digits(a), db = digits(b);
    Poly prod(2 * k - 1, 0);
    for (std::uint64_t i = 0; i < k; ++i) {
        if (da[i] == 0) continue;
        for (std::uint64_t j = 0; j < k; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    }
    const Poly rem = poly_mod(std::move(prod), modulus, p);
    std::uint64_t res = 0;
    for (std::size_t i = rem.size(); i-- > 0;) res = res * p + rem[i];
    return res;
}

std::uint64_t FieldSpec::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t base = a, res = 1;
    while (e > 0) {
        if (e & 1) res = mul(res, base);
        base = mul(base, base);
        e >>= 1;
    }
    return res;
}

std::uint64_t FieldSpec::inv(std::uint64_t a) const {
    if (a == 0) throw std::domain_error("FieldSpec::inv: zero has no inverse");
    return pow(a, q - 2);
}

std::uint64_t FieldSpec::element_order(std::uint64_t a) const {
    if (a == 0) throw std::domain_error("FieldSpec::element_order: zero element");
    std::uint64_t ord = q - 1;
    for (std::uint64_t r : prime_factors(q - 1)) {
        while (ord % r == 0 && pow(a, ord / r) == 1) ord /= r;
    }
    return ord;
}

std::uint64_t FieldSpec::trace_to_subfield(std::uint64_t x, std::uint64_t h) const {
    if (h < 1 || k % h != 0)
        throw std::invalid_argument("FieldSpec::trace_to_subfield: subfield degree must divide k");
    std::uint64_t ph = 1;
    for (std::uint64_t i = 0; i < h; ++i) ph *= p;
    std::uint64_t acc = 0, y = x;
    for (std::uint64_t i = 0; i < k / h; ++i) {
        acc = add(acc, y);
        y = pow(y, ph);
    }
    return acc;
}

bool FieldSpec::is_square(std::uint64_t x) const {
    if (x == 0 || p == 2) return true;
    return pow(x, (q - 1) / 2) == 1;
}

std::string FieldSpec::modulus_str() const {
    std::string s;
    for (std::size_t i = modulus.size(); i-- > 0;) {
        if (modulus[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) {
            s += std::to_string(modulus[i]);
        } else {
            if (modulus[i] != 1) s += std::to_string(modulus[i]) + "*";
            s += i == 1 ? "x" : "x^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

Ambient Ambient::of_group(Group g) {
    Ambient a;
    a.group = std::move(g);
    return a;
}

Ambient Ambient::of_field(FieldSpec f, std::uint64_t dim) {
    if (dim < 1) throw std::invalid_argument("Ambient::of_field: dimension must be positive");
    Ambient a;
    a.group = Group::make(std::vector<std::uint64_t>(f.k * dim, f.p));
    a.dim = dim;
    a.field = std::move(f);
    return a;
}

std::uint64_t Ambient::vec_to_index(std::span<const std::uint64_t> elems) const {
    if (!field_mode()) throw std::logic_error("Ambient::vec_to_index: not a field ambient");
    if (elems.size() != dim)
        throw std::invalid_argument("Ambient::vec_to_index: wrong vector length");
    const FieldSpec& f = *field;
    std::vector<std::uint64_t> coords(f.k * dim);
    for (std::uint64_t j = 0; j < dim; ++j) {
        const auto d = f.digits(elems[j]);
        for (std::uint64_t i = 0; i < f.k; ++i) coords[j * f.k + i] = d[i];
    }
    return group.encode(coords);
}

std::vector<std::uint64_t> Ambient::index_to_vec(std::uint64_t index) const {
    if (!field_mode()) throw std::logic_error("Ambient::index_to_vec: not a field ambient");
    const FieldSpec& f = *field;
    const auto coords = group.decode(index);
    std::vector<std::uint64_t> elems(dim);
    for (std::uint64_t j = 0; j < dim; ++j) {
        std::span<const std::uint64_t> d(coords.data() + j * f.k, f.k);
        elems[j] = f.from_digits(d);
    }
    return elems;
}

std::uint64_t Ambient::scalar_mul(std::uint64_t lambda, std::uint64_t x) const {
    if (!field_mode()) throw std::logic_error("Ambient::scalar_mul: not a field ambient");
    auto v = index_to_vec(x);
    for (auto& e : v) e = field->mul(lambda, e);
    return vec_to_index(v);
}

bool Ambient::operator==(const Ambient& other) const {
    if (!(group == other.group)) return false;
    if (field.has_value() != other.field.has_value()) return false;
    if (field.has_value()) return *field == *other.field && dim == other.dim;
    return true;
}

WeightFamily make_line_family(const FieldSpec& f) {
    WeightFamily fam;
    for (std::uint64_t lambda = 2; lambda < f.q; ++lambda)
        fam.scalar_pairs.emplace_back(lambda, f.sub(f.one(), lambda));
    return fam;
}

}  // namespace apsat
