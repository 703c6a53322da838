#include "apsat/certificates.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace apsat {

namespace {

using Json = nlohmann::ordered_json;

// ----- group-spec grammar ----------------------------------------------------

[[noreturn]] void spec_error(const std::string& s, std::size_t pos, const std::string& what) {
    throw std::invalid_argument("group spec \"" + s + "\": " + what + " at position " +
                                std::to_string(pos));
}

std::uint64_t parse_number(const std::string& s, std::size_t& pos, const char* what) {
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
        spec_error(s, pos, std::string("expected ") + what);
    std::uint64_t v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        const std::uint64_t d = static_cast<std::uint64_t>(s[pos] - '0');
        if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10)
            spec_error(s, pos, "number too large");
        v = v * 10 + d;
        ++pos;
    }
    return v;
}

// ----- JSON helpers -----------------------------------------------------------

[[noreturn]] void cert_error(const std::string& what) {
    throw std::runtime_error("certificate: " + what);
}

const Json& require_key(const Json& j, const char* key) {
    if (!j.contains(key)) cert_error(std::string("missing key \"") + key + "\"");
    return j[key];
}

std::string require_string(const Json& j, const char* key) {
    const Json& v = require_key(j, key);
    if (!v.is_string()) cert_error(std::string("key \"") + key + "\" must be a string");
    return v.get<std::string>();
}

bool require_bool(const Json& j, const char* key) {
    const Json& v = require_key(j, key);
    if (!v.is_boolean()) cert_error(std::string("key \"") + key + "\" must be a boolean");
    return v.get<bool>();
}

std::uint64_t require_u64(const Json& j, const char* key) {
    const Json& v = require_key(j, key);
    if (!v.is_number_unsigned())
        cert_error(std::string("key \"") + key + "\" must be a non-negative integer");
    return v.get<std::uint64_t>();
}

Json witness_to_json(const Witness& w) {
    Json j;
    switch (w.type) {
        case Witness::Type::avoid_triple:
            j["type"] = "avoid-triple";
            j["a"] = w.a;
            j["a1"] = w.a1;
            j["a2"] = w.a2;
            j["weight_index"] = w.weight_index;
            break;
        case Witness::Type::three_ap_triple:
            j["type"] = "3ap-triple";
            j["a"] = w.a;
            j["a1"] = w.a1;
            j["a2"] = w.a2;
            break;
        case Witness::Type::unsaturated:
            j["type"] = "unsaturated";
            j["x"] = w.x;
            break;
        case Witness::Type::sidon_collision:
            j["type"] = "sidon-collision";
            j["sums"] = w.sums;
            break;
    }
    return j;
}

Witness witness_from_json(const Json& j) {
    if (!j.is_object()) cert_error("corrupt witness: not an object");
    const std::string t = require_string(j, "type");
    Witness w;
    if (t == "avoid-triple") {
        w.type = Witness::Type::avoid_triple;
        w.a = require_u64(j, "a");
        w.a1 = require_u64(j, "a1");
        w.a2 = require_u64(j, "a2");
        const Json& wi = require_key(j, "weight_index");
        if (!wi.is_number_integer()) cert_error("corrupt witness: weight_index");
        w.weight_index = wi.get<int>();
    } else if (t == "3ap-triple") {
        w.type = Witness::Type::three_ap_triple;
        w.a = require_u64(j, "a");
        w.a1 = require_u64(j, "a1");
        w.a2 = require_u64(j, "a2");
    } else if (t == "unsaturated") {
        w.type = Witness::Type::unsaturated;
        w.x = require_u64(j, "x");
    } else if (t == "sidon-collision") {
        w.type = Witness::Type::sidon_collision;
        const Json& s = require_key(j, "sums");
        if (!s.is_array() || s.size() != 4) cert_error("corrupt witness: sums");
        for (std::size_t i = 0; i < 4; ++i) {
            if (!s[i].is_number_unsigned()) cert_error("corrupt witness: sums");
            w.sums[i] = s[i].get<std::uint64_t>();
        }
    } else {
        cert_error("corrupt witness: unknown type \"" + t + "\"");
    }
    return w;
}

}  // namespace

Ambient parse_group_spec(const std::string& s) {
    std::size_t pos = 0;
    if (s.empty()) spec_error(s, 0, "empty spec");
    if (s[0] == 'F') {
        pos = 1;
        const std::uint64_t p = parse_number(s, pos, "a prime after 'F'");
        if (pos >= s.size() || s[pos] != '^') spec_error(s, pos, "expected '^<degree>'");
        ++pos;
        const std::size_t kpos = pos;
        const std::uint64_t k = parse_number(s, pos, "an extension degree");
        if (k == 0) spec_error(s, kpos, "extension degree must be >= 1");
        if (pos >= s.size() || s[pos] != ':') spec_error(s, pos, "expected ':<dimension>'");
        ++pos;
        const std::size_t dpos = pos;
        const std::uint64_t dim = parse_number(s, pos, "a dimension");
        if (dim == 0) spec_error(s, dpos, "dimension must be >= 1");
        if (pos != s.size()) spec_error(s, pos, "trailing characters");
        return Ambient::of_field(FieldSpec::make(p, k), dim);
    }
    std::vector<std::uint64_t> factors;
    while (true) {
        if (pos >= s.size() || s[pos] != 'Z') spec_error(s, pos, "expected 'Z<m>'");
        ++pos;
        const std::size_t mpos = pos;
        const std::uint64_t m = parse_number(s, pos, "a modulus");
        if (m == 0) spec_error(s, mpos, "modulus must be >= 1");
        std::uint64_t count = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            const std::size_t cpos = pos;
            count = parse_number(s, pos, "an exponent");
            if (count == 0) spec_error(s, cpos, "exponent must be >= 1");
            if (count > 4096) spec_error(s, cpos, "exponent too large");
        }
        for (std::uint64_t i = 0; i < count; ++i) factors.push_back(m);
        if (pos == s.size()) break;
        if (s[pos] != 'x') spec_error(s, pos, "expected 'x' between factors");
        ++pos;
    }
    return Ambient::of_group(Group::make(std::move(factors)));
}

std::string print_group_spec(const Ambient& ambient) {
    if (ambient.field_mode())
        return "F" + std::to_string(ambient.field->p) + "^" + std::to_string(ambient.field->k) +
               ":" + std::to_string(ambient.dim);
    std::string out;
    const auto& f = ambient.group.factors;
    for (std::size_t i = 0; i < f.size();) {
        std::size_t j = i;
        while (j < f.size() && f[j] == f[i]) ++j;
        if (!out.empty()) out += "x";
        out += "Z" + std::to_string(f[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::string decimal_string(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::optional<PredicateKind> predicate_kind_from_name(const std::string& name) {
    if (name == "3ap-free") return PredicateKind::three_ap_free;
    if (name == "avoiding") return PredicateKind::w_avoiding;
    if (name == "3ap-saturating") return PredicateKind::three_ap_saturating;
    if (name == "saturating") return PredicateKind::w_saturating;
    if (name == "complete-3ap") return PredicateKind::complete_three_ap;
    if (name == "complete") return PredicateKind::complete_w;
    if (name == "sidon") return PredicateKind::sidon;
    if (name == "cap") return PredicateKind::cap;
    if (name == "line-saturating") return PredicateKind::line_saturating;
    return std::nullopt;
}

Certificate make_certificate(const Ambient& ambient, const PointSet& set,
                             const VerificationReport& report) {
    Certificate c;
    c.group = print_group_spec(ambient);
    c.predicate = report.predicate;
    c.set = set.indices();
    c.result = report.holds;
    c.witness = report.witness;
    c.seconds = decimal_string(report.seconds);
    return c;
}

std::string certificate_to_json(const Certificate& cert) {
    Json j;
    j["schema_version"] = cert.schema_version;
    j["tool"] = cert.tool;
    j["group"] = cert.group;
    j["predicate"] = cert.predicate.name();
    if (!cert.predicate.weights.empty()) {
        Json arr = Json::array();
        if (cert.predicate.weights.field_mode()) {
            for (const auto& [l1, l2] : cert.predicate.weights.scalar_pairs)
                arr.push_back(Json::array({l1, l2}));
            j["field_weights"] = arr;
        } else {
            for (const WeightPair& w : cert.predicate.weights.pairs)
                arr.push_back(Json::array(
                    {w.lambda1.num, w.lambda1.den, w.lambda2.num, w.lambda2.den}));
            j["weights"] = arr;
        }
    }
    j["set"] = cert.set;
    j["result"] = cert.result;
    if (cert.witness) j["witness"] = witness_to_json(*cert.witness);
    if (cert.construction) {
        Json cj;
        cj["name"] = cert.construction->name;
        Json pj = Json::object();
        for (const auto& [k, v] : cert.construction->params) pj[k] = v;
        cj["params"] = pj;
        if (cert.construction->seed) cj["seed"] = *cert.construction->seed;
        j["construction"] = cj;
    }
    if (cert.search) {
        Json sj;
        if (cert.search->minimum) sj["minimum"] = *cert.search->minimum;
        sj["none_exists"] = cert.search->none_exists;
        sj["nodes"] = cert.search->nodes;
        sj["exhaustive"] = cert.search->exhaustive;
        j["search"] = sj;
    }
    if (!cert.bounds.empty()) {
        Json bj = Json::object();
        for (const auto& [k, v] : cert.bounds) bj[k] = v;
        j["bounds"] = bj;
    }
    j["seconds"] = cert.seconds;
    return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        cert_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) cert_error("top level must be an object");
    static const char* allowed[] = {"schema_version", "tool",    "group",        "predicate",
                                    "weights",        "field_weights",           "set",
                                    "result",         "witness", "construction", "search",
                                    "bounds",         "seconds"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) cert_error("unknown key \"" + it.key() + "\"");
    }

    Certificate c;
    const Json& sv = require_key(j, "schema_version");
    if (!sv.is_number_integer()) cert_error("schema_version must be an integer");
    c.schema_version = sv.get<int>();
    if (c.schema_version != kSchemaVersion)
        cert_error("unsupported schema_version " + std::to_string(c.schema_version));
    c.tool = require_string(j, "tool");
    c.group = require_string(j, "group");

    const std::string pname = require_string(j, "predicate");
    const auto kind = predicate_kind_from_name(pname);
    if (!kind) cert_error("unknown predicate \"" + pname + "\"");
    c.predicate.kind = *kind;
    if (j.contains("weights") && j.contains("field_weights"))
        cert_error("weights and field_weights are mutually exclusive");
    if (j.contains("weights")) {
        const Json& ws = j["weights"];
        if (!ws.is_array()) cert_error("weights must be an array");
        for (const Json& w : ws) {
            if (!w.is_array() || w.size() != 4) cert_error("each weight must be [n1,d1,n2,d2]");
            for (const Json& e : w)
                if (!e.is_number_integer()) cert_error("weight entries must be integers");
            try {
                c.predicate.weights.pairs.push_back(
                    WeightPair{Coefficient::ratio(w[0].get<std::int64_t>(), w[1].get<std::int64_t>()),
                               Coefficient::ratio(w[2].get<std::int64_t>(), w[3].get<std::int64_t>())});
            } catch (const std::exception& e) {
                cert_error(std::string("bad weight coefficient: ") + e.what());
            }
        }
    }
    if (j.contains("field_weights")) {
        const Json& ws = j["field_weights"];
        if (!ws.is_array()) cert_error("field_weights must be an array");
        for (const Json& w : ws) {
            if (!w.is_array() || w.size() != 2 || !w[0].is_number_unsigned() ||
                !w[1].is_number_unsigned())
                cert_error("each field weight must be [l1,l2]");
            c.predicate.weights.scalar_pairs.emplace_back(w[0].get<std::uint64_t>(),
                                                          w[1].get<std::uint64_t>());
        }
    }

    // The group spec must itself parse; element indices must fit in it.
    Ambient amb;
    try {
        amb = parse_group_spec(c.group);
    } catch (const std::exception& e) {
        cert_error(std::string("bad group spec: ") + e.what());
    }
    const Json& set = require_key(j, "set");
    if (!set.is_array()) cert_error("set must be an array");
    for (const Json& e : set) {
        if (!e.is_number_unsigned()) cert_error("set entries must be non-negative integers");
        const std::uint64_t v = e.get<std::uint64_t>();
        if (v >= amb.group.order) cert_error("set entry " + std::to_string(v) + " out of range");
        if (!c.set.empty() && v <= c.set.back()) cert_error("set must be strictly increasing");
        c.set.push_back(v);
    }

    c.result = require_bool(j, "result");
    if (j.contains("witness")) c.witness = witness_from_json(j["witness"]);

    if (j.contains("construction")) {
        const Json& cj = j["construction"];
        if (!cj.is_object()) cert_error("construction must be an object");
        Certificate::Construction rec;
        rec.name = require_string(cj, "name");
        const Json& pj = require_key(cj, "params");
        if (!pj.is_object()) cert_error("construction params must be an object");
        for (auto it = pj.begin(); it != pj.end(); ++it) {
            if (!it.value().is_string()) cert_error("construction param values must be strings");
            rec.params.emplace_back(it.key(), it.value().get<std::string>());
        }
        if (cj.contains("seed")) rec.seed = require_u64(cj, "seed");
        c.construction = std::move(rec);
    }

    if (j.contains("search")) {
        const Json& sj = j["search"];
        if (!sj.is_object()) cert_error("search must be an object");
        Certificate::Search srch;
        if (sj.contains("minimum")) srch.minimum = require_u64(sj, "minimum");
        srch.none_exists = require_bool(sj, "none_exists");
        srch.nodes = require_u64(sj, "nodes");
        srch.exhaustive = require_bool(sj, "exhaustive");
        c.search = srch;
    }

    if (j.contains("bounds")) {
        const Json& bj = j["bounds"];
        if (!bj.is_object()) cert_error("bounds must be an object");
        for (auto it = bj.begin(); it != bj.end(); ++it) {
            if (!it.value().is_string()) cert_error("bound values must be decimal strings");
            c.bounds.emplace_back(it.key(), it.value().get<std::string>());
        }
    }

    c.seconds = require_string(j, "seconds");
    return c;
}

void save_certificate(const Certificate& cert, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open \"" + path + "\" for writing");
    out << certificate_to_json(cert);
    if (!out) throw std::runtime_error("write to \"" + path + "\" failed");
}

Certificate load_certificate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return certificate_from_json(buf.str());
}

VerificationReport reverify(const Certificate& cert, const VerifyOptions& options) {
    const Ambient amb = parse_group_spec(cert.group);
    const PointSet set = PointSet::from_indices(amb.group, cert.set);
    return verify(amb, set, cert.predicate, options);
}

}  // namespace apsat
