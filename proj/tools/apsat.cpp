#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "apsat/certificates.hpp"
#include "apsat/constructions.hpp"
#include "apsat/predicates.hpp"
#include "apsat/search.hpp"

namespace {

using namespace apsat;

struct GlobalOpts {
    unsigned threads = 1;
    std::uint64_t budget = 1'000'000'000;
    std::uint64_t seed = 0;
};

// ----- small parsers ----------------------------------------------------------

std::int64_t parse_i64(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + " \"" + s + "\"");
    }
}

Coefficient parse_coefficient(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos)
        return Coefficient::integer(parse_i64(s, "coefficient"));
    return Coefficient::ratio(parse_i64(s.substr(0, slash), "coefficient numerator"),
                              parse_i64(s.substr(slash + 1), "coefficient denominator"));
}

WeightPair parse_weight_pair(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("weight pair \"" + s + "\" must look like \"2,-1\"");
    return WeightPair{parse_coefficient(s.substr(0, comma)),
                      parse_coefficient(s.substr(comma + 1))};
}

std::vector<std::uint64_t> parse_set_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        const std::string tok = s.substr(pos, comma - pos);
        const std::int64_t v = parse_i64(tok, "set element");
        if (v < 0) throw std::invalid_argument("set element \"" + tok + "\" is negative");
        out.push_back(static_cast<std::uint64_t>(v));
        pos = comma + 1;
    }
    return out;
}

Predicate build_predicate(const std::string& pred_name, const std::vector<std::string>& wstrs) {
    const auto kind = predicate_kind_from_name(pred_name);
    if (!kind) throw std::invalid_argument("unknown predicate \"" + pred_name + "\"");
    Predicate pred;
    pred.kind = *kind;
    for (const std::string& w : wstrs) pred.weights.pairs.push_back(parse_weight_pair(w));
    if (pred.needs_weights() && pred.weights.empty())
        throw std::invalid_argument("predicate \"" + pred_name +
                                    "\" requires at least one --w pair");
    return pred;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void emit_certificate(const Certificate& cert, const std::string& out_path) {
    const std::string text = certificate_to_json(cert);
    std::fputs(text.c_str(), stdout);
    if (!out_path.empty()) save_certificate(cert, out_path);
}

std::vector<std::pair<std::string, std::string>> bound_strings(std::uint64_t n) {
    return {{"sat_3ap", decimal_string(lower_bound(BoundKind::sat_3ap, n).value)},
            {"sat_w", decimal_string(lower_bound(BoundKind::sat_w, n).value)},
            {"sat_diag", decimal_string(lower_bound(BoundKind::sat_diag, n).value)}};
}

// ----- construct ---------------------------------------------------------------

ConstructionRecord build_named(const std::string& name, const std::string& group_spec,
                               std::uint64_t n_param, const GlobalOpts& g) {
    if (name == "singer") {
        if (n_param == 0) throw std::invalid_argument("singer requires --n");
        ConstructionRecord rec = singer(n_param);
        if (!group_spec.empty() && !(parse_group_spec(group_spec) == rec.ambient))
            throw std::invalid_argument("--group does not match the singer ambient " +
                                        print_group_spec(rec.ambient));
        return rec;
    }
    if (group_spec.empty()) throw std::invalid_argument("construct requires --group");
    const Ambient amb = parse_group_spec(group_spec);
    const auto require_plane = [&](const char* who) {
        if (!amb.field_mode() || amb.dim != 2)
            throw std::invalid_argument(std::string(who) +
                                        " requires a field-mode spec F<p>^<k>:2");
    };
    const auto require_cyclic = [&](const char* who) {
        if (amb.field_mode() || amb.group.rank() != 1)
            throw std::invalid_argument(std::string(who) + " requires a cyclic spec Z<m>");
    };
    if (name == "parabola") {
        require_plane("parabola");
        return parabola(*amb.field);
    }
    if (name == "lines") {
        require_plane("lines");
        return lines_construction(*amb.field, LinesVariant::axes_symmetric);
    }
    if (name == "lines-star") {
        require_plane("lines-star");
        return lines_construction(*amb.field, LinesVariant::axes_star);
    }
    if (name == "axes" || name == "axes-star") {
        if (amb.field_mode() || amb.group.rank() != 2)
            throw std::invalid_argument(name + " requires a rank-2 spec Z<a>xZ<b>");
        return axes_product(Group::cyclic(amb.group.factors[0]),
                            Group::cyclic(amb.group.factors[1]),
                            name == "axes" ? AxesVariant::symmetric : AxesVariant::star);
    }
    if (name == "mrose-mod") {
        require_cyclic("mrose-mod");
        return mrose_mod(amb.group.order);
    }
    if (name == "gyok3") {
        require_cyclic("gyok3");
        return gyok3_set(amb.group.order);
    }
    if (name == "random-saturating") {
        if (amb.field_mode())
            throw std::invalid_argument("random-saturating requires a group-mode spec");
        return random_saturating(amb.group, g.seed);
    }
    throw std::invalid_argument(
        "unknown construction \"" + name +
        "\" (try parabola, lines, lines-star, axes, axes-star, singer, mrose-mod, gyok3, "
        "random-saturating)");
}

int run_construct(const std::string& name, const std::string& group_spec, std::uint64_t n_param,
                  const std::string& out_path, const GlobalOpts& g) {
    const ConstructionRecord rec = build_named(name, group_spec, n_param, g);
    const VerifyOptions vo{g.threads};

    std::vector<VerificationReport> reports;
    double total_seconds = 0.0;
    bool all_ok = true;
    for (const Predicate& claim : rec.claims) {
        reports.push_back(verify(rec.ambient, rec.points, claim, vo));
        total_seconds += reports.back().seconds;
        all_ok = all_ok && reports.back().holds;
    }
    if (reports.empty())
        throw std::invalid_argument("construction \"" + name +
                                    "\" makes no verifiable claim for these parameters");
    const VerificationReport* chosen = &reports.front();
    for (const auto& r : reports)
        if (!r.holds) {
            chosen = &r;
            break;
        }

    Certificate cert = make_certificate(rec.ambient, rec.points, *chosen);
    cert.seconds = decimal_string(total_seconds);
    Certificate::Construction prov;
    prov.name = rec.name;
    prov.params = rec.params;
    if (name == "random-saturating") prov.seed = g.seed;
    cert.construction = std::move(prov);
    emit_certificate(cert, out_path);
    if (!all_ok && chosen->witness)
        std::fprintf(stderr, "claim %s fails: %s\n", chosen->predicate.name().c_str(),
                     chosen->witness->describe().c_str());
    return all_ok ? 0 : 1;
}

// ----- verify -------------------------------------------------------------------

int run_verify(const std::string& group_spec, const std::string& set_str,
               const std::string& pred_name, const std::vector<std::string>& wstrs,
               const std::string& out_path, const GlobalOpts& g) {
    const Ambient amb = parse_group_spec(group_spec);
    const PointSet set = PointSet::from_indices(amb.group, parse_set_list(set_str));
    const Predicate pred = build_predicate(pred_name, wstrs);
    const VerificationReport rep = verify(amb, set, pred, VerifyOptions{g.threads});
    emit_certificate(make_certificate(amb, set, rep), out_path);
    if (!rep.holds && rep.witness)
        std::fprintf(stderr, "witness: %s\n", rep.witness->describe().c_str());
    return rep.holds ? 0 : 1;
}

// ----- search -------------------------------------------------------------------

int run_search(const std::string& group_spec, const std::string& pred_name,
               const std::vector<std::string>& wstrs, std::uint64_t limit,
               const std::string& out_path, const GlobalOpts& g) {
    const Ambient amb = parse_group_spec(group_spec);
    const Predicate pred = build_predicate(pred_name, wstrs);

    SearchOptions so;
    so.node_budget = g.budget;
    if (limit > 0) so.size_limit = limit;

    const bool complete_kind = pred.kind == PredicateKind::complete_three_ap ||
                               pred.kind == PredicateKind::complete_w;
    const bool saturating_kind = pred.kind == PredicateKind::three_ap_saturating ||
                                 pred.kind == PredicateKind::w_saturating ||
                                 pred.kind == PredicateKind::line_saturating;
    if (!complete_kind && !saturating_kind)
        throw std::invalid_argument("search supports saturating and complete predicates only");
    const SearchResult result = complete_kind ? min_complete_avoiding(amb, pred, so)
                                              : min_saturating(amb, pred, so);

    Certificate cert;
    bool witness_ok = true;
    if (result.found) {
        const VerificationReport rep = verify(amb, *result.witness, pred, VerifyOptions{g.threads});
        witness_ok = rep.holds;
        cert = make_certificate(amb, *result.witness, rep);
    } else {
        VerificationReport rep;
        rep.predicate = pred;
        rep.holds = false;
        cert = make_certificate(amb, PointSet(amb.group), rep);
    }
    Certificate::Search sinfo;
    sinfo.minimum = result.min_size;
    sinfo.none_exists = result.none_exists;
    sinfo.nodes = result.nodes;
    sinfo.exhaustive = result.exhaustive;
    cert.search = sinfo;
    cert.bounds = bound_strings(amb.group.order);
    emit_certificate(cert, out_path);

    if (!result.exhaustive) {
        std::fprintf(stderr, "node budget exhausted after %llu nodes\n",
                     static_cast<unsigned long long>(result.nodes));
        return 3;
    }
    if (result.found) return witness_ok ? 0 : 1;
    return result.none_exists ? 0 : 1;
}

// ----- bounds -------------------------------------------------------------------

int run_bounds(const std::string& group_spec, std::uint64_t n_opt) {
    std::uint64_t n = n_opt;
    if (!group_spec.empty()) n = parse_group_spec(group_spec).group.order;
    if (n == 0) throw std::invalid_argument("bounds requires --group or --n");
    nlohmann::ordered_json j;
    j["n"] = n;
    const std::pair<const char*, BoundKind> kinds[] = {{"sat_3ap", BoundKind::sat_3ap},
                                                       {"sat_w", BoundKind::sat_w},
                                                       {"sat_diag", BoundKind::sat_diag}};
    for (const auto& [label, kind] : kinds) {
        const BoundValue b = lower_bound(kind, n);
        nlohmann::ordered_json e;
        e["value"] = decimal_string(b.value);
        e["ceiling"] = b.ceiling;
        j[label] = e;
    }
    std::fputs((j.dump(2) + "\n").c_str(), stdout);
    return 0;
}

// ----- table --------------------------------------------------------------------

int run_table(const std::string& variant, std::uint64_t pmin, std::uint64_t pmax,
              const std::string& format, const GlobalOpts& g) {
    if (variant != "lines" && variant != "lines-star")
        throw std::invalid_argument("table --variant must be lines or lines-star");
    if (format != "markdown" && format != "csv")
        throw std::invalid_argument("table --format must be markdown or csv");
    const LinesVariant lv =
        variant == "lines" ? LinesVariant::axes_symmetric : LinesVariant::axes_star;

    const bool md = format == "markdown";
    if (md) {
        std::fputs("| p | ord(-2) | size | predicted | verified |\n", stdout);
        std::fputs("|---:|---:|---:|---:|:---|\n", stdout);
    } else {
        std::fputs("p,ord_minus2,size,predicted,verified\n", stdout);
    }

    bool all_ok = true;
    for (std::uint64_t p = std::max<std::uint64_t>(pmin, 5); p <= pmax; ++p) {
        if (!is_prime(p)) continue;
        const FieldSpec f = FieldSpec::make(p, 1);
        const ConstructionRecord rec = lines_construction(f, lv);
        bool ok = true;
        for (const Predicate& claim : rec.claims)
            ok = ok && verify(rec.ambient, rec.points, claim, VerifyOptions{g.threads}).holds;
        all_ok = all_ok && ok;
        const std::uint64_t o = f.element_order(f.from_integer(-2));
        const unsigned long long size = rec.points.size();
        const unsigned long long predicted = rec.predicted_size.value_or(0);
        if (md)
            std::printf("| %llu | %llu | %llu | %llu | %s |\n",
                        static_cast<unsigned long long>(p), static_cast<unsigned long long>(o),
                        size, predicted, ok ? "yes" : "NO");
        else
            std::printf("%llu,%llu,%llu,%llu,%s\n", static_cast<unsigned long long>(p),
                        static_cast<unsigned long long>(o), size, predicted, ok ? "yes" : "no");
    }
    return all_ok ? 0 : 1;
}

// ----- audit --------------------------------------------------------------------

nlohmann::ordered_json search_block(const SearchResult& r) {
    nlohmann::ordered_json j;
    if (r.min_size) j["minimum"] = *r.min_size;
    j["none_exists"] = r.none_exists;
    j["nodes"] = r.nodes;
    j["exhaustive"] = r.exhaustive;
    if (r.witness) j["set"] = r.witness->indices();
    return j;
}

int run_audit(const std::string& group_spec, const GlobalOpts& g) {
    const Ambient amb = parse_group_spec(group_spec);
    if (amb.field_mode())
        throw std::invalid_argument("audit requires a group-mode spec");
    SearchOptions so;
    so.node_budget = g.budget;
    const AuditChain chain = audit_chain(amb.group, so);

    nlohmann::ordered_json j;
    j["group"] = print_group_spec(amb);
    j["sat_3ap"] = search_block(chain.sat_three_ap);
    j["sat_2_minus_1"] = search_block(chain.sat_two_minus_one);
    j["a_3ap"] = search_block(chain.a_three_ap);
    j["a_2_minus_1"] = search_block(chain.a_two_minus_one);
    j["chain_holds"] = chain.chain_holds;
    j["exhaustive"] = chain.exhaustive;
    std::fputs((j.dump(2) + "\n").c_str(), stdout);

    if (!chain.exhaustive) return 3;
    return chain.chain_holds ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"construct, verify and search 3-AP-free / W-avoiding / saturating sets"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--threads", g.threads, "worker threads for verification")
        ->envname("APSAT_THREADS");
    app.add_option("--budget", g.budget, "search node budget")->envname("APSAT_BUDGET");
    app.add_option("--seed", g.seed, "seed for randomized constructions")
        ->envname("APSAT_SEED");

    int code = 0;

    auto* construct = app.add_subcommand("construct", "build a named set and certify its claims");
    std::string c_name, c_group, c_out;
    std::uint64_t c_n = 0;
    construct->add_option("--name", c_name, "construction name")->required();
    construct->add_option("--group", c_group, "ambient spec, e.g. Z81 or F5^1:2");
    construct->add_option("--n", c_n, "parameter n (singer)");
    construct->add_option("--out", c_out, "also write the certificate to this path");
    construct->fallthrough();
    construct->callback([&] { code = run_construct(c_name, c_group, c_n, c_out, g); });

    auto* verify_cmd = app.add_subcommand("verify", "check a predicate on an explicit set");
    std::string v_group, v_set, v_pred, v_out;
    std::vector<std::string> v_w;
    verify_cmd->add_option("--group", v_group, "ambient spec")->required();
    verify_cmd->add_option("--set", v_set, "comma-separated element indices")->required();
    verify_cmd->add_option("--pred", v_pred, "predicate name, e.g. 3ap-free")->required();
    verify_cmd->add_option("--w", v_w, "weight pair \"n1[/d1],n2[/d2]\" (repeatable)");
    verify_cmd->add_option("--out", v_out, "also write the certificate to this path");
    verify_cmd->fallthrough();
    verify_cmd->callback([&] { code = run_verify(v_group, v_set, v_pred, v_w, v_out, g); });

    auto* search_cmd = app.add_subcommand("search", "exhaustive minimum-size search");
    std::string s_group, s_pred, s_out;
    std::vector<std::string> s_w;
    std::uint64_t s_limit = 0;
    search_cmd->add_option("--group", s_group, "ambient spec")->required();
    search_cmd->add_option("--pred", s_pred, "saturating or complete predicate")->required();
    search_cmd->add_option("--w", s_w, "weight pair (repeatable)");
    search_cmd->add_option("--limit", s_limit, "cap on the layer size");
    search_cmd->add_option("--out", s_out, "also write the certificate to this path");
    search_cmd->fallthrough();
    search_cmd->callback([&] { code = run_search(s_group, s_pred, s_w, s_limit, s_out, g); });

    auto* bounds_cmd = app.add_subcommand("bounds", "closed-form saturation lower bounds");
    std::string b_group;
    std::uint64_t b_n = 0;
    bounds_cmd->add_option("--group", b_group, "ambient spec");
    bounds_cmd->add_option("--n", b_n, "group order");
    bounds_cmd->fallthrough();
    bounds_cmd->callback([&] { code = run_bounds(b_group, b_n); });

    auto* table_cmd = app.add_subcommand("table", "sweep the lines construction over primes");
    std::string t_variant = "lines", t_format = "markdown";
    std::uint64_t t_pmin = 5, t_pmax = 100;
    table_cmd->add_option("--variant", t_variant, "lines or lines-star");
    table_cmd->add_option("--pmin", t_pmin, "first prime (minimum 5)");
    table_cmd->add_option("--pmax", t_pmax, "last prime");
    table_cmd->add_option("--format", t_format, "markdown or csv");
    table_cmd->fallthrough();
    table_cmd->callback([&] { code = run_table(t_variant, t_pmin, t_pmax, t_format, g); });

    auto* audit_cmd = app.add_subcommand("audit", "four minima and the inequality chain");
    std::string a_group;
    audit_cmd->add_option("--group", a_group, "group-mode spec")->required();
    audit_cmd->fallthrough();
    audit_cmd->callback([&] { code = run_audit(a_group, g); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int c = app.exit(e);
        return c == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return code;
}
