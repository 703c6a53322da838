#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apsat/predicates.hpp"
#include "apsat/search.hpp"

namespace apsat {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "apsat 1.0.0";

/** Parses a group-spec string:
 *    cyclic          "Z7"
 *    products        "Z3xZ9"
 *    powers          "Z2^3"        (expands to Z2xZ2xZ2)
 *    field mode      "F5^1:2"      (the 2-dimensional vector space over GF(5))
 *  Throws std::invalid_argument with the offending position on malformed
 *  input; field mode additionally rejects non-prime p. */
Ambient parse_group_spec(const std::string& s);

/** Canonical rendering (equal cyclic factors collapse to Z<m>^<k>);
 *  parse_group_spec(print_group_spec(a)) reproduces a. */
std::string print_group_spec(const Ambient& ambient);

/** A self-contained, machine-checkable record: the ambient space, the set,
 *  the predicate checked, the outcome, and enough provenance to reproduce
 *  the run.  Serialized as canonical JSON (fixed key order, integer sets,
 *  decimal strings for timings and bound values) so save/load is a byte
 *  identity. */
struct Certificate {
    int schema_version = kSchemaVersion;
    std::string tool = kToolVersion;
    std::string group;  // canonical group-spec string
    Predicate predicate;
    std::vector<std::uint64_t> set;  // sorted element indices
    bool result = false;
    std::optional<Witness> witness;

    struct Construction {
        std::string name;
        std::vector<std::pair<std::string, std::string>> params;
        std::optional<std::uint64_t> seed;
    };
    std::optional<Construction> construction;

    struct Search {
        std::optional<std::uint64_t> minimum;  // absent when no set exists
        bool none_exists = false;
        std::uint64_t nodes = 0;
        bool exhaustive = true;
    };
    std::optional<Search> search;

    std::vector<std::pair<std::string, std::string>> bounds;  // kind -> decimal string
    std::string seconds = "0.000000";
};

/** Certificate for a verification run (set + predicate + outcome). */
Certificate make_certificate(const Ambient& ambient, const PointSet& set,
                             const VerificationReport& report);

/** Canonical JSON bytes (two-space indent, trailing newline). */
std::string certificate_to_json(const Certificate& cert);

/** Parses and validates certificate JSON.  Throws std::runtime_error on
 *  malformed JSON, unsupported schema_version, or a corrupt witness. */
Certificate certificate_from_json(const std::string& text);

void save_certificate(const Certificate& cert, const std::string& path);
Certificate load_certificate(const std::string& path);

/** Re-runs the certified predicate on the certified set, reconstructing the
 *  ambient space from the group spec alone. */
VerificationReport reverify(const Certificate& cert, const VerifyOptions& options = {});

/** Fixed-precision decimal rendering used for timings and bound values. */
std::string decimal_string(double v);

/** Inverse of Predicate::name(); nullopt on unknown names. */
std::optional<PredicateKind> predicate_kind_from_name(const std::string& name);

}  // namespace apsat
