#pragma once

// Named canonical curves with their expected properties.

#include <optional>
#include <string>
#include <vector>

#include "severi/io.hpp"
#include "severi/parse.hpp"

namespace severi {

struct ExpectedProperties {
    int degree = 0;
    int node_count = 0;
    int singular_count = 0;
    bool nodal = true;  // every singular point is a node
    bool irreducible = true;
    std::optional<long> genus;  // geometric genus, for irreducible nodal curves
};

struct CorpusEntry {
    std::string name;
    std::string equation;
    ExpectedProperties expected;

    ExactCurve curve() const { return ExactCurve(parse_form(equation)); }
};

inline const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries{
        {"line", "X + 2*Y - Z", {1, 0, 0, true, true, 0}},
        {"conic", "X^2 + Y^2 - Z^2", {2, 0, 0, true, true, 0}},
        {"nodal-cubic", "Y^2*Z - X^3 - X^2*Z", {3, 1, 1, true, true, 0}},
        {"nodal-cubic-at-infinity", "X^2*Y - Z^3 - Z^2*Y", {3, 1, 1, true, true, 0}},
        {"cuspidal-cubic", "Y^2*Z - X^3", {3, 0, 1, false, true, std::nullopt}},
        {"smooth-cubic", "X^3 + Y^3 + Z^3", {3, 0, 0, true, true, 1}},
        {"triangle", "X*Y*Z", {3, 3, 3, true, false, std::nullopt}},
        {"three-concurrent-lines", "X*Y*(X - Y)", {3, 0, 1, false, false, std::nullopt}},
        {"three-nodal-quartic", "Y^2*Z^2 + X^2*Z^2 + X^2*Y^2 - 3*X*Y*Z*(X + Y + Z)", {4, 3, 3, true, true, 0}},
        {"smooth-quintic", "X^5 + Y^5 + Z^5", {5, 0, 0, true, true, 6}},
    };
    return entries;
}

inline const CorpusEntry* find_corpus_entry(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name) return &e;
    return nullptr;
}

inline json to_json(const ExpectedProperties& e) {
    json j{{"degree", e.degree},
           {"node_count", e.node_count},
           {"singular_count", e.singular_count},
           {"nodal", e.nodal},
           {"irreducible", e.irreducible}};
    j["genus"] = e.genus ? json(*e.genus) : json(nullptr);
    return j;
}

inline ExpectedProperties expected_from_json(const json& j, const std::string& where) {
    ExpectedProperties e;
    e.degree = detail::require_int(j, "degree", where);
    e.node_count = detail::require_int(j, "node_count", where);
    e.singular_count = detail::require_int(j, "singular_count", where);
    auto flag = [&](const char* key) {
        const json& v = detail::require(j, key, where);
        if (!v.is_boolean()) detail::field_error(where + "/" + key, "expected a boolean");
        return v.get<bool>();
    };
    e.nodal = flag("nodal");
    e.irreducible = flag("irreducible");
    if (j.contains("genus") && !j["genus"].is_null()) e.genus = detail::require_int(j, "genus", where);
    return e;
}

/// A corpus file is a curve file with "name", "equation" and "expected".
inline json corpus_entry_to_json(const CorpusEntry& e) {
    json j = curve_to_json(e.curve());
    j["name"] = e.name;
    j["equation"] = e.equation;
    j["expected"] = to_json(e.expected);
    return j;
}

/// Observed properties of a curve in the same shape as ExpectedProperties.
inline ExpectedProperties observe(const ExactCurve& c, const Membership& m) {
    ExpectedProperties o;
    o.degree = c.degree();
    o.node_count = m.node_count;
    o.singular_count = m.singular_count;
    o.nodal = m.squarefree && m.all_singularities_nodal;
    o.irreducible = m.irreducible.value_or(false);
    if (o.irreducible && o.nodal && o.node_count <= arithmetic_genus(std::max(1, o.degree)))
        o.genus = geometric_genus(o.degree, o.node_count);
    return o;
}

/// Field names where observation and expectation differ.
inline std::vector<std::string> mismatches(const ExpectedProperties& expected, const ExpectedProperties& observed) {
    std::vector<std::string> out;
    if (expected.degree != observed.degree) out.push_back("degree");
    if (expected.node_count != observed.node_count) out.push_back("node_count");
    if (expected.singular_count != observed.singular_count) out.push_back("singular_count");
    if (expected.nodal != observed.nodal) out.push_back("nodal");
    if (expected.irreducible != observed.irreducible) out.push_back("irreducible");
    if (expected.genus != observed.genus) out.push_back("genus");
    return out;
}

}  // namespace severi
