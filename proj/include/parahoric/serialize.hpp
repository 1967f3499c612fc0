#pragma once

// JSON encoding of data, bundles, witnesses and reports. Documents carry
// "schema": 1; object keys are emitted in sorted order so output is stable.

#include <json.hpp>

#include <string>

#include "affine_dynkin.hpp"
#include "descent.hpp"
#include "error.hpp"
#include "factorization.hpp"
#include "galois_covers.hpp"
#include "picard_lattice.hpp"
#include "verlinde.hpp"

namespace parahoric {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw parse_error(std::string("expected an object holding '") + key + "'");
    const auto it = j.find(key);
    if (it == j.end()) throw parse_error(std::string("missing field '") + key + "'");
    return *it;
}

template <class T>
T get_as(const json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        throw parse_error(std::string("field '") + key + "': " + e.what());
    }
}

inline void check_schema(const json& j) {
    if (j.is_object() && j.contains("schema") && j["schema"] != kSchemaVersion)
        throw parse_error("unsupported schema " + j["schema"].dump() + " (expected 1)");
}

} // namespace detail

inline json to_json(const Weight& w) {
    json j = json::object();
    for (const auto& [v, n] : w)
        if (n) j[std::to_string(v)] = n;
    return j;
}

inline Weight weight_from_json(const json& j) {
    if (!j.is_object()) throw parse_error("weight must be an object mapping vertex to coefficient");
    Weight w;
    for (const auto& [key, value] : j.items()) {
        int v = 0;
        try {
            std::size_t used = 0;
            v = std::stoi(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw parse_error("weight key '" + key + "' is not a vertex index");
        }
        if (!value.is_number_integer()) throw parse_error("weight coefficient at vertex " + key + " is not an integer");
        w[v] = value.get<Coefficient>();
    }
    return w;
}

inline json to_json(const PointDatum& p) {
    json facet = json::array();
    for (int v : p.facet) facet.push_back(v);
    return {{"label", p.label}, {"type", p.type.name()}, {"facet", facet}, {"monodromy", p.monodromy.str()}, {"bad", p.is_bad}};
}

/// "monodromy" defaults to e; "bad" defaults to true exactly when the point
/// is ramified or its facet misses vertex 0.
inline PointDatum point_from_json(const json& j) {
    const auto label = detail::get_as<std::string>(j, "label");
    const auto type = parse_affine_type(detail::get_as<std::string>(j, "type"));
    const auto facet = detail::get_as<std::vector<int>>(j, "facet");
    const Perm mono = j.contains("monodromy") ? parse_perm(detail::get_as<std::string>(j, "monodromy")) : Perm{};
    bool bad;
    if (j.contains("bad")) {
        bad = detail::get_as<bool>(j, "bad");
    } else {
        bad = !mono.is_identity() || std::find(facet.begin(), facet.end(), 0) == facet.end();
    }
    return make_point(label, type, facet, mono, bad);
}

inline json to_json(const GroupDatum& d) {
    json pts = json::array();
    for (const auto& p : d.points) pts.push_back(to_json(p));
    return {{"schema", kSchemaVersion}, {"genus", d.genus}, {"gamma", d.gamma.name()}, {"points", pts}};
}

inline GroupDatum datum_from_json(const json& j) {
    detail::check_schema(j);
    GroupDatum d;
    d.genus = j.contains("genus") ? detail::get_as<int>(j, "genus") : 0;
    d.gamma = FiniteGroup::parse(detail::get_as<std::string>(j, "gamma"));
    const json& pts = detail::field(j, "points");
    if (!pts.is_array()) throw parse_error("field 'points' must be an array");
    for (const auto& p : pts) d.points.push_back(point_from_json(p));
    validate(d);
    return d;
}

inline json to_json(const WeightBundle& b) {
    json w = json::object();
    for (const auto& [label, weight] : normalized(b).weights) w[label] = to_json(weight);
    return {{"schema", kSchemaVersion}, {"weights", w}};
}

/// Accepts {"weights": {...}} or the bare label map.
inline WeightBundle bundle_from_json(const json& j) {
    detail::check_schema(j);
    const json& w = j.is_object() && j.contains("weights") ? j["weights"] : j;
    if (!w.is_object()) throw parse_error("bundle must be an object mapping point label to weight");
    WeightBundle b;
    for (const auto& [label, weight] : w.items()) {
        if (label == "schema") continue;
        b.weights[label] = weight_from_json(weight);
    }
    return b;
}

inline json to_json(const FactorPoint& p) {
    return {{"label", p.label}, {"monodromy", p.monodromy.str()}, {"weight", to_json(p.weight)}};
}

inline FactorPoint factor_point_from_json(const json& j) {
    return {detail::get_as<std::string>(j, "label"), parse_perm(detail::get_as<std::string>(j, "monodromy")),
            weight_from_json(detail::field(j, "weight"))};
}

inline json to_json(const BaseCase& b) {
    json pts = json::array();
    for (const auto& p : b.points) pts.push_back(to_json(p));
    json j = {{"kind", kind_name(b.kind)}, {"base", b.base.name()}, {"points", pts}};
    if (b.kind == BaseCaseKind::ClosedFormA) j["genus"] = b.genus;
    if (b.conjugator) j["conjugator"] = b.conjugator->str();
    return j;
}

inline BaseCase base_case_from_json(const json& j) {
    BaseCase b;
    b.kind = parse_kind(detail::get_as<std::string>(j, "kind"));
    const auto base = parse_affine_type(detail::get_as<std::string>(j, "base"));
    if (base.twist() != 1) throw parse_error("field 'base' must be a finite type");
    b.base = base.base();
    if (j.contains("genus")) b.genus = detail::get_as<int>(j, "genus");
    if (j.contains("conjugator")) b.conjugator = parse_perm(detail::get_as<std::string>(j, "conjugator"));
    const json& pts = detail::field(j, "points");
    if (!pts.is_array()) throw parse_error("field 'points' must be an array");
    for (const auto& p : pts) b.points.push_back(factor_point_from_json(p));
    return b;
}

inline json to_json(const DecompositionWitness& w) {
    json factors = json::array();
    for (const auto& f : w.factors) factors.push_back(to_json(f));
    json cons = json::array();
    for (const auto& g : w.conservation()) cons.push_back(g.str());
    return {{"factors", factors}, {"conservation", cons}};
}

inline DecompositionWitness witness_from_json(const json& j) {
    DecompositionWitness w;
    const json& factors = detail::field(j, "factors");
    if (!factors.is_array()) throw parse_error("field 'factors' must be an array");
    for (const auto& f : factors) w.factors.push_back(base_case_from_json(f));
    return w;
}

inline json to_json(const RankResult& r) {
    return {{"value", r.value}, {"formula", r.formula}, {"factors", r.factors}};
}

inline RankResult rank_from_json(const json& j) {
    RankResult r;
    r.value = detail::get_as<Coefficient>(j, "value");
    if (j.contains("formula")) r.formula = detail::get_as<std::string>(j, "formula");
    if (j.contains("factors")) r.factors = detail::get_as<std::vector<Coefficient>>(j, "factors");
    return r;
}

inline json to_json(const DescentCertificate& c) {
    return {{"bundle", to_json(c.bundle)["weights"]},
            {"charge", c.charge},
            {"witness", to_json(c.witness)},
            {"rank_bound", c.rank_bound ? to_json(*c.rank_bound) : json(nullptr)},
            {"verdict", verdict_name(c.verdict)}};
}

inline DescentCertificate certificate_from_json(const json& j) {
    DescentCertificate c;
    c.bundle = bundle_from_json(detail::field(j, "bundle"));
    c.charge = detail::get_as<Coefficient>(j, "charge");
    c.witness = witness_from_json(detail::field(j, "witness"));
    if (j.contains("rank_bound") && !j["rank_bound"].is_null()) c.rank_bound = rank_from_json(j["rank_bound"]);
    c.verdict = parse_verdict(detail::get_as<std::string>(j, "verdict"));
    return c;
}

inline json to_json(const CGReport& r) {
    auto opt = [](const std::optional<Coefficient>& v) { return v ? json(*v) : json(nullptr); };
    return {{"schema", kSchemaVersion},
            {"lower", r.lower},
            {"certified_charge", opt(r.certified_charge)},
            {"exact", opt(r.exact)},
            {"certificate", r.certificate ? to_json(*r.certificate) : json(nullptr)}};
}

inline CGReport report_from_json(const json& j) {
    detail::check_schema(j);
    CGReport r;
    r.lower = detail::get_as<Coefficient>(j, "lower");
    auto opt = [&](const char* key) -> std::optional<Coefficient> {
        if (!j.contains(key) || j[key].is_null()) return std::nullopt;
        return detail::get_as<Coefficient>(j, key);
    };
    r.certified_charge = opt("certified_charge");
    r.exact = opt("exact");
    if (j.contains("certificate") && !j["certificate"].is_null()) r.certificate = certificate_from_json(j["certificate"]);
    return r;
}

/// Parses JSON text, turning syntax errors into parse_error.
inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace parahoric
