#include "progcover/serialize.hpp"

#include "progcover/errors.hpp"

namespace progcover {

namespace {

const Json& field(const Json& j, const char* key, const std::string& pointer) {
    if (!j.is_object()) {
        throw schema_error(pointer, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw schema_error(pointer, std::string("missing key \"") + key + "\"");
    }
    return *it;
}

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }

Json rationals(const std::vector<Rational>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(to_string(x));
    return out;
}

Json integer_text(const Integer& x) { return to_string(x); }

} // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw usage_error(source + ": " + e.what());
    }
}

Rational rational_from_json(const Json& j, const std::string& pointer) {
    if (j.is_number_integer()) {
        return Rational(Integer(j.dump()));
    }
    if (!j.is_string()) {
        throw schema_error(pointer, "expected a rational string such as \"3/2\"");
    }
    try {
        return parse_rational(j.get<std::string>());
    } catch (const usage_error& e) {
        throw schema_error(pointer, e.what());
    }
}

RootDescriptor descriptor_from_json(const Json& j, const std::string& pointer) {
    const Rational r = rational_from_json(field(j, "r", pointer), child(pointer, "r"));
    const Json& m = field(j, "m", pointer);
    if (!m.is_number_unsigned() || m.get<unsigned long>() > kMaxDegree) {
        throw schema_error(child(pointer, "m"), "expected an integer degree in [1, 64]");
    }
    if (r <= 1) {
        throw schema_error(child(pointer, "r"), "r must exceed 1");
    }
    const auto degree = m.get<unsigned>();
    try {
        return RootDescriptor(r, degree);
    } catch (const usage_error&) {
        const RootDescriptor norm = normalize_root(r, degree);
        throw schema_error(pointer, "descriptor is not normalized; use {\"r\": \"" + to_string(norm.r()) +
                                        "\", \"m\": " + std::to_string(norm.m()) + "}");
    }
}

FieldElement element_from_json(const Json& j, const RootDescriptor& d, const std::string& pointer) {
    if (j.is_string() || j.is_number_integer()) {
        return FieldElement::from_rational(d, rational_from_json(j, pointer));
    }
    if (!j.is_array()) {
        throw schema_error(pointer, "expected an array of rational strings");
    }
    if (j.size() != d.m()) {
        throw schema_error(pointer, "expected " + std::to_string(d.m()) + " coordinates, got " +
                                        std::to_string(j.size()));
    }
    std::vector<Rational> coords;
    for (std::size_t i = 0; i < j.size(); ++i) {
        coords.push_back(rational_from_json(j[i], child(pointer, std::to_string(i))));
    }
    return FieldElement(d, std::move(coords));
}

ArithmeticProgression ap_from_json(const Json& j, const RootDescriptor& d, const std::string& pointer) {
    FieldElement v = element_from_json(field(j, "v", pointer), d, child(pointer, "v"));
    FieldElement step = element_from_json(field(j, "d", pointer), d, child(pointer, "d"));
    try {
        return ArithmeticProgression(std::move(v), std::move(step));
    } catch (const domain_error& e) {
        throw schema_error(pointer, e.what());
    }
}

GeometricProgression gp_from_json(const Json& j, const RootDescriptor& d, const std::string& pointer) {
    FieldElement u = element_from_json(field(j, "u", pointer), d, child(pointer, "u"));
    FieldElement q = element_from_json(field(j, "q", pointer), d, child(pointer, "q"));
    try {
        return GeometricProgression(std::move(u), std::move(q));
    } catch (const domain_error& e) {
        throw schema_error(pointer, e.what());
    }
}

CoverInstance instance_from_json(const Json& j) {
    if (!j.is_object()) throw schema_error("", "expected an object");
    const RootDescriptor d = j.contains("descriptor") ? descriptor_from_json(j.at("descriptor")) : RootDescriptor::rationals();
    const Json& mode_json = field(j, "mode", "");
    if (!mode_json.is_string() || (mode_json != "ap" && mode_json != "gp")) {
        throw schema_error("/mode", "expected \"ap\" or \"gp\"");
    }
    const CoverMode mode = mode_json == "ap" ? CoverMode::ap : CoverMode::gp;
    const Json& elems = field(j, "elements", "");
    if (!elems.is_array()) {
        throw schema_error("/elements", "expected an array of elements");
    }
    std::vector<FieldElement> xs;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        xs.push_back(element_from_json(elems[i], d, "/elements/" + std::to_string(i)));
    }
    return CoverInstance(d, mode, std::move(xs));
}

Json to_json(const RootDescriptor& d) { return Json{{"r", to_string(d.r())}, {"m", d.m()}}; }

Json to_json(const FieldElement& x) { return rationals(x.coords()); }

Json to_json(const ArithmeticProgression& ap) {
    return Json{{"v", to_json(ap.start())}, {"d", to_json(ap.step())}};
}

Json to_json(const GeometricProgression& gp) {
    return Json{{"u", to_json(gp.start())}, {"q", to_json(gp.ratio())}};
}

Json to_json(const IntersectionPoint& p) {
    return Json{{"k", p.k}, {"h", integer_text(p.h)}, {"value", to_json(p.value)}};
}

Json to_json(const CoverSolution& s) {
    Json blocks = Json::array();
    for (const auto& b : s.blocks) {
        Json block{{"members", b.members}};
        if (const auto* ap = std::get_if<ArithmeticProgression>(&b.witness)) {
            block["ap"] = to_json(*ap);
        } else {
            block["gp"] = to_json(std::get<GeometricProgression>(b.witness));
        }
        blocks.push_back(std::move(block));
    }
    return Json{{"count", s.count}, {"exact", s.exact}, {"method", s.method}, {"blocks", std::move(blocks)}};
}

Json to_json(const Lemma1Report& r) {
    Json points = Json::array();
    for (const auto& p : r.points) points.push_back(to_json(p));
    Json out{{"status", r.status == Lemma1Status::ok ? "ok" : "inconclusive"}};
    out["t"] = r.t ? Json(to_string(*r.t)) : Json(nullptr);
    out["s"] = r.s ? Json(to_string(*r.s)) : Json(nullptr);
    out["ell"] = r.ell ? Json(*r.ell) : Json(nullptr);
    out["residues_ok"] = r.residues_ok;
    out["points"] = std::move(points);
    return out;
}

Json to_json(const Theorem2Cover& c) {
    Json aps = Json::array();
    for (const auto& ap : c.progressions) aps.push_back(to_json(ap));
    Json terms = Json::array();
    for (const auto& t : c.terms) {
        terms.push_back(Json{{"k", t.k}, {"progression", t.residue}, {"h", integer_text(t.h)}});
    }
    return Json{{"count", c.progressions.size()}, {"progressions", std::move(aps)}, {"terms", std::move(terms)}};
}

Json to_json(const BoundRow& row, bool with_runtime) {
    Json out{{"n", row.n}, {"size", row.size}, {"measured", row.measured}};
    out["lower"] = row.lower ? Json(*row.lower) : Json(nullptr);
    out["upper"] = row.upper ? Json(*row.upper) : Json(nullptr);
    out["pair_bound"] = row.pair_bound;
    out["holds"] = row.holds;
    if (with_runtime) out["runtime_ms"] = row.runtime_ms;
    return out;
}

Json to_json(const BoundReport& r, bool with_runtime) {
    Json rows = Json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row, with_runtime));
    Json out{{"audit", r.audit}, {"regime", r.regime}};
    out["root_order"] = r.root_order ? Json(*r.root_order) : Json(nullptr);
    out["all_hold"] = r.all_hold();
    out["min_measured_over_n"] = to_string(r.min_ratio);
    out["threshold"] = r.threshold ? Json(*r.threshold) : Json(nullptr);
    out["notes"] = r.notes;
    out["rows"] = std::move(rows);
    return out;
}

Json to_json(const DensityReport& r) {
    return Json{{"a", r.a},         {"b", r.b},           {"x", r.x},
                {"count", r.count}, {"ratio", r.ratio},   {"predicted", r.predicted},
                {"abs_error", r.abs_error}};
}

Json to_json(const FilterResult& r) {
    Json idx = Json::array();
    for (const auto& h : r.indices) idx.push_back(integer_text(h));
    Json elems = Json::array();
    for (const auto& x : r.elements) elems.push_back(to_json(x));
    return Json{{"t", to_string(r.t)},  {"a", integer_text(r.a)}, {"b", integer_text(r.b)},
                {"n", r.n},             {"kept", r.indices.size()}, {"indices", std::move(idx)},
                {"elements", std::move(elems)}};
}

} // namespace progcover
