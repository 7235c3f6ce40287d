#pragma once

#include <json.hpp>

#include "partition.hpp"

namespace secluded {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return Json(r.str()); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return Rational::from_string(j.get<std::string>());
    throw ParseError("expected rational string, got: " + j.dump());
}

inline Json to_json(const Point& p) {
    Json a = Json::array();
    for (const auto& c : p.coords) a.push_back(c.str());
    return a;
}

inline Point point_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected point array, got: " + j.dump());
    Point p;
    for (const auto& e : j) p.coords.push_back(rational_from_json(e));
    return p;
}

inline Json to_json(const MemberId& id) {
    Json a = Json::array();
    for (const auto& n : id.indices) a.push_back(n.str());
    return a;
}

inline MemberId member_id_from_json(const Json& j) {
    MemberId id;
    for (const auto& e : j) {
        if (e.is_number_integer())
            id.indices.push_back(Integer(static_cast<long>(e.get<long long>())));
        else
            id.indices.push_back(Integer::from_string(e.get<std::string>()));
    }
    return id;
}

inline Json to_json(const PartitionSpec& spec) {
    return std::visit(
        [](const auto& s) -> Json {
            using T = std::decay_t<decltype(s)>;
            Json j;
            if constexpr (std::is_same_v<T, GridSpec>) {
                j["type"] = "grid";
                j["d"] = s.d;
            } else if constexpr (std::is_same_v<T, LayeredSpec>) {
                j["type"] = "layered";
                j["d"] = s.d;
                Json sh = Json::array();
                for (const auto& x : s.shifts) sh.push_back(x.str());
                j["shifts"] = sh;
            } else if constexpr (std::is_same_v<T, ProductSpec>) {
                j["type"] = "product";
                Json fs = Json::array();
                for (const auto& f : s.factors) fs.push_back(to_json(f));
                j["factors"] = fs;
            } else if constexpr (std::is_same_v<T, ScaledSpec>) {
                j["type"] = "scaled";
                j["inner"] = to_json(*s.inner);
                j["factor"] = s.factor.str();
            }
            return j;
        },
        spec.variant());
}

inline PartitionSpec spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type")) throw ParseError("spec: expected object with 'type'");
    const std::string type = j.at("type").get<std::string>();
    if (type == "grid") return PartitionSpec::grid(j.at("d").get<int>());
    if (type == "layered") {
        int d = j.at("d").get<int>();
        if (!j.contains("shifts")) return PartitionSpec::layered(d);
        std::vector<Rational> shifts;
        for (const auto& e : j.at("shifts")) shifts.push_back(rational_from_json(e));
        return PartitionSpec::layered(d, std::move(shifts));
    }
    if (type == "product") {
        std::vector<PartitionSpec> fs;
        for (const auto& e : j.at("factors")) fs.push_back(spec_from_json(e));
        return PartitionSpec::product(std::move(fs));
    }
    if (type == "scaled")
        return PartitionSpec::scaled(spec_from_json(j.at("inner")),
                                     rational_from_json(j.at("factor")));
    throw ParseError("spec: unknown type '" + type + "'");
}

inline Json to_json(const Interval& i) {
    Json j;
    j["lo"] = i.lo.str();
    j["hi"] = i.hi.str();
    j["closure"] = std::string(1, i.lo_end == End::closed ? '[' : '(') +
                   std::string(1, i.hi_end == End::closed ? ']' : ')');
    return j;
}

inline Interval interval_from_json(const Json& j) {
    Interval i;
    i.lo = rational_from_json(j.at("lo"));
    i.hi = rational_from_json(j.at("hi"));
    std::string c = j.value("closure", "[)");
    if (c.size() != 2 || (c[0] != '[' && c[0] != '(') || (c[1] != ']' && c[1] != ')'))
        throw ParseError("interval: bad closure '" + c + "'");
    i.lo_end = c[0] == '[' ? End::closed : End::open;
    i.hi_end = c[1] == ']' ? End::closed : End::open;
    return i;
}

inline Json to_json(const AxisBox& b) {
    Json a = Json::array();
    for (const auto& i : b.iv) a.push_back(to_json(i));
    return a;
}

inline AxisBox box_from_json(const Json& j) {
    AxisBox b;
    for (const auto& e : j) b.iv.push_back(interval_from_json(e));
    return b;
}

}  // namespace secluded
