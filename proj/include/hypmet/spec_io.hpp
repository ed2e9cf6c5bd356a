#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hypmet/builders.hpp"
#include "hypmet/errors.hpp"
#include "hypmet/obstacle.hpp"

namespace hypmet {

namespace detail {

inline const nlohmann::json& json_field(const nlohmann::json& j, const char* name,
                                        const std::string& where) {
    const auto it = j.find(name);
    if (it == j.end())
        throw BuildError(where + " is missing field '" + std::string(name) + "'");
    return *it;
}

inline double json_finite(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) throw BuildError(where + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw BuildError(where + " must be finite");
    return v;
}

inline int json_int(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number_integer()) throw BuildError(where + " must be an integer");
    return j.get<int>();
}

inline std::uint64_t json_seed(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() &&
                                   j.get<std::int64_t>() < 0))
        throw BuildError(where + " must be a non-negative integer");
    return j.get<std::uint64_t>();
}

inline Vec json_point(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw BuildError(where + " must be a non-empty array of numbers");
    Vec v;
    v.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k)
        v.push_back(json_finite(j[k], where + "[" + std::to_string(k) + "]"));
    return v;
}

inline std::vector<Vec> json_points(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw BuildError(where + " must be an array of points");
    std::vector<Vec> pts;
    pts.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k)
        pts.push_back(json_point(j[k], where + "[" + std::to_string(k) + "]"));
    return pts;
}

inline Shape parse_shape(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) throw BuildError(where + " must be an object");
    const auto& kind_field = json_field(j, "shape", where);
    if (!kind_field.is_string())
        throw BuildError(where + ".shape must be a string");
    const std::string kind = kind_field.get<std::string>();
    if (kind == "point")
        return SinglePoint{json_point(json_field(j, "at", where), where + ".at")};
    if (kind == "point_set")
        return PointSet{json_points(json_field(j, "points", where), where + ".points")};
    if (kind == "disc")
        return Disc{json_point(json_field(j, "center", where), where + ".center"),
                    json_finite(json_field(j, "radius", where), where + ".radius")};
    if (kind == "half_space")
        return HalfSpace{json_point(json_field(j, "normal", where), where + ".normal"),
                         json_finite(json_field(j, "offset", where), where + ".offset")};
    if (kind == "sphere")
        return Sphere{json_point(json_field(j, "center", where), where + ".center"),
                      json_finite(json_field(j, "radius", where), where + ".radius")};
    if (kind == "vertex_set") {
        const auto& ids = json_field(j, "ids", where);
        if (!ids.is_array() || ids.empty())
            throw BuildError(where + ".ids must be a non-empty array of integers");
        VertexSet vs;
        for (std::size_t k = 0; k < ids.size(); ++k)
            vs.ids.push_back(json_int(ids[k], where + ".ids[" + std::to_string(k) + "]"));
        return vs;
    }
    throw BuildError(where + " has unknown shape '" + kind + "'");
}

inline nlohmann::ordered_json shape_json(const Shape& s) {
    nlohmann::ordered_json j;
    if (const auto* p = std::get_if<SinglePoint>(&s)) {
        j["shape"] = "point";
        j["at"] = p->at;
    } else if (const auto* ps = std::get_if<PointSet>(&s)) {
        j["shape"] = "point_set";
        j["points"] = ps->points;
    } else if (const auto* d = std::get_if<Disc>(&s)) {
        j["shape"] = "disc";
        j["center"] = d->center;
        j["radius"] = d->radius;
    } else if (const auto* h = std::get_if<HalfSpace>(&s)) {
        j["shape"] = "half_space";
        j["normal"] = h->normal;
        j["offset"] = h->offset;
    } else if (const auto* sp = std::get_if<Sphere>(&s)) {
        j["shape"] = "sphere";
        j["center"] = sp->center;
        j["radius"] = sp->radius;
    } else if (const auto* v = std::get_if<VertexSet>(&s)) {
        j["shape"] = "vertex_set";
        j["ids"] = v->ids;
    }
    return j;
}

inline void reject_unknown_fields(const nlohmann::json& j, const SpaceSpec& spec,
                                  std::initializer_list<const char*> kind_fields) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "kind" || key == "obstacle" || key == "weight_table") continue;
        bool known = false;
        for (const char* f : kind_fields)
            if (key == f) known = true;
        if (!known)
            throw BuildError("space spec has unknown field '" + key + "' for kind '" +
                             space_kind_code(spec.kind) + "'");
    }
}

} // namespace detail

inline SpaceKind parse_space_kind(const std::string& code) {
    if (code == "euclidean_cloud") return SpaceKind::EuclideanCloud;
    if (code == "halfplane_lattice") return SpaceKind::HalfplaneLattice;
    if (code == "punctured_plane") return SpaceKind::PuncturedPlane;
    if (code == "unit_disk") return SpaceKind::UnitDisk;
    if (code == "graph") return SpaceKind::Graph;
    throw BuildError("unknown space kind '" + code + "'");
}

inline SpaceSpec parse_space_spec(const nlohmann::json& j) {
    using detail::json_field;
    using detail::json_finite;
    using detail::json_int;

    if (!j.is_object()) throw BuildError("space spec must be a JSON object");
    const auto& kind = json_field(j, "kind", "space spec");
    if (!kind.is_string()) throw BuildError("space spec field 'kind' must be a string");

    SpaceSpec spec;
    spec.kind = parse_space_kind(kind.get<std::string>());

    switch (spec.kind) {
        case SpaceKind::EuclideanCloud:
            detail::reject_unknown_fields(
                j, spec, {"points", "count", "box_lo", "box_hi", "seed", "min_clearance"});
            if (j.contains("points"))
                spec.points = detail::json_points(j["points"], "points");
            if (j.contains("count")) spec.count = json_int(j["count"], "count");
            if (j.contains("box_lo")) spec.box_lo = detail::json_point(j["box_lo"], "box_lo");
            if (j.contains("box_hi")) spec.box_hi = detail::json_point(j["box_hi"], "box_hi");
            if (j.contains("seed")) spec.seed = detail::json_seed(j["seed"], "seed");
            if (j.contains("min_clearance")) {
                spec.min_clearance = json_finite(j["min_clearance"], "min_clearance");
                if (spec.min_clearance < 0.0)
                    throw BuildError("min_clearance must be non-negative");
            }
            break;
        case SpaceKind::HalfplaneLattice:
            detail::reject_unknown_fields(j, spec, {"nx", "ny", "spacing"});
            spec.nx = json_int(json_field(j, "nx", "space spec"), "nx");
            spec.ny = json_int(json_field(j, "ny", "space spec"), "ny");
            if (j.contains("spacing")) spec.spacing = json_finite(j["spacing"], "spacing");
            break;
        case SpaceKind::PuncturedPlane:
        case SpaceKind::UnitDisk:
            detail::reject_unknown_fields(
                j, spec, {"rings", "per_ring", "r_min", "r_max", "include_center"});
            if (j.contains("rings")) spec.rings = json_int(j["rings"], "rings");
            if (j.contains("per_ring")) spec.per_ring = json_int(j["per_ring"], "per_ring");
            if (j.contains("r_min")) spec.r_min = json_finite(j["r_min"], "r_min");
            if (j.contains("r_max")) spec.r_max = json_finite(j["r_max"], "r_max");
            if (j.contains("include_center")) {
                if (spec.kind != SpaceKind::UnitDisk)
                    throw BuildError("include_center only applies to unit_disk");
                if (!j["include_center"].is_boolean())
                    throw BuildError("include_center must be a boolean");
                spec.include_center = j["include_center"].get<bool>();
            }
            break;
        case SpaceKind::Graph: {
            detail::reject_unknown_fields(j, spec, {"vertices", "edges"});
            spec.vertices = json_int(json_field(j, "vertices", "space spec"), "vertices");
            const auto& edges = json_field(j, "edges", "space spec");
            if (!edges.is_array()) throw BuildError("edges must be an array");
            for (std::size_t k = 0; k < edges.size(); ++k) {
                const auto& e = edges[k];
                const std::string where = "edges[" + std::to_string(k) + "]";
                GraphEdge ge;
                if (e.is_array() && (e.size() == 2 || e.size() == 3)) {
                    ge.a = json_int(e[0], where + "[0]");
                    ge.b = json_int(e[1], where + "[1]");
                    if (e.size() == 3) ge.w = json_finite(e[2], where + "[2]");
                } else if (e.is_object()) {
                    ge.a = json_int(json_field(e, "a", where), where + ".a");
                    ge.b = json_int(json_field(e, "b", where), where + ".b");
                    if (e.contains("w")) ge.w = json_finite(e["w"], where + ".w");
                } else {
                    throw BuildError(where + " must be [a, b], [a, b, w], or an object");
                }
                spec.edges.push_back(ge);
            }
            break;
        }
    }

    if (j.contains("obstacle")) {
        const auto& obs = j["obstacle"];
        if (!obs.is_array() || obs.empty())
            throw BuildError("obstacle must be a non-empty array of shapes");
        for (std::size_t k = 0; k < obs.size(); ++k)
            spec.obstacle.push_back(
                detail::parse_shape(obs[k], "obstacle[" + std::to_string(k) + "]"));
    }

    if (j.contains("weight_table")) {
        const auto& wt = j["weight_table"];
        if (!wt.is_array() || wt.empty())
            throw BuildError("weight_table must be a non-empty array of numbers");
        spec.custom_weights = true;
        for (std::size_t k = 0; k < wt.size(); ++k)
            spec.weight_table.push_back(
                detail::json_finite(wt[k], "weight_table[" + std::to_string(k) + "]"));
    }
    return spec;
}

inline SpaceSpec load_space_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BuildError("cannot open space spec file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
        throw BuildError("invalid JSON in " + path + ": " + e.what());
    }
    try {
        return parse_space_spec(j);
    } catch (const BuildError& e) {
        throw BuildError(std::string(e.what()) + " (in " + path + ")");
    }
}

/// Normalized echo of a space description; only the fields that drive the
/// build are emitted, so equal specs serialize to equal bytes.
inline nlohmann::ordered_json space_spec_json(const SpaceSpec& spec) {
    nlohmann::ordered_json j;
    j["kind"] = space_kind_code(spec.kind);
    switch (spec.kind) {
        case SpaceKind::EuclideanCloud:
            if (!spec.points.empty()) {
                j["points"] = spec.points;
            } else {
                j["count"] = spec.count;
                j["box_lo"] = spec.box_lo;
                j["box_hi"] = spec.box_hi;
                j["seed"] = spec.seed;
                if (spec.min_clearance >= 0.0) j["min_clearance"] = spec.min_clearance;
            }
            break;
        case SpaceKind::HalfplaneLattice:
            j["nx"] = spec.nx;
            j["ny"] = spec.ny;
            j["spacing"] = spec.spacing;
            break;
        case SpaceKind::PuncturedPlane:
        case SpaceKind::UnitDisk:
            if (spec.rings) j["rings"] = spec.rings;
            if (spec.per_ring) j["per_ring"] = spec.per_ring;
            if (spec.r_min > 0.0) j["r_min"] = spec.r_min;
            if (spec.r_max > 0.0) j["r_max"] = spec.r_max;
            if (spec.include_center) j["include_center"] = true;
            break;
        case SpaceKind::Graph: {
            j["vertices"] = spec.vertices;
            auto edges = nlohmann::ordered_json::array();
            for (const GraphEdge& e : spec.edges)
                edges.push_back({e.a, e.b, e.w});
            j["edges"] = std::move(edges);
            break;
        }
    }
    if (!spec.obstacle.empty()) {
        auto obs = nlohmann::ordered_json::array();
        for (const Shape& s : spec.obstacle) obs.push_back(detail::shape_json(s));
        j["obstacle"] = std::move(obs);
    }
    if (spec.custom_weights) j["weight_table"] = spec.weight_table;
    return j;
}

/// Resolved excluded set of a built space, for report echoes.
inline nlohmann::ordered_json obstacle_json(const ObstacleSet& m) {
    auto arr = nlohmann::ordered_json::array();
    for (const Shape& s : m.primitives) arr.push_back(detail::shape_json(s));
    return arr;
}

} // namespace hypmet
