#include "strata/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "strata/error.hpp"

namespace strata::geom {

namespace {

constexpr std::array<std::string_view, 10> kBinary = {
    rel::inside,      rel::contains,    rel::above,     rel::below, rel::on_left_of,
    rel::on_right_of, rel::on_top_of,   rel::under,     rel::aligned_h, rel::aligned_v};

constexpr std::array<std::string_view, 8> kAttributes = {
    "x", "y", "center_x", "center_y", "width", "height", "area", "circumference"};

double overlap(double a0, double a1, double b0, double b1) {
    return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

} // namespace

std::span<const std::string_view> binary_relations() { return kBinary; }
std::span<const std::string_view> attribute_names() { return kAttributes; }

void GeomParams::validate() const {
    if (!(eps_align >= 0 && eps_touch >= 0 && neighbor_gap >= 0 && containment_margin >= 0))
        throw Error(ErrorCode::invalid_argument, "geometry tolerances must be non-negative");
    if (!(overlap_frac > 0 && overlap_frac <= 1))
        throw Error(ErrorCode::invalid_argument, "overlap_frac must lie in (0,1]");
}

std::map<std::string, double> attributes(const Rect& r) {
    return {{"x", r.x},
            {"y", r.y},
            {"center_x", r.center_x()},
            {"center_y", r.center_y()},
            {"width", r.w},
            {"height", r.h},
            {"area", r.area()},
            {"circumference", r.circumference()}};
}

// Must match the arithmetic of simd::box_gate so the vector prefilter and
// this predicate agree exactly.
double gap_squared(const Rect& a, const Rect& b) {
    const double dx = std::max(std::max(b.x - a.right(), a.x - b.right()), 0.0);
    const double dy = std::max(std::max(b.y - a.bottom(), a.y - b.bottom()), 0.0);
    return dx * dx + dy * dy;
}

bool is_inside(const Rect& a, const Rect& b, const GeomParams& p) {
    const double m = p.containment_margin;
    return a.x >= b.x + m && a.y >= b.y + m && a.right() <= b.right() - m &&
           a.bottom() <= b.bottom() - m && a.area() < b.area();
}

bool is_on_top_of(const Rect& a, const Rect& b, const GeomParams& p) {
    const double hov = overlap(a.x, a.right(), b.x, b.right());
    return std::abs(a.bottom() - b.y) <= p.eps_touch &&
           hov >= p.overlap_frac * std::min(a.w, b.w);
}

std::vector<RelationInstance> relations_between(const Rect& a, const Rect& b,
                                                const GeomParams& p) {
    std::vector<RelationInstance> out;
    if (a.id == b.id)
        return out;
    auto emit = [&](std::string_view name) {
        out.push_back({std::string(name), a.id, b.id});
    };

    if (is_inside(a, b, p))
        emit(rel::inside);
    if (is_inside(b, a, p))
        emit(rel::contains);

    if (gap_squared(a, b) > p.neighbor_gap * p.neighbor_gap)
        return out;

    const double hov = overlap(a.x, a.right(), b.x, b.right());
    const double vov = overlap(a.y, a.bottom(), b.y, b.bottom());
    const bool h_ok = hov >= p.overlap_frac * std::min(a.w, b.w);
    const bool v_ok = vov >= p.overlap_frac * std::min(a.h, b.h);

    if (h_ok && a.bottom() <= b.y + p.eps_touch)
        emit(rel::above);
    if (h_ok && b.bottom() <= a.y + p.eps_touch)
        emit(rel::below);
    if (v_ok && a.right() <= b.x + p.eps_touch)
        emit(rel::on_left_of);
    if (v_ok && b.right() <= a.x + p.eps_touch)
        emit(rel::on_right_of);
    if (h_ok && std::abs(a.bottom() - b.y) <= p.eps_touch)
        emit(rel::on_top_of);
    if (h_ok && std::abs(a.y - b.bottom()) <= p.eps_touch)
        emit(rel::under);
    if (std::abs(a.bottom() - b.bottom()) <= p.eps_align)
        emit(rel::aligned_h);
    if (std::abs(a.x - b.x) <= p.eps_align && std::abs(a.right() - b.right()) <= p.eps_align)
        emit(rel::aligned_v);
    return out;
}

bool floating(const Rect& a, std::span<const Rect> scene, const GeomParams& p) {
    bool lifted_in_container = false;
    for (const Rect& b : scene) {
        if (b.id == a.id)
            continue;
        if (is_inside(a, b, p) && a.bottom() < b.bottom() - p.eps_touch) {
            lifted_in_container = true;
            break;
        }
    }
    if (!lifted_in_container)
        return false;
    for (const Rect& c : scene) {
        if (c.id != a.id && is_on_top_of(a, c, p))
            return false;
    }
    return true;
}

nlohmann::json to_json(const GeomParams& p) {
    return {{"eps_align", p.eps_align},
            {"eps_touch", p.eps_touch},
            {"overlap_frac", p.overlap_frac},
            {"neighbor_gap", p.neighbor_gap},
            {"containment_margin", p.containment_margin}};
}

GeomParams params_from_json(const nlohmann::json& doc, GeomParams base) {
    if (!doc.is_object())
        throw Error(ErrorCode::parse_error, "geometry params must be an object");
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_number())
            throw Error(ErrorCode::parse_error, "geometry param '" + key + "' must be numeric");
        const double v = value.get<double>();
        if (key == "eps_align") base.eps_align = v;
        else if (key == "eps_touch") base.eps_touch = v;
        else if (key == "overlap_frac") base.overlap_frac = v;
        else if (key == "neighbor_gap") base.neighbor_gap = v;
        else if (key == "containment_margin") base.containment_margin = v;
        else throw Error(ErrorCode::parse_error, "unknown geometry param '" + key + "'");
    }
    base.validate();
    return base;
}

nlohmann::json to_json(const Scene& scene) {
    nlohmann::json rects = nlohmann::json::array();
    for (const Rect& r : scene.rects) {
        nlohmann::json item = {{"id", r.id}, {"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}};
        if (r.label)
            item["label"] = *r.label;
        rects.push_back(std::move(item));
    }
    return {{"rects", std::move(rects)}, {"params", to_json(scene.params)}};
}

Scene scene_from_json(const nlohmann::json& doc) {
    Scene scene;
    try {
        std::set<std::string> seen;
        for (const auto& item : doc.at("rects")) {
            Rect r;
            r.id = item.at("id").get<std::string>();
            r.x = item.at("x").get<double>();
            r.y = item.at("y").get<double>();
            r.w = item.at("w").get<double>();
            r.h = item.at("h").get<double>();
            if (item.contains("label")) {
                r.label = item.at("label").get<std::string>();
                if (*r.label != "shelf" && *r.label != "product" && *r.label != "other")
                    throw Error(ErrorCode::parse_error, "rect '" + r.id + "' has unknown label '" +
                                                            *r.label + "'");
            }
            if (!(r.w > 0 && r.h > 0))
                throw Error(ErrorCode::invalid_argument, "rect '" + r.id + "' has w<=0 or h<=0");
            if (!seen.insert(r.id).second)
                throw Error(ErrorCode::duplicate_rect_id, "rect id '" + r.id + "'");
            scene.rects.push_back(std::move(r));
        }
        if (doc.contains("params"))
            scene.params = params_from_json(doc.at("params"));
    } catch (const nlohmann::json::exception& err) {
        throw Error(ErrorCode::parse_error, std::string("scene json: ") + err.what());
    }
    return scene;
}

} // namespace strata::geom
