#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace strata::geom {

namespace rel {
inline constexpr std::string_view inside = "inside";
inline constexpr std::string_view contains = "contains";
inline constexpr std::string_view above = "above";
inline constexpr std::string_view below = "below";
inline constexpr std::string_view on_left_of = "on_left_of";
inline constexpr std::string_view on_right_of = "on_right_of";
inline constexpr std::string_view on_top_of = "on_top_of";
inline constexpr std::string_view under = "under";
inline constexpr std::string_view aligned_h = "aligned_h";
inline constexpr std::string_view aligned_v = "aligned_v";
} // namespace rel

/// The ten binary spatial relation names, in a fixed order.
std::span<const std::string_view> binary_relations();

/// Axis-aligned rectangle; y grows downward.
struct Rect {
    std::string id;
    double x = 0, y = 0, w = 1, h = 1;
    std::optional<std::string> label;

    double right() const { return x + w; }
    double bottom() const { return y + h; }
    double center_x() const { return x + w / 2; }
    double center_y() const { return y + h / 2; }
    double area() const { return w * h; }
    double circumference() const { return 2 * (w + h); }

    friend bool operator==(const Rect&, const Rect&) = default;
};

struct GeomParams {
    double eps_align = 4;
    double eps_touch = 3;
    double overlap_frac = 0.5;
    double neighbor_gap = 40;
    double containment_margin = 0;

    /// Throws invalid_argument on negative tolerances or overlap_frac outside (0,1].
    void validate() const;
};

/// Attribute names in payload order.
std::span<const std::string_view> attribute_names();

/// {x, y, center_x, center_y, width, height, area, circumference}.
std::map<std::string, double> attributes(const Rect& r);

struct RelationInstance {
    std::string relation;
    std::string from;
    std::string to;

    friend auto operator<=>(const RelationInstance&, const RelationInstance&) = default;
};

/// Minimal Euclidean box-to-box gap, squared (0 for overlapping boxes).
double gap_squared(const Rect& a, const Rect& b);

/// Whether a lies within b shrunk by the containment margin with strictly smaller area.
bool is_inside(const Rect& a, const Rect& b, const GeomParams& p);
bool is_on_top_of(const Rect& a, const Rect& b, const GeomParams& p);

/// Directed relation instances with a as the first argument. Relations other
/// than inside/contains are gated by the neighbour gap.
std::vector<RelationInstance> relations_between(const Rect& a, const Rect& b,
                                                const GeomParams& p);

/// A contained rectangle that rests neither on its container's bottom nor on
/// top of another scene rectangle. Rectangles with no container never float.
bool floating(const Rect& a, std::span<const Rect> scene, const GeomParams& p);

/// Scene file: {rects:[{id,x,y,w,h,label?}], params?:{...}}.
struct Scene {
    std::vector<Rect> rects;
    GeomParams params;
};

nlohmann::json to_json(const GeomParams& p);
GeomParams params_from_json(const nlohmann::json& doc, GeomParams base = {});
nlohmann::json to_json(const Scene& scene);
Scene scene_from_json(const nlohmann::json& doc);

} // namespace strata::geom
