#include <algorithm>
#include <cmath>

#include "strata/error.hpp"
#include "strata/rng.hpp"
#include "strata/synthlab.hpp"

namespace strata::synth {

namespace {

constexpr int kMargin = 20;
constexpr int kBayGap = 60;      // > neighbour gap, so bays share no edges
constexpr int kBaysPerLine = 3;
constexpr int kItemGap = 50;     // spacing inside the distractor band
constexpr int kBandRowStep = 90; // tallest distractor 40 + gap 50

void check_range(const IntRange& r, const char* what, int lo) {
    if (r.min < lo || r.max < r.min)
        throw Error(ErrorCode::invalid_argument, std::string("bad range for ") + what);
}

IntRange range_from_json(const nlohmann::json& v, const char* what) {
    if (v.is_array() && v.size() == 2)
        return {v[0].get<int>(), v[1].get<int>()};
    if (v.is_object() && v.size() == 2 && v.contains("min") && v.contains("max"))
        return {v["min"].get<int>(), v["max"].get<int>()};
    throw Error(ErrorCode::parse_error, std::string(what) + " must be [min, max]");
}

int jittered(Rng& rng, const IntRange& r, double sigma) {
    int v = static_cast<int>(rng.between(r.min, r.max));
    if (sigma > 0)
        v += static_cast<int>(std::lround(rng.normal() * sigma));
    return std::clamp(v, r.min, r.max);
}

struct Box {
    int x, y, w, h;
    int right() const { return x + w; }
    int bottom() const { return y + h; }
};

struct Item {
    Box box;
    reason::Label label;
};

bool aligned_v(const Box& a, const Box& b, double eps) {
    return std::abs(a.x - b.x) <= eps && std::abs(a.right() - b.right()) <= eps;
}

} // namespace

void SceneSpec::validate() const {
    if (n_shelf_rows < 0 || n_distractors < 0)
        throw Error(ErrorCode::invalid_argument, "counts must be >= 0");
    if (rows_per_bay < 1)
        throw Error(ErrorCode::invalid_argument, "rows_per_bay must be >= 1");
    check_range(products_per_row, "products_per_row", 0);
    check_range(product_w, "product_w", 1);
    check_range(product_h, "product_h", 1);
    if (!(jitter_sigma >= 0))
        throw Error(ErrorCode::invalid_argument, "jitter_sigma must be >= 0");
    for (double p : {relation_noise, stack_prob})
        if (!(p >= 0 && p <= 1))
            throw Error(ErrorCode::invalid_argument, "probabilities must lie in [0,1]");
    if (shelf_width < 0)
        throw Error(ErrorCode::invalid_argument, "shelf_width must be >= 0");
}

nlohmann::json to_json(const SceneSpec& s) {
    return {{"seed", s.seed},
            {"n_shelf_rows", s.n_shelf_rows},
            {"products_per_row", {s.products_per_row.min, s.products_per_row.max}},
            {"product_size",
             {{"w", {s.product_w.min, s.product_w.max}}, {"h", {s.product_h.min, s.product_h.max}}}},
            {"jitter_sigma", s.jitter_sigma},
            {"relation_noise", s.relation_noise},
            {"n_distractors", s.n_distractors},
            {"rows_per_bay", s.rows_per_bay},
            {"stack_prob", s.stack_prob},
            {"shelf_width", s.shelf_width}};
}

SceneSpec spec_from_json(const nlohmann::json& doc, SceneSpec s) {
    if (!doc.is_object())
        throw Error(ErrorCode::parse_error, "scene spec must be an object");
    try {
        for (const auto& [key, v] : doc.items()) {
            if (key == "seed") s.seed = v.get<std::uint64_t>();
            else if (key == "n_shelf_rows") s.n_shelf_rows = v.get<int>();
            else if (key == "products_per_row") s.products_per_row = range_from_json(v, "products_per_row");
            else if (key == "product_size") {
                if (!v.is_object())
                    throw Error(ErrorCode::parse_error, "product_size must be {w, h}");
                for (const auto& [k2, v2] : v.items()) {
                    if (k2 == "w") s.product_w = range_from_json(v2, "product_size.w");
                    else if (k2 == "h") s.product_h = range_from_json(v2, "product_size.h");
                    else throw Error(ErrorCode::parse_error, "unknown product_size key '" + k2 + "'");
                }
            }
            else if (key == "jitter_sigma") s.jitter_sigma = v.get<double>();
            else if (key == "relation_noise") s.relation_noise = v.get<double>();
            else if (key == "n_distractors") s.n_distractors = v.get<int>();
            else if (key == "rows_per_bay") s.rows_per_bay = v.get<int>();
            else if (key == "stack_prob") s.stack_prob = v.get<double>();
            else if (key == "shelf_width") s.shelf_width = v.get<int>();
            else throw Error(ErrorCode::parse_error, "unknown scene spec key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, e.what());
    }
    s.validate();
    return s;
}

geom::Scene generate_scene(const SceneSpec& spec, const geom::GeomParams& params) {
    spec.validate();
    params.validate();
    Rng rng(spec.seed);
    const double eps = params.eps_align;

    const int shelf_w = spec.shelf_width > 0
                            ? spec.shelf_width
                            : spec.products_per_row.max * (spec.product_w.max + 5) + 8;
    // Room for one product stacked on another plus clearance at the top.
    const int shelf_h = 2 * spec.product_h.max + 10;
    const int usable = shelf_w - 4;
    if (spec.n_shelf_rows > 0 &&
        spec.products_per_row.min * spec.product_w.min + std::max(spec.products_per_row.min - 1, 0) > usable)
        throw Error(ErrorCode::infeasible_spec,
                    std::to_string(spec.products_per_row.min) + " products of width >= " +
                        std::to_string(spec.product_w.min) + " do not fit a shelf of width " +
                        std::to_string(shelf_w));

    std::vector<Item> items;
    const int n_bays = (spec.n_shelf_rows + spec.rows_per_bay - 1) / spec.rows_per_bay;
    int extent_x = 0, extent_y = 0;
    for (int bay = 0; bay < n_bays; ++bay) {
        const int bx = kMargin + (bay % kBaysPerLine) * (shelf_w + kBayGap);
        const int by = kMargin + (bay / kBaysPerLine) * (spec.rows_per_bay * shelf_h + kBayGap);
        const int rows = std::min(spec.rows_per_bay, spec.n_shelf_rows - bay * spec.rows_per_bay);
        std::vector<Box> bay_products;
        for (int r = 0; r < rows; ++r) {
            const Box shelf{bx, by + r * shelf_h, shelf_w, shelf_h};
            items.push_back({shelf, reason::Label::shelf});
            extent_x = std::max(extent_x, shelf.right());
            extent_y = std::max(extent_y, shelf.bottom());

            // Products stand on the shelf bottom. Rows are redrawn when a
            // product would line up vertically with one in another row.
            std::vector<Box> row;
            for (int attempt = 0; attempt < 32; ++attempt) {
                int n = static_cast<int>(rng.between(spec.products_per_row.min, spec.products_per_row.max));
                std::vector<int> ws(n), gaps(std::max(n - 1, 0));
                for (int& w : ws)
                    w = jittered(rng, spec.product_w, spec.jitter_sigma);
                for (int& g : gaps)
                    g = static_cast<int>(rng.between(1, 5));
                auto total = [&] {
                    int t = 0;
                    for (int w : ws) t += w;
                    for (int g : gaps) t += g;
                    return t;
                };
                while (total() > usable) {
                    auto g = std::max_element(gaps.begin(), gaps.end());
                    auto w = std::max_element(ws.begin(), ws.end());
                    if (g != gaps.end() && *g > 1)
                        --*g;
                    else if (w != ws.end() && *w > spec.product_w.min)
                        --*w;
                    else {
                        ws.pop_back();
                        gaps.pop_back();
                    }
                }
                int x = shelf.x + 2 + static_cast<int>(rng.between(0, usable - total()));
                row.clear();
                for (int i = 0; i < static_cast<int>(ws.size()); ++i) {
                    const int h = jittered(rng, spec.product_h, spec.jitter_sigma);
                    row.push_back({x, shelf.bottom() - h, ws[i], h});
                    x += ws[i] + (i < static_cast<int>(gaps.size()) ? gaps[i] : 0);
                }
                const bool clash = std::any_of(row.begin(), row.end(), [&](const Box& p) {
                    return std::any_of(bay_products.begin(), bay_products.end(),
                                       [&](const Box& q) { return aligned_v(p, q, eps); });
                });
                if (!clash)
                    break;
            }
            std::vector<Box> stacked;
            for (const Box& base : row) {
                if (!rng.chance(spec.stack_prob))
                    continue;
                const int w_hi = base.w - static_cast<int>(eps) - 1;
                const int w_lo = std::max(std::min(6, w_hi), base.w - 12);
                const int h_hi = std::min(spec.product_h.max, shelf_h - 4 - base.h);
                if (w_hi < 1 || h_hi < spec.product_h.min)
                    continue;
                const int w = static_cast<int>(rng.between(w_lo, w_hi));
                const int h = static_cast<int>(rng.between(spec.product_h.min, h_hi));
                Box top{base.x + static_cast<int>(rng.between(0, base.w - w)), base.y - h, w, h};
                if (aligned_v(top, base, eps))
                    top.x = base.x;
                const bool clash = std::any_of(bay_products.begin(), bay_products.end(),
                                               [&](const Box& q) { return aligned_v(top, q, eps); });
                if (!clash)
                    stacked.push_back(top);
            }
            for (const Box& p : row) {
                items.push_back({p, reason::Label::product});
                bay_products.push_back(p);
            }
            for (const Box& p : stacked) {
                items.push_back({p, reason::Label::product});
                bay_products.push_back(p);
            }
        }
    }

    // Distractor band below the shelving: signs holding a floating caption
    // (contains, but its inner rect floats) and free-standing boxes.
    if (spec.n_distractors > 0) {
        const int band_w = std::max(extent_x, 400);
        const int n_signs = spec.n_distractors / 3;
        const int n_boxes = spec.n_distractors - 2 * n_signs;
        int cx = kMargin;
        int cy = (extent_y > 0 ? extent_y + kBayGap : kMargin);
        auto place = [&](int w) {
            if (cx + w > band_w && cx > kMargin) {
                cx = kMargin;
                cy += kBandRowStep;
            }
            const int x = cx;
            cx += w + kItemGap;
            return x;
        };
        for (int i = 0; i < n_signs + n_boxes; ++i) {
            if (i < n_signs) {
                const int w = static_cast<int>(rng.between(40, 70));
                const int h = static_cast<int>(rng.between(22, 32));
                const Box sign{place(w), cy, w, h};
                const int tw = w - static_cast<int>(rng.between(10, 20));
                const int th = static_cast<int>(rng.between(6, 10));
                const Box text{sign.x + static_cast<int>(rng.between(3, w - tw - 3)),
                               sign.y + static_cast<int>(rng.between(2, 4)), tw, th};
                items.push_back({sign, reason::Label::other});
                items.push_back({text, reason::Label::other});
            } else {
                const int w = static_cast<int>(rng.between(10, 40));
                const int h = static_cast<int>(rng.between(10, 40));
                items.push_back({{place(w), cy, w, h}, reason::Label::other});
            }
        }
    }

    // Neutral ids in shuffled order so id order carries no class signal.
    std::vector<std::size_t> order(items.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
    const int digits = items.size() > 999 ? 4 : 3;

    geom::Scene scene;
    scene.params = params;
    scene.rects.resize(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        std::string num = std::to_string(order[i]);
        num.insert(0, std::max<int>(0, digits - static_cast<int>(num.size())), '0');
        const Item& it = items[i];
        geom::Rect r;
        r.id = "r" + num;
        r.x = it.box.x;
        r.y = it.box.y;
        r.w = it.box.w;
        r.h = it.box.h;
        r.label = std::string(reason::to_string(it.label));
        scene.rects[order[i]] = std::move(r);
    }
    return scene;
}

percept::GrayImage render_outline(const geom::Scene& scene, int margin) {
    int w = margin, h = margin;
    for (const geom::Rect& r : scene.rects) {
        w = std::max(w, static_cast<int>(std::ceil(r.right())) + margin);
        h = std::max(h, static_cast<int>(std::ceil(r.bottom())) + margin);
    }
    percept::GrayImage img(w, h, 0);
    for (const geom::Rect& r : scene.rects) {
        const int x0 = static_cast<int>(std::lround(r.x)), y0 = static_cast<int>(std::lround(r.y));
        const int x1 = x0 + static_cast<int>(std::lround(r.w)) - 1;
        const int y1 = y0 + static_cast<int>(std::lround(r.h)) - 1;
        for (int x = std::max(x0, 0); x <= x1 && x < w; ++x) {
            if (y0 >= 0 && y0 < h) img.at(x, y0) = 255;
            if (y1 >= 0 && y1 < h) img.at(x, y1) = 255;
        }
        for (int y = std::max(y0, 0); y <= y1 && y < h; ++y) {
            if (x0 >= 0 && x0 < w) img.at(x0, y) = 255;
            if (x1 >= 0 && x1 < w) img.at(x1, y) = 255;
        }
    }
    return img;
}

} // namespace strata::synth
