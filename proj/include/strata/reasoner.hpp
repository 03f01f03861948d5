#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "strata/graph.hpp"
#include "strata/truth.hpp"

namespace strata::reason {

enum class Category { shelf, product };
enum class Label { shelf, product, other };

std::string_view to_string(Category category);
std::string_view to_string(Label label);
Label parse_label(std::string_view text);
Category parse_category(std::string_view text);

/// Resource bounds. wm_capacity caps the premises admitted to working memory.
struct Budget {
    std::size_t wm_capacity = 600;
    int max_iterations = 8;
    double delta = 1e-6;

    void validate() const;
    static Budget unbounded();
};

struct Belief {
    std::string subject;
    Category category = Category::shelf;
    kg::Evidence evidence;

    friend bool operator==(const Belief&, const Belief&) = default;
};

/// Optional expert knowledge. A symmetric entry "aligned" also covers the
/// axis-qualified names aligned_h / aligned_v.
struct ExpertAxioms {
    std::vector<std::string> symmetric;
    std::vector<std::pair<std::string, std::string>> inverses;

    bool empty() const { return symmetric.empty() && inverses.empty(); }
};

ExpertAxioms axioms_from_json(const nlohmann::json& doc);

struct InferResult {
    std::vector<Belief> beliefs; // sorted by (subject, category)
    std::size_t premises_total = 0;
    std::size_t premises_admitted = 0;
    int iterations = 0;
};

/// Applies the four classification rules to a fixpoint over the admitted
/// premises of an L1 graph:
///   R1 contains(o,i), not is_floating(i)          => shelf(o), product(i)
///   R2 aligned_h|aligned_v(r,s), shelf(s)         => shelf(r)
///   R3 aligned_h(r,p), product(p)                 => product(r)
///   R4 is_floating(r), on_top_of(r,p), product(p) => product(r)
/// Each round derives from the previous round's beliefs and folds the new
/// conclusions in with combine().
InferResult infer(const kg::LayeredGraph& g, const Budget& budget,
                  const ExpertAxioms& axioms = {});

/// Order-independent fold of competing evidence for one statement: candidates
/// are ranked by expectation, then pooled greedily while stamps stay
/// disjoint; an overlapping candidate replaces the accumulator only if it
/// ranks higher.
kg::Evidence combine(std::vector<kg::Evidence> candidates);

/// Merges belief lists (e.g. from several contexts) with combine() per
/// (subject, category).
std::vector<Belief> merge_beliefs(std::span<const std::vector<Belief>> parts);

inline constexpr double kDefaultTheta = 0.55;

/// Per rect: the category with the higher expectation if it reaches theta,
/// else other. Missing beliefs count as 0.5; exact ties go to other.
std::map<std::string, Label> classify(std::span<const Belief> beliefs,
                                      double theta = kDefaultTheta);
/// Same, with every id in `rects` present in the output.
std::map<std::string, Label> classify(std::span<const Belief> beliefs,
                                      std::span<const std::string> rects,
                                      double theta = kDefaultTheta);

/// Ids of all percept nodes.
std::vector<std::string> percept_ids(const kg::LayeredGraph& g);

nlohmann::json belief_to_json(const Belief& belief);
Belief belief_from_json(const nlohmann::json& doc);
nlohmann::json labels_to_json(const std::map<std::string, Label>& labels);
std::map<std::string, Label> labels_from_json(const nlohmann::json& doc);

} // namespace strata::reason
