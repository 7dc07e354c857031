#pragma once

#include "gspline/splinecore.hpp"

#include <functional>

namespace gspline {

struct DyckSymbol {
    bool open;
    std::size_t label;
    bool operator==(const DyckSymbol&) const = default;
};

struct DyckWord {
    std::vector<DyckSymbol> symbols;
    std::size_t pairs() const { return symbols.size() / 2; }
    bool operator==(const DyckWord&) const = default;
};

/// Written as e.g. "(0(1)1)0".
std::string to_string(const DyckWord& w);

/// Children left to right, each with the label of the edge leading to it.
struct PlaneLabeledTree {
    struct Child;
    std::vector<Child> children;

    std::size_t edge_count() const;
    bool operator==(const PlaneLabeledTree& other) const;
};

struct PlaneLabeledTree::Child {
    std::size_t label;
    PlaneLabeledTree subtree;
};

/// All words with `pairs` label-matched pairs over labels 0..labels-1, each once.
/// Order: at every position opens (by label) come before the close.
std::vector<DyckWord> enumerate_dyck_words(std::size_t labels, std::size_t pairs);
/// Same enumeration without materializing the list.
void for_each_dyck_word(std::size_t labels, std::size_t pairs, const std::function<void(const DyckWord&)>& visit);

/// Throws NotDyck.
PlaneLabeledTree word_to_tree(const DyckWord& w);
DyckWord tree_to_word(const PlaneLabeledTree& t);

/// Vertices numbered in depth-first preorder (root 0); the edge into vertex v
/// has index v - 1 and label index taken from the tree.
LabeledGraph tree_to_graph(const PlaneLabeledTree& t, const RingSpec& ring, const std::vector<Ideal>& labels);

/// Number of pairs carrying `label`.
std::size_t count_label(const DyckWord& w, std::size_t label);

enum class SeriesMode { FieldDimension, ZRank };
std::string_view to_string(SeriesMode mode);

struct SeriesPrefix {
    SeriesMode mode;
    std::vector<Integer> coefficients; // a_0 .. a_N
    bool operator==(const SeriesPrefix&) const = default;
};

struct HilbertDyckOptions {
    // Words per pair count checked against the generic solver (evenly spaced).
    std::size_t samplesPerDegree = 24;
    bool exhaustiveCrossCheck = false;
};

/// a_n sums the module size over all words with n pairs. Each word is
/// evaluated by the tree formula size(R) + sum of edge ideal sizes and a
/// sample is recomputed by the generic solver. Throws ModeMismatch.
SeriesPrefix hilbert_dyck_prefix(const RingSpec& ring, const std::vector<Ideal>& labels, std::size_t max_pairs,
                                 SeriesMode mode, const HilbertDyckOptions& options = {});

/// Size of the spline module of the labeled tree of `w` from the tree formula.
std::size_t tree_module_size(const RingSpec& ring, const std::vector<Ideal>& labels, const DyckWord& w, SeriesMode mode);

struct ClosedFormMismatch {
    std::string word;
    std::size_t expected;
    std::size_t actual;
};

struct ClosedFormReport {
    std::size_t wordsChecked = 0;
    std::vector<ClosedFormMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// Compares every tree up to max_pairs against |E| - n0 + 1, n0 counting edges
/// labeled by the zero ideal. Covered: F_p with labels in {(0), R}; Z/p^2 with
/// labels in {(0), (p)}. Throws NoClosedForm.
ClosedFormReport closed_form_check(const RingSpec& ring, const std::vector<Ideal>& labels, std::size_t max_pairs);

struct MarkedWordCount {
    Integer direct; // sum of n0 over words with label 0 as the zero label
    Integer marked; // words over labels + 1 symbols with exactly one marked pair
};

/// Both counts must agree; a disagreement throws std::logic_error.
MarkedWordCount marked_word_count(std::size_t labels, std::size_t pairs);

struct AlgebraicRelation {
    std::vector<std::vector<Integer>> coefficients; // [i][j]: coefficient of x^i t^j
    std::string pretty;
};

/// Integer polynomial P with P(F(t), t) = 0 mod t^(N+1), searching x-degree
/// 1..deg_x and t-degree 0..deg_t. Requires N + 1 >= (deg_x+1)(deg_t+1) + 5,
/// otherwise throws PrefixTooShort.
std::optional<AlgebraicRelation> guess_algebraic_relation(const SeriesPrefix& prefix, std::size_t deg_x, std::size_t deg_t);
/// Exact substitution check of P(F(t), t) mod t^(N+1).
bool verify_relation(const AlgebraicRelation& rel, const SeriesPrefix& prefix);
std::size_t required_prefix_length(std::size_t deg_x, std::size_t deg_t);
std::string format_relation(const std::vector<std::vector<Integer>>& coefficients);

} // namespace gspline
