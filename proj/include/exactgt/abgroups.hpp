#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exactgt/matrix.hpp"
#include "exactgt/scalars.hpp"

namespace exactgt {

// Finitely generated abelian group as an ordered list of cyclic factor
// orders; 0 denotes an infinite cyclic factor. The stored order is the
// display order (tables keep their coordinate conventions); invariant-factor
// form is computed on demand for isomorphism tests.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default; // trivial group
    explicit FiniteAbelianGroup(std::vector<Int> factors, std::vector<std::string> labels = {});

    static FiniteAbelianGroup trivial() { return FiniteAbelianGroup(); }
    static FiniteAbelianGroup cyclic(const Int& n) { return FiniteAbelianGroup({n}); }
    static FiniteAbelianGroup free_abelian(int rank) {
        return FiniteAbelianGroup(std::vector<Int>(rank, Int(0)));
    }

    const std::vector<Int>& factors() const { return factors_; }
    const std::vector<std::string>& labels() const { return labels_; }
    size_t rank() const { return factors_.size(); }

    bool is_trivial() const { return factors_.empty(); }
    bool is_finite() const;
    Int order() const; // 0 when infinite

    std::vector<Int> invariant_factors() const; // ascending finite factors, then 0s
    bool isomorphic(const FiniteAbelianGroup& other) const;

    // "0" for the trivial group, factors joined by " (+) ", "Z" for free.
    std::string render() const;

private:
    std::vector<Int> factors_;
    std::vector<std::string> labels_;
};

// Element of a group, stored as one coordinate per factor. normalize reduces
// coordinates into [0, n_i) for finite factors; check fails on out-of-range
// input where a reduced element is required.
std::vector<Int> normalize_element(const FiniteAbelianGroup& g, std::vector<Int> coords);
void check_element(const FiniteAbelianGroup& g, const std::vector<Int>& coords);
std::string render_element(const std::vector<Int>& coords);

// Order of x in g; 0 means infinite.
Int element_order(const FiniteAbelianGroup& g, const std::vector<Int>& coords);

// Structure of Z^n / <relations> in invariant-factor form.
FiniteAbelianGroup structure_from_relations(int n_generators,
                                            const std::vector<std::vector<Int>>& relations);

// Structure of g / <x>.
FiniteAbelianGroup quotient_by_element(const FiniteAbelianGroup& g, const std::vector<Int>& x);

// Whether some y in g satisfies 2y = x.
bool is_divisible_by_2(const FiniteAbelianGroup& g, const std::vector<Int>& x);

// Whether x lies in the subgroup generated by gens.
bool subgroup_contains(const FiniteAbelianGroup& g, const std::vector<std::vector<Int>>& gens,
                       const std::vector<Int>& x);

// A word in named generators; exponents are arbitrary integers.
using GenWord = std::vector<std::pair<std::string, long>>;

// Abelianization of <generators | relator_words> via exponent-sum vectors.
FiniteAbelianGroup abelianize_presentation(const std::vector<std::string>& generators,
                                           const std::vector<GenWord>& relator_words);

} // namespace exactgt
