#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactgt/abgroups.hpp"

namespace exactgt {

// One row of the homotopy-sphere table: Theta_d in the table's coordinate
// order plus the split subgroup, given by the leading coordinates that
// generate it. The display grouping records how the table presents the
// summands (e.g. (Z/2)^2 (+) Z/2 rather than (Z/2)^3: the trailing factor is
// the boundary-parallelizable part and the split subgroup is spanned by the
// leading block).
struct ThetaRecord {
    int d = 0;
    FiniteAbelianGroup theta;
    std::vector<std::vector<Int>> split_generators;
    int split_prefix = 0;                         // leading coordinates spanning the split part
    std::vector<std::pair<int, Int>> display;     // (repeat, order) atoms, table order
    std::string theta_display;
    std::string split_display;
};

// Sphere-group data is tabulated for 1 <= d <= 19, d != 4.
ThetaRecord theta_record(int d);

// Order of the cyclic subgroup of spheres bounding parallelizable manifolds
// inside Theta_d (so the table value for dimension d+1 boundaries). value is
// absent in the single open dimension d = 125. formula_only marks d beyond
// the tabulated range, where no cross-check against the table exists.
struct BPOrder {
    int d = 0;
    std::optional<Int> value;
    bool formula_only = false;
};

BPOrder bp_order(int d); // d >= 5

// Membership of sigma in the split subgroup of Theta_d.
bool is_split_sphere(int d, const std::vector<Int>& sigma);

// Whether divisibility by 2 of eta times a sphere can be tested on the
// J-cokernel: the forward direction always holds; the converse in the listed
// congruence cases.
enum class ReductionCase { ConverseHolds, ForwardOnly, Unknown };
ReductionCase reduction_case(int d); // d >= 5

// The two aligned table lines for d in [from, to] (d = 4 skipped).
std::string render_theta_table(int from, int to);

} // namespace exactgt
