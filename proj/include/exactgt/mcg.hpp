#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactgt/abgroups.hpp"
#include "exactgt/spheres.hpp"

namespace exactgt {

// Formal description of the abelian isotopy-Torelli module of the standard
// d-torus: wedge-power summands tensored with sphere groups, a two-torsion
// block, and an infinitely generated coinvariants part kept symbolic with a
// closed-form orbit counter.
struct OmegaSummand {
    int j = 0;
    Int multiplicity;          // C(d, j)
    FiniteAbelianGroup factor; // sphere group in dimension d - j + 1
    std::string factor_note;   // e.g. "Theta_8" or "Theta_8/<eta.Sigma>"
};

struct OmegaDescription {
    int d = 0;
    std::vector<OmegaSummand> wedge;
    Int two_torsion_multiplicity; // C(d, d-2) copies of Z/2
    Int finite_part_order;        // product over all finite summands
};

OmegaDescription omega(int d); // 6 <= d <= 18

// Number of +-orbits of nonzero integer vectors with sup-norm <= N:
// ((2N+1)^d - 1)/2. Generator count bookkeeping for the symbolic summand.
Int omega_orbit_count(int d, const Int& n);

enum class ExtensionKind { SL, SLbar };

// The mapping class group of the connected sum of the d-torus with a sphere
// sigma: an extension tag (split SL form vs the nontrivial central double
// cover) acting on a quotient of the Torelli module.
struct MCGStructure {
    int d = 0;
    ExtensionKind extension = ExtensionKind::SL;
    OmegaDescription quotient;
    bool splitting = false;
    Int quotiented_subgroup_order; // |<eta.Sigma>| * |sigma|^d bookkeeping
};

// sigma lives in the sphere group of dimension d, eta_sigma in dimension
// d+1 with order at most 2; the divisibility of eta_sigma must match the
// tabulated split subgroup membership of sigma, otherwise the input
// contradicts the table and is refused.
MCGStructure mcg_structure(int d, const std::vector<Int>& sigma,
                           const std::vector<Int>& eta_sigma); // 7 <= d <= 18

struct SplitVerdict {
    bool split = false;
    std::string reason;
};

// Splitting of the homology action for a homotopy torus: always false when
// the torus is not a connected sum (the action is not even surjective);
// otherwise decided by split subgroup membership. sigma == nullopt encodes
// the not-a-connected-sum case.
SplitVerdict splitting_decision(int d, const std::optional<std::vector<Int>>& sigma);

// Number of independent invariants of the standard action on wedge-power
// coordinates mod n: the invariant subgroup of (Z/n)^C(d,r) under all
// Lambda^r(E_ij), counted by nontrivial cyclic factors. Zero for 0 < r < d;
// one at r = 0 and r = d.
int torelli_invariants(int d, int r, const Int& n);

// Low-degree homology of SL_d(Z) and nontriviality of its central double
// cover; encoded constants, the H_1 column cross-checked elsewhere by
// presentation abelianization.
struct ExtensionData {
    FiniteAbelianGroup h1;
    FiniteAbelianGroup h2;
    bool slbar_nontrivial = true;
};

ExtensionData extension_data(int d); // d >= 2

// Report rendering shared by the CLI and the bindings.
std::string render_omega(const OmegaDescription& om);
std::string render_mcg(const MCGStructure& s);

} // namespace exactgt
