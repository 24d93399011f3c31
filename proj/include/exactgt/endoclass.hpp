#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exactgt/steinberg.hpp"

namespace exactgt {

// Per-generator unipotency data. fixed_hyperplane is present exactly when
// the image is unipotent with defect rank 1; it then has dimension d-1.
struct GeneratorProfile {
    bool unipotent = false;
    int defect_rank = 0;
    std::optional<Subspace> fixed_hyperplane;
};

struct RankOneProfile {
    int d = 0;
    std::map<GenSymbol, GeneratorProfile> entries;
    bool all_rank_one_unipotent() const;
};

// Unipotency, defect rank and fixed space of every generator image.
// Requires a verified candidate; a relator failure raises DomainError naming
// the relator.
RankOneProfile profile_generators(const IntCandidate& h);

// For each column k, the common fixed hyperplane of the images of E_ik over
// all i != k, when the d-1 candidates agree; nullopt (NotCoherent) when they
// do not, which signals the inverse-transpose retry: for the transposed
// pattern the coincidences run along rows instead.
std::optional<std::vector<Subspace>> column_hyperplanes(const RankOneProfile& p);

// Lines L_i = intersection of all H_k, k != i. Empty result (Degenerate)
// when the total intersection of the hyperplanes is nonzero.
std::optional<std::vector<Subspace>> recover_lines(const std::vector<Subspace>& hyperplanes);

// Basis adapted to the candidate: v_d is the primitive integer vector
// spanning L_d with positive leading coordinate, and inductively
// v_i = (image(E_{i,i+1}) - id) v_{i+1}. Degenerate (empty) when some v_i
// vanishes or the vectors fail to be independent.
std::optional<std::vector<std::vector<Int>>> recover_basis(const IntCandidate& h,
                                                           const std::vector<Subspace>& lines);

struct ClassifierVerdict {
    enum class Kind { Trivial, Automorphism, Rejected };
    Kind kind = Kind::Rejected;
    std::optional<IMat> conjugator;       // present iff Automorphism
    bool used_inverse_transpose = false;  // meaningful iff Automorphism
    std::string reason;                   // present iff Rejected
    std::vector<std::string> diagnostics; // per-stage notes
};

// Decides whether a candidate endomorphism of SL_d(Z) is trivial or an
// automorphism, recovering the conjugating matrix and the inverse-transpose
// flag. The conjugator is sign-normalized: its first nonzero column-1 entry
// is positive. Stages: triviality, relation verification, per-generator
// rank-one profile, hyperplane coherence per column, line recovery, basis
// recovery, lattice check by Smith normal form, conjugation identity on all
// generators; a failed stage retries once on the inverse-transpose
// precomposition before rejecting.
ClassifierVerdict classify_endomorphism(const HomCandidate& h);
ClassifierVerdict classify_endomorphism(const IntCandidate& h);

// Rank-one unipotent id + v f^T with f(v) = 0: fixed hyperplane ker f,
// image span v. Used by the commutator-law tests and property suites.
QMat rank_one_unipotent(const std::vector<Rat>& v, const std::vector<Rat>& f);

} // namespace exactgt
