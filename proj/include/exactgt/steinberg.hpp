#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "exactgt/matrix.hpp"

namespace exactgt {

// Symbol for the elementary generator E_ij (1-based, i != j).
struct GenSymbol {
    int i = 0;
    int j = 0;
    auto operator<=>(const GenSymbol&) const = default;
};

std::string to_string(const GenSymbol& g);

// A word in the generators; exponents are limited to +-1.
struct Letter {
    GenSymbol gen;
    int exp = 1;
    auto operator<=>(const Letter&) const = default;
};
using Word = std::vector<Letter>;

std::string to_string(const Word& w);

Word inverse_word(const Word& w);
// [x, y] = x y x^-1 y^-1
Word commutator_word(const GenSymbol& x, const GenSymbol& y);

// Full relator list of the standard presentation of SL_d(Z) on the E_ij for
// d >= 3: commuting relators [E_ij, E_kl] for j != k, i != l; chain relators
// [E_ij, E_jl] E_il^-1 for distinct i, j, l; and the order-4 relator
// (E_12 E_21^-1 E_12)^4. Every Word evaluates to the identity on the
// standard matrices.
std::vector<Word> steinberg_relations(int d);

// Relator count without building the list: all unordered generator pairs
// except the opposite pairs {E_ij, E_ji}, plus the order-4 relator.
std::uint64_t steinberg_relator_count(int d);

// Generator images defining a homomorphism candidate. d is the source rank;
// the images may be m x m for m != d (such candidates are rejected by the
// classifier with a reason rather than classified). Candidates restricted to
// the unipotent subgroup keep only the images of E_12, E_23, E_13.
template <typename T>
struct HomCandidateT {
    int d = 0;
    std::map<GenSymbol, Matrix<T>> images;

    int image_size() const {
        if (images.empty())
            throw DomainError("candidate has no generator images");
        return images.begin()->second.rows();
    }
    bool complete() const {
        return static_cast<int>(images.size()) == d * (d - 1);
    }
};

using IntCandidate = HomCandidateT<Int>;
using QuadCandidate = HomCandidateT<Quad>;
using HomCandidate = std::variant<IntCandidate, QuadCandidate>;

int candidate_rank(const HomCandidate& h);
bool candidate_is_integer(const HomCandidate& h);

// E_ij |-> E_ij.
IntCandidate identity_candidate(int d);
// E_ij |-> (E_ij)^{-t} = E_ji^{-1}, the inverse-transpose automorphism.
IntCandidate inverse_transpose_candidate(int d);
// E_ij |-> c E_ij c^{-1}.
IntCandidate conjugated_candidate(int d, const IMat& c);
// Precompose with the inverse-transpose automorphism: images E_ij |-> images(E_ji)^{-1}.
IntCandidate precompose_inverse_transpose(const IntCandidate& h);

// Ordered product of images and inverses. Missing symbols raise DomainError.
IMat evaluate_word(const IntCandidate& h, const Word& w);
KMat evaluate_word(const QuadCandidate& h, const Word& w);

struct VerificationReport {
    bool pass = false;
    int relators_checked = 0;
    std::vector<std::string> failures; // violated relators or invalid images
};

// Evaluates every relator of steinberg_relations(d) on the candidate.
// Invalid images (determinant != 1, singular) are reported as failures, not
// thrown: failures are data.
VerificationReport verify_hom(const HomCandidate& h);
VerificationReport verify_hom(const IntCandidate& h);
VerificationReport verify_hom(const QuadCandidate& h);

// Finite-image representation of SL_3(Z) into SL_3(Q(sqrt(-7))): four
// explicit order-2 generator images, the remaining two defined as
// commutators. Passes all Steinberg relators even though no image is
// unipotent.
QuadCandidate build_counterexample_rep();

// Breadth-first closure of the subgroup generated by the images under
// multiplication by the images and their inverses, with canonical-form
// hashing; the order of the image if it is <= cap, nullopt otherwise.
std::optional<std::uint64_t> closure_order(const HomCandidate& h, std::uint64_t cap);
std::optional<std::uint64_t> closure_order(const IntCandidate& h, std::uint64_t cap);
std::optional<std::uint64_t> closure_order(const QuadCandidate& h, std::uint64_t cap);

// The exceptional representations of the unipotent group U_3 on which E_13
// maps to a central, non-unipotent scalar: E_13 |-> -id in size 2, and
// E_13 |-> lambda id in size 3 with lambda a nontrivial cube root of 1 over
// Q(sqrt(-3)).
enum class U3Case { m2, m3 };
QuadCandidate u3_exceptional_rep(U3Case c, const Quad& mu, const Quad& nu);

struct U3Report {
    bool commuting_relations = false; // [E_12, E_13] = [E_23, E_13] = id
    bool chain_relation = false;      // [E_12, E_23] = E_13
    bool e13_central = false;
    bool e13_unipotent = false;
};
U3Report verify_u3(const QuadCandidate& h);

// Candidate file format:
//   d = 3
//   domain = Z              (or "Q(sqrt(-7))")
//   E 1 2 = 1,1,0;0,1,0;0,0,1
// with '#' comments and blank lines allowed.
HomCandidate parse_candidate(std::istream& in);
HomCandidate parse_candidate_file(const std::string& path);
std::string serialize_candidate(const HomCandidate& h);

} // namespace exactgt
