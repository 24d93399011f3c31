#include "exactgt/endoclass.hpp"

#include <sstream>

namespace exactgt {

bool RankOneProfile::all_rank_one_unipotent() const {
    for (const auto& [sym, p] : entries)
        if (!p.unipotent || p.defect_rank != 1)
            return false;
    return true;
}

RankOneProfile profile_generators(const IntCandidate& h) {
    if (h.d < 3)
        throw DomainError("profiling needs d >= 3");
    VerificationReport rep = verify_hom(h);
    if (!rep.pass)
        throw DomainError("candidate fails relation verification: " + rep.failures.front());
    RankOneProfile out;
    out.d = h.d;
    const int m = h.image_size();
    for (const auto& [sym, img] : h.images) {
        GeneratorProfile p;
        p.unipotent = is_unipotent(img);
        IMat defect = img - imat_identity(m);
        p.defect_rank = rank(defect);
        if (p.unipotent && p.defect_rank == 1)
            p.fixed_hyperplane = kernel(defect);
        out.entries.emplace(sym, std::move(p));
    }
    return out;
}

std::optional<std::vector<Subspace>> column_hyperplanes(const RankOneProfile& p) {
    std::vector<Subspace> out;
    for (int k = 1; k <= p.d; ++k) {
        std::optional<Subspace> common;
        for (int i = 1; i <= p.d; ++i) {
            if (i == k)
                continue;
            const GeneratorProfile& gp = p.entries.at(GenSymbol{i, k});
            if (!gp.fixed_hyperplane)
                return std::nullopt;
            if (!common)
                common = gp.fixed_hyperplane;
            else if (*common != *gp.fixed_hyperplane)
                return std::nullopt;
        }
        out.push_back(std::move(*common));
    }
    return out;
}

std::optional<std::vector<Subspace>> recover_lines(const std::vector<Subspace>& hyperplanes) {
    const int d = static_cast<int>(hyperplanes.size());
    if (d < 2)
        throw DomainError("need at least two hyperplanes");
    const int n = hyperplanes[0].ambient_dim();
    for (const Subspace& h : hyperplanes)
        if (h.dim() != n - 1)
            throw DomainError("input subspace is not a hyperplane");
    if (intersect(hyperplanes).dim() != 0)
        return std::nullopt;
    std::vector<Subspace> lines;
    for (int i = 0; i < d; ++i) {
        std::vector<Subspace> others;
        for (int k = 0; k < d; ++k)
            if (k != i)
                others.push_back(hyperplanes[k]);
        Subspace li = intersect(others);
        if (li.dim() != 1)
            return std::nullopt;
        lines.push_back(std::move(li));
    }
    return lines;
}

namespace {

// Primitive integer vector spanning a rational line, first nonzero
// coordinate positive.
std::vector<Int> primitive_vector(const Subspace& line) {
    if (line.dim() != 1)
        throw DomainError("expected a one-dimensional subspace");
    const auto& v = line.basis()[0];
    Int denom_lcm(1);
    for (const Rat& x : v)
        denom_lcm = lcm(denom_lcm, denominator(x));
    std::vector<Int> w(v.size());
    Int content(0);
    for (size_t i = 0; i < v.size(); ++i) {
        Rat scaled = v[i] * Rat(denom_lcm);
        w[i] = numerator(scaled);
        content = gcd(content, w[i]);
    }
    for (auto& x : w)
        x = exactgt::Int(x / content);
    for (const Int& x : w) {
        if (x == 0)
            continue;
        if (x < 0)
            for (auto& y : w)
                y = -y;
        break;
    }
    return w;
}

std::vector<Int> apply_matrix(const IMat& m, const std::vector<Int>& v) {
    std::vector<Int> out(m.rows(), Int(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            out[i] += m.at(i, j) * v[j];
    return out;
}

bool is_zero_vec(const std::vector<Int>& v) {
    for (const Int& x : v)
        if (x != 0)
            return false;
    return true;
}

} // namespace

std::optional<std::vector<std::vector<Int>>> recover_basis(const IntCandidate& h,
                                                           const std::vector<Subspace>& lines) {
    const int d = h.d;
    if (static_cast<int>(lines.size()) != d)
        throw DomainError("need one line per index");
    const int m = h.image_size();
    std::vector<std::vector<Int>> v(d);
    v[d - 1] = primitive_vector(lines[d - 1]);
    for (int i = d - 2; i >= 0; --i) {
        const IMat& u = h.images.at(GenSymbol{i + 1, i + 2});
        v[i] = apply_matrix(u - imat_identity(m), v[i + 1]);
        if (is_zero_vec(v[i]))
            return std::nullopt;
    }
    IMat c(m, d, Int(0));
    for (int col = 0; col < d; ++col)
        for (int row = 0; row < m; ++row)
            c.at(row, col) = v[col][row];
    if (rank(c) != d)
        return std::nullopt;
    return v;
}

namespace {

ClassifierVerdict rejected(std::string reason, std::vector<std::string> diag) {
    ClassifierVerdict v;
    v.kind = ClassifierVerdict::Kind::Rejected;
    v.reason = std::move(reason);
    v.diagnostics = std::move(diag);
    return v;
}

struct StageOutcome {
    std::optional<IMat> conjugator;
    std::string failure; // set when the attempt failed
};

// Stages 2-6 for one candidate (the direct one or the precomposition).
StageOutcome attempt_pipeline(const IntCandidate& h, std::vector<std::string>& diag,
                              const char* tag) {
    StageOutcome out;
    const int d = h.d;
    RankOneProfile profile = profile_generators(h);
    if (!profile.all_rank_one_unipotent()) {
        for (const auto& [sym, p] : profile.entries)
            if (!p.unipotent || p.defect_rank != 1) {
                out.failure = std::string(tag) + ": image of " + to_string(sym) +
                              (p.unipotent ? " has defect rank " + std::to_string(p.defect_rank)
                                           : " is not unipotent");
                return out;
            }
    }
    diag.push_back(std::string(tag) + ": all generator images rank-one unipotent");

    auto hyps = column_hyperplanes(profile);
    if (!hyps) {
        out.failure = std::string(tag) + ": fixed hyperplanes do not agree along columns";
        return out;
    }
    diag.push_back(std::string(tag) + ": column hyperplanes coherent");

    auto lines = recover_lines(*hyps);
    if (!lines) {
        out.failure = std::string(tag) + ": hyperplane intersection pattern degenerate";
        return out;
    }

    auto basis = recover_basis(h, *lines);
    if (!basis) {
        out.failure = std::string(tag) + ": recovered vectors degenerate";
        return out;
    }

    IMat c(d, d, Int(0));
    for (int col = 0; col < d; ++col)
        for (int row = 0; row < d; ++row)
            c.at(row, col) = (*basis)[col][row];

    // The recovered lattice must be ell * Z^d for a single ell > 0.
    SNFResult snf = smith_normal_form(c);
    const Int ell = snf.s.at(0, 0);
    for (int i = 0; i < d; ++i)
        if (snf.s.at(i, i) != ell) {
            out.failure = std::string(tag) + ": recovered lattice is not a scalar lattice";
            return out;
        }
    if (ell == 0) {
        out.failure = std::string(tag) + ": recovered lattice has rank < d";
        return out;
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Int& x = c.at(i, j);
            if (!mpz_divisible_p(x.get_mpz_t(), ell.get_mpz_t())) {
                out.failure = std::string(tag) + ": lattice scale does not divide the basis";
                return out;
            }
            Int q;
            mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), ell.get_mpz_t());
            x = q;
        }
    diag.push_back(std::string(tag) + ": lattice scale " + to_string(ell));

    // Conjugation identity on every generator, upper and lower (this also
    // pins the scalar a_i = 1 for the subdiagonal images): image * c == c * E_ij.
    for (const auto& [sym, img] : h.images) {
        if (IMat(img * c) != IMat(c * elementary(d, sym.i, sym.j))) {
            out.failure = std::string(tag) + ": conjugation identity fails at " + to_string(sym);
            return out;
        }
    }

    // Sign convention: first nonzero entry of column 1 positive.
    for (int i = 0; i < d; ++i) {
        if (c.at(i, 0) == 0)
            continue;
        if (c.at(i, 0) < 0)
            c = -c;
        break;
    }
    out.conjugator = std::move(c);
    return out;
}

} // namespace

ClassifierVerdict classify_endomorphism(const IntCandidate& h) {
    if (h.d < 3)
        throw DomainError("classification needs d >= 3");
    if (!h.complete())
        throw DomainError("candidate is missing generator images");
    std::vector<std::string> diag;

    const int m = h.image_size();
    if (m < h.d)
        return rejected("image size " + std::to_string(m) + " < d = " + std::to_string(h.d) +
                            ": homomorphisms into smaller rank are trivial, not classified here",
                        std::move(diag));
    if (m > h.d)
        return rejected("image size " + std::to_string(m) + " > d = " + std::to_string(h.d) +
                            ": not an endomorphism candidate",
                        std::move(diag));

    bool all_id = true;
    for (const auto& [sym, img] : h.images)
        if (!img.is_identity()) {
            all_id = false;
            break;
        }
    if (all_id) {
        ClassifierVerdict v;
        v.kind = ClassifierVerdict::Kind::Trivial;
        v.diagnostics = {"all generator images are the identity"};
        return v;
    }

    VerificationReport rep = verify_hom(h);
    if (!rep.pass)
        return rejected("relation verification failed: " + rep.failures.front(), std::move(diag));
    diag.push_back("verified " + std::to_string(rep.relators_checked) + " relators");

    StageOutcome direct = attempt_pipeline(h, diag, "direct");
    if (direct.conjugator) {
        ClassifierVerdict v;
        v.kind = ClassifierVerdict::Kind::Automorphism;
        v.conjugator = std::move(direct.conjugator);
        v.used_inverse_transpose = false;
        v.diagnostics = std::move(diag);
        return v;
    }
    diag.push_back(direct.failure);

    StageOutcome retried = attempt_pipeline(precompose_inverse_transpose(h), diag, "precomposed");
    if (retried.conjugator) {
        ClassifierVerdict v;
        v.kind = ClassifierVerdict::Kind::Automorphism;
        v.conjugator = std::move(retried.conjugator);
        v.used_inverse_transpose = true;
        v.diagnostics = std::move(diag);
        return v;
    }
    diag.push_back(retried.failure);

    // A verified candidate reaching this point contradicts the classification
    // of endomorphisms; flag it loudly rather than guessing.
    return rejected("verified candidate resists classification on both attempts: " +
                        retried.failure,
                    std::move(diag));
}

ClassifierVerdict classify_endomorphism(const HomCandidate& h) {
    if (const auto* ic = std::get_if<IntCandidate>(&h))
        return classify_endomorphism(*ic);
    throw DomainError("classification requires an integer-domain candidate");
}

QMat rank_one_unipotent(const std::vector<Rat>& v, const std::vector<Rat>& f) {
    if (v.size() != f.size() || v.empty())
        throw DomainError("vector and functional must have equal positive length");
    const int n = static_cast<int>(v.size());
    Rat pairing(0);
    for (int i = 0; i < n; ++i)
        pairing += f[i] * v[i];
    if (pairing != 0)
        throw DomainError("line must lie inside the hyperplane (f(v) = 0)");
    QMat m = qmat_identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) += v[i] * f[j];
    return m;
}

} // namespace exactgt
