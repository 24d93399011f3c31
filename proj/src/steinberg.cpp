#include "exactgt/steinberg.hpp"

#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace exactgt {

std::string to_string(const GenSymbol& g) {
    return "E(" + std::to_string(g.i) + "," + std::to_string(g.j) + ")";
}

std::string to_string(const Word& w) {
    if (w.empty())
        return "<empty>";
    std::string out;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k)
            out += "*";
        out += to_string(w[k].gen);
        if (w[k].exp < 0)
            out += "^-1";
    }
    return out;
}

Word inverse_word(const Word& w) {
    Word r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        r.push_back({it->gen, -it->exp});
    return r;
}

Word commutator_word(const GenSymbol& x, const GenSymbol& y) {
    return {{x, 1}, {y, 1}, {x, -1}, {y, -1}};
}

std::vector<Word> steinberg_relations(int d) {
    if (d < 3)
        throw DomainError("the presentation on elementary matrices needs d >= 3");
    std::vector<GenSymbol> symbols;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            if (i != j)
                symbols.push_back({i, j});

    std::vector<Word> relators;
    for (size_t a = 0; a < symbols.size(); ++a) {
        for (size_t b = a + 1; b < symbols.size(); ++b) {
            const GenSymbol g = symbols[a];
            const GenSymbol h = symbols[b];
            if (g.j == h.i && g.i == h.j)
                continue; // opposite pair: no relation between E_ij and E_ji
            if (g.j == h.i) {
                // [E_ij, E_jl] = E_il
                Word w = commutator_word(g, h);
                w.push_back({{g.i, h.j}, -1});
                relators.push_back(std::move(w));
            } else if (h.j == g.i) {
                Word w = commutator_word(h, g);
                w.push_back({{h.i, g.j}, -1});
                relators.push_back(std::move(w));
            } else {
                relators.push_back(commutator_word(g, h));
            }
        }
    }

    // (E_12 E_21^-1 E_12)^4 = id; the inner word maps to a rotation of order 4.
    Word braid;
    for (int rep = 0; rep < 4; ++rep) {
        braid.push_back({{1, 2}, 1});
        braid.push_back({{2, 1}, -1});
        braid.push_back({{1, 2}, 1});
    }
    relators.push_back(std::move(braid));
    return relators;
}

std::uint64_t steinberg_relator_count(int d) {
    if (d < 3)
        throw DomainError("the presentation on elementary matrices needs d >= 3");
    std::uint64_t n = static_cast<std::uint64_t>(d) * (d - 1);
    return n * (n - 1) / 2 - n / 2 + 1;
}

int candidate_rank(const HomCandidate& h) {
    return std::visit([](const auto& c) { return c.d; }, h);
}

bool candidate_is_integer(const HomCandidate& h) {
    return std::holds_alternative<IntCandidate>(h);
}

IntCandidate identity_candidate(int d) {
    if (d < 2)
        throw DomainError("need d >= 2");
    IntCandidate c;
    c.d = d;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            if (i != j)
                c.images.emplace(GenSymbol{i, j}, elementary(d, i, j));
    return c;
}

IntCandidate inverse_transpose_candidate(int d) {
    IntCandidate c = identity_candidate(d);
    for (auto& [sym, img] : c.images) {
        IMat m = imat_identity(d);
        m.at(sym.j - 1, sym.i - 1) = -1; // (E_ij)^{-t} = id - e_ji
        img = m;
    }
    return c;
}

IntCandidate conjugated_candidate(int d, const IMat& c) {
    if (c.rows() != d || c.cols() != d)
        throw DomainError("conjugator size does not match d");
    IMat cinv = inverse_unimodular(c);
    IntCandidate out;
    out.d = d;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            if (i != j)
                out.images.emplace(GenSymbol{i, j}, IMat(c * elementary(d, i, j) * cinv));
    return out;
}

IntCandidate precompose_inverse_transpose(const IntCandidate& h) {
    IntCandidate out;
    out.d = h.d;
    for (const auto& [sym, img] : h.images) {
        auto it = h.images.find(GenSymbol{sym.j, sym.i});
        if (it == h.images.end())
            throw DomainError("candidate is missing the image of " +
                              to_string(GenSymbol{sym.j, sym.i}));
        out.images.emplace(sym, inverse_unimodular(it->second));
    }
    return out;
}

namespace {

template <typename T>
const Matrix<T>& image_of(const HomCandidateT<T>& h, const GenSymbol& g) {
    auto it = h.images.find(g);
    if (it == h.images.end())
        throw DomainError("candidate has no image for " + to_string(g));
    return it->second;
}

// Word evaluation over a field with cached inverses; integer candidates are
// promoted to Q so that non-unimodular (invalid) images still evaluate and
// get reported as relator failures instead of crashing the verifier.
template <typename M>
struct FieldEvaluator {
    std::map<GenSymbol, M> pos;
    std::map<GenSymbol, M> neg;

    const M& get(const GenSymbol& g, int exp) {
        if (exp > 0)
            return pos.at(g);
        auto it = neg.find(g);
        if (it == neg.end())
            it = neg.emplace(g, inverse(pos.at(g))).first;
        return it->second;
    }

    M eval(const Word& w, const M& id) {
        M acc = id;
        for (const Letter& l : w) {
            if (pos.find(l.gen) == pos.end())
                throw DomainError("candidate has no image for " + to_string(l.gen));
            acc = acc * get(l.gen, l.exp);
        }
        return acc;
    }
};

FieldEvaluator<QMat> make_evaluator(const IntCandidate& h) {
    FieldEvaluator<QMat> ev;
    for (const auto& [sym, img] : h.images)
        ev.pos.emplace(sym, to_rational(img));
    return ev;
}

FieldEvaluator<KMat> make_evaluator(const QuadCandidate& h) {
    FieldEvaluator<KMat> ev;
    for (const auto& [sym, img] : h.images)
        ev.pos.emplace(sym, img);
    return ev;
}

template <typename T, typename M>
VerificationReport verify_impl(const HomCandidateT<T>& h, const M& id) {
    if (h.d < 3)
        throw DomainError("relation verification needs d >= 3");
    VerificationReport rep;
    if (!h.complete())
        throw DomainError("candidate is missing generator images (" +
                          std::to_string(h.images.size()) + " of " +
                          std::to_string(h.d * (h.d - 1)) + ")");
    const int m = h.image_size();
    for (const auto& [sym, img] : h.images) {
        if (img.rows() != m || img.cols() != m) {
            rep.failures.push_back("image of " + to_string(sym) + " is not " + std::to_string(m) +
                                   "x" + std::to_string(m));
            continue;
        }
        auto det = determinant(img);
        if (detail::scalar_ops<decltype(det)>::is_zero(det)) {
            rep.failures.push_back("image of " + to_string(sym) + " is singular");
        } else if (!(det == detail::scalar_ops<decltype(det)>::one(det))) {
            rep.failures.push_back("image of " + to_string(sym) + " has determinant != 1");
        }
    }
    if (!rep.failures.empty()) {
        rep.pass = false;
        return rep;
    }
    auto ev = make_evaluator(h);
    for (const Word& w : steinberg_relations(h.d)) {
        ++rep.relators_checked;
        if (!ev.eval(w, id).is_identity())
            rep.failures.push_back(to_string(w));
    }
    rep.pass = rep.failures.empty();
    return rep;
}

} // namespace

IMat evaluate_word(const IntCandidate& h, const Word& w) {
    if (h.images.empty())
        throw DomainError("candidate has no generator images");
    auto ev = make_evaluator(h);
    QMat r = ev.eval(w, qmat_identity(h.image_size()));
    return to_integer(r);
}

KMat evaluate_word(const QuadCandidate& h, const Word& w) {
    if (h.images.empty())
        throw DomainError("candidate has no generator images");
    auto ev = make_evaluator(h);
    const Quad& exemplar = h.images.begin()->second.at(0, 0);
    return ev.eval(w, KMat::identity(h.image_size(), exemplar));
}

VerificationReport verify_hom(const IntCandidate& h) {
    return verify_impl(h, qmat_identity(h.image_size()));
}

VerificationReport verify_hom(const QuadCandidate& h) {
    const Quad& exemplar = h.images.begin()->second.at(0, 0);
    return verify_impl(h, KMat::identity(h.image_size(), exemplar));
}

VerificationReport verify_hom(const HomCandidate& h) {
    return std::visit([](const auto& c) { return verify_hom(c); }, h);
}

QuadCandidate build_counterexample_rep() {
    const Int D(-7);
    QuadCandidate c;
    c.d = 3;
    auto q = [&](const char* s) { return parse_quad(s, D); };
    auto row = [&](const char* a, const char* b, const char* cc) {
        return std::vector<Quad>{q(a), q(b), q(cc)};
    };
    auto mat = [&](std::vector<std::vector<Quad>> rows) {
        KMat m(3, 3, Quad::zero(D));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                m.at(i, j) = rows[i][j];
        return m;
    };

    KMat e12 = mat({row("1", "0", "0"), row("0", "-1", "0"), row("0", "0", "-1")});
    KMat e23 = mat({row("0", "1", "0"), row("1", "0", "0"), row("0", "0", "-1")});
    KMat e32 = mat({row("-1", "0", "0"), row("0", "0", "1"), row("0", "1", "0")});
    KMat e21 = mat({row("-1/2", "-1/2", "-1/4-1/4*sqrt(-7)"),
                    row("-1/2", "-1/2", "1/4+1/4*sqrt(-7)"),
                    row("-1/4+1/4*sqrt(-7)", "1/4-1/4*sqrt(-7)", "0")});

    auto comm = [](const KMat& a, const KMat& b) { return KMat(a * b * inverse(a) * inverse(b)); };
    KMat e13 = comm(e12, e23);
    KMat e31 = comm(e32, e21);

    c.images.emplace(GenSymbol{1, 2}, e12);
    c.images.emplace(GenSymbol{2, 3}, e23);
    c.images.emplace(GenSymbol{3, 2}, e32);
    c.images.emplace(GenSymbol{2, 1}, e21);
    c.images.emplace(GenSymbol{1, 3}, e13);
    c.images.emplace(GenSymbol{3, 1}, e31);
    return c;
}

namespace {

template <typename T, typename M>
std::optional<std::uint64_t> closure_impl(const HomCandidateT<T>& h, std::uint64_t cap,
                                          const M& id) {
    if (cap < 1)
        throw DomainError("closure cap must be >= 1");
    std::vector<M> gens;
    for (const auto& [sym, img] : h.images) {
        if (!img.square() || img.rows() != id.rows())
            throw DomainError("closure needs square images of equal size");
        gens.push_back(img);
        gens.push_back(inverse(img));
    }
    std::unordered_set<std::string> seen;
    std::deque<M> queue;
    seen.insert(matrix_key(id));
    queue.push_back(id);
    while (!queue.empty()) {
        M cur = std::move(queue.front());
        queue.pop_front();
        for (const M& g : gens) {
            M next = cur * g;
            std::string key = matrix_key(next);
            if (seen.insert(std::move(key)).second) {
                if (seen.size() > cap)
                    return std::nullopt;
                queue.push_back(std::move(next));
            }
        }
    }
    return seen.size();
}

} // namespace

std::optional<std::uint64_t> closure_order(const IntCandidate& h, std::uint64_t cap) {
    if (h.images.empty())
        throw DomainError("candidate has no generator images");
    // Work over Q so that inverses stay inside one domain.
    std::map<GenSymbol, QMat> imgs;
    for (const auto& [sym, img] : h.images)
        imgs.emplace(sym, to_rational(img));
    HomCandidateT<Rat> hr{h.d, std::move(imgs)};
    return closure_impl(hr, cap, qmat_identity(h.image_size()));
}

std::optional<std::uint64_t> closure_order(const QuadCandidate& h, std::uint64_t cap) {
    if (h.images.empty())
        throw DomainError("candidate has no generator images");
    const Quad& exemplar = h.images.begin()->second.at(0, 0);
    return closure_impl(h, cap, KMat::identity(h.image_size(), exemplar));
}

std::optional<std::uint64_t> closure_order(const HomCandidate& h, std::uint64_t cap) {
    return std::visit([cap](const auto& c) { return closure_order(c, cap); }, h);
}

QuadCandidate u3_exceptional_rep(U3Case cs, const Quad& mu, const Quad& nu) {
    if (mu.is_zero() || nu.is_zero())
        throw DomainError("parameters must be nonzero");
    if (mu.field() != nu.field())
        throw DomainError("parameters live in different quadratic fields");
    const Int D = mu.field();
    QuadCandidate c;
    c.d = 3;
    if (cs == U3Case::m2) {
        KMat e12(2, 2, Quad::zero(D));
        e12.at(0, 0) = mu;
        e12.at(1, 1) = -mu;
        KMat e23(2, 2, Quad::zero(D));
        e23.at(0, 1) = nu;
        e23.at(1, 0) = Quad::one(D);
        KMat e13(2, 2, Quad::zero(D));
        e13.at(0, 0) = -Quad::one(D);
        e13.at(1, 1) = -Quad::one(D);
        c.images.emplace(GenSymbol{1, 2}, e12);
        c.images.emplace(GenSymbol{2, 3}, e23);
        c.images.emplace(GenSymbol{1, 3}, e13);
        return c;
    }
    if (D != -3)
        throw DomainError("the size-3 family needs the field Q(sqrt(-3)) for the cube root of 1");
    Quad lambda = Quad(D, make_rat(Int(-1), Int(2)), make_rat(Int(1), Int(2)));
    KMat e12(3, 3, Quad::zero(D));
    e12.at(0, 0) = mu;
    e12.at(1, 1) = lambda * mu;
    e12.at(2, 2) = lambda * lambda * mu;
    KMat e23(3, 3, Quad::zero(D));
    e23.at(0, 2) = nu;
    e23.at(1, 0) = Quad::one(D);
    e23.at(2, 1) = Quad::one(D);
    KMat e13(3, 3, Quad::zero(D));
    for (int i = 0; i < 3; ++i)
        e13.at(i, i) = lambda;
    c.images.emplace(GenSymbol{1, 2}, e12);
    c.images.emplace(GenSymbol{2, 3}, e23);
    c.images.emplace(GenSymbol{1, 3}, e13);
    return c;
}

U3Report verify_u3(const QuadCandidate& h) {
    U3Report rep;
    const KMat& e12 = image_of(h, {1, 2});
    const KMat& e23 = image_of(h, {2, 3});
    const KMat& e13 = image_of(h, {1, 3});
    auto comm = [](const KMat& a, const KMat& b) { return KMat(a * b * inverse(a) * inverse(b)); };
    rep.commuting_relations = comm(e12, e13).is_identity() && comm(e23, e13).is_identity();
    rep.chain_relation = comm(e12, e23) == e13;
    rep.e13_central = comm(e12, e13).is_identity() && comm(e23, e13).is_identity();
    rep.e13_unipotent = is_unipotent(e13);
    return rep;
}

namespace {

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

HomCandidate parse_candidate(std::istream& in) {
    int d = -1;
    std::optional<Int> quad_d;
    bool domain_seen = false;
    std::vector<std::tuple<GenSymbol, std::string, int>> raw_images;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = trim_view(line);
        if (s.empty() || s.front() == '#')
            continue;
        size_t eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'key = value'", lineno);
        std::string_view key = trim_view(s.substr(0, eq));
        std::string_view value = trim_view(s.substr(eq + 1));
        if (key == "d") {
            d = static_cast<int>(parse_int(value).get_si());
            if (d < 2)
                throw ParseError("d must be >= 2", lineno);
        } else if (key == "domain") {
            domain_seen = true;
            if (value == "Z") {
                quad_d = std::nullopt;
            } else if (value.starts_with("Q(sqrt(") && value.ends_with("))")) {
                Int dv = parse_int(value.substr(7, value.size() - 9));
                validate_field_param(dv);
                quad_d = dv;
            } else {
                throw ParseError("domain must be \"Z\" or \"Q(sqrt(D))\"", lineno);
            }
        } else if (key.starts_with("E")) {
            std::istringstream hs{std::string(key.substr(1))};
            int i = 0, j = 0;
            if (!(hs >> i >> j) || i == j || i < 1 || j < 1)
                throw ParseError("generator key must be 'E i j' with distinct 1-based indices",
                                 lineno);
            raw_images.emplace_back(GenSymbol{i, j}, std::string(value), lineno);
        } else {
            throw ParseError("unknown key \"" + std::string(key) + "\"", lineno);
        }
    }
    if (d < 0)
        throw ParseError("missing 'd = <rank>'");
    if (!domain_seen)
        throw ParseError("missing 'domain = Z' or 'domain = Q(sqrt(D))'");

    auto check_and_insert = [&](auto& cand, auto parse_one) {
        cand.d = d;
        int m = -1;
        for (const auto& [sym, text, ln] : raw_images) {
            if (sym.i > d || sym.j > d)
                throw ParseError("generator " + to_string(sym) + " out of range for d = " +
                                     std::to_string(d),
                                 ln);
            auto mat = parse_one(text, ln);
            if (!mat.square())
                throw ParseError("image of " + to_string(sym) + " is not square", ln);
            if (m < 0)
                m = mat.rows();
            else if (mat.rows() != m)
                throw ParseError("image of " + to_string(sym) + " has size " +
                                     std::to_string(mat.rows()) + ", expected " + std::to_string(m),
                                 ln);
            if (!cand.images.emplace(sym, std::move(mat)).second)
                throw ParseError("duplicate image for " + to_string(sym), ln);
        }
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j)
                if (i != j && cand.images.find(GenSymbol{i, j}) == cand.images.end())
                    throw ParseError("missing image for " + to_string(GenSymbol{i, j}));
    };

    if (quad_d) {
        QuadCandidate cand;
        check_and_insert(cand, [&](const std::string& text, int ln) {
            try {
                return parse_quad_matrix(text, *quad_d);
            } catch (const ParseError& e) {
                throw ParseError(e.what(), ln);
            }
        });
        return cand;
    }
    IntCandidate cand;
    check_and_insert(cand, [&](const std::string& text, int ln) {
        try {
            return parse_int_matrix(text);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), ln);
        }
    });
    return cand;
}

HomCandidate parse_candidate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open candidate file \"" + path + "\"");
    return parse_candidate(in);
}

std::string serialize_candidate(const HomCandidate& h) {
    std::ostringstream out;
    out << "d = " << candidate_rank(h) << "\n";
    if (const auto* ic = std::get_if<IntCandidate>(&h)) {
        out << "domain = Z\n";
        for (const auto& [sym, img] : ic->images)
            out << "E " << sym.i << " " << sym.j << " = " << render(img) << "\n";
    } else {
        const auto& qc = std::get<QuadCandidate>(h);
        out << "domain = Q(sqrt(" << to_string(qc.images.begin()->second.at(0, 0).field())
            << "))\n";
        for (const auto& [sym, img] : qc.images)
            out << "E " << sym.i << " " << sym.j << " = " << render(img) << "\n";
    }
    return out.str();
}

} // namespace exactgt
