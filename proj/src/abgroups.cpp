#include "exactgt/abgroups.hpp"

#include <algorithm>
#include <map>

namespace exactgt {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> factors, std::vector<std::string> labels)
    : factors_(std::move(factors)), labels_(std::move(labels)) {
    for (const Int& f : factors_)
        if (f == 1 || f < 0)
            throw DomainError("cyclic factor orders must be >= 2, or 0 for infinite");
    if (!labels_.empty() && labels_.size() != factors_.size())
        throw DomainError("label count does not match factor count");
}

bool FiniteAbelianGroup::is_finite() const {
    return std::none_of(factors_.begin(), factors_.end(), [](const Int& f) { return f == 0; });
}

Int FiniteAbelianGroup::order() const {
    Int o(1);
    for (const Int& f : factors_) {
        if (f == 0)
            return Int(0);
        o *= f;
    }
    return o;
}

std::vector<Int> FiniteAbelianGroup::invariant_factors() const {
    if (factors_.empty())
        return {};
    std::vector<std::vector<Int>> rels;
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] == 0)
            continue;
        std::vector<Int> r(factors_.size(), Int(0));
        r[i] = factors_[i];
        rels.push_back(std::move(r));
    }
    return structure_from_relations(static_cast<int>(factors_.size()), rels).factors();
}

bool FiniteAbelianGroup::isomorphic(const FiniteAbelianGroup& other) const {
    return invariant_factors() == other.invariant_factors();
}

std::string FiniteAbelianGroup::render() const {
    if (factors_.empty())
        return "0";
    std::string out;
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i)
            out += " (+) ";
        out += factors_[i] == 0 ? "Z" : "Z/" + to_string(factors_[i]);
    }
    return out;
}

std::vector<Int> normalize_element(const FiniteAbelianGroup& g, std::vector<Int> coords) {
    if (coords.size() != g.rank())
        throw DomainError("element has " + std::to_string(coords.size()) + " coordinates, group has " +
                          std::to_string(g.rank()) + " factors");
    for (size_t i = 0; i < coords.size(); ++i) {
        const Int& n = g.factors()[i];
        if (n != 0) {
            Int r;
            mpz_mod(r.get_mpz_t(), coords[i].get_mpz_t(), n.get_mpz_t());
            coords[i] = r;
        }
    }
    return coords;
}

void check_element(const FiniteAbelianGroup& g, const std::vector<Int>& coords) {
    if (coords.size() != g.rank())
        throw DomainError("element has " + std::to_string(coords.size()) + " coordinates, group has " +
                          std::to_string(g.rank()) + " factors");
    for (size_t i = 0; i < coords.size(); ++i) {
        const Int& n = g.factors()[i];
        if (n != 0 && (coords[i] < 0 || coords[i] >= n))
            throw DomainError("coordinate " + to_string(coords[i]) + " out of range for Z/" +
                              to_string(n));
    }
}

std::string render_element(const std::vector<Int>& coords) {
    std::string out = "(";
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i)
            out += ",";
        out += to_string(coords[i]);
    }
    return out + ")";
}

Int element_order(const FiniteAbelianGroup& g, const std::vector<Int>& coords) {
    check_element(g, coords);
    Int ord(1);
    for (size_t i = 0; i < coords.size(); ++i) {
        const Int& n = g.factors()[i];
        if (n == 0) {
            if (coords[i] != 0)
                return Int(0);
            continue;
        }
        if (coords[i] == 0)
            continue;
        ord = lcm(ord, exactgt::Int(n / gcd(n, coords[i])));
    }
    return ord;
}

FiniteAbelianGroup structure_from_relations(int n_generators,
                                            const std::vector<std::vector<Int>>& relations) {
    if (n_generators <= 0)
        throw DomainError("need at least one generator");
    if (relations.empty())
        return FiniteAbelianGroup::free_abelian(n_generators);
    IMat r(static_cast<int>(relations.size()), n_generators, Int(0));
    for (size_t i = 0; i < relations.size(); ++i) {
        if (static_cast<int>(relations[i].size()) != n_generators)
            throw DomainError("relation vector length does not match generator count");
        for (int j = 0; j < n_generators; ++j)
            r.at(static_cast<int>(i), j) = relations[i][j];
    }
    SNFResult snf = smith_normal_form(r);
    std::vector<Int> factors;
    int mn = std::min(r.rows(), r.cols());
    int rank_of_rel = 0;
    for (int i = 0; i < mn; ++i) {
        const Int& d = snf.s.at(i, i);
        if (d == 0)
            break;
        ++rank_of_rel;
        if (d != 1)
            factors.push_back(d);
    }
    for (int i = rank_of_rel; i < n_generators; ++i)
        factors.push_back(Int(0));
    return FiniteAbelianGroup(std::move(factors));
}

FiniteAbelianGroup quotient_by_element(const FiniteAbelianGroup& g, const std::vector<Int>& x) {
    check_element(g, x);
    if (g.rank() == 0)
        return FiniteAbelianGroup::trivial();
    std::vector<std::vector<Int>> rels;
    for (size_t i = 0; i < g.rank(); ++i) {
        if (g.factors()[i] == 0)
            continue;
        std::vector<Int> r(g.rank(), Int(0));
        r[i] = g.factors()[i];
        rels.push_back(std::move(r));
    }
    rels.push_back(x);
    return structure_from_relations(static_cast<int>(g.rank()), rels);
}

bool is_divisible_by_2(const FiniteAbelianGroup& g, const std::vector<Int>& x) {
    check_element(g, x);
    for (size_t i = 0; i < x.size(); ++i) {
        const Int& n = g.factors()[i];
        if (n == 0) {
            if (!mpz_divisible_ui_p(x[i].get_mpz_t(), 2))
                return false;
        } else {
            // 2y = x mod n solvable iff gcd(2, n) | x
            if (!mpz_divisible_p(x[i].get_mpz_t(), gcd(Int(2), n).get_mpz_t()))
                return false;
        }
    }
    return true;
}

bool subgroup_contains(const FiniteAbelianGroup& g, const std::vector<std::vector<Int>>& gens,
                       const std::vector<Int>& x) {
    check_element(g, x);
    if (g.rank() == 0)
        return true;
    const int m = static_cast<int>(g.rank());
    const int k = static_cast<int>(gens.size());
    // Columns: the generators, then the factor relations; x must lie in the
    // column lattice.
    IMat cols(m, k + m, Int(0));
    for (int c = 0; c < k; ++c) {
        check_element(g, gens[c]);
        for (int i = 0; i < m; ++i)
            cols.at(i, c) = gens[c][i];
    }
    for (int i = 0; i < m; ++i)
        cols.at(i, k + i) = g.factors()[i];
    return lattice_contains(cols, x);
}

FiniteAbelianGroup abelianize_presentation(const std::vector<std::string>& generators,
                                           const std::vector<GenWord>& relator_words) {
    if (generators.empty())
        throw DomainError("presentation needs at least one generator");
    std::map<std::string, int> index;
    for (size_t i = 0; i < generators.size(); ++i) {
        if (!index.emplace(generators[i], static_cast<int>(i)).second)
            throw DomainError("duplicate generator name \"" + generators[i] + "\"");
    }
    std::vector<std::vector<Int>> rels;
    for (const GenWord& w : relator_words) {
        std::vector<Int> v(generators.size(), Int(0));
        for (const auto& [name, exp] : w) {
            auto it = index.find(name);
            if (it == index.end())
                throw DomainError("relator uses undeclared generator \"" + name + "\"");
            v[it->second] += exp;
        }
        rels.push_back(std::move(v));
    }
    return structure_from_relations(static_cast<int>(generators.size()), rels);
}

} // namespace exactgt
