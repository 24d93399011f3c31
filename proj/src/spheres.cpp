#include "exactgt/spheres.hpp"

#include <algorithm>

namespace exactgt {

namespace {

struct RawRow {
    int d;
    std::vector<long> factors; // table coordinate order
    std::vector<std::pair<int, long>> display;
    int split_prefix; // leading coordinates generating the split subgroup
};

// Kervaire-Milnor sphere groups for d <= 19 with the eta-divisibility
// subgroup; orders as in the classical tables (Levine's survey) and the
// 2-primary eta data from the Isaksen-Wang-Xu charts. Dimension 4 is
// deliberately absent.
const std::vector<RawRow>& raw_rows() {
    static const std::vector<RawRow> rows = {
        {1, {}, {}, 0},
        {2, {}, {}, 0},
        {3, {}, {}, 0},
        {5, {}, {}, 0},
        {6, {}, {}, 0},
        {7, {28}, {{1, 28}}, 1},
        {8, {2}, {{1, 2}}, 0},
        {9, {2, 2, 2}, {{2, 2}, {1, 2}}, 2},
        {10, {6}, {{1, 6}}, 1},
        {11, {992}, {{1, 992}}, 1},
        {12, {}, {}, 0},
        {13, {3}, {{1, 3}}, 1},
        {14, {2}, {{1, 2}}, 0},
        {15, {2, 8128}, {{1, 2}, {1, 8128}}, 2},
        {16, {2}, {{1, 2}}, 0},
        {17, {2, 2, 2, 2}, {{3, 2}, {1, 2}}, 3},
        {18, {8, 2}, {{1, 8}, {1, 2}}, 2},
        {19, {2, 523264}, {{1, 2}, {1, 523264}}, 2},
    };
    return rows;
}

std::string render_atoms(const std::vector<std::pair<int, Int>>& atoms) {
    if (atoms.empty())
        return "0";
    std::string out;
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (i)
            out += " (+) ";
        const auto& [rep, order] = atoms[i];
        std::string cyc = "Z/" + to_string(order);
        out += rep == 1 ? cyc : "(" + cyc + ")^" + std::to_string(rep);
    }
    return out;
}

ThetaRecord build_record(const RawRow& raw) {
    ThetaRecord rec;
    rec.d = raw.d;
    std::vector<Int> factors(raw.factors.begin(), raw.factors.end());
    rec.theta = FiniteAbelianGroup(factors);
    rec.split_prefix = raw.split_prefix;
    for (int i = 0; i < raw.split_prefix; ++i) {
        std::vector<Int> gen(factors.size(), Int(0));
        gen[i] = 1;
        rec.split_generators.push_back(std::move(gen));
    }
    for (const auto& [rep, order] : raw.display)
        rec.display.emplace_back(rep, Int(order));
    rec.theta_display = render_atoms(rec.display);
    if (raw.split_prefix == 0) {
        rec.split_display = "0";
    } else if (raw.split_prefix == static_cast<int>(factors.size())) {
        rec.split_display = rec.theta_display;
    } else {
        std::vector<std::pair<int, Int>> head;
        int covered = 0;
        for (const auto& [rep, order] : rec.display) {
            if (covered >= raw.split_prefix)
                break;
            head.emplace_back(rep, order);
            covered += rep;
        }
        rec.split_display = render_atoms(head) + " (+) 0";
    }
    return rec;
}

// The table value for #bP_{d+1} divides #Theta_d wherever both are tabulated;
// checked once, on first use of the sphere data.
void self_check();

struct SelfCheck {
    SelfCheck() { self_check(); }
};

const ThetaRecord& record_for(int d) {
    static const std::vector<ThetaRecord> recs = [] {
        std::vector<ThetaRecord> v;
        for (const RawRow& raw : raw_rows())
            v.push_back(build_record(raw));
        return v;
    }();
    static SelfCheck checked;
    for (const ThetaRecord& r : recs)
        if (r.d == d)
            return r;
    throw UnsupportedDimension("no sphere-group data for dimension " + std::to_string(d) +
                               (d == 4 ? " (dimension 4 is excluded)" : " (table covers d <= 19)"));
}

bool is_power_of_two_minus(int d, int offset, int max_k) {
    // d == 2^k - offset for some k <= max_k
    for (int k = 1; k <= max_k; ++k) {
        long v = (1L << k) - offset;
        if (v == d)
            return true;
    }
    return false;
}

BPOrder bp_order_impl(int d) {
    if (d < 5)
        throw DomainError("bP order is defined here for d >= 5");
    BPOrder out;
    out.d = d;
    out.formula_only = d > 19;
    if (d % 2 == 0) {
        out.value = Int(1);
        return out;
    }
    if (d % 4 == 3) {
        unsigned k = static_cast<unsigned>((d + 1) / 4);
        // 2^{2k-2} (2^{2k-1} - 1) num(4 |B_{2k}| / k)
        Rat b = bernoulli(2 * k);
        Rat t = Rat(4) * abs(b) / Rat(Int(k));
        Int val = pow_int(Int(2), 2 * k - 2) * (pow_int(Int(2), 2 * k - 1) - 1) * numerator(t);
        out.value = val;
        return out;
    }
    // d = 4k+1
    if (d == 125) {
        out.value = std::nullopt; // open: 2 or trivial
        return out;
    }
    if (is_power_of_two_minus(d, 3, 6)) {
        out.value = Int(1);
        return out;
    }
    out.value = Int(2);
    return out;
}

void self_check() {
    for (int d : {7, 11, 15, 19}) {
        BPOrder bp = bp_order_impl(d);
        Int theta_order(1);
        for (const RawRow& raw : raw_rows())
            if (raw.d == d)
                for (long f : raw.factors)
                    theta_order *= f;
        if (!bp.value || !mpz_divisible_p(theta_order.get_mpz_t(), bp.value->get_mpz_t()))
            throw std::logic_error("sphere table inconsistent with bP order in dimension " +
                                   std::to_string(d));
    }
}

} // namespace

ThetaRecord theta_record(int d) {
    if (d < 1 || d == 4 || d > 19)
        throw UnsupportedDimension(d == 4 ? "dimension 4 has no sphere-group data here"
                                          : "sphere-group data covers 1 <= d <= 19 only, got " +
                                                std::to_string(d));
    return record_for(d);
}

BPOrder bp_order(int d) { return bp_order_impl(d); }

bool is_split_sphere(int d, const std::vector<Int>& sigma) {
    ThetaRecord rec = theta_record(d);
    return subgroup_contains(rec.theta, rec.split_generators, sigma);
}

ReductionCase reduction_case(int d) {
    if (d < 5)
        throw DomainError("reduction case analysis applies for d >= 5");
    int m = d % 8;
    if (m != 4 && m != 5)
        return ReductionCase::ConverseHolds;
    if (m == 5)
        return d == 125 ? ReductionCase::ForwardOnly : ReductionCase::ConverseHolds;
    return is_power_of_two_minus(d, 4, 6) ? ReductionCase::ConverseHolds
                                          : ReductionCase::ForwardOnly;
}

std::string render_theta_table(int from, int to) {
    if (from < 1 || to > 19 || from > to)
        throw DomainError("table range must satisfy 1 <= from <= to <= 19");
    std::vector<std::string> hdr = {"d"}, theta = {"Theta_d"}, split = {"Theta^split_d"};
    for (int d = from; d <= to; ++d) {
        if (d == 4)
            continue;
        ThetaRecord rec = theta_record(d);
        hdr.push_back(std::to_string(d));
        theta.push_back(rec.theta_display);
        split.push_back(rec.split_display);
    }
    std::vector<size_t> width(hdr.size());
    for (size_t i = 0; i < hdr.size(); ++i)
        width[i] = std::max({hdr[i].size(), theta[i].size(), split[i].size()});
    auto line = [&](const std::vector<std::string>& cells) {
        std::string out;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out += " | ";
            out += cells[i];
            out += std::string(width[i] - cells[i].size(), ' ');
        }
        // no trailing spaces
        while (!out.empty() && out.back() == ' ')
            out.pop_back();
        return out + "\n";
    };
    return line(hdr) + line(theta) + line(split);
}

} // namespace exactgt
