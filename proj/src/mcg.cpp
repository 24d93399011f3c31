#include "exactgt/mcg.hpp"

#include <sstream>

#include "exactgt/steinberg.hpp"

namespace exactgt {

namespace {

// Sphere groups as they enter the Torelli module: trivial below dimension 7
// (the excluded dimension 4 contributes nothing either), tabulated above.
FiniteAbelianGroup sphere_group_or_trivial(int k) {
    if (k < 1)
        throw DomainError("sphere dimension must be >= 1");
    if (k <= 6)
        return FiniteAbelianGroup::trivial();
    return theta_record(k).theta;
}

} // namespace

OmegaDescription omega(int d) {
    if (d < 6 || d > 18)
        throw UnsupportedDimension(
            "Torelli module description is valid for 6 <= d <= 18 (needs sphere data up to d+1), got " +
            std::to_string(d));
    OmegaDescription om;
    om.d = d;
    om.finite_part_order = 1;
    for (int j = 0; j <= d; ++j) {
        OmegaSummand s;
        s.j = j;
        s.multiplicity = binomial(d, j);
        s.factor = sphere_group_or_trivial(d - j + 1);
        s.factor_note = "Theta_" + std::to_string(d - j + 1);
        Int ord = s.factor.order();
        if (ord > 0) {
            Int contrib;
            mpz_pow_ui(contrib.get_mpz_t(), ord.get_mpz_t(), s.multiplicity.get_ui());
            om.finite_part_order *= contrib;
        }
        om.wedge.push_back(std::move(s));
    }
    om.two_torsion_multiplicity = binomial(d, d - 2);
    Int two_contrib;
    mpz_pow_ui(two_contrib.get_mpz_t(), Int(2).get_mpz_t(), om.two_torsion_multiplicity.get_ui());
    om.finite_part_order *= two_contrib;
    return om;
}

Int omega_orbit_count(int d, const Int& n) {
    if (d < 1 || n < 0)
        throw DomainError("orbit count needs d >= 1 and N >= 0");
    Int side = 2 * n + 1;
    Int total;
    mpz_pow_ui(total.get_mpz_t(), side.get_mpz_t(), static_cast<unsigned long>(d));
    return Int((total - 1) / 2);
}

MCGStructure mcg_structure(int d, const std::vector<Int>& sigma,
                           const std::vector<Int>& eta_sigma) {
    if (d < 7 || d > 18)
        throw UnsupportedDimension("mapping class structure needs 7 <= d <= 18, got " +
                                   std::to_string(d));
    ThetaRecord theta_d = theta_record(d);
    ThetaRecord theta_d1 = theta_record(d + 1);
    check_element(theta_d.theta, sigma);
    check_element(theta_d1.theta, eta_sigma);

    Int eta_order = element_order(theta_d1.theta, eta_sigma);
    if (eta_order > 2)
        throw DomainError("eta.Sigma must have order at most 2, got order " + to_string(eta_order));

    bool divisible = is_divisible_by_2(theta_d1.theta, eta_sigma);
    if (divisible != is_split_sphere(d, sigma))
        throw DomainError("input contradicts the sphere table: divisibility of eta.Sigma must "
                          "match split membership of sigma");

    MCGStructure s;
    s.d = d;
    s.extension = divisible ? ExtensionKind::SL : ExtensionKind::SLbar;
    s.splitting = divisible;
    s.quotient = omega(d);

    // j = 0 summand: quotient by <eta.Sigma> in the non-split case only.
    if (!divisible) {
        s.quotient.wedge[0].factor = quotient_by_element(theta_d1.theta, eta_sigma);
        s.quotient.wedge[0].factor_note += "/<eta.Sigma>";
    }
    // j = 1 summand: all d copies become the quotient by <sigma>.
    s.quotient.wedge[1].factor = quotient_by_element(theta_d.theta, sigma);
    s.quotient.wedge[1].factor_note += "/<Sigma>";

    // Recompute the finite-part order of the quotient description.
    s.quotient.finite_part_order = 1;
    for (const OmegaSummand& w : s.quotient.wedge) {
        Int ord = w.factor.order();
        if (ord > 0) {
            Int contrib;
            mpz_pow_ui(contrib.get_mpz_t(), ord.get_mpz_t(), w.multiplicity.get_ui());
            s.quotient.finite_part_order *= contrib;
        }
    }
    Int two_contrib;
    mpz_pow_ui(two_contrib.get_mpz_t(), Int(2).get_mpz_t(),
               s.quotient.two_torsion_multiplicity.get_ui());
    s.quotient.finite_part_order *= two_contrib;

    Int sigma_order = element_order(theta_d.theta, sigma);
    Int sigma_pow;
    mpz_pow_ui(sigma_pow.get_mpz_t(), sigma_order.get_mpz_t(), static_cast<unsigned long>(d));
    s.quotiented_subgroup_order = (divisible ? Int(1) : eta_order) * sigma_pow;
    return s;
}

SplitVerdict splitting_decision(int d, const std::optional<std::vector<Int>>& sigma) {
    if (d == 4)
        throw UnsupportedDimension("dimension 4 is not covered");
    if (!sigma)
        return {false, "homology action is not surjective for a torus that is not a connected sum"};
    ThetaRecord rec = theta_record(d); // errors outside 1..19
    check_element(rec.theta, *sigma);
    if (is_split_sphere(d, *sigma))
        return {true, "eta.Sigma is divisible by 2 in Theta_" + std::to_string(d + 1)};
    return {false, "eta.Sigma is not divisible by 2 in Theta_" + std::to_string(d + 1)};
}

int torelli_invariants(int d, int r, const Int& n) {
    if (d < 2)
        throw DomainError("need d >= 2");
    if (r < 0 || r > d)
        throw DomainError("wedge index out of range");
    if (n < 2)
        throw DomainError("modulus must be >= 2");
    const int m = static_cast<int>(binomial(d, r).get_ui());
    // Stack Lambda^r(E_ij) - id over all ordered pairs i != j and count the
    // invariant factors of the mod-n solution group.
    std::vector<IMat> blocks;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            if (i == j)
                continue;
            blocks.push_back(exterior_power(elementary(d, i, j), r) - imat_identity(m));
        }
    IMat stacked(static_cast<int>(blocks.size()) * m, m, Int(0));
    for (size_t b = 0; b < blocks.size(); ++b)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                stacked.at(static_cast<int>(b) * m + i, j) = blocks[b].at(i, j);
    return static_cast<int>(mod_kernel_invariants(stacked, n).size());
}

ExtensionData extension_data(int d) {
    if (d < 2)
        throw DomainError("extension data starts at d = 2");
    ExtensionData out;
    if (d == 2) {
        out.h1 = FiniteAbelianGroup({Int(12)});
        out.h2 = FiniteAbelianGroup::trivial();
    } else if (d <= 4) {
        out.h1 = FiniteAbelianGroup::trivial();
        out.h2 = FiniteAbelianGroup({Int(2), Int(2)});
    } else {
        out.h1 = FiniteAbelianGroup::trivial();
        out.h2 = FiniteAbelianGroup({Int(2)});
    }
    out.slbar_nontrivial = true;
    return out;
}

std::string render_omega(const OmegaDescription& om) {
    std::ostringstream out;
    for (const OmegaSummand& w : om.wedge)
        out << "j=" << w.j << ": " << to_string(w.multiplicity) << " x " << w.factor_note << " = "
            << w.factor.render() << "\n";
    out << "two-torsion: " << to_string(om.two_torsion_multiplicity) << " x Z/2\n";
    out << "coinvariants: ((Z/2)[Z^" << om.d << "]/(Z/2)[1])_{+-}, infinitely generated; "
        << "orbit count r(N) = ((2N+1)^" << om.d << " - 1)/2, r(1) = "
        << to_string(omega_orbit_count(om.d, Int(1))) << "\n";
    out << "finite-part order = " << to_string(om.finite_part_order) << "\n";
    return out.str();
}

std::string render_mcg(const MCGStructure& s) {
    std::ostringstream out;
    if (s.extension == ExtensionKind::SL)
        out << "SL_" << s.d << "(Z)\n";
    else
        out << "SLbar_" << s.d << "(Z), central Z/2 by t_" << s.d << "\n";
    out << render_omega(s.quotient);
    out << "splitting: " << (s.splitting ? "true" : "false") << " (eta.Sigma "
        << (s.splitting ? "divisible" : "not divisible") << " by 2 in Theta_" << (s.d + 1)
        << ")\n";
    return out.str();
}

} // namespace exactgt
