#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "exactgt/errors.hpp"

namespace exactgt {

// The two exact base domains. Rat is always stored canonical: reduced,
// positive denominator (mpq_class maintains this after canonicalization,
// which every constructor below performs).
using Int = mpz_class;
using Rat = mpq_class;

Int binomial(unsigned long n, unsigned long k);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int pow_int(const Int& base, unsigned long e);

// Reduced fraction p/q with q > 0. Throws DomainError on q == 0.
Rat make_rat(const Int& p, const Int& q);

const Int numerator(const Rat& r);
const Int denominator(const Rat& r);
bool is_integral(const Rat& r);

std::string to_string(const Int& x);
std::string to_string(const Rat& r); // "p/q", or "p" when q == 1

Int parse_int(std::string_view text);
Rat parse_rational(std::string_view text);

// Bernoulli number B_n in the convention B_1 = -1/2, B_2 = 1/6, B_4 = -1/30.
// Only even indices are accepted; the odd ones >= 3 vanish and index 1 is
// not needed anywhere. Computed by the Worpitzky double sum
//   B_n = sum_{k=0}^{n} 1/(k+1) sum_{j=0}^{k} (-1)^j C(k,j) j^n,
// which is independent of the usual C(m+1,j)-recurrence used as a test
// oracle. Indices above `bound` raise ResourceError.
Rat bernoulli(unsigned n, unsigned bound = 200);

// Element a + b*sqrt(D) of the quadratic field Q(sqrt(D)). D is fixed per
// value; arithmetic between values with different D is rejected. D must be
// != 0, 1; squarefreeness is validated at the entry points (parsing,
// validate_field_param), not on every arithmetic step.
class Quad {
public:
    Quad(Int D, Rat a, Rat b);

    static Quad from_rational(const Int& D, const Rat& a) { return Quad(D, a, Rat(0)); }
    static Quad zero(const Int& D) { return Quad(D, Rat(0), Rat(0)); }
    static Quad one(const Int& D) { return Quad(D, Rat(1), Rat(0)); }
    static Quad sqrt_d(const Int& D) { return Quad(D, Rat(0), Rat(1)); }

    const Int& field() const { return d_; }
    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    Quad conj() const { return Quad(d_, a_, -b_); }
    Rat norm() const; // a^2 - D b^2

    Quad operator-() const { return Quad(d_, -a_, -b_); }
    Quad inverse() const;  // DomainError on zero

    friend Quad operator+(const Quad& x, const Quad& y);
    friend Quad operator-(const Quad& x, const Quad& y);
    friend Quad operator*(const Quad& x, const Quad& y);
    friend Quad operator/(const Quad& x, const Quad& y);
    friend bool operator==(const Quad& x, const Quad& y);
    friend bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }

private:
    Int d_;
    Rat a_, b_;
};

// Checks D != 0, 1 and squarefreeness by trial division (primes <= 10^4).
void validate_field_param(const Int& D);

std::string to_string(const Quad& q); // "a", "b*sqrt(D)", "a+b*sqrt(D)", "a-b*sqrt(D)"

// Parses the same grammar to_string emits. A plain rational is accepted and
// placed in the field with parameter `expected_D`; a sqrt(D) term must match
// expected_D exactly.
Quad parse_quad(std::string_view text, const Int& expected_D);

} // namespace exactgt
