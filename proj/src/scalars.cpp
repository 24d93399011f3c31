#include "exactgt/scalars.hpp"

#include <algorithm>
#include <cctype>

namespace exactgt {

Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rat make_rat(const Int& p, const Int& q) {
    if (q == 0)
        throw DomainError("rational with zero denominator");
    Rat r(p, q);
    r.canonicalize();
    return r;
}

const Int numerator(const Rat& r) { return Int(r.get_num()); }
const Int denominator(const Rat& r) { return Int(r.get_den()); }
bool is_integral(const Rat& r) { return r.get_den() == 1; }

std::string to_string(const Int& x) { return x.get_str(); }
std::string to_string(const Rat& r) { return r.get_str(); }

namespace {

bool looks_like_int(std::string_view s) {
    if (s.empty())
        return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    return std::all_of(s.begin() + i, s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

Int parse_int(std::string_view text) {
    std::string_view s = trim(text);
    if (!looks_like_int(s))
        throw ParseError("expected integer, got \"" + std::string(text) + "\"");
    return Int(std::string(s), 10);
}

Rat parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    size_t slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rat(parse_int(s));
    Int p = parse_int(s.substr(0, slash));
    Int q = parse_int(s.substr(slash + 1));
    return make_rat(p, q);
}

Rat bernoulli(unsigned n, unsigned bound) {
    if (n % 2 == 1)
        throw DomainError("bernoulli: odd index " + std::to_string(n));
    if (n > bound)
        throw ResourceError("bernoulli: index " + std::to_string(n) + " over bound " +
                            std::to_string(bound));
    Rat b(0);
    for (unsigned k = 0; k <= n; ++k) {
        Int inner(0);
        for (unsigned j = 0; j <= k; ++j) {
            // j^n with the 0^0 = 1 convention of the sum
            Int p = (j == 0 && n == 0) ? Int(1) : pow_int(Int(j), n);
            Int term = binomial(k, j) * p;
            if (j % 2 == 1)
                inner -= term;
            else
                inner += term;
        }
        b += make_rat(inner, Int(k + 1));
    }
    return b;
}

Quad::Quad(Int D, Rat a, Rat b) : d_(std::move(D)), a_(std::move(a)), b_(std::move(b)) {
    if (d_ == 0 || d_ == 1)
        throw DomainError("quadratic field parameter must not be 0 or 1");
}

Rat Quad::norm() const {
    Rat r = a_ * a_;
    Rat s = b_ * b_;
    return Rat(r - Rat(d_) * s);
}

Quad Quad::inverse() const {
    if (is_zero())
        throw DomainError("division by zero in Q(sqrt(" + exactgt::to_string(d_) + "))");
    Rat n = norm();
    return Quad(d_, a_ / n, -b_ / n);
}

namespace {
void check_same_field(const Quad& x, const Quad& y) {
    if (x.field() != y.field())
        throw DomainError("mixed quadratic fields: sqrt(" + to_string(x.field()) +
                          ") vs sqrt(" + to_string(y.field()) + ")");
}
} // namespace

Quad operator+(const Quad& x, const Quad& y) {
    check_same_field(x, y);
    return Quad(x.d_, Rat(x.a_ + y.a_), Rat(x.b_ + y.b_));
}

Quad operator-(const Quad& x, const Quad& y) {
    check_same_field(x, y);
    return Quad(x.d_, Rat(x.a_ - y.a_), Rat(x.b_ - y.b_));
}

Quad operator*(const Quad& x, const Quad& y) {
    check_same_field(x, y);
    // (a+b s)(c+e s) = (ac + D be) + (ae + bc) s
    Rat a = x.a_ * y.a_ + Rat(x.d_) * x.b_ * y.b_;
    Rat b = x.a_ * y.b_ + x.b_ * y.a_;
    return Quad(x.d_, std::move(a), std::move(b));
}

Quad operator/(const Quad& x, const Quad& y) {
    check_same_field(x, y);
    return x * y.inverse();
}

bool operator==(const Quad& x, const Quad& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
}

void validate_field_param(const Int& D) {
    if (D == 0 || D == 1)
        throw DomainError("quadratic field parameter must not be 0 or 1");
    Int a = abs(D);
    for (unsigned long p = 2; p <= 10000; ++p) {
        Int sq = Int(p) * Int(p);
        if (sq > a)
            break;
        if (mpz_divisible_p(a.get_mpz_t(), sq.get_mpz_t()))
            throw DomainError("quadratic field parameter " + to_string(D) +
                              " is not squarefree (divisible by " + std::to_string(p) + "^2)");
    }
}

std::string to_string(const Quad& q) {
    const std::string root = "sqrt(" + to_string(q.field()) + ")";
    if (q.b() == 0)
        return to_string(q.a());
    std::string bterm;
    Rat ab = abs(q.b());
    if (ab == 1)
        bterm = root;
    else
        bterm = to_string(ab) + "*" + root;
    if (q.a() == 0)
        return (q.b() < 0 ? "-" : "") + bterm;
    return to_string(q.a()) + (q.b() < 0 ? "-" : "+") + bterm;
}

Quad parse_quad(std::string_view text, const Int& expected_D) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw ParseError("empty scalar");

    size_t pos = s.find("sqrt(");
    if (pos == std::string_view::npos)
        return Quad(expected_D, parse_rational(s), Rat(0));

    if (s.back() != ')')
        throw ParseError("malformed sqrt term in \"" + std::string(text) + "\"");
    Int d = parse_int(std::string_view(s).substr(pos + 5, s.size() - pos - 6));
    if (d != expected_D)
        throw ParseError("field mismatch: sqrt(" + to_string(d) + ") where sqrt(" +
                         to_string(expected_D) + ") is required");

    std::string head = s.substr(0, pos);
    Rat a(0), b(1);
    if (!head.empty()) {
        bool star = head.back() == '*';
        if (star)
            head.pop_back();
        // Split an optional leading rational from the sqrt coefficient at the
        // first sign that is not the leading sign of the whole expression.
        size_t split = std::string::npos;
        for (size_t i = 1; i < head.size(); ++i) {
            if (head[i] == '+' || head[i] == '-') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos) {
            if (head == "-")
                b = Rat(-1);
            else if (head == "+" || head.empty())
                b = Rat(1);
            else if (star)
                b = parse_rational(head);
            else
                throw ParseError("malformed quadratic scalar \"" + std::string(text) + "\"");
        } else {
            a = parse_rational(head.substr(0, split));
            std::string coeff = head.substr(split + 1);
            Rat mag = coeff.empty() ? Rat(1) : parse_rational(coeff);
            b = (head[split] == '-') ? Rat(-mag) : mag;
        }
    }
    return Quad(expected_D, a, b);
}

} // namespace exactgt
