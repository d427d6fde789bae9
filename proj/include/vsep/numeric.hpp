#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vsep {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "p/q" and finite decimals such as "-0.125".
Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);

// Rational upper bound on ln(x), rounded up to `frac_bits` fractional bits.
Rational ln_upper(const Rational& x, unsigned frac_bits = 64);

Rational floor_q(const Rational& q);
Rational ceil_q(const Rational& q);

// x = c*c*m with m squarefree, for x > 0. Exact (trial division up to cbrt).
void squarefree_split(const Integer& x, Integer& c, Integer& m);

// Extended nonnegative length: rational + sum of c_i*sqrt(m_i) (m_i squarefree,
// distinct), or the symbolic infinity. Equality is exact; ordering uses a
// floating filter and then exact interval refinement.
class Length {
public:
    struct Term {
        Integer m;
        Rational c;
    };

    Length() = default;
    explicit Length(const Rational& q);
    static Length from_int(long v) { return Length(Rational(v)); }
    static Length sqrt_of(const Rational& r);
    static Length infinity();

    bool is_inf() const { return inf_; }
    bool is_rational() const { return !inf_ && terms_.empty(); }
    bool is_zero() const { return !inf_ && terms_.empty() && sgn(q_) == 0; }
    const Rational& rational_part() const { return q_; }
    const std::vector<Term>& terms() const { return terms_; }
    double approx() const { return inf_ ? 1e300 : approx_; }

    Length& operator+=(const Length& o);
    friend Length operator+(Length a, const Length& b) { return a += b; }
    Length operator-() const;  // finite only
    friend Length operator-(const Length& a, const Length& b) { return a + (-b); }

    // -1, 0, +1 for finite values.
    int sign() const;

    friend bool operator==(const Length& a, const Length& b);
    friend std::strong_ordering operator<=>(const Length& a, const Length& b);

    std::string str() const;
    static Length parse(std::string_view s);

    static void set_precision_cap(unsigned bits);
    static unsigned precision_cap();

private:
    void refresh_approx();
    int exact_sign(unsigned start_bits) const;

    bool inf_ = false;
    Rational q_{0};
    std::vector<Term> terms_;
    double approx_ = 0.0;
    double err_ = 0.0;
};

}  // namespace vsep
