#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace k3 {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigRat rat(long n, long d = 1)
{
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    BigRat r(n, d);
    r.canonicalize();
    return r;
}

inline int sign_of(const BigRat& r) { return mpq_sgn(r.get_mpq_t()); }
inline int sign_of(const BigInt& z) { return mpz_sgn(z.get_mpz_t()); }

// text form is "n" or "n/d" with d > 0, reduced; the json fixtures use exactly this
BigRat rat_parse(const std::string& s);
std::string rat_str(const BigRat& r);

BigInt int_gcd(const BigInt& a, const BigInt& b);
BigInt int_lcm(const BigInt& a, const BigInt& b);

BigInt factorial(unsigned long n); // cached

BigRat rat_pow(const BigRat& b, long e); // e >= 0

} // namespace k3
