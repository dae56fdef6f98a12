#include "k3/rat.hpp"

#include <cctype>
#include <mutex>
#include <vector>

namespace k3 {

BigRat rat_parse(const std::string& s)
{
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad rational literal: " + s);
    bool slash = false;
    for (size_t k = i; k < s.size(); ++k) {
        if (s[k] == '/') {
            if (slash || k + 1 == s.size() || k == i) throw std::invalid_argument("bad rational literal: " + s);
            slash = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw std::invalid_argument("bad rational literal: " + s);
    }
    BigRat r(s);
    r.canonicalize();
    return r;
}

std::string rat_str(const BigRat& r)
{
    return r.get_str();
}

BigInt int_gcd(const BigInt& a, const BigInt& b)
{
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

BigInt int_lcm(const BigInt& a, const BigInt& b)
{
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

BigInt factorial(unsigned long n)
{
    static std::vector<BigInt> cache{BigInt(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= n) {
        BigInt next = cache.back() * BigInt(static_cast<unsigned long>(cache.size()));
        cache.push_back(next);
    }
    return cache[n];
}

BigRat rat_pow(const BigRat& b, long e)
{
    if (e < 0) throw std::invalid_argument("negative exponent in rat_pow");
    BigRat acc(1);
    BigRat base = b;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

} // namespace k3
