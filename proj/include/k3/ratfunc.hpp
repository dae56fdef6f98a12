#pragma once

#include "k3/poly.hpp"

namespace k3 {

// unreduced rational function: no multivariate gcd anywhere; equality is
// cross-multiplication; only the scalar content of the denominator is
// normalized (integer primitive, leading coefficient positive)
class RatFunc {
public:
    MultiPoly num, den;

    RatFunc() : num(), den(MultiPoly::constant({}, BigRat(1))) {}
    RatFunc(MultiPoly n, MultiPoly d);
    static RatFunc from_poly(MultiPoly p);
    static RatFunc constant(const VarList& v, const BigRat& c);

    bool is_zero() const { return num.is_zero(); }
    bool same(const RatFunc& o) const; // cross-multiplication equality

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;

    RatFunc pow(int e) const; // e >= 0

    std::string str() const; // "num / den" in the canonical text format

private:
    void normalize();
};

// exact composition; every variable of p must be fixed by `images` or present
// in out_vars (then mapped to itself)
RatFunc substitute(const MultiPoly& p, const VarList& out_vars,
                   const std::map<std::string, RatFunc>& images);

} // namespace k3
