#include "k3/ratfunc.hpp"

namespace k3 {

RatFunc::RatFunc(MultiPoly n, MultiPoly d) : num(std::move(n)), den(std::move(d))
{
    if (num.vars != den.vars) throw std::invalid_argument("ring mismatch in RatFunc");
    if (den.is_zero()) throw std::invalid_argument("zero denominator");
    normalize();
}

RatFunc RatFunc::from_poly(MultiPoly p)
{
    MultiPoly one = MultiPoly::constant(p.vars, BigRat(1));
    return RatFunc(std::move(p), std::move(one));
}

RatFunc RatFunc::constant(const VarList& v, const BigRat& c)
{
    return RatFunc(MultiPoly::constant(v, c), MultiPoly::constant(v, BigRat(1)));
}

void RatFunc::normalize()
{
    BigRat c = den.content();
    if (sign_of(den.leading_coeff()) < 0) c = -c;
    if (c == BigRat(1)) return;
    BigRat inv = BigRat(1) / c;
    num = num.scaled(inv);
    den = den.scaled(inv);
}

bool RatFunc::same(const RatFunc& o) const
{
    return (num * o.den) == (o.num * den);
}

RatFunc RatFunc::operator-() const
{
    RatFunc r = *this;
    r.num = -r.num;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const
{
    return RatFunc(num * o.den + o.num * den, den * o.den);
}

RatFunc RatFunc::operator-(const RatFunc& o) const
{
    return RatFunc(num * o.den - o.num * den, den * o.den);
}

RatFunc RatFunc::operator*(const RatFunc& o) const
{
    return RatFunc(num * o.num, den * o.den);
}

RatFunc RatFunc::operator/(const RatFunc& o) const
{
    if (o.num.is_zero()) throw std::invalid_argument("division by zero rational function");
    return RatFunc(num * o.den, den * o.num);
}

RatFunc RatFunc::pow(int e) const
{
    if (e < 0) throw std::invalid_argument("negative exponent in RatFunc::pow");
    return RatFunc(num.pow(e), den.pow(e));
}

std::string RatFunc::str() const
{
    return num.str() + " / " + den.str();
}

RatFunc substitute(const MultiPoly& p, const VarList& out_vars,
                   const std::map<std::string, RatFunc>& images)
{
    std::vector<RatFunc> img(p.vars.size());
    for (size_t i = 0; i < p.vars.size(); ++i) {
        auto it = images.find(p.vars[i]);
        if (it != images.end()) {
            if (it->second.num.vars != out_vars) throw std::invalid_argument("substitute: image ring mismatch");
            if (it->second.den.is_zero()) throw std::invalid_argument("zero denominator in substitution");
            img[i] = it->second;
        } else {
            img[i] = RatFunc::from_poly(MultiPoly::variable(out_vars, p.vars[i]));
        }
    }
    RatFunc acc(MultiPoly::zero(out_vars), MultiPoly::constant(out_vars, BigRat(1)));
    for (const auto& [e, c] : p.terms) {
        RatFunc term = RatFunc::constant(out_vars, c);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) term = term * img[i].pow(e[i]);
        acc = acc + term;
    }
    return acc;
}

} // namespace k3
