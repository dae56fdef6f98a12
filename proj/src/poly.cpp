#include "k3/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace k3 {

MultiPoly MultiPoly::constant(const VarList& v, const BigRat& c)
{
    MultiPoly p(v);
    if (sign_of(c) != 0) p.terms.emplace(ExpVec(v.size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(const VarList& v, const std::string& name, int exp)
{
    MultiPoly p(v);
    ExpVec e(v.size(), 0);
    auto it = std::find(v.begin(), v.end(), name);
    if (it == v.end()) throw std::invalid_argument("unknown variable: " + name);
    e[static_cast<size_t>(it - v.begin())] = exp;
    p.terms.emplace(std::move(e), BigRat(1));
    return p;
}

MultiPoly MultiPoly::monomial(const VarList& v, ExpVec e, const BigRat& c)
{
    if (e.size() != v.size()) throw std::invalid_argument("exponent vector length mismatch");
    MultiPoly p(v);
    if (sign_of(c) != 0) p.terms.emplace(std::move(e), c);
    return p;
}

int MultiPoly::var_index(const std::string& name) const
{
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return static_cast<int>(i);
    return -1;
}

int MultiPoly::total_degree() const
{
    if (terms.empty()) return -1;
    // leading term is grlex-largest, so its total degree is the maximum
    int d = 0;
    for (int e : terms.begin()->first) d += e;
    return d;
}

int MultiPoly::degree_in(int vi) const
{
    if (terms.empty()) return -1;
    int d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, e[static_cast<size_t>(vi)]);
    return d;
}

int MultiPoly::min_exp_in(int vi) const
{
    if (terms.empty()) throw std::invalid_argument("min_exp_in of zero polynomial");
    int d = -1;
    for (const auto& [e, c] : terms) {
        int k = e[static_cast<size_t>(vi)];
        d = (d < 0) ? k : std::min(d, k);
    }
    return d;
}

BigRat MultiPoly::constant_value() const
{
    if (terms.empty()) return BigRat(0);
    if (!is_constant()) throw std::invalid_argument("constant_value of nonconstant polynomial");
    return terms.begin()->second;
}

void MultiPoly::add_term(ExpVec e, const BigRat& c)
{
    if (e.size() != vars.size()) throw std::invalid_argument("exponent vector length mismatch");
    if (sign_of(c) == 0) return;
    auto [it, inserted] = terms.emplace(std::move(e), c);
    if (!inserted) {
        it->second += c;
        if (sign_of(it->second) == 0) terms.erase(it);
    }
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly r(vars);
    for (const auto& [e, c] : terms) r.terms.emplace(e, -c);
    return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const
{
    if (vars != o.vars) throw std::invalid_argument("ring mismatch in +");
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const
{
    if (vars != o.vars) throw std::invalid_argument("ring mismatch in -");
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(e, -c);
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o)
{
    if (vars != o.vars) throw std::invalid_argument("ring mismatch in +=");
    for (const auto& [e, c] : o.terms) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o)
{
    if (vars != o.vars) throw std::invalid_argument("ring mismatch in -=");
    for (const auto& [e, c] : o.terms) add_term(e, -c);
    return *this;
}

MultiPoly MultiPoly::scaled(const BigRat& c) const
{
    MultiPoly r(vars);
    if (sign_of(c) == 0) return r;
    for (const auto& [e, k] : terms) r.terms.emplace(e, k * c);
    return r;
}

MultiPoly MultiPoly::mul_serial(const MultiPoly& o) const
{
    if (vars != o.vars) throw std::invalid_argument("ring mismatch in *");
    MultiPoly r(vars);
    ExpVec e(vars.size());
    for (const auto& [ea, ca] : terms) {
        for (const auto& [eb, cb] : o.terms) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::mul_parallel(const MultiPoly& o) const
{
    if (vars != o.vars) throw std::invalid_argument("ring mismatch in *");
#ifndef _OPENMP
    return mul_serial(o);
#else
    const size_t na = terms.size();
    if (na < 64 || o.terms.size() < 8) return mul_serial(o);
    std::vector<const std::pair<const ExpVec, BigRat>*> at;
    at.reserve(na);
    for (const auto& t : terms) at.push_back(&t);
    int nthreads = omp_get_max_threads();
    std::vector<MultiPoly> partial(static_cast<size_t>(nthreads), MultiPoly(vars));
#pragma omp parallel num_threads(nthreads)
    {
        int tid = omp_get_thread_num();
        MultiPoly& mine = partial[static_cast<size_t>(tid)];
        ExpVec e(vars.size());
#pragma omp for schedule(static)
        for (long k = 0; k < static_cast<long>(na); ++k) {
            const auto& [ea, ca] = *at[static_cast<size_t>(k)];
            for (const auto& [eb, cb] : o.terms) {
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                mine.add_term(e, ca * cb);
            }
        }
    }
    MultiPoly r(vars);
    for (auto& p : partial) r += p;
    return r;
#endif
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const
{
    if (terms.size() >= 64 && o.terms.size() >= 8) return mul_parallel(o);
    return mul_serial(o);
}

MultiPoly MultiPoly::pow(int e) const
{
    if (e < 0) throw std::invalid_argument("negative exponent in pow");
    MultiPoly acc = MultiPoly::constant(vars, BigRat(1));
    MultiPoly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

MultiPoly MultiPoly::derivative(int vi) const
{
    MultiPoly r(vars);
    for (const auto& [e, c] : terms) {
        int k = e[static_cast<size_t>(vi)];
        if (k == 0) continue;
        ExpVec ne = e;
        ne[static_cast<size_t>(vi)] = k - 1;
        r.add_term(std::move(ne), c * BigRat(k));
    }
    return r;
}

MultiPoly MultiPoly::theta(int vi) const
{
    MultiPoly r(vars);
    for (const auto& [e, c] : terms) {
        int k = e[static_cast<size_t>(vi)];
        if (k == 0) continue;
        r.terms.emplace(e, c * BigRat(k));
    }
    return r;
}

BigRat MultiPoly::eval(const std::vector<BigRat>& point) const
{
    if (point.size() != vars.size()) throw std::invalid_argument("point arity mismatch");
    BigRat acc(0);
    for (const auto& [e, c] : terms) {
        BigRat t = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) t *= rat_pow(point[i], e[i]);
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::eval_partial(const std::map<std::string, BigRat>& point) const
{
    MultiPoly r(vars);
    for (const auto& [e, c] : terms) {
        BigRat k = c;
        ExpVec ne = e;
        for (const auto& [name, val] : point) {
            int vi = var_index(name);
            if (vi < 0) throw std::invalid_argument("unknown variable: " + name);
            if (ne[static_cast<size_t>(vi)]) {
                k *= rat_pow(val, ne[static_cast<size_t>(vi)]);
                ne[static_cast<size_t>(vi)] = 0;
            }
        }
        r.add_term(std::move(ne), k);
    }
    return r;
}

MultiPoly MultiPoly::rename_signed(const std::map<std::string, std::pair<std::string, int>>& images) const
{
    MultiPoly r(vars);
    for (const auto& [e, c] : terms) {
        ExpVec ne(vars.size(), 0);
        BigRat k = c;
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            auto it = images.find(vars[i]);
            if (it == images.end()) {
                ne[i] += e[i];
                continue;
            }
            int ti = var_index(it->second.first);
            if (ti < 0) throw std::invalid_argument("unknown image variable: " + it->second.first);
            ne[static_cast<size_t>(ti)] += e[i];
            if (it->second.second < 0 && (e[i] & 1)) k = -k;
        }
        r.add_term(std::move(ne), k);
    }
    return r;
}

MultiPoly MultiPoly::extend(const VarList& bigger) const
{
    std::vector<int> where(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) {
        auto it = std::find(bigger.begin(), bigger.end(), vars[i]);
        if (it == bigger.end()) throw std::invalid_argument("extend: missing variable " + vars[i]);
        where[i] = static_cast<int>(it - bigger.begin());
    }
    MultiPoly r(bigger);
    for (const auto& [e, c] : terms) {
        ExpVec ne(bigger.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[static_cast<size_t>(where[i])] = e[i];
        r.terms.emplace(std::move(ne), c);
    }
    return r;
}

MultiPoly MultiPoly::restrict_vars(const VarList& smaller) const
{
    std::vector<int> from(smaller.size());
    for (size_t i = 0; i < smaller.size(); ++i) {
        int vi = var_index(smaller[i]);
        if (vi < 0) throw std::invalid_argument("restrict_vars: missing variable " + smaller[i]);
        from[i] = vi;
    }
    MultiPoly r(smaller);
    for (const auto& [e, c] : terms) {
        ExpVec ne(smaller.size(), 0);
        for (size_t i = 0; i < smaller.size(); ++i) ne[i] = e[static_cast<size_t>(from[i])];
        int total = 0, kept = 0;
        for (int x : e) total += x ? 1 : 0;
        for (int x : ne) kept += x ? 1 : 0;
        if (kept != total) throw std::invalid_argument("restrict_vars: dropped variable occurs");
        r.terms.emplace(std::move(ne), c);
    }
    return r;
}

MultiPoly MultiPoly::reverse_in(int vi, int w) const
{
    if (degree_in(vi) > w) throw std::invalid_argument("reverse_in: weight below degree");
    MultiPoly r(vars);
    for (const auto& [e, c] : terms) {
        ExpVec ne = e;
        ne[static_cast<size_t>(vi)] = w - e[static_cast<size_t>(vi)];
        r.terms.emplace(std::move(ne), c);
    }
    return r;
}

MultiPoly MultiPoly::coeff_of(int vi, int k) const
{
    MultiPoly r(vars);
    for (const auto& [e, c] : terms) {
        if (e[static_cast<size_t>(vi)] != k) continue;
        ExpVec ne = e;
        ne[static_cast<size_t>(vi)] = 0;
        r.terms.emplace(std::move(ne), c);
    }
    return r;
}

BigRat MultiPoly::content() const
{
    if (terms.empty()) return BigRat(1);
    BigInt num_gcd(0), den_lcm(1);
    for (const auto& [e, c] : terms) {
        num_gcd = int_gcd(num_gcd, c.get_num());
        den_lcm = int_lcm(den_lcm, c.get_den());
    }
    BigRat r(num_gcd, den_lcm);
    r.canonicalize();
    return r;
}

BigRat MultiPoly::leading_coeff() const
{
    if (terms.empty()) throw std::invalid_argument("leading_coeff of zero polynomial");
    return terms.begin()->second;
}

MultiPoly MultiPoly::strip_content() const
{
    if (terms.empty()) return *this;
    BigRat c = content();
    ExpVec mins = terms.begin()->first;
    for (const auto& [e, k] : terms)
        for (size_t i = 0; i < mins.size(); ++i) mins[i] = std::min(mins[i], e[i]);
    MultiPoly r(vars);
    for (const auto& [e, k] : terms) {
        ExpVec ne = e;
        for (size_t i = 0; i < ne.size(); ++i) ne[i] -= mins[i];
        r.terms.emplace(std::move(ne), k / c);
    }
    return r;
}

// ---------- text format ----------

namespace {

void append_factor(std::string& out, const std::string& name, int e)
{
    out += " * ";
    out += name;
    if (e >= 2) {
        out += "^";
        out += std::to_string(e);
    }
}

bool parse_factor(const std::string& tok, std::string& name, int& exp)
{
    size_t i = 0;
    if (i >= tok.size()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(tok[i])) || tok[i] == '_')) return false;
    size_t j = i + 1;
    while (j < tok.size() && (std::isalnum(static_cast<unsigned char>(tok[j])) || tok[j] == '_')) ++j;
    name = tok.substr(i, j - i);
    exp = 1;
    if (j == tok.size()) return true;
    if (tok[j] != '^') return false;
    ++j;
    if (j == tok.size()) return false;
    int e = 0;
    for (; j < tok.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(tok[j]))) return false;
        e = e * 10 + (tok[j] - '0');
        if (e > 1000000) return false;
    }
    exp = e;
    return true;
}

} // namespace

std::string MultiPoly::str() const
{
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (!first) out += " + ";
        first = false;
        out += rat_str(c);
        for (size_t i = 0; i < vars.size(); ++i)
            if (e[i] > 0) append_factor(out, vars[i], e[i]);
    }
    return out;
}

MultiPoly MultiPoly::parse(const std::string& text, const VarList& v)
{
    MultiPoly p(v);
    if (text.empty()) throw std::invalid_argument("empty polynomial text");
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t next = text.find(" + ", pos);
        std::string term = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? text.size() + 1 : next + 3;

        std::vector<std::string> toks;
        std::string cur;
        for (char ch : term) {
            if (ch == '*' || std::isspace(static_cast<unsigned char>(ch))) {
                if (!cur.empty()) toks.push_back(cur), cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) toks.push_back(cur);
        if (toks.empty()) throw std::invalid_argument("empty term in polynomial text");

        BigRat coeff = rat_parse(toks[0]);
        ExpVec e(v.size(), 0);
        for (size_t i = 1; i < toks.size(); ++i) {
            std::string name;
            int exp = 0;
            if (!parse_factor(toks[i], name, exp)) throw std::invalid_argument("bad factor: " + toks[i]);
            auto it = std::find(v.begin(), v.end(), name);
            if (it == v.end()) throw std::invalid_argument("unknown variable: " + name);
            e[static_cast<size_t>(it - v.begin())] += exp;
        }
        p.add_term(std::move(e), coeff);
        if (next == std::string::npos) break;
    }
    return p;
}

// ---------- division and orders ----------

DivisionResult exact_divide(const MultiPoly& a, const MultiPoly& b)
{
    if (a.vars != b.vars) throw std::invalid_argument("ring mismatch in exact_divide");
    if (b.is_zero()) throw std::invalid_argument("exact_divide by zero polynomial");
    DivisionResult res;
    res.quotient = MultiPoly(a.vars);
    MultiPoly r = a;
    const auto& bl = *b.terms.begin();
    while (!r.is_zero()) {
        const auto& rl = *r.terms.begin();
        ExpVec q(rl.first.size());
        for (size_t i = 0; i < q.size(); ++i) {
            q[i] = rl.first[i] - bl.first[i];
            if (q[i] < 0) {
                res.ok = false;
                res.remainder = r;
                return res;
            }
        }
        BigRat qc = rl.second / bl.second;
        res.quotient.add_term(q, qc);
        r -= MultiPoly::monomial(a.vars, std::move(q), qc) * b;
    }
    res.ok = true;
    res.remainder = MultiPoly(a.vars);
    return res;
}

int vanishing_order(const MultiPoly& p, int vi)
{
    if (p.is_zero()) throw std::invalid_argument("order of zero polynomial");
    return p.min_exp_in(vi);
}

int divisibility_order(const MultiPoly& p, const MultiPoly& f, MultiPoly* cofactor)
{
    if (p.is_zero()) throw std::invalid_argument("divisibility_order of zero polynomial");
    if (f.is_constant()) throw std::invalid_argument("divisibility_order by constant");
    int k = 0;
    MultiPoly cur = p;
    for (;;) {
        DivisionResult d = exact_divide(cur, f);
        if (!d.ok) break;
        cur = d.quotient;
        ++k;
    }
    if (cofactor) *cofactor = cur;
    return k;
}

std::vector<BigRat> univariate(const MultiPoly& p, int vi)
{
    std::vector<BigRat> c(static_cast<size_t>(std::max(0, p.degree_in(vi)) + 1), BigRat(0));
    for (const auto& [e, k] : p.terms) {
        for (size_t i = 0; i < e.size(); ++i)
            if (static_cast<int>(i) != vi && e[i] != 0)
                throw std::invalid_argument("univariate: extra variable present");
        c[static_cast<size_t>(e[static_cast<size_t>(vi)])] += k;
    }
    while (c.size() > 1 && sign_of(c.back()) == 0) c.pop_back();
    return c;
}

namespace {

std::vector<BigRat> uni_rem(std::vector<BigRat> a, const std::vector<BigRat>& b)
{
    while (a.size() >= b.size() && !(a.size() == 1 && sign_of(a[0]) == 0)) {
        BigRat f = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        while (a.size() > 1 && sign_of(a.back()) == 0) a.pop_back();
        if (a.size() == 1 && sign_of(a[0]) == 0) break;
    }
    return a;
}

} // namespace

bool univariate_squarefree(const std::vector<BigRat>& p)
{
    if (p.size() <= 2) return true;
    std::vector<BigRat> d(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * BigRat(static_cast<long>(i));
    while (d.size() > 1 && sign_of(d.back()) == 0) d.pop_back();
    std::vector<BigRat> a = p, b = d;
    while (!(b.size() == 1 && sign_of(b[0]) == 0)) {
        std::vector<BigRat> r = uni_rem(a, b);
        a = b;
        b = r;
    }
    return a.size() == 1 && sign_of(a[0]) != 0;
}

} // namespace k3
