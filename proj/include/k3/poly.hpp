#pragma once

#include "k3/rat.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace k3 {

using ExpVec = std::vector<int>;
using VarList = std::vector<std::string>;

// graded lex, largest first: map iteration order equals both the printing
// order of the text format and the leading-term order used by exact_divide
struct GrlexDesc {
    bool operator()(const ExpVec& a, const ExpVec& b) const
    {
        int ta = 0, tb = 0;
        for (int e : a) ta += e;
        for (int e : b) tb += e;
        if (ta != tb) return ta > tb;
        return a > b;
    }
};

class MultiPoly {
public:
    VarList vars;
    std::map<ExpVec, BigRat, GrlexDesc> terms;

    MultiPoly() = default;
    explicit MultiPoly(VarList v) : vars(std::move(v)) {}

    static MultiPoly zero(const VarList& v) { return MultiPoly(v); }
    static MultiPoly constant(const VarList& v, const BigRat& c);
    static MultiPoly variable(const VarList& v, const std::string& name, int exp = 1);
    static MultiPoly monomial(const VarList& v, ExpVec e, const BigRat& c);

    // text format: terms joined by " + ", each "coeff * var^e * ...", coeff
    // always printed, exponent 1 bare, zero polynomial is "0"
    static MultiPoly parse(const std::string& text, const VarList& v);
    std::string str() const;

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const { return terms.empty() || (terms.size() == 1 && total_degree() == 0); }
    BigRat constant_value() const;

    int var_index(const std::string& name) const; // -1 if absent
    int total_degree() const;                     // zero polynomial -> -1
    int degree_in(int vi) const;                  // zero polynomial -> -1
    int min_exp_in(int vi) const;                 // requires nonzero

    void add_term(ExpVec e, const BigRat& c);

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    bool operator==(const MultiPoly& o) const { return vars == o.vars && terms == o.terms; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly scaled(const BigRat& c) const;
    MultiPoly pow(int e) const;

    MultiPoly mul_serial(const MultiPoly& o) const;
    MultiPoly mul_parallel(const MultiPoly& o) const; // same result, OpenMP over term chunks

    MultiPoly derivative(int vi) const;
    MultiPoly theta(int vi) const; // v * d/dv

    BigRat eval(const std::vector<BigRat>& point) const;
    // fix a subset of variables to rational constants, keep the rest
    MultiPoly eval_partial(const std::map<std::string, BigRat>& point) const;
    // map each variable to +/- another variable of the same ring (l<->m swaps, sign flips)
    MultiPoly rename_signed(const std::map<std::string, std::pair<std::string, int>>& images) const;
    // reinterpret in a superset ring
    MultiPoly extend(const VarList& bigger) const;
    // drop variables that do not occur
    MultiPoly restrict_vars(const VarList& smaller) const;

    // exponent substitution e -> w - e in variable vi (chart swap t -> 1/t
    // cleared by t^w); requires degree_in(vi) <= w
    MultiPoly reverse_in(int vi, int w) const;

    // coefficient of vi^k as a polynomial with vi removed is awkward to type;
    // keep the ring and zero out: returns sum of terms with exponent k in vi,
    // divided by vi^k
    MultiPoly coeff_of(int vi, int k) const;

    // positive rational c with *this / c integer-coefficient and primitive;
    // zero polynomial -> 1
    BigRat content() const;
    BigRat leading_coeff() const; // requires nonzero
    // divide out scalar content and the per-variable minimal exponents
    MultiPoly strip_content() const;
};

struct DivisionResult {
    bool ok = false;
    MultiPoly quotient;
    MultiPoly remainder; // state at the first non-divisible leading term
};

// greedy leading-term division; complete whenever b exactly divides a
DivisionResult exact_divide(const MultiPoly& a, const MultiPoly& b);

// largest k with var^k dividing p, at the origin of that variable
int vanishing_order(const MultiPoly& p, int vi);

// how many times f divides p exactly (0 if not at all; p nonzero)
int divisibility_order(const MultiPoly& p, const MultiPoly& f, MultiPoly* cofactor = nullptr);

// dense univariate view; requires all other variables absent
std::vector<BigRat> univariate(const MultiPoly& p, int vi);
bool univariate_squarefree(const std::vector<BigRat>& p);

} // namespace k3
