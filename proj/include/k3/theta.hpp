#pragma once

#include "k3/ratfunc.hpp"
#include "k3/series.hpp"

#include <array>
#include <utility>

namespace k3 {

// one canonical-form term l^a m^b Tl^p Tm^q, theta factors to the right
using OpKey = std::array<int, 4>;

// print/iteration order: theta part dominates, then the monomial part
struct OpOrder {
    bool operator()(const OpKey& x, const OpKey& y) const
    {
        int tx = x[2] + x[3], ty = y[2] + y[3];
        if (tx != ty) return tx > ty;
        if (x[2] != y[2]) return x[2] > y[2];
        if (x[3] != y[3]) return x[3] > y[3];
        int cx = x[0] + x[1], cy = y[0] + y[1];
        if (cx != cy) return cx > cy;
        if (x[0] != y[0]) return x[0] > y[0];
        return x[1] > y[1];
    }
};

struct ThetaOp {
    std::map<OpKey, BigRat, OpOrder> terms;

    static ThetaOp parse(const std::string& text);
    std::string str() const;

    bool is_zero() const { return terms.empty(); }
    int theta_degree() const;
    int coeff_degree() const; // doubles as the validity-order shift

    void add_term(const OpKey& k, const BigRat& c);
    ThetaOp operator+(const ThetaOp& o) const;
    ThetaOp operator-(const ThetaOp& o) const;
    ThetaOp scaled(const BigRat& c) const;
    bool operator==(const ThetaOp& o) const { return terms == o.terms; }
    bool operator!=(const ThetaOp& o) const { return !(*this == o); }
};

// canonical product; theta factors commute past monomials via Tl * l^a = l^a * (Tl + a)
ThetaOp op_mul(const ThetaOp& x, const ThetaOp& y);

BiSeries apply_operator(const ThetaOp& op, const BiSeries& s);

// direct closed-form scan of op(series) in lex order over n+m <= N
SeriesFailure annihilation_report(const ThetaOp& op, const CoeffFn& cf, int N);
inline SeriesFailure annihilation_report(const ThetaOp& op, int family, int N)
{
    return annihilation_report(op, family_coeff(family), N);
}

// ratios are the coefficient quotients c(n+1,m)/c(n,m) and c(n,m+1)/c(n,m)
// over the ring (n, m); returns the lambda- and mu-direction annihilators
std::pair<ThetaOp, ThetaOp> operator_from_recurrence(const RatFunc& ratio_l, const RatFunc& ratio_m);

// constraint rows: Triangle takes n+m <= N - cdeg, Square all of [0,N]^2
enum class AnnWindow { Triangle, Square };

// nullspace basis of operators with theta-degree <= tdeg and monomial
// coefficients of total degree <= cdeg annihilating cf on the window
std::vector<ThetaOp> find_annihilators(const CoeffFn& cf, int tdeg, int cdeg, int N,
                                       AnnWindow w = AnnWindow::Triangle);
inline std::vector<ThetaOp> find_annihilators(int family, int tdeg, int cdeg, int N)
{
    return find_annihilators(family_coeff(family), tdeg, cdeg, N);
}

// exact rational span membership
bool op_in_span(const ThetaOp& op, const std::vector<ThetaOp>& basis);

} // namespace k3
