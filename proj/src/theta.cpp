#include "k3/theta.hpp"

namespace k3 {

namespace {

const VarList kOpVars = {"l", "m", "Tl", "Tm"};

BigInt binom(int n, int k)
{
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// p with variable vi replaced by (vi + delta), expanded exactly
MultiPoly shift_var(const MultiPoly& p, size_t vi, int delta)
{
    MultiPoly r = MultiPoly::zero(p.vars);
    for (const auto& [e, c] : p.terms) {
        int deg = e[vi];
        for (int k = 0; k <= deg; ++k) {
            ExpVec ne = e;
            ne[vi] = k;
            BigRat f = c * BigRat(binom(deg, k)) * rat_pow(BigRat(delta), deg - k);
            r.add_term(ne, f);
        }
    }
    return r;
}

} // namespace

ThetaOp ThetaOp::parse(const std::string& text)
{
    MultiPoly p = MultiPoly::parse(text, kOpVars);
    ThetaOp op;
    for (const auto& [e, c] : p.terms) op.add_term({e[0], e[1], e[2], e[3]}, c);
    return op;
}

std::string ThetaOp::str() const
{
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms) {
        if (!first) out += " + ";
        first = false;
        out += rat_str(c);
        for (size_t i = 0; i < 4; ++i) {
            if (k[i] == 0) continue;
            out += " * " + kOpVars[i];
            if (k[i] > 1) out += "^" + std::to_string(k[i]);
        }
    }
    return out;
}

int ThetaOp::theta_degree() const
{
    int d = 0;
    for (const auto& [k, c] : terms) d = std::max(d, k[2] + k[3]);
    return d;
}

int ThetaOp::coeff_degree() const
{
    int d = 0;
    for (const auto& [k, c] : terms) d = std::max(d, k[0] + k[1]);
    return d;
}

void ThetaOp::add_term(const OpKey& k, const BigRat& c)
{
    auto it = terms.find(k);
    if (it == terms.end()) {
        if (sign_of(c) != 0) terms.emplace(k, c);
        return;
    }
    it->second += c;
    if (sign_of(it->second) == 0) terms.erase(it);
}

ThetaOp ThetaOp::operator+(const ThetaOp& o) const
{
    ThetaOp r = *this;
    for (const auto& [k, c] : o.terms) r.add_term(k, c);
    return r;
}

ThetaOp ThetaOp::operator-(const ThetaOp& o) const
{
    ThetaOp r = *this;
    for (const auto& [k, c] : o.terms) r.add_term(k, -c);
    return r;
}

ThetaOp ThetaOp::scaled(const BigRat& c) const
{
    ThetaOp r;
    if (sign_of(c) == 0) return r;
    for (const auto& [k, v] : terms) r.terms.emplace(k, v * c);
    return r;
}

ThetaOp op_mul(const ThetaOp& x, const ThetaOp& y)
{
    // Tl^p Tm^q * l^a m^b = l^a m^b (Tl+a)^p (Tm+b)^q
    ThetaOp r;
    for (const auto& [kx, vx] : x.terms)
        for (const auto& [ky, vy] : y.terms) {
            BigRat v = vx * vy;
            int a = kx[0] + ky[0], b = kx[1] + ky[1];
            for (int i = 0; i <= kx[2]; ++i)
                for (int j = 0; j <= kx[3]; ++j) {
                    BigRat c = v * BigRat(binom(kx[2], i)) * rat_pow(BigRat(ky[0]), kx[2] - i) *
                               BigRat(binom(kx[3], j)) * rat_pow(BigRat(ky[1]), kx[3] - j);
                    r.add_term({a, b, i + ky[2], j + ky[3]}, c);
                }
        }
    return r;
}

BiSeries apply_operator(const ThetaOp& op, const BiSeries& s)
{
    BiSeries r(s.N);
    r.V = s.V - op.coeff_degree();
    for (int n = 0; n <= s.N; ++n)
        for (int m = 0; m + n <= s.N; ++m) {
            BigRat acc(0);
            for (const auto& [k, v] : op.terms) {
                int nn = n - k[0], mm = m - k[1];
                if (nn < 0 || mm < 0) continue;
                acc += v * rat_pow(BigRat(nn), k[2]) * rat_pow(BigRat(mm), k[3]) * s.at(nn, mm);
            }
            r.at(n, m) = acc;
        }
    return r;
}

SeriesFailure annihilation_report(const ThetaOp& op, const CoeffFn& cf, int N)
{
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m + n <= N; ++m) {
            BigRat acc(0);
            for (const auto& [k, v] : op.terms) {
                int nn = n - k[0], mm = m - k[1];
                if (nn < 0 || mm < 0) continue;
                acc += v * rat_pow(BigRat(nn), k[2]) * rat_pow(BigRat(mm), k[3]) * cf(nn, mm);
            }
            if (sign_of(acc) != 0) return {false, n, m, acc};
        }
    return {};
}

std::pair<ThetaOp, ThetaOp> operator_from_recurrence(const RatFunc& ratio_l, const RatFunc& ratio_m)
{
    auto check_den = [](const MultiPoly& q) {
        for (int n = 0; n <= 6; ++n)
            for (int m = 0; m <= 6; ++m) {
                if (sign_of(q.eval({BigRat(n), BigRat(m)})) == 0)
                    throw std::domain_error("recurrence denominator vanishes on the index grid");
            }
    };
    auto to_op = [](const MultiPoly& p, int a, int b, int sgn) {
        ThetaOp op;
        for (const auto& [e, c] : p.terms) op.add_term({a, b, e[0], e[1]}, sgn < 0 ? BigRat(-c) : c);
        return op;
    };

    if (ratio_l.num.vars.size() != 2 || ratio_m.num.vars.size() != 2)
        throw std::invalid_argument("recurrence ratios must live in a two-variable ring");
    check_den(ratio_l.den);
    check_den(ratio_m.den);

    // Q(Tl-1, Tm) - l * P(Tl, Tm): coefficient of l^{n+1} m^m is the recurrence
    ThetaOp op_l = to_op(shift_var(ratio_l.den, 0, -1), 0, 0, +1) + to_op(ratio_l.num, 1, 0, -1);
    ThetaOp op_m = to_op(shift_var(ratio_m.den, 1, -1), 0, 0, +1) + to_op(ratio_m.num, 0, 1, -1);
    return {op_l, op_m};
}

std::vector<ThetaOp> find_annihilators(const CoeffFn& cf, int tdeg, int cdeg, int N, AnnWindow w)
{
    std::vector<OpKey> keys;
    for (int a = 0; a <= cdeg; ++a)
        for (int b = 0; a + b <= cdeg; ++b)
            for (int p = 0; p <= tdeg; ++p)
                for (int q = 0; p + q <= tdeg; ++q) keys.push_back({a, b, p, q});
    size_t nc = keys.size();

    std::vector<std::vector<BigRat>> rows;
    auto add_row = [&](int n, int m) {
        std::vector<BigRat> row(nc, BigRat(0));
        bool any = false;
        for (size_t j = 0; j < nc; ++j) {
            const OpKey& k = keys[j];
            int nn = n - k[0], mm = m - k[1];
            if (nn < 0 || mm < 0) continue;
            row[j] = rat_pow(BigRat(nn), k[2]) * rat_pow(BigRat(mm), k[3]) * cf(nn, mm);
            if (sign_of(row[j]) != 0) any = true;
        }
        if (any) rows.push_back(std::move(row));
    };
    if (w == AnnWindow::Square) {
        for (int n = 0; n <= N; ++n)
            for (int m = 0; m <= N; ++m) add_row(n, m);
    } else {
        int M = N - cdeg;
        for (int n = 0; n <= M; ++n)
            for (int m = 0; m + n <= M; ++m) add_row(n, m);
    }

    // Gauss-Jordan to reduced echelon form; column order fixes the canonical basis
    size_t nr = rows.size();
    std::vector<size_t> pivcol;
    size_t rp = 0;
    for (size_t c = 0; c < nc && rp < nr; ++c) {
        size_t sel = nr;
        for (size_t r = rp; r < nr; ++r)
            if (sign_of(rows[r][c]) != 0) {
                sel = r;
                break;
            }
        if (sel == nr) continue;
        std::swap(rows[rp], rows[sel]);
        BigRat inv = BigRat(1) / rows[rp][c];
        for (size_t j = c; j < nc; ++j) rows[rp][j] *= inv;
        for (size_t r = 0; r < nr; ++r) {
            if (r == rp || sign_of(rows[r][c]) == 0) continue;
            BigRat f = rows[r][c];
            for (size_t j = c; j < nc; ++j) rows[r][j] -= f * rows[rp][j];
        }
        pivcol.push_back(c);
        ++rp;
    }

    std::vector<bool> is_piv(nc, false);
    for (size_t c : pivcol) is_piv[c] = true;

    std::vector<ThetaOp> basis;
    for (size_t fc = 0; fc < nc; ++fc) {
        if (is_piv[fc]) continue;
        std::vector<BigRat> vec(nc, BigRat(0));
        vec[fc] = BigRat(1);
        for (size_t i = 0; i < pivcol.size(); ++i) vec[pivcol[i]] = -rows[i][fc];
        BigInt den(1);
        for (const auto& v : vec) den = int_lcm(den, BigInt(v.get_den()));
        ThetaOp op;
        for (size_t j = 0; j < nc; ++j) {
            BigRat v = vec[j] * BigRat(den);
            if (sign_of(v) != 0) op.terms.emplace(keys[j], v);
        }
        basis.push_back(std::move(op));
    }
    return basis;
}

bool op_in_span(const ThetaOp& op, const std::vector<ThetaOp>& basis)
{
    std::map<OpKey, size_t, OpOrder> keyix;
    auto note = [&](const ThetaOp& o) {
        for (const auto& [k, c] : o.terms)
            if (!keyix.count(k)) keyix.emplace(k, keyix.size());
    };
    note(op);
    for (const auto& b : basis) note(b);

    size_t nr = keyix.size(), nc = basis.size();
    std::vector<std::vector<BigRat>> m(nr, std::vector<BigRat>(nc + 1, BigRat(0)));
    for (size_t j = 0; j < nc; ++j)
        for (const auto& [k, c] : basis[j].terms) m[keyix[k]][j] = c;
    for (const auto& [k, c] : op.terms) m[keyix[k]][nc] = c;

    size_t rp = 0;
    for (size_t c = 0; c < nc && rp < nr; ++c) {
        size_t sel = nr;
        for (size_t r = rp; r < nr; ++r)
            if (sign_of(m[r][c]) != 0) {
                sel = r;
                break;
            }
        if (sel == nr) continue;
        std::swap(m[rp], m[sel]);
        for (size_t r = 0; r < nr; ++r) {
            if (r == rp || sign_of(m[r][c]) == 0) continue;
            BigRat f = m[r][c] / m[rp][c];
            for (size_t j = c; j <= nc; ++j) m[r][j] -= f * m[rp][j];
        }
        ++rp;
    }
    for (const auto& row : m) {
        bool lhs = false;
        for (size_t j = 0; j < nc; ++j)
            if (sign_of(row[j]) != 0) {
                lhs = true;
                break;
            }
        if (!lhs && sign_of(row[nc]) != 0) return false;
    }
    return true;
}

} // namespace k3
