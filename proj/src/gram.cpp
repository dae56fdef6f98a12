#include "k3/gram.hpp"

#include <algorithm>
#include <stdexcept>

namespace k3 {

IntMat zero_mat(size_t r, size_t c) { return IntMat(r, std::vector<BigInt>(c, BigInt(0))); }

IntMat identity_mat(size_t n)
{
    IntMat m = zero_mat(n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat transpose(const IntMat& m)
{
    IntMat r = zero_mat(m.empty() ? 0 : m[0].size(), m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) r[j][i] = m[i][j];
    return r;
}

IntMat mat_mul(const IntMat& a, const IntMat& b)
{
    if (a.empty() || b.empty() || a[0].size() != b.size())
        throw std::invalid_argument("dimension mismatch");
    IntMat r = zero_mat(a.size(), b[0].size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) {
            if (sign_of(a[i][k]) == 0) continue;
            for (size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

IntMat block_diag(const std::vector<IntMat>& blocks)
{
    size_t n = 0;
    for (const auto& b : blocks) n += b.size();
    IntMat r = zero_mat(n, n);
    size_t o = 0;
    for (const auto& b : blocks) {
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[o + i][o + j] = b[i][j];
        o += b.size();
    }
    return r;
}

bool mat_eq(const IntMat& a, const IntMat& b)
{
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

BigInt determinant(const IntMat& m)
{
    size_t n = m.size();
    if (n == 0) return BigInt(1);
    IntMat a = m;
    BigInt prev(1);
    int sgn = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (sign_of(a[k][k]) == 0) {
            size_t sel = n;
            for (size_t i = k + 1; i < n; ++i)
                if (sign_of(a[i][k]) != 0) {
                    sel = i;
                    break;
                }
            if (sel == n) return BigInt(0);
            std::swap(a[k], a[sel]);
            sgn = -sgn;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                BigInt v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = v;
            }
        prev = a[k][k];
    }
    return sgn > 0 ? a[n - 1][n - 1] : BigInt(-a[n - 1][n - 1]);
}

std::pair<int, int> signature(const IntMat& m)
{
    size_t n = m.size();
    // Faddeev-LeVerrier: integer characteristic coefficients
    std::vector<BigInt> c(n + 1);
    c[0] = 1;
    IntMat mk = m;
    for (size_t k = 1; k <= n; ++k) {
        BigInt tr(0);
        for (size_t i = 0; i < n; ++i) tr += mk[i][i];
        BigInt ck = -tr;
        mpz_divexact_ui(ck.get_mpz_t(), ck.get_mpz_t(), static_cast<unsigned long>(k));
        c[k] = ck;
        if (k == n) break;
        IntMat t = mk;
        for (size_t i = 0; i < n; ++i) t[i][i] += ck;
        mk = mat_mul(m, t);
    }
    if (sign_of(c[n]) == 0) throw std::domain_error("singular matrix");
    auto changes = [](const std::vector<int>& s) {
        int prev = 0, ch = 0;
        for (int v : s) {
            if (v == 0) continue;
            if (prev != 0 && v != prev) ++ch;
            prev = v;
        }
        return ch;
    };
    std::vector<int> sp, sm;
    for (size_t i = 0; i <= n; ++i) {
        int s = sign_of(c[i]);
        sp.push_back(s);
        sm.push_back((i & 1) ? -s : s);
    }
    return {changes(sp), changes(sm)};
}

std::vector<BigInt> smith_divisors(const IntMat& m)
{
    IntMat a = m;
    size_t n = a.size();
    for (size_t t = 0; t < n; ++t) {
        for (;;) {
            size_t bi = n, bj = n;
            BigInt best(0);
            for (size_t i = t; i < n; ++i)
                for (size_t j = t; j < n; ++j) {
                    if (sign_of(a[i][j]) == 0) continue;
                    BigInt v = abs(a[i][j]);
                    if (bi == n || cmp(v, best) < 0) {
                        bi = i;
                        bj = j;
                        best = v;
                    }
                }
            if (bi == n) {
                a[t][t] = 0;
                break;
            }
            std::swap(a[t], a[bi]);
            for (size_t i = 0; i < n; ++i) std::swap(a[i][t], a[i][bj]);
            bool clean = true;
            for (size_t i = t + 1; i < n; ++i) {
                if (sign_of(a[i][t]) == 0) continue;
                BigInt q = a[i][t] / a[t][t];
                if (sign_of(q) != 0)
                    for (size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
                if (sign_of(a[i][t]) != 0) clean = false;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (sign_of(a[t][j]) == 0) continue;
                BigInt q = a[t][j] / a[t][t];
                if (sign_of(q) != 0)
                    for (size_t i = t; i < n; ++i) a[i][j] -= q * a[i][t];
                if (sign_of(a[t][j]) != 0) clean = false;
            }
            if (!clean) continue;
            // pivot must divide the rest of the block
            bool fixed = false;
            for (size_t i = t + 1; i < n && !fixed; ++i)
                for (size_t j = t + 1; j < n && !fixed; ++j)
                    if (BigInt rem = a[i][j] % a[t][t]; sign_of(rem) != 0) {
                        for (size_t jj = t; jj < n; ++jj) a[t][jj] += a[i][jj];
                        fixed = true;
                    }
            if (!fixed) break;
        }
    }
    std::vector<BigInt> d;
    for (size_t i = 0; i < n; ++i) d.push_back(abs(a[i][i]));
    return d;
}

std::vector<BigInt> discriminant_group(const IntMat& m)
{
    std::vector<BigInt> d = smith_divisors(m), out;
    for (const auto& v : d) {
        if (sign_of(v) == 0) throw std::domain_error("singular matrix");
        if (cmp(v, 1) != 0) out.push_back(v);
    }
    return out;
}

bool verify_congruence(const IntMat& m, const IntMat& u, const IntMat& n)
{
    if (m.size() != u.size() || n.size() != m.size()) throw std::invalid_argument("dimension mismatch");
    BigInt du = determinant(u);
    if (cmp(du, 1) != 0 && cmp(du, -1) != 0) return false;
    return mat_eq(mat_mul(transpose(u), mat_mul(m, u)), n);
}

IntMat a_chain(int n)
{
    IntMat m = zero_mat(static_cast<size_t>(n), static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        m[i][i] = -2;
        if (i + 1 < n) m[i][i + 1] = m[i + 1][i] = 1;
    }
    return m;
}

IntMat d_block(int mm)
{
    IntMat m = zero_mat(static_cast<size_t>(mm), static_cast<size_t>(mm));
    for (int i = 0; i < mm - 2; ++i) {
        m[i][i] = -2;
        if (i + 1 < mm - 2) m[i][i + 1] = m[i + 1][i] = 1;
    }
    for (int t = mm - 2; t < mm; ++t) {
        m[t][t] = -2;
        m[t][mm - 3] = m[mm - 3][t] = 1;
    }
    return m;
}

IntMat u_block()
{
    IntMat m = zero_mat(2, 2);
    m[0][1] = m[1][0] = 1;
    return m;
}

IntMat e8_gram()
{
    static const int rows[8][8] = {
        {-2, 1, 0, 0, 0, 0, 0, 0}, {1, -2, 1, 0, 0, 0, 0, 0}, {0, 1, -2, 1, 0, 0, 0, 0},
        {0, 0, 1, -2, 1, 0, 0, 0}, {0, 0, 0, 1, -2, 1, 1, 0}, {0, 0, 0, 0, 1, -2, 0, 0},
        {0, 0, 0, 0, 1, 0, -2, 1}, {0, 0, 0, 0, 0, 0, 1, -2}};
    IntMat m = zero_mat(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) m[i][j] = rows[i][j];
    return m;
}

IntMat build_gram(const FiberLatticeSpec& spec)
{
    std::vector<IntMat> blocks;
    std::vector<size_t> offs;
    size_t o = 0;
    for (const auto& f : spec.fibers) {
        offs.push_back(o);
        int sz = f.star ? f.n + 4 : f.n - 1;
        blocks.push_back(f.star ? d_block(sz) : a_chain(sz));
        o += static_cast<size_t>(sz);
    }
    IntMat of = zero_mat(2, 2);
    of[0][0] = -2;
    of[0][1] = of[1][0] = 1;
    blocks.push_back(of);
    IntMat g = block_diag(blocks);

    size_t base = g.size();
    size_t n = base + spec.sections.size();
    IntMat out = zero_mat(n, n);
    for (size_t i = 0; i < base; ++i)
        for (size_t j = 0; j < base; ++j) out[i][j] = g[i][j];
    size_t iO = base - 2, iF = base - 1;
    for (size_t s = 0; s < spec.sections.size(); ++s) {
        const auto& sec = spec.sections[s];
        size_t i = base + s;
        out[i][i] = -2;
        out[i][iF] = out[iF][i] = 1;
        out[i][iO] = out[iO][i] = sec.o;
        for (const auto& [fi, ci] : sec.meets) {
            if (fi < 0 || static_cast<size_t>(fi) >= spec.fibers.size())
                throw std::invalid_argument("invalid component index");
            const auto& f = spec.fibers[static_cast<size_t>(fi)];
            int sz = f.star ? f.n + 4 : f.n - 1;
            if (ci < 1 || ci > sz) throw std::invalid_argument("invalid component index");
            size_t j = offs[static_cast<size_t>(fi)] + static_cast<size_t>(ci) - 1;
            out[i][j] = out[j][i] = 1;
        }
        for (const auto& [s2, v] : sec.pair) {
            if (s2 < 0 || static_cast<size_t>(s2) >= s) throw std::invalid_argument("invalid component index");
            size_t j = base + static_cast<size_t>(s2);
            out[i][j] = out[j][i] = v;
        }
    }
    return out;
}

std::vector<std::pair<long long, BigInt>> tilde_determinant_scan(FiberLatticeSpec spec, size_t si,
                                                                 long long kmin, long long kmax)
{
    std::vector<std::pair<long long, BigInt>> out;
    for (long long k = kmin; k <= kmax; ++k) {
        spec.sections.at(si).o = k;
        out.emplace_back(k, determinant(build_gram(spec)));
    }
    return out;
}

int shioda_tate_rank(int ns_rank, const std::vector<FiberBlock>& fibers)
{
    int s = 0;
    for (const auto& f : fibers) s += f.star ? f.n + 4 : f.n - 1;
    int r = ns_rank - 2 - s;
    if (r < 0) throw std::domain_error("inconsistent configuration");
    return r;
}

IntMat apply_perm(const IntMat& m, const std::vector<int>& p)
{
    IntMat r = zero_mat(m.size(), m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j)
            r[static_cast<size_t>(p[i])][static_cast<size_t>(p[j])] = m[i][j];
    return r;
}

} // namespace k3
