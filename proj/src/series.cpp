#include "k3/series.hpp"

namespace k3 {

namespace {

BigRat frac(const BigInt& num, const BigInt& den)
{
    BigRat r(num);
    r /= BigRat(den);
    return r;
}

BigRat c1(long n, long m)
{
    if (n < 0 || m < 0) return BigRat(0);
    BigInt den = factorial(static_cast<unsigned long>(n)) * factorial(static_cast<unsigned long>(n));
    den *= factorial(static_cast<unsigned long>(m)) * factorial(static_cast<unsigned long>(m));
    den *= factorial(static_cast<unsigned long>(n + m));
    return frac(factorial(static_cast<unsigned long>(3 * n + 3 * m)), den);
}

BigRat c2(long n, long m)
{
    if (n < 0 || m < 0) return BigRat(0);
    BigInt den = factorial(static_cast<unsigned long>(m)) * factorial(static_cast<unsigned long>(m));
    den *= factorial(static_cast<unsigned long>(n));
    BigInt s = factorial(static_cast<unsigned long>(n + m));
    den *= s * s;
    BigRat v = frac(factorial(static_cast<unsigned long>(3 * n + 4 * m)), den);
    return (n & 1) ? -v : v;
}

BigRat c3(long n, long m)
{
    if (n < 0 || m < 0) return BigRat(0);
    BigInt den = factorial(static_cast<unsigned long>(m)) * factorial(static_cast<unsigned long>(m));
    BigInt f = factorial(static_cast<unsigned long>(n));
    den *= f * f * f;
    BigRat v = frac(factorial(static_cast<unsigned long>(2 * n + 3 * m)), den);
    return (n & 1) ? -v : v;
}

BigRat c1_signed(long n, long m)
{
    BigRat v = c1(n, m);
    return ((n + m) & 1) ? -v : v;
}

BigRat c3_swapped(long n, long m)
{
    if (n < 0 || m < 0) return BigRat(0);
    BigInt den = factorial(static_cast<unsigned long>(m)) * factorial(static_cast<unsigned long>(m));
    BigInt f = factorial(static_cast<unsigned long>(n));
    den *= f * f * f;
    BigRat v = frac(factorial(static_cast<unsigned long>(3 * n + 2 * m)), den);
    return (n & 1) ? -v : v;
}

} // namespace

CoeffFn family_coeff(int family)
{
    switch (family) {
        case 1: return c1;
        case 2: return c2;
        case 3: return c3;
    }
    throw std::invalid_argument("unknown family");
}

CoeffFn variant_coeff(const std::string& name)
{
    if (name == "eta1" || name == "printed1") return c1;
    if (name == "eta2") return c2;
    if (name == "eta3") return c3;
    if (name == "eta1_signed" || name == "sign_flipped") return c1_signed;
    if (name == "eta3_swapped" || name == "index_swapped") return c3_swapped;
    throw std::invalid_argument("unknown series variant: " + name);
}

BiSeries truncate_series(const CoeffFn& cf, int N)
{
    BiSeries s(N);
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m + n <= N; ++m) s.at(n, m) = cf(n, m);
    return s;
}

BiSeries series_add(const BiSeries& x, const BiSeries& y)
{
    if (x.N != y.N) throw std::invalid_argument("series truncation mismatch");
    BiSeries r(x.N);
    r.V = std::min(x.V, y.V);
    for (int n = 0; n <= r.N; ++n)
        for (int m = 0; m + n <= r.N; ++m) r.at(n, m) = x.at(n, m) + y.at(n, m);
    return r;
}

BiSeries series_sub(const BiSeries& x, const BiSeries& y)
{
    if (x.N != y.N) throw std::invalid_argument("series truncation mismatch");
    BiSeries r(x.N);
    r.V = std::min(x.V, y.V);
    for (int n = 0; n <= r.N; ++n)
        for (int m = 0; m + n <= r.N; ++m) r.at(n, m) = x.at(n, m) - y.at(n, m);
    return r;
}

BiSeries series_mul(const BiSeries& x, const BiSeries& y)
{
    if (x.N != y.N) throw std::invalid_argument("series truncation mismatch");
    BiSeries r(x.N);
    r.V = std::min(x.V, y.V);
    for (int n = 0; n <= r.N; ++n)
        for (int m = 0; m + n <= r.N; ++m) {
            if (sign_of(x.at(n, m)) == 0) continue;
            for (int p = 0; p + n <= r.N; ++p)
                for (int q = 0; q + p + n + m <= r.N; ++q) {
                    if (sign_of(y.at(p, q)) == 0) continue;
                    r.at(n + p, m + q) += x.at(n, m) * y.at(p, q);
                }
        }
    return r;
}

BiSeries poly_to_series(const MultiPoly& p, int li, int mi, int N)
{
    BiSeries r(N);
    for (const auto& [e, c] : p.terms) {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] && static_cast<int>(i) != li && static_cast<int>(i) != mi)
                throw std::invalid_argument("poly_to_series: extra variable");
        int n = e[static_cast<size_t>(li)], m = e[static_cast<size_t>(mi)];
        if (n + m <= N) r.at(n, m) += c;
    }
    return r;
}

SeriesFailure first_nonzero(const BiSeries& s)
{
    for (int n = 0; n <= s.V; ++n)
        for (int m = 0; m + n <= s.V; ++m)
            if (sign_of(s.at(n, m)) != 0) return {false, n, m, s.at(n, m)};
    return {};
}

SeriesFailure f4_factorization_check(int N)
{
    if (N < 2) throw std::invalid_argument("f4_factorization_check needs N >= 2");
    BiSeries x(N), y(N);
    x.at(1, 0) = BigRat(27);
    y.at(0, 1) = BigRat(27);
    for (int it = 0; it < N + 2; ++it) {
        BiSeries xy = series_mul(x, y);
        BiSeries nx(N), ny(N);
        nx.at(1, 0) = BigRat(27);
        ny.at(0, 1) = BigRat(27);
        nx = series_add(nx, xy);
        ny = series_add(ny, xy);
        x = nx;
        y = ny;
    }
    { // the fixed point must have stabilized: one more step is a no-op
        BiSeries xy = series_mul(x, y);
        BiSeries nx(N);
        nx.at(1, 0) = BigRat(27);
        nx = series_add(nx, xy);
        if (!(nx.a == x.a)) throw std::runtime_error("coordinate-change iteration did not stabilize");
    }

    // Gauss series coefficients r_k = r_{k-1} (1/3+k-1)(2/3+k-1) / (k*k)
    std::vector<BigRat> rk(static_cast<size_t>(N) + 1);
    rk[0] = BigRat(1);
    for (int k = 1; k <= N; ++k)
        rk[static_cast<size_t>(k)] = rk[static_cast<size_t>(k - 1)] * BigRat(1 + 3 * (k - 1)) *
                                     BigRat(2 + 3 * (k - 1)) / BigRat(9 * k * k);

    auto gauss_at = [&](const BiSeries& s) {
        BiSeries acc(N);
        acc.at(0, 0) = rk[0];
        BiSeries p(N);
        p.at(0, 0) = BigRat(1);
        for (int k = 1; k <= N; ++k) {
            p = series_mul(p, s);
            for (int n = 0; n <= N; ++n)
                for (int m = 0; m + n <= N; ++m) acc.at(n, m) += rk[static_cast<size_t>(k)] * p.at(n, m);
        }
        return acc;
    };

    BiSeries lhs = series_mul(gauss_at(x), gauss_at(y));
    BiSeries eta = truncate_series(family_coeff(1), N);
    BiSeries diff = series_sub(lhs, eta);
    return first_nonzero(diff);
}

} // namespace k3
