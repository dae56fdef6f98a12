#pragma once

#include "k3/poly.hpp"

#include <functional>

namespace k3 {

// coefficient table of a bivariate power series, stored for n+m <= N;
// V marks the total degree up to which entries are reliable after truncated
// operations
struct BiSeries {
    int N = 0;
    int V = 0;
    std::vector<BigRat> a;

    BiSeries() = default;
    explicit BiSeries(int n) : N(n), V(n), a(static_cast<size_t>((n + 1) * (n + 1)), BigRat(0)) {}

    BigRat& at(int n, int m) { return a[static_cast<size_t>(n * (N + 1) + m)]; }
    const BigRat& at(int n, int m) const { return a[static_cast<size_t>(n * (N + 1) + m)]; }
    bool in_range(int n, int m) const { return n >= 0 && m >= 0 && n + m <= N; }
};

// closed-form coefficient; zero off the first quadrant
using CoeffFn = std::function<BigRat(long, long)>;

// families 1..3 of the period table
CoeffFn family_coeff(int family);
// fixture names: eta1, eta2, eta3, eta1_signed, eta3_swapped
CoeffFn variant_coeff(const std::string& name);

BiSeries truncate_series(const CoeffFn& cf, int N);

inline BiSeries period_series(int family, int N) { return truncate_series(family_coeff(family), N); }

BiSeries series_add(const BiSeries& x, const BiSeries& y);
BiSeries series_sub(const BiSeries& x, const BiSeries& y);
BiSeries series_mul(const BiSeries& x, const BiSeries& y);
BiSeries poly_to_series(const MultiPoly& p, int li, int mi, int N); // p in (lambda, mu)

struct SeriesFailure {
    bool pass = true;
    long n = 0, m = 0;
    BigRat value;
};

// lexicographically first nonzero entry with n+m <= s.V
SeriesFailure first_nonzero(const BiSeries& s);

// product of two Gauss 2F1(1/3,2/3;1) series evaluated at the two branches of
// the quadratic coordinate change x = 27*lambda + x*y, y = 27*mu + x*y,
// compared against family 1 coefficients; exercises the series engine end to
// end
SeriesFailure f4_factorization_check(int N);

} // namespace k3
