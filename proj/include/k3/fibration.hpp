#pragma once

#include "k3/ratfunc.hpp"

namespace k3 {

// w^2 = v^3 + a2 v^2 + a1 v + a0 with coefficients over (l, m, t)
struct WeierstrassCurve {
    MultiPoly a2, a1, a0;
};

// w^2 - rhs as one polynomial in the given ring (must contain the coefficient
// vars plus v, w)
MultiPoly curve_poly(const WeierstrassCurve& c, const VarList& ring);

// z^2 = y^3 - g2 y - g3
struct Kodaira {
    MultiPoly g2, g3;
};

// complete the cube; no rescaling, coefficients stay rational
Kodaira depress_cubic(const WeierstrassCurve& c);

// smallest positive integer u with u^4 g2 and u^6 g3 integral
Kodaira rescale_integral(const Kodaira& k);

// 4 g2^3 - 27 g3^2; identically zero input is a degenerate cubic
MultiPoly discriminant(const Kodaira& k);

// chart swap t -> 1/t with modular weights 8, 12
Kodaira infinity_chart(const Kodaira& k, int ti);

// Kodaira type from minimal vanishing orders (99 = identically zero)
std::string classify_fiber(int o2, int o3, int od);
int euler_number(const std::string& type);

struct FiberClass {
    std::string type;
    std::array<int, 3> orders{};
    int reductions = 0;
};

// orders over the generic base: reduce by (t^4, t^6, t^12) while possible,
// then classify
FiberClass classify_at_origin(MultiPoly g2, MultiPoly g3, MultiPoly d, int ti);

struct BirationalReport {
    bool pass = false;
    std::string witness; // leading term of the remainder on failure
};

// pullback of the surface polynomial along the map must be divisible by the
// curve polynomial (both in the chart ring)
BirationalReport verify_birational(const MultiPoly& surface,
                                   const std::map<std::string, RatFunc>& components,
                                   const MultiPoly& curve);

bool section_on_curve(const WeierstrassCurve& c, const MultiPoly& sv, const MultiPoly& sw);

// fraction-free determinant of a polynomial matrix
MultiPoly poly_mat_det(std::vector<std::vector<MultiPoly>> m);

// Sylvester resultant eliminating variable ti
MultiPoly resultant_in(const MultiPoly& a, const MultiPoly& b, int ti);

// (-1)^(d(d-1)/2) Res(r, r') / lc, univariate direction ti
MultiPoly disc_in(const MultiPoly& r, int ti);

struct FiberConfiguration {
    FiberClass at_zero, at_infinity;
    int n_i1 = 0;
    bool residual_squarefree = false;
    int euler_total = 0;
};

// sample (lv, mv) must avoid l*m*domain_poly = 0
FiberConfiguration analyze_fibration(const Kodaira& finite, int li, int mi, int ti,
                                     const MultiPoly& domain_poly, const BigRat& lv,
                                     const BigRat& mv);

} // namespace k3
