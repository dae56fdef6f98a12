#include "k3/fibration.hpp"

namespace k3 {

MultiPoly curve_poly(const WeierstrassCurve& c, const VarList& ring)
{
    MultiPoly v = MultiPoly::variable(ring, "v");
    MultiPoly w = MultiPoly::variable(ring, "w");
    MultiPoly rhs = v.pow(3) + c.a2.extend(ring) * v * v + c.a1.extend(ring) * v + c.a0.extend(ring);
    return w * w - rhs;
}

Kodaira depress_cubic(const WeierstrassCurve& c)
{
    MultiPoly p = c.a1 - (c.a2 * c.a2).scaled(rat(1, 3));
    MultiPoly q = (c.a2 * c.a2 * c.a2).scaled(rat(2, 27)) - (c.a1 * c.a2).scaled(rat(1, 3)) + c.a0;
    return {-p, -q};
}

namespace {

BigInt denominator_lcm(const MultiPoly& p)
{
    BigInt l(1);
    for (const auto& [e, c] : p.terms) l = int_lcm(l, BigInt(c.get_den()));
    return l;
}

} // namespace

Kodaira rescale_integral(const Kodaira& k)
{
    BigInt l2 = denominator_lcm(k.g2), l3 = denominator_lcm(k.g3);
    for (BigInt u(1);; ++u) {
        BigInt u4 = u * u * u * u, u6 = u4 * u * u;
        if (sign_of(BigInt(u4 % l2)) == 0 && sign_of(BigInt(u6 % l3)) == 0)
            return {k.g2.scaled(BigRat(u4)), k.g3.scaled(BigRat(u6))};
    }
}

MultiPoly discriminant(const Kodaira& k)
{
    MultiPoly d = k.g2.pow(3).scaled(BigRat(4)) - k.g3.pow(2).scaled(BigRat(27));
    if (d.is_zero()) throw std::domain_error("degenerate cubic");
    return d;
}

Kodaira infinity_chart(const Kodaira& k, int ti) { return {k.g2.reverse_in(ti, 8), k.g3.reverse_in(ti, 12)}; }

std::string classify_fiber(int a, int b, int d)
{
    if (d == 0) return "smooth";
    if (a == 0 && b == 0) return "I" + std::to_string(d);
    if (a >= 1 && b == 1 && d == 2) return "II";
    if (a == 1 && b >= 2 && d == 3) return "III";
    if (a >= 2 && b == 2 && d == 4) return "IV";
    if (a >= 2 && b >= 3 && d == 6) return "I0*";
    if (a == 2 && b == 3 && d >= 7) return "I" + std::to_string(d - 6) + "*";
    if (a >= 3 && b == 4 && d == 8) return "IV*";
    if (a == 3 && b >= 5 && d == 9) return "III*";
    if (a >= 4 && b == 5 && d == 10) return "II*";
    throw std::domain_error("non-minimal or inconsistent orders");
}

int euler_number(const std::string& type)
{
    if (type == "smooth") return 0;
    if (type == "II") return 2;
    if (type == "III") return 3;
    if (type == "IV") return 4;
    if (type == "IV*") return 8;
    if (type == "III*") return 9;
    if (type == "II*") return 10;
    if (type.size() > 1 && type[0] == 'I') {
        if (type.back() == '*') return std::stoi(type.substr(1, type.size() - 2)) + 6;
        return std::stoi(type.substr(1));
    }
    throw std::invalid_argument("unknown fiber type: " + type);
}

namespace {

int t_order(const MultiPoly& p, int ti) { return p.is_zero() ? 99 : p.min_exp_in(ti); }

MultiPoly shift_down(const MultiPoly& p, int ti, int k)
{
    MultiPoly r(p.vars);
    for (const auto& [e, c] : p.terms) {
        ExpVec ne = e;
        ne[static_cast<size_t>(ti)] -= k;
        r.terms.emplace(std::move(ne), c);
    }
    return r;
}

} // namespace

FiberClass classify_at_origin(MultiPoly g2, MultiPoly g3, MultiPoly d, int ti)
{
    FiberClass fc;
    int a = t_order(g2, ti), b = t_order(g3, ti), dd = t_order(d, ti);
    while (a != 99 && b != 99 && a >= 4 && b >= 6 && dd >= 12) {
        g2 = shift_down(g2, ti, 4);
        g3 = shift_down(g3, ti, 6);
        d = shift_down(d, ti, 12);
        a = t_order(g2, ti);
        b = t_order(g3, ti);
        dd = t_order(d, ti);
        ++fc.reductions;
    }
    fc.orders = {a, b, dd};
    fc.type = classify_fiber(a, b, dd);
    return fc;
}

BirationalReport verify_birational(const MultiPoly& surface,
                                   const std::map<std::string, RatFunc>& components,
                                   const MultiPoly& curve)
{
    RatFunc pulled = substitute(surface, curve.vars, components);
    DivisionResult dv = exact_divide(pulled.num, curve);
    if (dv.ok && !dv.quotient.is_zero()) return {true, ""};
    std::string wit;
    if (!dv.remainder.is_zero()) {
        auto it = dv.remainder.terms.begin();
        wit = MultiPoly::monomial(dv.remainder.vars, it->first, it->second).str();
    } else {
        wit = "0"; // pullback vanished identically: map collapses the surface
    }
    return {false, wit};
}

bool section_on_curve(const WeierstrassCurve& c, const MultiPoly& sv, const MultiPoly& sw)
{
    MultiPoly rhs = sv.pow(3) + c.a2 * sv * sv + c.a1 * sv + c.a0;
    return sw * sw == rhs;
}

MultiPoly poly_mat_det(std::vector<std::vector<MultiPoly>> m)
{
    size_t n = m.size();
    if (n == 0) throw std::invalid_argument("empty matrix");
    const VarList ring = m[0][0].vars;
    MultiPoly prev = MultiPoly::constant(ring, BigRat(1));
    int sgn = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t sel = n;
            for (size_t i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) {
                    sel = i;
                    break;
                }
            if (sel == n) return MultiPoly::zero(ring);
            std::swap(m[k], m[sel]);
            sgn = -sgn;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                MultiPoly v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                if (v.is_zero()) {
                    m[i][j] = v;
                    continue;
                }
                DivisionResult dv = exact_divide(v, prev);
                if (!dv.ok) throw std::logic_error("fraction-free elimination failed to divide");
                m[i][j] = dv.quotient;
            }
        prev = m[k][k];
    }
    MultiPoly det = m[n - 1][n - 1];
    return sgn > 0 ? det : -det;
}

MultiPoly resultant_in(const MultiPoly& a, const MultiPoly& b, int ti)
{
    int da = a.degree_in(ti), db = b.degree_in(ti);
    if (da < 0 || db < 0) throw std::invalid_argument("resultant of the zero polynomial");
    size_t n = static_cast<size_t>(da + db);
    if (n == 0) return MultiPoly::constant(a.vars, BigRat(1));
    std::vector<std::vector<MultiPoly>> s(n, std::vector<MultiPoly>(n, MultiPoly::zero(a.vars)));
    for (int r = 0; r < db; ++r)
        for (int k = 0; k <= da; ++k) s[static_cast<size_t>(r)][static_cast<size_t>(r + k)] = a.coeff_of(ti, da - k);
    for (int r = 0; r < da; ++r)
        for (int k = 0; k <= db; ++k)
            s[static_cast<size_t>(db + r)][static_cast<size_t>(r + k)] = b.coeff_of(ti, db - k);
    return poly_mat_det(std::move(s));
}

MultiPoly disc_in(const MultiPoly& r, int ti)
{
    int d = r.degree_in(ti);
    if (d <= 0) throw std::invalid_argument("discriminant needs positive degree");
    MultiPoly res = resultant_in(r, r.derivative(ti), ti);
    MultiPoly lc = r.coeff_of(ti, d);
    DivisionResult dv = exact_divide(res, lc);
    if (!dv.ok) throw std::logic_error("leading coefficient does not divide the resultant");
    int sw = (d * (d - 1) / 2) % 2;
    return sw ? -dv.quotient : dv.quotient;
}

FiberConfiguration analyze_fibration(const Kodaira& finite, int li, int mi, int ti,
                                     const MultiPoly& domain_poly, const BigRat& lv,
                                     const BigRat& mv)
{
    FiberConfiguration out;
    MultiPoly d0 = discriminant(finite);
    Kodaira inf = infinity_chart(finite, ti);
    MultiPoly dinf = d0.reverse_in(ti, 24);
    out.at_zero = classify_at_origin(finite.g2, finite.g3, d0, ti);
    out.at_infinity = classify_at_origin(inf.g2, inf.g3, dinf, ti);

    const std::map<std::string, BigRat> point = {{finite.g2.vars[static_cast<size_t>(li)], lv},
                                                 {finite.g2.vars[static_cast<size_t>(mi)], mv}};
    if (sign_of(lv) == 0 || sign_of(mv) == 0 ||
        sign_of(domain_poly.eval_partial(point).constant_value()) == 0)
        throw std::domain_error("sample outside Λ");

    MultiPoly residual = shift_down(d0, ti, d0.min_exp_in(ti));
    MultiPoly at_sample = residual.eval_partial(point);
    std::vector<BigRat> uni = univariate(at_sample, ti);
    out.n_i1 = static_cast<int>(uni.size()) - 1;
    out.residual_squarefree = univariate_squarefree(uni);
    out.euler_total = euler_number(out.at_zero.type) + euler_number(out.at_infinity.type) + out.n_i1;
    return out;
}

} // namespace k3
