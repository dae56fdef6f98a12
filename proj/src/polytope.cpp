#include "k3/polytope.hpp"

#include <algorithm>
#include <numeric>

namespace k3 {

namespace {

long long dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 sub3(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec3 cross3(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

long long det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot3(a, cross3(b, c)); }

} // namespace

std::vector<HalfSpace> facets(const LatticePolytope3& p)
{
    const auto& vs = p.vertices;
    size_t n = vs.size();
    bool spans = false;
    for (size_t i = 0; i < n && !spans; ++i)
        for (size_t j = i + 1; j < n && !spans; ++j)
            for (size_t k = j + 1; k < n && !spans; ++k)
                for (size_t l = k + 1; l < n && !spans; ++l)
                    if (det3(sub3(vs[j], vs[i]), sub3(vs[k], vs[i]), sub3(vs[l], vs[i])) != 0) spans = true;
    if (!spans) throw std::invalid_argument("degenerate vertex set");

    std::vector<HalfSpace> out;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                Vec3 nrm = cross3(sub3(vs[j], vs[i]), sub3(vs[k], vs[i]));
                if (nrm[0] == 0 && nrm[1] == 0 && nrm[2] == 0) continue;
                long long g = std::gcd(std::gcd(std::abs(nrm[0]), std::abs(nrm[1])), std::abs(nrm[2]));
                for (auto& c : nrm) c /= g;
                long long d = dot3(nrm, vs[i]);
                bool all_le = true, all_ge = true;
                for (const auto& v : vs) {
                    long long s = dot3(nrm, v);
                    if (s > d) all_le = false;
                    if (s < d) all_ge = false;
                }
                if (!all_le && !all_ge) continue;
                if (!all_le) {
                    for (auto& c : nrm) c = -c;
                    d = -d;
                }
                HalfSpace h;
                h.ineq = {nrm[0], nrm[1], nrm[2], d};
                for (size_t t = 0; t < n; ++t)
                    if (dot3(nrm, vs[t]) == d) h.vertex_indices.push_back(static_cast<int>(t));
                bool dup = false;
                for (const auto& e : out)
                    if (e.ineq == h.ineq) {
                        dup = true;
                        break;
                    }
                if (!dup) out.push_back(std::move(h));
            }
    std::sort(out.begin(), out.end(), [](const HalfSpace& a, const HalfSpace& b) { return a.ineq < b.ineq; });
    return out;
}

ReflexiveReport check_reflexive_terminal(const LatticePolytope3& p)
{
    ReflexiveReport rep;
    rep.vertices_integral = true; // integral by representation

    auto fs = facets(p);
    Vec3 lo = p.vertices[0], hi = p.vertices[0];
    for (const auto& v : p.vertices)
        for (int i = 0; i < 3; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }

    bool unique_interior = true, origin_interior = false, boundary_ok = true;
    for (long long x = lo[0]; x <= hi[0]; ++x)
        for (long long y = lo[1]; y <= hi[1]; ++y)
            for (long long z = lo[2]; z <= hi[2]; ++z) {
                Vec3 pt = {x, y, z};
                bool inside = true, strict = true;
                for (const auto& f : fs) {
                    long long s = f.ineq[0] * x + f.ineq[1] * y + f.ineq[2] * z;
                    if (s > f.ineq[3]) inside = false;
                    if (s == f.ineq[3]) strict = false;
                }
                if (!inside) continue;
                if (strict) {
                    if (pt == Vec3{0, 0, 0})
                        origin_interior = true;
                    else
                        unique_interior = false;
                } else {
                    bool is_vertex = false;
                    for (const auto& v : p.vertices)
                        if (v == pt) {
                            is_vertex = true;
                            break;
                        }
                    if (!is_vertex) boundary_ok = false;
                }
            }
    rep.origin_unique_interior = origin_interior && unique_interior;
    rep.boundary_only_vertices = boundary_ok;
    return rep;
}

FanoFailure fano_failure(const LatticePolytope3& p)
{
    for (const auto& f : facets(p)) {
        FanoFailure fail{false, f.ineq, static_cast<int>(f.vertex_indices.size())};
        if (f.vertex_indices.size() != 3) return fail;
        long long d = det3(p.vertices[static_cast<size_t>(f.vertex_indices[0])],
                           p.vertices[static_cast<size_t>(f.vertex_indices[1])],
                           p.vertices[static_cast<size_t>(f.vertex_indices[2])]);
        if (d != 1 && d != -1) return fail;
    }
    return {};
}

bool check_fano(const LatticePolytope3& p) { return fano_failure(p).ok; }

} // namespace k3
