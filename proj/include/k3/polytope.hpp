#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3 {

using Vec3 = std::array<long long, 3>;

struct LatticePolytope3 {
    std::vector<Vec3> vertices;
};

// a*x + b*y + c*z <= d with gcd 1; vertex_indices sorted, facet list sorted by (a,b,c,d)
struct HalfSpace {
    std::array<long long, 4> ineq;
    std::vector<int> vertex_indices;
};

std::vector<HalfSpace> facets(const LatticePolytope3& p);

struct ReflexiveReport {
    bool vertices_integral = false;
    bool origin_unique_interior = false;
    bool boundary_only_vertices = false;
};

ReflexiveReport check_reflexive_terminal(const LatticePolytope3& p);

bool check_fano(const LatticePolytope3& p);

// first facet violating the fano condition, if any
struct FanoFailure {
    bool ok = true;
    std::array<long long, 4> ineq{};
    int n_vertices = 0;
};
FanoFailure fano_failure(const LatticePolytope3& p);

} // namespace k3
