#pragma once

#include "k3/rat.hpp"

#include <utility>
#include <vector>

namespace k3 {

using IntMat = std::vector<std::vector<BigInt>>;

IntMat zero_mat(size_t r, size_t c);
IntMat identity_mat(size_t n);
IntMat transpose(const IntMat& m);
IntMat mat_mul(const IntMat& a, const IntMat& b);
IntMat block_diag(const std::vector<IntMat>& blocks);
bool mat_eq(const IntMat& a, const IntMat& b);

// fraction-free elimination
BigInt determinant(const IntMat& m);

// (positive, negative) eigenvalue counts; exact via characteristic polynomial
// sign changes (symmetric input, all roots real)
std::pair<int, int> signature(const IntMat& m);

// Smith normal form diagonal, absolute values, unit divisors dropped
std::vector<BigInt> discriminant_group(const IntMat& m);
std::vector<BigInt> smith_divisors(const IntMat& m);

// det(U) = +-1 and U^T M U == N
bool verify_congruence(const IntMat& m, const IntMat& u, const IntMat& n);

// root blocks used by the fibration lattices
IntMat a_chain(int n);  // A_n(-1)
IntMat d_block(int m);  // D_m(-1), fork tips on node m-2
IntMat u_block();       // ((0,1),(1,0))
IntMat e8_gram();       // E8(-1)

struct FiberBlock {
    bool star = false; // I*_n vs I_n
    int n = 0;
};

struct SectionSpec {
    std::vector<std::pair<int, int>> meets; // (fiber index, component 1-based)
    long long o = 0;                        // intersection with the zero section
    std::vector<std::pair<int, long long>> pair; // (earlier section index, value)
};

struct FiberLatticeSpec {
    std::vector<FiberBlock> fibers;
    std::vector<SectionSpec> sections;
};

// basis order: fiber component blocks, O, F, sections
IntMat build_gram(const FiberLatticeSpec& spec);

// determinants as sections[si].o runs over [kmin, kmax]
std::vector<std::pair<long long, BigInt>> tilde_determinant_scan(FiberLatticeSpec spec, size_t si,
                                                                 long long kmin, long long kmax);

// ns_rank - 2 - sum(m_v - 1), m(I_n) = n, m(I*_n) = n + 5
int shioda_tate_rank(int ns_rank, const std::vector<FiberBlock>& fibers);

// out[p[i]][p[j]] = m[i][j] for a 0-based permutation p
IntMat apply_perm(const IntMat& m, const std::vector<int>& p);

} // namespace k3
