#pragma once

#include "k3/theta.hpp"

#include <optional>

namespace k3 {

// operator with polynomial coefficients: {(p,q) -> c(l,m)} meaning
// sum c * Tl^p Tm^q, theta factors acting first (right operand side)
using PolyOpKey = std::pair<int, int>;
using PolyOp = std::map<PolyOpKey, MultiPoly>;

PolyOp theta_to_polyop(const ThetaOp& op);

// left-compose with Tl (which = 0) or Tm (which = 1):
// Tl . (c * T^k) = c * T^{k+el} + (l dc/dl) * T^k
PolyOp lmul_theta(const PolyOp& op, int which);

using RatRow = std::array<RatFunc, 4>;
using RatMat = std::array<RatRow, 4>;

// first-order system on the section basis (1, Tl, Tm, Tl^2):
// Tl phi = A phi, Tm phi = B phi (logarithmic convention)
struct ConnectionMatrixPair {
    RatMat A, B;
};

// normal forms of the theta monomials over the section basis
struct OperatorIdeal {
    std::vector<PolyOp> generators;
    std::map<PolyOpKey, RatRow> reduction;
};

// gcd of two polynomials in at most two variables, integer-primitive with
// positive lex-leading coefficient; gcd(0,0) = 0
MultiPoly gcd_bivar(const MultiPoly& a, const MultiPoly& b);

// num/den with the common polynomial factor cancelled; denominator scalar
// part normalized (integer primitive, positive lex-leading coefficient)
RatFunc reduce_entry(const MultiPoly& num, const MultiPoly& den);

// eliminate all theta monomials of total degree <= depth against the span of
// the generators' theta shifts; express Tl.basis and Tm.basis on the basis.
// throws domain_error("degenerate system") if the generators force a relation
// among the basis sections, runtime_error("basis does not close; extend
// generator set") if some required monomial has no pivot
ConnectionMatrixPair derive_pfaffian(const std::vector<PolyOp>& gens, int depth,
                                     OperatorIdeal* ideal = nullptr);

struct LadderOutcome {
    bool closes = false;
    std::optional<std::pair<int, int>> ann_level; // (theta_deg, coeff_deg) of the added pool
    std::optional<int> depth;
    std::optional<int> n_gens;
    ConnectionMatrixPair pair; // meaningful iff closes
};

// escalation schedule: generators alone, then extended by series annihilators
// at caps (3,1), (3,2), (4,2); depths 4..7 at each level
LadderOutcome derive_ladder(const std::vector<PolyOp>& base, const CoeffFn& cf);

struct EntryRef {
    char matrix = 0; // 'A' or 'B'
    int row = 0, col = 0;
};

struct IntegrabilityReport {
    bool pass = false;
    EntryRef where; // first violating entry when !pass
};

// Tm(A) + A*B == Tl(B) + B*A entrywise, theta applied as l d/dl resp. m d/dm,
// equality by cross-multiplication
IntegrabilityReport verify_integrability(const ConnectionMatrixPair& c);

struct SeriesIdentityReport {
    bool pass = false;
    char matrix = 0; // 'A' or 'B' row of the first failure
    int row = 0;
    long n = 0, m = 0;
    BigRat value;
};

// checks Tl phi = A phi and Tm phi = B phi against the truncated series
// phi_j = n^{p_j} m^{q_j} c(n,m), cross-multiplied by the row denominator lcm
SeriesIdentityReport verify_on_series(const ConnectionMatrixPair& c, const CoeffFn& cf, int N);

// distinct non-constant denominator factors across both matrices, each
// integer-primitive with positive lex-leading coefficient, sorted by
// (total degree, text)
std::vector<MultiPoly> singular_locus(const ConnectionMatrixPair& c);

// largest total degree over all entry numerators and denominators
int max_entry_degree(const ConnectionMatrixPair& c);

enum class EntryVerdict { Match, Mismatch, REntry };

struct CompareReport {
    std::string convention; // "logarithmic" or "scaled"
    int a_matches = 0, b_matches = 0;
    std::array<std::array<EntryVerdict, 4>, 4> a{}, b{};
};

// entrywise comparison of the derived pair against a printed pair whose
// entries may mention the unresolved symbol rvar (classified REntry).
// variant renames the derived entries' variables (with signs) first. both
// scaling conventions are tried: printed == derived and printed == derived
// divided by l (A rows) resp. m (B rows); the better one is reported
CompareReport compare_with_printed(const ConnectionMatrixPair& derived,
                                   const RatMat& printed_a, const RatMat& printed_b,
                                   const std::string& rvar,
                                   const std::map<std::string, std::pair<std::string, int>>& variant = {});

struct RCandidate {
    EntryRef where;
    RatFunc value;
    bool polynomial = false;
};

struct RSolution {
    std::vector<RCandidate> candidates;
    bool consistent = false; // all candidate values agree
};

// for every printed entry linear in rvar, solve derived == printed for rvar
RSolution solve_r(const ConnectionMatrixPair& derived,
                  const RatMat& printed_a, const RatMat& printed_b,
                  const std::string& rvar);

} // namespace k3
