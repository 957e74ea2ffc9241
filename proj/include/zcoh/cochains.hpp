#pragma once

#include "zcoh/complex.hpp"

namespace zcoh {

inline constexpr u32 kDefaultDegreeCap = 3;

// C^j(G, M): the module of tables G^j -> M, with the inhomogeneous
// differential. Coordinates are (tuple, module coordinate) with the tuple
// mixed-radix index major: index = tuple_index * rank(M) + coord.
GModulePtr cochain_module(const GroupPtr& g, const GModulePtr& m, u32 j);

// Matrix of the inhomogeneous differential C^j(G,M) -> C^{j+1}(G,M):
// (dc)(g_1..g_{j+1}) = g_1 c(g_2..g_{j+1})
//                      + sum_i (-1)^i c(.., g_i g_{i+1}, ..) + (-1)^{j+1} c(g_1..g_j)
Mat cochain_diff_matrix(const GroupPtr& g, const GModulePtr& m, u32 j);

// The cochain complex C(G, M) in degrees 0..cap, as a complex of modules
// over the trivial group.
ComplexPtr cochain_complex(const GroupPtr& g, const GModulePtr& m, u32 cap);

// Hypercochain total complex C^n(G, M.) = +_{i+j=n} C^j(G, M^i) with
// differential (d_M)_* + (-1)^i delta on the (i, j) piece. Pieces are keyed
// by the coefficient degree i.
TotalComplex cochain_total(const GroupPtr& g, const ComplexPtr& m, u32 cap);

// H^i(G, M) together with representative access.
struct GroupCohomology {
    FinAb group;
    CohomDegree data;
    GModulePtr cochains;  // C^i(G, M)
};
GroupCohomology group_cohomology(const GroupPtr& g, const GModulePtr& m, u32 i, u32 cap = kDefaultDegreeCap);
FinAb cochain_cohomology(const GroupPtr& g, const GModulePtr& m, u32 i, u32 cap = kDefaultDegreeCap);
FinAb cochain_cohomology(const GroupPtr& g, const ComplexPtr& m, int i, u32 cap = kDefaultDegreeCap);

// --- functoriality -------------------------------------------------------------

// Map on cochain complexes induced by a coefficient map M -> N.
ChainMap cochain_coefficient_map(const GroupPtr& g, const ModuleMap& f, u32 cap);

// Restriction along any group homomorphism phi : U -> G (inflation when phi
// is the projection from a bigger group is the same construction along the
// other side: see inflation below).
//   res(c)(u_1..u_n) = c(phi u_1, ..., phi u_n)
ChainMap restriction_map(const GroupHom& phi, const GModulePtr& m, u32 cap);
// m_sub must be m viewed along phi (restrict_module(m, phi)).
ChainMap restriction_map(const GroupHom& phi, const GModulePtr& m, const GModulePtr& m_sub, u32 cap);

// Inflation along the projection of a quotient datum: C(G/U, M) -> C(G, M);
// m_quot is a module for the quotient, m_big its view along proj.
ChainMap inflation_map(const QuotientDatum& q, const GModulePtr& m_quot, u32 cap);

// Corestriction (transfer) C(U, M) -> C(G, M) for a subgroup U of G.
ChainMap corestriction_map(const Subgroup& u, const GModulePtr& m, u32 cap);

// Shapiro map C(G, M_U) -> C(U, M): restriction followed by evaluation at
// the identity coset (through the Kronecker identification).
// Defined in induced.hpp where M_U lives.

// --- short exact sequences of coefficients -----------------------------------------

// The LES of H^i(G, -) for a SES of modules 0 -> A -> B -> C -> 0.
LESReport cochain_les(const GroupPtr& g, const ModuleMap& inc, const ModuleMap& prj, u32 cap);

// --- rendering ----------------------------------------------------------------------

// Stable textual form of a cochain table for golden tests.
std::string render_cochain(const GroupPtr& g, const GModulePtr& m, u32 degree,
                           const std::vector<u32>& table);

}  // namespace zcoh
