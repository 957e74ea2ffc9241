#pragma once

#include <optional>

#include "zcoh/finab.hpp"
#include "zcoh/group.hpp"

namespace zcoh {

struct GModule;
using GModulePtr = std::shared_ptr<const GModule>;

// Group-algebra level structure carried by induced modules: left and right
// actions of R[Q] recorded separately (no balance is assumed; the two
// commute with each other only when Q is abelian).
struct LambdaAction {
    GroupPtr quot;
    std::vector<Mat> left;
    std::vector<Mat> right;
};

// Finite module over Z/p^e with a group action by matrices. Elements are
// column vectors in cyclic-summand coordinates; coordinate i is arithmetic
// mod p^{orders.exp[i]}. Immutable after construction.
struct GModule {
    Ring ring;
    Orders orders;
    GroupPtr group;
    std::vector<Mat> act;  // one matrix per group element
    std::optional<LambdaAction> lambda;

    u32 rank() const { return orders.rank(); }
    u64 size() const { return orders.size(ring); }
    const Mat& action(u32 g) const { return act[g]; }
    FinAb invariants() const { return FinAb::of(orders.exp); }
};

// Canonicalizes entries (row i mod p^{tgt exp i}), validates order
// congruences and the homomorphism property of the action.
GModulePtr make_gmodule(Ring R, Orders o, GroupPtr g, std::vector<Mat> act,
                        std::optional<LambdaAction> lambda = std::nullopt);
GModulePtr trivial_module(Ring R, Orders o, GroupPtr g);
GModulePtr regular_module(Ring R, const GroupPtr& g);  // R[G], left translation
// View a module along a group homomorphism phi : H -> G (restriction).
GModulePtr restrict_module(const GModulePtr& m, const GroupHom& phi);

// Verified module map: respects order congruences and commutes with the
// group actions (sources and targets must share the group).
struct ModuleMap {
    GModulePtr src, tgt;
    Mat m;  // tgt.rank x src.rank, y = m*x

    std::vector<u32> operator()(const std::vector<u32>& x) const {
        return tgt->orders.canon(mat_apply(m, x, tgt->ring), tgt->ring);
    }
};
ModuleMap make_map(GModulePtr src, GModulePtr tgt, Mat m, bool check_equivariance = true);
ModuleMap identity_map(const GModulePtr& m);
ModuleMap zero_map(GModulePtr src, GModulePtr tgt);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f
ModuleMap map_add(const ModuleMap& f, const ModuleMap& g);
ModuleMap map_scale(u32 c, const ModuleMap& f);
bool is_bijective(const ModuleMap& f);

// Multiplicative character with unit values; the finite-level stand-in for
// one-dimensional twists.
struct Character {
    GroupPtr group;
    std::vector<u32> values;

    u32 operator()(u32 g) const { return values[g]; }
};
Character make_character(GroupPtr g, std::vector<u32> values, const Ring& R);
Character trivial_character(GroupPtr g);
Character inverse_character(const Character& chi, const Ring& R);

GModulePtr twist_by_character(const GModulePtr& m, const Character& chi);

// iota twist: group-algebra level actions precomposed with q -> q^{-1}
// (left and right swap roles); an involution. Throws NoLambdaAction.
GModulePtr iota_twist(const GModulePtr& m);

// --- duality ---------------------------------------------------------------

// Transpose of a module map under the evaluation pairings:
// (dual f)[j][i] = f[i][j] * p^{a_j - b_i} (exact by the order congruence).
Mat dual_matrix(const Mat& f, const Orders& src, const Orders& tgt, const Ring& R);

struct DualData {
    GModulePtr dual;      // M^vee = Hom(M, Z/p^e), contragredient action
    ModuleMap evaluation;  // M^vee (x) M -> R (rank-1 trivial module)
};
DualData pontryagin_dual(const GModulePtr& m);
ModuleMap dual_map(const ModuleMap& f, const GModulePtr& dual_tgt, const GModulePtr& dual_src);
// canonical M -> (M^vee)^vee (the identity matrix in these coordinates)
ModuleMap double_dual_map(const GModulePtr& m, const GModulePtr& ddual);

// --- tensor and hom --------------------------------------------------------

GModulePtr tensor_mod(const GModulePtr& a, const GModulePtr& b);  // diagonal action
GModulePtr hom_mod(const GModulePtr& a, const GModulePtr& b);     // conjugation action

// index helpers for tensor coordinates ((i,j) -> i*rank_b + j)
u32 pair_index(u32 i, u32 j, u32 rank_b);

// tensor of elements / maps
std::vector<u32> tensor_elem(const GModulePtr& a, const GModulePtr& b,
                             const std::vector<u32>& x, const std::vector<u32>& y);
Mat tensor_matrix(const Mat& f, const Mat& g, const Orders& sa, const Orders& sb,
                  const Orders& ta, const Orders& tb, const Ring& R);

// hom coordinates <-> concrete matrices
Mat hom_coords_to_matrix(const GModulePtr& a, const GModulePtr& b, const std::vector<u32>& c);
std::vector<u32> hom_matrix_to_coords(const GModulePtr& a, const GModulePtr& b, const Mat& f);

// Transport on hom coordinate spaces: c -> coords of (v o phi_c o u) where
// u : A2 -> A and v : B -> B2, as a matrix Hom(A,B) -> Hom(A2,B2).
Mat hom_transport(const GModulePtr& a, const GModulePtr& b, const GModulePtr& a2,
                  const GModulePtr& b2, const Mat& u, const Mat& v);

// --- submodules and quotients ----------------------------------------------

// Submodule spanned by the given rows (must be G-stable); incl is a genuine
// module map.
struct SubmodulePres {
    GModulePtr mod;
    ModuleMap incl;
    std::shared_ptr<const Subquotient> pres;
};
SubmodulePres submodule_module(const GModulePtr& m, const Mat& gens);

// Quotient by the span of the given rows (must be G-stable); proj is total.
struct QuotientPres {
    GModulePtr mod;
    ModuleMap proj;
    std::shared_ptr<const Subquotient> pres;
};
QuotientPres quotient_module(const GModulePtr& m, const Mat& sub);

// Fixed points M^G as a submodule.
SubmodulePres invariants_submodule(const GModulePtr& m);

// --- equivariant hom spaces -------------------------------------------------

// Generator rows (as hom coordinates) of Hom_G(a, b).
Mat equivariant_hom_basis(const GModulePtr& a, const GModulePtr& b);

}  // namespace zcoh
