#pragma once

#include "zcoh/complex.hpp"
#include "zcoh/rng.hpp"

namespace zcoh {

// Randomized generators for property suites. Everything is drawn from a
// catalog of honest constructions so that invariants (group laws, order
// congruences, equivariance) hold by construction.

// A valid GModule for the group: trivial ranks, regular and quotient-regular
// modules, duals, character twists, small tensors.
GModulePtr random_gmodule(const Ring& R, const GroupPtr& g, Rng& rng, u32 max_rank = 4);

// Random element of Hom_G(a, b).
ModuleMap random_equivariant_map(const GModulePtr& a, const GModulePtr& b, Rng& rng);

// Random bounded complex with up to max_terms terms starting at degree lo.
ComplexPtr random_complex(const Ring& R, const GroupPtr& g, Rng& rng, int lo, u32 max_terms = 3,
                          u32 max_rank = 3);

// Random chain map X -> Y (a random degree-0 cycle of Hom(X, Y), intersected
// with the equivariant subspace when the group is nontrivial).
ChainMap random_chain_map(const ComplexPtr& x, const ComplexPtr& y, Rng& rng);

// Random pairing X (x) Y -> Z (per-bidegree components assembling to a chain
// map; sampled like random_chain_map through the tensor-hom adjunction).
ComplexPairing random_pairing(const ComplexPtr& x, const ComplexPtr& y, const ComplexPtr& z,
                              Rng& rng);

// Random quasi-isomorphism source -> source + acyclic summand and back.
struct QuasiIsoSample {
    ComplexPtr big;    // x + cone(id)
    ChainMap incl;     // x -> big (quasi-iso)
    ChainMap proj;     // big -> x (quasi-iso)
};
QuasiIsoSample random_quasi_iso(const ComplexPtr& x, Rng& rng);

// Group catalog for suites: all isomorphism types of order <= 8 that the
// builtins cover, keyed for reproducibility.
std::vector<GroupPtr> group_catalog_le8();

std::vector<u32> random_vector(const Orders& o, const Ring& R, Rng& rng);

}  // namespace zcoh
