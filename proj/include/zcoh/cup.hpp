#pragma once

#include "zcoh/cochains.hpp"

namespace zcoh {

// Validated G-equivariant pairing A (x) B -> C; throws NonEquivariantPairing.
ModuleMap equivariant_pairing(const GModulePtr& a, const GModulePtr& b, const GModulePtr& c,
                              const Mat& m);

// Matrix of the cup product C^i(G,A) (x) C^j(G,B) -> C^{i+j}(G,C):
//   (alpha cup beta)(s_1..s_{i+j}) = < alpha(s_1..s_i), (s_1...s_i) . beta(s_{i+1}..s_{i+j}) >
Mat cup_matrix(const GroupPtr& g, const GModulePtr& a, const GModulePtr& b, const GModulePtr& c,
               const Mat& pairing, u32 i, u32 j);

// Cup product of explicit cochain tables.
std::vector<u32> cup(const GroupPtr& g, const ModuleMap& pairing, const GModulePtr& a, u32 i,
                     const std::vector<u32>& alpha, const GModulePtr& b, u32 j,
                     const std::vector<u32>& beta);

// Total cup product on hypercochain complexes with the sign collection
// ((-1)^{ib} cup^{ab}_{ij}). The coefficient pairings must assemble to a
// chain map N (x) M -> A (checked; IncompatiblePairings otherwise).
struct TotalCupData {
    TotalComplex cn, cm, ca;       // C(G,N), C(G,M), C(G,A)
    TotalComplex tensor_cn_cm;     // C(G,N) (x) C(G,M)
    ComplexPairing cochain_pairing;
    ChainMap cup;                  // the assembled verified chain map
};
TotalCupData total_cup(const GroupPtr& g, const ComplexPairing& coeff, u32 cap);

}  // namespace zcoh
