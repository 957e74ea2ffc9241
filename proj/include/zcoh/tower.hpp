#pragma once

#include "zcoh/induced.hpp"

namespace zcoh {

// Finite, explicit tower of quotients of one ambient group: nested normal
// subgroups U_1 >= U_2 >= ... >= U_K giving quotients G/U_k of growing size.
struct TowerSpec {
    GroupPtr group;
    std::vector<QuotientDatum> levels;  // coarse to fine
    u32 window = 1;
};
// Z/p^K with U_k generated by p^k; levels k = 1..K.
TowerSpec cyclic_p_tower(u32 p, u32 K, u32 cap = 32);
TowerSpec make_tower(GroupPtr g, std::vector<std::vector<u32>> subgroup_elements, u32 window);

// level-k values of F_Gamma / FF_Gamma with the colimit/limit transition maps
struct LevelValue {
    GModulePtr value;
    std::optional<ModuleMap> from_prev;  // transition from level k-1 (colimit side: pr^*)
    std::optional<ModuleMap> to_prev;    // transition to level k-1 (limit side: pr_*)
};
LevelValue f_gamma_level(const TowerSpec& t, const GModulePtr& m, u32 k);   // _U_k M
LevelValue ff_gamma_level(const TowerSpec& t, const GModulePtr& m, u32 k);  // M_{U_k}

// Stabilization-detected (co)limits of cohomology along the tower.
struct TowerReport {
    std::vector<FinAb> levels;       // H^i at each level
    bool stabilized = false;
    u32 level = 0;                   // first stabilized level (1-based)
    FinAb value;                     // meaningful when stabilized
    bool window_independent = false; // same result with window + 1
    std::string detail;
};

// colim_k H^i(G/U_k, M) along inflation; M must have an action factoring
// through every level (checked).
TowerReport tower_colim_cohomology(const TowerSpec& t, const GModulePtr& m, u32 i, u32 cap);

// lim_k H^i(G, M_k) along the maps induced by surjections M_{k+1} ->> M_k,
// with eventual-image (Mittag-Leffler) stabilization detection.
TowerReport tower_lim_cohomology(const GroupPtr& g, const std::vector<GModulePtr>& modules,
                                 const std::vector<ModuleMap>& surjections, u32 i, u32 cap,
                                 u32 window);

}  // namespace zcoh
