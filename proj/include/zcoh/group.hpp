#pragma once

#include <memory>
#include <string>
#include <vector>

#include "zcoh/ring.hpp"

namespace zcoh {

// Explicit finite group: elements 0..n-1 with 0 the identity, full
// multiplication table. The group law (associativity, identity, inverses)
// is checked at construction.
struct FiniteGroup {
    u32 n = 1;
    std::vector<u32> table;  // table[a*n+b] = a*b
    std::vector<u32> inv;
    std::string label;

    u32 mul(u32 a, u32 b) const { return table[size_t(a) * n + b]; }
    u32 inverse(u32 a) const { return inv[a]; }
    u32 order_of(u32 a) const;
    bool is_abelian() const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline constexpr u32 kDefaultGroupCap = 24;

GroupPtr make_group(std::vector<u32> table, std::string label, u32 cap = kDefaultGroupCap);

GroupPtr cyclic_group(u32 n, u32 cap = kDefaultGroupCap);
GroupPtr symmetric3();
GroupPtr dihedral4();   // order 8
GroupPtr quaternion8();
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, u32 cap = kDefaultGroupCap);
// "cyclic:4", "s3", "d4", "q8", "klein4"
GroupPtr builtin_group(const std::string& name, u32 cap = kDefaultGroupCap);

// Verified group homomorphism given by the image table.
struct GroupHom {
    GroupPtr src, dst;
    std::vector<u32> img;

    u32 operator()(u32 a) const { return img[a]; }
};
GroupHom make_hom(GroupPtr src, GroupPtr dst, std::vector<u32> img);
GroupHom identity_hom(const GroupPtr& g);

// Subgroup from an element subset (must contain 0 and be closed); elements
// are relabeled in ascending order of their index in the parent.
struct Subgroup {
    GroupPtr sub;
    GroupHom incl;               // sub -> parent
    std::vector<u32> elements;   // ascending parent indices
    std::vector<u32> parent_to_sub;  // parent index -> sub index (or UINT32_MAX)
};
Subgroup subgroup_of(const GroupPtr& g, std::vector<u32> elements);

bool is_normal(const FiniteGroup& g, const std::vector<u32>& elements);

// Normal subgroup U of G with the quotient group, projection, and the
// deterministic section (least element per coset).
struct QuotientDatum {
    GroupPtr group;              // G
    Subgroup u;                  // U (normal)
    GroupPtr quot;               // G/U
    GroupHom proj;               // G -> G/U
    std::vector<u32> coset_rep;  // quot index -> least parent element
};
QuotientDatum make_quotient(const GroupPtr& g, std::vector<u32> u_elements);

// Left coset representatives of an arbitrary subgroup: least element per
// coset gU, in ascending order of that least element.
std::vector<u32> left_coset_reps(const FiniteGroup& g, const std::vector<u32>& u_elements);

// Mixed-radix index of a tuple (g_1,...,g_k) in G^k, g_1 most significant.
u64 tuple_index(const std::vector<u32>& t, u32 n);
std::vector<u32> tuple_unrank(u64 idx, u32 k, u32 n);
u64 tuple_count(u32 n, u32 k);

}  // namespace zcoh
