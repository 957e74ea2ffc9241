#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zcoh/howell.hpp"

namespace zcoh {

// Exponent sequence of a finite module presentation +_i Z/p^{exp_i}.
// Coordinate i is arithmetic mod p^{exp_i}; presentation order is fixed by
// construction (direct sums concatenate), canonical sorted form is FinAb.
struct Orders {
    std::vector<u32> exp;

    u32 rank() const { return static_cast<u32>(exp.size()); }
    u64 size(const Ring& R) const;
    u32 order_of(u32 i, const Ring& R) const { return R.pow_p(exp[i]); }
    bool operator==(const Orders&) const = default;

    static Orders free(u32 rank, const Ring& R) { return Orders{std::vector<u32>(rank, R.e)}; }
    static Orders concat(const Orders& a, const Orders& b);

    std::vector<u32> canon(std::vector<u32> v, const Ring& R) const;  // reduce per coordinate
    // Relation rows p^{exp_i} e_i as a matrix.
    Mat relation_rows(const Ring& R) const;
};

// Canonical invariant-factor decomposition of a finite abelian p-group:
// ascending exponent list, zero entries dropped; empty list = trivial group.
struct FinAb {
    std::vector<u32> inv;  // ascending, all >= 1

    bool trivial() const { return inv.empty(); }
    u64 size(const Ring& R) const;
    bool operator==(const FinAb&) const = default;

    // "Z/2 + Z/4" ("0" for the trivial group)
    std::string str(const Ring& R) const;

    static FinAb of(std::vector<u32> exps);  // sorts, drops zeros
};

// Local Smith form of D over Z/p^e with column transform tracking:
// returns per-column divisor exponents w_j (ascending) together with V and
// V^{-1} such that rowspan(D * V) = rowspan(diag(p^{w_j})).
struct SnfLocal {
    std::vector<u32> w;
    Mat V, Vinv;
};
SnfLocal snf_local(const Mat& D, const Ring& R);

// Presentation of span(gens)/span(sub) inside the module with the given
// ambient orders, with class/lift transport. The engine behind every H^i.
class Subquotient {
  public:
    Subquotient(const Mat& gens, const Orders& ambient, const Mat& sub, const Ring& R);

    const FinAb& group() const { return group_; }
    const Orders& coords() const { return coords_; }  // same exponents, ascending
    // Representative of the t-th generator, in ambient coordinates.
    const Mat& reps() const { return reps_; }

    // Class coordinates of an ambient vector (must lie in span(gens)).
    std::vector<u32> project(const std::vector<u32>& v) const;
    std::vector<u32> lift(const std::vector<u32>& q) const;  // a representative

    const Ring& ring() const { return R_; }
    u32 ambient_rank() const { return ambient_.rank(); }

  private:
    Ring R_;
    Orders ambient_;
    HowellForm big_;       // howell(gens + relations)
    HowellForm sub_;       // howell(sub + relations), for canonical reps
    Mat V_;                // column transform on coefficient space
    std::vector<u32> w_;   // divisor exponents per transformed coordinate
    std::vector<u32> keep_;  // transformed coordinates with w > 0, ascending w
    FinAb group_;
    Orders coords_;
    Mat reps_;
};

// Invariant factors of span(gens)/span(sub); throws NotASubgroup when
// span(sub) is not contained in span(gens).
FinAb subquotient_invariants(const Mat& gens, const Orders& ambient, const Mat& sub, const Ring& R);

// Order of the subgroup generated by the given rows inside the module.
u64 span_order(const Mat& gens, const Orders& ambient, const Ring& R);

// Kernel of the module map f : src -> tgt (column convention), as generator
// rows in source coordinates. Throws OrderMismatch when f does not respect
// the order congruences p^{src_j} f[i][j] = 0 mod p^{tgt_i}.
Mat kernel_of_map(const Mat& f, const Orders& src, const Orders& tgt, const Ring& R);

// Some x with f*x = y in the target module, if any.
std::optional<std::vector<u32>> solve_map(const Mat& f, const Orders& src, const Orders& tgt,
                                          const std::vector<u32>& y, const Ring& R);

void check_order_congruences(const Mat& f, const Orders& src, const Orders& tgt, const Ring& R);

// Howell form of gens + ambient relations (span of a subgroup of the module).
HowellForm module_span(const Mat& gens, const Orders& ambient, const Ring& R);

}  // namespace zcoh
