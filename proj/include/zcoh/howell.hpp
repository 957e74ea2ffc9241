#pragma once

#include <optional>
#include <vector>

#include "zcoh/mat.hpp"

namespace zcoh {

// Howell normal form of a row span over Z/p^e. Unlike Smith form, the Howell
// form supports membership tests: every element of the span reduces to zero
// against it, and the reduced coset representative is canonical (and
// coordinatewise minimal left-to-right).
//
// Shape: rows in echelon order, pivot entries p^{v} with strictly increasing
// pivot columns, entries above a pivot reduced mod p^{v}, zero rows dropped.
struct HowellForm {
    Mat h;                        // the canonical rows
    std::vector<u32> pivot_col;   // pivot column per row
    std::vector<u32> pivot_vexp;  // valuation v of the pivot p^v per row

    u32 nrows() const { return h.rows; }
    // |span| = prod p^{e - v_i}
    u64 span_size(const Ring& R) const;
};

HowellForm howell(const Mat& rows, const Ring& R);

// Canonical coset representative of v modulo the span.
std::vector<u32> howell_reduce(const HowellForm& H, std::vector<u32> v, const Ring& R);

bool howell_member(const HowellForm& H, const std::vector<u32>& v, const Ring& R);

// Coefficients c with v = c * H.h, when v is in the span.
std::optional<std::vector<u32>> howell_express(const HowellForm& H, const std::vector<u32>& v,
                                               const Ring& R);

// Row-kernel {x : x * m = 0} over Z/p^e, returned as generator rows.
Mat kernel_rows(const Mat& m, const Ring& R);

// Some x with x * m = y, if y is in the row span of m.
std::optional<std::vector<u32>> solve_rows(const Mat& m, const std::vector<u32>& y, const Ring& R);

}  // namespace zcoh
