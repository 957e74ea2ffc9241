#include "zcoh/howell.hpp"

#include <algorithm>

namespace zcoh {

namespace {

// Shared elimination core. Rows have total width `width`; pivots are searched
// only in the first `span_cols` columns. Returns echelon rows (with pivot
// metadata) and leaves in `work` the fully reduced rows whose span part is
// zero (their tail columns carry kernel/transform data).
struct Echelon {
    std::vector<std::vector<u32>> rows;
    std::vector<u32> pivot_col;
    std::vector<u32> pivot_vexp;
};

Echelon eliminate(std::vector<std::vector<u32>>& work, u32 span_cols, u32 width, const Ring& R) {
    Echelon out;
    for (u32 col = 0; col < span_cols; ++col) {
        // pick the working row with minimal valuation in this column
        u32 best = UINT32_MAX, best_v = R.e;
        for (u32 i = 0; i < work.size(); ++i) {
            u32 v = R.val(work[i][col]);
            if (v < best_v) { best_v = v; best = i; }
        }
        if (best == UINT32_MAX) continue;
        std::vector<u32> piv = std::move(work[best]);
        work.erase(work.begin() + best);
        // normalize pivot to p^v
        u32 unit = piv[col] / R.pow_p(best_v);
        u32 uinv = R.inv_unit(unit);
        for (u32 j = 0; j < width; ++j) piv[j] = R.mul(uinv, piv[j]);
        u32 pv = R.pow_p(best_v);
        // eliminate this column from every remaining working row
        for (auto& r : work) {
            if (r[col] == 0) continue;
            u32 q = r[col] / pv;  // exact: val >= best_v
            for (u32 j = col; j < width; ++j) r[j] = R.sub(r[j], R.mul(q, piv[j]));
        }
        // Howell completion: the annihilator multiple keeps the row span
        // closed for membership tests in later columns.
        if (best_v > 0) {
            std::vector<u32> comp(width);
            u32 c = R.pow_p(R.e - best_v);
            for (u32 j = 0; j < width; ++j) comp[j] = R.mul(c, piv[j]);
            bool zero_span = true;
            for (u32 j = 0; j < span_cols; ++j)
                if (comp[j] != 0) { zero_span = false; break; }
            (void)zero_span;
            work.push_back(std::move(comp));
        }
        out.rows.push_back(std::move(piv));
        out.pivot_col.push_back(col);
        out.pivot_vexp.push_back(best_v);
    }
    // drop rows that became zero across the full width
    work.erase(std::remove_if(work.begin(), work.end(),
                              [](const std::vector<u32>& r) { return vec_is_zero(r); }),
               work.end());
    return out;
}

// Reduce entries above each pivot into [0, p^v).
void reduce_upward(Echelon& E, u32 width, const Ring& R) {
    for (u32 i = 0; i < E.rows.size(); ++i) {
        u32 pc = E.pivot_col[i];
        u32 pv = R.pow_p(E.pivot_vexp[i]);
        for (u32 k = 0; k < i; ++k) {
            u32 x = E.rows[k][pc];
            if (x < pv) continue;
            u32 q = x / pv;
            for (u32 j = pc; j < width; ++j)
                E.rows[k][j] = R.sub(E.rows[k][j], R.mul(q, E.rows[i][j]));
        }
    }
}

std::vector<std::vector<u32>> rows_of(const Mat& m) {
    std::vector<std::vector<u32>> out;
    out.reserve(m.rows);
    for (u32 i = 0; i < m.rows; ++i) out.push_back(m.row(i));
    return out;
}

Mat pack(const std::vector<std::vector<u32>>& rows, u32 cols) {
    Mat m(static_cast<u32>(rows.size()), cols);
    for (u32 i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

}  // namespace

HowellForm howell(const Mat& rows, const Ring& R) {
    auto work = rows_of(rows);
    for (auto& r : work)
        for (auto& x : r) x %= R.mod;
    Echelon E = eliminate(work, rows.cols, rows.cols, R);
    reduce_upward(E, rows.cols, R);
    HowellForm H;
    H.h = pack(E.rows, rows.cols);
    H.pivot_col = std::move(E.pivot_col);
    H.pivot_vexp = std::move(E.pivot_vexp);
    return H;
}

u64 HowellForm::span_size(const Ring& R) const {
    u64 s = 1;
    for (u32 v : pivot_vexp) s *= R.pow_p(R.e - v);
    return s;
}

std::vector<u32> howell_reduce(const HowellForm& H, std::vector<u32> v, const Ring& R) {
    for (auto& x : v) x %= R.mod;
    for (u32 i = 0; i < H.nrows(); ++i) {
        u32 pc = H.pivot_col[i];
        u32 pv = R.pow_p(H.pivot_vexp[i]);
        u32 x = v[pc];
        if (x < pv) continue;
        u32 q = x / pv;
        for (u32 j = pc; j < H.h.cols; ++j) v[j] = R.sub(v[j], R.mul(q, H.h.at(i, j)));
    }
    return v;
}

bool howell_member(const HowellForm& H, const std::vector<u32>& v, const Ring& R) {
    return vec_is_zero(howell_reduce(H, v, R));
}

std::optional<std::vector<u32>> howell_express(const HowellForm& H, const std::vector<u32>& v0,
                                               const Ring& R) {
    std::vector<u32> v = v0;
    for (auto& x : v) x %= R.mod;
    std::vector<u32> c(H.nrows(), 0);
    for (u32 i = 0; i < H.nrows(); ++i) {
        u32 pc = H.pivot_col[i];
        u32 pv = R.pow_p(H.pivot_vexp[i]);
        u32 x = v[pc];
        if (x == 0) continue;
        if (x % pv != 0) return std::nullopt;
        u32 q = x / pv;
        c[i] = q % R.mod;
        for (u32 j = pc; j < H.h.cols; ++j) v[j] = R.sub(v[j], R.mul(q, H.h.at(i, j)));
    }
    if (!vec_is_zero(v)) return std::nullopt;
    return c;
}

Mat kernel_rows(const Mat& m, const Ring& R) {
    u32 n = m.rows, width = m.cols + n;
    std::vector<std::vector<u32>> work;
    work.reserve(n);
    for (u32 i = 0; i < n; ++i) {
        std::vector<u32> r(width, 0);
        for (u32 j = 0; j < m.cols; ++j) r[j] = m.at(i, j) % R.mod;
        r[m.cols + i] = 1;
        work.push_back(std::move(r));
    }
    eliminate(work, m.cols, width, R);
    // leftover working rows have zero span part; tails generate the kernel
    Mat K(static_cast<u32>(work.size()), n);
    for (u32 i = 0; i < work.size(); ++i)
        for (u32 j = 0; j < n; ++j) K.at(i, j) = work[i][m.cols + j];
    return K;
}

std::optional<std::vector<u32>> solve_rows(const Mat& m, const std::vector<u32>& y, const Ring& R) {
    u32 n = m.rows, width = m.cols + n;
    std::vector<std::vector<u32>> work;
    work.reserve(n);
    for (u32 i = 0; i < n; ++i) {
        std::vector<u32> r(width, 0);
        for (u32 j = 0; j < m.cols; ++j) r[j] = m.at(i, j) % R.mod;
        r[m.cols + i] = 1;
        work.push_back(std::move(r));
    }
    Echelon E = eliminate(work, m.cols, width, R);
    std::vector<u32> v = y;
    for (auto& x : v) x %= R.mod;
    std::vector<u32> sol(n, 0);
    for (u32 i = 0; i < E.rows.size(); ++i) {
        u32 pc = E.pivot_col[i];
        u32 pv = R.pow_p(E.pivot_vexp[i]);
        u32 x = v[pc];
        if (x == 0) continue;
        if (x % pv != 0) return std::nullopt;
        u32 q = x / pv;
        for (u32 j = pc; j < m.cols; ++j) v[j] = R.sub(v[j], R.mul(q, E.rows[i][j]));
        for (u32 j = 0; j < n; ++j) sol[j] = R.add(sol[j], R.mul(q, E.rows[i][m.cols + j]));
    }
    if (!vec_is_zero(v)) return std::nullopt;
    return sol;
}

}  // namespace zcoh
