#include "zcoh/finab.hpp"

#include <algorithm>

namespace zcoh {

u64 Orders::size(const Ring& R) const {
    u64 s = 1;
    for (u32 a : exp) s *= R.pow_p(a);
    return s;
}

Orders Orders::concat(const Orders& a, const Orders& b) {
    Orders o = a;
    o.exp.insert(o.exp.end(), b.exp.begin(), b.exp.end());
    return o;
}

std::vector<u32> Orders::canon(std::vector<u32> v, const Ring& R) const {
    check(v.size() == exp.size(), "Orders::canon: rank mismatch");
    for (u32 i = 0; i < v.size(); ++i) v[i] %= R.pow_p(exp[i]);
    return v;
}

Mat Orders::relation_rows(const Ring& R) const {
    Mat m(rank(), rank());
    for (u32 i = 0; i < rank(); ++i) m.at(i, i) = R.pow_p(exp[i]) % R.mod;
    return m;
}

u64 FinAb::size(const Ring& R) const {
    u64 s = 1;
    for (u32 a : inv) s *= R.pow_p(a);
    return s;
}

std::string FinAb::str(const Ring& R) const {
    if (inv.empty()) return "0";
    std::string s;
    for (u32 i = 0; i < inv.size(); ++i) {
        if (i) s += " + ";
        s += "Z/" + std::to_string(R.pow_p(inv[i]));
    }
    return s;
}

FinAb FinAb::of(std::vector<u32> exps) {
    exps.erase(std::remove(exps.begin(), exps.end(), 0u), exps.end());
    std::sort(exps.begin(), exps.end());
    return FinAb{std::move(exps)};
}

SnfLocal snf_local(const Mat& D0, const Ring& R) {
    Mat D = D0;
    u32 n = D.rows, k = D.cols;
    SnfLocal res;
    res.V = Mat::identity(k);
    res.Vinv = Mat::identity(k);
    res.w.assign(k, R.e);

    auto swap_rows = [&](u32 a, u32 b) {
        if (a == b) return;
        for (u32 j = 0; j < k; ++j) std::swap(D.at(a, j), D.at(b, j));
    };
    auto swap_cols = [&](u32 a, u32 b) {
        if (a == b) return;
        for (u32 i = 0; i < n; ++i) std::swap(D.at(i, a), D.at(i, b));
        for (u32 i = 0; i < k; ++i) std::swap(res.V.at(i, a), res.V.at(i, b));
        for (u32 j = 0; j < k; ++j) std::swap(res.Vinv.at(a, j), res.Vinv.at(b, j));
    };

    u32 t = 0;
    for (; t < k && t < n; ++t) {
        u32 bi = UINT32_MAX, bj = 0, bv = R.e;
        for (u32 i = t; i < n; ++i)
            for (u32 j = t; j < k; ++j) {
                u32 v = R.val(D.at(i, j));
                if (v < bv) { bv = v; bi = i; bj = j; }
            }
        if (bi == UINT32_MAX) break;  // remaining block is zero mod p^e
        swap_rows(bi, t);
        swap_cols(bj, t);
        u32 pv = R.pow_p(bv);
        u32 uinv = R.inv_unit(D.at(t, t) / pv);
        for (u32 j = t; j < k; ++j) D.at(t, j) = R.mul(uinv, D.at(t, j));
        // clear the pivot column with row ops (untracked)
        for (u32 i = 0; i < n; ++i) {
            if (i == t || D.at(i, t) == 0) continue;
            u32 q = D.at(i, t) / pv;
            for (u32 j = t; j < k; ++j) D.at(i, j) = R.sub(D.at(i, j), R.mul(q, D.at(t, j)));
        }
        // clear the pivot row with column ops (tracked in V, Vinv)
        for (u32 j = 0; j < k; ++j) {
            if (j == t || D.at(t, j) == 0) continue;
            u32 q = D.at(t, j) / pv;
            for (u32 i = 0; i < n; ++i) D.at(i, j) = R.sub(D.at(i, j), R.mul(q, D.at(i, t)));
            for (u32 i = 0; i < k; ++i)
                res.V.at(i, j) = R.sub(res.V.at(i, j), R.mul(q, res.V.at(i, t)));
            for (u32 c = 0; c < k; ++c)
                res.Vinv.at(t, c) = R.add(res.Vinv.at(t, c), R.mul(q, res.Vinv.at(j, c)));
        }
        res.w[t] = bv;
    }
    return res;
}

HowellForm module_span(const Mat& gens, const Orders& ambient, const Ring& R) {
    return howell(mat_vstack(gens, ambient.relation_rows(R)), R);
}

Subquotient::Subquotient(const Mat& gens, const Orders& ambient, const Mat& sub, const Ring& R)
    : R_(R), ambient_(ambient) {
    check(gens.rows == 0 || gens.cols == ambient.rank(), "Subquotient: gens width mismatch");
    check(sub.rows == 0 || sub.cols == ambient.rank(), "Subquotient: sub width mismatch");
    big_ = module_span(gens, ambient, R);
    u32 k = big_.nrows();
    // sub generators and ambient relations expressed in Howell coordinates
    Mat rel = ambient.relation_rows(R);
    Mat C(sub.rows + rel.rows, k);
    for (u32 i = 0; i < sub.rows; ++i) {
        auto c = howell_express(big_, sub.row(i), R);
        if (!c)
            throw NotASubgroup("subquotient: generator row " + std::to_string(i) +
                               " is not in the span of gens");
        C.set_row(i, *c);
    }
    for (u32 i = 0; i < rel.rows; ++i) {
        auto c = howell_express(big_, rel.row(i), R);
        check(c.has_value(), "subquotient: relation row escaped the span");
        C.set_row(sub.rows + i, *c);
    }
    // Coefficient relations: {c : c * H = 0}. Not just diag(p^{e-v}) --
    // annihilator multiples of a Howell row land in the span of later rows.
    Mat modrows = kernel_rows(big_.h, R);
    SnfLocal s = snf_local(mat_vstack(C, modrows), R);
    V_ = s.V;
    w_ = s.w;
    for (u32 j = 0; j < k; ++j)
        if (w_[j] > 0) keep_.push_back(j);
    std::vector<u32> inv;
    for (u32 j : keep_) inv.push_back(w_[j]);
    group_ = FinAb{inv};  // ascending by construction of snf_local
    coords_ = Orders{inv};
    Mat full = mat_mul(s.Vinv, big_.h, R);
    sub_ = module_span(sub, ambient, R);
    reps_ = Mat(static_cast<u32>(keep_.size()), ambient.rank());
    for (u32 r = 0; r < keep_.size(); ++r) {
        // canonical (coordinatewise minimal) representative of the class
        auto v = ambient_.canon(howell_reduce(sub_, full.row(keep_[r]), R), R);
        reps_.set_row(r, v);
    }
}

std::vector<u32> Subquotient::project(const std::vector<u32>& v) const {
    auto c = howell_express(big_, v, R_);
    check(c.has_value(), "Subquotient::project: vector not in span");
    auto x = row_times_mat(*c, V_, R_);
    std::vector<u32> cls(keep_.size());
    for (u32 r = 0; r < keep_.size(); ++r) cls[r] = x[keep_[r]] % R_.pow_p(w_[keep_[r]]);
    return cls;
}

std::vector<u32> Subquotient::lift(const std::vector<u32>& q) const {
    check(q.size() == keep_.size(), "Subquotient::lift: rank mismatch");
    std::vector<u32> v(ambient_.rank(), 0);
    for (u32 r = 0; r < keep_.size(); ++r)
        v = vec_add(v, vec_scale(q[r], reps_.row(r), R_), R_);
    return ambient_.canon(v, R_);
}

FinAb subquotient_invariants(const Mat& gens, const Orders& ambient, const Mat& sub,
                             const Ring& R) {
    return Subquotient(gens, ambient, sub, R).group();
}

u64 span_order(const Mat& gens, const Orders& ambient, const Ring& R) {
    u64 big = module_span(gens, ambient, R).span_size(R);
    u64 rel = 1;
    for (u32 a : ambient.exp) rel *= R.pow_p(R.e - a);
    return big / rel;
}

void check_order_congruences(const Mat& f, const Orders& src, const Orders& tgt, const Ring& R) {
    check(f.rows == tgt.rank() && f.cols == src.rank(), "map shape mismatch");
    for (u32 i = 0; i < f.rows; ++i)
        for (u32 j = 0; j < f.cols; ++j) {
            u64 lhs = (u64(R.pow_p(src.exp[j])) * f.at(i, j)) % R.pow_p(tgt.exp[i]);
            if (lhs != 0)
                throw OrderMismatch("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") = " + std::to_string(f.at(i, j)) +
                                    " violates p^" + std::to_string(src.exp[j]) + " * f = 0 mod p^" +
                                    std::to_string(tgt.exp[i]));
        }
}

static Mat scaled_row_form(const Mat& f, const Orders& tgt, const Ring& R) {
    // rows indexed by source generators, columns by target coordinates,
    // scaled so that x * C = 0 over Z/p^e matches f(x) = 0 in the module
    Mat C(f.cols, f.rows);
    for (u32 i = 0; i < f.rows; ++i) {
        u32 s = R.pow_p(R.e - tgt.exp[i]);
        for (u32 j = 0; j < f.cols; ++j) C.at(j, i) = R.mul(s, f.at(i, j));
    }
    return C;
}

Mat kernel_of_map(const Mat& f, const Orders& src, const Orders& tgt, const Ring& R) {
    check_order_congruences(f, src, tgt, R);
    Mat K = kernel_rows(scaled_row_form(f, tgt, R), R);
    for (u32 i = 0; i < K.rows; ++i) K.set_row(i, src.canon(K.row(i), R));
    return K;
}

std::optional<std::vector<u32>> solve_map(const Mat& f, const Orders& src, const Orders& tgt,
                                          const std::vector<u32>& y, const Ring& R) {
    check_order_congruences(f, src, tgt, R);
    std::vector<u32> ys(y.size());
    for (u32 i = 0; i < y.size(); ++i) ys[i] = R.mul(R.pow_p(R.e - tgt.exp[i]), y[i]);
    auto x = solve_rows(scaled_row_form(f, tgt, R), ys, R);
    if (!x) return std::nullopt;
    return src.canon(*x, R);
}

}  // namespace zcoh
