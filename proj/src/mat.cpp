#include "zcoh/mat.hpp"

#include <algorithm>

#include "zcoh/errors.hpp"

namespace zcoh {

Mat::Mat(std::initializer_list<std::initializer_list<int>> rws, const Ring& R) {
    rows = static_cast<u32>(rws.size());
    cols = rows ? static_cast<u32>(rws.begin()->size()) : 0;
    a.assign(size_t(rows) * cols, 0);
    u32 i = 0;
    for (const auto& r : rws) {
        check(r.size() == cols, "Mat: ragged initializer");
        u32 j = 0;
        for (int x : r) {
            long long v = x % static_cast<long long>(R.mod);
            if (v < 0) v += R.mod;
            at(i, j) = static_cast<u32>(v);
            ++j;
        }
        ++i;
    }
}

Mat Mat::identity(u32 n) {
    Mat m(n, n);
    for (u32 i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool Mat::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](u32 x) { return x == 0; });
}

Mat Mat::transpose() const {
    Mat t(cols, rows);
    for (u32 i = 0; i < rows; ++i)
        for (u32 j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

std::vector<u32> Mat::row(u32 i) const {
    return std::vector<u32>(a.begin() + size_t(i) * cols, a.begin() + size_t(i + 1) * cols);
}

void Mat::set_row(u32 i, const std::vector<u32>& v) {
    check(v.size() == cols, "set_row: size mismatch");
    std::copy(v.begin(), v.end(), a.begin() + size_t(i) * cols);
}

Mat mat_mul(const Mat& A, const Mat& B, const Ring& R) {
    check(A.cols == B.rows, "mat_mul: shape mismatch");
    Mat C(A.rows, B.cols);
    for (u32 i = 0; i < A.rows; ++i) {
        for (u32 k = 0; k < A.cols; ++k) {
            u64 av = A.at(i, k);
            if (av == 0) continue;
            const u32* brow = &B.a[size_t(k) * B.cols];
            u32* crow = &C.a[size_t(i) * C.cols];
            for (u32 j = 0; j < B.cols; ++j) {
                crow[j] = static_cast<u32>((crow[j] + av * brow[j]) % R.mod);
            }
        }
    }
    return C;
}

Mat mat_add(const Mat& A, const Mat& B, const Ring& R) {
    check(A.rows == B.rows && A.cols == B.cols, "mat_add: shape mismatch");
    Mat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = R.add(A.a[i], B.a[i]);
    return C;
}

Mat mat_sub(const Mat& A, const Mat& B, const Ring& R) {
    check(A.rows == B.rows && A.cols == B.cols, "mat_sub: shape mismatch");
    Mat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = R.sub(A.a[i], B.a[i]);
    return C;
}

Mat mat_scale(u32 c, const Mat& A, const Ring& R) {
    Mat C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = R.mul(c, A.a[i]);
    return C;
}

Mat mat_kron(const Mat& A, const Mat& B, const Ring& R) {
    Mat C(A.rows * B.rows, A.cols * B.cols);
    for (u32 i = 0; i < A.rows; ++i)
        for (u32 j = 0; j < A.cols; ++j) {
            u32 v = A.at(i, j);
            if (v == 0) continue;
            for (u32 k = 0; k < B.rows; ++k)
                for (u32 l = 0; l < B.cols; ++l)
                    C.at(i * B.rows + k, j * B.cols + l) = R.mul(v, B.at(k, l));
        }
    return C;
}

std::vector<u32> mat_apply(const Mat& A, const std::vector<u32>& x, const Ring& R) {
    check(A.cols == x.size(), "mat_apply: shape mismatch");
    std::vector<u32> y(A.rows, 0);
    for (u32 i = 0; i < A.rows; ++i) {
        u64 acc = 0;
        const u32* arow = &A.a[size_t(i) * A.cols];
        for (u32 j = 0; j < A.cols; ++j) acc += u64(arow[j]) * x[j] % R.mod;
        y[i] = static_cast<u32>(acc % R.mod);
    }
    return y;
}

std::vector<u32> row_times_mat(const std::vector<u32>& x, const Mat& A, const Ring& R) {
    check(A.rows == x.size(), "row_times_mat: shape mismatch");
    std::vector<u32> y(A.cols, 0);
    for (u32 i = 0; i < A.rows; ++i) {
        u64 xv = x[i];
        if (xv == 0) continue;
        const u32* arow = &A.a[size_t(i) * A.cols];
        for (u32 j = 0; j < A.cols; ++j) y[j] = static_cast<u32>((y[j] + xv * arow[j]) % R.mod);
    }
    return y;
}

std::vector<u32> vec_add(const std::vector<u32>& x, const std::vector<u32>& y, const Ring& R) {
    check(x.size() == y.size(), "vec_add: size mismatch");
    std::vector<u32> z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = R.add(x[i], y[i]);
    return z;
}

std::vector<u32> vec_sub(const std::vector<u32>& x, const std::vector<u32>& y, const Ring& R) {
    check(x.size() == y.size(), "vec_sub: size mismatch");
    std::vector<u32> z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = R.sub(x[i], y[i]);
    return z;
}

std::vector<u32> vec_scale(u32 c, const std::vector<u32>& x, const Ring& R) {
    std::vector<u32> z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = R.mul(c, x[i]);
    return z;
}

bool vec_is_zero(const std::vector<u32>& x) {
    return std::all_of(x.begin(), x.end(), [](u32 v) { return v == 0; });
}

Mat mat_vstack(const Mat& A, const Mat& B) {
    check(A.cols == B.cols || A.rows == 0 || B.rows == 0, "mat_vstack: column mismatch");
    u32 cols = A.rows ? A.cols : B.cols;
    Mat C(A.rows + B.rows, cols);
    std::copy(A.a.begin(), A.a.end(), C.a.begin());
    std::copy(B.a.begin(), B.a.end(), C.a.begin() + A.a.size());
    return C;
}

}  // namespace zcoh
