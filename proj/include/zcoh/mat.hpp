#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "zcoh/ring.hpp"

namespace zcoh {

// Dense matrix over Z/p^e, row-major. Two conventions coexist in the engine
// and are kept strictly apart by context:
//   * spans: rows of a Mat are vectors (Howell forms, kernels, generators);
//   * maps:  a module map M -> N is a (rank N) x (rank M) matrix acting on
//     column vectors, y = A*x; composition g after f is gmat * fmat.
struct Mat {
    u32 rows = 0, cols = 0;
    std::vector<u32> a;

    Mat() = default;
    Mat(u32 r, u32 c) : rows(r), cols(c), a(size_t(r) * c, 0) {}
    Mat(std::initializer_list<std::initializer_list<int>> rws, const Ring& R);

    u32& at(u32 i, u32 j) { return a[size_t(i) * cols + j]; }
    u32 at(u32 i, u32 j) const { return a[size_t(i) * cols + j]; }

    bool operator==(const Mat&) const = default;

    static Mat identity(u32 n);
    static Mat zero(u32 r, u32 c) { return Mat(r, c); }

    bool is_zero() const;

    Mat transpose() const;
    std::vector<u32> row(u32 i) const;
    void set_row(u32 i, const std::vector<u32>& v);
};

Mat mat_mul(const Mat& A, const Mat& B, const Ring& R);
Mat mat_add(const Mat& A, const Mat& B, const Ring& R);
Mat mat_sub(const Mat& A, const Mat& B, const Ring& R);
Mat mat_scale(u32 c, const Mat& A, const Ring& R);
// Kronecker product: (A (x) B)[(i*Br+k),(j*Bc+l)] = A[i,j]*B[k,l].
Mat mat_kron(const Mat& A, const Mat& B, const Ring& R);
std::vector<u32> mat_apply(const Mat& A, const std::vector<u32>& x, const Ring& R);      // A*x
std::vector<u32> row_times_mat(const std::vector<u32>& x, const Mat& A, const Ring& R);  // x*A

std::vector<u32> vec_add(const std::vector<u32>& x, const std::vector<u32>& y, const Ring& R);
std::vector<u32> vec_sub(const std::vector<u32>& x, const std::vector<u32>& y, const Ring& R);
std::vector<u32> vec_scale(u32 c, const std::vector<u32>& x, const Ring& R);
bool vec_is_zero(const std::vector<u32>& x);

// Stack B below A (same column count).
Mat mat_vstack(const Mat& A, const Mat& B);

}  // namespace zcoh
