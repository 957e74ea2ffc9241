#pragma once

#include <map>
#include <memory>

#include "zcoh/module.hpp"

namespace zcoh {

struct Complex;
using ComplexPtr = std::shared_ptr<const Complex>;

// Bounded cochain complex of GModules. d(i+1) o d(i) = 0 is checked at
// construction. Terms outside [lo, hi] are the zero module.
struct Complex {
    Ring ring;
    GroupPtr group;
    int lo = 0, hi = -1;  // hi = lo-1 encodes the empty complex
    std::vector<GModulePtr> terms;
    std::vector<ModuleMap> diffs;  // diffs[k] : term(lo+k) -> term(lo+k+1)

    bool in_range(int i) const { return i >= lo && i <= hi; }
    GModulePtr term(int i) const;
    ModuleMap diff(int i) const;  // zero map outside [lo, hi-1]
    u64 total_size() const;
};

GModulePtr zero_module(const Ring& R, const GroupPtr& g);
ComplexPtr make_complex(Ring R, GroupPtr g, int lo, std::vector<GModulePtr> terms,
                        std::vector<ModuleMap> diffs);
ComplexPtr zero_complex(const Ring& R, const GroupPtr& g);
// single module placed in the given degree
ComplexPtr one_term_complex(const GModulePtr& m, int degree);
ComplexPtr two_term_complex(const ModuleMap& d, int lo_degree);

// --- chain maps and homotopies ----------------------------------------------

struct ChainMap {
    ComplexPtr src, tgt;
    std::map<int, ModuleMap> comps;

    ModuleMap component(int i) const;  // zero map where missing
};
ChainMap make_chain_map(ComplexPtr src, ComplexPtr tgt, std::map<int, ModuleMap> comps);
ChainMap identity_chain_map(const ComplexPtr& x);
ChainMap zero_chain_map(ComplexPtr src, ComplexPtr tgt);
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap chain_map_add(const ChainMap& f, const ChainMap& g);
ChainMap chain_map_sub(const ChainMap& f, const ChainMap& g);
bool chain_map_equal(const ChainMap& f, const ChainMap& g);
ChainMap shift_chain_map(const ChainMap& f, int n, ComplexPtr src_shifted, ComplexPtr tgt_shifted);

// Homotopy witness: to - from = d o s + s o d, checked at construction.
struct Homotopy {
    ChainMap from, to;
    std::map<int, ModuleMap> comps;  // s^i : src term(i) -> tgt term(i-1)

    ModuleMap component(int i) const;
};
Homotopy make_homotopy(const ChainMap& from, const ChainMap& to, std::map<int, ModuleMap> comps);
// Solve for a homotopy witness; nullopt when the two maps are not homotopic.
std::optional<Homotopy> find_homotopy(const ChainMap& from, const ChainMap& to);

// --- translation and truncation ----------------------------------------------

// X[n]^i = X^{n+i}, d[n] = (-1)^n d.
ComplexPtr shift(const ComplexPtr& x, int n);

enum class Trunc { sigma_le, tau_le, sigma_ge, tau_ge };
// For tau truncations the kernel/cokernel term is materialized as a
// subquotient module; the canonical comparison map to/from x is returned.
struct Truncation {
    ComplexPtr cx;
    ChainMap comparison;  // tau_le/sigma_le: cx -> x; tau_ge/sigma_ge: x -> cx
};
Truncation truncate(const ComplexPtr& x, Trunc kind, int i);

// --- direct sums -------------------------------------------------------------

struct SumDecomp {
    GModulePtr sum;
    std::vector<ModuleMap> inc, prj;
};
SumDecomp direct_sum(const std::vector<GModulePtr>& parts, const Ring& R, const GroupPtr& g);

// --- cone ---------------------------------------------------------------------

// Cone(f) = Y + X[1] with differential [[d_Y, f],[0, -d_X]]; the maps of the
// degreewise-split exact sequence 0 -> Y -> Cone(f) -> X[1] -> 0 come along.
struct ConeData {
    ComplexPtr cone;
    ComplexPtr x_shift;  // X[1]
    ChainMap incl;       // Y -> Cone(f)
    ChainMap proj;       // Cone(f) -> X[1]
};
ConeData cone(const ChainMap& f);

// --- hom and tensor complexes -------------------------------------------------

// Total complex with a record of which summand of degree n is which piece.
struct TotalPiece {
    int a;  // grading index of the first argument
    ModuleMap inc, prj;
};
struct TotalComplex {
    ComplexPtr cx;
    std::map<int, std::vector<TotalPiece>> pieces;

    const TotalPiece* piece(int degree, int a) const;
};

// Hom^n(M,N) = +_a Hom(M^a, N^{a+n}); d(f) = d_N o f + (-1)^n f o d_M.
TotalComplex hom_complex(const ComplexPtr& m, const ComplexPtr& n);
// (M (x) L)^n = +_a M^a (x) L^{n-a}; d(m (x) l) = dm (x) l + (-1)^a m (x) dl.
TotalComplex tensor_complex(const ComplexPtr& m, const ComplexPtr& l);

// --- translation isomorphisms (three variants) --------------------------------

// Hom(M,N)[n] ~ Hom(M,N[n]),  f -> f
ChainMap translation_iso_hom(const ComplexPtr& m, const ComplexPtr& n, int nshift);
// (M[n]) (x) L ~ (M (x) L)[n],  m (x) l -> m (x) l
ChainMap translation_iso_tensor_left(const ComplexPtr& m, const ComplexPtr& l, int nshift);
// M (x) (L[n]) ~ (M (x) L)[n],  m (x) l -> (-1)^{n deg(m)} m (x) l
ChainMap translation_iso_tensor_right(const ComplexPtr& m, const ComplexPtr& l, int nshift);

// --- elements of total complexes and adjunction -------------------------------

// Degree-n element of hom_complex(m,n), stored in the total coordinates.
using HomElement = std::vector<u32>;

// d applied to a degree-n element (coordinates of the degree n+1 result).
std::vector<u32> total_diff(const TotalComplex& t, int degree, const std::vector<u32>& elem);

// The two adjunctions of Hom(M (x) L, N):
//   f -> (m -> (l -> f(m (x) l)))            into Hom(M, Hom(L, N))
//   f -> (l -> (m -> (-1)^{deg m deg l} f(m (x) l)))  into Hom(L, Hom(M, N))
struct AdjunctionData {
    TotalComplex hom_ml_n;    // Hom(M (x) L, N)
    TotalComplex hom_l_n;     // Hom(L, N)
    TotalComplex hom_m_n;     // Hom(M, N)
    TotalComplex hom_m_hln;   // Hom(M, Hom(L, N))
    TotalComplex hom_l_hmn;   // Hom(L, Hom(M, N))
    TotalComplex ml;          // M (x) L
};
AdjunctionData adjunction_setup(const ComplexPtr& m, const ComplexPtr& l, const ComplexPtr& n);
std::vector<u32> adjoint_first(const AdjunctionData& d, int degree, const std::vector<u32>& f);
std::vector<u32> adjoint_second(const AdjunctionData& d, int degree, const std::vector<u32>& f);

// chain map from a degree-0 cycle of Hom(X, Y)
ChainMap chain_map_from_hom_cycle(const TotalComplex& hom_xy, const ComplexPtr& x,
                                  const ComplexPtr& y, const std::vector<u32>& f0);

// --- pairings of complexes -----------------------------------------------------

// A collection of per-bidegree pairings X^a (x) Y^b -> Z^{a+b} assembling to a
// chain map X (x) Y -> Z (the compatibility is exactly the Leibniz identity
// mu(dx (x) y) + (-1)^a mu(x (x) dy) = d mu(x (x) y), checked on components).
struct ComplexPairing {
    ComplexPtr x, y, z;
    std::map<std::pair<int, int>, ModuleMap> comp;  // keyed by (a, b)

    ModuleMap component(int a, int b) const;  // zero where missing
};
ComplexPairing make_pairing(ComplexPtr x, ComplexPtr y, ComplexPtr z,
                            std::map<std::pair<int, int>, ModuleMap> comp);
// assemble into a chain map on the given tensor total complex (must be
// tensor_complex(x, y))
ChainMap pairing_chain_map(const ComplexPairing& p, const TotalComplex& xy);

// --- cone cup products -----------------------------------------------------------

// From pairings cupA : A1 (x) A2 -> A3 and cupB : B1 (x) B2 -> B3 compatible
// with f_j : A_j -> B_j (f3 o cupA = cupB o (f1 (x) f2)), the two cup products
// on E_j = Cone(f_j)[-1] and the homotopy witness between them:
//   cup1 - cup0 = d o s + s o d.
struct ConeCupData {
    ComplexPtr e1, e2, e3;
    TotalComplex e1e2;
    ChainMap cup0, cup1;
    Homotopy s;
    ChainMap incl1, incl2, incl3;  // A_j -> E_j would be degree-shifted; these are E_j -> A_j projections
};
ConeCupData cone_cup(const ChainMap& f1, const ChainMap& f2, const ChainMap& f3,
                     const ComplexPairing& cupA, const ComplexPairing& cupB);

// E = Cone(f)[-1] with elements (a, b), a in A^i, b in B^{i-1} and
// d(a,b) = (d_A a, -f(a) - d_B b); the standard comparison maps come along.
struct ShiftedConeData {
    ComplexPtr e;
    ChainMap to_a;    // E -> A, (a,b) -> a
    ChainMap from_b;  // B[-1] -> E, b -> (0, b)
    ComplexPtr b_shift;
    std::map<int, std::pair<TotalPiece, TotalPiece>> parts;  // degree -> (A part, B part)
};
ShiftedConeData shifted_cone(const ChainMap& f);

// --- cohomology and quasi-isomorphisms -------------------------------------------

struct CohomDegree {
    FinAb group;
    std::shared_ptr<const Subquotient> pres;  // ker d^i / im d^{i-1}

    std::vector<u32> class_of(const std::vector<u32>& cycle) const { return pres->project(cycle); }
    std::vector<u32> rep(u32 t) const;
};
CohomDegree cohomology_at(const Complex& x, int i);
std::map<int, FinAb> cohomology(const Complex& x);

struct QuasiIsoReport {
    bool is_quasi_iso = true;
    std::map<int, Mat> induced;         // matrices in class coordinates
    std::map<int, bool> bijective;
    std::map<int, FinAb> src_h, tgt_h;
};
QuasiIsoReport quasi_iso_report(const ChainMap& f);
// restricted to a degree window (for complexes with truncation artifacts at
// the window edges)
QuasiIsoReport quasi_iso_report_window(const ChainMap& f, int lo, int hi);
bool is_quasi_iso(const ChainMap& f);

// --- short exact sequences and the long exact sequence ---------------------------

// 0 -> X' -> X -> X'' -> 0, degreewise exactness checked at construction.
struct ComplexSES {
    ChainMap inc, prj;
};
ComplexSES make_ses(const ChainMap& inc, const ChainMap& prj);

struct LESEntry {
    int degree;
    FinAb h_sub, h_mid, h_quot;
    Mat map_sub_mid, map_mid_quot, connecting;  // connecting: H^i(X'') -> H^{i+1}(X')
};
struct LESReport {
    std::vector<LESEntry> entries;
    bool exact = true;
    std::string detail;  // first failure, if any
};
// Connecting maps computed by the snake construction (lift, d, pull back).
LESReport les_report(const ComplexSES& ses);

// precompose chain map: Hom(X, Z) -> Hom(X', Z) along f : X' -> X
ChainMap hom_precompose_map(const ChainMap& f, const ComplexPtr& z, const TotalComplex& hom_xz,
                            const TotalComplex& hom_x2z);

// second adjoint of a pairing X (x) Y -> Z as a verified chain map
// Y -> Hom(X, Z), y -> (x -> (-1)^{deg x deg y} mu(x (x) y)).
ChainMap pairing_adjoint_second(const ComplexPairing& p, const TotalComplex& hom_xz);

// --- exact triangles and two-out-of-three -----------------------------------------

struct ExactTriangle {
    ComplexPtr x, y, z, x1;  // x1 = X[1]
    ChainMap u, v, w;        // x -> y -> z -> x[1]
};
// exactness of the induced long sequence H(x) -> H(y) -> H(z) -> H(x)[1]
// at every term (automatic for cone triangles; the check that makes
// synthetic triangle data honest)
bool triangle_les_exact(const ExactTriangle& t, std::string* detail = nullptr);

// z := Cone(u) with canonical v, w.
ExactTriangle triangle_of_map(const ChainMap& u);
// the rotated triangle  Cone(u)[-1] -> X -> Y -> Cone(u) (compact-support shape)
ExactTriangle triangle_of_map_rotated(const ChainMap& u);

struct TriangleMorphism {
    ExactTriangle s, t;
    ChainMap fx, fy, fz;
    Homotopy hu, hv, hw;  // square witnesses: t.u o fx ~ fy o s.u etc.
};
// Validates the three squares up to homotopy (witnesses solved for); throws
// MalformedTriangle when a square does not commute up to homotopy.
TriangleMorphism make_triangle_morphism(ExactTriangle s, ExactTriangle t, ChainMap fx, ChainMap fy,
                                        ChainMap fz);

struct TwoOutOfThreeReport {
    bool qx, qy, qz;
    bool two_of_three_holds;  // if two are quasi-isos, so is the third
};
TwoOutOfThreeReport two_out_of_three(const TriangleMorphism& tm);

}  // namespace zcoh
