#include "zcoh/module.hpp"

#include <algorithm>

namespace zcoh {

namespace {

// canonical form of a map matrix: row i reduced mod p^{tgt exp i}
Mat canon_matrix(Mat m, const Orders& tgt, const Ring& R) {
    for (u32 i = 0; i < m.rows; ++i) {
        u32 q = R.pow_p(tgt.exp[i]);
        for (u32 j = 0; j < m.cols; ++j) m.at(i, j) %= q;
    }
    return m;
}

}  // namespace

GModulePtr make_gmodule(Ring R, Orders o, GroupPtr g, std::vector<Mat> act,
                        std::optional<LambdaAction> lambda) {
    check(act.size() == g->n, "gmodule: need one action matrix per group element");
    for (u32 e : o.exp)
        check(e >= 1 && e <= R.e, "gmodule: summand exponent out of range");
    for (auto& a : act) {
        check(a.rows == o.rank() && a.cols == o.rank(), "gmodule: action matrix shape");
        a = canon_matrix(a, o, R);
        check_order_congruences(a, o, o, R);
    }
    if (!(act[0] == Mat::identity(o.rank())))
        throw ValidationError("gmodule: action of the identity is not the identity matrix");
    for (u32 x = 0; x < g->n; ++x)
        for (u32 y = 0; y < g->n; ++y) {
            Mat lhs = canon_matrix(mat_mul(act[x], act[y], R), o, R);
            if (!(lhs == act[g->mul(x, y)]))
                throw ValidationError("gmodule: action(" + std::to_string(x) + ")*action(" +
                                      std::to_string(y) + ") != action(xy)");
        }
    if (lambda) {
        check(lambda->left.size() == lambda->quot->n && lambda->right.size() == lambda->quot->n,
              "gmodule: lambda action tables must cover the quotient group");
        for (auto& a : lambda->left) a = canon_matrix(a, o, R);
        for (auto& a : lambda->right) a = canon_matrix(a, o, R);
    }
    GModule m{std::move(R), std::move(o), std::move(g), std::move(act), std::move(lambda)};
    return std::make_shared<GModule>(std::move(m));
}

GModulePtr trivial_module(Ring R, Orders o, GroupPtr g) {
    std::vector<Mat> act(g->n, Mat::identity(o.rank()));
    return make_gmodule(R, std::move(o), std::move(g), std::move(act));
}

GModulePtr regular_module(Ring R, const GroupPtr& g) {
    Orders o = Orders::free(g->n, R);
    std::vector<Mat> act;
    act.reserve(g->n);
    for (u32 x = 0; x < g->n; ++x) {
        Mat m(g->n, g->n);
        for (u32 y = 0; y < g->n; ++y) m.at(g->mul(x, y), y) = 1;
        act.push_back(std::move(m));
    }
    return make_gmodule(R, std::move(o), g, std::move(act));
}

GModulePtr restrict_module(const GModulePtr& m, const GroupHom& phi) {
    check(phi.dst == m->group || phi.dst->table == m->group->table,
          "restrict_module: hom target is not the module's group");
    std::vector<Mat> act;
    act.reserve(phi.src->n);
    for (u32 h = 0; h < phi.src->n; ++h) act.push_back(m->act[phi(h)]);
    return make_gmodule(m->ring, m->orders, phi.src, std::move(act), m->lambda);
}

ModuleMap make_map(GModulePtr src, GModulePtr tgt, Mat m, bool check_equivariance) {
    check(src->ring == tgt->ring, "map: ring mismatch");
    const Ring& R = src->ring;
    m = canon_matrix(std::move(m), tgt->orders, R);
    check_order_congruences(m, src->orders, tgt->orders, R);
    if (check_equivariance) {
        check(src->group->n == tgt->group->n && src->group->table == tgt->group->table,
              "map: group mismatch");
        for (u32 g = 0; g < src->group->n; ++g) {
            Mat lhs = canon_matrix(mat_mul(tgt->act[g], m, R), tgt->orders, R);
            Mat rhs = canon_matrix(mat_mul(m, src->act[g], R), tgt->orders, R);
            if (!(lhs == rhs))
                throw ValidationError("map does not commute with the action of element " +
                                      std::to_string(g));
        }
    }
    return ModuleMap{std::move(src), std::move(tgt), std::move(m)};
}

ModuleMap identity_map(const GModulePtr& m) {
    return ModuleMap{m, m, Mat::identity(m->rank())};
}

ModuleMap zero_map(GModulePtr src, GModulePtr tgt) {
    Mat z(tgt->rank(), src->rank());
    return ModuleMap{std::move(src), std::move(tgt), std::move(z)};
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
    check(g.src->orders == f.tgt->orders, "compose: middle module mismatch");
    Mat m = canon_matrix(mat_mul(g.m, f.m, f.src->ring), g.tgt->orders, f.src->ring);
    return ModuleMap{f.src, g.tgt, std::move(m)};
}

ModuleMap map_add(const ModuleMap& f, const ModuleMap& g) {
    Mat m = canon_matrix(mat_add(f.m, g.m, f.src->ring), f.tgt->orders, f.src->ring);
    return ModuleMap{f.src, f.tgt, std::move(m)};
}

ModuleMap map_scale(u32 c, const ModuleMap& f) {
    Mat m = canon_matrix(mat_scale(c, f.m, f.src->ring), f.tgt->orders, f.src->ring);
    return ModuleMap{f.src, f.tgt, std::move(m)};
}

bool is_bijective(const ModuleMap& f) {
    const Ring& R = f.src->ring;
    if (f.src->size() != f.tgt->size()) return false;
    Mat K = kernel_of_map(f.m, f.src->orders, f.tgt->orders, R);
    return span_order(K, f.src->orders, R) == 1;
}

Character make_character(GroupPtr g, std::vector<u32> values, const Ring& R) {
    check(values.size() == g->n, "character: need one value per element");
    for (auto& v : values) {
        v %= R.mod;
        if (!R.is_unit(v)) throw ValidationError("character value is not a unit");
    }
    for (u32 a = 0; a < g->n; ++a)
        for (u32 b = 0; b < g->n; ++b)
            if (values[g->mul(a, b)] != R.mul(values[a], values[b]))
                throw ValidationError("character is not multiplicative at (" + std::to_string(a) +
                                      "," + std::to_string(b) + ")");
    return Character{std::move(g), std::move(values)};
}

Character trivial_character(GroupPtr g) {
    return Character{g, std::vector<u32>(g->n, 1)};
}

Character inverse_character(const Character& chi, const Ring& R) {
    std::vector<u32> v(chi.values.size());
    for (u32 i = 0; i < v.size(); ++i) v[i] = R.inv_unit(chi.values[i]);
    return Character{chi.group, std::move(v)};
}

GModulePtr twist_by_character(const GModulePtr& m, const Character& chi) {
    check(chi.group->table == m->group->table, "twist: character group mismatch");
    std::vector<Mat> act;
    act.reserve(m->group->n);
    for (u32 g = 0; g < m->group->n; ++g) act.push_back(mat_scale(chi(g), m->act[g], m->ring));
    return make_gmodule(m->ring, m->orders, m->group, std::move(act), m->lambda);
}

GModulePtr iota_twist(const GModulePtr& m) {
    if (!m->lambda) throw NoLambdaAction("module carries no group-algebra level action");
    const auto& lam = *m->lambda;
    LambdaAction tw{lam.quot, {}, {}};
    tw.left.reserve(lam.quot->n);
    tw.right.reserve(lam.quot->n);
    for (u32 q = 0; q < lam.quot->n; ++q) {
        tw.left.push_back(lam.right[lam.quot->inverse(q)]);
        tw.right.push_back(lam.left[lam.quot->inverse(q)]);
    }
    return make_gmodule(m->ring, m->orders, m->group, m->act, std::move(tw));
}

Mat dual_matrix(const Mat& f, const Orders& src, const Orders& tgt, const Ring& R) {
    Mat d(src.rank(), tgt.rank());
    for (u32 i = 0; i < tgt.rank(); ++i)
        for (u32 j = 0; j < src.rank(); ++j) {
            u32 x = f.at(i, j);
            u32 a = src.exp[j], b = tgt.exp[i];
            u32 v;
            if (a >= b) {
                v = R.mul(x, R.pow_p(a - b));
            } else {
                u32 q = R.pow_p(b - a);
                check(x % q == 0, "dual_matrix: entry not divisible (order congruence violated)");
                v = x / q;
            }
            d.at(j, i) = v % R.pow_p(a);
        }
    return d;
}

DualData pontryagin_dual(const GModulePtr& m) {
    const Ring& R = m->ring;
    std::vector<Mat> act;
    act.reserve(m->group->n);
    for (u32 g = 0; g < m->group->n; ++g)
        act.push_back(dual_matrix(m->act[m->group->inverse(g)], m->orders, m->orders, R));
    std::optional<LambdaAction> lam;
    if (m->lambda) {
        // dualizing swaps the two group-algebra level actions
        LambdaAction l{m->lambda->quot, {}, {}};
        for (u32 q = 0; q < l.quot->n; ++q) {
            l.left.push_back(dual_matrix(m->lambda->right[q], m->orders, m->orders, R));
            l.right.push_back(dual_matrix(m->lambda->left[q], m->orders, m->orders, R));
        }
        lam = std::move(l);
    }
    GModulePtr dual = make_gmodule(R, m->orders, m->group, std::move(act), std::move(lam));
    // evaluation pairing M^vee (x) M -> R with trivial action
    GModulePtr ten = tensor_mod(dual, m);
    GModulePtr unit = trivial_module(R, Orders::free(1, R), m->group);
    Mat ev(1, ten->rank());
    u32 r = m->rank();
    for (u32 i = 0; i < r; ++i)
        ev.at(0, pair_index(i, i, r)) = R.pow_p(R.e - m->orders.exp[i]);
    ModuleMap pairing = make_map(ten, unit, std::move(ev));
    return DualData{std::move(dual), std::move(pairing)};
}

ModuleMap dual_map(const ModuleMap& f, const GModulePtr& dual_tgt, const GModulePtr& dual_src) {
    Mat d = dual_matrix(f.m, f.src->orders, f.tgt->orders, f.src->ring);
    return make_map(dual_tgt, dual_src, std::move(d));
}

ModuleMap double_dual_map(const GModulePtr& m, const GModulePtr& ddual) {
    return make_map(m, ddual, Mat::identity(m->rank()));
}

u32 pair_index(u32 i, u32 j, u32 rank_b) { return i * rank_b + j; }

GModulePtr tensor_mod(const GModulePtr& a, const GModulePtr& b) {
    check(a->ring == b->ring, "tensor: ring mismatch");
    check(a->group->table == b->group->table, "tensor: group mismatch");
    const Ring& R = a->ring;
    Orders o;
    for (u32 i = 0; i < a->rank(); ++i)
        for (u32 j = 0; j < b->rank(); ++j)
            o.exp.push_back(std::min(a->orders.exp[i], b->orders.exp[j]));
    std::vector<Mat> act;
    act.reserve(a->group->n);
    for (u32 g = 0; g < a->group->n; ++g) act.push_back(mat_kron(a->act[g], b->act[g], R));
    return make_gmodule(R, std::move(o), a->group, std::move(act));
}

std::vector<u32> tensor_elem(const GModulePtr& a, const GModulePtr& b,
                             const std::vector<u32>& x, const std::vector<u32>& y) {
    const Ring& R = a->ring;
    std::vector<u32> t(size_t(a->rank()) * b->rank());
    for (u32 i = 0; i < a->rank(); ++i)
        for (u32 j = 0; j < b->rank(); ++j)
            t[pair_index(i, j, b->rank())] =
                R.mul(x[i], y[j]) % R.pow_p(std::min(a->orders.exp[i], b->orders.exp[j]));
    return t;
}

Mat tensor_matrix(const Mat& f, const Mat& g, const Orders& sa, const Orders& sb,
                  const Orders& ta, const Orders& tb, const Ring& R) {
    (void)sa;
    (void)sb;
    Mat k = mat_kron(f, g, R);
    Orders to;
    for (u32 i = 0; i < ta.rank(); ++i)
        for (u32 j = 0; j < tb.rank(); ++j) to.exp.push_back(std::min(ta.exp[i], tb.exp[j]));
    return canon_matrix(std::move(k), to, R);
}

Mat hom_transport(const GModulePtr& a, const GModulePtr& b, const GModulePtr& a2,
                  const GModulePtr& b2, const Mat& u, const Mat& v) {
    const Ring& R = a->ring;
    u32 ra = a->rank(), rb = b->rank(), ra2 = a2->rank(), rb2 = b2->rank();
    Mat out(ra2 * rb2, ra * rb);
    for (u32 i = 0; i < ra; ++i)
        for (u32 j = 0; j < rb; ++j) {
            // phi for the basis hom e_{(i,j)}: e_i -> p^{b_j - m_ij} e_j
            u32 m_ij = std::min(a->orders.exp[i], b->orders.exp[j]);
            Mat phi(rb, ra);
            phi.at(j, i) = R.pow_p(b->orders.exp[j] - m_ij);
            Mat comp = mat_mul(v, mat_mul(phi, u, R), R);
            for (u32 ii = 0; ii < ra2; ++ii)
                for (u32 jj = 0; jj < rb2; ++jj) {
                    u32 m2 = std::min(a2->orders.exp[ii], b2->orders.exp[jj]);
                    u32 div = R.pow_p(b2->orders.exp[jj] - m2);
                    u32 x = comp.at(jj, ii) % R.pow_p(b2->orders.exp[jj]);
                    check(x % div == 0, "hom transport: inexact division");
                    out.at(pair_index(ii, jj, rb2), pair_index(i, j, rb)) = (x / div) % R.pow_p(m2);
                }
        }
    return out;
}

GModulePtr hom_mod(const GModulePtr& a, const GModulePtr& b) {
    check(a->ring == b->ring, "hom: ring mismatch");
    check(a->group->table == b->group->table, "hom: group mismatch");
    const Ring& R = a->ring;
    Orders o;
    for (u32 i = 0; i < a->rank(); ++i)
        for (u32 j = 0; j < b->rank(); ++j)
            o.exp.push_back(std::min(a->orders.exp[i], b->orders.exp[j]));
    std::vector<Mat> act;
    act.reserve(a->group->n);
    for (u32 g = 0; g < a->group->n; ++g)
        act.push_back(hom_transport(a, b, a, b, a->act[a->group->inverse(g)], b->act[g]));
    return make_gmodule(R, std::move(o), a->group, std::move(act));
}

Mat hom_coords_to_matrix(const GModulePtr& a, const GModulePtr& b, const std::vector<u32>& c) {
    const Ring& R = a->ring;
    u32 ra = a->rank(), rb = b->rank();
    Mat f(rb, ra);
    for (u32 i = 0; i < ra; ++i)
        for (u32 j = 0; j < rb; ++j) {
            u32 m_ij = std::min(a->orders.exp[i], b->orders.exp[j]);
            u32 coef = R.mul(c[pair_index(i, j, rb)], R.pow_p(b->orders.exp[j] - m_ij));
            f.at(j, i) = R.add(f.at(j, i), coef) % R.pow_p(b->orders.exp[j]);
        }
    return f;
}

std::vector<u32> hom_matrix_to_coords(const GModulePtr& a, const GModulePtr& b, const Mat& f) {
    const Ring& R = a->ring;
    u32 ra = a->rank(), rb = b->rank();
    std::vector<u32> c(size_t(ra) * rb);
    for (u32 i = 0; i < ra; ++i)
        for (u32 j = 0; j < rb; ++j) {
            u32 m_ij = std::min(a->orders.exp[i], b->orders.exp[j]);
            u32 div = R.pow_p(b->orders.exp[j] - m_ij);
            u32 x = f.at(j, i) % R.pow_p(b->orders.exp[j]);
            check(x % div == 0, "hom coords: matrix violates order congruence");
            c[pair_index(i, j, rb)] = (x / div) % R.pow_p(m_ij);
        }
    return c;
}

namespace {

// action matrices on a subquotient presentation: q -> project(act(g) lift(q))
std::vector<Mat> descend_action(const GModulePtr& m, const Subquotient& pres) {
    std::vector<Mat> act;
    act.reserve(m->group->n);
    u32 r = pres.group().inv.size();
    for (u32 g = 0; g < m->group->n; ++g) {
        Mat a(r, r);
        for (u32 t = 0; t < r; ++t) {
            auto img = pres.project(m->orders.canon(mat_apply(m->act[g], pres.reps().row(t), m->ring), m->ring));
            for (u32 s = 0; s < r; ++s) a.at(s, t) = img[s];
        }
        act.push_back(std::move(a));
    }
    return act;
}

}  // namespace

SubmodulePres submodule_module(const GModulePtr& m, const Mat& gens) {
    auto pres = std::make_shared<Subquotient>(gens, m->orders, Mat(0, m->rank()), m->ring);
    GModulePtr q = make_gmodule(m->ring, pres->coords(), m->group, descend_action(m, *pres));
    Mat incl(m->rank(), q->rank());
    for (u32 t = 0; t < q->rank(); ++t)
        for (u32 i = 0; i < m->rank(); ++i) incl.at(i, t) = pres->reps().at(t, i);
    return SubmodulePres{q, make_map(q, m, std::move(incl)), pres};
}

QuotientPres quotient_module(const GModulePtr& m, const Mat& sub) {
    Mat all = Mat::identity(m->rank());
    auto pres = std::make_shared<Subquotient>(all, m->orders, sub, m->ring);
    GModulePtr q = make_gmodule(m->ring, pres->coords(), m->group, descend_action(m, *pres));
    Mat proj(q->rank(), m->rank());
    for (u32 i = 0; i < m->rank(); ++i) {
        std::vector<u32> ei(m->rank(), 0);
        ei[i] = 1;
        auto c = pres->project(ei);
        for (u32 t = 0; t < q->rank(); ++t) proj.at(t, i) = c[t];
    }
    return QuotientPres{q, make_map(m, q, std::move(proj)), pres};
}

SubmodulePres invariants_submodule(const GModulePtr& m) {
    const Ring& R = m->ring;
    u32 r = m->rank(), n = m->group->n;
    // kernel of the stacked (act(g) - id) : M -> M^n
    Mat stacked(r * n, r);
    Orders tgt;
    for (u32 g = 0; g < n; ++g) {
        Mat d = mat_sub(m->act[g], Mat::identity(r), R);
        for (u32 i = 0; i < r; ++i) {
            tgt.exp.push_back(m->orders.exp[i]);
            for (u32 j = 0; j < r; ++j) stacked.at(g * r + i, j) = d.at(i, j) % R.pow_p(m->orders.exp[i]);
        }
    }
    Mat K = kernel_of_map(stacked, m->orders, tgt, R);
    return submodule_module(m, K);
}

Mat equivariant_hom_basis(const GModulePtr& a, const GModulePtr& b) {
    GModulePtr h = hom_mod(a, b);
    SubmodulePres inv = invariants_submodule(h);
    // rows: representative hom coordinates
    Mat out(inv.mod->rank(), h->rank());
    for (u32 t = 0; t < inv.mod->rank(); ++t) {
        std::vector<u32> et(inv.mod->rank(), 0);
        et[t] = 1;
        out.set_row(t, inv.incl(et));
    }
    return out;
}

}  // namespace zcoh
