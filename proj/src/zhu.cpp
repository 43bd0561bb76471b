#include "walg/zhu.hpp"

#include <stdexcept>

namespace walg {

ZhuComplex::ZhuComplex(const AlgebraSpec& g) : c(g, Flavor::susy) {
    size_t total = c.eng.num_generators();
    shift_.assign(total, LevelScalar(0L));
    for (size_t i = 0; i < total; ++i) {
        const Generator& gn = c.eng.generator(i);
        u.add_generator(gn.name, gn.parity, gn.weight);
    }
    LevelScalar lev = level();
    for (size_t a = 0; a < c.alg.dim(); ++a) {
        QQi xa = x_pair(a);
        if (!xa.is_zero()) shift_[bold(a)] = lev * LevelScalar(xa);
    }
    // bracket table from the vertex data; the central shifts drop out of
    // every commutator, so the derived entries are the letter brackets
    for (size_t i = 0; i < total; ++i)
        for (size_t j = i; j < total; ++j)
            u.set_bracket(i, j, bracket_h(c.eng.gen(i), c.eng.gen(j)));
    qimg_.resize(total);
    for (size_t i = 0; i < total; ++i) qimg_[i] = project(c.d0(c.eng.gen(i)));
}

LevelScalar ZhuComplex::level() const {
    return LevelScalar::k() + LevelScalar(c.alg.dual_coxeter);
}

QQi ZhuComplex::x_pair(size_t a) const {
    return c.alg.form[c.alg.h_element][a] * QQi(mpq_class(1, 2));
}

PbwPoly ZhuComplex::project_mono(const Mono& m) const {
    if (m.empty()) return u.one();
    auto it = proj_cache_.find(m);
    if (it != proj_cache_.end()) return it->second;

    Factor f = m[0];
    Mono rest(m.begin() + 1, m.end());
    mpq_class wg = c.eng.generator(f.first).weight;
    // Zhu(d^n g) = prod_{t<n} (-(w_g + t)) Zhu(g)
    LevelScalar s(1L);
    for (uint32_t t = 0; t < f.second; ++t) s = s * LevelScalar(-(wg + (long)t));
    PbwPoly A = pb_scaled(u.gen(f.first), s);
    if (!shift_[f.first].is_zero()) pb_acc(A, u.one(), s * shift_[f.first]);

    PbwPoly P = u.mul(A, project_mono(rest));
    if (!rest.empty()) {
        // Zhu(:ab:) = Zhu(a)Zhu(b) - sum_j  D_a/(j+1) binom(D_a-1, j) Zhu(a_(j)b)
        mpq_class da = wg + (long)f.second;
        VPoly rp;
        rp[rest] = LevelScalar(1L);
        LPoly br = c.eng.lb(c.eng.gen(f.first, f.second), rp);
        mpq_class fall = 1;  // (da-1)(da-2)...(da-j) = binom(da-1, j) j!
        for (size_t j = 0; j < br.size(); ++j) {
            mpq_class coef = da * fall / mpq_class((long)j + 1);
            pb_acc(P, project(br[j]), LevelScalar(-coef));
            fall *= da - 1 - (long)j;
        }
    }
    return proj_cache_[m] = P;
}

PbwPoly ZhuComplex::project(const VPoly& v) const {
    PbwPoly out;
    for (const auto& [m, cf] : v) pb_acc(out, project_mono(m), cf);
    return out;
}

PbwPoly ZhuComplex::bracket_h(const VPoly& a, const VPoly& b) const {
    if (vp_is_zero(a) || vp_is_zero(b)) return {};
    auto wa = c.eng.hamiltonian_weight(a);
    if (!wa) throw std::runtime_error("bracket_h needs a weight-homogeneous left side");
    LPoly br = c.eng.lb(a, b);
    PbwPoly out;
    mpq_class fall = 1;  // binom(wa-1, j) j!
    for (size_t j = 0; j < br.size(); ++j) {
        pb_acc(out, project(br[j]), LevelScalar(fall));
        fall *= *wa - 1 - (long)j;
    }
    return out;
}

PbwPoly ZhuComplex::Q(const PbwPoly& x) const { return u.derivation(qimg_, 1, x); }

PbwPoly ZhuComplex::bar_elem(const AlgElem& v) const {
    PbwPoly out;
    for (size_t a = 0; a < v.size(); ++a)
        if (!v[a].is_zero()) pb_acc(out, u.gen(bar(a)), LevelScalar(v[a]));
    return out;
}

PbwPoly ZhuComplex::bold_elem(const AlgElem& v) const {
    PbwPoly out;
    for (size_t a = 0; a < v.size(); ++a)
        if (!v[a].is_zero()) pb_acc(out, u.gen(bold(a)), LevelScalar(v[a]));
    return out;
}

PbwPoly ZhuComplex::J_bar(size_t a) const { return project(c.building_block(a)); }

PbwPoly ZhuComplex::J_bold(size_t a) const {
    return project(c.susy.D(c.building_block(a)));
}

}  // namespace walg
