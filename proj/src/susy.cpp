#include "walg/susy.hpp"

namespace walg {

void SusyStructure::add_pair(size_t bottom, size_t top) {
    if (partner_.count(bottom) || partner_.count(top))
        throw std::runtime_error("generator already has a SUSY partner");
    partner_[bottom] = {top, true};
    partner_[top] = {bottom, false};
}

bool SusyStructure::is_bottom(size_t g) const {
    auto it = partner_.find(g);
    return it != partner_.end() && it->second.second;
}

size_t SusyStructure::partner(size_t g) const {
    auto it = partner_.find(g);
    if (it == partner_.end())
        throw std::runtime_error("generator without SUSY partner: " + eng_->generator(g).name);
    return it->second.first;
}

VPoly SusyStructure::D(const VPoly& a) const {
    VPoly r;
    for (const auto& [m, c] : a) {
        int sign = 1;
        for (size_t i = 0; i < m.size(); ++i) {
            auto it = partner_.find(m[i].first);
            if (it == partner_.end())
                throw std::runtime_error("generator without SUSY partner: " +
                                         eng_->generator(m[i].first).name);
            std::vector<Factor> fs(m.begin(), m.end());
            if (it->second.second)
                fs[i] = {(uint32_t)it->second.first, m[i].second};
            else
                fs[i] = {(uint32_t)it->second.first, m[i].second + 1};
            vp_acc(r, eng_->normalize_factors(fs), c * LevelScalar((long)sign));
            if (eng_->gen_parity(m[i].first)) sign = -sign;
        }
    }
    return r;
}

LambdaSuperPoly SusyStructure::Lambda_bracket(const VPoly& a, const VPoly& b) const {
    return {eng_->lb(D(a), b), eng_->lb(a, b)};
}

static LPoly lp_D(const SusyStructure& s, const LPoly& p) {
    LPoly r(p.size());
    for (size_t n = 0; n < p.size(); ++n) r[n] = s.D(p[n]);
    lp_trim(r);
    return r;
}

static LPoly lp_shift(const LPoly& p) {  // multiply by x
    LPoly r(p.size() + 1);
    for (size_t n = 0; n < p.size(); ++n) r[n + 1] = p[n];
    lp_trim(r);
    return r;
}

void SusyStructure::set_Lambda_entry(VertexEngine& eng, size_t a_bottom, size_t b_bottom,
                                     const LambdaSuperPoly& entry) const {
    if (!is_bottom(a_bottom) || !is_bottom(b_bottom))
        throw std::runtime_error("Lambda-table entries attach to bottom generators");
    size_t a_top = partner(a_bottom), b_top = partner(b_bottom);
    int pa = eng.gen_parity(a_bottom);
    LevelScalar sa(pa ? -1L : 1L);  // (-1)^{p(a)}

    // [Da_x b] and [a_x b] are the two components of the Lambda-bracket
    eng.set_bracket(a_top, b_bottom, entry.part0);
    eng.set_bracket(a_bottom, b_bottom, entry.part1);

    // [a_x Db] = (-1)^{p(a)} (D(part1) - part0)
    LPoly ab_top = lp_D(*this, entry.part1);
    lp_acc(ab_top, entry.part0, LevelScalar(-1L));
    LPoly scaled;
    lp_acc(scaled, ab_top, sa);
    lp_trim(scaled);
    eng.set_bracket(a_bottom, b_top, scaled);

    // [Da_x Db] = (-1)^{p(a)+1} (D(part0) + x * part1)
    LPoly tt = lp_D(*this, entry.part0);
    lp_acc(tt, lp_shift(entry.part1), LevelScalar(1L));
    LPoly scaled2;
    lp_acc(scaled2, tt, LevelScalar(0L) - sa);
    lp_trim(scaled2);
    eng.set_bracket(a_top, b_top, scaled2);
}

SuperconformalReport SusyStructure::check_superconformal(const VPoly& tau) const {
    SuperconformalReport rep;
    rep.central_charge = LevelScalar(0L);
    const VertexEngine& e = *eng_;
    VPoly dtau = D(tau);
    LPoly part0 = e.lb(dtau, tau);
    LPoly part1 = e.lb(tau, tau);

    // chi-free component: [Dtau_x tau] = 2 d(tau) + 3 x tau
    LPoly want0;
    lp_acc_at(want0, 0, e.dP(tau), LevelScalar(2L));
    lp_acc_at(want0, 1, tau, LevelScalar(3L));
    lp_trim(want0);
    if (!lp_equal(part0, want0))
        rep.failures.push_back("chi-free part of [tau_L tau] is not (2d + 3x) tau");

    // chi component: [tau_x tau] = D(tau) + x^2 c / 3
    if (part1.size() > 3) {
        rep.failures.push_back("[tau_x tau] has x-degree above 2");
    } else {
        if (!((part1.size() > 0 ? part1[0] : VPoly{}) == dtau))
            rep.failures.push_back("x^0 part of [tau_x tau] is not D(tau)");
        if (part1.size() > 1 && !part1[1].empty())
            rep.failures.push_back("x^1 part of [tau_x tau] does not vanish");
        if (part1.size() > 2 && !part1[2].empty()) {
            const VPoly& top = part1[2];
            if (top.size() != 1 || !top.begin()->first.empty())
                rep.failures.push_back("x^2 part of [tau_x tau] is not scalar");
            else
                rep.central_charge = top.begin()->second * LevelScalar(3L);
        }
    }

    // D(tau)/2 is a conformal vector of the same central charge
    VPoly L = vp_scaled(dtau, LevelScalar(mpq_class(1, 2)));
    LPoly LL = e.lb(L, L);
    LPoly wantL;
    lp_acc_at(wantL, 0, e.dP(L), LevelScalar(1L));
    lp_acc_at(wantL, 1, L, LevelScalar(2L));
    lp_acc_at(wantL, 3, e.vacuum(), rep.central_charge * LevelScalar(mpq_class(1, 12)));
    lp_trim(wantL);
    if (!lp_equal(LL, wantL))
        rep.failures.push_back("D(tau)/2 is not a conformal vector of the extracted charge");
    return rep;
}

std::vector<size_t> build_susy_affine(const AlgebraSpec& g, VertexEngine& eng,
                                      SusyStructure& susy) {
    std::vector<size_t> bottom(g.dim());
    for (size_t i = 0; i < g.dim(); ++i) {
        size_t b = eng.add_generator(g.basis_names[i] + "b", 1 - g.parity[i], mpq_class(1, 2));
        size_t t = eng.add_generator("D" + g.basis_names[i] + "b", g.parity[i], 1);
        bottom[i] = b;
        susy.add_pair(b, t);
    }
    LevelScalar shifted = LevelScalar::k() + LevelScalar(g.dual_coxeter);
    for (size_t i = 0; i < g.dim(); ++i)
        for (size_t j = 0; j < g.dim(); ++j) {
            LambdaSuperPoly entry;
            // sign (-1)^{p(i)(p(j)+1)}
            LevelScalar sg((g.parity[i] == 1 && g.parity[j] == 0) ? -1L : 1L);
            LPoly p0(1);
            for (size_t m = 0; m < g.dim(); ++m)
                if (!g.structure[i][j][m].is_zero())
                    vp_acc(p0[0], eng.gen(bottom[m]), sg * LevelScalar(g.structure[i][j][m]));
            lp_trim(p0);
            entry.part0 = p0;
            LPoly p1(1);
            if (!g.form[i][j].is_zero())
                vp_acc(p1[0], eng.vacuum(), shifted * LevelScalar(g.form[i][j]));
            lp_trim(p1);
            entry.part1 = p1;
            susy.set_Lambda_entry(eng, bottom[i], bottom[j], entry);
        }
    return bottom;
}

}  // namespace walg
