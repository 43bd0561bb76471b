#include "walg/brst.hpp"

#include "walg/linalg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace walg {

namespace {

LevelScalar qs(const QQi& v) { return LevelScalar(v); }

}  // namespace

BrstComplex::BrstComplex(const AlgebraSpec& g, Flavor f)
    : alg(g), grading(g.grade_decompose()), flavor(f), susy(eng) {
    duals_ = alg.dual_basis_nminus(grading);
    for (size_t i = 0; i < alg.dim(); ++i)
        if (grading.j[i] <= 0) lez_.push_back(i);
    if (flavor == Flavor::nonsusy)
        build_nonsusy();
    else
        build_susy();
    make_letters();
}

void BrstComplex::build_nonsusy() {
    size_t n = alg.dim();
    cur.resize(n);
    for (size_t i = 0; i < n; ++i)
        cur[i] = eng.add_generator(alg.basis_names[i], alg.parity[i], 1 - grading.j[i]);
    for (size_t x = 0; x < grading.I_half.size(); ++x) {
        size_t a = grading.I_half[x];
        weyl.push_back(eng.add_generator("Phi[" + alg.basis_names[a] + "]", alg.parity[a],
                                         mpq_class(1, 2)));
    }
    for (size_t x = 0; x < grading.I_plus.size(); ++x) {
        size_t a = grading.I_plus[x];
        gh_anni.push_back(eng.add_generator("ph_[" + alg.basis_names[a] + "]",
                                            1 - alg.parity[a], 1 - grading.j[a], -1));
    }
    for (size_t x = 0; x < grading.I_plus.size(); ++x) {
        size_t a = grading.I_plus[x];
        gh_crea.push_back(eng.add_generator("ph^[" + alg.basis_names[a] + "]",
                                            1 - alg.parity[a], grading.j[a], +1));
    }

    // classify generator indices back to their sectors
    auto sector = [&](size_t g, size_t& pos) {
        if (g < n) { pos = g; return 0; }
        g -= n;
        if (g < weyl.size()) { pos = g; return 1; }
        g -= weyl.size();
        if (g < gh_anni.size()) { pos = g; return 2; }
        pos = g - gh_anni.size();
        return 3;
    };
    size_t total = eng.num_generators();
    for (size_t i = 0; i < total; ++i)
        for (size_t j = i; j < total; ++j) {
            size_t pi, pj;
            int si = sector(i, pi), sj = sector(j, pj);
            LPoly t;
            if (si == 0 && sj == 0) {
                t.resize(2);
                for (size_t m = 0; m < n; ++m)
                    if (!alg.structure[pi][pj][m].is_zero())
                        vp_acc(t[0], eng.gen(cur[m]), qs(alg.structure[pi][pj][m]));
                if (!alg.form[pi][pj].is_zero())
                    vp_acc(t[1], eng.vacuum(), LevelScalar::k() * qs(alg.form[pi][pj]));
            } else if (si == 1 && sj == 1) {
                AlgElem br = alg.bracket(alg.basis_elem(grading.I_half[pi]),
                                         alg.basis_elem(grading.I_half[pj]));
                QQi v = alg.form_value(alg.basis_elem(alg.osp.F), br);
                t.resize(1);
                if (!v.is_zero()) vp_acc(t[0], eng.vacuum(), qs(v));
            } else if (si == 2 && sj == 3) {
                QQi v = alg.form_value(alg.basis_elem(grading.I_plus[pi]), duals_[pj]);
                t.resize(1);
                if (!v.is_zero()) vp_acc(t[0], eng.vacuum(), qs(v));
            }
            eng.set_bracket(i, j, t);
        }

    // the differential
    const std::vector<size_t>& ip = grading.I_plus;
    for (size_t x = 0; x < ip.size(); ++x) {
        int p = alg.parity[ip[x]];
        vp_acc(d_, eng.no_mul(eng.gen(cur[ip[x]]), eng.gen(gh_crea[x])),
               LevelScalar(p ? -1L : 1L));
    }
    for (size_t x = 0; x < ip.size(); ++x)
        for (size_t y = 0; y < ip.size(); ++y) {
            AlgElem br = alg.bracket(alg.basis_elem(ip[x]), alg.basis_elem(ip[y]));
            for (size_t z = 0; z < ip.size(); ++z) {
                QQi c = br[ip[z]];
                if (c.is_zero()) continue;
                int sg = (alg.parity[ip[x]] * alg.parity[ip[z]]) % 2 ? -1 : 1;
                VPoly cube = eng.no_mul(
                    eng.gen(gh_anni[z]),
                    eng.no_mul(eng.gen(gh_crea[x]), eng.gen(gh_crea[y])));
                vp_acc(d_, cube, qs(c) * LevelScalar(mpq_class(-sg, 2)));
            }
        }
    for (size_t x = 0; x < grading.I_half.size(); ++x) {
        size_t pos = std::find(ip.begin(), ip.end(), grading.I_half[x]) - ip.begin();
        vp_acc(d_, eng.no_mul(eng.gen(weyl[x]), eng.gen(gh_crea[pos])), LevelScalar(1L));
    }
    for (size_t x = 0; x < ip.size(); ++x) {
        QQi v = alg.form_value(alg.basis_elem(alg.osp.F), alg.basis_elem(ip[x]));
        if (!v.is_zero()) vp_acc(d_, eng.gen(gh_crea[x]), qs(v));
    }
}

void BrstComplex::build_susy() {
    size_t n = alg.dim();
    cur.resize(n);
    for (size_t i = 0; i < n; ++i) {
        size_t b = eng.add_generator(alg.basis_names[i] + "b", 1 - alg.parity[i],
                                     mpq_class(1, 2) - grading.j[i]);
        size_t t = eng.add_generator("D" + alg.basis_names[i] + "b", alg.parity[i],
                                     1 - grading.j[i]);
        cur[i] = b;
        susy.add_pair(b, t);
    }
    const std::vector<size_t>& ip = grading.I_plus;
    for (size_t x = 0; x < ip.size(); ++x) {
        size_t a = ip[x];
        size_t b = eng.add_generator("ph_[" + alg.basis_names[a] + "]b", alg.parity[a],
                                     mpq_class(1, 2) - grading.j[a], -1);
        size_t t = eng.add_generator("Dph_[" + alg.basis_names[a] + "]b", 1 - alg.parity[a],
                                     1 - grading.j[a], -1);
        gh_anni.push_back(b);
        susy.add_pair(b, t);
    }
    for (size_t x = 0; x < ip.size(); ++x) {
        size_t a = ip[x];
        size_t b = eng.add_generator("ph^[" + alg.basis_names[a] + "]b", 1 - alg.parity[a],
                                     grading.j[a], +1);
        size_t t = eng.add_generator("Dph^[" + alg.basis_names[a] + "]b", alg.parity[a],
                                     grading.j[a] + mpq_class(1, 2), +1);
        gh_crea.push_back(b);
        susy.add_pair(b, t);
    }

    LevelScalar shifted = LevelScalar::k() + LevelScalar(alg.dual_coxeter);
    // currents: install all ordered pairs (the formula fills both directions
    // consistently)
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            LambdaSuperPoly entry;
            LevelScalar sg((alg.parity[i] == 1 && alg.parity[j] == 0) ? -1L : 1L);
            LPoly p0(1);
            for (size_t m = 0; m < n; ++m)
                if (!alg.structure[i][j][m].is_zero())
                    vp_acc(p0[0], eng.gen(cur[m]), sg * qs(alg.structure[i][j][m]));
            lp_trim(p0);
            entry.part0 = p0;
            LPoly p1(1);
            if (!alg.form[i][j].is_zero())
                vp_acc(p1[0], eng.vacuum(), shifted * qs(alg.form[i][j]));
            lp_trim(p1);
            entry.part1 = p1;
            susy.set_Lambda_entry(eng, cur[i], cur[j], entry);
        }
    // ghost pairing: [ph^a_L ph_b] = (u^a|u_b), installed from the creation
    // side; everything else vanishes
    for (size_t x = 0; x < ip.size(); ++x)
        for (size_t y = 0; y < ip.size(); ++y) {
            LambdaSuperPoly entry;
            QQi v = alg.form_value(duals_[x], alg.basis_elem(ip[y]));
            LPoly p0(1);
            if (!v.is_zero()) vp_acc(p0[0], eng.vacuum(), qs(v));
            lp_trim(p0);
            entry.part0 = p0;
            susy.set_Lambda_entry(eng, gh_crea[x], gh_anni[y], entry);
        }
    LambdaSuperPoly zero;
    for (size_t x = 0; x < ip.size(); ++x)
        for (size_t y = x; y < ip.size(); ++y) {
            susy.set_Lambda_entry(eng, gh_anni[x], gh_anni[y], zero);
            susy.set_Lambda_entry(eng, gh_crea[x], gh_crea[y], zero);
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t x = 0; x < ip.size(); ++x) {
            susy.set_Lambda_entry(eng, cur[i], gh_anni[x], zero);
            susy.set_Lambda_entry(eng, cur[i], gh_crea[x], zero);
        }

    // the differential
    for (size_t x = 0; x < ip.size(); ++x)
        vp_acc(d_, eng.no_mul(eng.gen(cur[ip[x]]), eng.gen(gh_crea[x])), LevelScalar(1L));
    for (size_t x = 0; x < ip.size(); ++x)
        for (size_t y = 0; y < ip.size(); ++y) {
            AlgElem br = alg.bracket(alg.basis_elem(ip[x]), alg.basis_elem(ip[y]));
            for (size_t z = 0; z < ip.size(); ++z) {
                QQi c = br[ip[z]];
                if (c.is_zero()) continue;
                int sg = (alg.parity[ip[x]] * (alg.parity[ip[y]] + 1)) % 2 ? -1 : 1;
                VPoly cube = eng.no_mul(
                    eng.gen(gh_anni[z]),
                    eng.no_mul(eng.gen(gh_crea[y]), eng.gen(gh_crea[x])));
                vp_acc(d_, cube, qs(c) * LevelScalar(mpq_class(sg, 2)));
            }
        }
    for (size_t x = 0; x < ip.size(); ++x) {
        QQi v = alg.form_value(alg.basis_elem(alg.osp.f), alg.basis_elem(ip[x]));
        if (!v.is_zero()) vp_acc(d_, eng.gen(gh_crea[x]), qs(-v));
    }
    d_top_ = susy.D(d_);
}

void BrstComplex::make_letters() {
    for (size_t a : lez_) {
        Letter b;
        b.basis_index = a;
        b.in_miura_image = (grading.j[a] == 0);
        if (flavor == Flavor::nonsusy) {
            b.name = "J[" + alg.basis_names[a] + "]";
            b.field = building_block(a);
            b.parity = alg.parity[a];
            b.weight = 1 - grading.j[a];
            b.kind = 0;
            letters_.push_back(b);
        } else {
            b.name = "J[" + alg.basis_names[a] + "b]";
            b.field = building_block(a);
            b.parity = 1 - alg.parity[a];
            b.weight = mpq_class(1, 2) - grading.j[a];
            b.kind = 0;
            letters_.push_back(b);
            Letter t = b;
            t.name = "DJ[" + alg.basis_names[a] + "b]";
            t.field = susy.D(b.field);
            t.parity = alg.parity[a];
            t.weight = 1 - grading.j[a];
            t.kind = 1;
            letters_.push_back(t);
        }
    }
    if (flavor == Flavor::nonsusy)
        for (size_t x = 0; x < grading.I_half.size(); ++x) {
            size_t a = grading.I_half[x];
            Letter w;
            w.name = "Phi[" + alg.basis_names[a] + "]";
            w.field = eng.gen(weyl[x]);
            w.parity = alg.parity[a];
            w.weight = mpq_class(1, 2);
            w.in_miura_image = true;
            w.kind = 2;
            w.basis_index = a;
            letters_.push_back(w);
        }
}

size_t BrstComplex::letter_index(const std::string& name) const {
    for (size_t i = 0; i < letters_.size(); ++i)
        if (letters_[i].name == name) return i;
    throw std::runtime_error("unknown letter: " + name);
}

VPoly BrstComplex::d0(const VPoly& x) const {
    LPoly r = eng.lb(flavor == Flavor::susy ? d_top_ : d_, x);
    return r.empty() ? VPoly{} : r[0];
}

CheckReport BrstComplex::check_d_squared() const {
    CheckReport rep;
    for (size_t g = 0; g < eng.num_generators(); ++g) {
        VPoly once = d0(eng.gen(g));
        if (!once.empty()) {
            auto ch = eng.charge_of(once);
            if (!ch || *ch != eng.generator(g).charge + 1)
                rep.failures.push_back("charge of d0(" + eng.generator(g).name +
                                       ") did not increase by one");
        }
        if (!vp_is_zero(d0(once)))
            rep.failures.push_back("d0^2 nonzero on " + eng.generator(g).name);
    }
    return rep;
}

VPoly BrstComplex::building_block(size_t a) const {
    const std::vector<size_t>& ip = grading.I_plus;
    VPoly J = eng.gen(cur[a]);
    for (size_t x = 0; x < ip.size(); ++x) {
        AlgElem br = alg.bracket(alg.basis_elem(a), alg.basis_elem(ip[x]));
        if (flavor == Flavor::nonsusy) {
            for (size_t z = 0; z < ip.size(); ++z) {
                QQi c = br[ip[z]];
                if (c.is_zero()) continue;
                int sg = alg.parity[ip[z]] ? -1 : 1;
                vp_acc(J, eng.no_mul(eng.gen(gh_anni[z]), eng.gen(gh_crea[x])),
                       qs(c) * LevelScalar((long)sg));
            }
        } else {
            // coefficient (u^z | [u_x, a]) on :ph^x ph_z:
            AlgElem xa = alg.bracket(alg.basis_elem(ip[x]), alg.basis_elem(a));
            for (size_t z = 0; z < ip.size(); ++z) {
                QQi c = alg.form_value(duals_[z], xa);
                if (c.is_zero()) continue;
                int sg = ((alg.parity[a] + 1) * (alg.parity[ip[x]] + 1)) % 2 ? -1 : 1;
                vp_acc(J, eng.no_mul(eng.gen(gh_crea[x]), eng.gen(gh_anni[z])),
                       qs(c) * LevelScalar((long)sg));
            }
        }
    }
    return J;
}

LevelScalar BrstComplex::shifted_form(size_t a, size_t b) const {
    QQi fv = alg.form[a][b];
    if (flavor == Flavor::susy)
        return (LevelScalar::k() + LevelScalar(alg.dual_coxeter)) * qs(fv);
    AlgElem ea = alg.basis_elem(a), eb = alg.basis_elem(b);
    QQi kg = alg.killing(ea, eb);
    QQi k0 = alg.killing_on(grading.g_zero, ea, eb);
    return LevelScalar::k() * qs(fv) + qs((kg - k0) * QQi(mpq_class(1, 2)));
}

CheckReport BrstComplex::check_building_block_closure() const {
    CheckReport rep;
    for (size_t a : lez_)
        for (size_t b : lez_) {
            std::string pair = "(" + alg.basis_names[a] + "," + alg.basis_names[b] + ")";
            AlgElem br = alg.bracket(alg.basis_elem(a), alg.basis_elem(b));
            if (flavor == Flavor::nonsusy) {
                LPoly want(2);
                for (size_t m : lez_)
                    if (!br[m].is_zero()) vp_acc(want[0], building_block(m), qs(br[m]));
                LevelScalar nu = shifted_form(a, b);
                if (!nu.is_zero()) vp_acc(want[1], eng.vacuum(), nu);
                lp_trim(want);
                if (!lp_equal(eng.lb(building_block(a), building_block(b)), want))
                    rep.failures.push_back("dressed current bracket open at " + pair);
            } else {
                LevelScalar sg((alg.parity[a] * (alg.parity[b] + 1)) % 2 ? -1L : 1L);
                LambdaSuperPoly got =
                    susy.Lambda_bracket(building_block(a), building_block(b));
                LPoly want0(1), want1(1);
                for (size_t m : lez_)
                    if (!br[m].is_zero()) vp_acc(want0[0], building_block(m), sg * qs(br[m]));
                LevelScalar lv = shifted_form(a, b);
                if (!lv.is_zero()) vp_acc(want1[0], eng.vacuum(), lv);
                lp_trim(want0);
                lp_trim(want1);
                if (!lp_equal(got.part0, want0))
                    rep.failures.push_back("chi-free part open at " + pair);
                if (!lp_equal(got.part1, want1))
                    rep.failures.push_back("chi part open at " + pair);
            }
        }
    return rep;
}

std::vector<AbsMono> BrstComplex::basis_at(const mpq_class& delta) const {
    std::vector<AbsMono> out;
    AbsMono cur_mono;
    // factors ascend lexicographically; equal factors only for even letters
    std::function<void(size_t, uint32_t, const mpq_class&)> rec =
        [&](size_t l0, uint32_t d0, const mpq_class& rem) {
            if (rem == 0) {
                out.push_back(cur_mono);
                return;
            }
            for (size_t l = l0; l < letters_.size(); ++l) {
                uint32_t dstart = (l == l0) ? d0 : 0;
                for (uint32_t dp = dstart;; ++dp) {
                    mpq_class w = letters_[l].weight + (long)dp;
                    if (w > rem) break;
                    cur_mono.push_back({(uint32_t)l, dp});
                    // an odd letter cannot repeat the same factor
                    rec(l, letters_[l].parity ? dp + 1 : dp, rem - w);
                    cur_mono.pop_back();
                }
            }
        };
    rec(0, 0, delta);
    return out;
}

VPoly BrstComplex::realize(const AbsMono& m) const {
    VPoly r = eng.vacuum();
    for (size_t i = m.size(); i-- > 0;)
        r = eng.no_mul(eng.dP_iter(letters_[m[i].first].field, m[i].second), r);
    return r;
}

VPoly BrstComplex::realize(const AbsPoly& p) const {
    VPoly r;
    for (const auto& [m, c] : p) vp_acc(r, realize(m), c);
    return r;
}

AbsPoly BrstComplex::abstract_coords(const VPoly& v, const mpq_class& delta) const {
    std::vector<AbsMono> monos = basis_at(delta);
    std::vector<VPoly> fields(monos.size());
    std::map<Mono, size_t> row;
    for (size_t c = 0; c < monos.size(); ++c) {
        fields[c] = realize(monos[c]);
        for (const auto& [m, cf] : fields[c]) row.emplace(m, row.size());
    }
    for (const auto& [m, cf] : v) row.emplace(m, row.size());
    Mat<LevelScalar> A(row.size(), monos.size());
    std::vector<LevelScalar> rhs(row.size(), LevelScalar(0L));
    for (size_t c = 0; c < monos.size(); ++c)
        for (const auto& [m, cf] : fields[c]) A.at(row[m], c) = cf;
    for (const auto& [m, cf] : v) rhs[row[m]] = cf;
    std::vector<LevelScalar> x = solve(std::move(A), std::move(rhs));
    if (x.empty()) {
        if (!vp_is_zero(v))
            throw std::runtime_error("element outside the reduced letter span");
        return {};
    }
    AbsPoly out;
    for (size_t c = 0; c < monos.size(); ++c)
        if (!x[c].is_zero()) out[monos[c]] = x[c];
    return out;
}

std::vector<AbsPoly> BrstComplex::kernel_at(const mpq_class& delta) const {
    std::vector<AbsMono> monos = basis_at(delta);
    std::vector<VPoly> images(monos.size());
    std::map<Mono, size_t> row;
    for (size_t c = 0; c < monos.size(); ++c) {
        images[c] = d0(realize(monos[c]));
        for (const auto& [m, cf] : images[c]) row.emplace(m, row.size());
    }
    Mat<LevelScalar> A(row.size(), monos.size());
    for (size_t c = 0; c < monos.size(); ++c)
        for (const auto& [m, cf] : images[c]) A.at(row[m], c) = cf;
    std::vector<std::vector<LevelScalar>> ker = kernel_basis(std::move(A));
    std::vector<AbsPoly> out;
    for (const auto& vec : ker) {
        AbsPoly p;
        for (size_t c = 0; c < monos.size(); ++c)
            if (!vec[c].is_zero()) p[monos[c]] = vec[c];
        out.push_back(std::move(p));
    }
    return out;
}

AbsPoly BrstComplex::miura(const AbsPoly& p) const {
    AbsPoly out;
    for (const auto& [m, c] : p) {
        bool keep = true;
        for (const auto& f : m)
            if (!letters_[f.first].in_miura_image) keep = false;
        if (keep) out[m] = c;
    }
    return out;
}

AbsPoly BrstComplex::D_letters(const AbsPoly& p) const {
    if (flavor != Flavor::susy)
        throw std::runtime_error("D acts on the susy flavor only");
    if (p.empty()) return {};
    mpq_class delta = 0;
    for (const auto& f : p.begin()->first)
        delta += letters_[f.first].weight + (long)f.second;
    return abstract_coords(susy.D(realize(p)), delta + mpq_class(1, 2));
}

LevelScalar BrstComplex::central_charge(Flavor form) const {
    size_t H = alg.h_element;
    mpq_class hh = alg.form[H][H].re;
    LevelScalar kk = LevelScalar::k();
    LevelScalar shifted = kk + LevelScalar(alg.dual_coxeter);
    LevelScalar c = kk * LevelScalar(alg.sdim()) / shifted;
    if (form == Flavor::nonsusy) {
        c -= kk * LevelScalar(3 * hh);
        mpq_class s = 0;
        for (size_t a : grading.I_plus) {
            mpq_class m = grading.j[a];
            mpq_class term = 12 * m * m - 12 * m + 2;
            s += alg.parity[a] ? -term : term;
        }
        c -= LevelScalar(s);
        c -= LevelScalar(alg.sdim_subspace(grading.I_half) / 2);
    } else {
        c += LevelScalar(alg.sdim() / 2);
        mpq_class s = 0;
        for (size_t a : grading.I_plus) s += alg.parity[a] ? -grading.j[a] : grading.j[a];
        c += LevelScalar(12 * s);
        c -= LevelScalar(3 * alg.sdim_subspace(grading.I_plus));
        c -= shifted * LevelScalar(3 * hh);
    }
    return c;
}

std::string BrstComplex::str(const AbsPoly& p) const {
    if (p.empty()) return "0";
    auto factor = [&](const std::pair<uint32_t, uint32_t>& f) {
        const std::string& nm = letters_[f.first].name;
        if (f.second == 0) return nm;
        if (f.second == 1) return "d" + nm;
        return "d" + std::to_string(f.second) + "(" + nm + ")";
    };
    auto mono = [&](const AbsMono& m) {
        if (m.empty()) return std::string("1");
        if (m.size() == 1) return factor(m[0]);
        std::string s = ":";
        for (size_t i = 0; i < m.size(); ++i) {
            if (i) s += " ";
            s += factor(m[i]);
        }
        return s + ":";
    };
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : p) {
        if (!first) out << " + ";
        first = false;
        if (m.empty()) {
            out << c.str();
        } else if (c.is_one()) {
            out << mono(m);
        } else {
            std::string cs = c.str();
            if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
            out << cs << "*" << mono(m);
        }
    }
    return out.str();
}

VPoly tau_translate(const BrstComplex& src, const AbsPoly& x, const BrstComplex& dst,
                    const LevelScalar& inv_root) {
    if (src.flavor != Flavor::nonsusy || dst.flavor != Flavor::susy)
        throw std::runtime_error("domain identification goes from the nonsusy "
                                 "Miura target to the susy one");
    VPoly out;
    for (const auto& [m, c] : x) {
        VPoly r = dst.eng.vacuum();
        for (size_t i = m.size(); i-- > 0;) {
            const Letter& L = src.letters()[m[i].first];
            VPoly img;
            if (L.kind == 0 && src.grading.j[L.basis_index] == 0) {
                img = dst.susy.D(dst.building_block(L.basis_index));
            } else if (L.kind == 2) {
                AlgElem h = src.alg.bracket(src.alg.basis_elem(src.alg.osp.f),
                                            src.alg.basis_elem(L.basis_index));
                for (size_t w = 0; w < src.alg.dim(); ++w)
                    if (!h[w].is_zero()) {
                        if (src.grading.j[w] != 0)
                            throw std::runtime_error("fermion image outside degree zero");
                        vp_acc(img, dst.building_block(w), LevelScalar(h[w]) * inv_root);
                    }
            } else {
                throw std::runtime_error("letter " + L.name +
                                         " is outside the nonsusy Miura target");
            }
            r = dst.eng.no_mul(dst.eng.dP_iter(img, m[i].second), r);
        }
        vp_acc(out, r, c);
    }
    return out;
}

CheckReport check_tau_compatibility(const AlgebraSpec& g) {
    CheckReport rep;
    AlgElem f = g.basis_elem(g.osp.f), F = g.basis_elem(g.osp.F);
    for (size_t a : g.simple_roots)
        for (size_t b : g.simple_roots) {
            AlgElem ea = g.basis_elem(a), eb = g.basis_elem(b);
            QQi lhs = g.form_value(F, g.bracket(ea, eb));
            QQi rhs = g.form_value(g.bracket(f, ea), g.bracket(f, eb));
            if (lhs != rhs)
                rep.failures.push_back("fermion pairing mismatch at (" + g.basis_names[a] +
                                       "," + g.basis_names[b] + ")");
        }
    return rep;
}

}  // namespace walg
