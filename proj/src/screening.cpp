#include "walg/screening.hpp"

#include "walg/linalg.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace walg {

namespace {

mpq_class state_weight(const FockState& s) {
    mpq_class w = 0;
    for (const auto& [f, m] : s.ev) w += m;
    for (const auto& [f, n] : s.od) w += mpq_class(2 * (long)n - 1, 2);
    return w;
}

void strip_zeros(FockPoly& p) {
    for (auto it = p.begin(); it != p.end();)
        it = it->second.is_zero() ? p.erase(it) : std::next(it);
}

// rational roots of the monic characteristic polynomial of a rational matrix
std::vector<mpq_class> rational_eigenvalues(const Mat<QQi>& m) {
    size_t d = m.rows;
    // Faddeev-LeVerrier: p(x) = x^d + c[d-1] x^{d-1} + ... + c[0]
    std::vector<mpq_class> c(d + 1, 0);
    c[d] = 1;
    Mat<QQi> N(d, d);  // starts at zero
    for (size_t s = 1; s <= d; ++s) {
        // N <- M N + c[d-s+1] I ; c[d-s] = -tr(M N)/s
        Mat<QQi> MN(d, d);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                QQi t;
                for (size_t l = 0; l < d; ++l) t = t + m.at(i, l) * N.at(l, j);
                MN.at(i, j) = t;
            }
        for (size_t i = 0; i < d; ++i) MN.at(i, i) = MN.at(i, i) + QQi(c[d - s + 1]);
        mpq_class tr = 0;
        for (size_t i = 0; i < d; ++i) {
            QQi t;
            for (size_t l = 0; l < d; ++l) t = t + m.at(i, l) * MN.at(l, i);
            if (t.im != 0) throw std::runtime_error("complex weight-space splitting unsupported");
            tr += t.re;
        }
        c[d - s] = -tr / mpq_class((long)s);
        N = std::move(MN);
    }
    // clear denominators, then try roots p/q with p | a0, q | ad
    mpz_class den = 1;
    for (auto& v : c) den = den * v.get_den() / gcd(den, v.get_den());
    std::vector<mpz_class> a(d + 1);
    for (size_t i = 0; i <= d; ++i) a[i] = mpz_class(c[i] * den);
    auto divisors = [](mpz_class v) {
        std::vector<mpz_class> out;
        v = abs(v);
        if (v == 0) return out;
        for (mpz_class q = 1; q * q <= v; ++q)
            if (v % q == 0) {
                out.push_back(q);
                if (q * q != v) out.push_back(v / q);
            }
        return out;
    };
    std::vector<mpq_class> roots;
    std::vector<mpq_class> poly(c);
    auto eval = [&](const mpq_class& x) {
        mpq_class r = 0;
        for (size_t i = poly.size(); i-- > 0;) r = r * x + poly[i];
        return r;
    };
    auto deflate = [&](const mpq_class& r) {
        std::vector<mpq_class> q(poly.size() - 1, 0);
        mpq_class carry = poly.back();
        for (size_t i = poly.size() - 1; i-- > 0;) {
            q[i] = carry;
            carry = poly[i] + carry * r;
        }
        poly = std::move(q);
    };
    while (poly.size() > 1) {
        if (poly[0] == 0) {
            roots.push_back(0);
            deflate(0);
            continue;
        }
        mpz_class lead = 1, cons = 1;
        {  // integer version of the current factor
            mpz_class dd = 1;
            for (auto& v : poly) dd = dd * v.get_den() / gcd(dd, v.get_den());
            lead = mpz_class(poly.back() * dd);
            cons = mpz_class(poly.front() * dd);
        }
        bool found = false;
        for (const auto& p : divisors(cons)) {
            for (const auto& q : divisors(lead)) {
                for (int sg : {1, -1}) {
                    mpq_class cand(sg * p, q);
                    cand.canonicalize();
                    if (eval(cand) == 0) {
                        roots.push_back(cand);
                        deflate(cand);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;  // leave irrational part unsplit
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace

void fp_acc(FockPoly& a, const FockPoly& b, const LevelScalar& c) {
    for (const auto& [s, v] : b) {
        LevelScalar t = a[s] + v * c;
        if (t.is_zero())
            a.erase(s);
        else
            a[s] = t;
    }
}

bool fp_is_zero(const FockPoly& a) {
    for (const auto& [s, v] : a)
        if (!v.is_zero()) return false;
    return true;
}

size_t ScreeningSet::num_odd() const {
    return flavor == Flavor::susy ? grading.g_zero.size() : grading.I_half.size();
}

ScreeningSet::ScreeningSet(const AlgebraSpec& g, Flavor f)
    : alg(g), grading(g.grade_decompose()), flavor(f) {
    auto elem_zero = [](const AlgElem& v) {
        for (const auto& c : v)
            if (!c.is_zero()) return false;
        return true;
    };
    for (size_t a : grading.g_zero)
        for (size_t b : grading.g_zero)
            if (!elem_zero(alg.structure[a][b]))
                throw std::runtime_error("screening needs an abelian degree-zero subalgebra");

    level_ = LevelScalar::k() + LevelScalar(alg.dual_coxeter);
    size_t ne = grading.g_zero.size();
    gev_.assign(ne, std::vector<LevelScalar>(ne));
    for (size_t i = 0; i < ne; ++i)
        for (size_t j = 0; j < ne; ++j)
            gev_[i][j] = LevelScalar(alg.form[grading.g_zero[i]][grading.g_zero[j]]) * level_;
    if (flavor == Flavor::susy) {
        god_ = gev_;
    } else {
        size_t no = grading.I_half.size();
        AlgElem F = alg.basis_elem(alg.osp.F);
        god_.assign(no, std::vector<LevelScalar>(no));
        for (size_t i = 0; i < no; ++i)
            for (size_t j = 0; j < no; ++j)
                god_[i][j] = LevelScalar(alg.form_value(
                    F, alg.bracket(alg.basis_elem(grading.I_half[i]),
                                   alg.basis_elem(grading.I_half[j]))));
    }

    // simple root vectors: joint eigenvectors of the g_0 action on g_{1/2},
    // normalized so that (e_alpha | f) = 1
    size_t no = grading.I_half.size();
    using Vec = std::vector<QQi>;
    std::vector<std::vector<Vec>> spaces;
    {
        std::vector<Vec> full;
        for (size_t i = 0; i < no; ++i) {
            Vec v(no);
            v[i] = QQi(1L);
            full.push_back(v);
        }
        spaces.push_back(full);
    }
    auto ad_on_half = [&](size_t u, const Vec& v) {
        AlgElem x(alg.dim());
        for (size_t i = 0; i < no; ++i)
            for (size_t m = 0; m < alg.dim(); ++m)
                x[m] = x[m] + v[i] * alg.structure[grading.g_zero[u]][grading.I_half[i]][m];
        Vec out(no);
        for (size_t i = 0; i < no; ++i) out[i] = x[grading.I_half[i]];
        return out;
    };
    for (size_t u = 0; u < ne; ++u) {
        std::vector<std::vector<Vec>> next;
        for (auto& sp : spaces) {
            if (sp.size() <= 1) {
                next.push_back(sp);
                continue;
            }
            size_t d = sp.size();
            // matrix of ad(u) in the coordinates of this subspace
            Mat<QQi> amb(no, d);
            for (size_t j = 0; j < d; ++j)
                for (size_t i = 0; i < no; ++i) amb.at(i, j) = sp[j][i];
            Mat<QQi> rest(d, d);
            for (size_t j = 0; j < d; ++j) {
                Vec img = ad_on_half(u, sp[j]);
                std::vector<QQi> rhs(img.begin(), img.end());
                auto x = solve(amb, rhs);
                if (x.empty()) throw std::runtime_error("degree 1/2 space is not g_0 stable");
                for (size_t i = 0; i < d; ++i) rest.at(i, j) = x[i];
            }
            auto eigs = rational_eigenvalues(rest);
            size_t covered = 0;
            std::vector<std::vector<Vec>> pieces;
            for (const auto& lam : eigs) {
                Mat<QQi> shifted = rest;
                for (size_t i = 0; i < d; ++i)
                    shifted.at(i, i) = shifted.at(i, i) - QQi(lam);
                auto ker = kernel_basis(shifted);
                if (ker.empty()) continue;
                std::vector<Vec> piece;
                for (auto& kv : ker) {
                    Vec w(no);
                    for (size_t j = 0; j < d; ++j)
                        for (size_t i = 0; i < no; ++i) w[i] = w[i] + kv[j] * sp[j][i];
                    piece.push_back(w);
                }
                covered += piece.size();
                pieces.push_back(std::move(piece));
            }
            if (covered != d) throw std::runtime_error("cannot split the weight spaces of g_{1/2}");
            for (auto& p : pieces) next.push_back(std::move(p));
        }
        spaces = std::move(next);
    }
    AlgElem fel = alg.basis_elem(alg.osp.f);
    for (auto& sp : spaces) {
        if (sp.size() != 1)
            throw std::runtime_error("simple root multiplicity > 1 is unsupported");
        Vec v = sp[0];
        AlgElem ve(alg.dim());
        for (size_t i = 0; i < no; ++i) ve[grading.I_half[i]] = v[i];
        QQi pair = alg.form_value(ve, fel);
        if (pair.is_zero()) throw std::runtime_error("f is not principal for this root basis");
        RootDatum r;
        int par = alg.elem_parity(ve);
        if (par != 1) throw std::runtime_error("even simple roots are unsupported");
        r.parity = par;
        r.e_odd.resize(no);
        AlgElem ea(alg.dim());
        for (size_t i = 0; i < no; ++i) {
            QQi c = v[i] / pair;
            r.e_odd[i] = LevelScalar(c);
            ea[grading.I_half[i]] = c;
        }
        AlgElem h = alg.bracket(fel, ea);
        r.coroot.resize(ne);
        for (size_t m = 0; m < alg.dim(); ++m) {
            if (h[m].is_zero()) continue;
            auto it = std::find(grading.g_zero.begin(), grading.g_zero.end(), m);
            if (it == grading.g_zero.end())
                throw std::runtime_error("[f, e_alpha] has a component outside g_0");
            r.coroot[it - grading.g_zero.begin()] = LevelScalar(h[m]);
        }
        r.alpha_of.resize(ne);
        for (size_t u = 0; u < ne; ++u) {
            AlgElem img = alg.bracket(alg.basis_elem(grading.g_zero[u]), ea);
            QQi lam;
            for (size_t i = 0; i < no; ++i) {
                size_t m = grading.I_half[i];
                if (!ea[m].is_zero()) {
                    lam = img[m] / ea[m];
                    break;
                }
            }
            for (size_t m = 0; m < alg.dim(); ++m)
                if (img[m] != lam * ea[m])
                    throw std::runtime_error("simple root vector is not a g_0 eigenvector");
            r.alpha_of[u] = LevelScalar(lam);
        }
        roots_.push_back(std::move(r));
    }
}

std::vector<FockState> ScreeningSet::basis_at(const mpq_class& delta) const {
    std::vector<FockState> out;
    size_t ne = num_even(), no = num_odd();
    FockState cur;
    std::function<void(uint32_t, uint32_t, const mpq_class&)> rec_od =
        [&](uint32_t f, uint32_t n, const mpq_class& rem) {
            if (rem == 0) {
                out.push_back(cur);
                return;
            }
            if (rem < 0) return;
            for (uint32_t ff = f; ff < no; ++ff)
                for (uint32_t nn = (ff == f ? n : 1);; ++nn) {
                    mpq_class w = mpq_class(2 * (long)nn - 1, 2);
                    if (w > rem) break;
                    cur.od.emplace_back(ff, nn);
                    rec_od(ff, nn + 1, rem - w);
                    cur.od.pop_back();
                }
        };
    std::function<void(uint32_t, uint32_t, const mpq_class&)> rec_ev =
        [&](uint32_t f, uint32_t m, const mpq_class& rem) {
            rec_od(0, 1, rem);
            for (uint32_t ff = f; ff < ne; ++ff)
                for (uint32_t mm = (ff == f ? m : 1); mpq_class((long)mm) <= rem; ++mm) {
                    cur.ev.emplace_back(ff, mm);
                    rec_ev(ff, mm, rem - mm);
                    cur.ev.pop_back();
                }
        };
    rec_ev(0, 1, delta);
    std::sort(out.begin(), out.end());
    return out;
}

FockPoly ScreeningSet::apply_even(const std::vector<LevelScalar>& coords, long r,
                                  const FockPoly& x,
                                  const std::vector<LevelScalar>* hw) const {
    FockPoly out;
    for (const auto& [st, c] : x) {
        if (r < 0) {
            for (size_t i = 0; i < coords.size(); ++i) {
                if (coords[i].is_zero()) continue;
                FockState ns = st;
                auto pos = std::upper_bound(ns.ev.begin(), ns.ev.end(),
                                            std::make_pair((uint32_t)i, (uint32_t)(-r)));
                ns.ev.insert(pos, {(uint32_t)i, (uint32_t)(-r)});
                fp_acc(out, {{ns, LevelScalar(1)}}, c * coords[i]);
            }
        } else if (r == 0) {
            if (!hw) throw std::runtime_error("zero mode needs the module's highest weight");
            LevelScalar s;
            for (size_t i = 0; i < coords.size(); ++i) s += coords[i] * (*hw)[i];
            if (!s.is_zero()) fp_acc(out, {{st, LevelScalar(1)}}, c * s);
        } else {
            for (size_t p = 0; p < st.ev.size(); ++p) {
                if (p > 0 && st.ev[p] == st.ev[p - 1]) continue;  // one per distinct entry
                auto [g, m] = st.ev[p];
                if ((long)m != r) continue;
                size_t mult = std::count(st.ev.begin(), st.ev.end(), st.ev[p]);
                LevelScalar s;
                for (size_t i = 0; i < coords.size(); ++i) s += coords[i] * gev_[i][g];
                if (s.is_zero()) continue;
                FockState ns = st;
                ns.ev.erase(ns.ev.begin() + p);
                fp_acc(out, {{ns, LevelScalar(1)}},
                       c * s * LevelScalar((long)mult) * LevelScalar(r));
            }
        }
    }
    return out;
}

FockPoly ScreeningSet::apply_odd(const std::vector<LevelScalar>& coords, long n,
                                 const FockPoly& x) const {
    FockPoly out;
    for (const auto& [st, c] : x) {
        if (n <= -1) {
            for (size_t i = 0; i < coords.size(); ++i) {
                if (coords[i].is_zero()) continue;
                std::pair<uint32_t, uint32_t> e{(uint32_t)i, (uint32_t)(-n)};
                auto pos = std::lower_bound(st.od.begin(), st.od.end(), e);
                if (pos != st.od.end() && *pos == e) continue;  // odd square
                FockState ns = st;
                size_t p = pos - st.od.begin();
                ns.od.insert(ns.od.begin() + p, e);
                LevelScalar sg = (p % 2) ? LevelScalar(-1) : LevelScalar(1);
                fp_acc(out, {{ns, LevelScalar(1)}}, c * coords[i] * sg);
            }
        } else {
            for (size_t p = 0; p < st.od.size(); ++p) {
                auto [g, m] = st.od[p];
                if ((long)m != n + 1) continue;
                LevelScalar s;
                for (size_t i = 0; i < coords.size(); ++i) s += coords[i] * god_[i][g];
                if (s.is_zero()) continue;
                FockState ns = st;
                ns.od.erase(ns.od.begin() + p);
                LevelScalar sg = (p % 2) ? LevelScalar(-1) : LevelScalar(1);
                fp_acc(out, {{ns, LevelScalar(1)}}, c * s * sg);
            }
        }
    }
    return out;
}

std::vector<LevelScalar> ScreeningSet::hw_vacuum() const {
    return std::vector<LevelScalar>(num_even());
}

std::vector<LevelScalar> ScreeningSet::hw_target(size_t root) const {
    std::vector<LevelScalar> out(num_even());
    for (size_t u = 0; u < out.size(); ++u) out[u] = LevelScalar(0) - roots_[root].alpha_of[u];
    return out;
}

FockPoly ScreeningSet::even_mode(size_t u, long r, const FockPoly& x,
                                 const std::vector<LevelScalar>& hw) const {
    std::vector<LevelScalar> coords(num_even());
    coords[u] = LevelScalar(1);
    return apply_even(coords, r, x, &hw);
}

std::map<long, FockPoly> ScreeningSet::exp_factors(size_t root, const FockPoly& x) const {
    const auto& dir = roots_[root].coroot;
    LevelScalar inv = LevelScalar(1) / level_;
    mpq_class cap = 0;
    for (const auto& [st, c] : x) cap = std::max(cap, state_weight(st));
    cap += 4;

    // annihilation factor exp( inv * sum_{n>=1} alpha_n z^{-n} / n )
    std::map<long, FockPoly> acc{{0, x}}, cur = acc;
    long j = 1;
    while (!cur.empty()) {
        std::map<long, FockPoly> nxt;
        for (const auto& [p, poly] : cur) {
            long nmax = 0;
            for (const auto& [st, c] : poly)
                for (const auto& [f, m] : st.ev) nmax = std::max(nmax, (long)m);
            for (long n = 1; n <= nmax; ++n) {
                FockPoly y = apply_even(dir, n, poly, nullptr);
                if (!y.empty())
                    fp_acc(nxt[p - n], y, inv / LevelScalar(n) / LevelScalar(j));
            }
        }
        for (auto it = nxt.begin(); it != nxt.end();) {
            strip_zeros(it->second);
            it = it->second.empty() ? nxt.erase(it) : std::next(it);
        }
        for (const auto& [p, poly] : nxt) fp_acc(acc[p], poly, LevelScalar(1));
        cur = std::move(nxt);
        ++j;
    }

    // creation factor exp( -inv * sum_{m>=1} alpha_{-m} z^{m} / m ), truncated
    std::map<long, FockPoly> out = acc;
    cur = acc;
    j = 1;
    while (!cur.empty()) {
        std::map<long, FockPoly> nxt;
        for (const auto& [p, poly] : cur)
            for (long m = 1; mpq_class(m) <= cap; ++m) {
                FockPoly y = apply_even(dir, -m, poly, nullptr);
                for (auto it = y.begin(); it != y.end();)
                    it = state_weight(it->first) > cap ? y.erase(it) : std::next(it);
                if (!y.empty())
                    fp_acc(nxt[p + m], y,
                           (LevelScalar(0) - inv) / LevelScalar(m) / LevelScalar(j));
            }
        for (auto it = nxt.begin(); it != nxt.end();) {
            strip_zeros(it->second);
            it = it->second.empty() ? nxt.erase(it) : std::next(it);
        }
        for (const auto& [p, poly] : nxt) fp_acc(out[p], poly, LevelScalar(1));
        cur = std::move(nxt);
        ++j;
    }
    for (auto it = out.begin(); it != out.end();) {
        strip_zeros(it->second);
        it = it->second.empty() ? out.erase(it) : std::next(it);
    }
    return out;
}

FockPoly ScreeningSet::residue(size_t root, const FockPoly& x, long t) const {
    const RootDatum& r = roots_[root];
    LevelScalar minv = LevelScalar(0) - LevelScalar(1) / level_;
    FockPoly out;
    if (flavor == Flavor::nonsusy) {
        auto parts = exp_factors(root, x);
        for (const auto& [p, poly] : parts)
            fp_acc(out, apply_odd(r.e_odd, p - t - 1, poly), LevelScalar(1));
    } else {
        // theta-coefficient terms: one odd mode on the right of the even
        // exponentials (annihilation side) or on their left (creation side)
        std::vector<long> ns;
        for (const auto& [st, c] : x)
            for (const auto& [f, m] : st.od) ns.push_back((long)m - 1);
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
        for (long n : ns) {
            FockPoly y = apply_odd(r.coroot, n, x);
            if (y.empty()) continue;
            auto parts = exp_factors(root, y);
            auto it = parts.find(t + n + 1);
            if (it != parts.end()) fp_acc(out, it->second, minv);
        }
        auto parts = exp_factors(root, x);
        for (const auto& [p, poly] : parts) {
            long m = t + 1 - p;
            if (m >= 1) fp_acc(out, apply_odd(r.coroot, -m, poly), minv);
        }
    }
    strip_zeros(out);
    return out;
}

FockPoly ScreeningSet::bare_mode(size_t root, long t, const FockPoly& x) const {
    auto parts = exp_factors(root, x);
    auto it = parts.find(t);
    return it == parts.end() ? FockPoly{} : it->second;
}

std::vector<FockPoly> ScreeningSet::kernel_at(const mpq_class& delta) const {
    auto src = basis_at(delta);
    auto tgt = basis_at(delta - mpq_class(1, 2));
    std::map<FockState, size_t> row;
    for (size_t i = 0; i < tgt.size(); ++i) row[tgt[i]] = i;
    Mat<LevelScalar> M(roots_.size() * tgt.size(), src.size());
    for (size_t j = 0; j < src.size(); ++j) {
        FockPoly unit{{src[j], LevelScalar(1)}};
        for (size_t a = 0; a < roots_.size(); ++a) {
            FockPoly img = residue(a, unit);
            for (const auto& [st, c] : img) {
                auto it = row.find(st);
                if (it == row.end())
                    throw std::runtime_error("screening image leaves the weight component");
                M.at(a * tgt.size() + it->second, j) = c;
            }
        }
    }
    std::vector<FockPoly> out;
    for (auto& v : kernel_basis(std::move(M))) {
        FockPoly p;
        for (size_t j = 0; j < src.size(); ++j)
            if (!v[j].is_zero()) p[src[j]] = v[j];
        out.push_back(std::move(p));
    }
    return out;
}

FockPoly ScreeningSet::state_of(const BrstComplex& c, const AbsPoly& p) const {
    size_t ne = num_even(), no = num_odd();
    FockPoly out;
    for (const auto& [mono, coeff] : p) {
        FockPoly cur{{FockState{}, coeff}};
        for (size_t i = mono.size(); i-- > 0;) {
            const Letter& L = c.letters()[mono[i].first];
            if (!L.in_miura_image)
                throw std::runtime_error("letter " + L.name + " is not a free field");
            uint32_t dp = mono[i].second;
            LevelScalar fact(1);
            for (uint32_t d = 2; d <= dp; ++d) fact *= LevelScalar((long)d);
            long mode = -((long)dp + 1);
            bool even_family = (flavor == Flavor::susy) ? (L.kind == 1) : (L.kind == 0);
            size_t fam;
            if (L.kind == 2) {
                fam = std::find(grading.I_half.begin(), grading.I_half.end(), L.basis_index) -
                      grading.I_half.begin();
            } else {
                fam = std::find(grading.g_zero.begin(), grading.g_zero.end(), L.basis_index) -
                      grading.g_zero.begin();
            }
            if (even_family) {
                std::vector<LevelScalar> co(ne);
                co[fam] = fact;
                cur = apply_even(co, mode, cur, nullptr);
            } else {
                std::vector<LevelScalar> co(no);
                co[fam] = fact;
                cur = apply_odd(co, mode, cur);
            }
        }
        fp_acc(out, cur, LevelScalar(1));
    }
    strip_zeros(out);
    return out;
}

FockPoly ScreeningSet::tau_state(const ScreeningSet& src, const FockPoly& x,
                                 const ScreeningSet& dst, const LevelScalar& inv_root) {
    if (src.flavor != Flavor::nonsusy || dst.flavor != Flavor::susy)
        throw std::runtime_error("tau_state maps the nonsusy Fock side to the susy one");
    // odd family a (fermion of u = I_half[a]) maps to inv_root * [f, u]
    std::vector<std::vector<LevelScalar>> fmap;
    AlgElem fel = src.alg.basis_elem(src.alg.osp.f);
    for (size_t a = 0; a < src.grading.I_half.size(); ++a) {
        AlgElem h = src.alg.bracket(fel, src.alg.basis_elem(src.grading.I_half[a]));
        std::vector<LevelScalar> co(dst.num_odd());
        for (size_t m = 0; m < src.alg.dim(); ++m) {
            if (h[m].is_zero()) continue;
            auto it = std::find(dst.grading.g_zero.begin(), dst.grading.g_zero.end(), m);
            if (it == dst.grading.g_zero.end())
                throw std::runtime_error("[f, u] has a component outside g_0");
            co[it - dst.grading.g_zero.begin()] = LevelScalar(h[m]) * inv_root;
        }
        fmap.push_back(std::move(co));
    }
    FockPoly out;
    for (const auto& [st, c] : x) {
        FockPoly cur{{FockState{st.ev, {}}, c}};
        for (size_t i = st.od.size(); i-- > 0;)
            cur = dst.apply_odd(fmap[st.od[i].first], -(long)st.od[i].second, cur);
        fp_acc(out, cur, LevelScalar(1));
    }
    strip_zeros(out);
    return out;
}

}  // namespace walg
