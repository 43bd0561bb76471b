#include "walg/vertex.hpp"

#include <sstream>

namespace walg {

// ------------------------------------------------------------- linear helpers

void vp_acc(VPoly& a, const VPoly& b, const LevelScalar& c) {
    if (c.is_zero()) return;
    for (const auto& [m, v] : b) {
        auto it = a.find(m);
        if (it == a.end()) {
            LevelScalar nv = v * c;
            if (!nv.is_zero()) a.emplace(m, std::move(nv));
        } else {
            it->second += v * c;
            if (it->second.is_zero()) a.erase(it);
        }
    }
}

VPoly vp_scaled(const VPoly& a, const LevelScalar& c) {
    VPoly r;
    vp_acc(r, a, c);
    return r;
}

VPoly vp_add(const VPoly& a, const VPoly& b) {
    VPoly r = a;
    vp_acc(r, b, LevelScalar(1L));
    return r;
}

VPoly vp_sub(const VPoly& a, const VPoly& b) {
    VPoly r = a;
    vp_acc(r, b, LevelScalar(-1L));
    return r;
}

bool vp_is_zero(const VPoly& a) { return a.empty(); }

void lp_acc(LPoly& a, const LPoly& b, const LevelScalar& c) {
    if (b.size() > a.size()) a.resize(b.size());
    for (size_t n = 0; n < b.size(); ++n) vp_acc(a[n], b[n], c);
}

void lp_acc_at(LPoly& a, size_t n, const VPoly& b, const LevelScalar& c) {
    if (n >= a.size()) a.resize(n + 1);
    vp_acc(a[n], b, c);
}

void lp_trim(LPoly& a) {
    while (!a.empty() && a.back().empty()) a.pop_back();
}

bool lp_is_zero(const LPoly& a) {
    for (const auto& v : a)
        if (!v.empty()) return false;
    return true;
}

bool lp_equal(const LPoly& a, const LPoly& b) {
    size_t n = std::max(a.size(), b.size());
    for (size_t j = 0; j < n; ++j) {
        const VPoly* x = j < a.size() ? &a[j] : nullptr;
        const VPoly* y = j < b.size() ? &b[j] : nullptr;
        if (x && y) {
            if (*x != *y) return false;
        } else if (x ? !x->empty() : !y->empty()) {
            return false;
        }
    }
    return true;
}

static LevelScalar binom_scalar(size_t n, size_t m) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), (unsigned long)n, (unsigned long)m);
    return LevelScalar(mpq_class(b));
}

// ------------------------------------------------------------------ generators

size_t VertexEngine::add_generator(const std::string& name, int parity, const mpq_class& weight,
                                   long charge) {
    if (index_.count(name)) throw std::runtime_error("duplicate generator name: " + name);
    gens_.push_back({name, parity, weight, charge});
    index_[name] = gens_.size() - 1;
    return gens_.size() - 1;
}

size_t VertexEngine::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::runtime_error("unknown generator: " + name);
    return it->second;
}

void VertexEngine::set_bracket(size_t g, size_t h, LPoly entry) {
    lp_trim(entry);
    table_[{g, h}] = std::move(entry);
    skew_cache_.clear();
    lb_cache_.clear();
    left_cache_.clear();
}

bool VertexEngine::has_bracket(size_t g, size_t h) const {
    return table_.count({g, h}) || table_.count({h, g});
}

VPoly VertexEngine::vacuum() const { return VPoly{{Mono{}, LevelScalar(1L)}}; }

VPoly VertexEngine::gen(size_t i, uint32_t dp) const {
    return VPoly{{Mono{Factor{(uint32_t)i, dp}}, LevelScalar(1L)}};
}

VPoly VertexEngine::gen(const std::string& name, uint32_t dp) const {
    return gen(index_of(name), dp);
}

int VertexEngine::mono_parity(const Mono& m) const {
    int p = 0;
    for (const auto& f : m) p ^= gens_[f.first].parity;
    return p;
}

mpq_class VertexEngine::mono_weight(const Mono& m) const {
    mpq_class w = 0;
    for (const auto& f : m) w += gens_[f.first].weight + f.second;
    return w;
}

long VertexEngine::mono_charge(const Mono& m) const {
    long c = 0;
    for (const auto& f : m) c += gens_[f.first].charge;
    return c;
}

// --------------------------------------------------------------- bracket base

LPoly VertexEngine::skew_transform(const LPoly& p, int parity_a, int parity_b) const {
    // [b_x a] = -(-1)^{p(a)p(b)} sum_n sum_{m<=n} (-1)^n binom(n,m) x^{n-m} d^m(P_n)
    LPoly r;
    LevelScalar outer((parity_a && parity_b) ? 1L : -1L);
    for (size_t n = 0; n < p.size(); ++n) {
        if (p[n].empty()) continue;
        VPoly dm = p[n];
        LevelScalar sn(n % 2 ? -1L : 1L);
        for (size_t m = 0; m <= n; ++m) {
            lp_acc_at(r, n - m, dm, outer * sn * binom_scalar(n, m));
            if (m < n) dm = dP(dm);
        }
    }
    lp_trim(r);
    return r;
}

const LPoly& VertexEngine::base_bracket(size_t g, size_t h) const {
    auto it = table_.find({g, h});
    if (it != table_.end()) return it->second;
    auto sk = skew_cache_.find({g, h});
    if (sk != skew_cache_.end()) return sk->second;
    auto rev = table_.find({h, g});
    if (rev == table_.end())
        throw std::runtime_error("missing bracket table entry for (" + gens_[g].name + ", " +
                                 gens_[h].name + ")");
    LPoly r = skew_transform(rev->second, gens_[h].parity, gens_[g].parity);
    return skew_cache_.emplace(std::make_pair(g, h), std::move(r)).first->second;
}

// ------------------------------------------------------------- normal product

VPoly VertexEngine::swap_correction(const Factor& u, const Factor& v) const {
    // integral_{-d}^0 [u_x v] dx = sum_j (-1)^j/(j+1) d^{j+1}(C_j)
    LPoly c = lb_mono(Mono{u}, Mono{v});
    VPoly r;
    for (size_t j = 0; j < c.size(); ++j) {
        if (c[j].empty()) continue;
        mpq_class coef(j % 2 ? -1 : 1, (long)(j + 1));
        vp_acc(r, dP_iter(c[j], j + 1), LevelScalar(coef));
    }
    return r;
}

VPoly VertexEngine::no_left(const Factor& u, const Mono& m) const {
    if (m.empty()) return VPoly{{Mono{u}, LevelScalar(1L)}};
    auto key = std::make_pair(u, m);
    auto hit = left_cache_.find(key);
    if (hit != left_cache_.end()) return hit->second;

    const Factor& v = m.front();
    Mono z(m.begin() + 1, m.end());
    VPoly r;
    if (u < v || (u == v && gens_[u.first].parity == 0)) {
        Mono out;
        out.reserve(m.size() + 1);
        out.push_back(u);
        out.insert(out.end(), m.begin(), m.end());
        r.emplace(std::move(out), LevelScalar(1L));
    } else if (u == v) {
        // odd square: :u(:uZ:): = 1/2 :(integral_{-d}^0 [u_x u] dx) Z:
        VPoly zp{{z, LevelScalar(1L)}};
        r = vp_scaled(no_mul(swap_correction(u, u), zp), LevelScalar(mpq_class(1, 2)));
    } else {
        // move u past v: :u(:vZ:): = s :v(:uZ:): + :(integral [u_x v]) Z:
        LevelScalar sg((gens_[u.first].parity && gens_[v.first].parity) ? -1L : 1L);
        VPoly inner = no_left(u, z);
        vp_acc(r, no_left_poly(v, inner), sg);
        VPoly zp{{z, LevelScalar(1L)}};
        vp_acc(r, no_mul(swap_correction(u, v), zp), LevelScalar(1L));
    }
    return left_cache_.emplace(std::move(key), std::move(r)).first->second;
}

VPoly VertexEngine::no_left_poly(const Factor& u, const VPoly& y) const {
    VPoly r;
    for (const auto& [m, c] : y) vp_acc(r, no_left(u, m), c);
    return r;
}

VPoly VertexEngine::normalize_factors(const std::vector<Factor>& fs) const {
    VPoly r = VPoly{{Mono{}, LevelScalar(1L)}};
    for (size_t i = fs.size(); i-- > 0;) r = no_left_poly(fs[i], r);
    return r;
}

VPoly VertexEngine::dP(const VPoly& a) const {
    VPoly r;
    for (const auto& [m, c] : a) {
        for (size_t i = 0; i < m.size(); ++i) {
            std::vector<Factor> fs(m.begin(), m.end());
            fs[i].second += 1;
            vp_acc(r, normalize_factors(fs), c);
        }
    }
    return r;
}

VPoly VertexEngine::dP_iter(const VPoly& a, size_t n) const {
    VPoly r = a;
    for (size_t j = 0; j < n; ++j) r = dP(r);
    return r;
}

VPoly VertexEngine::no_mul(const VPoly& a, const VPoly& b) const {
    VPoly r;
    for (const auto& [ma, ca] : a) {
        if (ma.empty()) {
            vp_acc(r, b, ca);
            continue;
        }
        Factor u = ma.front();
        Mono x(ma.begin() + 1, ma.end());
        if (x.empty()) {
            vp_acc(r, no_left_poly(u, b), ca);
            continue;
        }
        // quasi-associativity: (:uX:)_{(-1)}b = :u(:Xb:): plus the two
        // correction sums with negative modes rewritten through derivatives
        VPoly xp{{x, LevelScalar(1L)}};
        VPoly term = no_left_poly(u, no_mul(xp, b));
        LPoly cx = lb(xp, b);
        for (size_t j = 0; j < cx.size(); ++j) {
            if (cx[j].empty()) continue;
            Factor du{u.first, u.second + (uint32_t)j + 1};
            vp_acc(term, no_left_poly(du, cx[j]), LevelScalar(mpq_class(1, (long)(j + 1))));
        }
        LPoly cu = lb(gen(u.first, u.second), b);
        LevelScalar sg((gens_[u.first].parity && mono_parity(x)) ? -1L : 1L);
        for (size_t j = 0; j < cu.size(); ++j) {
            if (cu[j].empty()) continue;
            vp_acc(term, no_mul(dP_iter(xp, j + 1), cu[j]),
                   sg * LevelScalar(mpq_class(1, (long)(j + 1))));
        }
        vp_acc(r, term, ca);
    }
    return r;
}

// --------------------------------------------------------------- lambda bracket

LPoly VertexEngine::lb(const VPoly& a, const VPoly& b) const {
    LPoly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) lp_acc(r, lb_mono(ma, mb), ca * cb);
    lp_trim(r);
    return r;
}

LPoly VertexEngine::lb_mono(const Mono& a, const Mono& b) const {
    if (a.empty() || b.empty()) return LPoly{};
    auto key = std::make_pair(a, b);
    auto hit = lb_cache_.find(key);
    if (hit != lb_cache_.end()) return hit->second;

    LPoly r;
    if (b.size() >= 2) {
        // non-commutative Wick on the right argument:
        // [a_x :vY:] = :[a_x v]Y: + s :v[a_x Y]: + integral_0^x [[a_x v]_y Y] dy
        Factor v = b.front();
        Mono y(b.begin() + 1, b.end());
        VPoly yp{{y, LevelScalar(1L)}};
        LPoly c = lb_mono(a, Mono{v});
        for (size_t j = 0; j < c.size(); ++j)
            if (!c[j].empty()) lp_acc_at(r, j, no_mul(c[j], yp), LevelScalar(1L));
        LevelScalar sg((mono_parity(a) && gens_[v.first].parity) ? -1L : 1L);
        LPoly cy = lb_mono(a, y);
        for (size_t j = 0; j < cy.size(); ++j)
            if (!cy[j].empty()) lp_acc_at(r, j, no_left_poly(v, cy[j]), sg);
        for (size_t j = 0; j < c.size(); ++j) {
            if (c[j].empty()) continue;
            LPoly d = lb(c[j], yp);
            for (size_t m = 0; m < d.size(); ++m)
                if (!d[m].empty())
                    lp_acc_at(r, j + m + 1, d[m], LevelScalar(mpq_class(1, (long)(m + 1))));
        }
    } else if (b.front().second > 0) {
        // [a_x d^n h] = (x + d)^n [a_x h]
        LPoly base = lb_mono(a, Mono{Factor{b.front().first, 0}});
        for (uint32_t s = 0; s < b.front().second; ++s) {
            LPoly nx(base.size() + 1);
            for (size_t n = 0; n < base.size(); ++n) {
                vp_acc(nx[n + 1], base[n], LevelScalar(1L));
                vp_acc(nx[n], dP(base[n]), LevelScalar(1L));
            }
            base = std::move(nx);
        }
        r = std::move(base);
    } else if (a.size() >= 2) {
        // non-commutative Wick on the left argument:
        // [:uX:_x h] = :(e^{d d_x}u)[X_x h]: + s :(e^{d d_x}X)[u_x h]:
        //              + s integral_0^x [X_y [u_{x-y} h]] dy
        Factor u = a.front();
        Mono x(a.begin() + 1, a.end());
        VPoly xp{{x, LevelScalar(1L)}};
        LevelScalar sg((gens_[u.first].parity && mono_parity(x)) ? -1L : 1L);
        LPoly cb = lb_mono(x, b);
        for (size_t n = 0; n < cb.size(); ++n) {
            if (cb[n].empty()) continue;
            for (size_t j = 0; j <= n; ++j)
                lp_acc_at(r, n - j, no_mul(gen(u.first, u.second + (uint32_t)j), cb[n]),
                          binom_scalar(n, j));
        }
        LPoly cu = lb_mono(Mono{u}, b);
        VPoly djx = xp;
        size_t maxn = cu.size();
        for (size_t j = 0; j < maxn; ++j) {
            if (j > 0) djx = dP(djx);
            for (size_t n = j; n < cu.size(); ++n)
                if (!cu[n].empty())
                    lp_acc_at(r, n - j, no_mul(djx, cu[n]), sg * binom_scalar(n, j));
        }
        for (size_t i = 0; i < cu.size(); ++i) {
            if (cu[i].empty()) continue;
            LPoly q = lb(xp, cu[i]);
            for (size_t j = 0; j < q.size(); ++j) {
                if (q[j].empty()) continue;
                mpq_class coef = 0;
                for (size_t rr = 0; rr <= i; ++rr) {
                    mpz_class bi;
                    mpz_bin_uiui(bi.get_mpz_t(), (unsigned long)i, (unsigned long)rr);
                    mpq_class t(bi);
                    t /= (long)(j + rr + 1);
                    if (rr % 2) t = -t;
                    coef += t;
                }
                lp_acc_at(r, i + j + 1, q[j], sg * LevelScalar(coef));
            }
        }
    } else {
        // both sides single factors; pull derivatives out by sesquilinearity
        const LPoly& t = base_bracket(a.front().first, b.front().first);
        uint32_t m = a.front().second;
        LevelScalar sm(m % 2 ? -1L : 1L);
        for (size_t n = 0; n < t.size(); ++n)
            if (!t[n].empty()) lp_acc_at(r, n + m, t[n], sm);
    }
    lp_trim(r);
    return lb_cache_.emplace(std::move(key), std::move(r)).first->second;
}

// ------------------------------------------------------------------- analysis

std::optional<mpq_class> VertexEngine::hamiltonian_weight(const VPoly& a) const {
    if (a.empty()) return mpq_class(0);
    mpq_class w = mono_weight(a.begin()->first);
    for (const auto& [m, c] : a)
        if (mono_weight(m) != w) return std::nullopt;
    return w;
}

std::optional<long> VertexEngine::charge_of(const VPoly& a) const {
    if (a.empty()) return 0L;
    long c0 = mono_charge(a.begin()->first);
    for (const auto& [m, c] : a)
        if (mono_charge(m) != c0) return std::nullopt;
    return c0;
}

BiPoly VertexEngine::jacobi_residual(const VPoly& a, const VPoly& b, const VPoly& c) const {
    BiPoly acc;
    auto add = [&acc](size_t i, size_t j, const VPoly& v, const LevelScalar& s) {
        if (v.empty() || s.is_zero()) return;
        auto& slot = acc[{i, j}];
        vp_acc(slot, v, s);
        if (slot.empty()) acc.erase({i, j});
    };
    int pa = a.empty() ? 0 : mono_parity(a.begin()->first);
    int pb = b.empty() ? 0 : mono_parity(b.begin()->first);
    LevelScalar sab((pa && pb) ? -1L : 1L);

    LPoly bc = lb(b, c);
    for (size_t j = 0; j < bc.size(); ++j) {
        LPoly t = lb(a, bc[j]);
        for (size_t i = 0; i < t.size(); ++i) add(i, j, t[i], LevelScalar(1L));
    }
    LPoly ac = lb(a, c);
    for (size_t i = 0; i < ac.size(); ++i) {
        LPoly t = lb(b, ac[i]);
        for (size_t j = 0; j < t.size(); ++j) add(i, j, t[j], LevelScalar(0L) - sab);
    }
    LPoly ab = lb(a, b);
    for (size_t n = 0; n < ab.size(); ++n) {
        if (ab[n].empty()) continue;
        LPoly t = lb(ab[n], c);
        for (size_t m = 0; m < t.size(); ++m)
            for (size_t rr = 0; rr <= m; ++rr)
                add(n + rr, m - rr, t[m], LevelScalar(0L) - binom_scalar(m, rr));
    }
    return acc;
}

AxiomReport VertexEngine::axiom_check(const mpq_class& weight_cutoff) const {
    AxiomReport rep;
    size_t n = gens_.size();

    auto poly_parity = [this](const VPoly& p) {
        return p.empty() ? 0 : mono_parity(p.begin()->first);
    };
    auto check_pair = [&](const VPoly& A, const VPoly& B, const std::string& na,
                          const std::string& nb) {
        LPoly ab = lb(A, B);
        LPoly ba = lb(B, A);
        LPoly expect = skew_transform(ab, poly_parity(A), poly_parity(B));
        ++rep.pairs_checked;
        if (!lp_equal(ba, expect))
            rep.failures.push_back("skew-symmetry fails for (" + na + ", " + nb + ")");
    };
    auto check_triple = [&](const VPoly& A, const VPoly& B, const VPoly& C, const std::string& na,
                            const std::string& nb, const std::string& nc) {
        BiPoly res = jacobi_residual(A, B, C);
        ++rep.triples_checked;
        if (!res.empty())
            rep.failures.push_back("Jacobi identity fails for (" + na + ", " + nb + ", " + nc +
                                   ")");
    };

    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) check_pair(gen(i), gen(j), gens_[i].name, gens_[j].name);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t l = 0; l < n; ++l)
                check_triple(gen(i), gen(j), gen(l), gens_[i].name, gens_[j].name, gens_[l].name);

    // two-factor monomials of bounded weight against all generator pairs
    std::vector<std::pair<VPoly, std::string>> monos;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            if (gens_[i].weight + gens_[j].weight > weight_cutoff) continue;
            VPoly m = no_mul(gen(i), gen(j));
            if (m.empty()) continue;
            monos.push_back({m, ":" + gens_[i].name + " " + gens_[j].name + ":"});
        }
    for (const auto& [m, nm] : monos) {
        for (size_t i = 0; i < n; ++i) {
            check_pair(m, gen(i), nm, gens_[i].name);
            for (size_t j = i; j < n; ++j)
                check_triple(gen(i), gen(j), m, gens_[i].name, gens_[j].name, nm);
        }
    }
    return rep;
}

// ------------------------------------------------------------------- printing

std::string VertexEngine::factor_str(const Factor& f) const {
    const std::string& nm = gens_[f.first].name;
    if (f.second == 0) return nm;
    if (f.second == 1) return "d" + nm;
    return "d" + std::to_string(f.second) + "(" + nm + ")";
}

std::string VertexEngine::mono_str(const Mono& m) const {
    if (m.empty()) return "1";
    if (m.size() == 1) return factor_str(m[0]);
    std::string s = ":";
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) s += " ";
        s += factor_str(m[i]);
    }
    return s + ":";
}

std::string VertexEngine::str(const VPoly& a) const {
    if (a.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : a) {
        if (!first) out << " + ";
        first = false;
        if (m.empty()) {
            out << c.str();
        } else if (c.is_one()) {
            out << mono_str(m);
        } else {
            std::string cs = c.str();
            if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
            out << cs << "*" << mono_str(m);
        }
    }
    return out.str();
}

std::string VertexEngine::str(const LPoly& a) const {
    std::ostringstream out;
    bool first = true;
    for (size_t nu = 0; nu < a.size(); ++nu) {
        if (a[nu].empty()) continue;
        if (!first) out << " + ";
        first = false;
        if (nu == 0)
            out << str(a[nu]);
        else
            out << "x^" << nu << "*(" << str(a[nu]) << ")";
    }
    if (first) return "0";
    return out.str();
}

}  // namespace walg
