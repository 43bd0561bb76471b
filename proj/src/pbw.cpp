#include "walg/pbw.hpp"

#include <stdexcept>

namespace walg {

void pb_acc(PbwPoly& a, const PbwPoly& b, const LevelScalar& c) {
    if (c.is_zero()) return;
    for (const auto& [m, v] : b) {
        auto it = a.find(m);
        if (it == a.end()) {
            LevelScalar nv = v * c;
            if (!nv.is_zero()) a.emplace(m, nv);
        } else {
            it->second = it->second + v * c;
            if (it->second.is_zero()) a.erase(it);
        }
    }
}

PbwPoly pb_scaled(const PbwPoly& a, const LevelScalar& c) {
    PbwPoly r;
    pb_acc(r, a, c);
    return r;
}

PbwPoly pb_sub(const PbwPoly& a, const PbwPoly& b) {
    PbwPoly r = a;
    pb_acc(r, b, LevelScalar(-1L));
    return r;
}

bool pb_is_zero(const PbwPoly& a) { return a.empty(); }

size_t PbwAlgebra::add_generator(const std::string& name, int parity,
                                 const mpq_class& weight) {
    if (index_.count(name)) throw std::runtime_error("duplicate generator: " + name);
    gens_.push_back({name, parity, weight});
    index_[name] = gens_.size() - 1;
    return gens_.size() - 1;
}

size_t PbwAlgebra::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::runtime_error("unknown generator: " + name);
    return it->second;
}

void PbwAlgebra::set_bracket(size_t g, size_t h, PbwPoly entry) {
    table_[{g, h}] = std::move(entry);
    skew_cache_.clear();
    norm_cache_.clear();
}

bool PbwAlgebra::has_bracket(size_t g, size_t h) const {
    return table_.count({g, h}) || table_.count({h, g});
}

const PbwPoly& PbwAlgebra::bracket(size_t g, size_t h) const {
    auto it = table_.find({g, h});
    if (it != table_.end()) return it->second;
    auto jt = table_.find({h, g});
    if (jt == table_.end())
        throw std::runtime_error("bracket not set: (" + gens_[g].name + ", " +
                                 gens_[h].name + ")");
    auto ct = skew_cache_.find({g, h});
    if (ct != skew_cache_.end()) return ct->second;
    long sg = (gens_[g].parity && gens_[h].parity) ? 1 : -1;
    return skew_cache_[{g, h}] = pb_scaled(jt->second, LevelScalar(sg));
}

PbwPoly PbwAlgebra::one() const {
    PbwPoly r;
    r[PbwMono{}] = LevelScalar(1L);
    return r;
}

PbwPoly PbwAlgebra::gen(size_t i) const {
    PbwPoly r;
    r[PbwMono{(uint32_t)i}] = LevelScalar(1L);
    return r;
}

PbwPoly PbwAlgebra::gen(const std::string& name) const { return gen(index_of(name)); }

int PbwAlgebra::mono_parity(const PbwMono& m) const {
    int p = 0;
    for (uint32_t g : m) p ^= gens_[g].parity;
    return p;
}

mpq_class PbwAlgebra::mono_weight(const PbwMono& m) const {
    mpq_class w = 0;
    for (uint32_t g : m) w += gens_[g].weight;
    return w;
}

int PbwAlgebra::parity_of(const PbwPoly& a) const {
    if (a.empty()) return -2;
    int p = mono_parity(a.begin()->first);
    for (const auto& [m, c] : a)
        if (mono_parity(m) != p) return -1;
    return p;
}

PbwPoly PbwAlgebra::normalize_word(const std::vector<uint32_t>& w) const {
    // find the leftmost violation of the PBW order
    size_t bad = w.size();
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] > w[i + 1] || (w[i] == w[i + 1] && gens_[w[i]].parity)) {
            bad = i;
            break;
        }
    if (bad == w.size()) {
        PbwPoly r;
        r[w] = LevelScalar(1L);
        return r;
    }
    PbwMono key(w);
    auto it = norm_cache_.find(key);
    if (it != norm_cache_.end()) return it->second;

    uint32_t y = w[bad], x = w[bad + 1];
    PbwPoly out;
    if (y == x) {
        // odd square: g g = (1/2)[g, g]
        const PbwPoly& br = bracket(y, y);
        for (const auto& [bm, bc] : br) {
            std::vector<uint32_t> nw(w.begin(), w.begin() + bad);
            nw.insert(nw.end(), bm.begin(), bm.end());
            nw.insert(nw.end(), w.begin() + bad + 2, w.end());
            pb_acc(out, normalize_word(nw), bc * LevelScalar(mpq_class(1, 2)));
        }
    } else {
        long sg = (gens_[y].parity && gens_[x].parity) ? -1 : 1;
        std::vector<uint32_t> sw(w);
        std::swap(sw[bad], sw[bad + 1]);
        pb_acc(out, normalize_word(sw), LevelScalar(sg));
        const PbwPoly& br = bracket(y, x);
        for (const auto& [bm, bc] : br) {
            std::vector<uint32_t> nw(w.begin(), w.begin() + bad);
            nw.insert(nw.end(), bm.begin(), bm.end());
            nw.insert(nw.end(), w.begin() + bad + 2, w.end());
            pb_acc(out, normalize_word(nw), bc);
        }
    }
    return norm_cache_[key] = out;
}

PbwPoly PbwAlgebra::mul(const PbwPoly& a, const PbwPoly& b) const {
    PbwPoly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            std::vector<uint32_t> w(ma);
            w.insert(w.end(), mb.begin(), mb.end());
            pb_acc(out, normalize_word(w), ca * cb);
        }
    return out;
}

PbwPoly PbwAlgebra::commutator(const PbwPoly& a, const PbwPoly& b) const {
    int pa = parity_of(a), pb = parity_of(b);
    if (pa == -2 || pb == -2) return {};
    if (pa == -1 || pb == -1)
        throw std::runtime_error("commutator needs parity-homogeneous arguments");
    long sg = (pa && pb) ? 1 : -1;
    PbwPoly out = mul(a, b);
    pb_acc(out, mul(b, a), LevelScalar(sg));
    return out;
}

PbwPoly PbwAlgebra::derivation(const std::vector<PbwPoly>& images, int der_parity,
                               const PbwPoly& x) const {
    PbwPoly out;
    for (const auto& [m, c] : x) {
        int lead = 0;  // parity of the prefix
        for (size_t i = 0; i < m.size(); ++i) {
            long sg = (der_parity && lead) ? -1 : 1;
            PbwPoly pre;
            pre[PbwMono(m.begin(), m.begin() + i)] = LevelScalar(1L);
            PbwPoly suf;
            suf[PbwMono(m.begin() + i + 1, m.end())] = LevelScalar(1L);
            pb_acc(out, mul(pre, mul(images[m[i]], suf)), c * LevelScalar(sg));
            lead ^= gens_[m[i]].parity;
        }
    }
    return out;
}

PbwReport PbwAlgebra::check_associativity() const {
    PbwReport rep;
    size_t n = gens_.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                PbwPoly lhs = mul(mul(gen(a), gen(b)), gen(c));
                PbwPoly rhs = mul(gen(a), mul(gen(b), gen(c)));
                if (!pb_is_zero(pb_sub(lhs, rhs)))
                    rep.failures.push_back("rewriting not associative on (" +
                                           gens_[a].name + ", " + gens_[b].name + ", " +
                                           gens_[c].name + ")");
            }
    return rep;
}

std::string PbwAlgebra::str(const PbwPoly& a) const {
    if (a.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : a) {
        if (!first) out += " + ";
        first = false;
        std::string ms;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i) ms += " ";
            ms += gens_[m[i]].name;
        }
        if (m.empty()) {
            out += c.str();
        } else if (c.is_one()) {
            out += ms;
        } else {
            std::string cs = c.str();
            if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
            out += cs + "*" + ms;
        }
    }
    return out;
}

}  // namespace walg
