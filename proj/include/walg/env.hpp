#ifndef WALG_ENV_HPP
#define WALG_ENV_HPP

#include "walg/liealg.hpp"
#include "walg/pbw.hpp"
#include "walg/zhu.hpp"

namespace walg {

// Universal enveloping algebra of the doubled current algebra t(g) = g + gbar
// with brackets [abar, b] = [a,b]bar and [abar, bbar] = (-1)^{p(a)} K (a|b),
// the central element K specialized to `level`.  The PBW order puts the
// letters of g_{<=0} (sorted by weight, then name) before the nilpotent
// letters, so reduction modulo the left ideal (n + chi(n)) is a suffix
// rewrite on normal-form words.
class TakiffAlgebra {
public:
    // half_cartan replaces the Cartan basis vector H by x = H/2 (useful when
    // worked identities are written in x).
    TakiffAlgebra(const AlgebraSpec& g, const LevelScalar& level, bool half_cartan);
    TakiffAlgebra(const TakiffAlgebra&) = delete;
    TakiffAlgebra& operator=(const TakiffAlgebra&) = delete;

    AlgebraSpec base;      // possibly with the Cartan rescaled
    GradingData grading;   // j-grades per basis index (unchanged by rescale)
    PbwAlgebra u;
    LevelScalar level;

    size_t bar(size_t a) const { return bar_[a]; }
    size_t plain(size_t a) const { return plain_[a]; }
    size_t basis_of(uint32_t gi) const { return basis_[gi]; }
    bool is_bar(uint32_t gi) const { return isbar_[gi] != 0; }
    bool is_nil(uint32_t gi) const { return gi >= first_nil_; }
    size_t first_nil() const { return first_nil_; }

    // character of the nilpotent half scaled by ell: chi(n) = 0 and
    // chi(nbar) = -ell (f|n); zero on the other letters
    LevelScalar chi(uint32_t gi, const LevelScalar& ell) const;

    PbwPoly plain_elem(const AlgElem& v) const;
    PbwPoly bar_elem(const AlgElem& v) const;

    // image in U / U(n + chi(n)): trailing nilpotent letters replaced by
    // -chi(letter)
    PbwPoly reduce(const PbwPoly& x, const LevelScalar& ell) const;
    // super commutator with generator gi followed by reduction
    PbwPoly ad(uint32_t gi, const PbwPoly& x, const LevelScalar& ell) const;
    // echelonized basis of the simultaneous kernel of all ad(nil letter)
    // maps on normal words in the g_{<=0} letters of length <= cutoff;
    // always contains the unit
    std::vector<PbwPoly> invariants(size_t cutoff, const LevelScalar& ell) const;

    // the grading automorphism sending each letter of grade j to
    // ell^{-2j} times itself (intertwines the characters chi and chi_ell)
    PbwPoly scaled(const QQi& ell, const PbwPoly& x) const;

    ~TakiffAlgebra() = default;

private:
    std::vector<size_t> bar_, plain_;
    std::vector<size_t> basis_;
    std::vector<char> isbar_;
    size_t first_nil_ = 0;
};

// Lie algebra cohomology model: the Koszul complex on the dual of the
// nilpotent half tensored with U of the doubled g_{<=0}, with the parities
// of the dual letters reversed so the differential is an odd derivation.
class LieComplex {
public:
    LieComplex(const AlgebraSpec& g, const LevelScalar& level, const LevelScalar& ell);
    LieComplex(const LieComplex&) = delete;
    LieComplex& operator=(const LieComplex&) = delete;

    AlgebraSpec base;
    GradingData grading;
    PbwAlgebra u;
    LevelScalar level, ell;

    // dual letters per I_plus position
    size_t nstar(size_t x) const { return 2 * x; }         // u_alpha^*
    size_t nbarstar(size_t x) const { return 2 * x + 1; }  // ubar_alpha^*
    // current letters per basis index of g_{<=0}
    size_t bar(size_t a) const { return barpos_[a]; }
    size_t plain(size_t a) const { return plainpos_[a]; }
    bool is_dual(uint32_t gi) const { return gi < 2 * nplus_; }
    size_t basis_of(uint32_t gi) const { return basis_[gi]; }
    bool is_bar(uint32_t gi) const { return isbar_[gi] != 0; }

    const PbwPoly& d_image(size_t gi) const { return img_[gi]; }
    PbwPoly d(const PbwPoly& x) const { return u.derivation(img_, 1, x); }

    ~LieComplex() = default;

private:
    size_t nplus_ = 0;
    std::vector<size_t> barpos_, plainpos_, basis_;
    std::vector<char> isbar_;
    std::vector<PbwPoly> img_;
};

// Element of the homology model: U of the doubled algebra tensored with the
// exterior algebra of the nilpotent half.  Keys are normalized wedge words
// (ascending letter indices of the Takiff algebra's nilpotent block, with
// the sign rule of the parity-reversed symmetric algebra).
using WedgeWord = std::vector<uint32_t>;
using HomElem = std::map<WedgeWord, PbwPoly>;

// sort a wedge word into normal form; returns the Koszul sign, or 0 when the
// word vanishes (repeated letter of reversed-odd parity)
int wedge_normalize(const TakiffAlgebra& t, WedgeWord& w);
void hom_acc(HomElem& a, const WedgeWord& w, const PbwPoly& p, const LevelScalar& c);
bool hom_is_zero(const HomElem& a);

// the homology-side differential: right multiplication by the wedge letters
// through the sign-twisted action m.c = (-1)^{p(c)} m (c + chi(c)), plus the
// interior bracket terms
HomElem dh(const TakiffAlgebra& t, const HomElem& v, const LevelScalar& ell);

// One verified identity of the comparison between the semi-infinite model on
// the Zhu side and the finite model: iota(d(A)) against Q(iota(A)).  factor
// is the fixed contraction-convention sign relating the two (see the zhu
// module: the engine pairs ghost letters from the left).
struct BridgeLine {
    std::string name;
    int factor = 1;
    bool ok = false;
};

struct BridgeReport {
    std::vector<BridgeLine> lines;
    bool ok() const {
        for (const auto& l : lines)
            if (!l.ok) return false;
        return !lines.empty();
    }
};

// verify the generator-by-generator intertwining of the finite-model
// differential with the Zhu-side differential Q under the dressed embedding
// iota (scaling character with ell = -sqrt(-1))
BridgeReport bridge_iota(const ZhuComplex& z);

// U(g) as a PBW algebra on the plain basis letters (no central extension)
PbwAlgebra env_universal(const AlgebraSpec& g);

// The two Casimirs of U(osp(1|2)) and the odd-center generator:
//   Qc = H^2/4 + (EF + FE)/2,  C = Qc + ef/4 - fe/4,  T = 4Qc - 4C + 1/2.
struct GhostCenterData {
    PbwAlgebra u;
    PbwPoly Qc, C, T;

    explicit GhostCenterData(const AlgebraSpec& g);
    GhostCenterData(const GhostCenterData&) = delete;

    // C central; Qc commutes with the even letters; T^2 = 4C + 1/4;
    // T anticommutes with odd letters and commutes with even ones
    CheckReport check() const;
};

}  // namespace walg

#endif
