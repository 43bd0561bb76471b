#ifndef WALG_ZHU_HPP
#define WALG_ZHU_HPP

#include "walg/brst.hpp"
#include "walg/pbw.hpp"

namespace walg {

// H-twisted Zhu algebra of the susy reduction complex: the quotient by
// (d + H)-exact elements, presented as the PBW algebra on one generator per
// superfield component, with the bracket table derived from the vertex
// Lambda-brackets and the differential Q induced from the zero mode d0.
//
// Letters, in engine order (one PBW generator per ambient generator):
//   bar(a)      image of the current bottom, weight 1/2 - j_a;
//   bold(a)     image of the current top shifted by -(k+h)(x|u_a),
//               weight 1 - j_a;
//   phanni(x)/phanni_top(x)   images of the annihilation ghost pair;
//   phcrea(x)/phcrea_top(x)   images of the creation ghost pair.
class ZhuComplex {
public:
    explicit ZhuComplex(const AlgebraSpec& g);
    ZhuComplex(const ZhuComplex&) = delete;
    ZhuComplex& operator=(const ZhuComplex&) = delete;

    BrstComplex c;   // susy flavor
    PbwAlgebra u;

    // PBW generator indices (equal to the ambient engine indices)
    size_t bar(size_t a) const { return 2 * a; }
    size_t bold(size_t a) const { return 2 * a + 1; }
    size_t phanni(size_t x) const { return c.gh_anni[x]; }
    size_t phanni_top(size_t x) const { return c.gh_anni[x] + 1; }
    size_t phcrea(size_t x) const { return c.gh_crea[x]; }
    size_t phcrea_top(size_t x) const { return c.gh_crea[x] + 1; }

    // scalar between the Zhu image of an engine generator and its letter:
    // Zhu(engine gen i) = u.gen(i) + shift(i)
    const LevelScalar& shift(size_t i) const { return shift_[i]; }

    // the Zhu projection of an ambient normally ordered polynomial
    PbwPoly project(const VPoly& v) const;
    // [Zhu(a), Zhu(b)] at hbar = 1, for a of homogeneous conformal weight
    PbwPoly bracket_h(const VPoly& a, const VPoly& b) const;

    // the induced differential, an odd derivation with Q(letter) equal to
    // the projection of d0(letter realization)
    PbwPoly Q(const PbwPoly& x) const;
    const PbwPoly& Q_image(size_t pbw_gen) const { return qimg_[pbw_gen]; }

    // linear combinations of letters attached to an element of g
    PbwPoly bar_elem(const AlgElem& v) const;
    PbwPoly bold_elem(const AlgElem& v) const;
    // Zhu images of the dressed current and its D-partner
    PbwPoly J_bar(size_t a) const;
    PbwPoly J_bold(size_t a) const;

    LevelScalar level() const;        // k + dual Coxeter number
    QQi x_pair(size_t a) const;       // (x | u_a) for x the grading element

    ~ZhuComplex() = default;

private:
    std::vector<LevelScalar> shift_;
    std::vector<PbwPoly> qimg_;
    mutable std::map<Mono, PbwPoly> proj_cache_;

    PbwPoly project_mono(const Mono& m) const;
};

}  // namespace walg

#endif
