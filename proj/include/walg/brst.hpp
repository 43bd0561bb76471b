#ifndef WALG_BRST_HPP
#define WALG_BRST_HPP

#include "walg/liealg.hpp"
#include "walg/susy.hpp"
#include "walg/vertex.hpp"

namespace walg {

enum class Flavor { nonsusy, susy };

// One free generator of the reduced (charge-graded) subcomplex: a dressed
// current J (plus its D-partner in the susy flavor) or a Weyl fermion in the
// nonsusy flavor, together with its realization in the ambient complex.
struct Letter {
    std::string name;
    VPoly field;
    int parity = 0;
    mpq_class weight;
    bool in_miura_image = false;  // survives the projection onto degree zero
    int kind = 0;                 // 0 current, 1 current D-partner, 2 Weyl fermion
    size_t basis_index = 0;       // underlying basis element of g
};

// Abstract normally ordered monomial in letters: ascending (letter index,
// derivative power) pairs, odd letters never repeating an equal pair.
using AbsMono = std::vector<std::pair<uint32_t, uint32_t>>;
using AbsPoly = std::map<AbsMono, LevelScalar>;

// Quantum Hamiltonian reduction complex of (g, nilpotent) in either flavor:
// affine currents tensored with the ghost systems, the odd differential d,
// its zero mode, the dressed currents and the reduced subcomplex they span.
class BrstComplex {
public:
    BrstComplex(const AlgebraSpec& g, Flavor f);
    BrstComplex(const BrstComplex&) = delete;
    BrstComplex& operator=(const BrstComplex&) = delete;

    AlgebraSpec alg;
    GradingData grading;
    Flavor flavor;
    VertexEngine eng;
    SusyStructure susy;

    // ambient generator indices (bottom generators in the susy flavor)
    std::vector<size_t> cur;      // per basis index of g
    std::vector<size_t> weyl;     // per I_half position (nonsusy only)
    std::vector<size_t> gh_anni;  // annihilation-type ghost, per I_plus position
    std::vector<size_t> gh_crea;  // creation-type ghost, per I_plus position

    const VPoly& differential() const { return d_; }
    // zero mode of the differential: the lambda-constant part of [d_x A]
    // (chi- and lambda-free part of the Lambda-bracket in the susy flavor)
    VPoly d0(const VPoly& x) const;
    CheckReport check_d_squared() const;

    // dressed current of basis element a (its bottom in the susy flavor)
    VPoly building_block(size_t a) const;
    // level form of the closed bracket of dressed currents on g_{<=0}
    LevelScalar shifted_form(size_t a, size_t b) const;
    CheckReport check_building_block_closure() const;

    // letters of the reduced complex, fixed order: dressed currents of
    // g_{<=0} by ascending basis index (bottom then D-partner in the susy
    // flavor), then the Weyl fermions (nonsusy flavor)
    const std::vector<Letter>& letters() const { return letters_; }
    size_t letter_index(const std::string& name) const;

    std::vector<AbsMono> basis_at(const mpq_class& delta) const;
    VPoly realize(const AbsMono& m) const;
    VPoly realize(const AbsPoly& p) const;
    // coordinates of an ambient element in the realized letter basis at the
    // given weight; throws when the element is outside the span
    AbsPoly abstract_coords(const VPoly& v, const mpq_class& delta) const;

    // basis of the d0-kernel in the charge-0 weight-delta component of the
    // reduced complex, echelonized by the deterministic monomial order
    std::vector<AbsPoly> kernel_at(const mpq_class& delta) const;

    // projection onto the degree-zero letters (Miura map on coordinates)
    AbsPoly miura(const AbsPoly& p) const;
    // abstract odd derivation D on letter polynomials (susy flavor)
    AbsPoly D_letters(const AbsPoly& p) const;

    // closed-form central charge of the reduced W-algebra, in either of the
    // two displayed forms (they must agree as rational functions)
    LevelScalar central_charge(Flavor form) const;

    std::string str(const AbsPoly& p) const;

private:
    VPoly d_, d_top_;
    std::vector<AlgElem> duals_;  // u^alpha per I_plus position
    std::vector<size_t> lez_;     // basis indices of g_{<=0}, ascending
    std::vector<Letter> letters_;

    void build_nonsusy();
    void build_susy();
    void make_letters();
};

// Identification of the nonsusy Miura target with the susy one: currents of
// degree-zero elements h map to the D-partner letters D J_{hb}, and the Weyl
// fermion of a simple root vector e_a maps to inv_root * J of [f, e_a].  The
// result is realized in dst's ambient complex.  inv_root must represent
// 1/sqrt(k+h) in the active root session (up to a documented constant when
// that root is not expressible).
VPoly tau_translate(const BrstComplex& src, const AbsPoly& x, const BrstComplex& dst,
                    const LevelScalar& inv_root);

// The structural identity making the identification bracket-preserving:
// (F | [e_a, e_b]) = ([f, e_a] | [f, e_b]) over pairs of simple root vectors.
CheckReport check_tau_compatibility(const AlgebraSpec& g);

}  // namespace walg

#endif
