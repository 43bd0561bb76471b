#ifndef WALG_SCREENING_HPP
#define WALG_SCREENING_HPP

#include "walg/brst.hpp"

namespace walg {

// Basis state of a Fock module: even creation modes (family, m) with m >= 1
// contributing weight m, and odd creation modes (family, n) with n >= 1
// contributing weight n - 1/2, applied to the highest weight vector.  ev is
// an ascending multiset, od an ascending set (odd squares vanish).
struct FockState {
    std::vector<std::pair<uint32_t, uint32_t>> ev, od;
    bool operator<(const FockState& o) const {
        return ev != o.ev ? ev < o.ev : od < o.od;
    }
    bool operator==(const FockState& o) const { return ev == o.ev && od == o.od; }
};

using FockPoly = std::map<FockState, LevelScalar>;

void fp_acc(FockPoly& a, const FockPoly& b, const LevelScalar& c);
bool fp_is_zero(const FockPoly& a);

// One simple root of g with the data the screening operators need.  All
// coordinates are over the module's mode families.
struct RootDatum {
    int parity = 1;                        // parity of the root vector
    std::vector<LevelScalar> e_odd;        // e_alpha over the I_half fermions
    std::vector<LevelScalar> coroot;       // [f, e_alpha] over the g_0 basis
    std::vector<LevelScalar> alpha_of;     // alpha(u) per g_0 basis element
};

// Screening operators of the reduction of (g, f) in one flavor, acting on
// Fock modules over the (SUSY) Heisenberg algebra of g_0 at level k + h.
// Only the principal case with purely odd simple roots (Pi = Pi_{1/2}) is
// supported.  Sources are vacuum modules; the target of the root alpha is
// the highest weight module with even zero modes acting by -alpha(u).
class ScreeningSet {
public:
    ScreeningSet(const AlgebraSpec& g, Flavor f);

    AlgebraSpec alg;
    GradingData grading;
    Flavor flavor;

    size_t num_even() const { return grading.g_zero.size(); }
    size_t num_odd() const;
    const std::vector<RootDatum>& roots() const { return roots_; }
    const LevelScalar& level() const { return level_; }

    std::vector<FockState> basis_at(const mpq_class& delta) const;

    // apply the even mode u_{(r)} of the g_0 basis element at position u;
    // hw lists the zero-mode eigenvalues of the module the states live in
    FockPoly even_mode(size_t u, long r, const FockPoly& x,
                       const std::vector<LevelScalar>& hw) const;
    std::vector<LevelScalar> hw_vacuum() const;
    std::vector<LevelScalar> hw_target(size_t root) const;

    // Res z^t S_alpha(z) (nonsusy) or the z^t theta-coefficient of
    // e^{-alpha}(Z) (susy), applied to a vacuum-module element.  The
    // screening operator itself is t = -1.
    FockPoly residue(size_t root, const FockPoly& x, long t = -1) const;
    // Res z^t e^{-alpha}(z) without the fermion factor (nonsusy flavor)
    FockPoly bare_mode(size_t root, long t, const FockPoly& x) const;

    // intersection of the kernels of all screening operators at weight delta
    std::vector<FockPoly> kernel_at(const mpq_class& delta) const;

    // state of a polynomial in the degree-zero letters of the matching
    // reduction complex (the Miura image side)
    FockPoly state_of(const BrstComplex& c, const AbsPoly& p) const;

    // translation of a nonsusy Fock element into the susy Fock module:
    // current modes are kept, the fermion of u maps to inv_root times the
    // odd modes of [f, u]
    static FockPoly tau_state(const ScreeningSet& src, const FockPoly& x,
                              const ScreeningSet& dst, const LevelScalar& inv_root);

private:
    LevelScalar level_;
    std::vector<std::vector<LevelScalar>> gev_, god_;  // mode pairing grams
    std::vector<RootDatum> roots_;

    FockPoly apply_even(const std::vector<LevelScalar>& coords, long r, const FockPoly& x,
                        const std::vector<LevelScalar>* hw) const;
    FockPoly apply_odd(const std::vector<LevelScalar>& coords, long n,
                       const FockPoly& x) const;
    // z-power resolved image under the two even exponential factors
    std::map<long, FockPoly> exp_factors(size_t root, const FockPoly& x) const;
};

}  // namespace walg

#endif
