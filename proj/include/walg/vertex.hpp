#ifndef WALG_VERTEX_HPP
#define WALG_VERTEX_HPP

#include "walg/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace walg {

struct Generator {
    std::string name;
    int parity = 0;      // 0 even, 1 odd
    mpq_class weight;    // conformal weight
    long charge = 0;     // ghost charge
};

// One factor of a normally ordered monomial: the dp-th derivative of a
// generator.  Ordered by (generator index, derivative power).
using Factor = std::pair<uint32_t, uint32_t>;

// Right-nested normally ordered monomial :f0 (:f1 (:f2 ...:):):.  Normal form
// keeps factors sorted ascending; the empty monomial is the vacuum.
using Mono = std::vector<Factor>;

// Linear combination of normal-form monomials.  No zero coefficients.
using VPoly = std::map<Mono, LevelScalar>;

// [a_x b] = sum_n x^n * coeff[n], finitely supported, no trailing zeros.
using LPoly = std::vector<VPoly>;

// polynomial in two bracket variables x (outer) and y (inner)
using BiPoly = std::map<std::pair<size_t, size_t>, VPoly>;

struct AxiomReport {
    std::vector<std::string> failures;
    size_t pairs_checked = 0, triples_checked = 0;
    bool ok() const { return failures.empty(); }
};

// in-place a += c * b, dropping cancelled terms
void vp_acc(VPoly& a, const VPoly& b, const LevelScalar& c);
VPoly vp_scaled(const VPoly& a, const LevelScalar& c);
VPoly vp_add(const VPoly& a, const VPoly& b);
VPoly vp_sub(const VPoly& a, const VPoly& b);
bool vp_is_zero(const VPoly& a);

void lp_acc(LPoly& a, const LPoly& b, const LevelScalar& c);
void lp_acc_at(LPoly& a, size_t n, const VPoly& b, const LevelScalar& c);
void lp_trim(LPoly& a);
bool lp_is_zero(const LPoly& a);
bool lp_equal(const LPoly& a, const LPoly& b);

class VertexEngine {
public:
    size_t add_generator(const std::string& name, int parity, const mpq_class& weight,
                         long charge = 0);
    size_t index_of(const std::string& name) const;
    const Generator& generator(size_t i) const { return gens_[i]; }
    size_t num_generators() const { return gens_.size(); }

    // Record [g_x h]; the transpose entry is filled in by skew-symmetry when
    // it is not set explicitly.
    void set_bracket(size_t g, size_t h, LPoly entry);
    bool has_bracket(size_t g, size_t h) const;

    VPoly vacuum() const;                           // the scalar 1
    VPoly gen(size_t i, uint32_t dp = 0) const;     // d^dp applied to generator i
    VPoly gen(const std::string& name, uint32_t dp = 0) const;

    int gen_parity(size_t i) const { return gens_[i].parity; }
    int mono_parity(const Mono& m) const;
    mpq_class mono_weight(const Mono& m) const;
    long mono_charge(const Mono& m) const;

    VPoly dP(const VPoly& a) const;                 // the translation operator
    VPoly dP_iter(const VPoly& a, size_t n) const;
    VPoly no_mul(const VPoly& a, const VPoly& b) const;  // :ab:
    LPoly lb(const VPoly& a, const VPoly& b) const;      // [a_x b]

    // Bring an arbitrary factor sequence to normal form.
    VPoly normalize_factors(const std::vector<Factor>& fs) const;

    // [b_x a] computed from [a_x b] by skew-symmetry
    LPoly skew_transform(const LPoly& p, int parity_a, int parity_b) const;
    // residual of the Jacobi identity; zero when the identity holds
    BiPoly jacobi_residual(const VPoly& a, const VPoly& b, const VPoly& c) const;

    std::optional<mpq_class> hamiltonian_weight(const VPoly& a) const;
    std::optional<long> charge_of(const VPoly& a) const;

    // Skew-symmetry and Jacobi on all generator pairs/triples, then on
    // two-factor monomials of weight <= cutoff (derivative powers <= 2)
    // against all generator pairs.
    AxiomReport axiom_check(const mpq_class& weight_cutoff) const;

    std::string str(const VPoly& a) const;
    std::string str(const LPoly& a) const;
    std::string factor_str(const Factor& f) const;
    std::string mono_str(const Mono& m) const;

private:
    std::vector<Generator> gens_;
    std::map<std::string, size_t> index_;
    std::map<std::pair<size_t, size_t>, LPoly> table_;
    mutable std::map<std::pair<size_t, size_t>, LPoly> skew_cache_;
    mutable std::map<std::pair<Mono, Mono>, LPoly> lb_cache_;
    mutable std::map<std::pair<Factor, Mono>, VPoly> left_cache_;

    const LPoly& base_bracket(size_t g, size_t h) const;
    LPoly lb_mono(const Mono& a, const Mono& b) const;
    // :u m: for a single factor u against a normal-form monomial
    VPoly no_left(const Factor& u, const Mono& m) const;
    VPoly no_left_poly(const Factor& u, const VPoly& y) const;
    // integral_{-d}^{0} [u_x v] dx, the reordering correction
    VPoly swap_correction(const Factor& u, const Factor& v) const;
};

}  // namespace walg

#endif
