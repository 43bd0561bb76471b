#ifndef WALG_PBW_HPP
#define WALG_PBW_HPP

#include "walg/scalar.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace walg {

struct PbwGenerator {
    std::string name;
    int parity = 0;      // 0 even, 1 odd
    mpq_class weight;    // filtration degree used for bookkeeping only
};

// Ascending product of generator indices; an odd generator never repeats.
// The empty word is the unit.
using PbwMono = std::vector<uint32_t>;
using PbwPoly = std::map<PbwMono, LevelScalar>;

void pb_acc(PbwPoly& a, const PbwPoly& b, const LevelScalar& c);
PbwPoly pb_scaled(const PbwPoly& a, const LevelScalar& c);
PbwPoly pb_sub(const PbwPoly& a, const PbwPoly& b);
bool pb_is_zero(const PbwPoly& a);

struct PbwReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Enveloping algebra of a (possibly nonlinear) Lie superalgebra presented by
// a generator bracket table.  Products are rewritten to the PBW basis by
//   y x = (-1)^{p(x)p(y)} x y + [y, x]     for y > x,
//   g g = (1/2) [g, g]                     for odd g.
class PbwAlgebra {
public:
    size_t add_generator(const std::string& name, int parity, const mpq_class& weight);
    size_t index_of(const std::string& name) const;
    const PbwGenerator& generator(size_t i) const { return gens_[i]; }
    size_t num_generators() const { return gens_.size(); }

    // Record [g, h]; the transpose entry is filled in by super skew-symmetry
    // when it is not set explicitly.
    void set_bracket(size_t g, size_t h, PbwPoly entry);
    bool has_bracket(size_t g, size_t h) const;
    const PbwPoly& bracket(size_t g, size_t h) const;

    PbwPoly one() const;
    PbwPoly gen(size_t i) const;
    PbwPoly gen(const std::string& name) const;

    int mono_parity(const PbwMono& m) const;
    mpq_class mono_weight(const PbwMono& m) const;
    // -1 when the poly mixes parities, 0/1 when homogeneous, -2 when zero
    int parity_of(const PbwPoly& a) const;

    PbwPoly mul(const PbwPoly& a, const PbwPoly& b) const;
    // word in arbitrary order, brought to the PBW basis
    PbwPoly normalize_word(const std::vector<uint32_t>& w) const;
    // super commutator a b - (-1)^{p(a)p(b)} b a of parity-homogeneous a
    PbwPoly commutator(const PbwPoly& a, const PbwPoly& b) const;

    // extend generator images to a left super derivation of parity der_parity
    PbwPoly derivation(const std::vector<PbwPoly>& images, int der_parity,
                       const PbwPoly& x) const;

    // associativity of the rewriting on all generator triples; this is the
    // diamond condition equivalent to the Jacobi identity of the table
    PbwReport check_associativity() const;

    std::string str(const PbwPoly& a) const;

private:
    std::vector<PbwGenerator> gens_;
    std::map<std::string, size_t> index_;
    std::map<std::pair<size_t, size_t>, PbwPoly> table_;
    mutable std::map<std::pair<size_t, size_t>, PbwPoly> skew_cache_;
    mutable std::map<PbwMono, PbwPoly> norm_cache_;
};

}  // namespace walg

#endif
