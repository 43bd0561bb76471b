#ifndef WALG_SUSY_HPP
#define WALG_SUSY_HPP

#include "walg/liealg.hpp"
#include "walg/vertex.hpp"

namespace walg {

// [a_L b] = part0 + chi * part1 where L = (x, chi), chi odd, x = -chi^2;
// part0 = [Da_x b] and part1 = [a_x b]
struct LambdaSuperPoly {
    LPoly part0, part1;
};

struct SuperconformalReport {
    std::vector<std::string> failures;
    LevelScalar central_charge;
    bool ok() const { return failures.empty(); }
};

// Odd derivation D with D^2 = d on an engine whose generators come in pairs
// (bottom, top) with D(bottom) = top and D(top) = d(bottom).
class SusyStructure {
public:
    explicit SusyStructure(const VertexEngine& e) : eng_(&e) {}

    void add_pair(size_t bottom, size_t top);
    bool is_bottom(size_t g) const;
    bool has_partner(size_t g) const { return partner_.count(g) != 0; }
    size_t partner(size_t g) const;

    VPoly D(const VPoly& a) const;

    LambdaSuperPoly Lambda_bracket(const VPoly& a, const VPoly& b) const;

    // Install the four x-bracket table entries encoded by one Lambda-table
    // entry on a pair of bottom generators.
    void set_Lambda_entry(VertexEngine& eng, size_t a_bottom, size_t b_bottom,
                          const LambdaSuperPoly& entry) const;

    // [tau_L tau] = (2d + 3x + chi D) tau + (x^2 chi / 3) c, and D(tau)/2 is
    // a conformal vector of central charge c.
    SuperconformalReport check_superconformal(const VPoly& tau) const;

private:
    const VertexEngine* eng_;
    // generator -> (partner index, this one is the bottom)
    std::map<size_t, std::pair<size_t, bool>> partner_;
};

// The SUSY affine vertex algebra of g at level k: one pair per basis element,
// named <name>b / D<name>b, with
//   [ab_L bb] = (-1)^{p(a)(p(b)+1)} [a,b]bar + chi (a|b)(k + h).
// Returns the bottom generator index per basis element of g (the top is the
// registered partner).
std::vector<size_t> build_susy_affine(const AlgebraSpec& g, VertexEngine& eng,
                                      SusyStructure& susy);

}  // namespace walg

#endif
