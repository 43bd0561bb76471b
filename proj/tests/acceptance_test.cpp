// Acceptance suite: runs the full verification for both built-in algebras
// and reports one pass/fail line per acceptance criterion.  A criterion
// passes only if every stage backing it ran and succeeded.

#include "walg/verify.hpp"

#include <cstdio>
#include <map>
#include <string>
#include <vector>

using namespace walg;

namespace {

struct Criterion {
    int index;
    std::string label;
    // (algebra name, stage name) pairs that must all be present and ok
    std::vector<std::pair<std::string, std::string>> stages;
};

}  // namespace

int main() {
    VerifyOptions opt;
    std::map<std::pair<std::string, std::string>, bool> got;
    std::vector<std::string> failures;
    for (const AlgebraSpec& g : {AlgebraSpec::osp12(), AlgebraSpec::sl21()}) {
        VerifyReport rep = verify_reduction(g, opt);
        for (const auto& l : rep.lines) {
            got[{g.name, l.name}] = l.ok;
            for (const auto& f : l.failures)
                failures.push_back(g.name + " / " + l.name + ": " + f);
        }
    }

    const std::string axioms = "vertex superalgebra axioms on the reduction complexes";
    const std::string dsq = "the reduction differentials square to zero";
    const std::string blocks = "building blocks close at the shifted level";
    const std::string golden_osp = "cohomology generator and free-field images";
    const std::string golden_sl = "cohomology generators and free-field images";
    const std::string ident = "identification of the two reduction flavors";
    const std::string charge = "central charge closed forms";
    const std::string member = "screening operators annihilate the free-field images";
    const std::string transl = "fermion translation intertwines the two screening flavors";
    const std::string finite = "finite quotient: derived presentation and differential";
    const std::string lead = "leading part of the differential is linear and exact";
    const std::string routes = "kernel dimensions and two-route agreement at low weight";
    const std::string invar = "finite invariants at the example character";
    const std::string ghost = "ghost center relations and the invariant assignment";
    const std::string bridge = "finite model bridge and homology differential";
    const std::string osp = "osp12", sl = "sl21";

    std::vector<Criterion> criteria = {
        {1, "vertex superalgebra axioms", {{osp, axioms}, {sl, axioms}}},
        {2, "differentials square to zero", {{osp, dsq}, {sl, dsq}}},
        {3, "building block closure", {{osp, blocks}, {sl, blocks}}},
        {4, "osp(1|2) generator, free-field images, identification scalars",
         {{osp, golden_osp}, {osp, ident}}},
        {5, "sl(2|1) generators, free-field images, identification table",
         {{sl, golden_sl}, {sl, ident}}},
        {6, "central charge closed forms", {{osp, charge}, {sl, charge}}},
        {7, "screening kernel membership and flavor translation",
         {{osp, member}, {osp, transl}, {sl, member}, {sl, transl}}},
        {8, "finite quotient presentation and leading-part exactness",
         {{osp, finite}, {sl, finite}, {osp, lead}}},
        {9, "finite invariants at the example character", {{osp, invar}}},
        {10, "ghost center relations", {{osp, ghost}}},
        {11, "finite model bridge and homology differential",
         {{osp, bridge}, {sl, bridge}}},
        {12, "kernel dimensions and two-route agreement",
         {{osp, routes}, {sl, routes}}},
    };

    int passed = 0;
    for (const Criterion& c : criteria) {
        bool ok = true;
        for (const auto& key : c.stages) {
            auto it = got.find(key);
            if (it == got.end() || !it->second) ok = false;
        }
        if (ok) ++passed;
        std::printf("criterion %2d: %s  %s\n", c.index, ok ? "PASS" : "FAIL",
                    c.label.c_str());
    }
    for (const auto& f : failures) std::printf("failure: %s\n", f.c_str());
    std::printf("acceptance: %d/%zu criteria passed\n", passed, criteria.size());
    return passed == (int)criteria.size() && failures.empty() ? 0 : 1;
}
