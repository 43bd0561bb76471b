#ifndef WALG_VERIFY_HPP
#define WALG_VERIFY_HPP

#include "walg/liealg.hpp"

#include <string>
#include <vector>

namespace walg {

// One named stage of the verification suite.
struct CheckLine {
    std::string name;
    bool ok = true;
    std::vector<std::string> failures;
};

struct VerifyOptions {
    // Negative-control hook: corrupt one structure constant before running
    // the suite ("jacobi" scales a bracket coefficient, "skew" breaks the
    // symmetry of the bracket table).  Empty means no corruption.
    std::string corrupt;
    // Levels for numeric cross checks of the symbolic identities.
    std::vector<long> sample_k{1, 2, 5};
    // Weight cutoff of the vertex-axiom scan on the reduction complexes.
    size_t cutoff = 1;
};

struct VerifyReport {
    std::vector<CheckLine> lines;
    bool ok() const {
        for (const auto& l : lines)
            if (!l.ok) return false;
        return !lines.empty();
    }
};

// Run the verification suite for one algebra.  Stages run in dependency
// order and the suite stops at the first failing stage (later stages would
// compute garbage from corrupted inputs).  Stages that compare against the
// worked reference displays only run for the two built-in algebras; the
// structural stages run for any algebra spec.
VerifyReport verify_reduction(const AlgebraSpec& g, const VerifyOptions& opt);

}  // namespace walg

#endif
