#ifndef WALG_LIEALG_HPP
#define WALG_LIEALG_HPP

#include "walg/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace walg {

// An element of a finite-dimensional Lie superalgebra, as coordinates in the
// spec's basis.
using AlgElem = std::vector<QQi>;

struct GradingData {
    std::vector<mpq_class> j;  // eigenvalue of ad(H/2) per basis index
    std::vector<size_t> I_plus, I_half, I_one, n_minus, g_zero;
};

struct Osp12Data {
    size_t E, e, H, f, F;  // basis indices
};

struct CheckReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

class AlgebraSpec {
public:
    std::string name;
    std::vector<std::string> basis_names;
    std::vector<int> parity;           // 0 even, 1 odd
    // structure[i][j] = [u_i, u_j] as coordinates
    std::vector<std::vector<AlgElem>> structure;
    std::vector<std::vector<QQi>> form;  // (u_i|u_j)
    size_t h_element = 0;
    mpq_class dual_coxeter;
    Osp12Data osp;
    std::vector<size_t> simple_roots;  // Π (principal: all in g_{1/2})

    size_t dim() const { return basis_names.size(); }
    size_t index_of(const std::string& n) const;

    AlgElem basis_elem(size_t i) const;
    AlgElem bracket(const AlgElem& x, const AlgElem& y) const;
    QQi form_value(const AlgElem& x, const AlgElem& y) const;
    int elem_parity(const AlgElem& x) const;  // -1 if mixed or zero

    CheckReport check_algebra() const;
    GradingData grade_decompose() const;
    std::vector<AlgElem> centralizer(const AlgElem& v) const;

    // u^alpha basis of n_- with (u^alpha | u_beta) = delta, indexed like I_plus.
    std::vector<AlgElem> dual_basis_nminus(const GradingData& g) const;
    // full dual bases {v^a} of g with (v^a | u_b) = delta_ab
    std::vector<AlgElem> dual_basis_full() const;

    // supertrace of ad(x) composed with ad(y)
    QQi killing(const AlgElem& x, const AlgElem& y) const;
    // supertrace of ad(x) ad(y) restricted to the span of the given basis
    // indices (the span must be ad(x)ad(y)-stable for this to be meaningful)
    QQi killing_on(const std::vector<size_t>& subspace, const AlgElem& x, const AlgElem& y) const;
    mpq_class sdim() const;          // super dimension of g
    mpq_class sdim_subspace(const std::vector<size_t>& idx) const;

    static AlgebraSpec osp12();
    static AlgebraSpec sl21();
    static AlgebraSpec load_file(const std::string& path);
    std::string to_file_text() const;
};

}  // namespace walg

#endif
