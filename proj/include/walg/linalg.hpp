#ifndef WALG_LINALG_HPP
#define WALG_LINALG_HPP

#include <vector>

namespace walg {

// Dense matrix over an exact field T (needs +,-,*,/, is_zero(), T(long)).
template <class T>
struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<T> a;

    Mat() {}
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
    T& at(size_t i, size_t j) { return a[i * cols + j]; }
    const T& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

// In-place reduced row echelon form with deterministic pivoting (first
// nonzero entry scanning rows top-down in each column, left to right).
// Returns pivot column indices.
template <class T>
std::vector<size_t> rref(Mat<T>& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t pr = r;
        while (pr < m.rows && m.at(pr, c).is_zero()) ++pr;
        if (pr == m.rows) continue;
        if (pr != r)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
        T inv = T(1L) / m.at(r, c);
        for (size_t j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            T f = m.at(i, c);
            for (size_t j = c; j < m.cols; ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Kernel basis of m (as column vectors), echelonized: one basis vector per
// free column, with entry 1 at that column and zeros at the other free ones.
template <class T>
std::vector<std::vector<T>> kernel_basis(Mat<T> m) {
    std::vector<size_t> piv = rref(m);
    std::vector<bool> is_piv(m.cols, false);
    for (size_t c : piv) is_piv[c] = true;
    std::vector<std::vector<T>> out;
    for (size_t c = 0; c < m.cols; ++c) {
        if (is_piv[c]) continue;
        std::vector<T> v(m.cols, T(0L));
        v[c] = T(1L);
        for (size_t r = 0; r < piv.size(); ++r)
            if (piv[r] < c) v[piv[r]] = T(0L) - m.at(r, c);
        out.push_back(std::move(v));
    }
    return out;
}

// Rank of the matrix.
template <class T>
size_t rank(Mat<T> m) {
    return rref(m).size();
}

// Solve m x = b; returns empty vector if inconsistent (m destroyed).
template <class T>
std::vector<T> solve(Mat<T> m, std::vector<T> b) {
    Mat<T> aug(m.rows, m.cols + 1);
    for (size_t i = 0; i < m.rows; ++i) {
        for (size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    std::vector<size_t> piv = rref(aug);
    if (!piv.empty() && piv.back() == m.cols) return {};  // inconsistent
    std::vector<T> x(m.cols, T(0L));
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(r, m.cols);
    return x;
}

}  // namespace walg

#endif
