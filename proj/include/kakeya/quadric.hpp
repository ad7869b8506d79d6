#pragma once

#include <complex>
#include <span>
#include <vector>

#include "kakeya/geom.hpp"

namespace kakeya {

// Symmetric bilinear form <x,y> = x^T M y over F_p with its quadratic form
// Q(x) = <x,x>. Diagonalization (symmetric Gaussian elimination, valid since
// char != 2) is run at construction; the change of basis A with A^T M A
// diagonal is kept and re-verified by multiplication.
class QuadraticForm {
public:
    QuadraticForm(const Field& field, int n, std::span<const int> row_major);
    static QuadraticForm diagonal(const Field& field, std::span<const int> entries);
    static QuadraticForm diagonal(const Field& field, std::initializer_list<int> entries);

    const Field& field() const { return field_; }
    int n() const { return n_; }
    int rank() const { return rank_; }
    // the nonzero diagonal entries alpha_1..alpha_k of the normal form
    std::span<const int> diagonal_entries() const { return diag_; }
    // change of basis: basis()[i*n+j] is A_ij, A^T M A = diag(alphas, 0...)
    const std::vector<int>& basis() const { return basis_; }
    int entry(int i, int j) const { return m_[i * n_ + j]; }

    int evaluate(const Vec& x) const;              // Q(x)
    int bilinear(const Vec& x, const Vec& y) const; // <x,y>

private:
    void diagonalize();

    Field field_;
    int n_;
    std::vector<int> m_;
    std::vector<int> basis_;
    std::vector<int> diag_;
    int rank_ = 0;
};

// Exhaustive level-set counting (the oracle of record; caps at q^n <= 1e6).
long level_set_count(const QuadraticForm& q, int v);
std::vector<long> level_set_histogram(const QuadraticForm& q);

// Gauss-sum cross-check of the same count: q^(n-1) plus the character sum
// over nonzero frequencies. Exact identity up to double rounding.
std::complex<double> gauss_estimate(const QuadraticForm& q, int v);

// All nonzero x with Q(x) = 0.
std::vector<Vec> null_vectors(const QuadraticForm& q);

// Gram matrix of Q on the span of the given independent directions.
QuadraticForm restrict_form(const QuadraticForm& q, std::span<const Vec> dirs);

// Basis of v-perp = {x: <x,v> = 0}; n-1 vectors when Mv != 0.
std::vector<Vec> perp_basis(const QuadraticForm& q, const Vec& v);

} // namespace kakeya
