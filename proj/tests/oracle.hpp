#ifndef VENERONI_TEST_ORACLE_HPP
#define VENERONI_TEST_ORACLE_HPP

// Naive reference computations over mpq_class. Nothing here calls the
// library's arithmetic beyond reading coefficients and exponents.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "veneroni/veneroni.hpp"

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;
using Mat = std::vector<Vec>;

Q from_scalar(const veneroni::Scalar& s);
Vec from_point(const veneroni::ProjPoint& p);
std::vector<veneroni::Scalar> to_scalars(const Vec& v);

/// Sum over terms of c * prod x_i^e_i.
Q eval(const veneroni::Poly& p, const Vec& x);

/// Leibniz expansion over all permutations.
Q det(const Mat& m);
/// Plain Gauss-Jordan elimination.
std::size_t rank(Mat m);
Mat matmul(const Mat& a, const Mat& b);

/// Coefficient rows of the flats: a[j][i] is the coefficient of x_i in f_j.
Mat flat_coeffs(const std::vector<veneroni::Flat>& flats);
/// B(x) built directly from the coefficients, with row i and column i removed.
Mat B_minor_at(const Mat& a, std::size_t i, const Vec& x);
/// Random point with x_j = 0 and f_j = 0.
Vec point_on_flat(const Mat& a, std::size_t j, std::mt19937_64& rng, int bound = 20);
Vec random_vec(std::size_t size, std::mt19937_64& rng, int bound = 20);

/// Dimension of degree-d forms through the flats in `subset`, by interpolation
/// at many random points of each flat.
std::size_t dim_forms_through(const Mat& a, unsigned d, const std::vector<std::size_t>& subset, std::uint64_t seed);

std::uint64_t binom(unsigned n, unsigned k);

/// Line {s u + t v} meets {x_j = 0, f_j = 0}: 2x2 determinant vanishes.
bool line_meets(const Mat& a, std::size_t j, const Vec& u, const Vec& v);

/// Same projective point.
bool proportional(const Vec& u, const Vec& v);

using IMat = std::vector<std::vector<long long>>;
IMat imatmul(const IMat& a, const IMat& b);
/// Pullback pattern written out entry by entry.
IMat class_matrix(unsigned n);

}  // namespace oracle

#endif
