#ifndef VENERONI_EXACTLA_HPP
#define VENERONI_EXACTLA_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "veneroni/mpoly.hpp"

namespace veneroni {

using ScalarVector = std::vector<Scalar>;

/// Dense row-major matrix over one field.
class ScalarMatrix {
   public:
    ScalarMatrix(std::size_t rows, std::size_t cols, const FieldCtx& field);
    static ScalarMatrix identity(std::size_t n, const FieldCtx& field);
    /// All rows must have equal length; an empty row list needs `cols`.
    static ScalarMatrix from_rows(const std::vector<ScalarVector>& rows, const FieldCtx& field, std::size_t cols = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldCtx& field() const { return field_; }
    const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    ScalarVector row(std::size_t i) const;
    ScalarVector apply(std::span<const Scalar> v) const;
    ScalarMatrix operator*(const ScalarMatrix& o) const;
    friend bool operator==(const ScalarMatrix&, const ScalarMatrix&) = default;

   private:
    std::size_t rows_, cols_;
    FieldCtx field_;
    std::vector<Scalar> data_;
};

struct RankNullspace {
    std::size_t rank = 0;
    /// Each basis vector has first nonzero entry 1; ordered by free column.
    std::vector<ScalarVector> nullspace;
    std::vector<std::size_t> pivots;
};

/// Fraction-free (Bareiss) elimination with first-nonzero pivoting.
RankNullspace rank_nullspace(const ScalarMatrix& m);
std::size_t rank(const ScalarMatrix& m);

struct SolveResult {
    /// Free variables set to zero.
    ScalarVector solution;
    std::vector<ScalarVector> nullspace;
};

/// Throws Inconsistent when A x = b has no solution.
SolveResult solve_exact(const ScalarMatrix& a, std::span<const Scalar> b);
Scalar determinant(const ScalarMatrix& m);
/// Throws InvalidArgument for singular input.
ScalarMatrix inverse(const ScalarMatrix& m);

/// Square matrix whose entries are polynomials of degree at most one.
class PolyMatrix {
   public:
    PolyMatrix(RingPtr ring, std::size_t size);
    std::size_t size() const { return size_; }
    const RingPtr& ring() const { return ring_; }
    const Poly& at(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
    /// Rejects entries of degree above one.
    void set(std::size_t i, std::size_t j, Poly p);
    /// Delete row i and column i.
    PolyMatrix principal_minor(std::size_t i) const;
    ScalarMatrix evaluate(std::span<const Scalar> pt) const;

   private:
    RingPtr ring_;
    std::size_t size_;
    std::vector<Poly> entries_;
};

enum class DetStrategy { MinorDp, Bareiss };

const char* det_strategy_name(DetStrategy s);

/// Size cap for polynomial determinants: VENERONI_MAX_DET_SIZE or 8.
std::size_t max_det_size();

/// Exact determinant. MinorDp memoizes Laplace expansion over column
/// subsets; Bareiss uses fraction-free elimination with exact quotients.
Poly det_poly_matrix(const PolyMatrix& m, DetStrategy strategy = DetStrategy::MinorDp);

/// Determinant of a generic size x size matrix expanded along one column;
/// used only as an independent check of the two strategies.
Poly det_laplace_column(const PolyMatrix& m, std::size_t column);

class IntMatrix {
   public:
    explicit IntMatrix(std::size_t size) : size_(size), data_(size * size, 0) {}
    static IntMatrix identity(std::size_t size);
    std::size_t size() const { return size_; }
    std::int64_t at(std::size_t i, std::size_t j) const { return data_[i * size_ + j]; }
    std::int64_t& at(std::size_t i, std::size_t j) { return data_[i * size_ + j]; }
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

   private:
    std::size_t size_;
    std::vector<std::int64_t> data_;
};

/// Throws on size mismatch or int64 overflow.
IntMatrix int_matrix_mul(const IntMatrix& a, const IntMatrix& b);

}  // namespace veneroni

#endif
