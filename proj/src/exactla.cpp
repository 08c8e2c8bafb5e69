#include "veneroni/exactla.hpp"

#include <bit>
#include <cstdlib>
#include <string>

namespace veneroni {

ScalarMatrix::ScalarMatrix(std::size_t rows, std::size_t cols, const FieldCtx& field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Scalar::zero(field)) {}

ScalarMatrix ScalarMatrix::identity(std::size_t n, const FieldCtx& field) {
    ScalarMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
    return m;
}

ScalarMatrix ScalarMatrix::from_rows(const std::vector<ScalarVector>& rows, const FieldCtx& field, std::size_t cols) {
    if (!rows.empty()) cols = rows.front().size();
    ScalarMatrix m(rows.size(), cols, field);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorCode::InvalidArgument, "ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j].reduce_to(field);
    }
    return m;
}

ScalarVector ScalarMatrix::row(std::size_t i) const {
    return ScalarVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

ScalarVector ScalarMatrix::apply(std::span<const Scalar> v) const {
    if (v.size() != cols_) throw Error(ErrorCode::InvalidArgument, "vector length differs from column count");
    ScalarVector out(rows_, Scalar::zero(field_));
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (!at(i, j).is_zero()) out[i].add_mul(at(i, j), v[j]);
        }
    }
    return out;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorCode::InvalidArgument, "matrix size mismatch");
    ScalarMatrix out(rows_, o.cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j).add_mul(at(i, k), o.at(k, j));
        }
    }
    return out;
}

namespace {

struct Echelon {
    ScalarMatrix m;
    std::vector<std::size_t> pivots;
    int swaps = 0;
};

// Fraction-free row echelon form. Every intermediate entry is a minor of the
// input, which bounds coefficient growth over the rationals.
Echelon bareiss_echelon(ScalarMatrix m, std::size_t limit_cols) {
    Echelon e{std::move(m), {}, 0};
    auto& a = e.m;
    const std::size_t rows = a.rows(), cols = a.cols();
    Scalar prev = Scalar::one(a.field());
    Scalar tmp;
    std::size_t r = 0;
    for (std::size_t c = 0; c < limit_cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a.at(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(p, j), a.at(r, j));
            ++e.swaps;
        }
        const Scalar& piv = a.at(r, c);
        const bool unit_prev = prev.is_one();
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Scalar lead = a.at(i, c);
            if (lead.is_zero()) {
                if (!piv.is_one() || !unit_prev) {
                    for (std::size_t j = c + 1; j < cols; ++j) {
                        if (a.at(i, j).is_zero()) continue;
                        a.at(i, j) *= piv;
                        if (!unit_prev) a.at(i, j) /= prev;
                    }
                }
                continue;
            }
            for (std::size_t j = c + 1; j < cols; ++j) {
                Scalar& x = a.at(i, j);
                x *= piv;
                if (!a.at(r, j).is_zero()) {
                    tmp = lead * a.at(r, j);
                    x -= tmp;
                }
                if (!unit_prev && !x.is_zero()) x /= prev;
            }
            a.at(i, c) = Scalar::zero(a.field());
        }
        prev = a.at(r, c);
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

// Solution of the echelon system with the given values for free columns.
ScalarVector back_substitute(const Echelon& e, ScalarVector x, std::size_t ncols, std::size_t rhs_col) {
    const auto& a = e.m;
    for (std::size_t k = e.pivots.size(); k-- > 0;) {
        std::size_t pc = e.pivots[k];
        Scalar acc = rhs_col < a.cols() ? a.at(k, rhs_col) : Scalar::zero(a.field());
        for (std::size_t j = pc + 1; j < ncols; ++j) {
            if (!a.at(k, j).is_zero() && !x[j].is_zero()) acc -= a.at(k, j) * x[j];
        }
        x[pc] = acc / a.at(k, pc);
    }
    return x;
}

void normalize_leading(ScalarVector& v) {
    for (const auto& c : v) {
        if (c.is_zero()) continue;
        if (c.is_one()) return;
        Scalar inv = c.inv();
        for (auto& x : v) x *= inv;
        return;
    }
}

}  // namespace

RankNullspace rank_nullspace(const ScalarMatrix& m) {
    Echelon e = bareiss_echelon(m, m.cols());
    RankNullspace out;
    out.rank = e.pivots.size();
    out.pivots = e.pivots;
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    const std::size_t none = m.cols();
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        ScalarVector x(m.cols(), Scalar::zero(m.field()));
        x[f] = Scalar::one(m.field());
        x = back_substitute(e, std::move(x), m.cols(), none);
        normalize_leading(x);
        out.nullspace.push_back(std::move(x));
    }
    return out;
}

std::size_t rank(const ScalarMatrix& m) { return bareiss_echelon(m, m.cols()).pivots.size(); }

SolveResult solve_exact(const ScalarMatrix& a, std::span<const Scalar> b) {
    if (b.size() != a.rows()) throw Error(ErrorCode::InvalidArgument, "right-hand side length differs from row count");
    ScalarMatrix aug(a.rows(), a.cols() + 1, a.field());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i].reduce_to(a.field());
    }
    Echelon e = bareiss_echelon(std::move(aug), a.cols());
    const std::size_t r = e.pivots.size();
    for (std::size_t i = r; i < a.rows(); ++i) {
        if (!e.m.at(i, a.cols()).is_zero()) throw Error(ErrorCode::Inconsistent, "inconsistent linear system");
    }
    SolveResult out;
    out.solution = back_substitute(e, ScalarVector(a.cols(), Scalar::zero(a.field())), a.cols(), a.cols());
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        ScalarVector x(a.cols(), Scalar::zero(a.field()));
        x[f] = Scalar::one(a.field());
        x = back_substitute(e, std::move(x), a.cols(), e.m.cols() + 1);
        normalize_leading(x);
        out.nullspace.push_back(std::move(x));
    }
    return out;
}

Scalar determinant(const ScalarMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
    if (m.rows() == 0) return Scalar::one(m.field());
    Echelon e = bareiss_echelon(m, m.cols());
    if (e.pivots.size() < m.rows()) return Scalar::zero(m.field());
    Scalar d = e.m.at(m.rows() - 1, m.cols() - 1);
    return e.swaps % 2 ? -d : d;
}

ScalarMatrix inverse(const ScalarMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw Error(ErrorCode::InvalidArgument, "inverse of a non-square matrix");
    ScalarMatrix out(n, n, m.field());
    for (std::size_t j = 0; j < n; ++j) {
        ScalarVector e(n, Scalar::zero(m.field()));
        e[j] = Scalar::one(m.field());
        SolveResult s = [&] {
            try {
                return solve_exact(m, e);
            } catch (const Error& err) {
                if (err.code() == ErrorCode::Inconsistent) throw Error(ErrorCode::InvalidArgument, "matrix is singular");
                throw;
            }
        }();
        if (!s.nullspace.empty()) throw Error(ErrorCode::InvalidArgument, "matrix is singular");
        for (std::size_t i = 0; i < n; ++i) out.at(i, j) = s.solution[i];
    }
    return out;
}

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t size)
    : ring_(std::move(ring)), size_(size), entries_(size * size, Poly(ring_)) {}

void PolyMatrix::set(std::size_t i, std::size_t j, Poly p) {
    if (i >= size_ || j >= size_) throw Error(ErrorCode::InvalidArgument, "matrix index out of range");
    if (!same_ring(p.ring(), ring_)) throw Error(ErrorCode::RingMismatch, "matrix entry from another ring");
    if (p.degree() > 1) throw Error(ErrorCode::DegreeMismatch, "matrix entry of degree above one: " + p.to_string());
    entries_[i * size_ + j] = std::move(p);
}

PolyMatrix PolyMatrix::principal_minor(std::size_t del) const {
    if (del >= size_) throw Error(ErrorCode::InvalidArgument, "minor index out of range");
    PolyMatrix out(ring_, size_ - 1);
    for (std::size_t i = 0, r = 0; i < size_; ++i) {
        if (i == del) continue;
        for (std::size_t j = 0, c = 0; j < size_; ++j) {
            if (j == del) continue;
            out.entries_[r * out.size_ + c] = at(i, j);
            ++c;
        }
        ++r;
    }
    return out;
}

ScalarMatrix PolyMatrix::evaluate(std::span<const Scalar> pt) const {
    ScalarMatrix out(size_, size_, ring_->field());
    for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t j = 0; j < size_; ++j) out.at(i, j) = veneroni::evaluate(at(i, j), pt);
    }
    return out;
}

const char* det_strategy_name(DetStrategy s) { return s == DetStrategy::MinorDp ? "minor_dp" : "bareiss"; }

std::size_t max_det_size() {
    if (const char* env = std::getenv("VENERONI_MAX_DET_SIZE")) {
        try {
            std::size_t pos = 0;
            long v = std::stol(env, &pos);
            if (pos == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw Error(ErrorCode::InvalidArgument, std::string("VENERONI_MAX_DET_SIZE is not a positive integer: ") + env);
    }
    return 8;
}

namespace {

void check_det_size(const PolyMatrix& m) {
    const std::size_t cap = max_det_size();
    if (m.size() > cap) {
        throw Error(ErrorCode::Limit, "determinant of size " + std::to_string(m.size()) + " exceeds the cap of " +
                                          std::to_string(cap) + " (set VENERONI_MAX_DET_SIZE to raise it)");
    }
    if (m.size() > 20) throw Error(ErrorCode::Limit, "determinant size above 20 is unsupported");
}

Poly det_minor_dp(const PolyMatrix& m) {
    const std::size_t s = m.size();
    const RingPtr& ring = m.ring();
    if (s == 0) return Poly::constant(ring, 1);
    // minors[T] = det of rows 0..|T|-1 restricted to the column set T.
    std::vector<Poly> minors(std::size_t{1} << s, Poly(ring));
    minors[0] = Poly::constant(ring, 1);
    for (std::size_t k = 0; k < s; ++k) {
        for (std::size_t mask = 0; mask < minors.size(); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != k + 1) continue;
            PolyAccumulator acc(ring);
            bool any = false;
            for (std::size_t c = 0; c < s; ++c) {
                if (!(mask & (std::size_t{1} << c))) continue;
                const Poly& entry = m.at(k, c);
                const Poly& sub = minors[mask & ~(std::size_t{1} << c)];
                if (entry.is_zero() || sub.is_zero()) continue;
                int above = std::popcount(mask >> (c + 1));
                Poly prod = entry * sub;
                acc.add_scaled(prod, Scalar::from_int(above % 2 ? -1 : 1, ring->field()));
                any = true;
            }
            if (any) minors[mask] = std::move(acc).finish();
        }
    }
    return minors.back();
}

Poly det_bareiss(const PolyMatrix& m) {
    const std::size_t s = m.size();
    const RingPtr& ring = m.ring();
    if (s == 0) return Poly::constant(ring, 1);
    std::vector<Poly> a;
    a.reserve(s * s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) a.push_back(m.at(i, j));
    }
    auto at = [&](std::size_t i, std::size_t j) -> Poly& { return a[i * s + j]; };
    bool negate = false;
    Poly prev = Poly::constant(ring, 1);
    for (std::size_t k = 0; k + 1 < s; ++k) {
        if (at(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < s && at(p, k).is_zero()) ++p;
            if (p == s) return Poly(ring);
            for (std::size_t j = 0; j < s; ++j) std::swap(at(k, j), at(p, j));
            negate = !negate;
        }
        const bool unit_prev = prev.num_terms() == 1 && prev.degree() == 0 && prev.terms().front().c.is_one();
        for (std::size_t i = k + 1; i < s; ++i) {
            for (std::size_t j = k + 1; j < s; ++j) {
                Poly num = at(k, k) * at(i, j) - at(i, k) * at(k, j);
                at(i, j) = unit_prev ? std::move(num) : exact_div(num, prev);
            }
        }
        prev = at(k, k);
    }
    Poly d = at(s - 1, s - 1);
    return negate ? -d : d;
}

}  // namespace

Poly det_poly_matrix(const PolyMatrix& m, DetStrategy strategy) {
    check_det_size(m);
    return strategy == DetStrategy::MinorDp ? det_minor_dp(m) : det_bareiss(m);
}

Poly det_laplace_column(const PolyMatrix& m, std::size_t column) {
    check_det_size(m);
    const std::size_t s = m.size();
    if (s == 0) return Poly::constant(m.ring(), 1);
    if (s == 1) return m.at(0, 0);
    Poly acc(m.ring());
    for (std::size_t i = 0; i < s; ++i) {
        if (m.at(i, column).is_zero()) continue;
        PolyMatrix sub(m.ring(), s - 1);
        for (std::size_t r = 0, rr = 0; r < s; ++r) {
            if (r == i) continue;
            for (std::size_t c = 0, cc = 0; c < s; ++c) {
                if (c == column) continue;
                sub.set(rr, cc, m.at(r, c));
                ++cc;
            }
            ++rr;
        }
        Poly term = m.at(i, column) * det_laplace_column(sub, 0);
        if ((i + column) % 2) {
            acc -= term;
        } else {
            acc += term;
        }
    }
    return acc;
}

IntMatrix IntMatrix::identity(std::size_t size) {
    IntMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix int_matrix_mul(const IntMatrix& a, const IntMatrix& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "integer matrix size mismatch");
    const std::size_t n = a.size();
    IntMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t acc = 0;
            for (std::size_t k = 0; k < n; ++k) {
                std::int64_t prod = 0;
                if (__builtin_mul_overflow(a.at(i, k), b.at(k, j), &prod) || __builtin_add_overflow(acc, prod, &acc)) {
                    throw Error(ErrorCode::Limit, "integer matrix product overflows int64");
                }
            }
            out.at(i, j) = acc;
        }
    }
    return out;
}

}  // namespace veneroni
