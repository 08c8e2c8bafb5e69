#include "veneroni/veneroni.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace veneroni {

RingPtr source_ring(std::span<const Flat> flats) {
    if (flats.empty()) throw Error(ErrorCode::InvalidArgument, "no flats");
    return PolyRing::make(flats.front().form1.size(), flats.front().field(), "x");
}

RingPtr target_ring(std::size_t n, const FieldCtx& field) { return PolyRing::make(n + 1, field, "y"); }

namespace {

void require_canonical(std::span<const Flat> flats) {
    const std::size_t nv = flats.size();
    if (nv < 3) throw Error(ErrorCode::InvalidArgument, "need n+1 >= 3 flats");
    for (std::size_t j = 0; j < nv; ++j) {
        const Flat& f = flats[j];
        if (f.index != j || f.form1.size() != nv || !f.is_canonical()) {
            throw Error(ErrorCode::InvalidArgument, "flat " + std::to_string(j) + " is not in canonical form");
        }
    }
}

}  // namespace

PolyMatrix build_matrix_B(std::span<const Flat> flats, const RingPtr& ring_in) {
    require_canonical(flats);
    RingPtr ring = ring_in ? ring_in : source_ring(flats);
    const std::size_t nv = flats.size();
    PolyMatrix b(ring, nv);
    for (std::size_t i = 0; i < nv; ++i) {
        for (std::size_t k = 0; k < nv; ++k) {
            if (i == k) {
                b.set(i, k, -flats[i].form2.to_poly(ring));
            } else {
                b.set(i, k, Poly::monomial(ring, Monomial::var(k), flats[i].coeff(k)));
            }
        }
    }
    return b;
}

Poly compute_Q(std::span<const Flat> flats, std::size_t i, DetStrategy strategy, const RingPtr& ring) {
    PolyMatrix b = build_matrix_B(flats, ring);
    if (i >= b.size()) throw Error(ErrorCode::InvalidArgument, "Q index out of range");
    return exact_div_by_var(det_poly_matrix(b.principal_minor(i), strategy), i);
}

Poly compute_Q_by_column_sum(std::span<const Flat> flats, std::size_t i, std::size_t k, const RingPtr& ring_in) {
    PolyMatrix b = build_matrix_B(flats, ring_in);
    const RingPtr& ring = b.ring();
    const std::size_t nv = b.size();
    if (i >= nv || k >= nv || k == i) throw Error(ErrorCode::InvalidArgument, "column index must differ from i");
    // Rows and columns of B_i are the indices other than i.
    std::vector<std::size_t> idx;
    for (std::size_t r = 0; r < nv; ++r) {
        if (r != i) idx.push_back(r);
    }
    PolyMatrix a(ring, nv - 1);
    for (std::size_t r = 0; r < idx.size(); ++r) {
        Poly colsum(ring);
        for (std::size_t c = 0; c < idx.size(); ++c) {
            if (idx[c] == k) continue;
            a.set(r, c, b.at(idx[r], idx[c]));
        }
        for (std::size_t c = 0; c < idx.size(); ++c) colsum += b.at(idx[r], idx[c]);
        Poly expected = Poly::monomial(ring, Monomial::var(i), -flats[idx[r]].coeff(i));
        if (colsum != expected) throw Error(ErrorCode::Internal, "column sum of B_i is not a multiple of x_i");
        std::size_t kc = static_cast<std::size_t>(std::find(idx.begin(), idx.end(), k) - idx.begin());
        a.set(r, kc, Poly::constant(ring, -flats[idx[r]].coeff(i)));
    }
    return det_poly_matrix(a);
}

std::size_t linear_system_dimension(std::span<const Flat> flats, unsigned d, const std::vector<std::size_t>& subset) {
    if (flats.empty()) throw Error(ErrorCode::InvalidArgument, "no flats");
    const std::size_t nv = flats.front().form1.size();
    const FieldCtx field = flats.front().field();
    RingPtr ring = PolyRing::make(nv, field, "x");
    const std::vector<Monomial> monos = monomials_of_degree(nv, d);

    std::vector<ScalarVector> rows;
    for (std::size_t j : subset) {
        if (j >= flats.size()) throw Error(ErrorCode::InvalidArgument, "flat index out of range");
        Subspace s = flat_subspace(flats[j]);
        RingPtr params = PolyRing::make(s.basis.size(), field, "t");
        std::vector<Poly> images;
        for (std::size_t i = 0; i < nv; ++i) {
            std::vector<Term> t;
            for (std::size_t k = 0; k < s.basis.size(); ++k) t.push_back({Monomial::var(k), s.basis[k][i]});
            images.push_back(Poly::from_terms(params, std::move(t)));
        }
        Substitution sub(ring, std::move(images));
        std::unordered_map<std::uint64_t, std::size_t> row_of;
        const std::size_t first = rows.size();
        for (std::size_t c = 0; c < monos.size(); ++c) {
            for (const auto& term : sub.image_of(monos[c]).terms()) {
                auto [it, fresh] = row_of.try_emplace(term.m.bits(), rows.size());
                if (fresh) rows.emplace_back(monos.size(), Scalar::zero(field));
                rows[it->second][c] = term.c;
            }
        }
        // Integer rows keep the fraction-free elimination free of fractions.
        if (field.is_rational()) {
            for (std::size_t r = first; r < rows.size(); ++r) {
                mpz_class l = 1;
                for (const auto& c : rows[r]) {
                    if (!c.is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational().get_den_mpz_t());
                }
                if (l == 1) continue;
                Scalar scale{mpq_class(l)};
                for (auto& c : rows[r]) c *= scale;
            }
        }
    }
    if (rows.empty()) return monos.size();
    return monos.size() - rank(ScalarMatrix::from_rows(rows, field));
}

std::size_t linear_system_dimension(std::span<const Flat> flats, unsigned d) {
    std::vector<std::size_t> all(flats.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return linear_system_dimension(flats, d, all);
}

VeneroniMap build_forward_map(std::span<const Flat> flats, const BuildOptions& opts) {
    require_canonical(flats);
    VeneroniMap m;
    m.n = flats.size() - 1;
    m.flats.assign(flats.begin(), flats.end());
    m.xring = source_ring(flats);
    m.yring = target_ring(m.n, flats.front().field());
    PolyMatrix b = build_matrix_B(flats, m.xring);
    const std::size_t nv = m.n + 1;
    for (std::size_t i = 0; i < nv; ++i) {
        Poly det = det_poly_matrix(b.principal_minor(i), opts.strategy);
        Poly q = exact_div_by_var(det, i);
        if (q.degree() != static_cast<int>(m.n) - 1 || !q.is_homogeneous()) {
            throw Error(ErrorCode::Construction, "Q_" + std::to_string(i) + " does not have degree n-1");
        }
        for (std::size_t j = 0; j < nv; ++j) {
            if (j != i && !vanishes_on(q, flats[j])) {
                throw Error(ErrorCode::Construction,
                            "Q_" + std::to_string(i) + " does not vanish on flat " + std::to_string(j));
            }
        }
        for (std::size_t k = 0; k < nv; ++k) {
            if (evaluate(q, ProjPoint::vertex(nv, k, q.ring()->field()).span()).is_zero()) {
                throw Error(ErrorCode::Construction,
                            "Q_" + std::to_string(i) + " vanishes at coordinate vertex " + std::to_string(k));
            }
        }
        m.components.push_back(q.times_monomial(Monomial::var(i)));
        m.Q.push_back(std::move(q));
    }
    for (std::size_t i = 0; i < nv; ++i) {
        for (std::size_t j = 0; j < nv; ++j) {
            if (!vanishes_on(m.components[i], flats[j])) {
                throw Error(ErrorCode::Construction, "component " + std::to_string(i) +
                                                         " does not vanish on flat " + std::to_string(j));
            }
        }
    }
    return m;
}

namespace {

// Columns: coefficient vectors of the components over their joint support.
struct ComponentBasis {
    std::map<std::uint64_t, std::size_t> row_of;
    ScalarMatrix matrix{0, 0, FieldCtx::rationals()};
};

ComponentBasis component_basis(const VeneroniMap& m) {
    ComponentBasis cb;
    const FieldCtx field = m.xring->field();
    std::vector<Monomial> monos = monomials_of_degree(m.n + 1, static_cast<unsigned>(m.n));
    for (std::size_t r = 0; r < monos.size(); ++r) cb.row_of[monos[r].bits()] = r;
    cb.matrix = ScalarMatrix(monos.size(), m.n + 1, field);
    for (std::size_t j = 0; j <= m.n; ++j) {
        for (const auto& t : m.components[j].terms()) cb.matrix.at(cb.row_of.at(t.m.bits()), j) = t.c;
    }
    return cb;
}

}  // namespace

InverseData solve_b_matrix(const VeneroniMap& m) {
    const std::size_t nv = m.n + 1;
    const FieldCtx field = m.xring->field();
    ComponentBasis cb = component_basis(m);
    InverseData inv;
    inv.b = ScalarMatrix(nv, nv, field);
    for (std::size_t i = 0; i < nv; ++i) {
        Poly target = m.flats[i].form2.to_poly(m.xring) * m.Q[i];
        ScalarVector rhs(cb.matrix.rows(), Scalar::zero(field));
        for (const auto& t : target.terms()) rhs[cb.row_of.at(t.m.bits())] = t.c;
        SolveResult sol;
        try {
            sol = solve_exact(cb.matrix, rhs);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Inconsistent) throw;
            throw Error(ErrorCode::Genericity, "f_" + std::to_string(i) + " Q_" + std::to_string(i) +
                                                   " is not in the span of the components");
        }
        if (!sol.nullspace.empty()) throw Error(ErrorCode::Construction, "components are linearly dependent");
        Poly residual = target;
        for (std::size_t j = 0; j < nv; ++j) {
            inv.b.at(i, j) = sol.solution[j];
            residual -= m.components[j].scaled(sol.solution[j]);
        }
        if (!residual.is_zero()) throw Error(ErrorCode::Internal, "b-matrix residual is nonzero");
        for (std::size_t j = 0; j < nv; ++j) {
            if ((i == j) != inv.b.at(i, j).is_zero()) {
                throw Error(ErrorCode::Genericity, "b_{" + std::to_string(i) + "," + std::to_string(j) + "} is " +
                                                       (i == j ? "nonzero" : "zero"));
            }
        }
        inv.g.emplace_back(inv.b.row(i));
    }
    return inv;
}

PolyMatrix build_matrix_C(const VeneroniMap& m, const ScalarMatrix& b) {
    const std::size_t nv = m.n + 1;
    if (b.rows() != nv || b.cols() != nv) throw Error(ErrorCode::InvalidArgument, "b-matrix has the wrong size");
    PolyMatrix c(m.yring, nv);
    for (std::size_t i = 0; i < nv; ++i) {
        for (std::size_t j = 0; j < nv; ++j) {
            if (i == j) {
                std::vector<Term> t;
                for (std::size_t k = 0; k < nv; ++k) t.push_back({Monomial::var(k), -b.at(i, k)});
                c.set(i, i, Poly::from_terms(m.yring, std::move(t)));
            } else {
                c.set(i, j, Poly::monomial(m.yring, Monomial::var(j), m.flats[i].coeff(j)));
            }
        }
    }
    return c;
}

std::vector<Flat> dual_flats_of(const ScalarMatrix& b) {
    std::vector<Flat> out;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        const FieldCtx& f = b.field();
        out.push_back(Flat{i, LinearForm::variable(b.cols(), i, f), LinearForm(b.row(i))});
    }
    return out;
}

void build_inverse_map(const VeneroniMap& m, InverseData& inv, DetStrategy strategy) {
    PolyMatrix c = build_matrix_C(m, inv.b);
    inv.dual_flats = dual_flats_of(inv.b);
    inv.inverse_components.clear();
    for (std::size_t i = 0; i <= m.n; ++i) {
        Poly d = det_poly_matrix(c.principal_minor(i), strategy);
        if (d.degree() != static_cast<int>(m.n)) {
            throw Error(ErrorCode::Construction, "det(C_" + std::to_string(i) + ") does not have degree n");
        }
        for (std::size_t j = 0; j <= m.n; ++j) {
            if (j != i && !vanishes_on(d, inv.dual_flats[j])) {
                throw Error(ErrorCode::Construction, "det(C_" + std::to_string(i) +
                                                         ") does not vanish on dual flat " + std::to_string(j));
            }
        }
        inv.inverse_components.push_back(std::move(d));
    }
}

ProjPoint apply_map(const std::vector<Poly>& components, const ProjPoint& p) {
    ScalarVector img;
    for (const auto& c : components) img.push_back(evaluate(c, p.span()));
    if (std::all_of(img.begin(), img.end(), [](const Scalar& s) { return s.is_zero(); })) {
        throw Error(ErrorCode::BaseLocus, "point " + p.to_string() + " is in the base locus");
    }
    return ProjPoint(std::move(img));
}

IntMatrix class_matrix(std::size_t n, std::size_t size) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "class matrix needs n >= 2");
    const auto nn = static_cast<std::int64_t>(n);
    IntMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            if (i == 0) {
                m.at(i, j) = j == 0 ? nn : nn - 1;
            } else if (j == 0) {
                m.at(i, j) = -1;
            } else {
                m.at(i, j) = i == j ? 0 : -1;
            }
        }
    }
    return m;
}

IntMatrix class_matrix(std::size_t n) { return class_matrix(n, n + 2); }

std::size_t dual_system_dimension(const InverseData& inv, std::size_t n) {
    return linear_system_dimension(inv.dual_flats, static_cast<unsigned>(n));
}

}  // namespace veneroni
