#include "veneroni/projgeo.hpp"

#include <algorithm>

#include "veneroni/veneroni.hpp"

namespace veneroni {

ProjPoint::ProjPoint(ScalarVector coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw Error(ErrorCode::InvalidArgument, "point with no coordinates");
    field_ = coords_.front().ctx();
    auto lead = std::find_if(coords_.begin(), coords_.end(), [](const Scalar& c) { return !c.is_zero(); });
    if (lead == coords_.end()) throw Error(ErrorCode::InvalidArgument, "all coordinates of a projective point are zero");
    if (!lead->is_one()) {
        Scalar inv = lead->inv();
        for (auto& c : coords_) c *= inv;
    }
}

ProjPoint ProjPoint::parse(std::string_view text, const FieldCtx& field) {
    ScalarVector coords;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
        while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
        coords.push_back(Scalar::parse(piece, field));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return ProjPoint(std::move(coords));
}

ProjPoint ProjPoint::vertex(std::size_t nvars, std::size_t k, const FieldCtx& field) {
    ScalarVector c(nvars, Scalar::zero(field));
    c.at(k) = Scalar::one(field);
    return ProjPoint(std::move(c));
}

std::string ProjPoint::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ',';
        s += coords_[i].to_string();
    }
    return s;
}

ProjPoint LineParam::at(const Scalar& s, const Scalar& t) const {
    ScalarVector c(base.size(), Scalar::zero(base.field()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i].add_mul(s, base[i]);
        c[i].add_mul(t, dir[i]);
    }
    return ProjPoint(std::move(c));
}

Flat Flat::canonical(std::size_t j, ScalarVector a) {
    if (j >= a.size()) throw Error(ErrorCode::InvalidArgument, "flat index out of range");
    if (!a[j].is_zero()) throw Error(ErrorCode::InvalidArgument, "canonical flat needs a_{j,j} = 0");
    FieldCtx f = a.front().ctx();
    return Flat{j, LinearForm::variable(a.size(), j, f), LinearForm(std::move(a))};
}

bool Flat::is_canonical() const {
    if (form1 != LinearForm::variable(form1.size(), index, field())) return false;
    for (std::size_t i = 0; i < form2.size(); ++i) {
        if ((i == index) != form2[i].is_zero()) return false;
    }
    return true;
}

bool Flat::contains(std::span<const Scalar> pt) const {
    return form1.evaluate(pt).is_zero() && form2.evaluate(pt).is_zero();
}

std::optional<LinearForm> cone_hyperplane(const ProjPoint& p, const Flat& f) {
    Scalar v1 = f.form1.evaluate(p.span());
    Scalar v2 = f.form2.evaluate(p.span());
    if (v1.is_zero() && v2.is_zero()) return std::nullopt;
    ScalarVector c(f.form1.size(), Scalar::zero(p.field()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = v1 * f.form2[i] - v2 * f.form1[i];
    }
    return LinearForm(std::move(c));
}

const char* transversal_kind_name(TransversalResult::Kind k) {
    switch (k) {
        case TransversalResult::Kind::Unique: return "unique";
        case TransversalResult::Kind::Family: return "family";
        case TransversalResult::Kind::None: return "none";
    }
    return "none";
}

namespace {

bool independent(const ScalarVector& a, const ScalarVector& b, const FieldCtx& field) {
    return rank(ScalarMatrix::from_rows({a, b}, field)) == 2;
}

ScalarMatrix stack_forms(const std::vector<const LinearForm*>& forms, std::size_t cols, const FieldCtx& field) {
    std::vector<ScalarVector> rows;
    for (const auto* f : forms) rows.push_back(f->coeffs());
    return ScalarMatrix::from_rows(rows, field, cols);
}

}  // namespace

std::optional<ProjPoint> meeting_point(const LineParam& line, const Flat& f) {
    Scalar a = f.form1.evaluate(line.base.span()), b = f.form1.evaluate(line.dir.span());
    Scalar c = f.form2.evaluate(line.base.span()), d = f.form2.evaluate(line.dir.span());
    if (!a.is_zero() || !b.is_zero()) return ProjPoint({b, -a});
    if (!c.is_zero() || !d.is_zero()) return ProjPoint({d, -c});
    return std::nullopt;
}

bool line_meets_flat(const LineParam& line, const Flat& f) {
    Scalar a = f.form1.evaluate(line.base.span()), b = f.form1.evaluate(line.dir.span());
    Scalar c = f.form2.evaluate(line.base.span()), d = f.form2.evaluate(line.dir.span());
    return (a * d - b * c).is_zero();
}

TransversalResult transversal_through(const ProjPoint& p, std::span<const Flat> flats) {
    const std::size_t nv = p.size();
    std::vector<LinearForm> cones;
    for (const auto& f : flats) {
        if (f.form1.size() != nv) throw Error(ErrorCode::InvalidArgument, "flat and point live in different spaces");
        if (auto c = cone_hyperplane(p, f)) cones.push_back(std::move(*c));
    }
    std::vector<const LinearForm*> ptrs;
    for (const auto& c : cones) ptrs.push_back(&c);
    RankNullspace rn = rank_nullspace(stack_forms(ptrs, nv, p.field()));

    TransversalResult out;
    out.nullity = rn.nullspace.size();
    if (out.nullity <= 1) {
        out.kind = TransversalResult::Kind::None;
        return out;
    }
    if (out.nullity >= 3) {
        out.kind = TransversalResult::Kind::Family;
        out.family_dim = out.nullity - 1;
        for (auto& v : rn.nullspace) {
            ProjPoint q(v);
            if (q != p) {
                LineParam l{p, q};
                for (const auto& f : flats) {
                    if (!line_meets_flat(l, f)) throw Error(ErrorCode::Internal, "family line misses a queried flat");
                }
            }
            out.basis.push_back(std::move(q));
        }
        return out;
    }
    out.kind = TransversalResult::Kind::Unique;
    const ScalarVector* dir = nullptr;
    for (const auto& v : rn.nullspace) {
        if (independent(p.coords(), v, p.field())) {
            dir = &v;
            break;
        }
    }
    if (!dir) throw Error(ErrorCode::Internal, "transversal solution space does not contain a second point");
    out.line = LineParam{p, ProjPoint(*dir)};
    std::vector<ProjPoint> params;
    bool degenerate = false;
    for (std::size_t k = 0; k < flats.size(); ++k) {
        if (!line_meets_flat(*out.line, flats[k])) throw Error(ErrorCode::Internal, "transversal misses a queried flat");
        MeetingPoint mp;
        mp.flat = flats[k].index;
        mp.param = meeting_point(*out.line, flats[k]);
        if (mp.param) {
            mp.point = out.line->at((*mp.param)[0], (*mp.param)[1]);
            params.push_back(*mp.param);
        } else {
            degenerate = true;
        }
        out.meetings.push_back(std::move(mp));
    }
    out.distinct_meetings = !degenerate;
    for (std::size_t i = 0; i < params.size() && out.distinct_meetings; ++i) {
        for (std::size_t j = i + 1; j < params.size(); ++j) {
            if (params[i] == params[j]) {
                out.distinct_meetings = false;
                break;
            }
        }
    }
    return out;
}

Subspace flat_subspace(const Flat& f) {
    return Subspace{rank_nullspace(stack_forms({&f.form1, &f.form2}, f.form1.size(), f.field())).nullspace};
}

Subspace flat_intersection(const Flat& a, const Flat& b) {
    return Subspace{
        rank_nullspace(stack_forms({&a.form1, &a.form2, &b.form1, &b.form2}, a.form1.size(), a.field())).nullspace};
}

Subspace intersect_with_flat(const Subspace& s, const Flat& f) {
    if (s.empty()) return s;
    const FieldCtx& field = f.field();
    // Conditions on the combination coefficients.
    ScalarMatrix m(2, s.basis.size(), field);
    for (std::size_t k = 0; k < s.basis.size(); ++k) {
        m.at(0, k) = f.form1.evaluate(s.basis[k]);
        m.at(1, k) = f.form2.evaluate(s.basis[k]);
    }
    Subspace out;
    for (const auto& c : rank_nullspace(m).nullspace) {
        ScalarVector v(s.basis.front().size(), Scalar::zero(field));
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k].is_zero()) continue;
            for (std::size_t i = 0; i < v.size(); ++i) v[i].add_mul(c[k], s.basis[k][i]);
        }
        out.basis.push_back(std::move(v));
    }
    return out;
}

std::vector<ProjPoint> parametrize_flat(const Flat& f) {
    std::vector<ProjPoint> out;
    for (auto& v : flat_subspace(f).basis) out.emplace_back(std::move(v));
    return out;
}

Poly restrict_to_span(const Poly& p, std::span<const ScalarVector> basis) {
    if (basis.empty()) throw Error(ErrorCode::InvalidArgument, "restriction to an empty subspace");
    const FieldCtx& field = p.ring()->field();
    RingPtr params = PolyRing::make(basis.size(), field, "t");
    std::vector<Poly> images;
    for (std::size_t i = 0; i < p.ring()->nvars(); ++i) {
        std::vector<Term> t;
        for (std::size_t k = 0; k < basis.size(); ++k) t.push_back({Monomial::var(k), basis[k].at(i)});
        images.push_back(Poly::from_terms(params, std::move(t)));
    }
    return Substitution(p.ring(), std::move(images)).apply(p);
}

Poly restrict_to_line(const Poly& p, const LineParam& line) {
    std::vector<ScalarVector> basis{line.base.coords(), line.dir.coords()};
    return restrict_to_span(p, basis);
}

bool vanishes_on(const Poly& p, const Flat& f) {
    Subspace s = flat_subspace(f);
    return restrict_to_span(p, s.basis).is_zero();
}

ProjPoint random_point(std::size_t nvars, const FieldCtx& field, Rng& rng, long long bound) {
    while (true) {
        ScalarVector c;
        for (std::size_t i = 0; i < nvars; ++i) c.push_back(random_scalar(field, rng, bound));
        if (std::any_of(c.begin(), c.end(), [](const Scalar& x) { return !x.is_zero(); })) return ProjPoint(std::move(c));
    }
}

ProjPoint random_point_in(const Subspace& s, const FieldCtx& field, Rng& rng, long long bound) {
    if (s.empty()) throw Error(ErrorCode::InvalidArgument, "random point of an empty subspace");
    while (true) {
        ScalarVector v(s.basis.front().size(), Scalar::zero(field));
        for (const auto& b : s.basis) {
            Scalar c = random_scalar(field, rng, bound);
            if (c.is_zero()) continue;
            for (std::size_t i = 0; i < v.size(); ++i) v[i].add_mul(c, b[i]);
        }
        if (std::any_of(v.begin(), v.end(), [](const Scalar& x) { return !x.is_zero(); })) return ProjPoint(std::move(v));
    }
}

GenericityReport genericity_check(std::span<const Flat> flats, const GenericityOptions& opts) {
    GenericityReport rep;
    if (flats.size() < 3) throw Error(ErrorCode::InvalidArgument, "need n+1 >= 3 flats");
    const std::size_t nv = flats.front().form1.size();
    const std::size_t n = nv - 1;
    if (flats.size() != n + 1) throw Error(ErrorCode::InvalidArgument, "need exactly n+1 flats in P^n");
    const FieldCtx& field = flats.front().field();

    for (const auto& f : flats) {
        if (f.form1.size() != nv || f.form2.size() != nv) {
            throw Error(ErrorCode::InvalidArgument, "flats live in different spaces");
        }
        for (std::size_t i = 0; i < nv; ++i) {
            if (i != f.index && f.form2[i].is_zero()) {
                rep.coefficients_ok = false;
                rep.failures.push_back("(a) a_{" + std::to_string(f.index) + "," + std::to_string(i) + "} = 0");
            }
        }
    }

    const std::size_t expected_rank = std::min<std::size_t>(4, nv);
    for (std::size_t i = 0; i < flats.size(); ++i) {
        for (std::size_t j = i + 1; j < flats.size(); ++j) {
            std::size_t nullity = flat_intersection(flats[i], flats[j]).basis.size();
            if (nullity != nv - expected_rank) {
                rep.intersections_ok = false;
                rep.failures.push_back("(b) flats " + std::to_string(i) + " and " + std::to_string(j) +
                                       " meet in projective dimension " + std::to_string(static_cast<int>(nullity) - 1));
            }
        }
    }

    Rng rng = make_rng(derive_seed(opts.seed, 0xc0ffee));
    for (std::size_t s = 0; s < opts.samples && rep.transversals_ok; ++s) {
        ProjPoint p = random_point(nv, field, rng, opts.bound);
        // Omit every pair (a, b): the remaining n-1 flats.
        for (std::size_t a = 0; a < flats.size() && rep.transversals_ok; ++a) {
            for (std::size_t b = a + 1; b < flats.size() && rep.transversals_ok; ++b) {
                std::vector<Flat> subset;
                for (std::size_t k = 0; k < flats.size(); ++k) {
                    if (k != a && k != b) subset.push_back(flats[k]);
                }
                auto t = transversal_through(p, subset);
                if (t.kind != TransversalResult::Kind::Unique || !t.distinct_meetings) {
                    rep.transversals_ok = false;
                    rep.failures.push_back("(c) sample point " + p.to_string() + " omitting flats " + std::to_string(a) +
                                           "," + std::to_string(b) + ": transversal " +
                                           transversal_kind_name(t.kind) +
                                           (t.kind == TransversalResult::Kind::Unique ? " with repeated meeting points" : ""));
                }
            }
        }
    }

    if (opts.check_divisibility && rep.coefficients_ok && rep.intersections_ok && rep.transversals_ok) {
        rep.divisibility_checked = true;
        std::vector<Flat> fl(flats.begin(), flats.end());
        PolyMatrix b = build_matrix_B(fl);
        for (std::size_t i = 0; i < nv; ++i) {
            try {
                Poly d = det_poly_matrix(b.principal_minor(i));
                (void)exact_div_by_var(d, i);
                if (d.is_zero()) throw Error(ErrorCode::NotDivisible, "det(B_i) vanishes identically");
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NotDivisible) throw;
                rep.divisibility_ok = false;
                rep.failures.push_back("(d) det(B_" + std::to_string(i) + "): " + e.what());
            }
        }
    }
    return rep;
}

GeneratedFlats random_general_flats(std::size_t n, std::uint64_t seed, long long bound, const FieldCtx& field,
                                    std::size_t max_retries) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
    if (n + 1 > kMaxVars) throw Error(ErrorCode::InvalidArgument, "n above " + std::to_string(kMaxVars - 1) + " is unsupported");
    std::string last;
    for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
        Rng rng = make_rng(derive_seed(seed, attempt));
        GeneratedFlats g;
        g.retries = attempt;
        for (std::size_t j = 0; j <= n; ++j) {
            ScalarVector a(n + 1, Scalar::zero(field));
            for (std::size_t i = 0; i <= n; ++i) {
                if (i != j) a[i] = random_nonzero(field, rng, bound);
            }
            g.flats.push_back(Flat::canonical(j, std::move(a)));
        }
        GenericityOptions opts;
        opts.seed = seed;
        opts.bound = bound;
        auto rep = genericity_check(g.flats, opts);
        if (rep.passed()) return g;
        last = rep.first_failure();
    }
    throw Error(ErrorCode::Genericity, "no general instance after " + std::to_string(max_retries + 1) +
                                           " attempts; last failure: " + last);
}

NormalizedFlats normalize_flats(const std::vector<std::pair<LinearForm, LinearForm>>& raw) {
    if (raw.size() < 3) throw Error(ErrorCode::InvalidArgument, "need n+1 >= 3 flats");
    const std::size_t nv = raw.size();
    const FieldCtx field = raw.front().first[0].ctx();
    std::vector<ScalarVector> rows;
    for (const auto& [f1, f2] : raw) {
        if (f1.size() != nv || f2.size() != nv) throw Error(ErrorCode::InvalidArgument, "need n+1 flats in P^n");
        rows.push_back(f1.coeffs());
    }
    ScalarMatrix change = ScalarMatrix::from_rows(rows, field);
    if (rank(change) != nv) throw Error(ErrorCode::Genericity, "first forms are linearly dependent");
    ScalarMatrix inv = inverse(change);
    NormalizedFlats out{{}, change};
    for (std::size_t j = 0; j < nv; ++j) {
        const auto& f2 = raw[j].second;
        ScalarVector a(nv, Scalar::zero(field));
        for (std::size_t k = 0; k < nv; ++k) {
            for (std::size_t i = 0; i < nv; ++i) {
                if (!f2[i].is_zero()) a[k].add_mul(f2[i], inv.at(i, k));
            }
        }
        a[j] = Scalar::zero(field);
        if (std::all_of(a.begin(), a.end(), [](const Scalar& c) { return c.is_zero(); })) {
            throw Error(ErrorCode::Genericity, "forms of flat " + std::to_string(j) + " are dependent");
        }
        for (std::size_t i = 0; i < nv; ++i) {
            if (i != j && a[i].is_zero()) {
                throw Error(ErrorCode::Genericity, "after the coordinate change a_{" + std::to_string(j) + "," +
                                                       std::to_string(i) + "} = 0; input flats are not general");
            }
        }
        out.flats.push_back(Flat::canonical(j, std::move(a)));
    }
    return out;
}

}  // namespace veneroni
