#include <algorithm>
#include <set>

#include "veneroni/veneroni.hpp"

namespace veneroni {

const char* status_name(CheckResult::Status s) {
    switch (s) {
        case CheckResult::Status::Pass: return "pass";
        case CheckResult::Status::Fail: return "fail";
        case CheckResult::Status::Skipped: return "skipped";
        case CheckResult::Status::Reported: return "reported";
    }
    return "fail";
}

bool VerificationReport::passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.failed(); });
}

const CheckResult* VerificationReport::find(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

namespace {

constexpr long long kSampleBound = 50;

CheckResult make_check(std::string name) {
    CheckResult c;
    c.name = std::move(name);
    return c;
}

void fail(CheckResult& c, const std::string& why) {
    if (c.status != CheckResult::Status::Fail) c.witness["reason"] = why;
    c.status = CheckResult::Status::Fail;
}

CheckResult skipped(std::string name, const std::string& why) {
    CheckResult c = make_check(std::move(name));
    c.status = CheckResult::Status::Skipped;
    c.witness["reason"] = why;
    return c;
}

std::vector<Poly> in_field(const std::vector<Poly>& ps, const FieldCtx& field) {
    if (ps.empty() || ps.front().ring()->field() == field) return ps;
    RingPtr ring = PolyRing::make(ps.front().ring()->names(), field);
    std::vector<Poly> out;
    for (const auto& p : ps) out.push_back(p.reduce_to(ring));
    return out;
}

Poly product_of(const std::vector<Poly>& ps) {
    Poly acc = Poly::constant(ps.front().ring(), 1);
    for (const auto& p : ps) acc = acc * p;
    return acc;
}

ScalarVector line_point(const LineParam& l, const Scalar& s, const Scalar& t) {
    ScalarVector c(l.base.size(), Scalar::zero(l.base.field()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i].add_mul(s, l.base[i]);
        c[i].add_mul(t, l.dir[i]);
    }
    return c;
}

Json line_json(const LineParam& l) { return Json::array({l.base.to_string(), l.dir.to_string()}); }

std::vector<Flat> flats_except(std::span<const Flat> flats, std::size_t a, std::size_t b) {
    std::vector<Flat> out;
    for (std::size_t k = 0; k < flats.size(); ++k) {
        if (k != a && k != b) out.push_back(flats[k]);
    }
    return out;
}

bool in_base_locus(const std::vector<Poly>& comps, std::span<const Scalar> pt) {
    return std::all_of(comps.begin(), comps.end(), [&](const Poly& c) { return evaluate(c, pt).is_zero(); });
}

}  // namespace

CheckResult verify_composition(const VeneroniMap& m, const InverseData& inv, CompositionMode mode, std::size_t points,
                               std::uint64_t seed, const FieldCtx& field) {
    CheckResult c = make_check("composition");
    PolyMatrix cm = build_matrix_C(m, inv.b);
    std::vector<Poly> dets;
    for (std::size_t i = 0; i <= m.n; ++i) dets.push_back(det_poly_matrix(cm.principal_minor(i)));
    c.witness["mode"] = mode == CompositionMode::Symbolic ? "symbolic" : "sampled";

    if (mode == CompositionMode::Symbolic) {
        c.witness["field"] = m.xring->field().to_string();
        Substitution h(m.yring, m.components);
        Poly prod = product_of(m.Q);
        Json terms = Json::array();
        for (std::size_t i = 0; i <= m.n; ++i) {
            Poly lhs = h.apply(dets[i]);
            Poly rhs = prod.times_monomial(Monomial::var(i));
            terms.push_back(lhs.num_terms());
            if (lhs != rhs) {
                fail(c, "h(det C_" + std::to_string(i) + ") differs from x_" + std::to_string(i) + " Q_0...Q_n");
                c.witness["index"] = i;
                Poly diff = lhs - rhs;
                c.witness["difference_terms"] = diff.num_terms();
                c.witness["difference_leading"] =
                    Poly::from_terms(diff.ring(), {diff.terms().front()}).to_string();
                break;
            }
        }
        c.witness["terms"] = terms;
        return c;
    }

    c.witness["field"] = field.to_string();
    c.witness["points"] = points;
    std::vector<Poly> comps = in_field(m.components, field);
    std::vector<Poly> qs = in_field(m.Q, field);
    std::vector<Poly> ds = in_field(dets, field);
    Rng rng = make_rng(derive_seed(seed, 0xc0));
    for (std::size_t s = 0; s < points; ++s) {
        ProjPoint p = random_point(m.n + 1, field, rng, 1000);
        ScalarVector y;
        for (const auto& comp : comps) y.push_back(evaluate(comp, p.span()));
        Scalar prod = Scalar::one(field);
        for (const auto& q : qs) prod *= evaluate(q, p.span());
        for (std::size_t i = 0; i <= m.n; ++i) {
            if (evaluate(ds[i], y) != p[i] * prod) {
                fail(c, "identity fails at a sampled point");
                c.witness["point"] = p.to_string();
                c.witness["index"] = i;
                return c;
            }
        }
    }
    return c;
}

CheckResult verify_roundtrip_sample(const VeneroniMap& m, const InverseData& inv, std::size_t k, std::uint64_t seed,
                                    const FieldCtx& field) {
    CheckResult c = make_check("roundtrip");
    std::vector<Poly> comps = in_field(m.components, field);
    std::vector<Poly> back = in_field(inv.inverse_components, field);
    std::vector<Poly> qs = in_field(m.Q, field);
    Rng rng = make_rng(derive_seed(seed, 0xa1));
    std::set<std::string> seen, images;
    std::size_t excluded = 0, done = 0, attempts = 0;
    while (done < k) {
        if (++attempts > 100 * k + 100) {
            fail(c, "could not sample enough points off the union of the Q_i");
            break;
        }
        ProjPoint p = random_point(m.n + 1, field, rng, kSampleBound);
        if (seen.count(p.to_string())) continue;
        if (std::any_of(qs.begin(), qs.end(), [&](const Poly& q) { return evaluate(q, p.span()).is_zero(); })) {
            ++excluded;
            continue;
        }
        seen.insert(p.to_string());
        ProjPoint y = apply_map(comps, p);
        ProjPoint x = apply_map(back, y);
        if (x != p) {
            fail(c, "u(v(p)) != p");
            c.witness["point"] = p.to_string();
            c.witness["image"] = y.to_string();
            c.witness["back"] = x.to_string();
            break;
        }
        if (!images.insert(y.to_string()).second) {
            fail(c, "two distinct samples share an image");
            c.witness["point"] = p.to_string();
            break;
        }
        ++done;
    }
    c.witness["field"] = field.to_string();
    c.witness["samples"] = done;
    c.witness["excluded_on_Q"] = excluded;
    c.witness["distinct_images"] = images.size();
    return c;
}

CheckResult verify_base_locus(const VeneroniMap& m, std::uint64_t seed) {
    CheckResult c = make_check("base_locus");
    for (std::size_t i = 0; i <= m.n; ++i) {
        for (std::size_t j = 0; j <= m.n; ++j) {
            if (!vanishes_on(m.components[i], m.flats[j])) {
                fail(c, "component " + std::to_string(i) + " does not vanish on flat " + std::to_string(j));
                return c;
            }
        }
    }
    const FieldCtx field = m.xring->field();
    Rng rng = make_rng(derive_seed(seed, 0xba));
    ProjPoint general = random_point(m.n + 1, field, rng, kSampleBound);
    if (in_base_locus(m.components, general.span())) {
        fail(c, "a random point is a base point");
        c.witness["point"] = general.to_string();
        return c;
    }
    ProjPoint on_flat = random_point_in(flat_subspace(m.flats[0]), field, rng, kSampleBound);
    if (!in_base_locus(m.components, on_flat.span())) {
        fail(c, "a point of flat 0 is not a base point");
        c.witness["point"] = on_flat.to_string();
        return c;
    }
    c.witness["general_point"] = general.to_string();
    c.witness["image"] = apply_map(m.components, general).to_string();
    c.witness["flat_point"] = on_flat.to_string();
    c.witness["flats_checked"] = m.n + 1;
    return c;
}

std::vector<SampledTransversal> sample_full_transversals(const VeneroniMap& m, std::size_t count, std::uint64_t seed) {
    std::vector<SampledTransversal> out;
    if (m.n < 4) return out;
    const FieldCtx field = m.xring->field();
    Rng rng = make_rng(derive_seed(seed, 0x7a));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i <= m.n; ++i) {
        for (std::size_t j = i + 1; j <= m.n; ++j) pairs.emplace_back(i, j);
    }
    std::set<std::string> lines;
    for (std::size_t attempt = 0; out.size() < count && attempt < 4 * count + pairs.size(); ++attempt) {
        auto [i, j] = pairs[attempt % pairs.size()];
        Subspace s = flat_intersection(m.flats[i], m.flats[j]);
        if (s.empty()) continue;
        ProjPoint p = random_point_in(s, field, rng, kSampleBound);
        auto others = flats_except(m.flats, i, j);
        TransversalResult t = transversal_through(p, others);
        if (t.kind != TransversalResult::Kind::Unique) continue;
        if (!lines.insert(p.to_string() + "|" + t.line->dir.to_string()).second) continue;
        out.push_back({*t.line, i, j});
    }
    return out;
}

CheckResult verify_transversals_in_R(const VeneroniMap& m, std::size_t count, std::uint64_t seed) {
    CheckResult c = make_check("transversals_in_R");
    if (m.n < 3) return skipped(c.name, "no line meets n+1 = 3 general points of P^2");
    c.witness["direction"] = "T_n in R_n; the converse is not checked";
    if (m.n == 3) {
        N3Count r = count_transversals_n3(m.flats, m.Q, seed);
        c.witness["lines"] = 2;
        c.witness["construction"] = "roots of the meeting condition along flat 0, in Q[tau]/(phi)";
        c.witness["discriminant"] = r.discriminant.to_string();
        if (!r.discriminant_nonzero) fail(c, "meeting condition has a repeated root");
        if (!r.lines_meet_all) fail(c, "a root does not give a line meeting all four flats");
        if (!r.lines_on_Q) fail(c, "a transversal is not contained in every Q_i");
        return c;
    }
    auto lines = sample_full_transversals(m, count, seed);
    c.witness["construction"] = "line through a point of Pi_i cap Pi_j meeting the other flats";
    c.witness["lines"] = lines.size();
    Json shown = Json::array();
    for (const auto& st : lines) {
        for (const auto& f : m.flats) {
            if (!line_meets_flat(st.line, f)) {
                fail(c, "sampled line misses flat " + std::to_string(f.index));
                c.witness["line"] = line_json(st.line);
                return c;
            }
        }
        for (std::size_t i = 0; i <= m.n; ++i) {
            if (!restrict_to_line(m.Q[i], st.line).is_zero()) {
                fail(c, "Q_" + std::to_string(i) + " does not vanish on a transversal");
                c.witness["line"] = line_json(st.line);
                return c;
            }
        }
        if (shown.size() < 3) shown.push_back(line_json(st.line));
    }
    c.witness["sample"] = shown;
    if (lines.size() < count) fail(c, "fewer transversals than requested");
    return c;
}

CheckResult verify_multiplicity(const VeneroniMap& m, std::size_t i, std::size_t j, std::size_t k,
                                std::uint64_t seed) {
    CheckResult c = make_check("multiplicity");
    if (k == i || k == j || i == j) throw Error(ErrorCode::InvalidArgument, "need distinct i, j and k outside {i, j}");
    Subspace s = flat_intersection(m.flats[i], m.flats[j]);
    if (s.empty()) return skipped(c.name, "flats " + std::to_string(i) + " and " + std::to_string(j) + " are disjoint");
    Rng rng = make_rng(derive_seed(seed, 0x3u + 17 * i + 131 * j));
    ProjPoint q = random_point_in(s, m.xring->field(), rng, kSampleBound);
    c.witness["point"] = q.to_string();
    if (!evaluate(m.Q[k], q.span()).is_zero()) fail(c, "Q_k does not vanish at the point");
    for (std::size_t l = 0; l <= m.n; ++l) {
        if (!evaluate(partial_derivative(m.Q[k], l), q.span()).is_zero()) {
            fail(c, "partial derivative " + std::to_string(l) + " of Q_k does not vanish");
            break;
        }
    }
    return c;
}

CheckResult verify_multiplicity_all(const VeneroniMap& m, std::uint64_t seed) {
    CheckResult c = make_check("multiplicity");
    if (m.n < 4) return skipped(c.name, "pairwise intersections of the flats are empty for n < 4");
    const FieldCtx field = m.xring->field();
    std::vector<std::vector<Poly>> grads(m.n + 1);
    for (std::size_t k = 0; k <= m.n; ++k) {
        for (std::size_t l = 0; l <= m.n; ++l) grads[k].push_back(partial_derivative(m.Q[k], l));
    }
    Rng rng = make_rng(derive_seed(seed, 0x3));
    std::size_t points = 0, conditions = 0;
    for (std::size_t i = 0; i <= m.n; ++i) {
        for (std::size_t j = i + 1; j <= m.n; ++j) {
            ProjPoint q = random_point_in(flat_intersection(m.flats[i], m.flats[j]), field, rng, kSampleBound);
            ++points;
            for (std::size_t k = 0; k <= m.n; ++k) {
                if (k == i || k == j) continue;
                bool ok = evaluate(m.Q[k], q.span()).is_zero();
                for (const auto& g : grads[k]) ok = ok && evaluate(g, q.span()).is_zero();
                conditions += m.n + 2;
                if (!ok) {
                    fail(c, "Q_" + std::to_string(k) + " is not singular at a point of Pi_" + std::to_string(i) +
                                " cap Pi_" + std::to_string(j));
                    c.witness["point"] = q.to_string();
                    return c;
                }
            }
        }
    }
    // Control: at a general point of one flat Q_k vanishes but is smooth.
    std::size_t controls = 0;
    for (std::size_t k = 0; k <= m.n; ++k) {
        std::size_t j = (k + 1) % (m.n + 1);
        ProjPoint q = random_point_in(flat_subspace(m.flats[j]), field, rng, kSampleBound);
        if (!evaluate(m.Q[k], q.span()).is_zero()) {
            fail(c, "Q_" + std::to_string(k) + " does not vanish on flat " + std::to_string(j));
            return c;
        }
        bool any = std::any_of(grads[k].begin(), grads[k].end(),
                               [&](const Poly& g) { return !evaluate(g, q.span()).is_zero(); });
        if (!any) {
            fail(c, "control: gradient of Q_" + std::to_string(k) + " vanishes at a general point of flat " +
                        std::to_string(j));
            c.witness["point"] = q.to_string();
            return c;
        }
        ++controls;
    }
    c.witness["intersection_points"] = points;
    c.witness["conditions"] = conditions;
    c.witness["controls_nonsingular"] = controls;
    return c;
}

PencilExample pencil_plane(std::span<const Flat> flats) {
    if (flats.size() != 5) throw Error(ErrorCode::InvalidArgument, "the pencil plane needs n = 4");
    auto point_of = [&](std::size_t a, std::size_t b) {
        Subspace s = flat_intersection(flats[a], flats[b]);
        if (s.basis.size() != 1) {
            throw Error(ErrorCode::Genericity, "flats " + std::to_string(a) + " and " + std::to_string(b) +
                                                   " do not meet in a point");
        }
        return ProjPoint(s.basis.front());
    };
    PencilExample ex{point_of(2, 3), point_of(2, 4), point_of(3, 4), {}};
    ex.plane.basis = {ex.p23.coords(), ex.p24.coords(), ex.p34.coords()};
    if (rank(ScalarMatrix::from_rows(ex.plane.basis, flats.front().field())) != 3) {
        throw Error(ErrorCode::Genericity, "the three intersection points are collinear");
    }
    return ex;
}

CheckResult quadric_pair_example(const VeneroniMap& m, std::uint64_t seed) {
    CheckResult c = make_check("quadric_pair_example");
    if (m.n != 4) return skipped(c.name, "defined for n = 4");
    const FieldCtx field = m.xring->field();
    PencilExample ex = pencil_plane(m.flats);
    Subspace s0 = intersect_with_flat(ex.plane, m.flats[0]);
    Subspace s1 = intersect_with_flat(ex.plane, m.flats[1]);
    if (s0.basis.size() != 1 || s1.basis.size() != 1) {
        fail(c, "the plane does not meet flats 0 and 1 in single points");
        return c;
    }
    ProjPoint p0(s0.basis.front()), p1(s1.basis.front());
    c.witness["p23"] = ex.p23.to_string();
    c.witness["p24"] = ex.p24.to_string();
    c.witness["p34"] = ex.p34.to_string();
    c.witness["p0"] = p0.to_string();
    c.witness["p1"] = p1.to_string();
    Rng rng = make_rng(derive_seed(seed, 0x55));
    Json qs = Json::array();
    for (int trial = 0; trial < 3; ++trial) {
        ProjPoint q = random_point_in(ex.plane, field, rng, kSampleBound);
        if (rank(ScalarMatrix::from_rows({q.coords(), p0.coords(), p1.coords()}, field)) != 3) {
            --trial;
            continue;
        }
        qs.push_back(q.to_string());
        if (!evaluate(m.Q[0], q.span()).is_zero() || !evaluate(m.Q[1], q.span()).is_zero()) {
            fail(c, "q is not on Q_0 and Q_1");
            c.witness["q"] = q.to_string();
            return c;
        }
        LineParam l0{q, p0}, l1{q, p1};
        for (std::size_t k : {0, 2, 3, 4}) {
            if (!line_meets_flat(l0, m.flats[k])) {
                fail(c, "line q p0 misses flat " + std::to_string(k));
                return c;
            }
        }
        for (std::size_t k : {1, 2, 3, 4}) {
            if (!line_meets_flat(l1, m.flats[k])) {
                fail(c, "line q p1 misses flat " + std::to_string(k));
                return c;
            }
        }
        TransversalResult t = transversal_through(q, m.flats);
        if (t.kind != TransversalResult::Kind::None) {
            fail(c, std::string("transversal through q to all five flats: ") + transversal_kind_name(t.kind));
            c.witness["q"] = q.to_string();
            return c;
        }
    }
    c.witness["q"] = qs;
    c.witness["transversal_to_all"] = "none";
    return c;
}

CheckResult verify_pencil(std::span<const Flat> flats, std::uint64_t seed) {
    CheckResult c = make_check("pencil");
    if (flats.size() != 5) return skipped(c.name, "defined for n = 4");
    PencilExample ex = pencil_plane(flats);
    const FieldCtx field = flats.front().field();
    Rng rng = make_rng(derive_seed(seed, 0x9e));
    std::vector<Flat> three{flats[2], flats[3], flats[4]};
    ProjPoint p = random_point_in(ex.plane, field, rng, kSampleBound);
    // The plane contains the three pairwise points; a general point avoids the flats.
    while (std::any_of(three.begin(), three.end(), [&](const Flat& f) { return f.contains(p.span()); }))
        p = random_point_in(ex.plane, field, rng, kSampleBound);
    TransversalResult t = transversal_through(p, three);
    c.witness["point"] = p.to_string();
    c.witness["nullity"] = t.nullity;
    c.witness["kind"] = transversal_kind_name(t.kind);
    if (t.kind != TransversalResult::Kind::Family || t.family_dim != 2) {
        fail(c, "expected a pencil of transversals");
        return c;
    }
    c.witness["family_dim"] = t.family_dim;
    ProjPoint g = random_point(5, field, rng, kSampleBound);
    TransversalResult tg = transversal_through(g, three);
    c.witness["control_kind"] = transversal_kind_name(tg.kind);
    if (tg.kind != TransversalResult::Kind::Unique) fail(c, "a general point should have a unique transversal");
    return c;
}

CheckResult verify_transversal_geometry(std::span<const Flat> flats, std::size_t samples, std::uint64_t seed) {
    CheckResult c = make_check("transversal_geometry");
    const std::size_t nv = flats.size();
    const FieldCtx field = flats.front().field();
    Rng rng = make_rng(derive_seed(seed, 0x61));
    std::size_t unique = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        std::size_t a = s % nv, b = (s / nv + a + 1) % nv;
        if (a == b) b = (b + 1) % nv;
        ProjPoint p = random_point(nv, field, rng, kSampleBound);
        auto subset = flats_except(flats, a, b);
        TransversalResult t = transversal_through(p, subset);
        if (t.nullity != 2 || !t.distinct_meetings) {
            fail(c, "sample without a unique transversal at distinct points");
            c.witness["point"] = p.to_string();
            c.witness["omitted"] = Json::array({a, b});
            c.witness["nullity"] = t.nullity;
            return c;
        }
        ++unique;
    }
    ProjPoint p = random_point(nv, field, rng, kSampleBound);
    TransversalResult all = transversal_through(p, flats);
    c.witness["unique"] = unique;
    c.witness["all_flats_kind"] = transversal_kind_name(all.kind);
    if (nv >= 4 && all.kind != TransversalResult::Kind::None) fail(c, "a general point lies on a transversal to all flats");
    return c;
}

CheckResult verify_class_matrix(std::size_t n) {
    CheckResult c = make_check("class_matrix");
    IntMatrix mm = class_matrix(n);
    IntMatrix sq = int_matrix_mul(mm, mm);
    Json first = Json::array();
    for (std::size_t j = 0; j < mm.size(); ++j) first.push_back(mm.at(0, j));
    c.witness["basis"] = "H, Pi_0, ..., Pi_n";
    c.witness["first_row"] = first;
    c.witness["size"] = mm.size();
    // The truncation to n+1 classes is idempotent rather than an involution.
    IntMatrix small = class_matrix(n, n + 1);
    IntMatrix small_sq = int_matrix_mul(small, small);
    c.witness["truncated_square_is_identity"] = small_sq == IntMatrix::identity(n + 1);
    c.witness["truncated_square_is_itself"] = small_sq == small;
    if (sq != IntMatrix::identity(mm.size())) fail(c, "M_n squared is not the identity");
    return c;
}

CheckResult verify_fibers(const VeneroniMap& m, const InverseData& inv, std::uint64_t seed) {
    CheckResult c = make_check("fibers");
    const FieldCtx field = m.xring->field();
    Rng rng = make_rng(derive_seed(seed, 0xf1));
    std::size_t points = 0;
    for (std::size_t i = 0; i <= m.n; ++i) {
        std::size_t j = (i + 1) % (m.n + 1);
        ProjPoint p = random_point_in(flat_subspace(m.flats[j]), field, rng, kSampleBound);
        TransversalResult tp = transversal_through(p, flats_except(m.flats, i, j));
        if (tp.kind != TransversalResult::Kind::Unique) {
            fail(c, "no unique transversal through a point of flat " + std::to_string(j));
            return c;
        }
        // q on t_p, which meets every flat except Pi_i.
        std::optional<ProjPoint> q;
        for (int attempt = 0; attempt < 20 && !q; ++attempt) {
            ProjPoint cand(line_point(*tp.line, random_nonzero(field, rng, kSampleBound),
                                      random_nonzero(field, rng, kSampleBound)));
            if (!in_base_locus(m.components, cand.span())) q = cand;
        }
        if (!q) {
            fail(c, "every sampled point of the transversal is a base point");
            return c;
        }
        if (!evaluate(m.Q[i], q->span()).is_zero()) {
            fail(c, "sampled point is not on Q_" + std::to_string(i));
            c.witness["q"] = q->to_string();
            return c;
        }
        ProjPoint y = apply_map(m.components, *q);
        if (!y[i].is_zero() || !inv.g[i].evaluate(y.span()).is_zero()) {
            fail(c, "image of q is not on dual flat " + std::to_string(i));
            c.witness["q"] = q->to_string();
            c.witness["image"] = y.to_string();
            return c;
        }
        std::vector<Flat> rest;
        for (std::size_t k = 0; k <= m.n; ++k) {
            if (k != i) rest.push_back(m.flats[k]);
        }
        TransversalResult tq = transversal_through(*q, rest);
        if (tq.kind != TransversalResult::Kind::Unique) {
            fail(c, std::string("transversal through q is ") + transversal_kind_name(tq.kind));
            c.witness["q"] = q->to_string();
            return c;
        }
        std::size_t same = 0;
        for (int attempt = 0; attempt < 10 && same < 3; ++attempt) {
            ProjPoint r(line_point(*tq.line, random_nonzero(field, rng, kSampleBound),
                                   random_nonzero(field, rng, kSampleBound)));
            if (in_base_locus(m.components, r.span())) continue;
            if (apply_map(m.components, r) != y) {
                fail(c, "points of t_q have different images");
                c.witness["q"] = q->to_string();
                c.witness["r"] = r.to_string();
                return c;
            }
            ++same;
        }
        if (same == 0) {
            fail(c, "no point of t_q off the base locus");
            return c;
        }
        points += same;
    }
    c.witness["hypersurfaces"] = m.n + 1;
    c.witness["fiber_points_checked"] = points;
    return c;
}

}  // namespace veneroni
