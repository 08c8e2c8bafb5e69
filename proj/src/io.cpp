#include "veneroni/io.hpp"

namespace veneroni {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::Parse, where + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) schema(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema(where, std::string("missing \"") + key + "\"");
    return *it;
}

const Json& array_member(const Json& j, const char* key, const std::string& where, std::size_t size) {
    const Json& a = member(j, key, where);
    if (!a.is_array()) schema(where + "." + key, "expected an array");
    if (size != static_cast<std::size_t>(-1) && a.size() != size) {
        schema(where + "." + key, "expected " + std::to_string(size) + " entries, found " + std::to_string(a.size()));
    }
    return a;
}

constexpr std::size_t kAny = static_cast<std::size_t>(-1);

ScalarVector scalars_from_json(const Json& a, const FieldCtx& field, const std::string& where) {
    ScalarVector v;
    for (std::size_t i = 0; i < a.size(); ++i) {
        try {
            v.push_back(scalar_from_json(a[i], field));
        } catch (const Error& e) {
            schema(where + "[" + std::to_string(i) + "]", e.what());
        }
    }
    return v;
}

Json scalars_to_json(std::span<const Scalar> v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(scalar_to_json(s));
    return a;
}

// A linear form given as coefficients or as polynomial text.
LinearForm form_from_json(const Json& j, const RingPtr& ring, const std::string& where) {
    const std::size_t nv = ring->nvars();
    ScalarVector c;
    if (j.is_array()) {
        if (j.size() != nv) schema(where, "expected " + std::to_string(nv) + " coefficients");
        c = scalars_from_json(j, ring->field(), where);
    } else if (j.is_string()) {
        Poly p(ring);
        try {
            p = parse_poly(j.get<std::string>(), ring);
        } catch (const Error& e) {
            schema(where, e.what());
        }
        if (p.is_zero() || p.degree() != 1 || !p.is_homogeneous()) schema(where, "expected a nonzero linear form");
        return LinearForm::from_poly(p);
    } else {
        schema(where, "expected a coefficient array or a polynomial string");
    }
    if (std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_zero(); })) {
        schema(where, "linear form is zero");
    }
    return LinearForm(std::move(c));
}

void meta_to_json(Json& j, const InstanceMeta& meta) {
    j["seed"] = meta.seed ? Json(*meta.seed) : Json(nullptr);
    if (meta.bound) j["bound"] = *meta.bound;
    if (meta.retries) j["retries"] = *meta.retries;
}

InstanceMeta meta_from_json(const Json& j) {
    InstanceMeta meta;
    if (auto it = j.find("seed"); it != j.end() && !it->is_null()) {
        if (!it->is_number_unsigned()) schema("seed", "expected a nonnegative integer");
        meta.seed = it->get<std::uint64_t>();
    }
    if (auto it = j.find("bound"); it != j.end() && it->is_number_integer()) meta.bound = it->get<long long>();
    if (auto it = j.find("retries"); it != j.end() && it->is_number_unsigned()) meta.retries = it->get<std::size_t>();
    return meta;
}

std::size_t read_n(const Json& j) {
    const Json& n = member(j, "n", "root");
    if (!n.is_number_unsigned() || n.get<std::size_t>() < 2 || n.get<std::size_t>() + 1 > kMaxVars) {
        schema("n", "expected an integer between 2 and " + std::to_string(kMaxVars - 1));
    }
    return n.get<std::size_t>();
}

FieldCtx read_field(const Json& j) {
    auto it = j.find("field");
    if (it == j.end()) return FieldCtx::rationals();
    if (!it->is_string()) schema("field", "expected a string");
    try {
        return FieldCtx::parse(it->get<std::string>(), true);
    } catch (const Error& e) {
        schema("field", e.what());
    }
}

Json flat_to_json(const Flat& f) {
    Json o;
    o["j"] = f.index;
    o["f2"] = scalars_to_json(f.form2.coeffs());
    return o;
}

std::vector<Flat> canonical_flats_from_json(const Json& a, std::size_t nv, const FieldCtx& field,
                                            const std::string& where) {
    std::vector<Flat> out;
    for (std::size_t j = 0; j < nv; ++j) {
        std::string w = where + "[" + std::to_string(j) + "]";
        const Json& o = a[j];
        if (auto it = o.find("j"); it != o.end() && (!it->is_number_unsigned() || it->get<std::size_t>() != j)) {
            schema(w + ".j", "flats must be listed in order 0..n");
        }
        const Json& f2 = array_member(o, "f2", w, nv);
        ScalarVector c = scalars_from_json(f2, field, w + ".f2");
        if (!c[j].is_zero()) schema(w + ".f2", "canonical flats need a_{j,j} = 0");
        if (std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_zero(); })) schema(w + ".f2", "zero form");
        out.push_back(Flat::canonical(j, std::move(c)));
    }
    return out;
}

}  // namespace

Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        std::string msg = e.what();
        throw ParseError(e.byte > 0 ? e.byte - 1 : 0, "invalid JSON (" + msg + ")");
    }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json scalar_to_json(const Scalar& s) { return s.to_string(); }

Scalar scalar_from_json(const Json& j, const FieldCtx& field) {
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), field);
    if (j.is_number_integer()) return Scalar::from_int(j.get<long long>(), field);
    throw Error(ErrorCode::Parse, "expected a scalar string or integer");
}

Json poly_to_json(const Poly& p) {
    Json o;
    o["degree"] = p.degree();
    Json terms = Json::array();
    const std::size_t nv = p.ring()->nvars();
    for (const auto& t : p.terms()) {
        Json e = Json::array();
        for (std::size_t i = 0; i < nv; ++i) e.push_back(t.m.exponent(i));
        terms.push_back(Json{{"c", scalar_to_json(t.c)}, {"e", e}});
    }
    o["terms"] = terms;
    return o;
}

Poly poly_from_json(const Json& j, const RingPtr& ring) {
    const Json& terms = array_member(j, "terms", "polynomial", kAny);
    const std::size_t nv = ring->nvars();
    std::vector<Term> out;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        std::string w = "terms[" + std::to_string(k) + "]";
        const Json& e = array_member(terms[k], "e", w, nv);
        std::vector<unsigned> ex;
        unsigned total = 0;
        for (const auto& x : e) {
            if (!x.is_number_unsigned() || x.get<unsigned>() > kMaxDegree) schema(w + ".e", "bad exponent");
            ex.push_back(x.get<unsigned>());
            total += ex.back();
        }
        if (total > kMaxDegree) schema(w + ".e", "degree too large");
        Scalar c;
        try {
            c = scalar_from_json(member(terms[k], "c", w), ring->field());
        } catch (const Error& err) {
            schema(w + ".c", err.what());
        }
        out.push_back({Monomial::from_exponents(ex), c});
    }
    Poly p = Poly::from_terms(ring, std::move(out));
    if (p.num_terms() != terms.size()) schema("polynomial", "repeated or zero terms");
    if (auto it = j.find("degree"); it != j.end()) {
        if (!it->is_number_integer() || it->get<int>() != p.degree()) schema("polynomial", "degree field disagrees");
    }
    return p;
}

Json point_to_json(const ProjPoint& p) { return scalars_to_json(p.coords()); }

Json transversal_to_json(const TransversalResult& t) {
    Json o;
    o["kind"] = transversal_kind_name(t.kind);
    o["nullity"] = t.nullity;
    if (t.kind == TransversalResult::Kind::Unique) {
        o["line"] = Json::array({point_to_json(t.line->base), point_to_json(t.line->dir)});
        Json meets = Json::array();
        for (const auto& mp : t.meetings) {
            Json m;
            m["flat"] = mp.flat;
            m["param"] = mp.param ? point_to_json(*mp.param) : Json(nullptr);
            m["point"] = mp.point ? point_to_json(*mp.point) : Json(nullptr);
            meets.push_back(m);
        }
        o["meetings"] = meets;
        o["distinct_meetings"] = t.distinct_meetings;
    } else if (t.kind == TransversalResult::Kind::Family) {
        o["family_dim"] = t.family_dim;
        Json b = Json::array();
        for (const auto& p : t.basis) b.push_back(point_to_json(p));
        o["basis"] = b;
    }
    return o;
}

Json flats_to_json(std::span<const Flat> flats, const InstanceMeta& meta) {
    Json j;
    j["kind"] = "flats";
    j["n"] = flats.size() - 1;
    meta_to_json(j, meta);
    j["field"] = flats.front().field().to_string();
    j["tool_version"] = kToolVersion;
    Json a = Json::array();
    for (const auto& f : flats) a.push_back(flat_to_json(f));
    j["flats"] = a;
    return j;
}

LoadedFlats flats_from_json(const Json& j) {
    if (!j.is_object()) schema("root", "expected an object");
    LoadedFlats out;
    const std::size_t n = read_n(j);
    const std::size_t nv = n + 1;
    const FieldCtx field = read_field(j);
    out.meta = meta_from_json(j);
    const Json& a = array_member(j, "flats", "root", nv);
    bool raw = std::any_of(a.begin(), a.end(), [](const Json& o) { return o.is_object() && o.contains("f1"); });
    bool text = std::any_of(a.begin(), a.end(), [](const Json& o) { return o.is_object() && o.contains("f2") && o["f2"].is_string(); });
    if (!raw && !text) {
        out.flats = canonical_flats_from_json(a, nv, field, "flats");
        return out;
    }
    RingPtr ring = PolyRing::make(nv, field, "x");
    std::vector<std::pair<LinearForm, LinearForm>> pairs;
    for (std::size_t k = 0; k < nv; ++k) {
        std::string w = "flats[" + std::to_string(k) + "]";
        LinearForm f1 = raw ? form_from_json(member(a[k], "f1", w), ring, w + ".f1") : LinearForm::variable(nv, k, field);
        LinearForm f2 = form_from_json(member(a[k], "f2", w), ring, w + ".f2");
        pairs.emplace_back(std::move(f1), std::move(f2));
    }
    NormalizedFlats nf = normalize_flats(pairs);
    out.flats = std::move(nf.flats);
    if (nf.change != ScalarMatrix::identity(nv, field)) out.change = std::move(nf.change);
    return out;
}

Json map_to_json(const VeneroniMap& m, const InverseData& inv, const InstanceMeta& meta) {
    Json j;
    j["kind"] = "map";
    j["n"] = m.n;
    meta_to_json(j, meta);
    j["field"] = m.xring->field().to_string();
    j["tool_version"] = kToolVersion;
    Json flats = Json::array();
    for (const auto& f : m.flats) flats.push_back(flat_to_json(f));
    j["flats"] = flats;
    auto polys = [](const std::vector<Poly>& ps) {
        Json a = Json::array();
        for (const auto& p : ps) a.push_back(poly_to_json(p));
        return a;
    };
    j["Q"] = polys(m.Q);
    j["components"] = polys(m.components);
    Json b = Json::array();
    for (std::size_t i = 0; i < inv.b.rows(); ++i) b.push_back(scalars_to_json(inv.b.row(i)));
    j["b"] = b;
    Json g = Json::array();
    for (const auto& f : inv.g) g.push_back(scalars_to_json(f.coeffs()));
    j["g"] = g;
    j["inverse_components"] = polys(inv.inverse_components);
    Json duals = Json::array();
    for (const auto& f : inv.dual_flats) duals.push_back(flat_to_json(f));
    j["dual_flats"] = duals;
    return j;
}

LoadedMap map_from_json(const Json& j) {
    if (!j.is_object()) schema("root", "expected an object");
    LoadedMap out;
    const std::size_t n = read_n(j);
    const std::size_t nv = n + 1;
    const FieldCtx field = read_field(j);
    out.meta = meta_from_json(j);
    VeneroniMap& m = out.map;
    m.n = n;
    m.flats = canonical_flats_from_json(array_member(j, "flats", "root", nv), nv, field, "flats");
    m.xring = PolyRing::make(nv, field, "x");
    m.yring = target_ring(n, field);
    auto polys = [&](const char* key, const RingPtr& ring) {
        const Json& a = array_member(j, key, "root", nv);
        std::vector<Poly> ps;
        for (std::size_t i = 0; i < nv; ++i) {
            try {
                ps.push_back(poly_from_json(a[i], ring));
            } catch (const Error& e) {
                schema(std::string(key) + "[" + std::to_string(i) + "]", e.what());
            }
        }
        return ps;
    };
    m.Q = polys("Q", m.xring);
    m.components = polys("components", m.xring);
    InverseData& inv = out.inv;
    inv.b = ScalarMatrix(nv, nv, field);
    const Json& b = array_member(j, "b", "root", nv);
    for (std::size_t i = 0; i < nv; ++i) {
        std::string w = "b[" + std::to_string(i) + "]";
        if (!b[i].is_array() || b[i].size() != nv) schema(w, "expected " + std::to_string(nv) + " entries");
        ScalarVector row = scalars_from_json(b[i], field, w);
        for (std::size_t k = 0; k < nv; ++k) inv.b.at(i, k) = row[k];
    }
    const Json& g = array_member(j, "g", "root", nv);
    for (std::size_t i = 0; i < nv; ++i) {
        std::string w = "g[" + std::to_string(i) + "]";
        if (!g[i].is_array() || g[i].size() != nv) schema(w, "expected " + std::to_string(nv) + " entries");
        ScalarVector c = scalars_from_json(g[i], field, w);
        if (std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_zero(); })) schema(w, "zero form");
        inv.g.emplace_back(std::move(c));
    }
    inv.inverse_components = polys("inverse_components", m.yring);
    const Json& duals = array_member(j, "dual_flats", "root", nv);
    for (std::size_t i = 0; i < nv; ++i) {
        std::string w = "dual_flats[" + std::to_string(i) + "]";
        ScalarVector c = scalars_from_json(array_member(duals[i], "f2", w, nv), field, w + ".f2");
        if (std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_zero(); })) schema(w, "zero form");
        inv.dual_flats.push_back(Flat{i, LinearForm::variable(nv, i, field), LinearForm(std::move(c))});
    }
    return out;
}

Json report_to_json(const VerificationReport& r) {
    Json j;
    j["instance"] = r.instance;
    Json checks = Json::array();
    Json failed = Json::array(), skipped = Json::array();
    for (const auto& c : r.checks) {
        Json o;
        o["name"] = c.name;
        o["status"] = status_name(c.status);
        o["witness"] = c.witness;
        o["ms"] = c.ms ? Json(*c.ms) : Json(nullptr);
        checks.push_back(o);
        if (c.status == CheckResult::Status::Fail) failed.push_back(c.name);
        if (c.status == CheckResult::Status::Skipped) skipped.push_back(c.name);
    }
    j["checks"] = checks;
    j["summary"] = Json{{"passed", r.passed()}, {"total", r.checks.size()}, {"failed", failed}, {"skipped", skipped}};
    return j;
}

}  // namespace veneroni
