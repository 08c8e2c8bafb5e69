#include "veneroni/veneroni.h"

#include <algorithm>
#include <chrono>
#include <cstring>

#include "veneroni/io.hpp"

using namespace veneroni;

struct vn_flats {
    std::vector<Flat> flats;
    InstanceMeta meta;
};

struct vn_map {
    VeneroniMap map;
    InverseData inv;
    InstanceMeta meta;
};

struct vn_report {
    VerificationReport report;
};

namespace {

thread_local std::string g_last_error;

vn_status status_of(ErrorCode c) {
    switch (c) {
        case ErrorCode::Parse: return VN_ERR_PARSE;
        case ErrorCode::Genericity: return VN_ERR_GENERICITY;
        case ErrorCode::Construction:
        case ErrorCode::BaseLocus:
        case ErrorCode::Inconsistent: return VN_ERR_CONSTRUCTION;
        case ErrorCode::NotDivisible:
        case ErrorCode::DivisionByZero: return VN_ERR_DIVISION;
        case ErrorCode::Limit: return VN_ERR_LIMIT;
        case ErrorCode::Internal: return VN_ERR_INTERNAL;
        default: return VN_ERR_INVALID_ARGUMENT;
    }
}

template <class F>
vn_status guarded(F&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const Json::exception& e) {
        g_last_error = e.what();
        return VN_ERR_PARSE;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return VN_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return VN_ERR_INTERNAL;
    }
}

vn_status invalid(const char* msg) {
    g_last_error = msg;
    return VN_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

VerifyOptions to_options(const vn_verify_options* o) {
    vn_verify_options d;
    vn_verify_options_init(&d);
    if (!o) o = &d;
    VerifyOptions v;
    v.level = o->level == VN_LEVEL_FAST ? Level::Fast : Level::Full;
    v.samples = o->samples;
    v.seed = o->seed;
    v.sample_field = o->sample_field ? FieldCtx::parse(o->sample_field, true) : FieldCtx::rationals();
    v.force_symbolic = o->force_symbolic != 0;
    v.composition_points = o->composition_points;
    v.timing = o->timing != 0;
    v.strategy = o->strategy == VN_DET_BAREISS ? DetStrategy::Bareiss : DetStrategy::MinorDp;
    return v;
}

// Instance header first, then the verifier's own fields.
void stamp(VerificationReport& r, std::size_t n, const FieldCtx& field, const InstanceMeta& meta) {
    Json head;
    head["n"] = n;
    head["seed"] = meta.seed ? Json(*meta.seed) : Json(nullptr);
    head["field"] = field.to_string();
    head["tool_version"] = kToolVersion;
    for (auto& [k, v] : r.instance.items()) {
        if (!head.contains(k)) head[k] = v;
    }
    r.instance = std::move(head);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

}  // namespace

extern "C" {

const char* vn_version(void) { return kToolVersion; }

const char* vn_status_name(vn_status status) {
    switch (status) {
        case VN_OK: return "ok";
        case VN_ERR_INVALID_ARGUMENT: return "invalid argument";
        case VN_ERR_PARSE: return "parse error";
        case VN_ERR_GENERICITY: return "genericity failure";
        case VN_ERR_CONSTRUCTION: return "construction failure";
        case VN_ERR_DIVISION: return "division failure";
        case VN_ERR_LIMIT: return "size limit exceeded";
        case VN_ERR_VERIFICATION_FAILED: return "verification failed";
        case VN_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* vn_last_error(void) { return g_last_error.c_str(); }

void vn_string_free(char* s) { std::free(s); }

vn_status vn_flats_generate(unsigned n, uint64_t seed, long long bound, const char* field, vn_flats** out) {
    if (!out) return invalid("null output pointer");
    *out = nullptr;
    if (bound < 1) return invalid("bound must be at least 1");
    return guarded([&] {
        FieldCtx f = field ? FieldCtx::parse(field, true) : FieldCtx::rationals();
        GeneratedFlats g = random_general_flats(n, seed, bound, f);
        *out = new vn_flats{std::move(g.flats), InstanceMeta{seed, bound, g.retries}};
        return VN_OK;
    });
}

vn_status vn_flats_from_json(const char* text, vn_flats** out) {
    if (!out || !text) return invalid("null argument");
    *out = nullptr;
    return guarded([&] {
        LoadedFlats lf = flats_from_json(parse_json_text(text));
        *out = new vn_flats{std::move(lf.flats), lf.meta};
        return VN_OK;
    });
}

vn_status vn_flats_to_json(const vn_flats* flats, char** out) {
    if (!flats || !out) return invalid("null argument");
    return guarded([&] {
        *out = copy_string(dump_json(flats_to_json(flats->flats, flats->meta)));
        return VN_OK;
    });
}

unsigned vn_flats_n(const vn_flats* flats) { return flats ? static_cast<unsigned>(flats->flats.size() - 1) : 0; }

size_t vn_flats_retries(const vn_flats* flats) { return flats && flats->meta.retries ? *flats->meta.retries : 0; }

void vn_flats_free(vn_flats* flats) { delete flats; }

vn_status vn_map_build(const vn_flats* flats, vn_det_strategy strategy, vn_map** out) {
    if (!flats || !out) return invalid("null argument");
    *out = nullptr;
    return guarded([&] {
        DetStrategy s = strategy == VN_DET_BAREISS ? DetStrategy::Bareiss : DetStrategy::MinorDp;
        auto m = std::make_unique<vn_map>();
        m->map = build_forward_map(flats->flats, BuildOptions{s});
        m->inv = solve_b_matrix(m->map);
        build_inverse_map(m->map, m->inv, s);
        m->meta = flats->meta;
        *out = m.release();
        return VN_OK;
    });
}

vn_status vn_map_from_json(const char* text, vn_map** out) {
    if (!out || !text) return invalid("null argument");
    *out = nullptr;
    return guarded([&] {
        LoadedMap lm = map_from_json(parse_json_text(text));
        *out = new vn_map{std::move(lm.map), std::move(lm.inv), lm.meta};
        return VN_OK;
    });
}

vn_status vn_map_to_json(const vn_map* map, char** out) {
    if (!map || !out) return invalid("null argument");
    return guarded([&] {
        *out = copy_string(dump_json(map_to_json(map->map, map->inv, map->meta)));
        return VN_OK;
    });
}

void vn_map_free(vn_map* map) { delete map; }

void vn_verify_options_init(vn_verify_options* opts) {
    if (!opts) return;
    opts->level = VN_LEVEL_FULL;
    opts->samples = 20;
    opts->seed = 1;
    opts->sample_field = nullptr;
    opts->force_symbolic = 0;
    opts->composition_points = 50;
    opts->timing = 0;
    opts->strategy = VN_DET_MINOR_DP;
}

vn_status vn_verify_flats(const vn_flats* flats, const vn_verify_options* opts, vn_report** out) {
    if (!flats || !out) return invalid("null argument");
    *out = nullptr;
    return guarded([&] {
        auto r = std::make_unique<vn_report>();
        r->report = verify_flats(flats->flats, to_options(opts));
        stamp(r->report, flats->flats.size() - 1, flats->flats.front().field(), flats->meta);
        *out = r.release();
        return VN_OK;
    });
}

vn_status vn_verify_map(const vn_map* map, const vn_verify_options* opts, vn_report** out) {
    if (!map || !out) return invalid("null argument");
    *out = nullptr;
    return guarded([&] {
        auto r = std::make_unique<vn_report>();
        r->report = verify_map(map->map, map->inv, to_options(opts));
        stamp(r->report, map->map.n, map->map.xring->field(), map->meta);
        *out = r.release();
        return VN_OK;
    });
}

int vn_report_passed(const vn_report* report) { return report && report->report.passed() ? 1 : 0; }

vn_status vn_report_to_json(const vn_report* report, char** out) {
    if (!report || !out) return invalid("null argument");
    return guarded([&] {
        *out = copy_string(dump_json(report_to_json(report->report)));
        return VN_OK;
    });
}

void vn_report_free(vn_report* report) { delete report; }

vn_status vn_transversal(const vn_flats* flats, const char* point, const size_t* omit, size_t omit_count,
                         char** out_json) {
    if (!flats || !point || !out_json || (omit_count && !omit)) return invalid("null argument");
    return guarded([&] {
        const std::size_t nv = flats->flats.size();
        ProjPoint p = ProjPoint::parse(point, flats->flats.front().field());
        if (p.size() != nv) {
            throw Error(ErrorCode::Parse, "point has " + std::to_string(p.size()) + " coordinates, expected " +
                                              std::to_string(nv));
        }
        std::vector<bool> drop(nv, false);
        for (std::size_t k = 0; k < omit_count; ++k) {
            if (omit[k] >= nv) throw Error(ErrorCode::InvalidArgument, "omitted flat index out of range");
            drop[omit[k]] = true;
        }
        std::vector<Flat> subset;
        Json used = Json::array();
        for (std::size_t k = 0; k < nv; ++k) {
            if (!drop[k]) {
                subset.push_back(flats->flats[k]);
                used.push_back(k);
            }
        }
        Json j;
        j["point"] = point_to_json(p);
        j["flats"] = used;
        j.update(transversal_to_json(transversal_through(p, subset)));
        *out_json = copy_string(dump_json(j));
        return VN_OK;
    });
}

vn_status vn_bench(unsigned n_min, unsigned n_max, unsigned reps, uint64_t seed, unsigned strategies, int force,
                   char** out_json) {
    if (!out_json) return invalid("null argument");
    if (n_min < 2 || n_max < n_min || n_max + 1 > kMaxVars) return invalid("bad n range");
    if (reps == 0) return invalid("reps must be positive");
    if (strategies == 0 || strategies > 3) return invalid("bad strategy mask");
    return guarded([&] {
        const bool dp = strategies & (1u << VN_DET_MINOR_DP), ba = strategies & (1u << VN_DET_BAREISS);
        if (!force && ((dp && n_max > 6) || (ba && n_max > 5))) {
            throw Error(ErrorCode::Limit, "n above the default cap (6 for minor_dp, 5 for bareiss) needs force");
        }
        Json rows = Json::array();
        for (unsigned n = n_min; n <= n_max; ++n) {
            GeneratedFlats g = random_general_flats(n, seed);
            PolyMatrix b = build_matrix_B(g.flats);
            std::optional<std::vector<Poly>> reference;
            const std::size_t first_row = rows.size();
            for (DetStrategy s : {DetStrategy::MinorDp, DetStrategy::Bareiss}) {
                if ((s == DetStrategy::MinorDp && !dp) || (s == DetStrategy::Bareiss && !ba)) continue;
                std::vector<double> times;
                std::vector<Poly> dets;
                for (unsigned r = 0; r < reps; ++r) {
                    auto t0 = std::chrono::steady_clock::now();
                    dets.clear();
                    for (std::size_t i = 0; i <= n; ++i) dets.push_back(det_poly_matrix(b.principal_minor(i), s));
                    times.push_back(
                        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
                }
                if (reference && *reference != dets) {
                    throw Error(ErrorCode::Internal, "strategies disagree at n = " + std::to_string(n));
                }
                if (!reference) reference = dets;
                Json terms = Json::array();
                std::size_t peak = 0;
                for (const auto& d : dets) {
                    terms.push_back(d.num_terms());
                    peak = std::max(peak, d.num_terms());
                }
                Json row;
                row["n"] = n;
                row["strategy"] = det_strategy_name(s);
                row["median_ms"] = median(times);
                row["reps"] = reps;
                row["det_terms"] = terms;
                row["peak_det_terms"] = peak;
                rows.push_back(row);
            }
            if (n <= 4 || force) {
                VeneroniMap m = build_forward_map(g.flats);
                InverseData inv = solve_b_matrix(m);
                build_inverse_map(m, inv);
                Substitution h(m.yring, m.components);
                std::size_t peak = 0;
                for (const auto& d : inv.inverse_components) peak = std::max(peak, h.apply(d).num_terms());
                for (std::size_t r = first_row; r < rows.size(); ++r) rows[r]["peak_composition_terms"] = peak;
            }
        }
        Json j;
        j["seed"] = seed;
        j["strategies_agree"] = true;
        j["rows"] = rows;
        *out_json = copy_string(dump_json(j));
        return VN_OK;
    });
}

vn_status vn_demo(unsigned n, uint64_t seed, char** out_json) {
    if (!out_json) return invalid("null argument");
    if (n != 3 && n != 4) return invalid("demos exist for n = 3 and n = 4");
    return guarded([&] {
        GeneratedFlats g = random_general_flats(n, seed);
        VeneroniMap m = build_forward_map(g.flats);
        VerificationReport rep;
        if (n == 3) {
            N3Count c = count_transversals_n3(m.flats, m.Q, seed);
            CheckResult r;
            r.name = "n3_transversal_count";
            r.witness["phi"] = Json{{"A", c.A.to_string()}, {"B", c.B.to_string()}, {"C", c.C.to_string()}};
            r.witness["degree"] = c.degree;
            r.witness["discriminant"] = c.discriminant.to_string();
            r.witness["discriminant_square"] = c.discriminant_square;
            r.witness["count"] = c.degree == 2 && c.discriminant_nonzero ? 2 : 0;
            r.witness["lines_meet_all_flats"] = c.lines_meet_all;
            r.witness["lines_on_every_Q"] = c.lines_on_Q;
            Json lines = Json::array();
            for (const auto& l : c.rational_lines) lines.push_back(Json::array({point_to_json(l.base), point_to_json(l.dir)}));
            r.witness["rational_lines"] = lines;
            if (c.degree != 2 || !c.discriminant_nonzero || !c.lines_meet_all || !c.lines_on_Q) {
                r.status = CheckResult::Status::Fail;
            }
            rep.checks.push_back(std::move(r));
        } else {
            rep.checks.push_back(quadric_pair_example(m, seed));
            rep.checks.push_back(verify_pencil(m.flats, seed));
        }
        stamp(rep, n, m.xring->field(), InstanceMeta{seed, 9, g.retries});
        *out_json = copy_string(dump_json(report_to_json(rep)));
        return VN_OK;
    });
}

}  // extern "C"
