#include <chrono>
#include <functional>

#include "veneroni/veneroni.hpp"

namespace veneroni {

namespace {

using Clock = std::chrono::steady_clock;

class Runner {
   public:
    Runner(VerificationReport& rep, bool timing) : rep_(rep), timing_(timing) {}

    // Runs one check; a thrown Error becomes a failure with its message.
    void run(const std::string& name, const std::function<CheckResult()>& body) {
        auto t0 = Clock::now();
        CheckResult c;
        try {
            c = body();
        } catch (const Error& e) {
            c = CheckResult{};
            c.status = CheckResult::Status::Fail;
            c.witness["error"] = e.what();
            c.witness["code"] = error_code_name(e.code());
        }
        c.name = name;
        if (timing_) c.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        rep_.checks.push_back(std::move(c));
    }

   private:
    VerificationReport& rep_;
    bool timing_;
};

CheckResult determinantal(const VeneroniMap& m, const VerifyOptions& opts) {
    CheckResult c;
    auto fail = [&](const std::string& why) {
        c.status = CheckResult::Status::Fail;
        c.witness["reason"] = why;
        return c;
    };
    PolyMatrix b = build_matrix_B(m.flats, m.xring);
    const std::size_t nv = m.n + 1;
    Json degrees = Json::array();
    for (std::size_t i = 0; i < nv; ++i) {
        Poly det = det_poly_matrix(b.principal_minor(i), opts.strategy);
        Poly q(m.xring);
        try {
            q = exact_div_by_var(det, i);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotDivisible) throw;
            c.witness["index"] = i;
            return fail(e.what());
        }
        if (q != m.Q[i]) {
            c.witness["index"] = i;
            c.witness["recomputed"] = q.to_string();
            return fail("det(B_" + std::to_string(i) + ")/x_" + std::to_string(i) + " differs from the stored Q_" +
                        std::to_string(i));
        }
        if (m.components[i] != q.times_monomial(Monomial::var(i))) {
            c.witness["index"] = i;
            return fail("component " + std::to_string(i) + " is not x_i Q_i");
        }
        if (q.degree() != static_cast<int>(m.n) - 1) return fail("Q_" + std::to_string(i) + " has the wrong degree");
        for (std::size_t j = 0; j < nv; ++j) {
            if (j != i && !vanishes_on(q, m.flats[j])) {
                return fail("Q_" + std::to_string(i) + " does not vanish on flat " + std::to_string(j));
            }
        }
        for (std::size_t k = 0; k < nv; ++k) {
            if (q.coefficient(Monomial::var(k, static_cast<unsigned>(m.n - 1))).is_zero()) {
                return fail("Q_" + std::to_string(i) + " vanishes at vertex " + std::to_string(k));
            }
        }
        degrees.push_back(q.degree());
    }
    c.witness["degrees"] = degrees;
    Poly q0 = compute_Q_by_column_sum(m.flats, 0, 1, m.xring);
    c.witness["column_sum_cross_check"] = q0 == m.Q[0];
    if (q0 != m.Q[0]) return fail("column-sum route to Q_0 disagrees");
    return c;
}

CheckResult det_strategies(const VeneroniMap& m) {
    CheckResult c;
    PolyMatrix b = build_matrix_B(m.flats, m.xring);
    Json terms = Json::array();
    for (std::size_t i = 0; i <= m.n; ++i) {
        PolyMatrix bi = b.principal_minor(i);
        Poly d1 = det_poly_matrix(bi, DetStrategy::MinorDp);
        Poly d2 = det_poly_matrix(bi, DetStrategy::Bareiss);
        terms.push_back(d1.num_terms());
        if (d1 != d2) {
            c.status = CheckResult::Status::Fail;
            c.witness["reason"] = "minor_dp and bareiss disagree on det(B_" + std::to_string(i) + ")";
            return c;
        }
    }
    c.witness["det_terms"] = terms;
    return c;
}

CheckResult dimensions(const VeneroniMap& m) {
    CheckResult c;
    const unsigned n = static_cast<unsigned>(m.n);
    std::size_t dim = linear_system_dimension(m.flats, n);
    c.witness["dim_L"] = dim;
    c.witness["N"] = dim - 1;
    Json omitted = Json::array();
    bool ok = dim == m.n + 1;
    for (std::size_t i = 0; i <= m.n; ++i) {
        std::vector<std::size_t> subset;
        for (std::size_t j = 0; j <= m.n; ++j) {
            if (j != i) subset.push_back(j);
        }
        std::size_t d = linear_system_dimension(m.flats, n - 1, subset);
        omitted.push_back(d);
        ok = ok && d == 1;
    }
    c.witness["dim_degree_n_minus_1_omitting_each"] = omitted;
    if (!ok) {
        c.status = CheckResult::Status::Fail;
        c.witness["reason"] = "unexpected dimension";
    }
    return c;
}

CheckResult basis(const VeneroniMap& m) {
    CheckResult c;
    std::vector<Monomial> monos = monomials_of_degree(m.n + 1, static_cast<unsigned>(m.n));
    std::vector<ScalarVector> rows;
    for (const auto& comp : m.components) {
        ScalarVector r;
        for (auto mono : monos) r.push_back(comp.coefficient(mono));
        rows.push_back(std::move(r));
    }
    std::size_t rk = rank(ScalarMatrix::from_rows(rows, m.xring->field()));
    c.witness["rank"] = rk;
    bool in_L = true;
    for (const auto& comp : m.components) {
        for (const auto& f : m.flats) in_L = in_L && vanishes_on(comp, f);
    }
    c.witness["components_in_L"] = in_L;
    // Only x_i Q_i is nonzero at the vertex p_i.
    bool vertices = true;
    for (std::size_t i = 0; i <= m.n; ++i) {
        for (std::size_t j = 0; j <= m.n; ++j) {
            bool nz = !m.components[i].coefficient(Monomial::var(j, static_cast<unsigned>(m.n))).is_zero();
            vertices = vertices && nz == (i == j);
        }
    }
    c.witness["vertex_pattern"] = vertices;
    if (rk != m.n + 1 || !in_L || !vertices) {
        c.status = CheckResult::Status::Fail;
        c.witness["reason"] = "components are not a basis of L_n";
    }
    return c;
}

CheckResult b_laws(const VeneroniMap& m, const InverseData& inv) {
    CheckResult c;
    auto fail = [&](const std::string& why) {
        c.status = CheckResult::Status::Fail;
        c.witness["reason"] = why;
        return c;
    };
    const std::size_t nv = m.n + 1;
    if (inv.b.rows() != nv || inv.b.cols() != nv || inv.g.size() != nv) return fail("b-matrix has the wrong size");
    for (std::size_t i = 0; i < nv; ++i) {
        Poly residual = m.flats[i].form2.to_poly(m.xring) * m.Q[i];
        for (std::size_t j = 0; j < nv; ++j) residual -= m.components[j].scaled(inv.b.at(i, j));
        if (!residual.is_zero()) {
            c.witness["index"] = i;
            c.witness["residual_terms"] = residual.num_terms();
            return fail("f_" + std::to_string(i) + " Q_" + std::to_string(i) + " - sum_j b_ij x_j Q_j is nonzero");
        }
        for (std::size_t j = 0; j < nv; ++j) {
            if ((i == j) != inv.b.at(i, j).is_zero()) {
                return fail("b_{" + std::to_string(i) + "," + std::to_string(j) + "} breaks the zero pattern");
            }
        }
        if (inv.g[i].coeffs() != inv.b.row(i)) return fail("g_" + std::to_string(i) + " is not row i of b");
    }
    if (!inv.dual_flats.empty()) {
        auto expected = dual_flats_of(inv.b);
        for (std::size_t i = 0; i < nv; ++i) {
            if (inv.dual_flats[i].form1 != expected[i].form1 || inv.dual_flats[i].form2 != expected[i].form2) {
                return fail("dual flat " + std::to_string(i) + " is not (y_i, g_i)");
            }
        }
    }
    c.witness["residuals_zero"] = nv;
    return c;
}

CheckResult inverse_components(const VeneroniMap& m, const InverseData& inv, const VerifyOptions& opts) {
    CheckResult c;
    auto fail = [&](const std::string& why) {
        c.status = CheckResult::Status::Fail;
        c.witness["reason"] = why;
        return c;
    };
    PolyMatrix cm = build_matrix_C(m, inv.b);
    auto duals = dual_flats_of(inv.b);
    if (inv.inverse_components.size() != m.n + 1) return fail("wrong number of inverse components");
    for (std::size_t i = 0; i <= m.n; ++i) {
        Poly d = det_poly_matrix(cm.principal_minor(i), opts.strategy);
        if (d != inv.inverse_components[i]) {
            c.witness["index"] = i;
            return fail("det(C_" + std::to_string(i) + ") differs from the stored inverse component");
        }
        if (d.degree() != static_cast<int>(m.n)) return fail("det(C_i) does not have degree n");
        for (std::size_t j = 0; j <= m.n; ++j) {
            if (j != i && !vanishes_on(d, duals[j])) {
                return fail("det(C_" + std::to_string(i) + ") does not vanish on dual flat " + std::to_string(j));
            }
        }
    }
    c.witness["degree"] = m.n;
    return c;
}

CheckResult n3_count(const VeneroniMap& m, std::uint64_t seed) {
    CheckResult c;
    N3Count r = count_transversals_n3(m.flats, m.Q, seed);
    c.witness["degree"] = r.degree;
    c.witness["A"] = r.A.to_string();
    c.witness["B"] = r.B.to_string();
    c.witness["C"] = r.C.to_string();
    c.witness["discriminant"] = r.discriminant.to_string();
    c.witness["discriminant_square"] = r.discriminant_square;
    c.witness["count"] = r.degree == 2 && r.discriminant_nonzero ? 2 : 0;
    c.witness["lines_meet_all_flats"] = r.lines_meet_all;
    c.witness["Q0_degree"] = m.Q[0].degree();
    if (r.degree != 2 || !r.discriminant_nonzero || !r.lines_meet_all || m.Q[0].degree() != 2) {
        c.status = CheckResult::Status::Fail;
        c.witness["reason"] = "expected two distinct transversals to the four lines";
    }
    return c;
}

}  // namespace

VerificationReport verify_map(const VeneroniMap& m, const InverseData& inv, const VerifyOptions& opts) {
    VerificationReport rep;
    rep.instance["n"] = m.n;
    rep.instance["field"] = m.xring->field().to_string();
    rep.instance["sample_field"] = opts.sample_field.to_string();
    rep.instance["level"] = opts.level == Level::Full ? "full" : "fast";
    rep.instance["samples"] = opts.samples;
    rep.instance["check_seed"] = opts.seed;
    Runner run(rep, opts.timing);
    const bool full = opts.level == Level::Full;

    run.run("genericity", [&] {
        GenericityOptions g;
        g.check_divisibility = false;
        GenericityReport gr = genericity_check(m.flats, g);
        CheckResult c;
        c.witness["coefficients"] = gr.coefficients_ok;
        c.witness["intersections"] = gr.intersections_ok;
        c.witness["transversals"] = gr.transversals_ok;
        if (!gr.passed()) {
            c.status = CheckResult::Status::Fail;
            c.witness["reason"] = gr.first_failure();
        }
        return c;
    });
    run.run("determinantal", [&] { return determinantal(m, opts); });
    run.run("det_strategies", [&] { return det_strategies(m); });
    run.run("linear_system_dimension", [&] { return dimensions(m); });
    run.run("basis", [&] { return basis(m); });
    run.run("b_matrix", [&] { return b_laws(m, inv); });
    run.run("inverse_components", [&] { return inverse_components(m, inv, opts); });
    run.run("composition", [&] {
        bool symbolic = opts.force_symbolic || m.n <= 3 || (m.n == 4 && full);
        return verify_composition(m, inv, symbolic ? CompositionMode::Symbolic : CompositionMode::Sampled,
                                  opts.composition_points, opts.seed, opts.sample_field);
    });
    run.run("roundtrip", [&] { return verify_roundtrip_sample(m, inv, opts.samples, opts.seed, opts.sample_field); });
    run.run("base_locus", [&] { return verify_base_locus(m, opts.seed); });
    run.run("transversals_in_R", [&] { return verify_transversals_in_R(m, opts.transversal_lines, opts.seed); });
    run.run("transversal_geometry", [&] { return verify_transversal_geometry(m.flats, opts.samples, opts.seed); });
    run.run("multiplicity", [&] { return verify_multiplicity_all(m, opts.seed); });
    run.run("class_matrix", [&] { return verify_class_matrix(m.n); });
    run.run("dual_dimension", [&] {
        CheckResult c;
        std::size_t d = dual_system_dimension(inv, m.n);
        c.witness["dim_L_dual"] = d;
        c.witness["lower_bound"] = m.n + 1;
        c.status = d >= m.n + 1 ? CheckResult::Status::Reported : CheckResult::Status::Fail;
        if (d < m.n + 1) c.witness["reason"] = "inverse components are not independent members";
        return c;
    });
    run.run("fibers", [&] { return verify_fibers(m, inv, opts.seed); });
    if (m.n == 3) {
        if (full) {
            run.run("n3_transversal_count", [&] { return n3_count(m, opts.seed); });
        } else {
            run.run("n3_transversal_count", [] { return CheckResult{"", CheckResult::Status::Skipped, {{"reason", "level fast"}}, {}}; });
        }
    }
    if (m.n == 4) {
        if (full) {
            run.run("quadric_pair_example", [&] { return quadric_pair_example(m, opts.seed); });
            run.run("pencil", [&] { return verify_pencil(m.flats, opts.seed); });
        } else {
            for (const char* name : {"quadric_pair_example", "pencil"}) {
                run.run(name, [] { return CheckResult{"", CheckResult::Status::Skipped, {{"reason", "level fast"}}, {}}; });
            }
        }
    }
    return rep;
}

VerificationReport verify_flats(std::span<const Flat> flats, const VerifyOptions& opts) {
    std::optional<VeneroniMap> m;
    InverseData inv;
    std::string error;
    try {
        m = build_forward_map(flats, BuildOptions{opts.strategy});
        inv = solve_b_matrix(*m);
        build_inverse_map(*m, inv, opts.strategy);
    } catch (const Error& e) {
        error = e.what();
        m.reset();
    }
    if (m) return verify_map(*m, inv, opts);

    VerificationReport rep;
    rep.instance["n"] = flats.size() - 1;
    rep.instance["field"] = flats.front().field().to_string();
    Runner run(rep, opts.timing);
    run.run("genericity", [&] {
        GenericityReport gr = genericity_check(flats);
        CheckResult c;
        if (!gr.passed()) {
            c.status = CheckResult::Status::Fail;
            c.witness["reason"] = gr.first_failure();
        }
        return c;
    });
    run.run("construction", [&] {
        CheckResult c;
        c.status = CheckResult::Status::Fail;
        c.witness["reason"] = error;
        return c;
    });
    return rep;
}

}  // namespace veneroni
