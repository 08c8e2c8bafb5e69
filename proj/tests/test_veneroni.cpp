#include "doctest.h"
#include "oracle.hpp"

using namespace veneroni;

namespace {

const FieldCtx qq = FieldCtx::rationals();

struct Built {
    VeneroniMap map;
    InverseData inv;
};

Built build(std::size_t n, std::uint64_t seed) {
    Built b;
    b.map = build_forward_map(random_general_flats(n, seed).flats);
    b.inv = solve_b_matrix(b.map);
    build_inverse_map(b.map, b.inv);
    return b;
}

oracle::Vec point_of(const ScalarVector& v) {
    oracle::Vec out;
    for (const auto& s : v) out.push_back(oracle::from_scalar(s));
    return out;
}

}  // namespace

TEST_CASE("n = 2: det(B_i) by cofactor expansion") {
    Built b = build(2, 42);
    oracle::Mat a = oracle::flat_coeffs(b.map.flats);
    std::mt19937_64 rng(1);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(b.map.Q[i].degree() == 1);
        for (int t = 0; t < 5; ++t) {
            oracle::Vec x = oracle::random_vec(3, rng);
            oracle::Mat m = oracle::B_minor_at(a, i, x);
            oracle::Q cof = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            CHECK(cof == x[i] * oracle::eval(b.map.Q[i], x));
        }
    }
}

TEST_CASE("n = 2: Q_0 is the line through the other two points") {
    Built b = build(2, 5);
    Subspace p1 = flat_subspace(b.map.flats[1]), p2 = flat_subspace(b.map.flats[2]);
    REQUIRE(p1.basis.size() == 1);
    REQUIRE(p2.basis.size() == 1);
    oracle::Vec u = point_of(p1.basis[0]), v = point_of(p2.basis[0]);
    oracle::Vec cross = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
    LinearForm q0 = LinearForm::from_poly(b.map.Q[0]);
    CHECK(oracle::proportional(point_of(q0.coeffs()), cross));
}

TEST_CASE("Q_i matches the oracle determinant for n = 3..5") {
    for (std::size_t n = 3; n <= 5; ++n) {
        VeneroniMap m = build_forward_map(random_general_flats(n, 77).flats);
        oracle::Mat a = oracle::flat_coeffs(m.flats);
        std::mt19937_64 rng(n);
        for (std::size_t i = 0; i <= n; ++i) {
            CHECK(m.Q[i].degree() == static_cast<int>(n - 1));
            CHECK(m.components[i].degree() == static_cast<int>(n));
            oracle::Vec x = oracle::random_vec(n + 1, rng);
            CHECK(oracle::det(oracle::B_minor_at(a, i, x)) == x[i] * oracle::eval(m.Q[i], x));
            CHECK(compute_Q_by_column_sum(m.flats, i, (i + 1) % (n + 1), m.xring) == m.Q[i]);
            for (std::size_t j = 0; j <= n; ++j) {
                if (j != i) CHECK(vanishes_on(m.Q[i], m.flats[j]));
                oracle::Vec vtx(n + 1, 0);
                vtx[j] = 1;
                CHECK(oracle::eval(m.Q[i], vtx) != 0);
            }
        }
    }
}

TEST_CASE("Q_i vanishes at random points of the other flats (oracle sampling)") {
    VeneroniMap m = build_forward_map(random_general_flats(4, 3).flats);
    oracle::Mat a = oracle::flat_coeffs(m.flats);
    std::mt19937_64 rng(8);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            oracle::Vec x = oracle::point_on_flat(a, j, rng);
            CHECK((oracle::eval(m.Q[i], x) == 0) == (i != j));
        }
}

TEST_CASE("linear system dimensions agree with interpolation") {
    for (std::size_t n = 2; n <= 4; ++n) {
        GeneratedFlats g = random_general_flats(n, 31);
        oracle::Mat a = oracle::flat_coeffs(g.flats);
        std::vector<std::size_t> all(n + 1);
        for (std::size_t j = 0; j <= n; ++j) all[j] = j;
        const unsigned d = static_cast<unsigned>(n);
        CHECK(linear_system_dimension(g.flats, d) == n + 1);
        CHECK(oracle::dim_forms_through(a, d, all, 1) == n + 1);
        for (std::size_t omit = 0; omit <= n; ++omit) {
            std::vector<std::size_t> sub;
            for (std::size_t j = 0; j <= n; ++j)
                if (j != omit) sub.push_back(j);
            CHECK(linear_system_dimension(g.flats, d - 1, sub) == 1);
            CHECK(oracle::dim_forms_through(a, d - 1, sub, 2) == 1);
        }
    }
    GeneratedFlats g2 = random_general_flats(2, 8);
    CHECK(linear_system_dimension(g2.flats, 2) == 3);
}

TEST_CASE("components at the vertices") {
    Built b = build(3, 12);
    for (std::size_t j = 0; j <= 3; ++j) {
        oracle::Vec vtx(4, 0);
        vtx[j] = 1;
        for (std::size_t i = 0; i <= 3; ++i) CHECK((oracle::eval(b.map.components[i], vtx) != 0) == (i == j));
    }
}

TEST_CASE("b-matrix laws") {
    for (std::size_t n = 2; n <= 4; ++n) {
        Built b = build(n, 50 + n);
        std::mt19937_64 rng(n);
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t j = 0; j <= n; ++j) CHECK(b.inv.b.at(i, j).is_zero() == (i == j));
            CHECK(b.inv.inverse_components[i].degree() == static_cast<int>(n));
            for (std::size_t j = 0; j <= n; ++j)
                if (j != i) CHECK(vanishes_on(b.inv.inverse_components[i], b.inv.dual_flats[j]));
            // Point evaluation of f_i Q_i = sum_j b_ij x_j Q_j.
            for (int t = 0; t < 3; ++t) {
                oracle::Vec x = oracle::random_vec(n + 1, rng);
                oracle::Q fi = 0;
                for (std::size_t k = 0; k <= n; ++k) fi += oracle::from_scalar(b.map.flats[i].coeff(k)) * x[k];
                oracle::Q rhs = 0;
                for (std::size_t j = 0; j <= n; ++j)
                    rhs += oracle::from_scalar(b.inv.b.at(i, j)) * oracle::eval(b.map.components[j], x);
                CHECK(fi * oracle::eval(b.map.Q[i], x) == rhs);
            }
        }
    }
}

TEST_CASE("h(g_i) = f_i Q_i") {
    Built b = build(3, 2);
    Substitution h(b.map.yring, b.map.components);
    for (std::size_t i = 0; i <= 3; ++i) {
        Poly gi = b.inv.g[i].to_poly(b.map.yring);
        CHECK(h.apply(gi) == b.map.flats[i].form2.to_poly(b.map.xring) * b.map.Q[i]);
    }
}

TEST_CASE("n = 2 inverse components are conics through the dual points") {
    Built b = build(2, 9);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(b.inv.inverse_components[i].degree() == 2);
        for (std::size_t j = 0; j < 3; ++j) {
            Subspace s = flat_subspace(b.inv.dual_flats[j]);
            REQUIRE(s.basis.size() == 1);
            oracle::Q v = oracle::eval(b.inv.inverse_components[i], point_of(s.basis[0]));
            CHECK(v == 0);
        }
    }
}

TEST_CASE("composition identity and its mutation") {
    for (std::size_t n = 2; n <= 3; ++n) {
        Built b = build(n, 40 + n);
        CHECK_FALSE(verify_composition(b.map, b.inv, CompositionMode::Symbolic).failed());
        CHECK_FALSE(verify_composition(b.map, b.inv, CompositionMode::Sampled, 10, 3).failed());
        InverseData bad = b.inv;
        bad.b.at(0, 1) += Scalar::one(qq);
        CHECK(verify_composition(b.map, bad, CompositionMode::Symbolic).failed());
        CHECK(verify_composition(b.map, bad, CompositionMode::Sampled, 10, 3).failed());
    }
}

TEST_CASE("round trip and injectivity") {
    Built b = build(4, 42);
    CheckResult r = verify_roundtrip_sample(b.map, b.inv, 20, 5);
    CHECK_FALSE(r.failed());
    std::mt19937_64 rng(5);
    for (int t = 0; t < 5; ++t) {
        ProjPoint p(oracle::to_scalars(oracle::random_vec(5, rng)));
        ProjPoint img = apply_map(b.map.components, p);
        CHECK(apply_map(b.inv.inverse_components, img) == p);
    }
    CHECK_THROWS_AS(apply_map(b.map.components, ProjPoint(parametrize_flat(b.map.flats[0])[0])), Error);
}

TEST_CASE("fibers over Q_i land on the dual flats") {
    Built b = build(3, 42);
    CHECK_FALSE(verify_fibers(b.map, b.inv, 1).failed());
    Substitution h(b.map.yring, b.map.components);
    oracle::Mat a = oracle::flat_coeffs(b.map.flats);
    std::mt19937_64 rng(4);
    // q on Q_0: a point on the transversal through a point of Pi_1 to Pi_2, Pi_3.
    oracle::Vec p = oracle::point_on_flat(a, 1, rng);
    std::vector<Flat> two = {b.map.flats[2], b.map.flats[3]};
    TransversalResult t = transversal_through(ProjPoint(oracle::to_scalars(p)), two);
    REQUIRE(t.kind == TransversalResult::Kind::Unique);
    ProjPoint q = t.line->at(Scalar::from_int(2, qq), Scalar::from_int(3, qq));
    CHECK(oracle::eval(b.map.Q[0], oracle::from_point(q)) == 0);
    ProjPoint img = apply_map(b.map.components, q);
    CHECK(img[0].is_zero());
    CHECK(b.inv.g[0].evaluate(img.span()).is_zero());
}

TEST_CASE("base locus and transversals in R") {
    Built b4 = build(4, 42);
    CHECK_FALSE(verify_base_locus(b4.map, 1).failed());
    CHECK_FALSE(verify_transversals_in_R(b4.map, 5, 1).failed());
    for (const auto& st : sample_full_transversals(b4.map, 5, 2)) {
        for (std::size_t j = 0; j <= 4; ++j) CHECK(line_meets_flat(st.line, b4.map.flats[j]));
        for (const auto& q : b4.map.Q) CHECK(restrict_to_line(q, st.line).is_zero());
    }
}

TEST_CASE("multiplicity two along pairwise intersections at n = 4") {
    Built b = build(4, 42);
    CHECK_FALSE(verify_multiplicity_all(b.map, 1).failed());
    Subspace pt = flat_intersection(b.map.flats[2], b.map.flats[3]);
    REQUIRE(pt.basis.size() == 1);
    oracle::Vec x = point_of(pt.basis[0]);
    CHECK(oracle::eval(b.map.Q[0], x) == 0);
    for (std::size_t v = 0; v < 5; ++v) CHECK(oracle::eval(partial_derivative(b.map.Q[0], v), x) == 0);
    oracle::Mat a = oracle::flat_coeffs(b.map.flats);
    std::mt19937_64 rng(6);
    oracle::Vec y = oracle::point_on_flat(a, 2, rng);
    bool nonzero = false;
    for (std::size_t v = 0; v < 5; ++v) nonzero = nonzero || oracle::eval(partial_derivative(b.map.Q[0], v), y) != 0;
    CHECK(nonzero);
}

TEST_CASE("n = 3 transversal count") {
    for (std::uint64_t seed : {1, 2, 3, 42}) {
        Built b = build(3, seed);
        N3Count c = count_transversals_n3(b.map.flats, b.map.Q);
        CHECK(c.degree == 2);
        CHECK(c.discriminant_nonzero);
        CHECK(c.discriminant == c.B * c.B - Scalar::from_int(4, qq) * c.A * c.C);
        CHECK(c.lines_meet_all);
        CHECK(c.lines_on_Q);
        for (const auto& l : c.rational_lines)
            for (const auto& f : b.map.flats) CHECK(line_meets_flat(l, f));
    }
}

TEST_CASE("example on Q_0 cap Q_1 and pencil") {
    Built b = build(4, 42);
    CHECK_FALSE(quadric_pair_example(b.map, 1).failed());
    CHECK_FALSE(verify_pencil(b.map.flats, 1).failed());
}

TEST_CASE("class matrix") {
    IntMatrix m2 = class_matrix(2, 3);
    oracle::IMat display = {{2, 1, 1}, {-1, 0, -1}, {-1, -1, 0}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(m2.at(i, j) == display[i][j]);
    for (unsigned n = 2; n <= 10; ++n) {
        IntMatrix m = class_matrix(n);
        oracle::IMat o = oracle::class_matrix(n);
        REQUIRE(m.size() == o.size());
        for (std::size_t i = 0; i < o.size(); ++i)
            for (std::size_t j = 0; j < o.size(); ++j) CHECK(m.at(i, j) == o[i][j]);
        oracle::IMat sq = oracle::imatmul(o, o);
        for (std::size_t i = 0; i < o.size(); ++i)
            for (std::size_t j = 0; j < o.size(); ++j) CHECK(sq[i][j] == (i == j ? 1 : 0));
        CHECK(int_matrix_mul(m, m) == IntMatrix::identity(n + 2));
        CHECK(m.at(0, 0) == static_cast<std::int64_t>(n));
        CHECK(m.at(0, 1) == static_cast<std::int64_t>(n - 1));
        CHECK_FALSE(verify_class_matrix(n).failed());
    }
}

TEST_CASE("dual system dimension") {
    Built b2 = build(2, 42);
    CHECK(dual_system_dimension(b2.inv, 2) == 3);
    Built b3 = build(3, 42);
    CHECK(dual_system_dimension(b3.inv, 3) >= 4);
}

TEST_CASE("full verification") {
    for (std::size_t n = 2; n <= 4; ++n) {
        VerifyOptions o;
        VerificationReport r = verify_flats(random_general_flats(n, 42).flats, o);
        CHECK(r.passed());
        for (const auto& c : r.checks) CHECK_MESSAGE(!c.failed(), c.name);
    }
    VerifyOptions fast;
    fast.level = Level::Fast;
    VerificationReport r = verify_flats(random_general_flats(4, 1).flats, fast);
    CHECK(r.passed());
    REQUIRE(r.find("quadric_pair_example"));
    CHECK(r.find("quadric_pair_example")->status == CheckResult::Status::Skipped);
}

TEST_CASE("sampled checks over a prime field") {
    VerifyOptions o;
    o.sample_field = FieldCtx::prime(2147483647);
    VerificationReport r = verify_flats(random_general_flats(3, 42).flats, o);
    CHECK(r.passed());
    CHECK(r.instance["sample_field"] == "fp:2147483647");
}
