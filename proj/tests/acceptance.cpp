// One line per acceptance criterion. All comparisons are exact; the only
// pinned quantities are sample counts, seed counts and wall-clock budgets.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

#include "oracle.hpp"

using namespace veneroni;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kSeeds = 5;
constexpr std::size_t kRoundtripPoints = 20;
constexpr std::size_t kCompositionPoints = 50;
constexpr std::size_t kTransversalPoints = 20;
constexpr std::size_t kTransversalLines = 5;
constexpr double kBudgetThroughN4 = 60.0;
constexpr double kBudgetN5 = 600.0;
constexpr double kBudgetSymbolicN4 = 300.0;

// Criteria whose literal wording cannot be met; they print FAIL with the
// reason but do not fail the binary.
const std::set<int> kUnattainable = {11};

const FieldCtx qq = FieldCtx::rationals();

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Instance {
    VeneroniMap map;
    InverseData inv;
};

std::uint64_t seed_of(std::size_t n, std::size_t k) { return 1000 * n + k + 1; }

std::map<std::pair<std::size_t, std::size_t>, Instance>& cache() {
    static std::map<std::pair<std::size_t, std::size_t>, Instance> c;
    return c;
}

const Instance& instance(std::size_t n, std::size_t k) {
    auto key = std::make_pair(n, k);
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
    Instance in;
    in.map = build_forward_map(random_general_flats(n, seed_of(n, k)).flats);
    in.inv = solve_b_matrix(in.map);
    build_inverse_map(in.map, in.inv);
    return cache().emplace(key, std::move(in)).first->second;
}

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

int failures = 0;
int unattainable_failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    char line[64];
    std::snprintf(line, sizeof line, "%7.2fs", seconds_since(t0));
    std::cout << "criterion " << (id < 10 ? " " : "") << id << "  " << (o.pass ? "PASS" : "FAIL") << "  " << line
              << "  " << title;
    if (!o.detail.empty()) std::cout << "  [" << o.detail << "]";
    std::cout << std::endl;
    if (!o.pass) {
        if (kUnattainable.count(id)) {
            ++unattainable_failures;
        } else {
            ++failures;
        }
    }
}

std::string tag(std::size_t n, std::size_t k) {
    return "n=" + std::to_string(n) + " seed=" + std::to_string(seed_of(n, k));
}

Outcome determinantal() {
    Outcome o;
    double through4 = 0, n5 = 0;
    for (std::size_t n = 2; n <= 5; ++n) {
        auto t0 = std::chrono::steady_clock::now();
        for (std::size_t k = 0; k < kSeeds; ++k) {
            GeneratedFlats g = random_general_flats(n, seed_of(n, k));
            RingPtr ring = source_ring(g.flats);
            PolyMatrix b = build_matrix_B(g.flats, ring);
            oracle::Mat a = oracle::flat_coeffs(g.flats);
            std::mt19937_64 rng(seed_of(n, k));
            for (std::size_t i = 0; i <= n; ++i) {
                Poly d = det_poly_matrix(b.principal_minor(i));
                Poly q = exact_div_by_var(d, i);
                o.require(q.degree() == static_cast<int>(n - 1), tag(n, k) + ": deg Q_i");
                oracle::Vec x = oracle::random_vec(n + 1, rng);
                o.require(oracle::det(oracle::B_minor_at(a, i, x)) == x[i] * oracle::eval(q, x),
                          tag(n, k) + ": Q_i disagrees with the Leibniz oracle");
                for (std::size_t j = 0; j <= n; ++j) {
                    if (j != i) o.require(vanishes_on(q, g.flats[j]), tag(n, k) + ": Q_i not zero on a flat");
                    oracle::Vec v(n + 1, 0);
                    v[j] = 1;
                    o.require(oracle::eval(q, v) != 0, tag(n, k) + ": Q_i zero at a vertex");
                }
            }
        }
        (n <= 4 ? through4 : n5) += seconds_since(t0);
    }
    o.require(through4 < kBudgetThroughN4, "n <= 4 over budget");
    o.require(n5 < kBudgetN5, "n = 5 over budget");
    if (o.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "n<=4 %.2fs, n=5 %.2fs", through4, n5);
        o.detail = buf;
    }
    return o;
}

Outcome dimensions() {
    Outcome o;
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::size_t k = 0; k < kSeeds; ++k) {
            GeneratedFlats g = random_general_flats(n, seed_of(n, k));
            const unsigned d = static_cast<unsigned>(n);
            o.require(linear_system_dimension(g.flats, d) == n + 1, tag(n, k) + ": dim L_n");
            for (std::size_t omit = 0; omit <= n; ++omit) {
                std::vector<std::size_t> sub;
                for (std::size_t j = 0; j <= n; ++j)
                    if (j != omit) sub.push_back(j);
                o.require(linear_system_dimension(g.flats, d - 1, sub) == 1, tag(n, k) + ": degree n-1 system");
            }
        }
    }
    // Interpolation cross-check on one instance per n.
    for (std::size_t n = 2; n <= 4; ++n) {
        GeneratedFlats g = random_general_flats(n, seed_of(n, 0));
        std::vector<std::size_t> all(n + 1);
        for (std::size_t j = 0; j <= n; ++j) all[j] = j;
        o.require(oracle::dim_forms_through(oracle::flat_coeffs(g.flats), static_cast<unsigned>(n), all, 3) == n + 1,
                  "interpolation oracle disagrees at n=" + std::to_string(n));
    }
    return o;
}

Outcome b_laws() {
    Outcome o;
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::size_t k = 0; k < kSeeds; ++k) {
            const Instance& in = instance(n, k);
            RingPtr r = in.map.xring;
            for (std::size_t i = 0; i <= n; ++i) {
                Poly residual = in.map.flats[i].form2.to_poly(r) * in.map.Q[i];
                for (std::size_t j = 0; j <= n; ++j) {
                    o.require(in.inv.b.at(i, j).is_zero() == (i == j), tag(n, k) + ": b zero pattern");
                    residual -= in.map.components[j].scaled(in.inv.b.at(i, j));
                }
                o.require(residual.is_zero(), tag(n, k) + ": residual is not the zero polynomial");
            }
        }
    }
    return o;
}

Outcome composition() {
    Outcome o;
    double n4 = 0;
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::size_t k = 0; k < kSeeds; ++k) {
            const Instance& in = instance(n, k);
            auto t0 = std::chrono::steady_clock::now();
            CheckResult r = n <= 4 ? verify_composition(in.map, in.inv, CompositionMode::Symbolic)
                                   : verify_composition(in.map, in.inv, CompositionMode::Sampled,
                                                        kCompositionPoints, seed_of(n, k));
            if (n == 4) n4 += seconds_since(t0);
            o.require(!r.failed(), tag(n, k) + ": composition");
        }
    }
    o.require(n4 / kSeeds < kBudgetSymbolicN4, "n = 4 symbolic over budget");
    if (o.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "symbolic n<=4, %zu points at n=5; n=4 %.2fs each", kCompositionPoints,
                      n4 / kSeeds);
        o.detail = buf;
    }
    return o;
}

Outcome roundtrip() {
    Outcome o;
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::size_t k = 0; k < kSeeds; ++k) {
            const Instance& in = instance(n, k);
            CheckResult r = verify_roundtrip_sample(in.map, in.inv, kRoundtripPoints, seed_of(n, k));
            o.require(!r.failed(), tag(n, k) + ": round trip");
            // Independent pass: own sampling, own comparison.
            std::mt19937_64 rng(seed_of(n, k) + 7);
            std::set<std::string> images;
            std::size_t used = 0;
            while (used < kRoundtripPoints) {
                oracle::Vec x = oracle::random_vec(n + 1, rng, 30);
                bool off = true;
                for (const auto& q : in.map.Q) off = off && oracle::eval(q, x) != 0;
                if (!off) continue;
                ++used;
                oracle::Vec y;
                for (const auto& c : in.map.components) y.push_back(oracle::eval(c, x));
                oracle::Vec z;
                for (const auto& c : in.inv.inverse_components) z.push_back(oracle::eval(c, y));
                o.require(oracle::proportional(x, z), tag(n, k) + ": u(v(p)) != p");
                images.insert(ProjPoint(oracle::to_scalars(y)).to_string() + "|" +
                              ProjPoint(oracle::to_scalars(x)).to_string());
            }
            std::set<std::string> only_images;
            for (const auto& s : images) only_images.insert(s.substr(0, s.find('|')));
            o.require(only_images.size() == images.size(), tag(n, k) + ": two samples share an image");
        }
    }
    return o;
}

Outcome class_matrices() {
    Outcome o;
    for (unsigned n = 2; n <= 10; ++n) {
        IntMatrix m = class_matrix(n);
        oracle::IMat om = oracle::class_matrix(n);
        for (std::size_t i = 0; i < om.size(); ++i)
            for (std::size_t j = 0; j < om.size(); ++j)
                o.require(m.at(i, j) == om[i][j], "class matrix entry differs from the oracle");
        oracle::IMat sq = oracle::imatmul(om, om);
        for (std::size_t i = 0; i < sq.size(); ++i)
            for (std::size_t j = 0; j < sq.size(); ++j)
                o.require(sq[i][j] == (i == j ? 1 : 0), "square is not the identity at n=" + std::to_string(n));
        o.require(int_matrix_mul(m, m) == IntMatrix::identity(n + 2), "library square is not the identity");
    }
    IntMatrix t = class_matrix(2, 3);
    bool idempotent = int_matrix_mul(t, t) == t;
    if (o.pass) {
        o.detail = std::string("on (H, Pi_0..Pi_n), size n+2; the 3x3 display for n=2 squares to ") +
                   (idempotent ? "itself" : "something else") + ", not I_3";
    }
    return o;
}

Outcome transversal_geometry() {
    Outcome o;
    for (std::size_t n = 3; n <= 5; ++n) {
        for (std::size_t k = 0; k < kSeeds; ++k) {
            const Instance& in = instance(n, k);
            CheckResult r = verify_transversal_geometry(in.map.flats, kTransversalPoints, seed_of(n, k));
            o.require(!r.failed(), tag(n, k) + ": transversal geometry");
            oracle::Mat a = oracle::flat_coeffs(in.map.flats);
            Rng rng = make_rng(seed_of(n, k) + 3);
            for (std::size_t s = 0; s < kTransversalPoints; ++s) {
                ProjPoint p = random_point(n + 1, qq, rng, 50);
                std::vector<Flat> sub(in.map.flats.begin() + 2, in.map.flats.end());
                TransversalResult t = transversal_through(p, sub);
                o.require(t.nullity == 2, tag(n, k) + ": nullity");
                o.require(t.kind == TransversalResult::Kind::Unique && t.distinct_meetings,
                          tag(n, k) + ": meeting points");
                if (!t.line) continue;
                oracle::Vec u = oracle::from_point(t.line->base), v = oracle::from_point(t.line->dir);
                for (std::size_t j = 2; j <= n; ++j) o.require(oracle::line_meets(a, j, u, v), tag(n, k) + ": miss");
            }
        }
    }
    for (std::size_t k = 0; k < kSeeds; ++k) {
        const Instance& in = instance(4, k);
        PencilExample pe = pencil_plane(in.map.flats);
        Rng rng = make_rng(seed_of(4, k));
        ProjPoint p = random_point_in(pe.plane, qq, rng, 9);
        while (in.map.flats[2].contains(p.span()) || in.map.flats[3].contains(p.span()) ||
               in.map.flats[4].contains(p.span()))
            p = random_point_in(pe.plane, qq, rng, 9);
        std::vector<Flat> three = {in.map.flats[2], in.map.flats[3], in.map.flats[4]};
        TransversalResult t = transversal_through(p, three);
        o.require(t.kind == TransversalResult::Kind::Family && t.family_dim == 2, tag(4, k) + ": pencil");
    }
    return o;
}

Outcome n3_count() {
    Outcome o;
    for (std::size_t k = 0; k < kSeeds; ++k) {
        const Instance& in = instance(3, k);
        N3Count c = count_transversals_n3(in.map.flats, in.map.Q, seed_of(3, k));
        o.require(c.degree == 2, tag(3, k) + ": meeting condition degree");
        o.require(!c.discriminant.is_zero() && c.discriminant_nonzero, tag(3, k) + ": zero discriminant");
        o.require(c.discriminant == c.B * c.B - Scalar::from_int(4, qq) * c.A * c.C, tag(3, k) + ": discriminant");
        o.require(c.lines_meet_all, tag(3, k) + ": lines miss a flat");
    }
    return o;
}

Outcome multiplicity() {
    Outcome o;
    for (std::size_t k = 0; k < kSeeds; ++k) {
        const Instance& in = instance(4, k);
        o.require(!verify_multiplicity_all(in.map, seed_of(4, k)).failed(), tag(4, k) + ": multiplicity");
        oracle::Mat a = oracle::flat_coeffs(in.map.flats);
        std::mt19937_64 rng(seed_of(4, k));
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = i + 1; j < 5; ++j) {
                Subspace s = flat_intersection(in.map.flats[i], in.map.flats[j]);
                oracle::Vec x;
                for (const auto& c : s.basis.at(0)) x.push_back(oracle::from_scalar(c));
                for (std::size_t q = 0; q < 5; ++q) {
                    if (q == i || q == j) continue;
                    o.require(oracle::eval(in.map.Q[q], x) == 0, tag(4, k) + ": Q_k nonzero");
                    for (std::size_t v = 0; v < 5; ++v)
                        o.require(oracle::eval(partial_derivative(in.map.Q[q], v), x) == 0,
                                  tag(4, k) + ": partial nonzero");
                }
            }
            // Control: a general point of a single flat Pi_j, j != i.
            std::size_t j = (i + 1) % 5;
            oracle::Vec y = oracle::point_on_flat(a, j, rng);
            bool nonzero = false;
            for (std::size_t v = 0; v < 5; ++v)
                nonzero = nonzero || oracle::eval(partial_derivative(in.map.Q[i], v), y) != 0;
            o.require(nonzero, tag(4, k) + ": control gradient vanishes");
        }
    }
    return o;
}

Outcome quadric_pair() {
    Outcome o;
    for (std::size_t k = 0; k < kSeeds; ++k) {
        CheckResult r = quadric_pair_example(instance(4, k).map, seed_of(4, k));
        o.require(!r.failed(), tag(4, k) + ": " + r.witness.dump());
    }
    return o;
}

Outcome transversals_in_R() {
    Outcome o;
    for (std::size_t n = 4; n <= 5; ++n) {
        for (std::size_t k = 0; k < kSeeds; ++k) {
            const Instance& in = instance(n, k);
            auto lines = sample_full_transversals(in.map, kTransversalLines, seed_of(n, k));
            o.require(lines.size() >= kTransversalLines, tag(n, k) + ": too few lines sampled");
            for (const auto& st : lines) {
                for (const auto& f : in.map.flats) o.require(line_meets_flat(st.line, f), tag(n, k) + ": not a transversal");
                for (const auto& q : in.map.Q)
                    o.require(restrict_to_line(q, st.line).is_zero(), tag(n, k) + ": line not on Q_i");
            }
        }
    }
    if (!o.pass) return o;
    // n = 3: four general lines have exactly two transversals, defined over
    // the splitting field of the meeting condition.
    bool both_on_Q = true;
    for (std::size_t k = 0; k < kSeeds; ++k) {
        const Instance& in = instance(3, k);
        N3Count c = count_transversals_n3(in.map.flats, in.map.Q, seed_of(3, k));
        both_on_Q = both_on_Q && c.lines_meet_all && c.lines_on_Q;
    }
    o.pass = false;
    o.detail = std::string("n=4,5: ") + std::to_string(kTransversalLines) +
               " lines per instance on every Q_i; n=3: only 2 transversals exist, both " +
               (both_on_Q ? "verified on every Q_i" : "NOT verified") +
               "; 5 per instance is unattainable at n=3";
    return o;
}

Outcome mutations() {
    Outcome o;
    VerifyOptions opts;
    opts.level = Level::Fast;
    for (std::size_t n = 2; n <= 4; ++n) {
        const Instance& in = instance(n, 0);
        {
            VeneroniMap m = in.map;
            ScalarVector a = m.flats[1].form2.coeffs();
            a[0] += Scalar::one(qq);
            m.flats[1] = Flat::canonical(1, a);
            VerificationReport r = verify_map(m, in.inv, opts);
            o.require(r.find("determinantal") && r.find("determinantal")->failed(),
                      "n=" + std::to_string(n) + ": flat mutation not caught (1)");
        }
        {
            VeneroniMap m = in.map;
            std::vector<Term> t = m.Q[0].terms();
            t[0].c += Scalar::one(qq);
            m.Q[0] = Poly::from_terms(m.xring, t);
            VerificationReport r = verify_map(m, in.inv, opts);
            o.require(r.find("determinantal")->failed(), "n=" + std::to_string(n) + ": Q mutation not caught (1)");
        }
        {
            InverseData inv = in.inv;
            inv.b.at(0, 1) += Scalar::one(qq);
            VerificationReport r = verify_map(in.map, inv, opts);
            o.require(r.find("b_matrix")->failed(), "n=" + std::to_string(n) + ": b mutation not caught (3)");
            o.require(r.find("composition")->failed(), "n=" + std::to_string(n) + ": b mutation not caught (4)");
            o.require(verify_composition(in.map, inv, CompositionMode::Symbolic).failed(),
                      "n=" + std::to_string(n) + ": symbolic composition missed the mutation (4)");
        }
        {
            InverseData inv = in.inv;
            inv.b.at(1, 1) = Scalar::one(qq);
            o.require(verify_map(in.map, inv, opts).find("b_matrix")->failed(),
                      "n=" + std::to_string(n) + ": nonzero diagonal not caught (3)");
        }
    }
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism(const std::string& cli) {
    Outcome o;
    if (cli.empty()) {
        o.pass = false;
        o.detail = "no CLI path given";
        return o;
    }
    fs::path dir = fs::temp_directory_path() / ("veneroni_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    for (int run = 0; run < 2; ++run) {
        for (unsigned n = 2; n <= 4; ++n) {
            std::string base = (dir / ("r" + std::to_string(run) + "_n" + std::to_string(n))).string();
            std::string cmd = "\"" + cli + "\" generate -n " + std::to_string(n) + " --seed 42 -o " + base +
                              "_flats.json 2>/dev/null && \"" + cli + "\" build -i " + base + "_flats.json -o " +
                              base + "_map.json && \"" + cli + "\" verify -i " + base + "_map.json -o " + base +
                              "_report.json > /dev/null";
            o.require(std::system(cmd.c_str()) == 0, "pipeline failed at n=" + std::to_string(n));
        }
    }
    for (unsigned n = 2; n <= 4; ++n) {
        for (const char* kind : {"_flats.json", "_map.json", "_report.json"}) {
            std::string a = slurp(dir / ("r0_n" + std::to_string(n) + kind));
            std::string b = slurp(dir / ("r1_n" + std::to_string(n) + kind));
            o.require(!a.empty() && a == b, std::string("artifact differs: ") + kind);
        }
    }
    fs::remove_all(dir);
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::size_t k = 0; k < kSeeds; ++k) {
            PolyMatrix b = build_matrix_B(instance(n, k).map.flats, instance(n, k).map.xring);
            for (std::size_t i = 0; i <= n; ++i)
                o.require(det_poly_matrix(b.principal_minor(i), DetStrategy::MinorDp) ==
                              det_poly_matrix(b.principal_minor(i), DetStrategy::Bareiss),
                          tag(n, k) + ": strategies disagree on det(B_i)");
            PolyMatrix c = build_matrix_C(instance(n, k).map, instance(n, k).inv.b);
            o.require(det_poly_matrix(c.principal_minor(0), DetStrategy::MinorDp) ==
                          det_poly_matrix(c.principal_minor(0), DetStrategy::Bareiss),
                      tag(n, k) + ": strategies disagree on det(C_0)");
        }
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    auto t0 = std::chrono::steady_clock::now();
    report(1, "det(B_i) = x_i Q_i, deg Q_i = n-1, Q_i zero on Pi_j, nonzero at vertices", determinantal);
    report(2, "dim L_n = n+1; degree n-1 through n flats: 1", dimensions);
    report(3, "b-matrix residual zero; b_ij = 0 iff i = j", b_laws);
    report(4, "h(det C_i) = x_i Q_0...Q_n", composition);
    report(5, "u(v(p)) = p on samples off the Q_i; images distinct", roundtrip);
    report(6, "class matrix is an involution, n = 2..10", class_matrices);
    report(7, "cone nullity 2, distinct meetings; n = 4 pencil has family dimension 2", transversal_geometry);
    report(8, "n = 3 meeting condition: degree 2, nonzero discriminant", n3_count);
    report(9, "n = 4 multiplicity at Pi_i cap Pi_j with control gradients", multiplicity);
    report(10, "n = 4 example on Q_0 cap Q_1", quadric_pair);
    report(11, "sampled transversals lie on every Q_i, n = 3..5", transversals_in_R);
    report(12, "single-coefficient mutations break criteria 1, 3, 4", mutations);
    report(13, "byte-identical artifacts across runs; determinant strategies agree",
           [&] { return determinism(cli); });
    std::cout << (13 - failures - unattainable_failures) << "/13 criteria pass";
    if (unattainable_failures) std::cout << ", " << unattainable_failures << " documented as unattainable";
    if (failures) std::cout << ", " << failures << " FAILED";
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.1fs)", seconds_since(t0));
    std::cout << buf << std::endl;
    return failures == 0 ? 0 : 1;
}
