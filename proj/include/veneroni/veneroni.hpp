#ifndef VENERONI_VENERONI_HPP
#define VENERONI_VENERONI_HPP

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

#include "veneroni/projgeo.hpp"

namespace veneroni {

using Json = nlohmann::ordered_json;

/// Source ring x0..xn over the field of the flats.
RingPtr source_ring(std::span<const Flat> flats);
/// Target ring y0..yn.
RingPtr target_ring(std::size_t n, const FieldCtx& field);

/// Diagonal -f_i, off-diagonal (i,k) entry a_{i,k} x_k.
PolyMatrix build_matrix_B(std::span<const Flat> flats, const RingPtr& ring = nullptr);

/// det(B_i) / x_i.
Poly compute_Q(std::span<const Flat> flats, std::size_t i, DetStrategy strategy = DetStrategy::MinorDp,
               const RingPtr& ring = nullptr);

/// Independent route to Q_i: in B_i add every other column into column k,
/// whose entries become -a_{r,i} x_i, then divide that column by x_i.
Poly compute_Q_by_column_sum(std::span<const Flat> flats, std::size_t i, std::size_t k, const RingPtr& ring = nullptr);

/// Dimension of the degree-d forms vanishing on every flat in `subset`.
std::size_t linear_system_dimension(std::span<const Flat> flats, unsigned d, const std::vector<std::size_t>& subset);
/// Same, over all flats.
std::size_t linear_system_dimension(std::span<const Flat> flats, unsigned d);

struct VeneroniMap {
    std::size_t n = 0;
    std::vector<Flat> flats;
    RingPtr xring;
    RingPtr yring;
    std::vector<Poly> Q;
    std::vector<Poly> components;
};

struct InverseData {
    ScalarMatrix b{0, 0, FieldCtx::rationals()};
    std::vector<LinearForm> g;
    std::vector<Poly> inverse_components;
    std::vector<Flat> dual_flats;
};

struct BuildOptions {
    DetStrategy strategy = DetStrategy::MinorDp;
};

/// Computes Q_i and x_i Q_i and checks every invariant of the map.
VeneroniMap build_forward_map(std::span<const Flat> flats, const BuildOptions& opts = {});
/// Fills b and g.
InverseData solve_b_matrix(const VeneroniMap& map);
/// Matrix C: diagonal -g_i, off-diagonal a_{i,j} y_j.
PolyMatrix build_matrix_C(const VeneroniMap& map, const ScalarMatrix& b);
/// Dual flats (y_i, g_i) for a given b.
std::vector<Flat> dual_flats_of(const ScalarMatrix& b);
/// Fills inverse_components and dual_flats.
void build_inverse_map(const VeneroniMap& map, InverseData& inv, DetStrategy strategy = DetStrategy::MinorDp);

/// Image under the polynomial map; throws BaseLocus if every component vanishes.
ProjPoint apply_map(const std::vector<Poly>& components, const ProjPoint& p);

/// One named verification outcome.
struct CheckResult {
    enum class Status { Pass, Fail, Skipped, Reported };
    std::string name;
    Status status = Status::Pass;
    Json witness = Json::object();
    std::optional<double> ms;

    bool failed() const { return status == Status::Fail; }
};

const char* status_name(CheckResult::Status s);

struct VerificationReport {
    Json instance = Json::object();
    std::vector<CheckResult> checks;
    bool passed() const;
    const CheckResult* find(std::string_view name) const;
};

enum class Level { Fast, Full };

struct VerifyOptions {
    Level level = Level::Full;
    std::size_t samples = 20;
    std::uint64_t seed = 1;
    /// Field for point sampling; symbolic checks stay over the rationals.
    FieldCtx sample_field = FieldCtx::rationals();
    bool force_symbolic = false;
    /// Number of points for sampled composition.
    std::size_t composition_points = 50;
    /// Sampled transversal lines for T_n in R_n.
    std::size_t transversal_lines = 5;
    DetStrategy strategy = DetStrategy::MinorDp;
    bool timing = false;
};

enum class CompositionMode { Symbolic, Sampled };

CheckResult verify_composition(const VeneroniMap& map, const InverseData& inv, CompositionMode mode,
                               std::size_t points = 50, std::uint64_t seed = 1,
                               const FieldCtx& field = FieldCtx::rationals());
CheckResult verify_roundtrip_sample(const VeneroniMap& map, const InverseData& inv, std::size_t k, std::uint64_t seed,
                                    const FieldCtx& field = FieldCtx::rationals());
/// Components vanish on every flat and a general point is not a base point.
CheckResult verify_base_locus(const VeneroniMap& map, std::uint64_t seed);

/// A line meeting all n+1 flats. For n = 3 the two lines are defined over
/// Q[tau]/(phi), so they are returned only for n >= 4.
struct SampledTransversal {
    LineParam line;
    std::size_t through_i = 0, through_j = 0;
};

/// n >= 4: transversals through points of Pi_i cap Pi_j to the other flats.
std::vector<SampledTransversal> sample_full_transversals(const VeneroniMap& map, std::size_t count, std::uint64_t seed);

/// Sampled transversals to all flats lie on every Q_i.
CheckResult verify_transversals_in_R(const VeneroniMap& map, std::size_t count, std::uint64_t seed);

struct N3Count {
    /// Meeting condition phi(s,t) = A s^2 + B st + C t^2 along Pi_0.
    Scalar A, B, C;
    Scalar discriminant;
    int degree = -1;
    bool discriminant_nonzero = false;
    bool discriminant_square = false;
    /// Both roots give lines meeting the four flats, verified in Q[tau]/(phi).
    bool lines_meet_all = false;
    /// Both lines lie on every Q_i (needs Q).
    bool lines_on_Q = false;
    /// Rational lines when the discriminant is a square.
    std::vector<LineParam> rational_lines;
};

/// Requires 4 flats in P^3; Q may be empty to skip the lines_on_Q check.
N3Count count_transversals_n3(std::span<const Flat> flats, const std::vector<Poly>& Q = {}, std::uint64_t seed = 7);

CheckResult verify_multiplicity(const VeneroniMap& map, std::size_t i, std::size_t j, std::size_t k,
                                std::uint64_t seed);

/// Multiplicity at every pair intersection and every k, plus the control.
CheckResult verify_multiplicity_all(const VeneroniMap& map, std::uint64_t seed);

struct PencilExample {
    ProjPoint p23, p24, p34;
    Subspace plane;
};

/// The plane through Pi_2 cap Pi_3, Pi_2 cap Pi_4, Pi_3 cap Pi_4 (n = 4).
PencilExample pencil_plane(std::span<const Flat> flats);

CheckResult quadric_pair_example(const VeneroniMap& map, std::uint64_t seed);

/// Lines through general points of the pencil plane to Pi_2, Pi_3, Pi_4.
CheckResult verify_pencil(std::span<const Flat> flats, std::uint64_t seed);

/// Sampled points have unique transversals to n-1 flats at distinct points.
CheckResult verify_transversal_geometry(std::span<const Flat> flats, std::size_t samples, std::uint64_t seed);

/// Pullback on the classes (H, Pi_0, ..., Pi_n): H* -> nH - sum Pi_j and
/// Pi_i* -> (n-1)H - sum Pi_j + Pi_i. Size n+2.
IntMatrix class_matrix(std::size_t n);
/// The same pattern truncated to `size` rows and columns.
IntMatrix class_matrix(std::size_t n, std::size_t size);
CheckResult verify_class_matrix(std::size_t n);

std::size_t dual_system_dimension(const InverseData& inv, std::size_t n);

/// Points q of Q_i off the base locus: y_i(v(q)) = g_i(v(q)) = 0 and the
/// transversal t_q maps to the single point v(q).
CheckResult verify_fibers(const VeneroniMap& map, const InverseData& inv, std::uint64_t seed);

/// Full suite from flats (build included) or from a stored map.
VerificationReport verify_flats(std::span<const Flat> flats, const VerifyOptions& opts);
VerificationReport verify_map(const VeneroniMap& map, const InverseData& inv, const VerifyOptions& opts);

}  // namespace veneroni

#endif
