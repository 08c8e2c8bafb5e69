#ifndef VENERONI_PROJGEO_HPP
#define VENERONI_PROJGEO_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "veneroni/exactla.hpp"

namespace veneroni {

/// Point of P^n, normalized so the first nonzero coordinate is 1.
class ProjPoint {
   public:
    explicit ProjPoint(ScalarVector coords);
    /// Comma-separated scalars, e.g. "1,2/3,0,5,1".
    static ProjPoint parse(std::string_view text, const FieldCtx& field);
    /// Coordinate vertex p_k of P^n.
    static ProjPoint vertex(std::size_t nvars, std::size_t k, const FieldCtx& field);

    std::size_t size() const { return coords_.size(); }
    const ScalarVector& coords() const { return coords_; }
    std::span<const Scalar> span() const { return coords_; }
    const Scalar& operator[](std::size_t i) const { return coords_[i]; }
    const FieldCtx& field() const { return field_; }
    std::string to_string() const;
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }

   private:
    ScalarVector coords_;
    FieldCtx field_;
};

/// Codimension-2 flat {form1 = form2 = 0}; canonically form1 = x_j and
/// form2 = f_j with a_{j,j} = 0 and every other a_{j,i} nonzero.
struct Flat {
    std::size_t index = 0;
    LinearForm form1;
    LinearForm form2;

    /// form1 = x_j, form2 = sum a[i] x_i; requires a[j] = 0.
    static Flat canonical(std::size_t j, ScalarVector a);
    std::size_t ambient_dim() const { return form1.size() - 1; }
    const Scalar& coeff(std::size_t i) const { return form2[i]; }
    bool is_canonical() const;
    bool contains(std::span<const Scalar> pt) const;
    FieldCtx field() const { return form2[0].ctx(); }
};

/// Linear subspace of P^n given by a basis of its affine cone.
struct Subspace {
    std::vector<ScalarVector> basis;
    int projective_dim() const { return static_cast<int>(basis.size()) - 1; }
    bool empty() const { return basis.empty(); }
};

/// Line s*base + t*dir.
struct LineParam {
    ProjPoint base;
    ProjPoint dir;
    ProjPoint at(const Scalar& s, const Scalar& t) const;
};

/// Hyperplane <p, flat> as f1(p) f2 - f2(p) f1; nullopt when p lies on the flat.
std::optional<LinearForm> cone_hyperplane(const ProjPoint& p, const Flat& f);

struct MeetingPoint {
    std::size_t flat = 0;
    /// Parameter (s : t) on the line; empty when the line lies in the flat.
    std::optional<ProjPoint> param;
    std::optional<ProjPoint> point;
};

struct TransversalResult {
    enum class Kind { Unique, Family, None };
    Kind kind = Kind::None;
    /// Dimension of the solution space of the stacked cone system.
    std::size_t nullity = 0;
    /// Unique: the line t_p through p.
    std::optional<LineParam> line;
    std::vector<MeetingPoint> meetings;
    bool distinct_meetings = false;
    /// Family: projective dimension d_p of T_p and a basis of its cone.
    std::size_t family_dim = 0;
    std::vector<ProjPoint> basis;
};

const char* transversal_kind_name(TransversalResult::Kind k);

TransversalResult transversal_through(const ProjPoint& p, std::span<const Flat> flats);

/// Algebraic meeting test: [f1(base) f1(dir); f2(base) f2(dir)] is singular.
bool line_meets_flat(const LineParam& line, const Flat& f);
std::optional<ProjPoint> meeting_point(const LineParam& line, const Flat& f);

Subspace flat_subspace(const Flat& f);
Subspace flat_intersection(const Flat& a, const Flat& b);
/// Intersection of a subspace (given by a basis) with a flat.
Subspace intersect_with_flat(const Subspace& s, const Flat& f);
/// The n-1 spanning points of a flat.
std::vector<ProjPoint> parametrize_flat(const Flat& f);

/// p restricted to the span of `basis`: x -> sum_k t_k basis[k].
Poly restrict_to_span(const Poly& p, std::span<const ScalarVector> basis);
/// Binary form p(s*base + t*dir).
Poly restrict_to_line(const Poly& p, const LineParam& line);
bool vanishes_on(const Poly& p, const Flat& f);

ProjPoint random_point(std::size_t nvars, const FieldCtx& field, Rng& rng, long long bound);
/// Random combination of the basis vectors (nonzero).
ProjPoint random_point_in(const Subspace& s, const FieldCtx& field, Rng& rng, long long bound);

struct GenericityReport {
    bool coefficients_ok = true;
    bool intersections_ok = true;
    bool transversals_ok = true;
    bool divisibility_checked = false;
    bool divisibility_ok = true;
    std::vector<std::string> failures;
    bool passed() const { return coefficients_ok && intersections_ok && transversals_ok && divisibility_ok; }
    std::string first_failure() const { return failures.empty() ? std::string() : failures.front(); }
};

struct GenericityOptions {
    std::uint64_t seed = 0x5eed;
    std::size_t samples = 3;
    long long bound = 9;
    bool check_divisibility = true;
};

/// (a) a_{j,i} != 0 off the diagonal; (b) pairwise intersections have the
/// expected dimension; (c) sampled points have unique transversals to every
/// (n-1)-subset at distinct points; (d) det(B_i) divisible by x_i, computed
/// only when (a)-(c) pass.
GenericityReport genericity_check(std::span<const Flat> flats, const GenericityOptions& opts = {});

struct GeneratedFlats {
    std::vector<Flat> flats;
    std::size_t retries = 0;
};

GeneratedFlats random_general_flats(std::size_t n, std::uint64_t seed, long long bound = 9,
                                    const FieldCtx& field = FieldCtx::rationals(), std::size_t max_retries = 32);

struct NormalizedFlats {
    std::vector<Flat> flats;
    /// Rows are the first forms: new coordinates are change * old.
    ScalarMatrix change;
};

NormalizedFlats normalize_flats(const std::vector<std::pair<LinearForm, LinearForm>>& raw);

}  // namespace veneroni

#endif
