#ifndef VENERONI_MPOLY_HPP
#define VENERONI_MPOLY_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "veneroni/scalar.hpp"

namespace veneroni {

inline constexpr std::size_t kMaxVars = 8;
inline constexpr unsigned kMaxDegree = 255;

/// Exponent vector packed one byte per variable (variable i in byte i).
/// Total degree is capped at 255, so products never carry between bytes.
class Monomial {
   public:
    constexpr Monomial() = default;
    static Monomial var(std::size_t i, unsigned e = 1);
    static Monomial from_exponents(std::span<const unsigned> e);

    unsigned exponent(std::size_t i) const { return static_cast<unsigned>((bits_ >> (8 * i)) & 0xffu); }
    unsigned degree() const { return static_cast<unsigned>((bits_ * 0x0101010101010101ULL) >> 56); }
    std::uint64_t bits() const { return bits_; }
    bool is_one() const { return bits_ == 0; }
    bool divisible_by(Monomial d) const;

    Monomial operator*(Monomial o) const;
    /// Requires divisible_by(o).
    Monomial operator/(Monomial o) const;
    friend bool operator==(Monomial, Monomial) = default;

    static Monomial from_bits(std::uint64_t b) {
        Monomial m;
        m.bits_ = b;
        return m;
    }

   private:
    std::uint64_t bits_ = 0;
};

/// Graded reverse-lexicographic order: true when a comes before b in
/// canonical (descending) order.
inline bool grevlex_greater(Monomial a, Monomial b) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    // With equal degree, the highest differing byte belongs to the last
    // differing variable; the smaller exponent there wins.
    return a.bits() < b.bits();
}

/// All monomials of total degree d in nvars variables, canonical order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d);

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
   public:
    /// Variables named prefix0 .. prefix{nvars-1}.
    static RingPtr make(std::size_t nvars, const FieldCtx& field, const std::string& prefix = "x");
    static RingPtr make(std::vector<std::string> names, const FieldCtx& field);

    std::size_t nvars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const FieldCtx& field() const { return field_; }
    std::optional<std::size_t> index_of(std::string_view name) const;
    bool same_as(const PolyRing& o) const { return field_ == o.field_ && names_ == o.names_; }

    PolyRing(std::vector<std::string> names, const FieldCtx& field);

   private:
    std::vector<std::string> names_;
    FieldCtx field_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
    Monomial m;
    Scalar c;
};

/// Sparse polynomial with nonzero coefficients, terms in canonical order.
class Poly {
   public:
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
    static Poly constant(const RingPtr& ring, const Scalar& c);
    static Poly constant(const RingPtr& ring, long long c);
    static Poly var(const RingPtr& ring, std::size_t i);
    static Poly monomial(const RingPtr& ring, Monomial m, const Scalar& c);
    /// Merges duplicates, drops zeros, sorts.
    static Poly from_terms(const RingPtr& ring, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    /// Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().m.degree()); }
    bool is_homogeneous() const;
    Scalar coefficient(Monomial m) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Scalar& c) const;
    Poly times_monomial(Monomial m) const;
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Canonical text; parse_poly(to_string()) reproduces the polynomial.
    std::string to_string() const;
    /// Reinterpret coefficients in another field (same variable names).
    Poly reduce_to(const RingPtr& ring) const;

   private:
    friend class PolyAccumulator;
    RingPtr ring_;
    std::vector<Term> terms_;
};

/// Hash-map accumulator for sums of many products.
class PolyAccumulator {
   public:
    explicit PolyAccumulator(RingPtr ring, std::size_t reserve = 0);
    void add_term(Monomial m, const Scalar& c);
    void add_product(Monomial m, const Scalar& a, const Scalar& b);
    void add_scaled(const Poly& p, const Scalar& c);
    void add_scaled_shifted(const Poly& p, const Scalar& c, Monomial shift);
    Poly finish() &&;

   private:
    RingPtr ring_;
    Scalar zero_;
    std::unordered_map<std::uint64_t, Scalar> acc_;
};

/// p / x_i for p divisible by x_i; throws NotDivisible naming the first bad term.
Poly exact_div_by_var(const Poly& p, std::size_t i);
/// num / den when den divides num exactly; throws NotDivisible otherwise.
Poly exact_div(const Poly& num, const Poly& den);
Poly partial_derivative(const Poly& p, std::size_t i);
Scalar evaluate(const Poly& p, std::span<const Scalar> pt);

/// Evaluation in any commutative ring R receiving coefficients via lift.
template <class R, class Lift>
R evaluate_in(const Poly& p, std::span<const R> pt, const R& zero, const R& one, Lift lift) {
    const std::size_t nv = p.ring()->nvars();
    std::vector<std::vector<R>> powers(nv);
    R acc = zero;
    for (const auto& t : p.terms()) {
        R v = lift(t.c);
        for (std::size_t i = 0; i < nv; ++i) {
            unsigned e = t.m.exponent(i);
            if (e == 0) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(one);
            while (pw.size() <= e) pw.push_back(pw.back() * pt[i]);
            v = v * pw[e];
        }
        acc = acc + v;
    }
    return acc;
}

/// Ring homomorphism x_i -> images[i]; nonzero images must be homogeneous
/// of one common degree. Monomial images are memoized across apply() calls.
class Substitution {
   public:
    Substitution(const RingPtr& source, std::vector<Poly> images);
    const RingPtr& source() const { return source_; }
    const RingPtr& target() const { return target_; }
    Poly apply(const Poly& p) const;
    const Poly& image_of(Monomial m) const;
    std::size_t cached() const { return cache_.size(); }

   private:
    RingPtr source_;
    RingPtr target_;
    std::vector<Poly> images_;
    mutable std::unordered_map<std::uint64_t, Poly> cache_;
};

Poly substitute_linear(const Poly& p, const std::vector<Poly>& images);

/// Grammar: signed sum of terms; a term is coefficient ['*'] monomial,
/// monomial, or coefficient; a monomial is var['^'exp] ('*' var['^'exp])*;
/// a coefficient is an integer or integer/integer.
Poly parse_poly(std::string_view text, const RingPtr& ring);

/// Nonzero linear form sum c_i x_i.
class LinearForm {
   public:
    explicit LinearForm(std::vector<Scalar> coeffs);
    static LinearForm variable(std::size_t nvars, std::size_t i, const FieldCtx& field);
    /// Requires a homogeneous degree-1 polynomial.
    static LinearForm from_poly(const Poly& p);

    std::size_t size() const { return coeffs_.size(); }
    const Scalar& operator[](std::size_t i) const { return coeffs_[i]; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    Scalar evaluate(std::span<const Scalar> pt) const;
    Poly to_poly(const RingPtr& ring) const;
    friend bool operator==(const LinearForm&, const LinearForm&) = default;

   private:
    std::vector<Scalar> coeffs_;
};

}  // namespace veneroni

#endif
