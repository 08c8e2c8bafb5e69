#ifndef VENERONI_SCALAR_HPP
#define VENERONI_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <variant>

#include "veneroni/error.hpp"

namespace veneroni {

/// The ground field of a computation: the rationals, or Z/p for a prime p.
class FieldCtx {
   public:
    enum class Kind { Rationals, Prime };

    /// Primes at or below this bound are rejected by `prime()`.
    static constexpr std::uint64_t kMinSamplingPrime = std::uint64_t{1} << 30;

    FieldCtx() = default;
    static FieldCtx rationals() { return FieldCtx{}; }
    /// p must be prime and exceed 2^30.
    static FieldCtx prime(std::uint64_t p);
    /// Any odd prime below 2^62; for arithmetic tests and explicit user requests.
    static FieldCtx small_prime(std::uint64_t p);
    /// "qq", "fp:<p>" (small primes accepted only when allow_small is set).
    static FieldCtx parse(std::string_view text, bool allow_small = false);

    Kind kind() const noexcept { return kind_; }
    bool is_rational() const noexcept { return kind_ == Kind::Rationals; }
    std::uint64_t modulus() const noexcept { return p_; }
    std::string to_string() const;

    friend bool operator==(const FieldCtx&, const FieldCtx&) = default;

   private:
    friend class Scalar;
    FieldCtx(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
    Kind kind_ = Kind::Rationals;
    std::uint64_t p_ = 0;
};

bool is_prime_u64(std::uint64_t n);

/// Exact field element. Rationals are kept in lowest terms with positive
/// denominator; residues live in [0, p).
class Scalar {
   public:
    Scalar() : v_(mpq_class(0)) {}
    explicit Scalar(const mpq_class& q) : v_(q) { std::get<mpq_class>(v_).canonicalize(); }
    static Scalar from_int(long long v, const FieldCtx& ctx);
    static Scalar from_mpz(const mpz_class& v, const FieldCtx& ctx);
    static Scalar from_residue(std::uint64_t r, const FieldCtx& ctx);
    static Scalar zero(const FieldCtx& ctx) { return from_int(0, ctx); }
    static Scalar one(const FieldCtx& ctx) { return from_int(1, ctx); }
    /// "num/den", "num", or a residue; den omitted when 1.
    static Scalar parse(std::string_view text, const FieldCtx& ctx);

    FieldCtx ctx() const;
    bool is_rational() const noexcept { return v_.index() == 0; }
    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    /// Sign of a rational; residues report 0 or 1.
    int sign() const noexcept;

    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    std::uint64_t residue() const { return std::get<Residue>(v_).r; }

    Scalar inv() const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    /// this += a * b without a temporary in the rational case.
    void add_mul(const Scalar& a, const Scalar& b);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string to_string() const;
    std::size_t hash() const;

    /// Reinterpret in another field (rational -> residue needs an invertible denominator).
    Scalar reduce_to(const FieldCtx& ctx) const;

   private:
    struct Residue {
        std::uint64_t r;
        std::uint64_t p;
    };
    explicit Scalar(Residue r) : v_(r) {}
    void check_same(const Scalar& o) const;

    std::variant<mpq_class, Residue> v_;
};

/// Seeded generator; mt19937_64 is fully specified, so output is portable.
using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed);
/// Derive an independent seed for sub-stream `stream` (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
/// Uniform integer in [0, m) by rejection; m >= 1.
std::uint64_t uniform_below(Rng& rng, std::uint64_t m);

/// Uniform nonzero integer in [-bound, bound] (rationals) or nonzero residue.
Scalar random_nonzero(const FieldCtx& ctx, Rng& rng, long long bound);
/// Uniform integer in [-bound, bound] (rationals) or any residue.
Scalar random_scalar(const FieldCtx& ctx, Rng& rng, long long bound);

inline Scalar inv(const Scalar& a) { return a.inv(); }

}  // namespace veneroni

template <>
struct std::hash<veneroni::Scalar> {
    std::size_t operator()(const veneroni::Scalar& s) const { return s.hash(); }
};

#endif
