#include "veneroni/scalar.hpp"

#include <charconv>

namespace veneroni {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::DivisionByZero: return "division-by-zero";
        case ErrorCode::NotDivisible: return "not-divisible";
        case ErrorCode::FieldMismatch: return "field-mismatch";
        case ErrorCode::RingMismatch: return "ring-mismatch";
        case ErrorCode::DegreeMismatch: return "degree-mismatch";
        case ErrorCode::Inconsistent: return "inconsistent";
        case ErrorCode::Genericity: return "genericity";
        case ErrorCode::Construction: return "construction";
        case ErrorCode::BaseLocus: return "base-locus";
        case ErrorCode::Limit: return "limit";
        case ErrorCode::Internal: return "internal";
    }
    return "unknown";
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 mpz_mod_u64(const mpz_class& z, u64 p) {
    mpz_class r;
    mpz_class pm;
    mpz_import(pm.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pm.get_mpz_t());
    u64 out = 0;
    if (r != 0) mpz_export(&out, nullptr, 1, sizeof(u64), 0, 0, r.get_mpz_t());
    return out;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for 64-bit inputs.
    for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldCtx FieldCtx::small_prime(std::uint64_t p) {
    if (p < 3 || p >= (std::uint64_t{1} << 62) || !is_prime_u64(p)) {
        throw Error(ErrorCode::InvalidArgument, "modulus " + std::to_string(p) + " is not an odd prime below 2^62");
    }
    return FieldCtx(Kind::Prime, p);
}

FieldCtx FieldCtx::prime(std::uint64_t p) {
    if (p <= kMinSamplingPrime) {
        throw Error(ErrorCode::InvalidArgument, "prime modulus must exceed 2^30, got " + std::to_string(p));
    }
    return small_prime(p);
}

FieldCtx FieldCtx::parse(std::string_view text, bool allow_small) {
    if (text == "qq" || text == "QQ") return rationals();
    if (text.substr(0, 3) == "fp:") {
        auto digits = text.substr(3);
        std::uint64_t p = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
            throw Error(ErrorCode::InvalidArgument, "malformed field modulus '" + std::string(digits) + "'");
        }
        return allow_small ? small_prime(p) : prime(p);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown field '" + std::string(text) + "' (expected qq or fp:<p>)");
}

std::string FieldCtx::to_string() const {
    return is_rational() ? std::string("qq") : "fp:" + std::to_string(p_);
}

Scalar Scalar::from_int(long long v, const FieldCtx& ctx) {
    if (ctx.is_rational()) return Scalar(mpq_class(mpz_class(static_cast<long>(v))));
    const auto p = static_cast<__int128>(ctx.modulus());
    __int128 r = static_cast<__int128>(v) % p;
    if (r < 0) r += p;
    return Scalar(Residue{static_cast<u64>(r), ctx.modulus()});
}

Scalar Scalar::from_residue(std::uint64_t r, const FieldCtx& ctx) {
    if (ctx.is_rational()) throw Error(ErrorCode::FieldMismatch, "residue requested in the rationals");
    return Scalar(Residue{r % ctx.modulus(), ctx.modulus()});
}

Scalar Scalar::from_mpz(const mpz_class& v, const FieldCtx& ctx) {
    if (ctx.is_rational()) return Scalar(mpq_class(v));
    return Scalar(Residue{mpz_mod_u64(v, ctx.modulus()), ctx.modulus()});
}

Scalar Scalar::parse(std::string_view text, const FieldCtx& ctx) {
    auto bad = [&](const char* why) {
        return Error(ErrorCode::Parse, std::string(why) + ": '" + std::string(text) + "'");
    };
    auto is_int = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') return false;
        }
        return true;
    };
    auto to_mpz = [](std::string_view s) {
        if (!s.empty() && s[0] == '+') s.remove_prefix(1);
        return mpz_class(std::string(s), 10);
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!is_int(num)) throw bad("malformed scalar");
    if (slash == std::string_view::npos) return from_mpz(to_mpz(num), ctx);
    std::string_view den = text.substr(slash + 1);
    if (!is_int(den) || den[0] == '-' || den[0] == '+') throw bad("malformed denominator");
    mpz_class d = to_mpz(den);
    if (d == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    return from_mpz(to_mpz(num), ctx) / from_mpz(d, ctx);
}

FieldCtx Scalar::ctx() const {
    if (is_rational()) return FieldCtx::rationals();
    return FieldCtx(FieldCtx::Kind::Prime, std::get<Residue>(v_).p);
}

bool Scalar::is_zero() const noexcept {
    if (auto* q = std::get_if<mpq_class>(&v_)) return sgn(*q) == 0;
    return std::get<Residue>(v_).r == 0;
}

bool Scalar::is_one() const noexcept {
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q == 1;
    return std::get<Residue>(v_).r == 1;
}

int Scalar::sign() const noexcept {
    if (auto* q = std::get_if<mpq_class>(&v_)) return sgn(*q);
    return std::get<Residue>(v_).r == 0 ? 0 : 1;
}

void Scalar::check_same(const Scalar& o) const {
    if (v_.index() != o.v_.index() ||
        (!is_rational() && std::get<Residue>(v_).p != std::get<Residue>(o.v_).p)) {
        throw Error(ErrorCode::FieldMismatch, "operands from different fields");
    }
}

Scalar Scalar::inv() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (auto* q = std::get_if<mpq_class>(&v_)) return Scalar(mpq_class(1) / *q);
    const auto& r = std::get<Residue>(v_);
    return Scalar(Residue{pow_mod(r.r, r.p - 2, r.p), r.p});
}

Scalar Scalar::operator-() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return Scalar(mpq_class(-*q));
    const auto& r = std::get<Residue>(v_);
    return Scalar(Residue{r.r == 0 ? 0 : r.p - r.r, r.p});
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check_same(o);
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        *q += std::get<mpq_class>(o.v_);
    } else {
        auto& r = std::get<Residue>(v_);
        u64 s = r.r + std::get<Residue>(o.v_).r;
        r.r = s >= r.p ? s - r.p : s;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_same(o);
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        *q -= std::get<mpq_class>(o.v_);
    } else {
        auto& r = std::get<Residue>(v_);
        u64 b = std::get<Residue>(o.v_).r;
        r.r = r.r >= b ? r.r - b : r.r + (r.p - b);
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check_same(o);
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        *q *= std::get<mpq_class>(o.v_);
    } else {
        auto& r = std::get<Residue>(v_);
        r.r = mul_mod(r.r, std::get<Residue>(o.v_).r, r.p);
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    check_same(o);
    if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        *q /= std::get<mpq_class>(o.v_);
        return *this;
    }
    return *this *= o.inv();
}

void Scalar::add_mul(const Scalar& a, const Scalar& b) {
    check_same(a);
    check_same(b);
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        thread_local mpq_class tmp;
        mpq_mul(tmp.get_mpq_t(), std::get<mpq_class>(a.v_).get_mpq_t(), std::get<mpq_class>(b.v_).get_mpq_t());
        *q += tmp;
    } else {
        auto& r = std::get<Residue>(v_);
        u64 s = r.r + mul_mod(std::get<Residue>(a.v_).r, std::get<Residue>(b.v_).r, r.p);
        r.r = s >= r.p ? s - r.p : s;
    }
}

bool operator==(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    if (a.is_rational()) return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
    return std::get<Scalar::Residue>(a.v_).r == std::get<Scalar::Residue>(b.v_).r;
}

std::string Scalar::to_string() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        if (q->get_den() == 1) return q->get_num().get_str();
        return q->get_num().get_str() + "/" + q->get_den().get_str();
    }
    return std::to_string(std::get<Residue>(v_).r);
}

std::size_t Scalar::hash() const {
    if (!is_rational()) return std::hash<u64>{}(std::get<Residue>(v_).r);
    return std::hash<std::string>{}(to_string());
}

Scalar Scalar::reduce_to(const FieldCtx& ctx) const {
    if (ctx == this->ctx()) return *this;
    if (!is_rational()) throw Error(ErrorCode::FieldMismatch, "cannot lift a residue to another field");
    const auto& q = std::get<mpq_class>(v_);
    Scalar den = from_mpz(q.get_den(), ctx);
    if (den.is_zero()) {
        throw Error(ErrorCode::DivisionByZero, "denominator of " + to_string() + " vanishes in " + ctx.to_string());
    }
    return from_mpz(q.get_num(), ctx) / den;
}

Rng make_rng(std::uint64_t seed) { return Rng(seed); }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    u64 z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t m) {
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "empty range");
    const u64 limit = ~u64{0} - (~u64{0} % m);
    u64 x = rng();
    while (x >= limit) x = rng();
    return x % m;
}

Scalar random_nonzero(const FieldCtx& ctx, Rng& rng, long long bound) {
    if (bound < 1) throw Error(ErrorCode::InvalidArgument, "coefficient bound must be >= 1");
    if (!ctx.is_rational()) return Scalar::from_residue(1 + uniform_below(rng, ctx.modulus() - 1), ctx);
    auto k = static_cast<long long>(uniform_below(rng, static_cast<u64>(2 * bound)));
    long long v = k < bound ? k - bound : k - bound + 1;
    return Scalar::from_int(v, ctx);
}

Scalar random_scalar(const FieldCtx& ctx, Rng& rng, long long bound) {
    if (bound < 0) throw Error(ErrorCode::InvalidArgument, "negative bound");
    if (!ctx.is_rational()) return Scalar::from_residue(uniform_below(rng, ctx.modulus()), ctx);
    auto k = static_cast<long long>(uniform_below(rng, static_cast<u64>(2 * bound + 1)));
    return Scalar::from_int(k - bound, ctx);
}

}  // namespace veneroni
