#include "veneroni/veneroni.hpp"

namespace veneroni {

namespace {

// Q[tau]/(tau^2 - p tau - q). For squarefree phi this is a field or a
// product of two copies of Q, so an identity there holds at both roots.
struct QuadCtx {
    Scalar p, q;
};

struct QuadExt {
    Scalar a, b;
    const QuadCtx* ctx = nullptr;

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) { return {x.a + y.a, x.b + y.b, x.ctx}; }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return {x.a - y.a, x.b - y.b, x.ctx}; }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        Scalar bd = x.b * y.b;
        return {x.a * y.a + bd * x.ctx->q, x.a * y.b + x.b * y.a + bd * x.ctx->p, x.ctx};
    }
    QuadExt scaled(const Scalar& s) const { return {a * s, b * s, ctx}; }
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    // Product of the two conjugates; nonzero iff the element is a unit.
    Scalar norm() const { return a * a + a * b * ctx->p - b * b * ctx->q; }
};

using QuadVector = std::vector<QuadExt>;

QuadExt lin(const LinearForm& f, const QuadVector& x) {
    QuadExt acc{Scalar::zero(f[0].ctx()), Scalar::zero(f[0].ctx()), x.front().ctx};
    for (std::size_t i = 0; i < x.size(); ++i) acc = acc + x[i].scaled(f[i]);
    return acc;
}

// Value at y of the cone form of flat f through the point x.
QuadExt cone_at(const Flat& f, const QuadVector& x, std::span<const Scalar> y) {
    QuadExt v1 = lin(f.form1, x), v2 = lin(f.form2, x);
    return v1.scaled(f.form2.evaluate(y)) - v2.scaled(f.form1.evaluate(y));
}

bool is_rational_square(const Scalar& d) {
    if (!d.is_rational() || d.sign() < 0) return false;
    const mpq_class& q = d.rational();
    return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 && mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

Scalar rational_sqrt(const Scalar& d) {
    const mpq_class& q = d.rational();
    mpz_class num, den;
    mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
    return Scalar(mpq_class(num, den));
}

}  // namespace

N3Count count_transversals_n3(std::span<const Flat> flats, const std::vector<Poly>& Q, std::uint64_t seed) {
    if (flats.size() != 4) throw Error(ErrorCode::InvalidArgument, "the transversal count needs four flats in P^3");
    const FieldCtx field = flats.front().field();
    Subspace s0 = flat_subspace(flats[0]), s3 = flat_subspace(flats[3]);
    if (s0.basis.size() != 2 || s3.basis.size() != 2) throw Error(ErrorCode::Genericity, "flats are not lines");
    const ScalarVector& r1 = s3.basis[0];
    const ScalarVector& r2 = s3.basis[1];
    RingPtr st = PolyRing::make(std::vector<std::string>{"s", "t"}, field);
    Rng rng = make_rng(derive_seed(seed, 0x33));

    N3Count out;
    ScalarVector w0 = s0.basis[0], w1 = s0.basis[1];
    for (int attempt = 0; attempt < 32; ++attempt) {
        // x(s,t) = s w0 + t w1 as linear forms in (s,t).
        std::vector<Poly> x;
        for (std::size_t i = 0; i < 4; ++i) {
            x.push_back(Poly::from_terms(st, {{Monomial::var(0), w0[i]}, {Monomial::var(1), w1[i]}}));
        }
        auto cone_poly = [&](const Flat& f, const ScalarVector& y) {
            Poly v1 = Poly::constant(st, 0), v2 = Poly::constant(st, 0);
            for (std::size_t i = 0; i < 4; ++i) {
                v1 += x[i].scaled(f.form1[i]);
                v2 += x[i].scaled(f.form2[i]);
            }
            return v1.scaled(f.form2.evaluate(y)) - v2.scaled(f.form1.evaluate(y));
        };
        Poly phi = cone_poly(flats[1], r1) * cone_poly(flats[2], r2) - cone_poly(flats[1], r2) * cone_poly(flats[2], r1);
        out.degree = phi.degree();
        out.A = phi.coefficient(Monomial::var(0, 2));
        out.B = phi.coefficient(Monomial::var(0) * Monomial::var(1));
        out.C = phi.coefficient(Monomial::var(1, 2));
        if (out.A.is_zero() && !phi.is_zero()) {
            // The root t = 0 sits at w0; move to a basis with A != 0.
            Scalar lambda = random_nonzero(field, rng, 9);
            for (std::size_t i = 0; i < 4; ++i) w0[i] += lambda * w1[i];
            continue;
        }
        break;
    }
    if (out.degree != 2 || out.A.is_zero()) return out;
    out.discriminant = out.B * out.B - Scalar::from_int(4, field) * out.A * out.C;
    out.discriminant_nonzero = !out.discriminant.is_zero();
    if (!out.discriminant_nonzero) return out;
    out.discriminant_square = is_rational_square(out.discriminant);

    // tau is the root s/t of A s^2 + B s t + C t^2 (t = 1).
    QuadCtx qc{-out.B / out.A, -out.C / out.A};
    const Scalar zero = Scalar::zero(field), one = Scalar::one(field);
    QuadVector xt;
    for (std::size_t i = 0; i < 4; ++i) xt.push_back({w1[i], w0[i], &qc});
    QuadExt a1 = cone_at(flats[1], xt, r1), a2 = cone_at(flats[1], xt, r2);
    QuadVector r;
    for (std::size_t i = 0; i < 4; ++i) r.push_back(a2.scaled(r1[i]) - a1.scaled(r2[i]));

    // r lies in the cone plane of flat 2 exactly because phi(tau) = 0.
    QuadExt b1 = cone_at(flats[2], xt, r1), b2 = cone_at(flats[2], xt, r2);
    bool ok = (b1 * a2 - b2 * a1).is_zero();
    for (const auto& f : flats) {
        QuadExt m = lin(f.form1, xt) * lin(f.form2, r) - lin(f.form2, xt) * lin(f.form1, r);
        ok = ok && m.is_zero();
    }
    // Independence of x and r at both roots: a random combination of the
    // 2x2 minors must be a unit.
    QuadExt comb{zero, zero, &qc};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            comb = comb + (xt[i] * r[j] - xt[j] * r[i]).scaled(random_nonzero(field, rng, 1000));
        }
    }
    ok = ok && !comb.norm().is_zero();
    out.lines_meet_all = ok;

    if (!Q.empty()) {
        bool on = true;
        const QuadExt qzero{zero, zero, &qc}, qone{one, zero, &qc};
        auto lift = [&](const Scalar& c) { return QuadExt{c, zero, &qc}; };
        for (const auto& q : Q) {
            const int d = q.degree();
            // A binary form of degree d vanishing at d+1 points (1 : m) is zero.
            for (int mm = 0; mm <= d && on; ++mm) {
                QuadVector pt;
                for (std::size_t i = 0; i < 4; ++i) pt.push_back(xt[i] + r[i].scaled(Scalar::from_int(mm, field)));
                on = evaluate_in<QuadExt>(q, std::span<const QuadExt>(pt), qzero, qone, lift).is_zero();
            }
        }
        out.lines_on_Q = on;
    }

    if (out.discriminant_square) {
        Scalar sq = rational_sqrt(out.discriminant);
        for (int sign : {1, -1}) {
            Scalar root = (-out.B + (sign > 0 ? sq : -sq)) / (Scalar::from_int(2, field) * out.A);
            ScalarVector base(4, zero);
            for (std::size_t i = 0; i < 4; ++i) base[i] = root * w0[i] + w1[i];
            ProjPoint pb(base);
            TransversalResult t = transversal_through(pb, std::vector<Flat>{flats[1], flats[2], flats[3]});
            if (t.kind == TransversalResult::Kind::Unique) out.rational_lines.push_back(*t.line);
        }
    }
    return out;
}

}  // namespace veneroni
