#include "doctest.h"
#include "oracle.hpp"

using namespace veneroni;

namespace {

Poly random_form(const RingPtr& r, unsigned d, Rng& rng) {
    std::vector<Term> terms;
    for (Monomial m : monomials_of_degree(r->nvars(), d)) terms.push_back({m, random_scalar(r->field(), rng, 7)});
    return Poly::from_terms(r, terms);
}

}  // namespace

TEST_CASE("square of a trinomial has six terms") {
    RingPtr r = PolyRing::make(3, FieldCtx::rationals());
    Poly s = parse_poly("x0 + x1 + x2", r);
    Poly sq = s * s;
    CHECK(sq.num_terms() == oracle::binom(4, 2));
    CHECK(sq.num_terms() == 6);
    CHECK(sq.coefficient(Monomial::var(0) * Monomial::var(1)).to_string() == "2");
    CHECK(sq.degree() == 2);
}

TEST_CASE("monomial enumeration counts") {
    for (std::size_t nv = 1; nv <= 6; ++nv)
        for (unsigned d = 0; d <= 5; ++d)
            CHECK(monomials_of_degree(nv, d).size() == oracle::binom(static_cast<unsigned>(nv + d - 1), d));
}

TEST_CASE("Euler identity for a quintic-variable quartic") {
    RingPtr r = PolyRing::make(5, FieldCtx::rationals());
    Rng rng = make_rng(2024);
    Poly p = random_form(r, 4, rng);
    Poly lhs(r);
    for (std::size_t i = 0; i < 5; ++i) lhs += Poly::var(r, i) * partial_derivative(p, i);
    CHECK(lhs == p.scaled(Scalar::from_int(4, r->field())));
}

TEST_CASE("evaluation agrees with the oracle") {
    RingPtr r = PolyRing::make(4, FieldCtx::rationals());
    Rng rng = make_rng(5);
    std::mt19937_64 orng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Poly p = random_form(r, 3, rng) * random_form(r, 2, rng);
        oracle::Vec x = oracle::random_vec(4, orng);
        auto xs = oracle::to_scalars(x);
        CHECK(oracle::from_scalar(evaluate(p, xs)) == oracle::eval(p, x));
    }
}

TEST_CASE("multiplication agrees with pointwise products") {
    RingPtr r = PolyRing::make(3, FieldCtx::rationals());
    Rng rng = make_rng(11);
    std::mt19937_64 orng(11);
    Poly a = random_form(r, 3, rng), b = random_form(r, 4, rng);
    for (int t = 0; t < 5; ++t) {
        oracle::Vec x = oracle::random_vec(3, orng);
        CHECK(oracle::eval(a * b, x) == oracle::eval(a, x) * oracle::eval(b, x));
        CHECK(oracle::eval(a - a, x) == 0);
    }
}

TEST_CASE("parse and print round trip") {
    RingPtr r = PolyRing::make(3, FieldCtx::rationals());
    Poly p = parse_poly("3/2*x0^2*x1 - x2^3 + 7 x0*x1*x2", r);
    CHECK(parse_poly(p.to_string(), r) == p);
    CHECK(parse_poly("0", r).is_zero());
    CHECK(parse_poly("0", r).degree() == -1);
    CHECK(parse_poly("-x0 + x0", r).is_zero());
}

TEST_CASE("parse errors report the offset") {
    RingPtr r = PolyRing::make(2, FieldCtx::rationals());
    try {
        parse_poly("x0 + * x1", r);
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.code() == ErrorCode::Parse);
        CHECK(e.offset() == 5);
    }
    CHECK_THROWS_AS(parse_poly("x7", r), ParseError);
    CHECK_THROWS_AS(parse_poly("x0^", r), ParseError);
}

TEST_CASE("exact division") {
    RingPtr r = PolyRing::make(3, FieldCtx::rationals());
    Poly p = parse_poly("x0^2*x1 + 2*x0*x2^2", r);
    CHECK(exact_div_by_var(p, 0) == parse_poly("x0*x1 + 2*x2^2", r));
    try {
        exact_div_by_var(p, 1);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotDivisible);
    }
    Poly a = parse_poly("x0 + x1", r), b = parse_poly("x0 - 2*x2", r);
    CHECK(exact_div(a * b, a) == b);
    CHECK_THROWS_AS(exact_div(a * b + Poly::var(r, 2), a), Error);
}

TEST_CASE("substitution is a ring homomorphism") {
    RingPtr y = PolyRing::make(3, FieldCtx::rationals(), "y");
    RingPtr x = PolyRing::make(3, FieldCtx::rationals());
    Rng rng = make_rng(3);
    std::vector<Poly> images;
    for (int i = 0; i < 3; ++i) images.push_back(random_form(x, 2, rng));
    Substitution h(y, images);
    Poly p = random_form(y, 2, rng), q = random_form(y, 1, rng);
    CHECK(h.apply(p * q) == h.apply(p) * h.apply(q));
    std::mt19937_64 orng(3);
    oracle::Vec pt = oracle::random_vec(3, orng);
    oracle::Vec img;
    for (const auto& g : images) img.push_back(oracle::eval(g, pt));
    CHECK(oracle::eval(h.apply(p), pt) == oracle::eval(p, img));
    CHECK(substitute_linear(parse_poly("y0 + y1", y), {Poly::var(x, 1), Poly::var(x, 2), Poly::var(x, 0)}) ==
          parse_poly("x1 + x2", x));
}

TEST_CASE("ring and degree limits") {
    FieldCtx qq = FieldCtx::rationals();
    RingPtr a = PolyRing::make(2, qq), b = PolyRing::make(3, qq);
    CHECK_THROWS_AS(Poly::var(a, 0) + Poly::var(b, 0), Error);
    CHECK_THROWS_AS(Monomial::var(0, 256), Error);
    CHECK_THROWS_AS(PolyRing::make(9, qq), Error);
}

TEST_CASE("linear forms") {
    FieldCtx qq = FieldCtx::rationals();
    RingPtr r = PolyRing::make(3, qq);
    LinearForm l = LinearForm::from_poly(parse_poly("2*x0 - x2", r));
    CHECK(l[0].to_string() == "2");
    CHECK(l[1].is_zero());
    std::vector<Scalar> pt = {Scalar::from_int(1, qq), Scalar::from_int(5, qq), Scalar::from_int(2, qq)};
    CHECK(l.evaluate(pt).is_zero());
    CHECK(l.to_poly(r) == parse_poly("2*x0 - x2", r));
    CHECK_THROWS_AS(LinearForm::from_poly(parse_poly("x0^2", r)), Error);
}
