#include "veneroni/mpoly.hpp"

#include <algorithm>

namespace veneroni {

Monomial Monomial::var(std::size_t i, unsigned e) {
    if (i >= kMaxVars) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
    if (e > kMaxDegree) throw Error(ErrorCode::Limit, "exponent exceeds 255");
    return from_bits(static_cast<std::uint64_t>(e) << (8 * i));
}

Monomial Monomial::from_exponents(std::span<const unsigned> e) {
    if (e.size() > kMaxVars) throw Error(ErrorCode::InvalidArgument, "too many variables");
    std::uint64_t b = 0;
    unsigned total = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        total += e[i];
        if (e[i] > kMaxDegree || total > kMaxDegree) throw Error(ErrorCode::Limit, "total degree exceeds 255");
        b |= static_cast<std::uint64_t>(e[i]) << (8 * i);
    }
    return from_bits(b);
}

bool Monomial::divisible_by(Monomial d) const {
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (exponent(i) < d.exponent(i)) return false;
    }
    return true;
}

Monomial Monomial::operator*(Monomial o) const {
    if (degree() + o.degree() > kMaxDegree) throw Error(ErrorCode::Limit, "total degree exceeds 255");
    return from_bits(bits_ + o.bits_);
}

Monomial Monomial::operator/(Monomial o) const { return from_bits(bits_ - o.bits_); }

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d) {
    std::vector<Monomial> out;
    std::vector<unsigned> e(nvars, 0);
    // Enumerate compositions of d into nvars parts.
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i + 1 == nvars) {
            e[i] = left;
            out.push_back(Monomial::from_exponents(e));
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[i] = k;
            self(self, i + 1, left - k);
        }
    };
    if (nvars == 0) return out;
    rec(rec, 0, d);
    std::sort(out.begin(), out.end(), grevlex_greater);
    return out;
}

PolyRing::PolyRing(std::vector<std::string> names, const FieldCtx& field) : names_(std::move(names)), field_(field) {
    if (names_.empty() || names_.size() > kMaxVars) {
        throw Error(ErrorCode::InvalidArgument, "ring must have 1.." + std::to_string(kMaxVars) + " variables");
    }
}

RingPtr PolyRing::make(std::size_t nvars, const FieldCtx& field, const std::string& prefix) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nvars; ++i) names.push_back(prefix + std::to_string(i));
    return make(std::move(names), field);
}

RingPtr PolyRing::make(std::vector<std::string> names, const FieldCtx& field) {
    return std::make_shared<const PolyRing>(std::move(names), field);
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return i;
    }
    return std::nullopt;
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || a->same_as(*b); }

namespace {

void require_same(const Poly& a, const Poly& b) {
    if (!same_ring(a.ring(), b.ring())) throw Error(ErrorCode::RingMismatch, "polynomials from different rings");
}

bool term_order(const Term& a, const Term& b) { return grevlex_greater(a.m, b.m); }

}  // namespace

Poly Poly::constant(const RingPtr& ring, const Scalar& c) { return monomial(ring, Monomial{}, c); }

Poly Poly::constant(const RingPtr& ring, long long c) { return constant(ring, Scalar::from_int(c, ring->field())); }

Poly Poly::var(const RingPtr& ring, std::size_t i) {
    if (i >= ring->nvars()) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
    return monomial(ring, Monomial::var(i), Scalar::one(ring->field()));
}

Poly Poly::monomial(const RingPtr& ring, Monomial m, const Scalar& c) {
    Poly p(ring);
    if (!c.is_zero()) p.terms_.push_back({m, c.reduce_to(ring->field())});
    return p;
}

Poly Poly::from_terms(const RingPtr& ring, std::vector<Term> terms) {
    PolyAccumulator acc(ring, terms.size());
    for (auto& t : terms) acc.add_term(t.m, t.c);
    return std::move(acc).finish();
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = terms_.front().m.degree();
    return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.m.degree() == d; });
}

Scalar Poly::coefficient(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Monomial key) { return grevlex_greater(t.m, key); });
    if (it != terms_.end() && it->m == m) return it->c;
    return Scalar::zero(ring_->field());
}

Poly Poly::operator-() const {
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m, -t.c});
    return r;
}

namespace {

// Merge of two canonical term lists, sign = +1 or -1 applied to b.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].m == b[j].m) {
            Scalar c = subtract ? a[i].c - b[j].c : a[i].c + b[j].c;
            if (!c.is_zero()) out.push_back({a[i].m, std::move(c)});
            ++i;
            ++j;
        } else if (grevlex_greater(a[i].m, b[j].m)) {
            out.push_back(a[i++]);
        } else {
            out.push_back(subtract ? Term{b[j].m, -b[j].c} : b[j]);
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(subtract ? Term{b[j].m, -b[j].c} : b[j]);
    return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
    require_same(*this, o);
    terms_ = merge_terms(terms_, o.terms_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    require_same(*this, o);
    terms_ = merge_terms(terms_, o.terms_, true);
    return *this;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    r += b;
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    r -= b;
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.ring());
    if (a.num_terms() == 1) return b.times_monomial(a.terms_.front().m).scaled(a.terms_.front().c);
    if (b.num_terms() == 1) return a.times_monomial(b.terms_.front().m).scaled(b.terms_.front().c);
    if (a.degree() + b.degree() > static_cast<int>(kMaxDegree)) throw Error(ErrorCode::Limit, "total degree exceeds 255");
    PolyAccumulator acc(a.ring(), a.num_terms() * b.num_terms() / 2 + 16);
    for (const auto& s : a.terms_) {
        for (const auto& t : b.terms_) acc.add_product(Monomial::from_bits(s.m.bits() + t.m.bits()), s.c, t.c);
    }
    return std::move(acc).finish();
}

Poly Poly::scaled(const Scalar& c) const {
    Poly r(ring_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m, t.c * c});
    return r;
}

Poly Poly::times_monomial(Monomial m) const {
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c});
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    require_same(a, b);
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
    }
    return true;
}

namespace {

std::string monomial_text(Monomial m, const PolyRing& ring) {
    std::string s;
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
        unsigned e = m.exponent(i);
        if (e == 0) continue;
        if (!s.empty()) s += '*';
        s += ring.names()[i];
        if (e > 1) s += '^' + std::to_string(e);
    }
    return s;
}

}  // namespace

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const auto& t = terms_[k];
        bool negative = t.c.sign() < 0;
        Scalar mag = negative ? -t.c : t.c;
        if (k == 0) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        std::string mono = monomial_text(t.m, *ring_);
        if (mono.empty()) {
            out += mag.to_string();
        } else {
            if (!mag.is_one()) out += mag.to_string() + '*';
            out += mono;
        }
    }
    return out;
}

Poly Poly::reduce_to(const RingPtr& ring) const {
    if (ring->nvars() != ring_->nvars()) throw Error(ErrorCode::RingMismatch, "variable count differs");
    PolyAccumulator acc(ring, terms_.size());
    for (const auto& t : terms_) acc.add_term(t.m, t.c.reduce_to(ring->field()));
    return std::move(acc).finish();
}

PolyAccumulator::PolyAccumulator(RingPtr ring, std::size_t reserve)
    : ring_(std::move(ring)), zero_(Scalar::zero(ring_->field())) {
    if (reserve) acc_.reserve(reserve);
}

void PolyAccumulator::add_term(Monomial m, const Scalar& c) {
    auto [it, fresh] = acc_.try_emplace(m.bits(), zero_);
    it->second += c;
}

void PolyAccumulator::add_product(Monomial m, const Scalar& a, const Scalar& b) {
    auto [it, fresh] = acc_.try_emplace(m.bits(), zero_);
    it->second.add_mul(a, b);
}

void PolyAccumulator::add_scaled(const Poly& p, const Scalar& c) {
    if (!same_ring(p.ring(), ring_)) throw Error(ErrorCode::RingMismatch, "accumulated polynomial from another ring");
    for (const auto& t : p.terms()) add_product(t.m, t.c, c);
}

void PolyAccumulator::add_scaled_shifted(const Poly& p, const Scalar& c, Monomial shift) {
    if (!same_ring(p.ring(), ring_)) throw Error(ErrorCode::RingMismatch, "accumulated polynomial from another ring");
    for (const auto& t : p.terms()) add_product(t.m * shift, t.c, c);
}

Poly PolyAccumulator::finish() && {
    Poly p(ring_);
    p.terms_.reserve(acc_.size());
    for (auto& [bits, c] : acc_) {
        if (!c.is_zero()) p.terms_.push_back({Monomial::from_bits(bits), std::move(c)});
    }
    std::sort(p.terms_.begin(), p.terms_.end(), term_order);
    acc_.clear();
    return p;
}

Poly exact_div_by_var(const Poly& p, std::size_t i) {
    if (i >= p.ring()->nvars()) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
    Monomial xi = Monomial::var(i);
    std::vector<Term> out;
    out.reserve(p.num_terms());
    for (const auto& t : p.terms()) {
        if (t.m.exponent(i) == 0) {
            Poly bad = Poly::monomial(p.ring(), t.m, t.c);
            throw Error(ErrorCode::NotDivisible,
                        "term " + bad.to_string() + " is not divisible by " + p.ring()->names()[i]);
        }
        out.push_back({t.m / xi, t.c});
    }
    // Dividing every term by the same monomial preserves the order.
    return Poly::from_terms(p.ring(), std::move(out));
}

Poly exact_div(const Poly& num, const Poly& den) {
    require_same(num, den);
    if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
    const Term& lead = den.terms().front();
    Scalar lead_inv = lead.c.inv();
    Poly rem = num;
    PolyAccumulator quot(num.ring());
    while (!rem.is_zero()) {
        const Term& t = rem.terms().front();
        if (!t.m.divisible_by(lead.m)) {
            throw Error(ErrorCode::NotDivisible, "division leaves a remainder (leading term " +
                                                     Poly::monomial(num.ring(), t.m, t.c).to_string() + ")");
        }
        Monomial qm = t.m / lead.m;
        Scalar qc = t.c * lead_inv;
        quot.add_term(qm, qc);
        rem -= den.times_monomial(qm).scaled(qc);
    }
    return std::move(quot).finish();
}

Poly partial_derivative(const Poly& p, std::size_t i) {
    if (i >= p.ring()->nvars()) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
    const FieldCtx& f = p.ring()->field();
    Monomial xi = Monomial::var(i);
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        unsigned e = t.m.exponent(i);
        if (e == 0) continue;
        out.push_back({t.m / xi, t.c * Scalar::from_int(e, f)});
    }
    return Poly::from_terms(p.ring(), std::move(out));
}

Scalar evaluate(const Poly& p, std::span<const Scalar> pt) {
    const auto& ring = *p.ring();
    if (pt.size() != ring.nvars()) throw Error(ErrorCode::InvalidArgument, "point has wrong number of coordinates");
    Scalar zero = Scalar::zero(ring.field()), one = Scalar::one(ring.field());
    std::vector<Scalar> local;
    local.reserve(pt.size());
    for (const auto& c : pt) local.push_back(c.reduce_to(ring.field()));
    return evaluate_in<Scalar>(p, std::span<const Scalar>(local), zero, one, [](const Scalar& c) { return c; });
}

Substitution::Substitution(const RingPtr& source, std::vector<Poly> images)
    : source_(source), images_(std::move(images)) {
    if (images_.size() != source_->nvars()) {
        throw Error(ErrorCode::InvalidArgument, "substitution needs one image per variable");
    }
    target_ = images_.front().ring();
    int d = -1;
    for (const auto& im : images_) {
        if (!same_ring(im.ring(), target_)) throw Error(ErrorCode::RingMismatch, "images live in different rings");
        if (im.is_zero()) continue;
        if (!im.is_homogeneous()) throw Error(ErrorCode::DegreeMismatch, "image " + im.to_string() + " is not homogeneous");
        if (d >= 0 && im.degree() != d) throw Error(ErrorCode::DegreeMismatch, "images have different degrees");
        d = im.degree();
    }
}

const Poly& Substitution::image_of(Monomial m) const {
    if (auto it = cache_.find(m.bits()); it != cache_.end()) return it->second;
    Poly img(target_);
    if (m.is_one()) {
        img = Poly::constant(target_, 1);
    } else {
        std::size_t k = 0;
        while (m.exponent(k) == 0) ++k;
        // unordered_map references survive rehashing.
        const Poly& rest = image_of(m / Monomial::var(k));
        img = rest * images_[k];
    }
    return cache_.emplace(m.bits(), std::move(img)).first->second;
}

Poly Substitution::apply(const Poly& p) const {
    if (!same_ring(p.ring(), source_)) throw Error(ErrorCode::RingMismatch, "substitution applied to a foreign polynomial");
    PolyAccumulator acc(target_);
    for (const auto& t : p.terms()) acc.add_scaled(image_of(t.m), t.c.reduce_to(target_->field()));
    return std::move(acc).finish();
}

Poly substitute_linear(const Poly& p, const std::vector<Poly>& images) {
    Substitution s(p.ring(), images);
    return s.apply(p);
}

LinearForm::LinearForm(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    if (std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_zero(); })) {
        throw Error(ErrorCode::InvalidArgument, "linear form with all coefficients zero");
    }
}

LinearForm LinearForm::variable(std::size_t nvars, std::size_t i, const FieldCtx& field) {
    std::vector<Scalar> c(nvars, Scalar::zero(field));
    c.at(i) = Scalar::one(field);
    return LinearForm(std::move(c));
}

LinearForm LinearForm::from_poly(const Poly& p) {
    if (p.degree() != 1 || !p.is_homogeneous()) {
        throw Error(ErrorCode::DegreeMismatch, "not a linear form: " + p.to_string());
    }
    const auto& ring = *p.ring();
    std::vector<Scalar> c(ring.nvars(), Scalar::zero(ring.field()));
    for (const auto& t : p.terms()) {
        for (std::size_t i = 0; i < ring.nvars(); ++i) {
            if (t.m.exponent(i) == 1) c[i] = t.c;
        }
    }
    return LinearForm(std::move(c));
}

Scalar LinearForm::evaluate(std::span<const Scalar> pt) const {
    if (pt.size() != coeffs_.size()) throw Error(ErrorCode::InvalidArgument, "point has wrong number of coordinates");
    Scalar acc = Scalar::zero(coeffs_.front().ctx());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (!coeffs_[i].is_zero()) acc.add_mul(coeffs_[i], pt[i]);
    }
    return acc;
}

Poly LinearForm::to_poly(const RingPtr& ring) const {
    if (ring->nvars() != coeffs_.size()) throw Error(ErrorCode::RingMismatch, "linear form size differs from ring");
    std::vector<Term> t;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) t.push_back({Monomial::var(i), coeffs_[i]});
    return Poly::from_terms(ring, std::move(t));
}

}  // namespace veneroni
