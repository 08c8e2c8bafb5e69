#include <cctype>

#include "veneroni/mpoly.hpp"

namespace veneroni {

namespace {

class PolyParser {
   public:
    PolyParser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring), acc_(ring) {}

    Poly run() {
        skip_ws();
        if (at_end()) throw ParseError(pos_, "empty polynomial");
        bool first = true;
        while (true) {
            skip_ws();
            bool negative = false;
            if (peek('+') || peek('-')) {
                negative = text_[pos_] == '-';
                ++pos_;
                skip_ws();
            } else if (!first) {
                throw ParseError(pos_, "expected '+' or '-'");
            }
            parse_term(negative);
            first = false;
            skip_ws();
            if (at_end()) break;
        }
        return std::move(acc_).finish();
    }

   private:
    bool at_end() const { return pos_ >= text_.size(); }
    bool peek(char c) const { return !at_end() && text_[pos_] == c; }
    bool peek_digit() const { return !at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }
    bool peek_ident() const {
        return !at_end() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_');
    }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view digits() {
        std::size_t start = pos_;
        while (peek_digit()) ++pos_;
        if (start == pos_) throw ParseError(pos_, "expected a number");
        return text_.substr(start, pos_ - start);
    }

    Scalar coefficient() {
        const FieldCtx& f = ring_->field();
        mpz_class num(std::string(digits()), 10);
        skip_ws();
        if (!peek('/')) return Scalar::from_mpz(num, f);
        ++pos_;
        skip_ws();
        std::size_t den_pos = pos_;
        mpz_class den(std::string(digits()), 10);
        if (den == 0) throw ParseError(den_pos, "zero denominator");
        Scalar d = Scalar::from_mpz(den, f);
        if (d.is_zero()) throw ParseError(den_pos, "denominator vanishes in " + f.to_string());
        return Scalar::from_mpz(num, f) / d;
    }

    Monomial power() {
        std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        auto name = text_.substr(start, pos_ - start);
        auto idx = ring_->index_of(name);
        if (!idx) throw ParseError(start, "unknown variable '" + std::string(name) + "'");
        skip_ws();
        unsigned e = 1;
        if (peek('^')) {
            ++pos_;
            skip_ws();
            std::size_t epos = pos_;
            auto d = digits();
            if (d.size() > 3 || std::stoul(std::string(d)) > kMaxDegree) throw ParseError(epos, "exponent too large");
            e = static_cast<unsigned>(std::stoul(std::string(d)));
        }
        return Monomial::var(*idx, e);
    }

    Monomial monomial() {
        Monomial m = power();
        while (true) {
            skip_ws();
            if (!peek('*')) break;
            ++pos_;
            skip_ws();
            if (!peek_ident()) throw ParseError(pos_, "expected a variable");
            Monomial next = power();
            if (m.degree() + next.degree() > kMaxDegree) throw ParseError(pos_, "degree too large");
            m = m * next;
        }
        return m;
    }

    void parse_term(bool negative) {
        Scalar c = Scalar::one(ring_->field());
        Monomial m;
        if (peek_digit()) {
            c = coefficient();
            skip_ws();
            if (peek('*')) {
                ++pos_;
                skip_ws();
                if (!peek_ident()) throw ParseError(pos_, "expected a variable");
                m = monomial();
            } else if (peek_ident()) {
                m = monomial();
            }
        } else if (peek_ident()) {
            m = monomial();
        } else {
            throw ParseError(pos_, at_end() ? "unexpected end of input" : "unexpected character");
        }
        acc_.add_term(m, negative ? -c : c);
    }

    std::string_view text_;
    RingPtr ring_;
    PolyAccumulator acc_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const RingPtr& ring) { return PolyParser(text, ring).run(); }

}  // namespace veneroni
