#include "shannon/quadratic.hpp"

#include <cctype>

#include "shannon/error.hpp"

namespace shannon {

namespace {

Integer isqrt(const Integer& n) {
    Integer out;
    mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
    return out;
}

bool is_square(const Integer& n) { return mpz_perfect_square_p(n.get_mpz_t()) != 0; }

// Splits n > 0 into s^2 * f with f square-free (trial division; a cofactor
// left after the trial bound is tested for being a perfect square).
std::pair<Integer, Integer> split_square(Integer n) {
    Integer s = 1;
    for (unsigned long p = 2; p < 1'000'000; ++p) {
        Integer pp = Integer(p) * p;
        if (pp > n) break;
        while (n % pp == 0) {
            n /= pp;
            s *= p;
        }
    }
    if (n > 1 && is_square(n)) {
        Integer root = isqrt(n);
        s *= root;
        n = 1;
    }
    return {s, n};
}

class SigmaParser {
public:
    explicit SigmaParser(std::string_view text) : text_(text) {}

    QuadraticIrrational run() {
        QuadraticIrrational v = expression();
        skip();
        if (pos_ != text_.size()) error("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorCode::Parse, "quadratic irrational '" + std::string(text_) + "': " + what);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Integer integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) error("expected an integer");
        return Integer(std::string(text_.substr(start, pos_ - start)), 10);
    }

    QuadraticIrrational expression() {
        QuadraticIrrational acc = term();
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    QuadraticIrrational term() {
        QuadraticIrrational acc = factor();
        for (;;) {
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                QuadraticIrrational den = factor();
                if (den.sign() == 0) error("division by zero");
                acc /= den;
            } else {
                return acc;
            }
        }
    }

    QuadraticIrrational factor() {
        if (accept('-')) return -factor();
        if (accept('+')) return factor();
        if (accept('(')) {
            QuadraticIrrational v = expression();
            if (!accept(')')) error("expected ')'");
            return v;
        }
        skip();
        if (text_.substr(pos_, 4) == "sqrt") {
            pos_ += 4;
            if (!accept('(')) error("expected '(' after sqrt");
            Integer radicand = integer();
            if (!accept(')')) error("expected ')'");
            return QuadraticIrrational::sqrt(radicand);
        }
        return QuadraticIrrational(Rational(integer()));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

QuadraticIrrational::QuadraticIrrational(const Rational& value)
    : p_(value.get_num()), q_(0), d_(1), r_(value.get_den()) {}

QuadraticIrrational::QuadraticIrrational(Integer p, Integer q, Integer radicand, Integer r)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(radicand)), r_(std::move(r)) {
    if (r_ == 0) fail(ErrorCode::DomainMismatch, "zero denominator");
    if (q_ != 0 && d_ <= 0) fail(ErrorCode::DomainMismatch, "radicand must be positive");
    canonicalize();
}

QuadraticIrrational QuadraticIrrational::sqrt(const Integer& radicand) {
    return QuadraticIrrational(0, 1, radicand, 1);
}

QuadraticIrrational QuadraticIrrational::golden_ratio() { return QuadraticIrrational(1, 1, 5, 2); }

QuadraticIrrational QuadraticIrrational::parse(std::string_view text) { return SigmaParser(text).run(); }

void QuadraticIrrational::canonicalize() {
    if (q_ != 0) {
        auto [s, f] = split_square(d_);
        q_ *= s;
        d_ = f;
        if (d_ == 1) {
            p_ += q_;
            q_ = 0;
        }
    }
    if (q_ == 0) d_ = 1;
    if (r_ < 0) {
        p_ = -p_;
        q_ = -q_;
        r_ = -r_;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r_.get_mpz_t());
    if (g > 1) {
        p_ /= g;
        q_ /= g;
        r_ /= g;
    }
}

void QuadraticIrrational::check_field(const QuadraticIrrational& other) const {
    if (q_ != 0 && other.q_ != 0 && d_ != other.d_) {
        fail(ErrorCode::DomainMismatch, "values from different quadratic fields: sqrt(" + d_.get_str() + ") and sqrt(" +
                                            other.d_.get_str() + ")");
    }
}

Rational QuadraticIrrational::to_rational() const {
    if (q_ != 0) fail(ErrorCode::DomainMismatch, to_string() + " is irrational");
    Rational out(p_, r_);
    out.canonicalize();
    return out;
}

int QuadraticIrrational::sign() const {
    int sp = sgn(p_);
    int sq = sgn(q_);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    Integer lhs = p_ * p_;
    Integer rhs = q_ * q_ * d_;
    // irrational, so never equal
    return lhs > rhs ? sp : sq;
}

Integer QuadraticIrrational::floor() const {
    Integer t;
    if (q_ == 0) {
        t = 0;
    } else {
        Integer s = isqrt(q_ * q_ * d_);
        t = q_ > 0 ? s : Integer(-s - 1);
    }
    Integer out;
    Integer num = p_ + t;
    mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), r_.get_mpz_t());
    return out;
}

QuadraticIrrational QuadraticIrrational::fractional_part() const { return *this - QuadraticIrrational(Rational(floor())); }

Rational QuadraticIrrational::lower_bound(unsigned bits) const {
    if (q_ == 0) return to_rational();
    QuadraticIrrational scaled = *this * QuadraticIrrational(pow2(bits));
    Rational out(scaled.floor());
    out /= pow2(bits);
    return out;
}

Rational QuadraticIrrational::upper_bound(unsigned bits) const {
    if (q_ == 0) return to_rational();
    return lower_bound(bits) + pow2(-static_cast<long>(bits));
}

double QuadraticIrrational::to_double() const { return lower_bound(80).get_d(); }

QuadraticIrrational QuadraticIrrational::operator-() const {
    QuadraticIrrational out(*this);
    out.p_ = -out.p_;
    out.q_ = -out.q_;
    return out;
}

QuadraticIrrational& QuadraticIrrational::operator+=(const QuadraticIrrational& o) {
    check_field(o);
    Integer d = q_ != 0 ? d_ : o.d_;
    Integer p = p_ * o.r_ + o.p_ * r_;
    Integer q = q_ * o.r_ + o.q_ * r_;
    Integer r = r_ * o.r_;
    *this = QuadraticIrrational(p, q, q == 0 ? Integer(1) : d, r);
    return *this;
}

QuadraticIrrational& QuadraticIrrational::operator-=(const QuadraticIrrational& o) { return *this += -o; }

QuadraticIrrational& QuadraticIrrational::operator*=(const QuadraticIrrational& o) {
    check_field(o);
    Integer d = q_ != 0 ? d_ : o.d_;
    Integer p = p_ * o.p_ + q_ * o.q_ * d;
    Integer q = p_ * o.q_ + o.p_ * q_;
    Integer r = r_ * o.r_;
    *this = QuadraticIrrational(p, q, q == 0 ? Integer(1) : d, r);
    return *this;
}

QuadraticIrrational& QuadraticIrrational::operator/=(const QuadraticIrrational& o) {
    check_field(o);
    if (o.sign() == 0) fail(ErrorCode::DomainMismatch, "division by zero");
    // 1 / ((a + b*sqrt(D))/c) = c*(a - b*sqrt(D)) / (a^2 - b^2 D)
    Integer norm = o.p_ * o.p_ - o.q_ * o.q_ * o.d_;
    QuadraticIrrational inverse(o.r_ * o.p_, -o.r_ * o.q_, o.q_ == 0 ? Integer(1) : o.d_, norm);
    return *this *= inverse;
}

QuadraticIrrational operator*(const Integer& k, const QuadraticIrrational& x) { return QuadraticIrrational(Rational(k)) * x; }

std::string QuadraticIrrational::to_string() const {
    if (q_ == 0) return shannon::to_string(to_rational());
    std::string root = "sqrt(" + d_.get_str() + ")";
    std::string irr;
    Integer mag = q_ < 0 ? Integer(-q_) : q_;
    irr = mag == 1 ? root : mag.get_str() + "*" + root;
    std::string num;
    if (p_ == 0) {
        num = (q_ < 0 ? "-" : "") + irr;
    } else {
        num = p_.get_str() + (q_ < 0 ? " - " : " + ") + irr;
    }
    if (r_ == 1) return num;
    return "(" + num + ")/" + r_.get_str();
}

} // namespace shannon
