#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "shannon/rational.hpp"

namespace shannon {

/// Exact element (p + q*sqrt(D)) / r of a real quadratic field, or a
/// rational number (q = 0, stored with D = 1).
///
/// Canonical form: r > 0, gcd(p, q, r) = 1, D square-free and > 1 whenever
/// q != 0. Two values with nonzero irrational parts must share D for any
/// binary operation; mixing fields throws DomainMismatch.
class QuadraticIrrational {
public:
    QuadraticIrrational() : QuadraticIrrational(Rational(0)) {}
    QuadraticIrrational(const Rational& value);  // NOLINT(google-explicit-constructor)
    QuadraticIrrational(Integer p, Integer q, Integer radicand, Integer r);

    static QuadraticIrrational sqrt(const Integer& radicand);
    static QuadraticIrrational golden_ratio();

    /// Accepts "(p + q*sqrt(D))/r" and its abbreviations: "sqrt(D)",
    /// "q*sqrt(D)", "p - sqrt(D)", "(p+sqrt(D))/r", plain rationals.
    static QuadraticIrrational parse(std::string_view text);

    const Integer& p() const noexcept { return p_; }
    const Integer& q() const noexcept { return q_; }
    const Integer& radicand() const noexcept { return d_; }
    const Integer& r() const noexcept { return r_; }

    bool is_rational() const noexcept { return q_ == 0; }
    /// Precondition: is_rational().
    Rational to_rational() const;

    int sign() const;
    Integer floor() const;
    QuadraticIrrational fractional_part() const;

    /// Rational bounds lo <= value <= hi with hi - lo <= 2^-bits.
    Rational lower_bound(unsigned bits = 96) const;
    Rational upper_bound(unsigned bits = 96) const;
    double to_double() const;

    QuadraticIrrational operator-() const;
    QuadraticIrrational& operator+=(const QuadraticIrrational& other);
    QuadraticIrrational& operator-=(const QuadraticIrrational& other);
    QuadraticIrrational& operator*=(const QuadraticIrrational& other);
    QuadraticIrrational& operator/=(const QuadraticIrrational& other);

    friend QuadraticIrrational operator+(QuadraticIrrational a, const QuadraticIrrational& b) { return a += b; }
    friend QuadraticIrrational operator-(QuadraticIrrational a, const QuadraticIrrational& b) { return a -= b; }
    friend QuadraticIrrational operator*(QuadraticIrrational a, const QuadraticIrrational& b) { return a *= b; }
    friend QuadraticIrrational operator/(QuadraticIrrational a, const QuadraticIrrational& b) { return a /= b; }

    friend bool operator==(const QuadraticIrrational& a, const QuadraticIrrational& b) {
        return a.p_ == b.p_ && a.q_ == b.q_ && a.r_ == b.r_ && (a.q_ == 0 || a.d_ == b.d_);
    }
    friend std::strong_ordering operator<=>(const QuadraticIrrational& a, const QuadraticIrrational& b) {
        int s = (a - b).sign();
        return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    std::string to_string() const;

private:
    void canonicalize();
    void check_field(const QuadraticIrrational& other) const;

    Integer p_;
    Integer q_;
    Integer d_;
    Integer r_;
};

using QI = QuadraticIrrational;

/// Exact value of an integer combination; convenience for `k * x`.
QuadraticIrrational operator*(const Integer& k, const QuadraticIrrational& x);

} // namespace shannon
