#pragma once

// Angles on the unit circle. A rational angle stores theta/pi as an exact
// reduced fraction; an irrational one stores theta at 256 bits together with
// a user-declared irrationality flag. Irrationality is never inferred from
// the float value.

#include "mik/real.hpp"

#include <compare>
#include <utility>

namespace mik {

class Angle {
public:
    static Angle rational_pi(long long num, long long den) {
        if (den == 0) throw domain_error("Angle: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = gcd_ll(num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num <= 0 || num >= 2 * den)
            throw domain_error("Angle: theta/pi must lie strictly in (0,2)");
        if (den > 1'000'000'000)
            throw domain_error("Angle: denominator exceeds 1e9 (iterate arithmetic bound)");
        Angle a;
        a.rational_ = true;
        a.num_ = num;
        a.den_ = den;
        a.value_ = pi() * num / den;
        return a;
    }

    static Angle irrational(const real_t& theta) {
        if (!(theta > 0) || !(theta < two_pi()))
            throw domain_error("Angle: theta must lie strictly in (0,2*pi)");
        Angle a;
        a.rational_ = false;
        a.value_ = theta;
        return a;
    }

    bool is_rational() const { return rational_; }
    long long num() const { return num_; }
    long long den() const { return den_; }
    const real_t& value() const { return value_; }

    bool is_pi() const { return rational_ && num_ == den_; }

    // theta/pi as a real
    real_t ratio() const {
        return rational_ ? real_t(num_) / den_ : value_ / pi();
    }

    // conjugate point angle 2*pi - theta (exact for rationals)
    Angle conjugate() const {
        if (rational_) return rational_pi(2 * den_ - num_, den_);
        return irrational(two_pi() - value_);
    }

    friend bool operator==(const Angle& a, const Angle& b) {
        if (a.rational_ != b.rational_) return false;
        if (a.rational_) return a.num_ == b.num_ && a.den_ == b.den_;
        return a.value_ == b.value_;
    }
    friend bool operator<(const Angle& a, const Angle& b) {
        if (a.value_ != b.value_) return a.value_ < b.value_;
        if (a.rational_ != b.rational_) return b.rational_;
        return false;
    }

private:
    bool rational_ = false;
    long long num_ = 0, den_ = 1;
    real_t value_{};
};

// A point on the unit circle: 1, -1, or e^{i*theta} for a general Angle.
class CirclePoint {
public:
    enum class Kind { one, minus_one, angle };

    static CirclePoint one() { return CirclePoint(Kind::one); }
    static CirclePoint minus_one() { return CirclePoint(Kind::minus_one); }
    static CirclePoint at(const Angle& theta) {
        if (theta.is_pi()) return minus_one();
        CirclePoint p(Kind::angle);
        p.angle_ = theta;
        return p;
    }

    Kind kind() const { return kind_; }
    const Angle& angle() const { return angle_; }

    // phase in (0, 2*pi]; 1 maps to phase 0
    real_t phase() const {
        switch (kind_) {
            case Kind::one: return real_t(0);
            case Kind::minus_one: return pi();
            default: return angle_.value();
        }
    }

    CirclePoint conjugate() const {
        if (kind_ != Kind::angle) return *this;
        return at(angle_.conjugate());
    }

    friend bool operator==(const CirclePoint& a, const CirclePoint& b) {
        if (a.kind_ != b.kind_) return false;
        if (a.kind_ != Kind::angle) return true;
        return a.angle_ == b.angle_;
    }
    friend bool operator<(const CirclePoint& a, const CirclePoint& b) {
        if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
        if (a.kind_ != Kind::angle) return false;
        return a.angle_ < b.angle_;
    }

private:
    explicit CirclePoint(Kind k) : kind_(k) {}
    Kind kind_;
    Angle angle_ = Angle::rational_pi(1, 1);  // unused unless kind == angle
};

}  // namespace mik
