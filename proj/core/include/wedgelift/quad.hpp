#pragma once

#include <optional>
#include <string>

#include "wedgelift/rational.hpp"

namespace wedgelift {

/// Element a + b*sqrt(d) of the quadratic extension Q(sqrt d), d squarefree,
/// d != 0, 1. Values only combine when their discriminants agree; a rational
/// constant is re-tagged on the fly (d = 0 marks a plain rational).
class QuadScalar {
public:
    QuadScalar() : d_(0), a_(0), b_(0) {}
    QuadScalar(const Rat& rational) : d_(0), a_(rational), b_(0) {}
    QuadScalar(const Int& d, const Rat& a, const Rat& b) : d_(d), a_(a), b_(b) {
        if (d == 1) fail(errc::bad_input, "quadratic discriminant must not be 1");
    }

    const Int& d() const { return d_; }
    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    /// Galois conjugate a - b*sqrt(d).
    QuadScalar conj() const { return QuadScalar(d_, a_, Rat(-b_)); }

    /// Field norm a^2 - d b^2; zero iff the element is zero.
    Rat norm() const { return a_ * a_ - Rat(d_) * b_ * b_; }

    QuadScalar operator-() const { return QuadScalar(d_, Rat(-a_), Rat(-b_)); }
    friend QuadScalar operator+(const QuadScalar& x, const QuadScalar& y);
    friend QuadScalar operator-(const QuadScalar& x, const QuadScalar& y);
    friend QuadScalar operator*(const QuadScalar& x, const QuadScalar& y);
    friend bool operator==(const QuadScalar& x, const QuadScalar& y);
    friend bool operator!=(const QuadScalar& x, const QuadScalar& y) {
        return !(x == y);
    }

    QuadScalar inverse() const;

    std::string str() const;

private:
    // merged discriminant for a binary op; rationals adopt the other side's d
    static Int join(const QuadScalar& x, const QuadScalar& y);

    Int d_;
    Rat a_, b_;
};

/// Solves s^2 = t over Q(sqrt d) for rational t: either sqrt(t) is rational,
/// or t/d is a rational square and s is a pure sqrt(d)-multiple.
std::optional<QuadScalar> quad_sqrt_of_rational(const Rat& t, const Int& d);

}  // namespace wedgelift
