#include "wedgelift/quad.hpp"

#include "wedgelift/square_class.hpp"

namespace wedgelift {

Int QuadScalar::join(const QuadScalar& x, const QuadScalar& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0) return x.d_;
    if (x.d_ != y.d_)
        fail(errc::bad_input, "mixed quadratic discriminants " + x.d_.get_str() +
                                  " and " + y.d_.get_str());
    return x.d_;
}

QuadScalar operator+(const QuadScalar& x, const QuadScalar& y) {
    Int d = QuadScalar::join(x, y);
    QuadScalar z(d == 0 ? QuadScalar(Rat(0)) : QuadScalar(d, Rat(0), Rat(0)));
    z.a_ = x.a_ + y.a_;
    z.b_ = x.b_ + y.b_;
    return z;
}

QuadScalar operator-(const QuadScalar& x, const QuadScalar& y) {
    return x + (-y);
}

QuadScalar operator*(const QuadScalar& x, const QuadScalar& y) {
    Int d = QuadScalar::join(x, y);
    Rat a = x.a_ * y.a_;
    if (x.b_ != 0 && y.b_ != 0) a += Rat(d) * x.b_ * y.b_;
    Rat b = x.a_ * y.b_ + x.b_ * y.a_;
    if (d == 0) return QuadScalar(a);
    return QuadScalar(d, a, b);
}

bool operator==(const QuadScalar& x, const QuadScalar& y) {
    if (x.a_ != y.a_ || x.b_ != y.b_) return false;
    // discriminants may differ only when one side is rational (b = 0)
    return x.b_ == 0 || x.d_ == y.d_ || x.d_ == 0 || y.d_ == 0;
}

QuadScalar QuadScalar::inverse() const {
    Rat n = norm();
    if (n == 0) fail(errc::singular_input, "inverse of zero in Q(sqrt d)");
    return QuadScalar(d_, a_ / n, -b_ / n);
}

std::string QuadScalar::str() const {
    if (b_ == 0) return rat_to_string(a_);
    return rat_to_string(a_) + "+" + rat_to_string(b_) + "*sqrt(" +
           d_.get_str() + ")";
}

std::optional<QuadScalar> quad_sqrt_of_rational(const Rat& t, const Int& d) {
    if (auto s = rat_sqrt(t)) return QuadScalar(d, *s, Rat(0));
    if (auto s = rat_sqrt(t / Rat(d))) return QuadScalar(d, Rat(0), *s);
    return std::nullopt;
}

}  // namespace wedgelift
