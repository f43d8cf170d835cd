#include "wedgelift/square_class.hpp"

namespace wedgelift {

SquareClass SquareClass::operator*(const SquareClass& o) const {
    // for squarefree a, b: [ab] = (a/g)(b/g) with g = gcd(a, b), and the
    // result is again squarefree with no factoring needed
    Int g;
    mpz_gcd(g.get_mpz_t(), rep_.get_mpz_t(), o.rep_.get_mpz_t());
    return SquareClass((rep_ / g) * (o.rep_ / g));
}

SquareClass square_class(const Rat& x) {
    if (x == 0) fail(errc::zero_input, "square class of zero");
    // [num/den] = [num][den] since den^2 is a square; reducing the two parts
    // separately keeps the factorizations smaller
    return SquareClass(squarefree_part(x.get_num())) *
           SquareClass(squarefree_part(x.get_den()));
}

}  // namespace wedgelift
