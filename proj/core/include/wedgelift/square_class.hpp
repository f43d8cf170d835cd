#pragma once

#include <string>

#include "wedgelift/rational.hpp"

namespace wedgelift {

/// A class in Q^*/(Q^*)^2, stored as its unique squarefree integer
/// representative (sign significant). Two rationals lie in the same class
/// iff their product is a nonzero square.
class SquareClass {
public:
    SquareClass() : rep_(1) {}
    explicit SquareClass(const Int& squarefree_rep) : rep_(squarefree_rep) {}

    const Int& representative() const { return rep_; }
    bool is_trivial() const { return rep_ == 1; }

    friend bool operator==(const SquareClass& a, const SquareClass& b) {
        return a.rep_ == b.rep_;
    }
    friend bool operator!=(const SquareClass& a, const SquareClass& b) {
        return !(a == b);
    }

    SquareClass operator*(const SquareClass& o) const;

    std::string str() const { return rep_.get_str(); }

private:
    Int rep_;
};

/// square_class(x): the squarefree integer representative of x in Q^*/(Q^*)^2.
/// Errors with zero_input if x = 0.
SquareClass square_class(const Rat& x);

}  // namespace wedgelift
