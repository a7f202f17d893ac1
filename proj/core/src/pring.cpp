#include "heatfield/pring.hpp"

#include <cmath>
#include <ostream>

#include "heatfield/errors.hpp"

namespace heatfield::pring {

namespace {

void require_finite(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b))
        detail::fail(ErrorCode::NonFinite, "pseudo-complex component is not finite");
}

}  // namespace

PseudoComplex::PseudoComplex(double re, double im) : plus_(re + im), minus_(re - im) {
    require_finite(re, im);
    require_finite(plus_, minus_);
}

PseudoComplex PseudoComplex::from_branches(double u_plus, double u_minus) {
    require_finite(u_plus, u_minus);
    PseudoComplex p;
    p.plus_ = u_plus;
    p.minus_ = u_minus;
    return p;
}

PseudoComplex& PseudoComplex::operator+=(const PseudoComplex& q) {
    return *this = from_branches(plus_ + q.plus_, minus_ + q.minus_);
}

PseudoComplex& PseudoComplex::operator-=(const PseudoComplex& q) {
    return *this = from_branches(plus_ - q.plus_, minus_ - q.minus_);
}

// (a + I b)(c + I d) = (ac + bd) + I (ad + bc), i.e. branchwise products.
PseudoComplex& PseudoComplex::operator*=(const PseudoComplex& q) {
    return *this = from_branches(plus_ * q.plus_, minus_ * q.minus_);
}

PseudoComplex operator+(PseudoComplex p, const PseudoComplex& q) { return p += q; }
PseudoComplex operator-(PseudoComplex p, const PseudoComplex& q) { return p -= q; }
PseudoComplex operator*(PseudoComplex p, const PseudoComplex& q) { return p *= q; }
PseudoComplex operator-(const PseudoComplex& p) {
    return PseudoComplex::from_branches(-gamma_plus(p), -gamma_minus(p));
}

PseudoComplex zd_compose(double u_plus, double u_minus) {
    return PseudoComplex::from_branches(u_plus, u_minus);
}

PseudoComplex conj(const PseudoComplex& p) {
    return PseudoComplex::from_branches(gamma_minus(p), gamma_plus(p));
}

PseudoComplex exp(const PseudoComplex& p) {
    return PseudoComplex::from_branches(std::exp(gamma_plus(p)), std::exp(gamma_minus(p)));
}

PseudoComplex inverse(const PseudoComplex& p) {
    if (is_zero_divisor(p))
        detail::fail(ErrorCode::ZeroDivisor, "element lies in a maximal ideal and has no inverse");
    return PseudoComplex::from_branches(1.0 / gamma_plus(p), 1.0 / gamma_minus(p));
}

std::ostream& operator<<(std::ostream& os, const PseudoComplex& p) {
    return os << p.re() << (p.im() < 0 ? " - I*" : " + I*") << std::abs(p.im());
}

}  // namespace heatfield::pring
