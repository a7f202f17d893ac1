#pragma once

// Pseudo-complex (split-complex) numbers a + I b with I^2 = 1.
//
// The ring splits along the idempotents sigma_+ = (1 + I)/2 and
// sigma_- = (1 - I)/2: every p = a + I b equals
// Gamma_+(p) sigma_+ + Gamma_-(p) sigma_-, with Gamma_+-(a + I b) = a +- b
// the only two non-trivial ring homomorphisms onto the reals. Heat lives in
// the Gamma_+ branch and antiheat in Gamma_-.
//
// Values are stored in these zero-divisor coordinates (Gamma_+, Gamma_-), so
// every ring operation acts branchwise with a single rounding per branch;
// re() and im() are derived views.

#include <iosfwd>

namespace heatfield::pring {

enum class Branch { Plus, Minus };

class PseudoComplex {
public:
    constexpr PseudoComplex() noexcept = default;
    /// a + I b. Throws Error(NonFinite) unless a, b and a +- b are finite.
    PseudoComplex(double re, double im = 0.0);

    /// u_plus sigma_+ + u_minus sigma_-. Throws Error(NonFinite) likewise.
    static PseudoComplex from_branches(double u_plus, double u_minus);

    static PseudoComplex unit_i() { return from_branches(1.0, -1.0); }
    static PseudoComplex sigma_plus() { return from_branches(1.0, 0.0); }
    static PseudoComplex sigma_minus() { return from_branches(0.0, 1.0); }

    constexpr double re() const noexcept { return 0.5 * plus_ + 0.5 * minus_; }
    constexpr double im() const noexcept { return 0.5 * plus_ - 0.5 * minus_; }
    constexpr double branch_plus() const noexcept { return plus_; }
    constexpr double branch_minus() const noexcept { return minus_; }

    PseudoComplex& operator+=(const PseudoComplex& q);
    PseudoComplex& operator-=(const PseudoComplex& q);
    PseudoComplex& operator*=(const PseudoComplex& q);

    friend bool operator==(const PseudoComplex&, const PseudoComplex&) = default;

private:
    double plus_ = 0.0;
    double minus_ = 0.0;
};

PseudoComplex operator+(PseudoComplex p, const PseudoComplex& q);
PseudoComplex operator-(PseudoComplex p, const PseudoComplex& q);
PseudoComplex operator*(PseudoComplex p, const PseudoComplex& q);
PseudoComplex operator-(const PseudoComplex& p);

constexpr double gamma_plus(const PseudoComplex& p) noexcept { return p.branch_plus(); }
constexpr double gamma_minus(const PseudoComplex& p) noexcept { return p.branch_minus(); }
constexpr double gamma_project(const PseudoComplex& p, Branch b) noexcept {
    return b == Branch::Plus ? gamma_plus(p) : gamma_minus(p);
}

/// u_plus sigma_+ + u_minus sigma_-.
PseudoComplex zd_compose(double u_plus, double u_minus);

/// Involution a + I b -> a - I b; swaps sigma_+ and sigma_-.
PseudoComplex conj(const PseudoComplex& p);

/// Exact test a == +-b (a branch is exactly zero); no tolerance.
constexpr bool is_zero_divisor(const PseudoComplex& p) noexcept {
    return p.branch_plus() == 0.0 || p.branch_minus() == 0.0;
}

/// Branchwise exponential: Gamma_+-(exp p) = exp(Gamma_+- p).
PseudoComplex exp(const PseudoComplex& p);

/// Multiplicative inverse; throws Error(ZeroDivisor) for zero divisors.
PseudoComplex inverse(const PseudoComplex& p);

std::ostream& operator<<(std::ostream& os, const PseudoComplex& p);

}  // namespace heatfield::pring
