#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "kakeya/errors.hpp"

namespace kakeya {

// Unit-modulus complex values produced by additive characters.
using UnitComplex = std::complex<double>;

// Description of F_p (degree 1) or GF(p^2) = F_p[t]/(t^2 + m1 t + m0)
// (degree 2). p is an odd prime; the modulus must have no root in F_p.
struct FieldSpec {
    int p = 3;
    int degree = 1;
    std::array<int, 2> modulus{0, 0}; // {m0, m1}, only meaningful for degree 2

    static FieldSpec prime(int p);
    // t^2 - s with s the least quadratic non-residue mod p.
    static FieldSpec quadratic(int p);
    static FieldSpec quadratic(int p, int m0, int m1);

    int q() const { return degree == 2 ? p * p : p; }
    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Exact arithmetic on canonical element indices.
//
// Elements are stored as machine integers in [0, q): for degree 1 the index
// is the residue itself; for degree 2 the element c0 + c1*t has index
// c0 + c1*p. All operations reduce eagerly, so equality of elements is
// equality of indices.
class Field {
public:
    explicit Field(FieldSpec spec);

    const FieldSpec& spec() const { return spec_; }
    int p() const { return spec_.p; }
    int degree() const { return spec_.degree; }
    int q() const { return q_; }

    int zero() const { return 0; }
    int one() const { return 1; }
    // Build the element c0 + c1*t from arbitrary integer residues.
    int element(long long c0, long long c1 = 0) const;
    int coord(int a, int i) const; // i-th residue coordinate of index a

    int add(int a, int b) const {
        return tables_ ? add_tab_[a * q_ + b] : add_slow(a, b);
    }
    int sub(int a, int b) const {
        return tables_ ? sub_tab_[a * q_ + b] : sub_slow(a, b);
    }
    int neg(int a) const { return tables_ ? neg_tab_[a] : neg_slow(a); }
    int mul(int a, int b) const {
        return tables_ ? mul_tab_[a * q_ + b] : mul_slow(a, b);
    }
    int inv(int a) const; // DivisionByZero on a == 0
    int div(int a, int b) const { return mul(a, inv(b)); }
    int pow(int a, long long e) const;

    // Frobenius involution z -> z^p and Im(z) = (z - conj(z)) / 2.
    // Degree-2 fields only; UsageError otherwise.
    int conj(int a) const;
    int im(int a) const;
    bool in_prime_subfield(int a) const { return a < spec_.p; }

    bool is_square(int a) const; // degree-1 only
    static int least_nonresidue(int p);

    // Additive character e(x) = exp(2 pi i x / p) and the quadratic Gauss sum
    // S(y) = sum_x e(y x^2). Degree-1 fields only; UnsupportedError otherwise.
    UnitComplex char_e(int x) const;
    UnitComplex gauss_sum(int y) const;

    friend bool operator==(const Field& a, const Field& b) {
        return a.spec_ == b.spec_;
    }

private:
    int add_slow(int a, int b) const;
    int sub_slow(int a, int b) const;
    int neg_slow(int a) const;
    int mul_slow(int a, int b) const;
    int inv_slow(int a) const;
    void build_tables();

    FieldSpec spec_;
    int q_ = 3;
    bool tables_ = false;
    std::vector<int16_t> add_tab_, sub_tab_, mul_tab_;
    std::vector<int16_t> neg_tab_, inv_tab_, conj_tab_, im_tab_;
};

// Operator-sugar element bound to its field; throws UsageError when operands
// come from different field specs.
class Fe {
public:
    Fe(const Field& f, int index) : f_(&f), v_(index) {
        if (index < 0 || index >= f.q()) throw UsageError("Fe: index out of range");
    }

    int index() const { return v_; }
    int coord(int i) const { return f_->coord(v_, i); }
    const Field& field() const { return *f_; }

    friend Fe operator+(const Fe& a, const Fe& b) { return a.with(a.f_->add(a.v_, same(a, b))); }
    friend Fe operator-(const Fe& a, const Fe& b) { return a.with(a.f_->sub(a.v_, same(a, b))); }
    friend Fe operator*(const Fe& a, const Fe& b) { return a.with(a.f_->mul(a.v_, same(a, b))); }
    friend Fe operator/(const Fe& a, const Fe& b) { return a.with(a.f_->div(a.v_, same(a, b))); }
    Fe operator-() const { return with(f_->neg(v_)); }
    Fe inv() const { return with(f_->inv(v_)); }
    Fe pow(long long e) const { return with(f_->pow(v_, e)); }
    Fe conj() const { return with(f_->conj(v_)); }
    Fe im() const { return with(f_->im(v_)); }

    friend bool operator==(const Fe& a, const Fe& b) {
        return a.f_->spec() == b.f_->spec() && a.v_ == b.v_;
    }

private:
    Fe with(int v) const { return Fe(*f_, v); }
    static int same(const Fe& a, const Fe& b) {
        if (!(a.f_->spec() == b.f_->spec()))
            throw UsageError("Fe: operands from different fields");
        return b.v_;
    }
    const Field* f_;
    int v_;
};

} // namespace kakeya
