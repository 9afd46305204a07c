#pragma once

// Numerical K-theory of a smooth projective curve of genus g: classes (r, d)
// in the numerical Grothendieck group Z^2, Euler forms, slopes, twists, and
// the stack-dimension bookkeeping derived from them.

#include "coha/numeric.hpp"

#include <compare>
#include <string>

namespace coha {

struct CurveModel {
    long long genus = 0;

    CurveModel() = default;
    explicit CurveModel(long long g) : genus(g) {
        if (g < 0) throw std::invalid_argument("genus must be non-negative");
    }

    // deg(omega_X); always recomputed from the genus.
    long long canonical_degree() const { return 2 * genus - 2; }
};

struct NumClass {
    Int rank;
    Int deg;

    NumClass() : rank(0), deg(0) {}
    NumClass(Int r, Int d) : rank(std::move(r)), deg(std::move(d)) {}

    bool operator==(const NumClass& o) const { return rank == o.rank && deg == o.deg; }
    bool operator!=(const NumClass& o) const { return !(*this == o); }
    bool operator<(const NumClass& o) const {
        if (rank != o.rank) return rank < o.rank;
        return deg < o.deg;
    }

    NumClass operator+(const NumClass& o) const { return {rank + o.rank, deg + o.deg}; }
    NumClass operator-(const NumClass& o) const { return {rank - o.rank, deg - o.deg}; }
    NumClass operator-() const { return {-rank, -deg}; }
    NumClass& operator+=(const NumClass& o) { rank += o.rank; deg += o.deg; return *this; }

    bool is_zero() const { return rank == 0 && deg == 0; }

    std::string str() const { return rank.str() + "," + deg.str(); }
};

// Membership in the positive cone: classes of actual sheaves.
inline bool is_positive(const NumClass& a) {
    return a.rank > 0 || (a.rank == 0 && a.deg >= 0);
}

// <a,b> = (1-g) r_a r_b + (r_a d_b - r_b d_a)
inline Int euler_coh(const NumClass& a, const NumClass& b, const CurveModel& m) {
    return Int(1 - m.genus) * a.rank * b.rank + (a.rank * b.deg - b.rank * a.deg);
}

// Euler form of the 2-Calabi-Yau category of Higgs sheaves; equals the
// symmetrization of euler_coh and depends on ranks only.
inline Int euler_higgs(const NumClass& a, const NumClass& b, const CurveModel& m) {
    return Int(2) * (1 - m.genus) * a.rank * b.rank;
}

// Slope d/r, with a distinct infinity value for torsion classes.
class Slope {
public:
    static Slope finite(Rat v) { return Slope(false, std::move(v)); }
    static Slope infinity() { return Slope(true, Rat(0)); }

    bool is_infinite() const { return infinite_; }
    const Rat& value() const {
        if (infinite_) throw std::domain_error("slope is infinite");
        return value_;
    }

    bool operator==(const Slope& o) const {
        return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
    }

    std::string str() const { return infinite_ ? "inf" : rat_str(value_); }

private:
    Slope(bool inf, Rat v) : infinite_(inf), value_(std::move(v)) {}
    bool infinite_;
    Rat value_;
};

inline Slope slope_of(const NumClass& a) {
    if (a.rank > 0) return Slope::finite(Rat(a.deg, a.rank));
    if (a.rank == 0 && a.deg != 0) return Slope::infinity();
    if (a.rank == 0) throw std::domain_error("slope undefined for the zero class");
    return Slope::finite(Rat(a.deg, a.rank));
}

// a(n) = (r, d + n r)
inline NumClass twist(const NumClass& a, const Int& n) {
    return {a.rank, a.deg + n * a.rank};
}

// b <= a in the standard order iff a - b is positive.
inline bool leq_standard(const NumClass& b, const NumClass& a) {
    return is_positive(a - b);
}

// dim Coh_a = -<a,a>
inline Int dim_coh_stack(const NumClass& a, const CurveModel& m) {
    return -euler_coh(a, a, m);
}

// dim Higgs_a = -2<a,a>
inline Int dim_higgs_stack(const NumClass& a, const CurveModel& m) {
    return Int(-2) * euler_coh(a, a, m);
}

// dim of the stack of extensions of a by b: -<a,a> - <b,b> - <a,b>
inline Int dim_ext_stack(const NumClass& a, const NumClass& b, const CurveModel& m) {
    return -euler_coh(a, a, m) - euler_coh(b, b, m) - euler_coh(a, b, m);
}

// Rank of the affine fibration q over a local chart cut out by a line bundle
// of degree lL: <L,b><L,a> - <a,b>, with <L,c> = euler_coh((1,lL), c). The
// subtracted term pairs the quotient class with the sub class, as forced by
// dim(chart of pairs) = dim(chart of a) + dim(chart of b) + rank.
inline Int affine_fibration_rank(const Int& lL, const NumClass& a, const NumClass& b,
                                 const CurveModel& m) {
    NumClass L(1, lL);
    return euler_coh(L, b, m) * euler_coh(L, a, m) - euler_coh(a, b, m);
}

} // namespace coha
