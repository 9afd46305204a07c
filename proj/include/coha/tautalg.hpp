#pragma once

// The graded supercommutative engine: cohomology of the curve, the universal
// tautological algebra on generators c_{i,pi}, tensor powers with torsion
// (symmetric-power) slots, Kunneth classes with Chern/character calculus, the
// Whitney coproduct, and exact Poincare series.

#include "coha/ktheory.hpp"
#include "coha/series.hpp"

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace coha {

// H*(X) for a genus-g curve with basis {1, p_1..p_2g, w}; indices 0 = unit,
// 1..2g = degree-1 classes, 2g+1 = point class. Symplectic convention
// p_a p_{a+g} = w for 1 <= a <= g.
struct CurveCohomology {
    long long genus = 0;

    CurveCohomology() = default;
    explicit CurveCohomology(long long g) : genus(g) {
        if (g < 0) throw std::invalid_argument("genus must be non-negative");
    }
    explicit CurveCohomology(const CurveModel& m) : genus(m.genus) {}

    int dim() const { return (int)(2 * genus + 2); }
    int unit() const { return 0; }
    int point() const { return (int)(2 * genus + 1); }
    bool valid(int idx) const { return idx >= 0 && idx < dim(); }

    int deg(int idx) const {
        if (idx == 0) return 0;
        if (idx == point()) return 2;
        return 1;
    }

    // (coeff in {-1,0,1}, basis index); coeff 0 means the product vanishes
    std::pair<int, int> mul(int x, int y) const;

    std::string name(int idx) const;
    int parse_name(const std::string& token) const; // throws invalid_argument
};

// Tautological generator c_{i,pi}: i >= 2 with any pi, or i = 1 with pi != w.
struct TautGen {
    long long i = 1;
    int pi = 0;
    auto operator<=>(const TautGen&) const = default;
};

bool gen_valid(const TautGen& g, const CurveCohomology& X);
long gen_degree(const TautGen& g, const CurveCohomology& X); // 2i - deg(pi)
std::string gen_name(const TautGen& g, const CurveCohomology& X); // "c2.w"

// all valid generators of degree <= maxdeg
std::vector<TautGen> generators_up_to(const CurveCohomology& X, long maxdeg);

// Normal-ordered free monomial; odd generators have exponent 1.
struct Monomial {
    std::vector<std::pair<TautGen, long long>> factors;
    auto operator<=>(const Monomial&) const = default;
    bool is_unit() const { return factors.empty(); }
};

// Basis element pi z^k of H*(X)[z].
struct VElem {
    int pi = 0;
    long long z = 0;
    auto operator<=>(const VElem&) const = default;
    bool is_unit() const { return pi == 0 && z == 0; }
};

// Basis element of the super-symmetric power S^e(H*(X)[z]): a multiset of
// size e; only the non-unit members are stored, odd members are distinct.
struct SymWord {
    std::vector<std::pair<VElem, long long>> elems;
    auto operator<=>(const SymWord&) const = default;
    bool is_unit() const { return elems.empty(); }
    long long size() const {
        long long n = 0;
        for (auto& [v, c] : elems) n += c;
        return n;
    }
};

using SlotKey = std::variant<Monomial, SymWord>;
using TensorKey = std::vector<SlotKey>;

struct SlotSpec {
    enum class Kind { Free, Torsion } kind = Kind::Free;
    long long length = 0; // e for torsion slots
    auto operator<=>(const SlotSpec&) const = default;
};

std::vector<SlotSpec> free_slots(std::size_t n);
// rank > 0 -> free slot; rank 0 -> torsion slot of length d
std::vector<SlotSpec> slots_for_classes(const std::vector<NumClass>& ctx);

long slot_key_degree(const SlotKey& k, const CurveCohomology& X);
int slot_key_parity(const SlotKey& k, const CurveCohomology& X);

// Element of a graded tensor product of slot algebras (free tautological
// algebras and torsion symmetric powers), with exact rational coefficients
// and Koszul signs throughout.
class TensorPoly {
public:
    TensorPoly() = default;
    TensorPoly(std::vector<SlotSpec> slots, long long genus)
        : slots_(std::move(slots)), genus_(genus) {}

    static TensorPoly unit(std::vector<SlotSpec> slots, long long genus);
    // generator embedded in a free slot
    static TensorPoly generator(std::vector<SlotSpec> slots, long long genus,
                                std::size_t slot, const TautGen& g);
    // sum over factors of a single v inserted in a torsion slot; for the unit
    // element this is e times the identity
    static TensorPoly insertion(std::vector<SlotSpec> slots, long long genus,
                                std::size_t slot, const VElem& v);

    const std::vector<SlotSpec>& slots() const { return slots_; }
    long long genus() const { return genus_; }
    const std::map<TensorKey, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(TensorKey key, const Rat& coeff);
    Rat coeff(const TensorKey& key) const;
    Rat scalar() const; // coefficient of the all-unit key

    long degree(const TensorKey& key) const;
    long max_degree() const; // -1 for zero
    bool homogeneous(long* deg_out = nullptr) const;

    TensorPoly operator+(const TensorPoly& o) const;
    TensorPoly operator-(const TensorPoly& o) const;
    TensorPoly operator*(const Rat& c) const;
    TensorPoly& operator+=(const TensorPoly& o);
    bool operator==(const TensorPoly& o) const;

    // graded product, dropping terms above the truncation order
    TensorPoly mul(const TensorPoly& o, long trunc) const;
    TensorPoly mul(const TensorPoly& o) const; // exact

    TensorPoly graded_part(long deg) const;
    TensorPoly truncated(long trunc) const;

    // signed flip of a 2-slot element: x (x) y -> (-1)^{|x||y|} y (x) x
    TensorPoly flip2() const;

    std::string str() const; // canonical, diff-stable

private:
    std::vector<SlotSpec> slots_;
    long long genus_ = 0;
    std::map<TensorKey, Rat> terms_;
};

// Extend generator images multiplicatively (with Koszul signs) over a source
// with free slots only. Images must be parity-homogeneous of the generator's
// parity and live in the target algebra.
TensorPoly substitute(const TensorPoly& src,
                      const std::function<TensorPoly(std::size_t, const TautGen&)>& image,
                      const std::vector<SlotSpec>& target_slots, long long genus, long trunc);

// --- single-slot tautological polynomials -------------------------------

// HPoly is the 1-slot free case of TensorPoly.
using HPoly = TensorPoly;

HPoly hpoly_zero(long long genus);
HPoly hpoly_one(long long genus);
HPoly hpoly_gen(long long genus, const TautGen& g);

// --- Kunneth classes -----------------------------------------------------

// Element of (tensor product of slot algebras) (x) H*(X): one TensorPoly per
// curve basis element, truncated by the tensor-side degree. Carries its
// aggregate numerical class and the per-slot classes it was built from.
class KunnethClass {
public:
    KunnethClass() = default;
    KunnethClass(std::vector<SlotSpec> slots, long long genus, long trunc);

    static KunnethClass unit(std::vector<SlotSpec> slots, long long genus, long trunc);

    const std::vector<SlotSpec>& slots() const { return slots_; }
    long long genus() const { return genus_; }
    long trunc() const { return trunc_; }
    const NumClass& num_class() const { return cls_; }
    void set_num_class(NumClass c) { cls_ = std::move(c); }
    const std::vector<NumClass>& slot_classes() const { return slot_cls_; }
    void set_slot_classes(std::vector<NumClass> c) { slot_cls_ = std::move(c); }

    const TensorPoly& component(int pi) const { return comp_.at((std::size_t)pi); }
    TensorPoly& component(int pi) { return comp_.at((std::size_t)pi); }

    KunnethClass operator+(const KunnethClass& o) const;
    KunnethClass operator-(const KunnethClass& o) const;
    // (a (x) p)(b (x) s) = (-1)^{deg p deg b} (ab (x) ps)
    KunnethClass operator*(const KunnethClass& o) const;

    bool operator==(const KunnethClass& o) const;
    bool same_polys(const KunnethClass& o) const; // ignores class metadata

    bool has_unit_constant_term() const;

    // tensor-side degree-0 scalar of the w component; the degree of the
    // underlying class, recomputed from the polynomial data
    Rat point_scalar() const;

    // graded piece of total degree d (tensor degree + basis degree)
    KunnethClass total_degree_part(long d) const;

    std::string str() const;

private:
    std::vector<SlotSpec> slots_;
    long long genus_ = 0;
    long trunc_ = 0;
    NumClass cls_;
    std::vector<NumClass> slot_cls_;
    std::vector<TensorPoly> comp_;
};

// (i,pi) Kunneth component: the tensor-side piece of degree 2i - deg(pi) of
// component pi. Throws degree_overflow_error when that degree exceeds the
// truncation order.
TensorPoly kunneth_component(const KunnethClass& K, long long i, int pi);

// Canonical total Chern class of the tautological sheaf of one slot:
//  - free slot: 1 + sum of generators (x) pi, with the (1,w) component the
//    scalar d and ch_0 the scalar r (neither is a generator);
//  - torsion slot of length e: computed from the explicit Chern character of
//    the length-e universal torsion sheaf in the S^e(H*(X)[z]) model.
KunnethClass canonical_slot_class(const std::vector<SlotSpec>& slots,
                                  const std::vector<NumClass>& ctx, std::size_t slot,
                                  long long genus, long trunc);

// Chern character of one torsion slot (single-insertion classes).
KunnethClass torsion_slot_character(const std::vector<SlotSpec>& slots,
                                    std::size_t slot, long long genus, long trunc);

// Whitney product of the canonical classes of free slots with the given
// numerical contexts (the universal-algebra level: rank enters nowhere).
KunnethClass total_chern_class(const std::vector<NumClass>& slot_classes,
                               const CurveModel& m, long trunc);

// Mixed version used on strata: slot kinds derived from the slot classes.
KunnethClass mixed_total_chern(const std::vector<NumClass>& slot_classes,
                               const CurveModel& m, long trunc);

// Newton-identity conversions. chern_to_character uses the stored numerical
// class for ch_0; character_to_chern recovers the total Chern class.
KunnethClass chern_to_character(const KunnethClass& total_c);
KunnethClass character_to_chern(const KunnethClass& ch);

// Chern data of E (x) L for a line bundle of degree by_degree.
KunnethClass twist_class(const KunnethClass& total, const Int& by_degree);

// Total Chern class of the K-theory difference A - B.
KunnethClass k_difference(const KunnethClass& totalA, const KunnethClass& totalB);

// --- coproduct -----------------------------------------------------------

// Whitney coproduct of a 1-slot polynomial into two free slots; depends on
// the classes only through their degrees.
TensorPoly coproduct(const HPoly& p, const NumClass& a1, const NumClass& a2,
                     const CurveModel& m, long trunc);

// Apply the coproduct to one free slot of an n-slot element, producing an
// (n+1)-slot element; used for coassociativity checks.
TensorPoly coproduct_in_slot(const TensorPoly& p, std::size_t slot, const Int& d_left,
                             const Int& d_right, const CurveModel& m, long trunc);

// --- Poincare series -----------------------------------------------------

// Series of the free tautological algebra (any positive-rank class):
// prod_{k>=1} (1+q^{2k-1})^{2g} / (1-q^{2k})^2.
QSeries poincare_series_positive_rank(const CurveModel& m, long trunc);

// Series of S^d(H*(X)[z]): coefficient of u^d in
// prod_{k>=0} (1+u q^{2k+1})^{2g} / ((1-u q^{2k})(1-u q^{2k+2})).
QSeries poincare_series_torsion(const CurveModel& m, long long d, long trunc);

} // namespace coha
