#pragma once

// Associated-graded model of the nilpotent COHA: per-stratum homology as a
// tensor product of slot algebras, leading-term products of capped
// fundamental classes, the action of the universal tautological algebra, and
// stratum Poincare series.

#include "coha/jordan.hpp"
#include "coha/tautalg.hpp"

#include <optional>

namespace coha {

// Polynomial in tautological classes capped on the fundamental class of the
// zero-section component over a fixed class.
struct GenClass {
    NumClass alpha;
    HPoly poly;
};

GenClass fundamental_class(const NumClass& alpha, long long genus);

// A class supported on the closure of one stratum, recorded as its leading
// term: payload in the tensor product of one slot algebra per Jordan-type
// entry (free for positive rank, symmetric-power for rank 0), always modulo
// classes on strictly smaller strata.
struct StratumClass {
    JordanType jordan_type;
    std::vector<NumClass> slot_classes; // the Jordan-type entries
    TensorPoly payload;
    Int vb_rank;     // relative dimension over the product of slot stacks
    Int dim_lambda;  // dimension of the stratum closure, -<a,a>
    bool modulo_lower = true;

    StratumClass(JordanType t, std::vector<NumClass> ctx, TensorPoly p, Int vb, Int dim)
        : jordan_type(std::move(t)), slot_classes(std::move(ctx)), payload(std::move(p)),
          vb_rank(std::move(vb)), dim_lambda(std::move(dim)) {}
};

// Total Chern classes of the successive kernel quotients of the Higgs field
// on the stratum of type t, in the per-slot tautological generators; the i-th
// class has numerical class equal to the i-th row class of t.
std::vector<KunnethClass> strata_sheaf_classes(const JordanType& t, const CurveModel& m,
                                               long trunc);

struct LeadingProduct {
    std::optional<StratumClass> value;
    long first_invalid = -1; // failing row index when the rows decode to no type
    bool ok() const { return value.has_value(); }
};

// Leading term of the product of capped fundamental classes, factors ordered
// (gamma_s, ..., gamma_1) so the last factor is the bottom row. The payload
// is P_1(c(E_1)) ... P_s(c(E_s)) evaluated through strata_sheaf_classes.
LeadingProduct leading_product(const std::vector<GenClass>& factors, const CurveModel& m,
                               long trunc);

// Action of a tautological polynomial on a stratum class: h is expanded
// through the total class of the universal sheaf restricted to the stratum
// (the Whitney product of the strata sheaf classes) and multiplied into the
// payload.
StratumClass hmodule_act(const HPoly& h, const StratumClass& x, const CurveModel& m,
                         long trunc);

// Poincare series of the stratum: product over entries of the slot series.
QSeries stratum_series(const JordanType& t, const CurveModel& m, long trunc);

// Sum of stratum series over the down-set of a (all strata sit at the common
// top Borel-Moore degree 2 dim Lambda); exact for rank-0 input.
QSeries downset_series(const JordanType& a, long long degree_window, const CurveModel& m,
                       long trunc);

} // namespace coha
