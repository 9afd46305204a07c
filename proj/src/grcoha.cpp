#include "coha/grcoha.hpp"

namespace coha {

GenClass fundamental_class(const NumClass& alpha, long long genus) {
    if (!is_positive(alpha))
        throw std::invalid_argument("fundamental class requires a positive class");
    return GenClass{alpha, hpoly_one(genus)};
}

std::vector<KunnethClass> strata_sheaf_classes(const JordanType& t, const CurveModel& m,
                                               long trunc) {
    const std::vector<NumClass>& ctx = t.entries();
    auto slots = slots_for_classes(ctx);
    const std::size_t s = ctx.size();
    const Int l = m.canonical_degree();
    std::vector<KunnethClass> out;
    out.reserve(s);
    // E_i = E_{a_i} + E_{i+1} (x) w^{-1} in K-theory, built from the top row down
    KunnethClass acc = canonical_slot_class(slots, ctx, s - 1, m.genus, trunc);
    out.push_back(acc);
    for (std::size_t i = s - 1; i >= 1; --i) {
        acc = canonical_slot_class(slots, ctx, i - 1, m.genus, trunc) * twist_class(acc, -l);
        out.push_back(acc);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

LeadingProduct leading_product(const std::vector<GenClass>& factors, const CurveModel& m,
                               long trunc) {
    const std::size_t s = factors.size();
    LeadingProduct res;
    if (s == 0) { res.first_invalid = 0; return res; }
    RowClasses rows(s);
    for (std::size_t i = 1; i <= s; ++i) rows[i - 1] = factors[s - i].alpha;
    RowsDecode dec = rows_to_type(rows, m);
    if (!dec.ok()) { res.first_invalid = dec.first_invalid; return res; }
    const JordanType& t = *dec.type;
    auto sheaf = strata_sheaf_classes(t, m, trunc);
    auto slots = slots_for_classes(t.entries());
    TensorPoly payload = TensorPoly::unit(slots, m.genus);
    for (std::size_t i = 1; i <= s; ++i) {
        const HPoly& p = factors[s - i].poly;
        TensorPoly eval = substitute(
            p,
            [&](std::size_t, const TautGen& g) {
                return kunneth_component(sheaf[i - 1], g.i, g.pi);
            },
            slots, m.genus, trunc);
        payload = payload.mul(eval, trunc);
    }
    res.value.emplace(t, t.entries(), std::move(payload), vb_stack_rank(t, m),
                      dim_coh_stack(total_class(t, m), m));
    return res;
}

StratumClass hmodule_act(const HPoly& h, const StratumClass& x, const CurveModel& m,
                         long trunc) {
    long hdeg = h.max_degree();
    if (hdeg > trunc)
        throw degree_overflow_error("acting polynomial degree " + std::to_string(hdeg) +
                                    " exceeds truncation order " + std::to_string(trunc));
    auto sheaf = strata_sheaf_classes(x.jordan_type, m, trunc);
    // total class of the universal sheaf restricted to the stratum
    KunnethClass total = sheaf[0];
    for (std::size_t i = 1; i < sheaf.size(); ++i) total = total * sheaf[i];
    auto slots = slots_for_classes(x.jordan_type.entries());
    TensorPoly act = substitute(
        h,
        [&](std::size_t, const TautGen& g) { return kunneth_component(total, g.i, g.pi); },
        slots, m.genus, trunc);
    StratumClass out = x;
    out.payload = act.mul(x.payload, trunc);
    return out;
}

QSeries stratum_series(const JordanType& t, const CurveModel& m, long trunc) {
    QSeries s = QSeries::one(trunc);
    for (const auto& a : t.entries()) {
        if (a.rank > 0) s *= poincare_series_positive_rank(m, trunc);
        else if (a.deg > 0) s *= poincare_series_torsion(m, (long long)a.deg, trunc);
        // (0,0) entries contribute the factor 1
    }
    return s;
}

QSeries downset_series(const JordanType& a, long long degree_window, const CurveModel& m,
                       long trunc) {
    QSeries sum(trunc);
    for (const auto& b : downset(a, degree_window, m)) sum += stratum_series(b, m, trunc);
    return sum;
}

} // namespace coha
