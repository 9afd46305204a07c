#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coha/format.hpp"
#include "coha/grcoha.hpp"
#include "span_util.hpp"

using namespace coha;

namespace {

JordanType jt(std::vector<NumClass> v) { return JordanType::make(std::move(v)); }

GenClass capped(const NumClass& a, const std::string& poly, long long genus) {
    return GenClass{a, parse_hpoly(poly, genus, "poly")};
}

TensorPoly unit_payload(const JordanType& t, long long genus) {
    return TensorPoly::unit(slots_for_classes(t.entries()), genus);
}

} // namespace

TEST_CASE("fundamental classes") {
    GenClass f = fundamental_class({1, 0}, 2);
    CHECK(f.alpha == NumClass(1, 0));
    CHECK(f.poly == hpoly_one(2));
    CHECK(fundamental_class({0, 3}, 2).alpha == NumClass(0, 3));
    CHECK_THROWS_AS(fundamental_class({0, -1}, 2), std::invalid_argument);
}

TEST_CASE("strata sheaf classes carry the row classes") {
    CurveModel m(2);
    auto t = jt({{1, 0}, {1, 0}});
    auto cs = strata_sheaf_classes(t, m, 6);
    auto rows = row_classes(t, m);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].num_class() == rows[0]);
    CHECK(cs[1].num_class() == rows[1]);
    // degree read back from the polynomial data, not the metadata
    CHECK(cs[0].point_scalar() == Rat(rows[0].deg));
    CHECK(cs[1].point_scalar() == Rat(rows[1].deg));
    // length-1 type: the strata sheaf is the slot sheaf on the nose
    auto t1 = jt({{2, -3}});
    auto c1 = strata_sheaf_classes(t1, m, 6);
    auto ctx1 = t1.entries();
    CHECK(c1[0].same_polys(canonical_slot_class(slots_for_classes(ctx1), ctx1, 0, m.genus, 6)));
}

TEST_CASE("k-theory relation between strata sheaves and slot sheaves") {
    CurveModel m(2);
    auto t = jt({{1, 0}, {1, 0}});
    auto cs = strata_sheaf_classes(t, m, 6);
    const Int l = m.canonical_degree();
    // [E_{a_1}] = [E_1] - [E_2 (x) w^{-1}]: numerically (2,-2) - (1,-2) = (1,0)
    KunnethClass diff = k_difference(cs[0], twist_class(cs[1], -l));
    CHECK(diff.num_class() == NumClass(1, 0));
    auto ctx = t.entries();
    CHECK(diff.same_polys(canonical_slot_class(slots_for_classes(ctx), ctx, 0, m.genus, 6)));
}

TEST_CASE("strata sheaf classes on mixed and torsion types") {
    CurveModel m(1);
    for (auto& t : {jt({{0, 1}, {1, 0}}), jt({{0, 2}, {0, 1}}), jt({{0, 0}, {0, 1}})}) {
        auto cs = strata_sheaf_classes(t, m, 4);
        auto rows = row_classes(t, m);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            CHECK(cs[i].num_class() == rows[i]);
            CHECK(cs[i].point_scalar() == Rat(rows[i].deg));
        }
    }
    // torsion slot canonical class reports its length as the degree scalar
    std::vector<NumClass> ctx{{0, 3}};
    auto K = canonical_slot_class(slots_for_classes(ctx), ctx, 0, 1, 4);
    CHECK(K.point_scalar() == 3);
    CHECK(K.has_unit_constant_term());
}

TEST_CASE("leading product of unit fundamental classes is the stratum class") {
    CurveModel m(2);
    // rows (gamma_s, ..., gamma_1) = ((1,0), (2,-2)) decode to t = ((1,0),(1,0))
    auto lp = leading_product({fundamental_class({1, 0}, 2), fundamental_class({2, -2}, 2)}, m, 6);
    REQUIRE(lp.ok());
    CHECK(lp.value->jordan_type == jt({{1, 0}, {1, 0}}));
    CHECK(lp.value->payload == unit_payload(lp.value->jordan_type, 2));
    CHECK(lp.value->payload.coeff(lp.value->payload.terms().begin()->first) == 1);
    CHECK(lp.value->vb_rank == 7);
    CHECK(lp.value->dim_lambda == 9);
    CHECK(lp.value->modulo_lower);
}

TEST_CASE("single capped factor keeps its polynomial payload") {
    CurveModel m(2);
    auto lp = leading_product({capped({3, 1}, "c2.w + 2*c1.p1", 2)}, m, 6);
    REQUIRE(lp.ok());
    CHECK(lp.value->jordan_type == jt({{3, 1}}));
    // one free slot: the payload is the polynomial itself
    CHECK(lp.value->payload == parse_hpoly("c2.w + 2*c1.p1", 2, "p"));
    CHECK(lp.value->vb_rank == 0);
}

TEST_CASE("leading product rejects undecodable rows") {
    CurveModel m(2);
    auto bad = leading_product({fundamental_class({1, 0}, 2), fundamental_class({0, 0}, 2)}, m, 4);
    CHECK_FALSE(bad.ok());
    CHECK(bad.first_invalid >= 1);
}

TEST_CASE("payload multiplicativity in each factor") {
    CurveModel m(2);
    const long N = 8;
    GenClass top = fundamental_class({1, 0}, 2);
    auto run = [&](const std::string& poly) {
        auto lp = leading_product({top, capped({2, -2}, poly, 2)}, m, N);
        REQUIRE(lp.ok());
        return lp.value->payload;
    };
    TensorPoly pa = run("c1.p1");
    TensorPoly pb = run("c2.w");
    TensorPoly pab = run("c1.p1*c2.w");
    CHECK(pab == pa.mul(pb, N));
    // and across different factors
    auto lp2 = leading_product({capped({1, 0}, "c1.1", 2), capped({2, -2}, "c1.p2", 2)}, m, N);
    auto lpL = leading_product({capped({1, 0}, "c1.1", 2), fundamental_class({2, -2}, 2)}, m, N);
    auto lpR = leading_product({fundamental_class({1, 0}, 2), capped({2, -2}, "c1.p2", 2)}, m, N);
    REQUIRE(lp2.ok());
    CHECK(lp2.value->payload == lpL.value->payload.mul(lpR.value->payload, N));
}

TEST_CASE("action by the unit and the single-slot action") {
    CurveModel m(2);
    auto lp = leading_product({capped({2, 1}, "c1.p1 + c2.w", 2)}, m, 8);
    REQUIRE(lp.ok());
    StratumClass x = *lp.value;
    StratumClass hx = hmodule_act(hpoly_one(2), x, m, 8);
    CHECK(hx.payload == x.payload);
    // s = 1: plain multiplication in the slot
    HPoly h = parse_hpoly("c1.p2", 2, "h");
    StratumClass hx2 = hmodule_act(h, x, m, 8);
    CHECK(hx2.payload == h.mul(x.payload, 8));
}

TEST_CASE("degree-1 action on a two-row stratum: Koszul sign and column multiplicity") {
    CurveModel m(2);
    const long N = 8;
    auto t = jt({{1, 0}, {1, 0}});
    auto slots = slots_for_classes(t.entries());
    // payload c_{1,p2} (x) 1, built directly
    TensorPoly payload(slots, 2);
    Monomial m2only;
    m2only.factors = {{TautGen{1, 2}, 1}};
    payload.add_term(TensorKey{SlotKey(m2only), SlotKey(Monomial{})}, 1);
    StratumClass x(t, t.entries(), payload, vb_stack_rank(t, m),
                   dim_coh_stack(total_class(t, m), m));
    StratumClass hx = hmodule_act(parse_hpoly("c1.p1", 2, "h"), x, m, N);
    // the restricted universal sheaf has a_1 + 2 a_2 columns, so c_{1,p1}
    // acts as c (x) 1 + 2 (1 (x) c) with the odd Koszul sign
    TensorPoly expect(slots, 2);
    Monomial m12;
    m12.factors = {{TautGen{1, 1}, 1}, {TautGen{1, 2}, 1}};
    expect.add_term(TensorKey{SlotKey(m12), SlotKey(Monomial{})}, 1);
    Monomial m1;
    m1.factors = {{TautGen{1, 1}, 1}};
    expect.add_term(TensorKey{SlotKey(m2only), SlotKey(m1)}, -2);
    CHECK(hx.payload == expect);
}

TEST_CASE("the action is an algebra action") {
    CurveModel m(1);
    const long N = 8;
    auto lp = leading_product({fundamental_class({1, 1}, 1), capped({2, 1}, "c1.p1", 1)}, m, N);
    REQUIRE(lp.ok());
    StratumClass x = *lp.value;
    for (auto& [hs, hs2] : {std::pair<std::string, std::string>{"c1.p1", "c1.p2"},
                            {"c1.1", "c2.w"},
                            {"c1.p2 + c1.1", "c1.p1"}}) {
        HPoly h = parse_hpoly(hs, 1, "h"), h2 = parse_hpoly(hs2, 1, "h2");
        StratumClass lhs = hmodule_act(h.mul(h2), x, m, N);
        StratumClass rhs = hmodule_act(h, hmodule_act(h2, x, m, N), m, N);
        CHECK(lhs.payload == rhs.payload);
    }
}

TEST_CASE("module-algebra identity against the coproduct on two factors") {
    // h (x star y) = sum (-1)^{|h2||P_y|} (h2 x) star (h1 y), with the
    // coproduct taken at (bottom, top) degrees and parity-homogeneous factor
    // payloads; legs pair with the Whitney order of the strata sheaves.
    const long N = 8;
    for (long long g : {1LL, 2LL}) {
        CurveModel m(g);
        std::vector<std::pair<NumClass, NumClass>> shapes = {
            {{1, 0}, {2, g == 1 ? 0 : -2}},
            {{1, 1}, {2, 1}},
        };
        std::vector<std::pair<std::string, std::string>> polys = {
            {"c1.p1", "c1.p2"}, {"c1.p1", "c1.1"}, {"c1.1", "c1.p1*c1.p2"}, {"c2.w", "c1.p2"}};
        for (auto& [top, bottom] : shapes) {
            for (auto& [px, py] : polys) {
                GenClass x{top, parse_hpoly(px, g, "px")};
                GenClass y{bottom, parse_hpoly(py, g, "py")};
                auto base = leading_product({x, y}, m, N);
                if (!base.ok()) continue;
                CurveCohomology X(g);
                const int ppar = y.poly.max_degree() & 1;
                for (const TautGen& gen : generators_up_to(X, 4)) {
                    HPoly h = hpoly_gen(g, gen);
                    StratumClass lhs = hmodule_act(h, *base.value, m, N);
                    TensorPoly delta = coproduct(h, bottom, top, m, N);
                    TensorPoly rhs(lhs.payload.slots(), g);
                    for (auto& [k, c] : delta.terms()) {
                        HPoly h1 = hpoly_zero(g), h2 = hpoly_zero(g);
                        h1.add_term(TensorKey{k[0]}, 1);
                        h2.add_term(TensorKey{k[1]}, 1);
                        int sgn = (slot_key_parity(k[1], X) && ppar) ? -1 : 1;
                        auto term = leading_product(
                            {GenClass{top, h2.mul(x.poly)}, GenClass{bottom, h1.mul(y.poly)}},
                            m, N);
                        REQUIRE(term.ok());
                        rhs += term.value->payload * (c * sgn);
                    }
                    CHECK(lhs.payload == rhs);
                }
            }
        }
    }
}

TEST_CASE("stratum series") {
    CurveModel m(2);
    CHECK(stratum_series(jt({{4, -1}}), m, 6) == poincare_series_positive_rank(m, 6));
    // partition (2,1) of 3: two rank-0 slots of degree 1
    QSeries s = stratum_series(jt({{0, 1}, {0, 1}}), m, 2);
    CHECK(s.coeff(0) == 1);
    CHECK(s.coeff(1) == 8);
    CHECK(s.coeff(2) == 20);
    // interior zero entries contribute the factor 1
    CHECK(stratum_series(jt({{0, 0}, {0, 1}}), m, 4) == poincare_series_torsion(m, 1, 4));
}

TEST_CASE("downset series") {
    CurveModel m(2);
    auto a1 = jt({{2, -1}});
    CHECK(downset_series(a1, 3, m, 4) == stratum_series(a1, m, 4));
    // d = 2: both partitions contribute
    auto top2 = jt({{0, 0}, {0, 1}});
    QSeries expect2 = stratum_series(top2, m, 6) + stratum_series(jt({{0, 2}}), m, 6);
    CHECK(downset_series(top2, 0, m, 6) == expect2);
    // d = 3: all three strata
    auto top3 = jt({{0, 0}, {0, 0}, {0, 1}});
    QSeries expect3 = stratum_series(top3, m, 4) + stratum_series(jt({{0, 1}, {0, 1}}), m, 4) +
                      stratum_series(jt({{0, 3}}), m, 4);
    CHECK(downset_series(top3, 0, m, 4) == expect3);
}

TEST_CASE("torsion stratum payloads reach the low-degree basis") {
    // single slot S^1(H*(X)[z]) at genus 1: the generator images span degrees <= 2
    CurveModel m(1);
    const long N = 4;
    auto lp = leading_product({fundamental_class({0, 1}, 1)}, m, N);
    REQUIRE(lp.ok());
    testutil::Span span;
    CurveCohomology X(1);
    for (const TautGen& gen : generators_up_to(X, 2)) {
        StratumClass hx = hmodule_act(hpoly_gen(1, gen), *lp.value, m, N);
        span.insert(hx.payload);
    }
    // basis in degrees 1 and 2: p1, p2, w, 1z
    auto slots = slots_for_classes({NumClass(0, 1)});
    auto word = [&](int pi, long long z) {
        TensorPoly t(slots, 1);
        SymWord w;
        w.elems.emplace_back(VElem{pi, z}, 1);
        t.add_term(TensorKey{SlotKey(w)}, 1);
        return t;
    };
    CHECK(span.contains(word(1, 0)));
    CHECK(span.contains(word(2, 0)));
    CHECK(span.contains(word(X.point(), 0)));
    CHECK(span.contains(word(0, 1)));
}
