#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coha/jordan.hpp"

#include <algorithm>
#include <map>
#include <vector>

using namespace coha;

namespace {

// Independent partition oracle: all partitions of d as descending part lists.
void partitions_rec(long long rem, long long maxpart, std::vector<long long>& cur,
                    std::vector<std::vector<long long>>& out) {
    if (rem == 0) { out.push_back(cur); return; }
    for (long long p = std::min(rem, maxpart); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(rem - p, p, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<long long>> partitions_of(long long d) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur;
    partitions_rec(d, d, cur, out);
    return out;
}

// Dominance oracle on descending partitions: a dominates b iff every partial
// sum of a is >= the matching partial sum of b.
bool dominates(const std::vector<long long>& a, const std::vector<long long>& b) {
    long long sa = 0, sb = 0;
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
        sa += k < a.size() ? a[k] : 0;
        sb += k < b.size() ? b[k] : 0;
        if (sa < sb) return false;
    }
    return sa == sb;
}

// partition -> rank-0 Jordan type: entry i = multiplicity of part i
JordanType type_of_partition(const std::vector<long long>& parts) {
    long long s = parts.empty() ? 0 : parts.front();
    std::vector<NumClass> entries((std::size_t)s, NumClass(0, 0));
    for (long long p : parts) entries[(std::size_t)p - 1].deg += 1;
    return JordanType::make(std::move(entries));
}

JordanType jt(std::vector<NumClass> v) { return JordanType::make(std::move(v)); }

} // namespace

TEST_CASE("jordan type validation") {
    CHECK_THROWS_AS(jt({}), std::invalid_argument);
    CHECK_THROWS_AS(jt({{0, -1}}), std::invalid_argument);
    CHECK_THROWS_AS(jt({{1, 0}, {0, 0}}), std::invalid_argument); // zero top entry
    CHECK_NOTHROW(jt({{0, 0}, {0, 0}, {0, 1}}));                  // interior zeros fine
}

TEST_CASE("total class") {
    CurveModel m(2);
    CHECK(total_class(jt({{1, 0}, {1, 0}}), m) == NumClass(3, -2));
    for (long long g = 0; g <= 3; ++g)
        CHECK(total_class(jt({{0, 1}, {0, 1}}), CurveModel(g)) == NumClass(0, 3));
    CHECK(total_class(jt({{5, -7}}), m) == NumClass(5, -7));
}

TEST_CASE("row classes") {
    CurveModel m(2);
    CHECK(row_classes(jt({{1, 0}, {1, 0}}), m) == RowClasses{{2, -2}, {1, 0}});
    CHECK(row_classes(jt({{0, 1}, {0, 1}}), m) == RowClasses{{0, 2}, {0, 1}});
    CHECK(row_classes(jt({{3, 5}}), m) == RowClasses{{3, 5}});
}

TEST_CASE("rows decode") {
    CurveModel m(2);
    auto d = rows_to_type({{2, -2}, {1, 0}}, m);
    REQUIRE(d.ok());
    CHECK(*d.type == jt({{1, 0}, {1, 0}}));
    auto d2 = rows_to_type({{0, 2}, {0, 1}}, m);
    REQUIRE(d2.ok());
    CHECK(*d2.type == jt({{0, 1}, {0, 1}}));
    auto bad = rows_to_type({{0, -1}, {1, 0}}, m);
    CHECK_FALSE(bad.ok());
    CHECK(bad.first_invalid == 1);
}

TEST_CASE("kernel classes") {
    CurveModel m(2);
    auto t = jt({{1, 0}, {1, 0}});
    CHECK(kernel_class(t, 1, m) == NumClass(2, -2));
    CHECK(kernel_class(t, 2, m) == NumClass(3, -2));
    CHECK(kernel_class(t, 7, m) == total_class(t, m));
    // rank 0: boxes in the bottom k rows, sum_j min(j,k) d_j
    auto t3 = jt({{0, 0}, {0, 0}, {0, 1}});
    CHECK(kernel_class(t3, 2, m) == NumClass(0, 2));
    for (long long d = 1; d <= 6; ++d)
        for (const auto& ty : enumerate_rank0(d))
            for (long long k = 1; k <= (long long)ty.length(); ++k) {
                Int boxes = 0;
                for (std::size_t j = 1; j <= ty.length(); ++j)
                    boxes += Int(std::min<long long>((long long)j, k)) * ty.entry(j - 1).deg;
                CHECK(kernel_class(ty, k, m) == NumClass(0, boxes));
            }
}

TEST_CASE("kernel classes are partial sums of row classes") {
    CurveModel m(2);
    for (const auto& t : enumerate_bounded({2, -1}, 3, 2, m)) {
        auto rows = row_classes(t, m);
        NumClass acc;
        for (long long k = 1; k <= (long long)t.length(); ++k) {
            acc += rows[(std::size_t)k - 1];
            CHECK(kernel_class(t, k, m) == acc);
        }
    }
}

TEST_CASE("preceq examples") {
    CurveModel m(2);
    CHECK(preceq(jt({{3, -2}}), jt({{1, 0}, {1, 0}}), m));
    CHECK_FALSE(preceq(jt({{1, 0}, {1, 0}}), jt({{3, -2}}), m));
    // partition 2+1 precedes partition 3
    CHECK(preceq(jt({{0, 1}, {0, 1}}), jt({{0, 0}, {0, 0}, {0, 1}}), m));
    // incomparable totals
    CHECK_FALSE(preceq(jt({{1, 0}}), jt({{1, 1}}), m));
}

TEST_CASE("rank-0 enumeration counts and canonical order") {
    const long long p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
    CHECK(enumerate_rank0(0).empty()); // no valid type encodes the empty partition
    for (long long d = 1; d <= 8; ++d) {
        auto v = enumerate_rank0(d);
        CHECK((long long)v.size() == p[d]);
        CHECK(std::is_sorted(v.begin(), v.end(), [](const JordanType& x, const JordanType& y) {
            if (x.length() != y.length()) return x.length() < y.length();
            return x.entries() < y.entries();
        }));
    }
    auto v3 = enumerate_rank0(3);
    REQUIRE(v3.size() == 3);
    CHECK(v3[0] == jt({{0, 3}}));
    CHECK(v3[1] == jt({{0, 1}, {0, 1}}));
    CHECK(v3[2] == jt({{0, 0}, {0, 0}, {0, 1}}));
}

TEST_CASE("rank-0 poset is dominance order on partitions") {
    CurveModel m(2);
    for (long long d = 1; d <= 8; ++d) {
        auto parts = partitions_of(d);
        CHECK(parts.size() == enumerate_rank0(d).size());
        for (auto& pa : parts)
            for (auto& pb : parts)
                CHECK(preceq(type_of_partition(pb), type_of_partition(pa), m) ==
                      dominates(pa, pb));
    }
}

TEST_CASE("preceq is a partial order with minimum (alpha)") {
    CurveModel m(2);
    for (long long d = 1; d <= 6; ++d) {
        auto v = enumerate_rank0(d);
        for (auto& a : v) {
            CHECK(preceq(a, a, m));
            CHECK(preceq(jt({{0, d}}), a, m)); // length-1 type is the minimum
            for (auto& b : v) {
                if (preceq(a, b, m) && preceq(b, a, m)) CHECK(a == b);
                if (preceq(b, a, m)) CHECK(b.length() <= a.length());
                for (auto& c : v)
                    if (preceq(a, b, m) && preceq(b, c, m)) CHECK(preceq(a, c, m));
            }
        }
    }
}

TEST_CASE("bounded enumeration") {
    CurveModel m(2);
    auto v = enumerate_bounded({3, -2}, 2, 0, m);
    CHECK(std::find(v.begin(), v.end(), jt({{3, -2}})) != v.end());
    CHECK(std::find(v.begin(), v.end(), jt({{1, 0}, {1, 0}})) != v.end());
    // rank 0 delegates to the exact enumeration
    CHECK(enumerate_bounded({0, 3}, 3, 0, m) == enumerate_rank0(3));
    CHECK(enumerate_bounded({0, 3}, 2, 5, m).size() == 2);
    // the length-1 type is unique
    auto v1 = enumerate_bounded({1, 0}, 1, 4, m);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0] == jt({{1, 0}}));
    // every result has the right class and respects the bounds
    for (auto& t : enumerate_bounded({2, 1}, 3, 2, m)) {
        CHECK(total_class(t, m) == NumClass(2, 1));
        CHECK(t.length() <= 3);
    }
}

TEST_CASE("rows_to_type inverts row_classes on enumerated sets") {
    CurveModel m(2);
    for (const auto& t : enumerate_bounded({3, -2}, 3, 2, m)) {
        auto d = rows_to_type(row_classes(t, m), m);
        REQUIRE(d.ok());
        CHECK(*d.type == t);
    }
    for (const auto& t : enumerate_rank0(5)) {
        auto d = rows_to_type(row_classes(t, m), m);
        REQUIRE(d.ok());
        CHECK(*d.type == t);
    }
}

TEST_CASE("downset") {
    CurveModel m(2);
    // rank 0 is exact and window-independent
    auto ds = downset(jt({{0, 0}, {0, 0}, {0, 1}}), 0, m);
    CHECK(ds.size() == 3);
    // a minimum has a singleton down-set
    auto single = downset(jt({{4, -3}}), 5, m);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == jt({{4, -3}}));
    // the infinite family (1,2d+4),(1,-2-d) inside the window
    auto big = downset(jt({{1, 0}, {1, 0}}), 6, m);
    CHECK(std::find(big.begin(), big.end(), jt({{3, -2}})) != big.end());
    for (long long d = -2; d <= 1; ++d)
        CHECK(std::find(big.begin(), big.end(), jt({{1, 2 * d + 4}, {1, -2 - d}})) != big.end());
    for (auto& b : big) CHECK(preceq(b, jt({{1, 0}, {1, 0}}), m));
}

TEST_CASE("young diagram") {
    CurveModel m(2);
    CHECK(render_young_text(jt({{1, 0}, {1, 0}}), m) == "(1,0)\n(1,-2) (1,0)\n");
    CHECK(render_young_text(jt({{7, 3}}), m) == "(7,3)\n");
    // the s=4 pattern: bottom row reads a_4(-3l), a_3(-2l), a_2(-l), a_1
    auto rows = young_boxes(jt({{1, 1}, {1, 2}, {1, 3}, {1, 4}}), m);
    REQUIRE(rows.size() == 4);
    REQUIRE(rows[3].size() == 4);
    for (std::size_t c = 0; c < 4; ++c) {
        CHECK(rows[3][c].source == 4 - c);
        CHECK(rows[3][c].omega_power == -(long long)(3 - c));
    }
    CHECK(rows[0].size() == 1);
    CHECK(rows[0][0].source == 4);
    CHECK(rows[0][0].omega_power == 0);
    // tex emitter
    std::string tex = render_young_tex(jt({{1, 0}, {1, 0}}), m);
    CHECK(tex.find("\\begin{ytableau}") != std::string::npos);
    CHECK(tex.find("\\scriptstyle{(1,-2)} & \\scriptstyle{(1,0)}") != std::string::npos);
}

TEST_CASE("vector bundle stack rank") {
    CHECK(vb_stack_rank(jt({{5, 2}}), CurveModel(3)) == 0);
    CHECK(vb_stack_rank(jt({{1, 0}, {1, 0}}), CurveModel(2)) == 7);
    CHECK(vb_stack_rank(jt({{1, 0}, {1, 0}}), CurveModel(1)) == 0);
    CHECK(vb_stack_rank(jt({{0, 1}, {1, 2}}), CurveModel(1)) == 0);
}

TEST_CASE("correspondence dimension") {
    CHECK(correspondence_dim({{2, -2}, {1, 0}}, CurveModel(2)) == 8);
    CHECK(correspondence_dim({{5, 1}}, CurveModel(2)) == 0);
    CHECK(correspondence_dim({{1, 0}, {1, 1}}, CurveModel(1)) == 0);
    CHECK(correspondence_dim({{1, 0}, {2, 1}}, CurveModel(2)) == 8);
}

TEST_CASE("class literal parsing") {
    CHECK(parse_num_class("3,-2", "a") == NumClass(3, -2));
    CHECK_THROWS_AS(parse_num_class("3;2", "a"), std::invalid_argument);
    CHECK_THROWS_AS(parse_num_class("x,2", "a"), std::invalid_argument);
    CHECK(parse_jordan_type("1,0;1,0", "t") == jt({{1, 0}, {1, 0}}));
    CHECK_THROWS_AS(parse_jordan_type("1,0;0,0", "t"), std::invalid_argument);
}
