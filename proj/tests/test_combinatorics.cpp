#include "doctest.h"
#include "oracles.hpp"

using namespace sovlab;

TEST_CASE("tableau enumeration counts") {
    CHECK(enumerate_ssyt(YoungDiagram({1}), 3).size() == 3);
    CHECK(enumerate_ssyt(YoungDiagram({1, 1}), 2).size() == 1);
    // single strict column over two labels: 2 over 1
    auto t = enumerate_ssyt(YoungDiagram({1, 1}), 2)[0];
    CHECK(t.entries[0][0] == 2);
    CHECK(t.entries[1][0] == 1);
    CHECK((long)enumerate_ssyt(YoungDiagram({2, 1}), 3).size() == oracles::weyl_dimension({2, 1, 0}));
}

TEST_CASE("tableau enumeration agrees with the dimension formula and pattern counts") {
    std::vector<std::pair<std::vector<long>, int>> shapes = {
        {{2, 1, 0}, 3}, {{3, 1, 0}, 3}, {{2, 2, 0}, 3}, {{1, 1, 0, 0}, 4}, {{2, 1, 1, 0}, 4}};
    for (const auto& [nu, k] : shapes) {
        YoungDiagram shape(std::vector<long>(nu.begin(), nu.end()));
        long dim = oracles::weyl_dimension(nu);
        CHECK((long)enumerate_ssyt(shape, k).size() == dim);
        CHECK((long)enumerate_gt_patterns(nu).size() == dim);
    }
}

TEST_CASE("tableau enumeration is duplicate-free and deterministic") {
    auto a = enumerate_ssyt(YoungDiagram({2, 1}), 3);
    auto b = enumerate_ssyt(YoungDiagram({2, 1}), 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].entries == b[i].entries);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) CHECK(a[i].entries != a[j].entries);
}

TEST_CASE("pattern enumeration: counts and canonical order") {
    CHECK(enumerate_gt_patterns({1, 0}).size() == 2);
    CHECK(enumerate_gt_patterns({2, 1, 0}).size() == 8);
    CHECK(enumerate_gt_patterns({3, 3, 3}).size() == 1);  // branching forces all entries
    auto pats = enumerate_gt_patterns({2, 1, 0});
    CHECK(pats[0] == GTPattern::minimal({2, 1, 0}));
    for (std::size_t i = 0; i + 1 < pats.size(); ++i)
        CHECK(pats[i].excitation() <= pats[i + 1].excitation());
}

TEST_CASE("dual diagonals: values, bijection, monotonicity") {
    auto pats = enumerate_gt_patterns({2, 1, 0});
    SUBCASE("minimal pattern has no excitation") {
        GTPattern p = GTPattern::minimal({2, 1, 0});
        CHECK(p.mubar(1) == YoungDiagram({0}));
        CHECK(p.mubar(2) == YoungDiagram({0, 0}));
    }
    SUBCASE("maximal pattern saturates the branching bounds") {
        GTPattern p = pats.back();  // largest excitation in canonical order
        CHECK(p.mubar(1) == YoungDiagram({1}));
        CHECK(p.mubar(2) == YoungDiagram({2, 1}));
    }
    SUBCASE("scalar weights are frozen") {
        for (const auto& p : enumerate_gt_patterns({2, 2, 2})) {
            CHECK(p.mubar(1).boxes() == 0);
            CHECK(p.mubar(2).boxes() == 0);
        }
    }
    SUBCASE("reconstruction from dual diagonals is the identity") {
        for (const auto& p : pats) {
            std::vector<std::vector<long>> mus;
            for (int k = 1; k <= 2; ++k) mus.push_back(p.mu(k));
            CHECK(GTPattern::from_dual({2, 1, 0}, mus) == p);
        }
    }
    SUBCASE("each dual diagonal weakly decreases and stays above its floor") {
        for (const auto& p : pats)
            for (int k = 1; k <= 2; ++k) {
                YoungDiagram d = p.mubar(k);
                CHECK(d.weakly_decreasing_nonneg());
                CHECK(d.height() <= k);
            }
    }
}

TEST_CASE("separated coordinates at the preset chains") {
    ChainSpec s = oracles::t1_spec();
    SUBCASE("site 1 minimal pattern") {
        GTPattern p = GTPattern::minimal({2, 1, 0});
        CHECK(sep_coordinate(s, p, 1, 1, 1) == Rat(1));
        CHECK(sep_coordinate(s, p, 1, 2, 1) == Rat(0));
        CHECK(sep_coordinate(s, p, 1, 2, 2) == Rat(-1));
    }
    SUBCASE("excited node moves the coordinate") {
        GTPattern p = GTPattern::minimal({2, 1, 0});
        p.node(2, 1) = 2;  // mu_{11} = lambda_{21} -> 2
        CHECK(sep_coordinate(s, p, 1, 1, 1) == Rat(2));
    }
    SUBCASE("site 2 picks up its inhomogeneity") {
        GTPattern p = GTPattern::minimal({2, 1, 0});
        CHECK(sep_coordinate(s, p, 2, 1, 1) == rat(4, 3));
        CHECK(sep_coordinate(s, p, 2, 2, 1) == rat(1, 3));
        CHECK(sep_coordinate(s, p, 2, 2, 2) == rat(-2, 3));
    }
    SUBCASE("boundary scalars") {
        CHECK(boundary_coordinate(s, 1, 0) == Rat(2));       // theta + hbar nu_1
        CHECK(boundary_coordinate(s, 1, 2) == Rat(0 - 2));   // theta + hbar (nu_3 - 2)
    }
}

TEST_CASE("rectangular splits of a reduced weight") {
    YoungDiagram nubar({2, 1, 0});
    CHECK(split_rectangles(nubar, 2) == YoungDiagram({2, 1}));
    CHECK(split_rectangles(nubar, 3) == YoungDiagram({1, 1}));
    CHECK(split_rectangles(nubar, 1) == YoungDiagram({2, 1}));
    CHECK(split_rectangles(YoungDiagram({0, 0, 0}), 2).boxes() == 0);
    CHECK_THROWS(split_rectangles(nubar, 0));
    // column-extraction oracle: width-w prefix equals min(row, w) rowwise
    for (int k = 2; k <= 4; ++k) {
        YoungDiagram part = split_rectangles(nubar, k);
        long w = (k == 1) ? nubar.row(0) : nubar.row((std::size_t)k - 2);
        for (std::size_t r = 0; r < 3; ++r) CHECK(part.row(r) == std::min(nubar.row(r), w));
    }
}

TEST_CASE("diagram helpers: transpose involution, gluing, containment") {
    YoungDiagram d({4, 2, 1});
    CHECK(d.transpose().transpose() == d);
    CHECK(d.transpose() == YoungDiagram({3, 2, 1, 1}));
    CHECK(glue(YoungDiagram({2, 1}), YoungDiagram({1})) == YoungDiagram({3, 1}));
    CHECK(d.contains(YoungDiagram({2, 2})));
    CHECK(!YoungDiagram({2, 2}).contains(d));
}
