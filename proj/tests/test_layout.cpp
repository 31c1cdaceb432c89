#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "egomap/errors.hpp"
#include "egomap/layout.hpp"
#include "support/oracles.hpp"

using namespace egomap;

namespace {

UndirectedFollowGraph two_cliques(int size) {
    UndirectedFollowGraph g;
    std::vector<AccountId> left, right;
    for (int i = 0; i < size; ++i) {
        left.push_back("a" + std::to_string(i));
        right.push_back("b" + std::to_string(i));
    }
    for (const auto& group : {left, right}) {
        for (std::size_t i = 0; i < group.size(); ++i) {
            g.nodes.insert(group[i]);
            for (std::size_t j = i + 1; j < group.size(); ++j) {
                g.edges.emplace(std::min(group[i], group[j]),
                                std::max(group[i], group[j]));
            }
        }
    }
    return g;
}

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

TEST_CASE("a single node sits at the center") {
    UndirectedFollowGraph g;
    g.nodes = {"only"};
    LayoutResult result = layout(g, 1, 50);
    CHECK(result.positions.at("only")[0] == doctest::Approx(0.5));
    CHECK(result.positions.at("only")[1] == doctest::Approx(0.5));
}

TEST_CASE("same graph and seed give bit-identical positions") {
    std::mt19937_64 rng(5);
    UndirectedFollowGraph g = oracles::random_undirected(rng, 35, 0.1);
    LayoutResult a = layout(g, 42, 100);
    LayoutResult b = layout(g, 42, 100);
    CHECK(a.positions == b.positions);

    LayoutResult c = layout(g, 43, 100);
    CHECK(a.positions != c.positions);
}

TEST_CASE("coordinates are finite, inside the unit square, and distinct") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 10; ++i) {
        UndirectedFollowGraph g = oracles::random_undirected(rng, 40, 0.08);
        LayoutResult result = layout(g, i, 60);
        std::set<std::pair<double, double>> seen;
        for (const auto& [_, p] : result.positions) {
            CHECK(std::isfinite(p[0]));
            CHECK(std::isfinite(p[1]));
            CHECK(p[0] >= 0.0);
            CHECK(p[0] <= 1.0);
            CHECK(p[1] >= 0.0);
            CHECK(p[1] <= 1.0);
            CHECK(seen.emplace(p[0], p[1]).second);
        }
    }
}

TEST_CASE("two cliques land closer to their own side, 10 seeds") {
    UndirectedFollowGraph g = two_cliques(10);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        LayoutResult result = layout(g, seed, 300);
        double intra = 0.0, inter = 0.0;
        int intra_pairs = 0, inter_pairs = 0;
        std::vector<AccountId> nodes(g.nodes.begin(), g.nodes.end());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                double d = distance(result.positions.at(nodes[i]),
                                    result.positions.at(nodes[j]));
                if (nodes[i][0] == nodes[j][0]) {
                    intra += d;
                    ++intra_pairs;
                } else {
                    inter += d;
                    ++inter_pairs;
                }
            }
        }
        CHECK(intra / intra_pairs < inter / inter_pairs);
    }
}

TEST_CASE("connected pairs are on average closer than unconnected ones") {
    std::mt19937_64 rng(8);
    UndirectedFollowGraph g = oracles::random_undirected(rng, 30, 0.1);
    REQUIRE(!g.edges.empty());
    LayoutResult result = layout(g, 9, 300);
    double connected = 0.0, unconnected = 0.0;
    int connected_pairs = 0, unconnected_pairs = 0;
    std::vector<AccountId> nodes(g.nodes.begin(), g.nodes.end());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            double d = distance(result.positions.at(nodes[i]),
                                result.positions.at(nodes[j]));
            if (g.edges.count({std::min(nodes[i], nodes[j]),
                               std::max(nodes[i], nodes[j])})) {
                connected += d;
                ++connected_pairs;
            } else {
                unconnected += d;
                ++unconnected_pairs;
            }
        }
    }
    REQUIRE(connected_pairs > 0);
    REQUIRE(unconnected_pairs > 0);
    CHECK(connected / connected_pairs < unconnected / unconnected_pairs);
}

TEST_CASE("zero iterations are rejected") {
    UndirectedFollowGraph g;
    g.nodes = {"a"};
    CHECK_THROWS_AS(layout(g, 1, 0), InvalidSpecError);
}

TEST_CASE("empty graph lays out to nothing") {
    UndirectedFollowGraph g;
    LayoutResult result = layout(g, 1, 10);
    CHECK(result.positions.empty());
}
