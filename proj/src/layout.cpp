#include "egomap/layout.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "egomap/errors.hpp"
#include "egomap/rng.hpp"

namespace egomap {

namespace {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

constexpr double kMinSeparation = 1e-9;  // force-law distance floor
constexpr double kJitter = 1e-6;         // coincident-node separation

}  // namespace

LayoutResult layout(const UndirectedFollowGraph& g, std::uint64_t seed,
                    std::size_t iterations) {
    if (iterations < 1) {
        throw InvalidSpecError("layout needs at least one iteration");
    }
    LayoutResult result;
    result.seed = seed;
    result.iterations = iterations;

    std::vector<AccountId> nodes(g.nodes.begin(), g.nodes.end());
    std::size_t n = nodes.size();
    if (n == 0) return result;
    if (n == 1) {
        result.positions[nodes[0]] = {0.5, 0.5};
        return result;
    }

    std::map<AccountId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[nodes[i]] = i;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) {
        edges.emplace_back(index.at(u), index.at(v));
    }

    std::mt19937_64 rng(seed);
    std::vector<Vec2> pos(n);
    for (auto& p : pos) {
        p.x = uniform01(rng);
        p.y = uniform01(rng);
    }

    double k = std::sqrt(1.0 / static_cast<double>(n));
    std::vector<Vec2> disp(n);
    for (std::size_t iter = 0; iter < iterations; ++iter) {
        for (auto& d : disp) d = Vec2{};

        // Repulsion between all pairs, in canonical index order.
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double dx = pos[i].x - pos[j].x;
                double dy = pos[i].y - pos[j].y;
                double dist = std::max(std::sqrt(dx * dx + dy * dy), kMinSeparation);
                double force = k * k / (dist * dist);
                disp[i].x += dx * force;
                disp[i].y += dy * force;
                disp[j].x -= dx * force;
                disp[j].y -= dy * force;
            }
        }
        // Attraction along edges.
        for (const auto& [a, b] : edges) {
            double dx = pos[a].x - pos[b].x;
            double dy = pos[a].y - pos[b].y;
            double dist = std::max(std::sqrt(dx * dx + dy * dy), kMinSeparation);
            double force = dist / k;
            disp[a].x -= dx * force;
            disp[a].y -= dy * force;
            disp[b].x += dx * force;
            disp[b].y += dy * force;
        }
        // Linear cooling caps per-iteration movement.
        double temperature =
            0.1 * (1.0 - static_cast<double>(iter) / static_cast<double>(iterations));
        temperature = std::max(temperature, 1e-4);
        for (std::size_t i = 0; i < n; ++i) {
            double length = std::sqrt(disp[i].x * disp[i].x + disp[i].y * disp[i].y);
            if (length <= 0.0) continue;
            double step = std::min(length, temperature);
            pos[i].x += disp[i].x / length * step;
            pos[i].y += disp[i].y / length * step;
        }
    }

    // Normalize to [0,1]² per axis; a degenerate axis collapses to 0.5.
    double min_x = pos[0].x, max_x = pos[0].x, min_y = pos[0].y, max_y = pos[0].y;
    for (const auto& p : pos) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    for (auto& p : pos) {
        p.x = (max_x - min_x) > 0.0 ? (p.x - min_x) / (max_x - min_x) : 0.5;
        p.y = (max_y - min_y) > 0.0 ? (p.y - min_y) / (max_y - min_y) : 0.5;
    }

    // Separate coincident nodes with a seeded jitter so every node has a
    // distinct position.
    std::set<std::pair<double, double>> seen;
    for (std::size_t i = 0; i < n; ++i) {
        while (!seen.emplace(pos[i].x, pos[i].y).second) {
            double angle = uniform01(rng) * 6.283185307179586;
            pos[i].x = std::clamp(pos[i].x + std::cos(angle) * kJitter, 0.0, 1.0);
            pos[i].y = std::clamp(pos[i].y + std::sin(angle) * kJitter, 0.0, 1.0);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        result.positions[nodes[i]] = {pos[i].x, pos[i].y};
    }
    return result;
}

}  // namespace egomap
