#include "recon/peg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "recon/prng.hpp"

namespace recon {

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Largest-remainder quantization of `total` nodes over the degree classes.
std::vector<std::size_t> quantize_counts(const std::vector<DegreeTerm>& fractions,
                                         std::size_t total) {
    std::vector<std::size_t> counts(fractions.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < fractions.size(); ++i) {
        const double quota = fractions[i].coefficient * static_cast<double>(total);
        counts[i] = static_cast<std::size_t>(std::floor(quota));
        assigned += counts[i];
        remainders.push_back({quota - std::floor(quota), i});
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) {
            return a.first > b.first;
        }
        return a.second < b.second;
    });
    for (std::size_t k = 0; assigned < total; ++k) {
        ++counts[remainders[k % remainders.size()].second];
        ++assigned;
    }
    return counts;
}

// Expands per-class counts into one target degree per node, ascending.
std::vector<std::size_t> expand_degrees(const std::vector<DegreeTerm>& fractions,
                                        const std::vector<std::size_t>& counts) {
    std::vector<std::size_t> degrees;
    for (std::size_t i = 0; i < fractions.size(); ++i) {
        degrees.insert(degrees.end(), counts[i], static_cast<std::size_t>(fractions[i].degree));
    }
    return degrees;
}

template <typename T>
void shuffle_in_place(std::vector<T>& v, Xoshiro256StarStar& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[rng.next_below(i)]);
    }
}

} // namespace

ParityCheckMatrix build_peg_code(std::size_t n, const DegreeDistribution& dist,
                                 std::uint64_t seed) {
    validate(dist);
    if (n < 64) {
        throw std::invalid_argument("build_peg_code: n must be at least 64");
    }

    const auto var_fracs = node_fractions(dist.lambda);
    const auto var_counts = quantize_counts(var_fracs, n);
    auto var_degree = expand_degrees(var_fracs, var_counts);

    std::size_t edges = 0;
    for (const auto d : var_degree) {
        edges += d;
    }

    double check_moment = 0.0;
    for (const auto& t : dist.rho) {
        check_moment += t.coefficient / t.degree;
    }
    const auto m = static_cast<std::size_t>(
        std::llround(static_cast<double>(edges) * check_moment));
    if (m < 2 || m >= n) {
        throw std::invalid_argument("build_peg_code: degree quantization gives unusable row count");
    }

    const auto check_fracs = node_fractions(dist.rho);
    const auto check_counts = quantize_counts(check_fracs, m);
    auto check_capacity = expand_degrees(check_fracs, check_counts);

    // Quantizing both sides independently can leave a few edges of slack;
    // absorb it one edge per row in the highest-degree rows.
    std::size_t capacity_total = std::accumulate(check_capacity.begin(), check_capacity.end(),
                                                 static_cast<std::size_t>(0));
    if (capacity_total + m < edges || capacity_total > edges + m) {
        throw std::invalid_argument("build_peg_code: degree quantization slack exceeds one per row");
    }
    for (std::size_t r = m; capacity_total < edges; ++capacity_total) {
        ++check_capacity[--r];
    }
    for (std::size_t r = m; capacity_total > edges; --capacity_total) {
        --r;
        if (check_capacity[r] <= 1) {
            throw std::invalid_argument("build_peg_code: cannot shed quantization slack");
        }
        --check_capacity[r];
    }

    // The seed only chooses which indices carry which degree.
    Xoshiro256StarStar col_rng(derive_seed(seed, 0));
    Xoshiro256StarStar row_rng(derive_seed(seed, 1));
    shuffle_in_place(var_degree, col_rng);
    shuffle_in_place(check_capacity, row_rng);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&var_degree](std::size_t a, std::size_t b) {
        return var_degree[a] < var_degree[b];
    });

    std::vector<std::vector<std::uint32_t>> var_adj(n);
    std::vector<std::vector<std::uint32_t>> check_adj(m);
    std::vector<std::size_t> check_degree(m, 0);
    std::vector<std::size_t> check_dist(m);
    std::vector<std::uint8_t> var_seen(n);
    std::vector<std::uint32_t> frontier;
    std::vector<std::uint32_t> next_frontier;

    auto bfs_check_distances = [&](std::size_t root) {
        std::fill(check_dist.begin(), check_dist.end(), kUnreachable);
        std::fill(var_seen.begin(), var_seen.end(), 0);
        var_seen[root] = 1;
        frontier.assign(1, static_cast<std::uint32_t>(root));
        std::size_t depth = 1;
        while (!frontier.empty()) {
            next_frontier.clear();
            for (const auto v : frontier) {
                for (const auto c : var_adj[v]) {
                    if (check_dist[c] == kUnreachable) {
                        check_dist[c] = depth;
                        next_frontier.push_back(c);
                    }
                }
            }
            frontier.clear();
            for (const auto c : next_frontier) {
                for (const auto v : check_adj[c]) {
                    if (!var_seen[v]) {
                        var_seen[v] = 1;
                        frontier.push_back(v);
                    }
                }
            }
            depth += 2;
        }
    };

    for (const auto v : order) {
        for (std::size_t k = 0; k < var_degree[v]; ++k) {
            if (k == 0) {
                std::fill(check_dist.begin(), check_dist.end(), kUnreachable);
            } else {
                bfs_check_distances(v);
            }
            std::size_t best = m;
            for (std::size_t c = 0; c < m; ++c) {
                if (check_degree[c] >= check_capacity[c] || check_dist[c] == 1) {
                    continue;
                }
                if (best == m || check_dist[c] > check_dist[best] ||
                    (check_dist[c] == check_dist[best] && check_degree[c] < check_degree[best])) {
                    best = c;
                }
            }
            if (best == m) {
                throw std::invalid_argument("build_peg_code: no check node left for an edge");
            }
            var_adj[v].push_back(static_cast<std::uint32_t>(best));
            check_adj[best].push_back(static_cast<std::uint32_t>(v));
            ++check_degree[best];
        }
    }

    ParityCheckMatrix h;
    h.n = n;
    h.rows = std::move(check_adj);
    for (auto& row : h.rows) {
        std::sort(row.begin(), row.end());
    }
    validate(h);
    return h;
}

} // namespace recon
