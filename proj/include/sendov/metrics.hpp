#pragma once

// Distances on polynomial root space: the bottleneck root metric Delta, the
// per-point critical distance |p|_alpha and the directed Hausdorff objective d.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "sendov/poly.hpp"

namespace sendov {

struct MatchResult {
    double value = 0.0;
    std::vector<std::size_t> permutation;  // zero i of p pairs with zero permutation[i] of q
};

namespace detail {

// Hopcroft–Karp on a dense bipartite graph given as an adjacency predicate.
class HopcroftKarp {
public:
    HopcroftKarp(std::size_t n, std::vector<std::vector<std::size_t>> adj)
        : n_(n), adj_(std::move(adj)), match_l_(n, kNone), match_r_(n, kNone), dist_(n) {}

    std::size_t run() {
        std::size_t size = 0;
        while (bfs()) {
            for (std::size_t u = 0; u < n_; ++u)
                if (match_l_[u] == kNone && dfs(u)) ++size;
        }
        return size;
    }

    const std::vector<std::size_t>& left_matches() const { return match_l_; }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

    bool bfs() {
        std::queue<std::size_t> q;
        bool found = false;
        for (std::size_t u = 0; u < n_; ++u) {
            if (match_l_[u] == kNone) {
                dist_[u] = 0;
                q.push(u);
            } else {
                dist_[u] = kInf;
            }
        }
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (auto v : adj_[u]) {
                const auto w = match_r_[v];
                if (w == kNone) {
                    found = true;
                } else if (dist_[w] == kInf) {
                    dist_[w] = dist_[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    }

    bool dfs(std::size_t u) {
        for (auto v : adj_[u]) {
            const auto w = match_r_[v];
            if (w == kNone || (dist_[w] == dist_[u] + 1 && dfs(w))) {
                match_l_[u] = v;
                match_r_[v] = u;
                return true;
            }
        }
        dist_[u] = kInf;
        return false;
    }

    std::size_t n_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> match_l_, match_r_, dist_;
};

inline void require_same_degree(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("delta: degree mismatch");
}

}  // namespace detail

/// Bottleneck assignment between two equal-size point multisets: binary search
/// over the sorted pairwise distances with perfect-matching feasibility.
inline MatchResult bottleneck_match(std::span<const Complex> zs, std::span<const Complex> ws) {
    detail::require_same_degree(zs.size(), ws.size());
    const std::size_t n = zs.size();
    if (n == 0) return {};
    std::vector<double> dist(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = std::abs(zs[i] - ws[j]);
    std::vector<double> cand(dist);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    auto try_threshold = [&](double t, std::vector<std::size_t>* perm) {
        std::vector<std::vector<std::size_t>> adj(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (dist[i * n + j] <= t) adj[i].push_back(j);
        detail::HopcroftKarp hk(n, std::move(adj));
        const bool ok = hk.run() == n;
        if (ok && perm) *perm = hk.left_matches();
        return ok;
    };

    std::size_t lo = 0, hi = cand.size() - 1;  // cand[hi] is always feasible
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (try_threshold(cand[mid], nullptr))
            hi = mid;
        else
            lo = mid + 1;
    }
    MatchResult res;
    try_threshold(cand[lo], &res.permutation);
    for (std::size_t i = 0; i < n; ++i) res.value = std::max(res.value, dist[i * n + res.permutation[i]]);
    return res;
}

/// Delta(p, q): min over pairings of the max zero displacement.
inline MatchResult delta(const MonicPoly& p, const MonicPoly& q) {
    detail::require_same_degree(static_cast<std::size_t>(p.degree()), static_cast<std::size_t>(q.degree()));
    const auto zp = roots(p), zq = roots(q);
    return bottleneck_match(zp, zq);
}

/// Exhaustive oracle for bottleneck_match; n! permutations, n <= 8.
inline MatchResult bottleneck_match_bruteforce(std::span<const Complex> zs, std::span<const Complex> ws) {
    detail::require_same_degree(zs.size(), ws.size());
    const std::size_t n = zs.size();
    if (n > 8) throw std::invalid_argument("delta_bruteforce: degree > 8");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    MatchResult best{std::numeric_limits<double>::infinity(), perm};
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(zs[i] - ws[perm[i]]));
        if (worst < best.value) best = {worst, perm};
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (n == 0) best.value = 0.0;
    return best;
}

inline MatchResult delta_bruteforce(const MonicPoly& p, const MonicPoly& q) {
    detail::require_same_degree(static_cast<std::size_t>(p.degree()), static_cast<std::size_t>(q.degree()));
    if (p.degree() > 8) throw std::invalid_argument("delta_bruteforce: degree > 8");
    const auto zp = roots(p), zq = roots(q);
    return bottleneck_match_bruteforce(zp, zq);
}

/// min over the given critical points of |alpha - w|.
inline double crit_dist(std::span<const Complex> crit, Complex alpha) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : crit) best = std::min(best, std::abs(alpha - w));
    return best;
}

/// |p|_alpha, the radius of the alpha-critical circle.
inline double crit_dist(const MonicPoly& p, Complex alpha) { return crit_dist(critical_points(p), alpha); }

struct SendovValue {
    double value = 0.0;
    Complex argmax_zero{};
    std::size_t argmax_index = 0;
};

/// d over explicit zero and critical sets. Near-ties (relative 1e-12) resolve to
/// the lexicographically smallest zero by (re, im).
inline SendovValue sendov_d(std::span<const Complex> zeros, std::span<const Complex> crit) {
    if (zeros.empty() || crit.empty()) throw std::invalid_argument("sendov_d: degree must be >= 2");
    std::vector<double> vals(zeros.size());
    double best = -1.0;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        vals[i] = crit_dist(crit, zeros[i]);
        best = std::max(best, vals[i]);
    }
    SendovValue out{best, zeros[0], 0};
    bool have = false;
    const double floor = best - 1e-12 * (1.0 + best);
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (vals[i] < floor) continue;
        const auto& z = zeros[i];
        const bool smaller = !have || z.real() < out.argmax_zero.real() ||
                             (z.real() == out.argmax_zero.real() && z.imag() < out.argmax_zero.imag());
        if (smaller) {
            out.argmax_zero = z;
            out.argmax_index = i;
            have = true;
        }
    }
    return out;
}

/// d(p) = max over zeros of |p|_z, evaluated from fresh critical points.
inline SendovValue sendov_d(const MonicPoly& p) {
    if (p.degree() < 2) throw std::invalid_argument("sendov_d: degree must be >= 2");
    const auto zs = roots(p);
    const auto ws = critical_points(p);
    return sendov_d(zs, ws);
}

}  // namespace sendov
