#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "covercount/errors.hpp"
#include "covercount/gf2.hpp"
#include "covercount/partition.hpp"

namespace covercount {

// ---------------------------------------------------------------------------
// Labeled simple digraph: no self-loops, at most one edge per ordered pair.
// Edge sets are packed into an n(n-1)-bit mask; ordered pairs (i,j), i != j,
// are indexed row by row: (0,1),(0,2),...,(0,n-1),(1,0),(1,2),...
// ---------------------------------------------------------------------------

class Digraph {
public:
    static constexpr int kMaxNodes = 8;

    explicit Digraph(int n, std::uint64_t edge_mask = 0) : n_(n), mask_(edge_mask) {
        if (n < 0 || n > kMaxNodes)
            throw DimensionError("Digraph: node count out of range");
        if (n < 2 && edge_mask != 0)
            throw InvalidInputError("Digraph: edge mask on < 2 nodes");
        if (n >= 2 && (edge_mask >> (static_cast<unsigned>(n) * (n - 1))) != 0)
            throw InvalidInputError("Digraph: edge mask has stray bits");
    }

    static Digraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Digraph g(n);
        for (auto [i, j] : edges) g.add_edge(i, j);
        return g;
    }

    static int pair_index(int i, int j, int n) {
        if (i < 0 || j < 0 || i >= n || j >= n || i == j)
            throw InvalidInputError("Digraph: bad ordered pair");
        return i * (n - 1) + (j > i ? j - 1 : j);
    }

    int order() const { return n_; }
    std::uint64_t edge_mask() const { return mask_; }

    bool has_edge(int i, int j) const {
        return (mask_ >> pair_index(i, j, n_)) & 1u;
    }

    void add_edge(int i, int j) { mask_ |= std::uint64_t{1} << pair_index(i, j, n_); }
    void remove_edge(int i, int j) { mask_ &= ~(std::uint64_t{1} << pair_index(i, j, n_)); }

    int edge_count() const { return std::popcount(mask_); }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<size_t>(edge_count()));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (i != j && has_edge(i, j)) out.emplace_back(i, j);
        return out;
    }

    // Row i = bitmask of successors of node i.
    std::array<std::uint64_t, kMaxNodes> successor_masks() const {
        std::array<std::uint64_t, kMaxNodes> adj{};
        std::uint64_t bits = mask_;
        while (bits) {
            const int b = std::countr_zero(bits);
            bits &= bits - 1;
            const int i = b / (n_ - 1);
            const int r = b % (n_ - 1);
            const int j = r + (r >= i ? 1 : 0);
            adj[static_cast<size_t>(i)] |= std::uint64_t{1} << j;
        }
        return adj;
    }

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    int n_;
    std::uint64_t mask_;
};

// Serialization for dump files: lowercase hex edge mask, a space, the node
// count. One digraph per line.
inline std::string to_line(const Digraph& g) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t m = g.edge_mask();
    std::string hex;
    do {
        hex.push_back(digits[m & 0xf]);
        m >>= 4;
    } while (m);
    std::reverse(hex.begin(), hex.end());
    return hex + ' ' + std::to_string(g.order());
}

inline Digraph digraph_from_line(std::string_view line) {
    const size_t sp = line.find(' ');
    if (sp == std::string_view::npos)
        throw InvalidInputError("digraph_from_line: missing separator");
    std::uint64_t mask = 0;
    for (char c : line.substr(0, sp)) {
        int d;
        if (c >= '0' && c <= '9')
            d = c - '0';
        else if (c >= 'a' && c <= 'f')
            d = c - 'a' + 10;
        else
            throw InvalidInputError("digraph_from_line: bad hex digit");
        mask = (mask << 4) | static_cast<unsigned>(d);
    }
    int n = 0;
    for (char c : line.substr(sp + 1)) {
        if (c < '0' || c > '9')
            throw InvalidInputError("digraph_from_line: bad node count");
        n = n * 10 + (c - '0');
    }
    return Digraph(n, mask);
}

// ---------------------------------------------------------------------------
// Acyclicity and topological order.
// ---------------------------------------------------------------------------

inline bool is_acyclic(const Digraph& g) {
    const int n = g.order();
    if (n < 2) return true;
    const auto adj = g.successor_masks();
    std::array<std::uint64_t, Digraph::kMaxNodes> pred{};
    for (int i = 0; i < n; ++i) {
        std::uint64_t bits = adj[static_cast<size_t>(i)];
        while (bits) {
            const int j = std::countr_zero(bits);
            bits &= bits - 1;
            pred[static_cast<size_t>(j)] |= std::uint64_t{1} << i;
        }
    }
    std::uint64_t remaining = (std::uint64_t{1} << n) - 1;
    for (int round = 0; round < n; ++round) {
        int source = -1;
        std::uint64_t scan = remaining;
        while (scan) {
            const int v = std::countr_zero(scan);
            scan &= scan - 1;
            if ((pred[static_cast<size_t>(v)] & remaining) == 0) {
                source = v;
                break;
            }
        }
        if (source < 0) return false;
        remaining &= ~(std::uint64_t{1} << source);
    }
    return true;
}

// Returns the position-to-node permutation p of a source-elimination order
// (smallest available source first). conjugate_by_perm(E + A(G), p) is then
// unipotent upper triangular; relabeling by p.inverse() sends every edge
// from a lower to a higher index. Throws CycleError with a witness cycle
// on cyclic input.
inline Perm topo_order(const Digraph& g) {
    const int n = g.order();
    const auto adj = g.successor_masks();
    std::array<std::uint64_t, Digraph::kMaxNodes> pred{};
    for (int i = 0; i < n; ++i) {
        std::uint64_t bits = adj[static_cast<size_t>(i)];
        while (bits) {
            const int j = std::countr_zero(bits);
            bits &= bits - 1;
            pred[static_cast<size_t>(j)] |= std::uint64_t{1} << i;
        }
    }
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    std::uint64_t remaining = n ? (std::uint64_t{1} << n) - 1 : 0;
    while (remaining) {
        int source = -1;
        std::uint64_t scan = remaining;
        while (scan) {
            const int v = std::countr_zero(scan);
            scan &= scan - 1;
            if ((pred[static_cast<size_t>(v)] & remaining) == 0) {
                source = v;
                break;
            }
        }
        if (source < 0) {
            // Walk predecessors inside the remaining set until a node repeats;
            // the enclosed segment, reversed, is a directed cycle.
            std::vector<int> path{std::countr_zero(remaining)};
            std::vector<int> at(static_cast<size_t>(n), -1);
            at[static_cast<size_t>(path[0])] = 0;
            while (true) {
                const int v = path.back();
                const int u = std::countr_zero(pred[static_cast<size_t>(v)] & remaining);
                if (at[static_cast<size_t>(u)] >= 0) {
                    const int p = at[static_cast<size_t>(u)];
                    std::vector<int> cycle{u};
                    for (int t = static_cast<int>(path.size()) - 1; t > p; --t)
                        cycle.push_back(path[static_cast<size_t>(t)]);
                    throw CycleError("topo_order: digraph has a cycle", cycle);
                }
                at[static_cast<size_t>(u)] = static_cast<int>(path.size());
                path.push_back(u);
            }
        }
        order.push_back(source);
        remaining &= ~(std::uint64_t{1} << source);
    }
    return Perm(std::move(order));
}

inline std::vector<int> outdegrees(const Digraph& g) {
    std::vector<int> out(static_cast<size_t>(g.order()), 0);
    const auto adj = g.successor_masks();
    for (int i = 0; i < g.order(); ++i)
        out[static_cast<size_t>(i)] = std::popcount(adj[static_cast<size_t>(i)]);
    return out;
}

// Node i of the input becomes node p(i) of the result.
inline Digraph relabel(const Digraph& g, const Perm& p) {
    if (p.size() != g.order()) throw DimensionError("relabel: size mismatch");
    Digraph out(g.order());
    for (auto [i, j] : g.edges()) out.add_edge(p(i), p(j));
    return out;
}

// A(G) as a bit matrix (n >= 1).
inline BitMatrix adjacency_matrix(const Digraph& g) {
    if (g.order() < 1)
        throw DimensionError("adjacency_matrix: empty digraph");
    BitMatrix a(g.order(), g.order());
    for (auto [i, j] : g.edges()) a.set(i, j, 1);
    return a;
}

// ---------------------------------------------------------------------------
// Canonical form under node relabeling (brute force over all n!
// permutations; n <= 8).
// ---------------------------------------------------------------------------

namespace detail {

// Adjacency matrix packed row-major, entry (0,0) in the most significant
// of the n*n used bits, so numeric order equals lexicographic order on the
// serialized matrix.
inline std::uint64_t packed_adjacency(int n,
                                      const std::vector<std::pair<int, int>>& edges,
                                      const Perm& p) {
    std::uint64_t key = 0;
    for (auto [i, j] : edges) {
        const int cell = p(i) * n + p(j);
        key |= std::uint64_t{1} << (n * n - 1 - cell);
    }
    return key;
}

}  // namespace detail

// Minimal packed adjacency over all relabelings.
inline std::uint64_t canonical_key(const Digraph& g) {
    const int n = g.order();
    if (n == 0) return 0;
    const auto edges = g.edges();
    std::uint64_t best = ~std::uint64_t{0};
    for (const auto& p : all_perms(n))
        best = std::min(best, detail::packed_adjacency(n, edges, p));
    return best;
}

// Lexicographically minimal row-major '0'/'1' serialization of the
// adjacency matrix over all relabelings. Empty string for n = 0.
inline std::string canonical_form(const Digraph& g) {
    const int n = g.order();
    const std::uint64_t key = canonical_key(g);
    std::string out(static_cast<size_t>(n * n), '0');
    for (int c = 0; c < n * n; ++c)
        if ((key >> (n * n - 1 - c)) & 1u) out[static_cast<size_t>(c)] = '1';
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration: candidate masks ascending, filtered by acyclicity.
// ---------------------------------------------------------------------------

inline std::uint64_t dag_mask_space(int n) {
    if (n < 0 || n > 6)
        throw CapExceededError("dag enumeration supports n <= 6");
    if (n < 2) return 1;
    return std::uint64_t{1} << (static_cast<unsigned>(n) * (n - 1));
}

// Visits each labeled DAG whose candidate mask lies in [begin, end),
// in increasing mask order.
template <class Visit>
void for_each_dag_in(int n, IndexRange range, Visit&& visit) {
    const std::uint64_t space = dag_mask_space(n);
    const std::uint64_t hi = std::min(range.end, space);
    for (std::uint64_t m = range.begin; m < hi; ++m) {
        Digraph g(n, n < 2 ? 0 : m);
        if (is_acyclic(g)) visit(g);
    }
}

template <class Visit>
void for_each_dag(int n, Visit&& visit) {
    for_each_dag_in(n, {0, dag_mask_space(n)}, std::forward<Visit>(visit));
}

inline BigCount count_dags_in(int n, IndexRange range) {
    std::uint64_t c = 0;
    for_each_dag_in(n, range, [&](const Digraph&) { ++c; });
    return BigCount(c);
}

inline BigCount count_dags(int n) { return count_dags_in(n, {0, dag_mask_space(n)}); }

inline std::vector<Digraph> all_dags(int n) {
    std::vector<Digraph> out;
    for_each_dag(n, [&](const Digraph& g) { out.push_back(g); });
    return out;
}

// Distinct canonical keys of the DAGs whose masks lie in the range; sorted.
inline std::vector<std::uint64_t> unlabeled_canonical_keys_in(int n, IndexRange range) {
    std::set<std::uint64_t> keys;
    for_each_dag_in(n, range, [&](const Digraph& g) { keys.insert(canonical_key(g)); });
    return {keys.begin(), keys.end()};
}

// Number of relabeling orbits of labeled DAGs, i.e. DAGs on n unlabeled
// nodes, by explicit canonicalization.
inline BigCount count_unlabeled_dags(int n) {
    const auto keys = unlabeled_canonical_keys_in(n, {0, dag_mask_space(n)});
    return BigCount(keys.size());
}

}  // namespace covercount
