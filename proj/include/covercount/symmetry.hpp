#pragma once

#include <bit>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "covercount/cover.hpp"
#include "covercount/errors.hpp"
#include "covercount/gf2.hpp"
#include "covercount/partition.hpp"
#include "covercount/polytope.hpp"

namespace covercount {

// ---------------------------------------------------------------------------
// Facet-poset automorphisms of the n-cube: a permutation of the n opposite
// facet pairs combined with per-pair reflections. Group order 2^n n!.
//
// Element (mu, e) sends the facet in pair t on side s to pair mu(t) on side
// s XOR e[mu(t)]: permute pairs first, then swap the pairs flagged in e.
// Columns encode facets as side * n + pair.
// ---------------------------------------------------------------------------

class CubeSymmetry {
public:
    CubeSymmetry(Perm pair_perm, std::uint32_t reflections)
        : mu_(std::move(pair_perm)), e_(reflections) {
        const int n = mu_.size();
        if (n < 1 || n > 16)
            throw DimensionError("CubeSymmetry: unsupported cube dimension");
        if (n < 32 && (e_ >> n) != 0)
            throw InvalidInputError("CubeSymmetry: reflection bits out of range");
    }

    static CubeSymmetry identity(int n) { return {Perm::identity(n), 0}; }

    // The reflection of pair i alone.
    static CubeSymmetry reflection(int n, int i) {
        return {Perm::identity(n), std::uint32_t{1} << i};
    }

    int pairs() const { return mu_.size(); }
    const Perm& pair_perm() const { return mu_; }
    std::uint32_t reflections() const { return e_; }
    int reflection_count() const { return std::popcount(e_); }

    bool is_identity() const { return e_ == 0 && mu_.is_identity(); }

    // Image column of facet column c.
    int facet_column(int c) const {
        const int n = pairs();
        const int side = c < n ? 0 : 1;
        const int pair = c - side * n;
        const int image_pair = mu_(pair);
        const int image_side = side ^ static_cast<int>((e_ >> image_pair) & 1u);
        return image_side * n + image_pair;
    }

    std::vector<int> column_map() const {
        std::vector<int> map(static_cast<size_t>(2 * pairs()));
        for (int c = 0; c < 2 * pairs(); ++c)
            map[static_cast<size_t>(c)] = facet_column(c);
        return map;
    }

    // Facet-map composition, g after h applied to facets as h first:
    // applying h then g to a characteristic matrix equals applying
    // compose(g, h).
    static CubeSymmetry compose(const CubeSymmetry& g, const CubeSymmetry& h) {
        if (g.pairs() != h.pairs())
            throw DimensionError("CubeSymmetry::compose: size mismatch");
        const int n = g.pairs();
        std::vector<int> mu(static_cast<size_t>(n));
        std::uint32_t e = 0;
        for (int t = 0; t < n; ++t) {
            const int c = g.facet_column(h.facet_column(t));
            const int pair = c < n ? c : c - n;
            mu[static_cast<size_t>(t)] = pair;
            if (c >= n) e |= std::uint32_t{1} << pair;
        }
        return {Perm(std::move(mu)), e};
    }

    friend bool operator==(const CubeSymmetry&, const CubeSymmetry&) = default;

private:
    Perm mu_;
    std::uint32_t e_;
};

// All 2^n n! elements: permutations in lexicographic order, reflection
// masks ascending within each permutation.
inline std::vector<CubeSymmetry> all_cube_symmetries(int n) {
    if (n < 1 || n > 4)
        throw CapExceededError("all_cube_symmetries: n out of range");
    std::vector<CubeSymmetry> out;
    out.reserve(static_cast<size_t>(1) << n);
    for (const auto& p : all_perms(n))
        for (std::uint32_t e = 0; e < (std::uint32_t{1} << n); ++e)
            out.emplace_back(p, e);
    return out;
}

// ---------------------------------------------------------------------------
// The right action on characteristic matrices: column c of the result is
// column g(c) of the input. Valid matrices stay valid (the facet map
// preserves vertices).
// ---------------------------------------------------------------------------

inline BitMatrix apply_column_map(const BitMatrix& mat, std::span<const int> map) {
    BitMatrix out(mat.rows(), mat.cols());
    for (int c = 0; c < mat.cols(); ++c) {
        const int src = map[static_cast<size_t>(c)];
        for (int i = 0; i < mat.rows(); ++i)
            if (mat.get(i, src)) out.set(i, c, 1);
    }
    return out;
}

inline CharMatrix symmetry_apply(const CharMatrix& c, const CubeSymmetry& g) {
    if (!c.spec().is_cube() || c.spec().dimension() != g.pairs())
        throw DimensionError("symmetry_apply: matrix is not over this cube");
    return CharMatrix(c.spec(), apply_column_map(c.matrix(), g.column_map()));
}

// ---------------------------------------------------------------------------
// Brute-force enumeration of all characteristic matrices over the n-cube
// (2^(2n^2) candidates; n <= 3). Candidate bits are packed row-major over
// the n x 2n matrix, candidate indices ascending.
// ---------------------------------------------------------------------------

inline std::vector<BitMatrix> enumerate_cf_cube(int n) {
    if (n < 1 || n > 3)
        throw CapExceededError("enumerate_cf_cube: n out of range");
    const PolytopeSpec spec = PolytopeSpec::cube(n);
    const auto vertices = spec.vertices();
    const int m = 2 * n;
    const std::uint64_t row_mask = (std::uint64_t{1} << m) - 1;
    std::vector<BitMatrix> out;
    const std::uint64_t space = std::uint64_t{1} << (n * m);
    for (std::uint64_t cand = 0; cand < space; ++cand) {
        BitMatrix mat(n, m);
        for (int i = 0; i < n; ++i)
            mat.set_row_bits(i, (cand >> (i * m)) & row_mask);
        if (is_characteristic(mat, vertices)) out.push_back(mat);
    }
    return out;
}

// Matrices in the list fixed by g.
inline BigCount fixed_set_size(std::span<const BitMatrix> cf, const CubeSymmetry& g) {
    const auto map = g.column_map();
    std::uint64_t count = 0;
    for (const auto& mat : cf)
        if (apply_column_map(mat, map) == mat) ++count;
    return BigCount(count);
}

// |cf(I^n)^g| by exhaustive enumeration; n <= 3.
inline BigCount fixed_set_size(int n, const CubeSymmetry& g) {
    if (n == 0) return 1;  // the empty characteristic function
    const auto cf = enumerate_cf_cube(n);
    return fixed_set_size(cf, g);
}

// ---------------------------------------------------------------------------
// Orbit counting by canonical-minimum serialization: the orbit key of a
// matrix is the smallest packed serialization over the acting group.
// ---------------------------------------------------------------------------

// Canonical keys of cf[range.begin, range.end) under the given column maps;
// sorted and deduplicated.
inline std::vector<std::uint64_t> equivariant_canonical_keys_in(
    std::span<const BitMatrix> cf, const std::vector<std::vector<int>>& maps,
    IndexRange range) {
    std::set<std::uint64_t> keys;
    const std::uint64_t hi = std::min<std::uint64_t>(range.end, cf.size());
    for (std::uint64_t i = range.begin; i < hi; ++i) {
        std::uint64_t best = ~std::uint64_t{0};
        for (const auto& map : maps) {
            const std::uint64_t key = packed_key(apply_column_map(cf[i], map));
            if (key < best) best = key;
        }
        keys.insert(best);
    }
    return {keys.begin(), keys.end()};
}

// Orbits of all characteristic matrices over the n-cube under the full
// automorphism group; n <= 3.
inline BigCount orbit_count_equivariant_bruteforce(int n) {
    if (n == 0) return 1;
    const auto cf = enumerate_cf_cube(n);
    std::vector<std::vector<int>> maps;
    for (const auto& g : all_cube_symmetries(n)) maps.push_back(g.column_map());
    const auto keys =
        equivariant_canonical_keys_in(cf, maps, {0, cf.size()});
    return BigCount(keys.size());
}

// Orbits of M(n) under simultaneous row/column permutation (node
// relabeling); n <= 5 is the intended range, n = 6 is a long run.
inline BigCount sn_conjugation_orbit_count(int n) {
    if (n == 0) return 1;
    const auto perms = all_perms(n);
    std::set<std::uint64_t> keys;
    for_each_mn(n, [&](const BitMatrix& m) {
        std::uint64_t best = ~std::uint64_t{0};
        for (const auto& p : perms) {
            const std::uint64_t key = packed_key(conjugate_by_perm(m, p));
            if (key < best) best = key;
        }
        keys.insert(best);
    });
    return BigCount(keys.size());
}

}  // namespace covercount
