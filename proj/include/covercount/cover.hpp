#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "covercount/digraph.hpp"
#include "covercount/errors.hpp"
#include "covercount/gf2.hpp"
#include "covercount/partition.hpp"
#include "covercount/polytope.hpp"

namespace covercount {

// ---------------------------------------------------------------------------
// Characteristic matrices.
// ---------------------------------------------------------------------------

// Non-singularity test: the columns selected by every vertex form a basis.
inline bool is_characteristic(const BitMatrix& mat,
                              const std::vector<std::vector<int>>& vertices) {
    for (const auto& v : vertices)
        if (det_gf2(select_columns(mat, v)) == 0) return false;
    return true;
}

inline bool is_characteristic(const BitMatrix& mat, const PolytopeSpec& spec) {
    if (mat.rows() != spec.dimension() || mat.cols() != spec.facet_count())
        throw DimensionError("is_characteristic: shape does not match polytope");
    return is_characteristic(mat, spec.vertices());
}

// Vector-matrix non-singularity test for an n x l reduced matrix over a
// product of simplices: every scalar l x l matrix obtained by picking one
// coordinate row per factor block must have all principal minors 1. For
// the cube (all factors 1) this is exactly all_principal_minors_one.
inline bool nonsingular_product_check(const BitMatrix& reduced,
                                      const PolytopeSpec& spec) {
    const int n = spec.dimension();
    const int l = spec.factor_count();
    if (reduced.rows() != n || reduced.cols() != l)
        throw DimensionError("nonsingular_product_check: expected n x l matrix");
    std::vector<int> pick(static_cast<size_t>(l), 1);
    while (true) {
        BitMatrix scalar(l, l);
        for (int i = 0; i < l; ++i)
            scalar.set_row_bits(
                i, reduced.row_bits(spec.row_offset(i) + pick[static_cast<size_t>(i)] - 1));
        if (!all_principal_minors_one(scalar)) return false;
        int i = 0;
        for (; i < l; ++i) {
            if (++pick[static_cast<size_t>(i)] <= spec.factors()[static_cast<size_t>(i)])
                break;
            pick[static_cast<size_t>(i)] = 1;
        }
        if (i == l) return true;
    }
}

// A validated n x m characteristic matrix over its polytope.
class CharMatrix {
public:
    CharMatrix(PolytopeSpec spec, BitMatrix mat)
        : spec_(std::move(spec)), mat_(std::move(mat)) {
        if (!is_characteristic(mat_, spec_))
            throw InvalidInputError("CharMatrix: matrix is not characteristic");
    }

    const PolytopeSpec& spec() const { return spec_; }
    const BitMatrix& matrix() const { return mat_; }

    friend bool operator==(const CharMatrix& a, const CharMatrix& b) {
        return a.spec_ == b.spec_ && a.mat_ == b.mat_;
    }

private:
    PolytopeSpec spec_;
    BitMatrix mat_;
};

// A validated n x l reduced matrix (the right block of a refined
// representative (E | reduced)).
class ReducedMatrix {
public:
    ReducedMatrix(PolytopeSpec spec, BitMatrix mat)
        : spec_(std::move(spec)), mat_(std::move(mat)) {
        if (!nonsingular_product_check(mat_, spec_))
            throw InvalidInputError("ReducedMatrix: non-singularity check failed");
    }

    const PolytopeSpec& spec() const { return spec_; }
    const BitMatrix& matrix() const { return mat_; }

    friend bool operator==(const ReducedMatrix& a, const ReducedMatrix& b) {
        return a.spec_ == b.spec_ && a.mat_ == b.mat_;
    }

private:
    PolytopeSpec spec_;
    BitMatrix mat_;
};

// (E | reduced) as a full characteristic matrix.
inline CharMatrix to_char_matrix(const ReducedMatrix& r) {
    const int n = r.spec().dimension();
    const int l = r.spec().factor_count();
    BitMatrix full(n, n + l);
    for (int i = 0; i < n; ++i)
        full.set_row_bits(i, (std::uint64_t{1} << i) |
                                 (r.matrix().row_bits(i) << n));
    return CharMatrix(r.spec(), full);
}

// Coset representative of the GL(n, Z2) class of a characteristic matrix:
// inverts the leading block and returns the transformed trailing block.
// Idempotent, and invariant under left multiplication by any invertible
// matrix.
inline ReducedMatrix refine(const CharMatrix& c) {
    const int n = c.spec().dimension();
    const int m = c.spec().facet_count();
    std::vector<int> lead(static_cast<size_t>(n));
    std::vector<int> trail(static_cast<size_t>(m - n));
    std::iota(lead.begin(), lead.end(), 0);
    std::iota(trail.begin(), trail.end(), n);
    const BitMatrix a = select_columns(c.matrix(), lead);
    const BitMatrix b = select_columns(c.matrix(), trail);
    return ReducedMatrix(c.spec(), mul_gf2(inverse_gf2(a), b));
}

// ---------------------------------------------------------------------------
// M(n): square matrices with every principal minor 1, and the DAG bijection.
// ---------------------------------------------------------------------------

// Candidate space for M(n): the diagonal is forced (1 x 1 minors), leaving
// the n(n-1) off-diagonal bits. Off-diagonal cells share the ordered-pair
// indexing of digraph edge masks, so the k-th candidate matrix is E + A of
// the k-th candidate digraph.
inline std::uint64_t mn_mask_space(int n) {
    if (n < 1 || n > 6)
        throw CapExceededError("M(n) enumeration supports 1 <= n <= 6");
    if (n == 1) return 1;
    return std::uint64_t{1} << (static_cast<unsigned>(n) * (n - 1));
}

inline BitMatrix mn_candidate(int n, std::uint64_t mask) {
    BitMatrix m = BitMatrix::identity(n);
    std::uint64_t bits = mask;
    while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        const int i = b / (n - 1);
        const int r = b % (n - 1);
        m.set(i, r + (r >= i ? 1 : 0), 1);
    }
    return m;
}

template <class Visit>
void for_each_mn_in(int n, IndexRange range, Visit&& visit) {
    const std::uint64_t space = mn_mask_space(n);
    const std::uint64_t hi = std::min(range.end, space);
    for (std::uint64_t m = range.begin; m < hi; ++m) {
        BitMatrix cand = mn_candidate(n, m);
        if (all_principal_minors_one(cand)) visit(cand);
    }
}

template <class Visit>
void for_each_mn(int n, Visit&& visit) {
    for_each_mn_in(n, {0, mn_mask_space(n)}, std::forward<Visit>(visit));
}

inline BigCount count_mn_in(int n, IndexRange range) {
    std::uint64_t c = 0;
    for_each_mn_in(n, range, [&](const BitMatrix&) { ++c; });
    return BigCount(c);
}

// |M(n)|; the empty matrix is the unique member at n = 0.
inline BigCount count_mn(int n) {
    if (n == 0) return 1;
    return count_mn_in(n, {0, mn_mask_space(n)});
}

inline std::vector<BitMatrix> all_mn(int n) {
    std::vector<BitMatrix> out;
    for_each_mn(n, [&](const BitMatrix& m) { out.push_back(m); });
    return out;
}

// E + A(G); defined exactly on acyclic digraphs, where the image lies in
// M(n).
inline BitMatrix dag_to_matrix(const Digraph& g) {
    if (g.order() < 1) throw DimensionError("dag_to_matrix: empty digraph");
    if (!is_acyclic(g))
        throw InvalidInputError("dag_to_matrix: digraph has a cycle");
    BitMatrix m = BitMatrix::identity(g.order());
    for (auto [i, j] : g.edges()) m.set(i, j, 1);
    return m;
}

// Inverse direction: off-diagonal ones become edges. Input must be a member
// of M(n).
inline Digraph matrix_to_dag(const BitMatrix& m) {
    if (!m.square()) throw DimensionError("matrix_to_dag: matrix not square");
    if (!all_principal_minors_one(m))
        throw MembershipError("matrix_to_dag: matrix has a principal minor 0");
    Digraph g(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j && m.get(i, j)) g.add_edge(i, j);
    return g;
}

// ---------------------------------------------------------------------------
// Permutation-conjugation normal form for matrices whose proper principal
// minors are all 1: unipotent upper triangular when the determinant is 1,
// and the standard cycle matrix (unit diagonal, unit superdiagonal, unit
// lower-left corner) otherwise.
// ---------------------------------------------------------------------------

struct ConjugationNormalForm {
    enum class Kind { unipotent, cycle };
    Kind kind;
    Perm perm;  // conjugate_by_perm(input, perm) is in the stated form
};

// The n x n cycle matrix: ones on the diagonal, at (i, i+1), and at
// (n-1, 0).
inline BitMatrix cycle_form_matrix(int n) {
    BitMatrix m = BitMatrix::identity(n);
    for (int i = 0; i + 1 < n; ++i) m.set(i, i + 1, 1);
    m.set(n - 1, 0, 1);
    return m;
}

inline ConjugationNormalForm conjugation_normal_form(const BitMatrix& a) {
    if (!a.square()) throw DimensionError("conjugation_normal_form: not square");
    const int n = a.rows();
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t s = 1; s < full; ++s)
        if (principal_minor_gf2(a, s) == 0)
            throw InvalidInputError(
                "conjugation_normal_form: a proper principal minor is 0");
    if (principal_minor_gf2(a, full) == 1) {
        // All principal minors are 1: the off-diagonal support is acyclic,
        // and a source-elimination order triangulates it.
        Digraph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && a.get(i, j)) g.add_edge(i, j);
        return {ConjugationNormalForm::Kind::unipotent, topo_order(g)};
    }
    if (n == 1)
        throw InvalidInputError(
            "conjugation_normal_form: 1 x 1 matrix with zero determinant");
    // Determinant 0 with unit proper minors forces the off-diagonal support
    // to be a single directed cycle through all n nodes.
    std::vector<int> succ(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (a.get(i, i) != 1)
            throw InternalConsistencyError("conjugation_normal_form: zero diagonal");
        for (int j = 0; j < n; ++j) {
            if (i == j || !a.get(i, j)) continue;
            if (succ[static_cast<size_t>(i)] != -1)
                throw InternalConsistencyError(
                    "conjugation_normal_form: out-degree above 1 in cycle case");
            succ[static_cast<size_t>(i)] = j;
        }
        if (succ[static_cast<size_t>(i)] == -1)
            throw InternalConsistencyError(
                "conjugation_normal_form: missing cycle edge");
    }
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    int v = 0;
    for (int step = 0; step < n; ++step) {
        order.push_back(v);
        v = succ[static_cast<size_t>(v)];
    }
    if (v != 0)
        throw InternalConsistencyError("conjugation_normal_form: cycle not Hamiltonian");
    return {ConjugationNormalForm::Kind::cycle, Perm(std::move(order))};
}

// ---------------------------------------------------------------------------
// Reduced matrices over a product of simplices: exhaustive enumeration and
// the block-support digraph.
// ---------------------------------------------------------------------------

// Free cells of a reduced-matrix candidate: validity forces every diagonal
// block to be all ones (1 x 1 minors of every scalar selection), so only
// the off-block cells vary. Row-major order over (row, col) pairs.
inline std::vector<std::pair<int, int>> reduced_free_cells(const PolytopeSpec& spec) {
    std::vector<std::pair<int, int>> cells;
    const int l = spec.factor_count();
    for (int f = 0; f < l; ++f)
        for (int k = 0; k < spec.factors()[static_cast<size_t>(f)]; ++k)
            for (int c = 0; c < l; ++c)
                if (c != f) cells.emplace_back(spec.row_offset(f) + k, c);
    return cells;
}

inline std::uint64_t reduced_product_space(const PolytopeSpec& spec) {
    const int free_bits =
        spec.dimension() * spec.factor_count() - spec.dimension();
    if (free_bits > 30)
        throw CapExceededError("reduced-matrix enumeration: space too large");
    return std::uint64_t{1} << free_bits;
}

// Visits every valid reduced matrix whose free-cell mask lies in
// [range.begin, range.end), in increasing mask order. The filter re-checks
// the full condition; the diagonal-block restriction only shrinks the
// candidate space.
template <class Visit>
void for_each_reduced_product_in(const PolytopeSpec& spec, IndexRange range,
                                 Visit&& visit) {
    const auto cells = reduced_free_cells(spec);
    const std::uint64_t space = reduced_product_space(spec);
    const std::uint64_t hi = std::min(range.end, space);
    const int n = spec.dimension();
    const int l = spec.factor_count();
    BitMatrix base(n, l);
    for (int f = 0; f < l; ++f)
        for (int k = 0; k < spec.factors()[static_cast<size_t>(f)]; ++k)
            base.set(spec.row_offset(f) + k, f, 1);
    for (std::uint64_t m = range.begin; m < hi; ++m) {
        BitMatrix cand = base;
        std::uint64_t bits = m;
        while (bits) {
            const int b = std::countr_zero(bits);
            bits &= bits - 1;
            cand.set(cells[static_cast<size_t>(b)].first,
                     cells[static_cast<size_t>(b)].second, 1);
        }
        if (nonsingular_product_check(cand, spec)) visit(cand);
    }
}

template <class Visit>
void for_each_reduced_product(const PolytopeSpec& spec, Visit&& visit) {
    for_each_reduced_product_in(spec, {0, reduced_product_space(spec)},
                                std::forward<Visit>(visit));
}

inline BigCount count_reduced_product_in(const PolytopeSpec& spec, IndexRange range) {
    std::uint64_t c = 0;
    for_each_reduced_product_in(spec, range, [&](const BitMatrix&) { ++c; });
    return BigCount(c);
}

inline BigCount count_reduced_product(const PolytopeSpec& spec) {
    return count_reduced_product_in(spec, {0, reduced_product_space(spec)});
}

// Block-support digraph of a valid reduced matrix: one node per factor,
// an edge (i, j) whenever block (i, j) is nonzero. Always acyclic.
inline Digraph reduced_to_dag(const ReducedMatrix& r) {
    const auto& spec = r.spec();
    const int l = spec.factor_count();
    Digraph g(l);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            if (i == j) continue;
            bool nonzero = false;
            for (int k = 0; k < spec.factors()[static_cast<size_t>(i)]; ++k)
                if (r.matrix().get(spec.row_offset(i) + k, j)) {
                    nonzero = true;
                    break;
                }
            if (nonzero) g.add_edge(i, j);
        }
    return g;
}

}  // namespace covercount
