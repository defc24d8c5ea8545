#pragma once

#include <array>
#include <cstdint>
#include <mutex>
#include <span>
#include <vector>

#include "covercount/bigcount.hpp"
#include "covercount/digraph.hpp"
#include "covercount/errors.hpp"

namespace covercount {

// Reference values for small n, used as run-time cross-checks and reported
// next to computed values by the verification surfaces.
// Labeled acyclic digraphs: OEIS A003024.
inline constexpr std::array<std::uint64_t, 8> kLabeledDagTable = {
    1, 1, 3, 25, 543, 29281, 3781503, 1138779265};
// Unlabeled acyclic digraphs: OEIS A003087.
inline constexpr std::array<std::uint64_t, 8> kUnlabeledDagTable = {
    1, 1, 2, 6, 31, 302, 5984, 243668};
// Equivariant homeomorphism classes of small covers over the n-cube.
inline constexpr std::array<std::uint64_t, 6> kEquivariantTable = {
    1, 1, 6, 259, 87360, 236240088};

// Number of acyclic digraphs on n labeled nodes, by the alternating
// binomial recurrence
//   R_n = sum_{k=1..n} (-1)^(k+1) C(n,k) 2^(k(n-k)) R_(n-k),   R_0 = 1.
// Memoized; safe for concurrent callers.
inline BigCount labeled_dag_count(int n) {
    if (n < 0) throw InvalidInputError("labeled_dag_count: negative n");
    static std::mutex memo_mutex;
    static std::vector<BigCount> memo{1};  // R_0
    std::lock_guard<std::mutex> lock(memo_mutex);
    while (static_cast<int>(memo.size()) <= n) {
        const int m = static_cast<int>(memo.size());
        BigCount acc = 0;
        for (int k = 1; k <= m; ++k) {
            const BigCount term =
                binomial(m, k) * pow2(static_cast<long long>(k) * (m - k)) *
                memo[static_cast<size_t>(m - k)];
            if (k % 2 == 1)
                acc += term;
            else
                acc -= term;
        }
        memo.push_back(acc);
    }
    return memo[static_cast<size_t>(n)];
}

// |GL(n, Z2)| = prod_{i=0..n-1} (2^n - 2^i); empty product at n = 0.
inline BigCount gl2_order(int n) {
    if (n < 0) throw InvalidInputError("gl2_order: negative n");
    BigCount r = 1;
    for (int i = 0; i < n; ++i) r *= pow2(n) - pow2(i);
    return r;
}

// Characteristic matrices over the n-cube fixed by a product of k facet
// reflections: |GL(n, Z2)| * 2^(k(n-k)) * R_(n-k). The trailing block of a
// fixed reduced matrix is free on k(n-k) cells above an arbitrary member of
// M(n-k).
inline BigCount reflection_fixed_count(int n, int k) {
    if (k < 0 || k > n) throw InvalidInputError("reflection_fixed_count: bad k");
    return gl2_order(n) * pow2(static_cast<long long>(k) * (n - k)) *
           labeled_dag_count(n - k);
}

// Burnside average: exact sum of fixed-point counts divided by the group
// order. A non-exact division means a fixed-point count upstream is wrong.
inline BigCount burnside(std::span<const BigCount> fixed_sizes,
                         const BigCount& group_order) {
    if (group_order < 1) throw InvalidInputError("burnside: group order < 1");
    BigCount sum = 0;
    for (const auto& f : fixed_sizes) sum += f;
    return exact_div(sum, group_order, "burnside");
}

// Equivariant homeomorphism classes of small covers over the n-cube:
//   Q_n = [sum_{k=0..n} C(n,k) 2^(k(n-k)) R_k] * |GL(n, Z2)| / (2^n n!).
inline BigCount equivariant_class_count(int n) {
    if (n < 0) throw InvalidInputError("equivariant_class_count: negative n");
    BigCount sum = 0;
    for (int k = 0; k <= n; ++k)
        sum += binomial(n, k) * pow2(static_cast<long long>(k) * (n - k)) *
               labeled_dag_count(k);
    const BigCount numerator = sum * gl2_order(n);
    const BigCount group = pow2(n) * factorial(n);
    return exact_div(numerator, group, "equivariant_class_count");
}

// D-J equivalence classes of small covers over a product of simplices
// Delta^(n_1) x ... x Delta^(n_l):
//   sum over labeled DAGs G on l nodes of prod_i (2^(n_i) - 1)^outdeg(i).
// With every factor a 1-simplex this specializes to R_l.
inline BigCount dj_class_count(std::span<const int> factors) {
    const int l = static_cast<int>(factors.size());
    if (l < 1) throw InvalidInputError("dj_class_count: empty factor list");
    for (int f : factors)
        if (f < 1) throw InvalidInputError("dj_class_count: factor dimension < 1");
    std::vector<BigCount> weight(static_cast<size_t>(l));
    for (int i = 0; i < l; ++i)
        weight[static_cast<size_t>(i)] = pow2(factors[static_cast<size_t>(i)]) - 1;
    BigCount total = 0;
    for_each_dag(l, [&](const Digraph& g) {
        BigCount term = 1;
        const auto degs = outdegrees(g);
        for (int i = 0; i < l; ++i)
            for (int d = 0; d < degs[static_cast<size_t>(i)]; ++d)
                term *= weight[static_cast<size_t>(i)];
        total += term;
    });
    return total;
}

inline BigCount dj_class_count(std::initializer_list<int> factors) {
    return dj_class_count(std::span<const int>(factors.begin(), factors.size()));
}

// Stored reference value of the unlabeled-DAG bound; n <= 7.
inline BigCount unlabeled_dag_bound_table(int n) {
    if (n < 0 || n >= static_cast<int>(kUnlabeledDagTable.size()))
        throw CapExceededError("unlabeled_dag_bound_table: n out of table range");
    return BigCount(kUnlabeledDagTable[static_cast<size_t>(n)]);
}

// Upper bound for weakly equivariant homeomorphism classes over the n-cube:
// the number of unlabeled acyclic digraphs. Computes by orbit enumeration
// when feasible (n <= 5 by default, n = 6 when forced) and cross-checks the
// stored table; falls back to the table alone for n = 6, 7.
inline BigCount unlabeled_dag_bound(int n, bool force_compute = false) {
    if (n < 0) throw InvalidInputError("unlabeled_dag_bound: negative n");
    const bool in_table = n < static_cast<int>(kUnlabeledDagTable.size());
    const bool computable = n <= 5 || (n == 6 && force_compute);
    if (!computable) {
        if (!in_table)
            throw CapExceededError("unlabeled_dag_bound: beyond table and computation");
        return unlabeled_dag_bound_table(n);
    }
    const BigCount computed = count_unlabeled_dags(n);
    if (in_table && computed != unlabeled_dag_bound_table(n))
        throw InternalConsistencyError(
            "unlabeled_dag_bound: computed value disagrees with the table");
    return computed;
}

}  // namespace covercount
