// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "covercount/covercount.hpp"

using namespace covercount;

namespace {

struct Gate {
    int failures = 0;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        ++failures;
        if (notes.size() < 8) notes.push_back(what);
    }

    template <class T, class U>
    void equal(const T& expected, const U& actual, const std::string& what) {
        require(expected == actual, what);
    }
};

// Ordered factor tuples with the given total dimension.
void compositions(int total, std::vector<int>& prefix,
                  std::vector<std::vector<int>>& out) {
    if (total == 0) {
        if (!prefix.empty()) out.push_back(prefix);
        return;
    }
    for (int head = 1; head <= total; ++head) {
        prefix.push_back(head);
        compositions(total - head, prefix, out);
        prefix.pop_back();
    }
}

std::vector<std::vector<int>> compositions(int total) {
    std::vector<std::vector<int>> out;
    std::vector<int> prefix;
    compositions(total, prefix, out);
    return out;
}

std::string spec_name(const std::vector<int>& factors) {
    return PolytopeSpec::simplex_product(factors).descriptor();
}

// The closed form for three factors in x_i = 2^(n_i) - 1; an independent
// route to the DAG-sum value.
BigCount dj_three_poly(int n1, int n2, int n3) {
    const BigCount x1 = pow2(n1) - 1, x2 = pow2(n2) - 1, x3 = pow2(n3) - 1;
    const BigCount s = x1 + x2 + x3;
    return 1 + 2 * s + s * s + (x1 * x2 + x2 * x3 + x3 * x1) +
           s * (x1 * x1 + x2 * x2 + x3 * x3) - x1 * x1 * x1 - x2 * x2 * x2 -
           x3 * x3 * x3;
}

// --------------------------------------------------------------------------

void criterion_1_labeled_table(Gate& g) {
    const std::vector<std::uint64_t> expected{1,    1,     3,       25,
                                              543,  29281, 3781503, 1138779265};
    for (int n = 0; n < 8; ++n)
        g.equal(BigCount(expected[static_cast<size_t>(n)]), labeled_dag_count(n),
                "R_" + std::to_string(n));
}

void criterion_2_bijection(Gate& g) {
    for (int n = 0; n <= 5; ++n) {
        const BigCount r = labeled_dag_count(n);
        g.equal(r, count_dags(n), "dag count at n=" + std::to_string(n));
        g.equal(r, count_mn(n), "M(n) count at n=" + std::to_string(n));
    }
    for (int n = 1; n <= 4; ++n) {
        std::set<std::uint64_t> image;
        bool round_trips = true;
        for_each_dag(n, [&](const Digraph& dag) {
            const BitMatrix b = dag_to_matrix(dag);
            if (matrix_to_dag(b) != dag) round_trips = false;
            image.insert(packed_key(b));
        });
        g.require(round_trips, "round trip at n=" + std::to_string(n));
        std::set<std::uint64_t> members;
        for_each_mn(n, [&](const BitMatrix& m) { members.insert(packed_key(m)); });
        g.require(image == members, "image vs M(n) at n=" + std::to_string(n));
    }
}

void criterion_3_equivariant_table(Gate& g) {
    const std::vector<std::uint64_t> expected{1, 1, 6, 259, 87360, 236240088};
    for (int n = 0; n <= 5; ++n)
        g.equal(BigCount(expected[static_cast<size_t>(n)]), equivariant_class_count(n),
                "Q_" + std::to_string(n));
}

void criterion_4_orbit_bruteforce(Gate& g) {
    for (int n = 0; n <= 3; ++n)
        g.equal(equivariant_class_count(n), orbit_count_equivariant_bruteforce(n),
                "orbits at n=" + std::to_string(n));
}

void criterion_5_fixed_point_law(Gate& g) {
    g.equal(BigCount(1), fixed_set_size(0, CubeSymmetry::identity(1)),
            "trivial fixed set at n=0");
    for (int n = 1; n <= 3; ++n) {
        const auto cf = enumerate_cf_cube(n);
        const auto group = all_cube_symmetries(n);
        g.equal(pow2(n) * factorial(n), BigCount(group.size()),
                "group order at n=" + std::to_string(n));
        for (const auto& sym : group) {
            const BigCount brute = fixed_set_size(cf, sym);
            const BigCount closed =
                sym.pair_perm().is_identity()
                    ? reflection_fixed_count(n, sym.reflection_count())
                    : BigCount(0);
            g.equal(closed, brute,
                    "fixed set at n=" + std::to_string(n) +
                        ", reflections=" + std::to_string(sym.reflection_count()));
        }
    }
}

void criterion_6_unlabeled_tables(Gate& g) {
    const std::vector<std::uint64_t> expected{1, 1, 2, 6, 31, 302};
    for (int n = 0; n <= 5; ++n) {
        g.equal(BigCount(expected[static_cast<size_t>(n)]), count_unlabeled_dags(n),
                "unlabeled DAGs at n=" + std::to_string(n));
        g.equal(BigCount(expected[static_cast<size_t>(n)]),
                sn_conjugation_orbit_count(n),
                "conjugation orbits at n=" + std::to_string(n));
    }
    g.equal(BigCount(5984), unlabeled_dag_bound_table(6), "stored bound at n=6");
}

void criterion_7_products(Gate& g) {
    std::vector<std::vector<int>> specs;
    for (int n = 1; n <= 4; ++n)
        for (auto& f : compositions(n)) specs.push_back(f);
    specs.push_back({1, 2, 2});
    specs.push_back({1, 1, 3});
    specs.push_back({2, 2, 2});
    for (const auto& factors : specs) {
        const PolytopeSpec spec = PolytopeSpec::simplex_product(factors);
        g.equal(dj_class_count(factors), count_reduced_product(spec),
                "formula vs enumeration over " + spec_name(factors));
    }
    g.equal(BigCount(5), dj_class_count({1, 2}), "value at (1,2)");
    g.equal(BigCount(7), dj_class_count({2, 2}), "value at (2,2)");
    g.equal(BigCount(25), dj_class_count({1, 1, 1}), "value at (1,1,1)");
    g.equal(BigCount(289), dj_three_poly(2, 2, 2), "polynomial at (2,2,2)");
    g.equal(BigCount(289), dj_class_count({2, 2, 2}), "DAG sum at (2,2,2)");
}

void criterion_8_structural(Gate& g) {
    for (int n = 1; n <= 4; ++n) {
        std::vector<BigCount> unit_poly;  // (x - 1)^n
        for (int k = 0; k <= n; ++k)
            unit_poly.push_back((k % 2 ? -1 : 1) * binomial(n, k));
        for_each_mn(n, [&](const BitMatrix& m) {
            if (char_poly_int(m) != unit_poly)
                g.require(false, "characteristic polynomial of " + to_line(m));
            const auto nf = conjugation_normal_form(m);
            if (nf.kind != ConjugationNormalForm::Kind::unipotent) {
                g.require(false, "normal form kind of " + to_line(m));
                return;
            }
            const BitMatrix t = conjugate_by_perm(m, nf.perm);
            for (int i = 0; i < n; ++i) {
                if (t.get(i, i) != 1)
                    g.require(false, "unit diagonal of " + to_line(m));
                for (int j = 0; j < i; ++j)
                    if (t.get(i, j) != 0)
                        g.require(false, "triangularity of " + to_line(m));
            }
        });
    }
    // Odd integer principal minors force unit minors, size <= 3 exhaustive.
    for (int n = 1; n <= 3; ++n) {
        for (std::uint32_t bits = 0; bits < (1u << (n * n)); ++bits) {
            BitMatrix m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if ((bits >> (i * n + j)) & 1u) m.set(i, j, 1);
            bool all_odd = true, all_one = true;
            for (std::uint32_t s = 1; s < (1u << n); ++s) {
                const BigCount d = principal_minor_int(m, s);
                if (d % 2 == 0) all_odd = false;
                if (d != 1) all_one = false;
            }
            if (all_odd && !all_one)
                g.require(false, "odd-minors matrix " + to_line(m));
        }
    }
}

void criterion_9_equivalences(Gate& g) {
    // Cube: vertex-determinant route vs principal-minor route.
    for (int n = 1; n <= 4; ++n) {
        const PolytopeSpec cube = PolytopeSpec::cube(n);
        const auto vertices = cube.vertices();
        const bool restricted = n == 4;  // unit diagonal only at n = 4
        const std::uint64_t cells = restricted
                                        ? static_cast<std::uint64_t>(n) * (n - 1)
                                        : static_cast<std::uint64_t>(n) * n;
        for (std::uint64_t cand = 0; cand < (std::uint64_t{1} << cells); ++cand) {
            BitMatrix r = restricted ? BitMatrix::identity(n) : BitMatrix(n, n);
            if (restricted) {
                int bit = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        if (i == j) continue;
                        if ((cand >> bit) & 1u) r.set(i, j, 1);
                        ++bit;
                    }
            } else {
                for (int i = 0; i < n; ++i)
                    r.set_row_bits(i, (cand >> (i * n)) & ((1u << n) - 1));
            }
            BitMatrix full(n, 2 * n);
            for (int i = 0; i < n; ++i)
                full.set_row_bits(i, (std::uint64_t{1} << i) | (r.row_bits(i) << n));
            if (is_characteristic(full, vertices) != all_principal_minors_one(r)) {
                g.require(false, "cube equivalence at " + to_line(r));
                return;
            }
        }
    }
    // Products: vertex-determinant route vs scalar-selection route.
    std::vector<std::vector<int>> specs;
    for (int n = 2; n <= 4; ++n)
        for (auto& f : compositions(n))
            if (f.size() >= 2) specs.push_back(f);
    for (const auto& factors : specs) {
        const PolytopeSpec spec = PolytopeSpec::simplex_product(factors);
        const int n = spec.dimension();
        const int l = spec.factor_count();
        const auto vertices = spec.vertices();
        const bool restricted = n == 4;
        const auto free_cells = reduced_free_cells(spec);
        const std::uint64_t space =
            restricted ? reduced_product_space(spec)
                       : (std::uint64_t{1} << (static_cast<std::uint64_t>(n) * l));
        for (std::uint64_t cand = 0; cand < space; ++cand) {
            BitMatrix r(n, l);
            if (restricted) {
                for (int f = 0; f < l; ++f)
                    for (int k = 0; k < factors[static_cast<size_t>(f)]; ++k)
                        r.set(spec.row_offset(f) + k, f, 1);
                for (size_t b = 0; b < free_cells.size(); ++b)
                    if ((cand >> b) & 1u)
                        r.set(free_cells[b].first, free_cells[b].second, 1);
            } else {
                for (int i = 0; i < n; ++i)
                    r.set_row_bits(i, (cand >> (i * l)) & ((1u << l) - 1));
            }
            BitMatrix full(n, n + l);
            for (int i = 0; i < n; ++i)
                full.set_row_bits(i, (std::uint64_t{1} << i) | (r.row_bits(i) << n));
            if (is_characteristic(full, vertices) !=
                nonsingular_product_check(r, spec)) {
                g.require(false, "product equivalence over " + spec_name(factors));
                return;
            }
        }
    }
}

void criterion_10_determinism(Gate& g) {
    const auto merge_count = [](BigCount& acc, BigCount&& part) { acc += part; };
    const auto merge_keys = [](std::set<std::uint64_t>& acc,
                               std::set<std::uint64_t>&& part) { acc.merge(part); };

    const auto cf = enumerate_cf_cube(3);
    std::vector<std::vector<int>> maps;
    for (const auto& sym : all_cube_symmetries(3)) maps.push_back(sym.column_map());

    for (int jobs : {1, 2, 8}) {
        const BigCount dags = parallel_reduce<BigCount>(
            0, dag_mask_space(4), jobs,
            [](IndexRange r) { return count_dags_in(4, r); }, merge_count);
        g.equal(BigCount(543), dags, "dag count with jobs=" + std::to_string(jobs));

        const BigCount mn = parallel_reduce<BigCount>(
            0, mn_mask_space(4), jobs,
            [](IndexRange r) { return count_mn_in(4, r); }, merge_count);
        g.equal(BigCount(543), mn, "M(n) count with jobs=" + std::to_string(jobs));

        const auto unlabeled = parallel_reduce<std::set<std::uint64_t>>(
            0, dag_mask_space(4), jobs,
            [](IndexRange r) {
                const auto part = unlabeled_canonical_keys_in(4, r);
                return std::set<std::uint64_t>(part.begin(), part.end());
            },
            merge_keys);
        g.equal(size_t{31}, unlabeled.size(),
                "unlabeled count with jobs=" + std::to_string(jobs));

        const auto orbits = parallel_reduce<std::set<std::uint64_t>>(
            0, cf.size(), jobs,
            [&](IndexRange r) {
                const auto part = equivariant_canonical_keys_in(cf, maps, r);
                return std::set<std::uint64_t>(part.begin(), part.end());
            },
            merge_keys);
        g.equal(size_t{259}, orbits.size(),
                "orbit count with jobs=" + std::to_string(jobs));
    }
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0 = no stated budget
    std::function<void(Gate&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "labeled DAG table, n = 0..7", 1.0, criterion_1_labeled_table},
        {2, "bijection at desk scale, n <= 5", 30.0, criterion_2_bijection},
        {3, "equivariant class table, n = 0..5", 1.0, criterion_3_equivariant_table},
        {4, "orbit brute force agreement, n <= 3", 60.0, criterion_4_orbit_bruteforce},
        {5, "fixed-point law over every symmetry, n <= 3", 0.0,
         criterion_5_fixed_point_law},
        {6, "unlabeled bound tables, n = 0..5 (+ stored 6)", 60.0,
         criterion_6_unlabeled_tables},
        {7, "product-of-simplices counts", 120.0, criterion_7_products},
        {8, "structural invariants of M(n) and odd-minor matrices", 0.0,
         criterion_8_structural},
        {9, "equivalence of non-singularity characterizations", 0.0,
         criterion_9_equivalences},
        {10, "determinism across jobs 1, 2, 8", 0.0, criterion_10_determinism},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Gate gate;
        const auto start = std::chrono::steady_clock::now();
        c.body(gate);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        bool pass = gate.failures == 0;
        std::string budget_note;
        if (c.budget_s > 0) {
            budget_note = ", budget " + std::to_string(static_cast<int>(c.budget_s)) + " s";
            if (secs > c.budget_s) {
                pass = false;
                gate.notes.push_back("runtime budget exceeded");
            }
        }
        std::printf("[%s] criterion %d: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                    c.name, secs, budget_note.c_str());
        for (const auto& note : gate.notes) std::printf("        %s\n", note.c_str());
        failed += !pass;
    }
    std::printf("%d/%zu criteria passed\n",
                static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
