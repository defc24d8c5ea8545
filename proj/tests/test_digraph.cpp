#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "covercount/counts.hpp"
#include "covercount/digraph.hpp"

using namespace covercount;

TEST_CASE("edge mask layout", "[digraph]") {
    // Ordered pairs row by row: (0,1),(0,2),(1,0),(1,2),(2,0),(2,1).
    CHECK(Digraph::pair_index(0, 1, 3) == 0);
    CHECK(Digraph::pair_index(0, 2, 3) == 1);
    CHECK(Digraph::pair_index(1, 0, 3) == 2);
    CHECK(Digraph::pair_index(2, 1, 3) == 5);
    CHECK_THROWS_AS(Digraph::pair_index(1, 1, 3), InvalidInputError);

    Digraph g(3);
    g.add_edge(0, 2);
    g.add_edge(2, 1);
    CHECK(g.edge_mask() == ((1u << 1) | (1u << 5)));
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 2}, {2, 1}});
    g.remove_edge(0, 2);
    CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("acyclicity", "[digraph]") {
    CHECK(is_acyclic(Digraph(4)));
    CHECK_FALSE(is_acyclic(Digraph::from_edges(2, {{0, 1}, {1, 0}})));
    CHECK(is_acyclic(Digraph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}})));
    CHECK_FALSE(is_acyclic(Digraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}})));

    int acyclic = 0;
    for (std::uint64_t m = 0; m < 64; ++m)
        if (is_acyclic(Digraph(3, m))) ++acyclic;
    CHECK(acyclic == 25);
}

TEST_CASE("topological order", "[digraph]") {
    CHECK(topo_order(Digraph(4)) == Perm::identity(4));
    CHECK(topo_order(Digraph::from_edges(3, {{2, 1}, {1, 0}})) == Perm({2, 1, 0}));

    // The order triangulates E + A(G) under the shared conjugation
    // convention, for every DAG on up to 4 nodes.
    for (int n = 1; n <= 4; ++n) {
        for_each_dag(n, [&](const Digraph& g) {
            const Perm p = topo_order(g);
            BitMatrix b = BitMatrix::identity(n);
            for (auto [i, j] : g.edges()) b.set(i, j, 1);
            const BitMatrix t = conjugate_by_perm(b, p);
            for (int i = 0; i < n; ++i) {
                CHECK(t.get(i, i) == 1);
                for (int j = 0; j < i; ++j) CHECK(t.get(i, j) == 0);
            }
            // Relabeling by the inverse sends edges upward.
            const Digraph sorted = relabel(g, p.inverse());
            for (auto [i, j] : sorted.edges()) CHECK(i < j);
        });
    }
}

TEST_CASE("cycle witness", "[digraph]") {
    const Digraph g = Digraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 1}});
    try {
        topo_order(g);
        FAIL("expected CycleError");
    } catch (const CycleError& e) {
        const auto& c = e.cycle();
        REQUIRE(c.size() >= 2);
        for (size_t i = 0; i < c.size(); ++i)
            CHECK(g.has_edge(c[i], c[(i + 1) % c.size()]));
    }
}

TEST_CASE("outdegrees and relabeling", "[digraph]") {
    CHECK(outdegrees(Digraph(3)) == std::vector<int>{0, 0, 0});
    const Digraph star = Digraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(outdegrees(star) == std::vector<int>{3, 0, 0, 0});

    const Perm rot({1, 2, 3, 0});
    const Digraph moved = relabel(star, rot);
    CHECK(outdegrees(moved) == std::vector<int>{0, 3, 0, 0});
    CHECK(moved.edge_count() == star.edge_count());
}

TEST_CASE("canonical form", "[digraph]") {
    CHECK(canonical_form(Digraph(2)) == "0000");
    CHECK(canonical_form(Digraph::from_edges(2, {{0, 1}})) ==
          canonical_form(Digraph::from_edges(2, {{1, 0}})));

    std::set<std::string> forms;
    for_each_dag(3, [&](const Digraph& g) { forms.insert(canonical_form(g)); });
    CHECK(forms.size() == 6);

    // Invariance under relabeling, all DAGs on up to 4 nodes.
    for (int n = 2; n <= 4; ++n) {
        const auto perms = all_perms(n);
        for_each_dag(n, [&](const Digraph& g) {
            const auto base = canonical_key(g);
            for (const auto& p : perms)
                CHECK(canonical_key(relabel(g, p)) == base);
        });
    }
}

TEST_CASE("labeled enumeration counts", "[digraph]") {
    CHECK(count_dags(0) == 1);
    CHECK(all_dags(1) == std::vector<Digraph>{Digraph(1)});
    CHECK(count_dags(2) == 3);
    CHECK(count_dags(4) == 543);
    for (int n = 0; n <= 4; ++n) CHECK(count_dags(n) == labeled_dag_count(n));
    CHECK_THROWS_AS(count_dags(7), CapExceededError);
}

TEST_CASE("unlabeled counts", "[digraph]") {
    CHECK(count_unlabeled_dags(0) == 1);
    CHECK(count_unlabeled_dags(3) == 6);
    CHECK(count_unlabeled_dags(4) == 31);
    CHECK(count_unlabeled_dags(5) == 302);

    // Bracketing by the labeled count.
    for (int n = 1; n <= 5; ++n) {
        const BigCount unl = count_unlabeled_dags(n);
        const BigCount lab = labeled_dag_count(n);
        CHECK(unl <= lab);
        CHECK(unl * factorial(n) >= lab);
    }
}

TEST_CASE("partitioned enumeration is deterministic", "[digraph]") {
    const std::uint64_t space = dag_mask_space(4);
    for (int parts : {1, 2, 8}) {
        BigCount total = 0;
        std::set<std::uint64_t> keys;
        for (const auto& r : split_range(0, space, parts)) {
            total += count_dags_in(4, r);
            for (std::uint64_t k : unlabeled_canonical_keys_in(4, r)) keys.insert(k);
        }
        CHECK(total == 543);
        CHECK(keys.size() == 31);
    }
}

TEST_CASE("digraph line serialization", "[digraph]") {
    const Digraph g = Digraph::from_edges(3, {{0, 1}, {2, 1}});
    CHECK(to_line(g) == "21 3");
    CHECK(digraph_from_line("21 3") == g);
    CHECK(to_line(Digraph(4)) == "0 4");
    CHECK(digraph_from_line(to_line(Digraph(5, 777))) == Digraph(5, 777));
    CHECK_THROWS_AS(digraph_from_line("zz 3"), InvalidInputError);
}
