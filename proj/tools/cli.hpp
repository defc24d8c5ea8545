#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "covercount/covercount.hpp"

namespace covercount::cli {

inline constexpr const char* kGeneratorVersion = "covercount/1.0.0";

// Default problem-size policy; --allow-long-runs raises the enumeration
// caps to the library's hard limits.
inline constexpr int kDefaultEnumCap = 5;
inline constexpr int kLongRunEnumCap = 6;
inline constexpr int kBruteForceCubeCap = 3;
inline constexpr int kDefaultProductFreeBits = 22;
inline constexpr int kLongRunProductFreeBits = 30;

enum class Quantity {
    dj_classes,
    equivariant_classes,
    unlabeled_dag_bound,
    labeled_dags,
    gl_order,
    fixed_set,
};

inline const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::dj_classes: return "dj_classes";
        case Quantity::equivariant_classes: return "equivariant_classes";
        case Quantity::unlabeled_dag_bound: return "unlabeled_dag_bound";
        case Quantity::labeled_dags: return "labeled_dags";
        case Quantity::gl_order: return "gl_order";
        case Quantity::fixed_set: return "fixed_set";
    }
    return "?";
}

enum class Method { formula, recurrence, bruteforce, table };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::formula: return "formula";
        case Method::recurrence: return "recurrence";
        case Method::bruteforce: return "bruteforce";
        case Method::table: return "table";
    }
    return "?";
}

struct CountRecord {
    Quantity quantity;
    std::string polytope;
    std::string value;  // exact decimal string
    Method method;
    long long runtime_ms;
};

struct CheckLine {
    std::string check;
    std::string expected;
    std::string actual;
    bool pass;
};

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

// Renders count records and verification reports in the chosen format.
// JSON and CSV are schema-stable and byte-stable except for runtime_ms;
// the table format is for humans only.
class Emitter {
public:
    Emitter(std::string format, std::ostream& out) : format_(std::move(format)), out_(out) {}

    void record(const CountRecord& r) {
        if (format_ == "json") {
            out_ << "{\"quantity\":\"" << to_string(r.quantity) << "\",\"polytope\":\""
                 << json_escape(r.polytope) << "\",\"value\":\"" << r.value
                 << "\",\"method\":\"" << to_string(r.method)
                 << "\",\"runtime_ms\":" << r.runtime_ms << "}\n";
        } else if (format_ == "csv") {
            out_ << "quantity,polytope,value,method,runtime_ms\n"
                 << to_string(r.quantity) << ',' << r.polytope << ',' << r.value << ','
                 << to_string(r.method) << ',' << r.runtime_ms << '\n';
        } else {
            out_ << std::left << std::setw(22) << "quantity" << std::setw(18)
                 << "polytope" << std::setw(14) << "value" << std::setw(12) << "method"
                 << "runtime_ms\n";
            out_ << std::left << std::setw(22) << to_string(r.quantity) << std::setw(18)
                 << r.polytope << std::setw(14) << r.value << std::setw(12)
                 << to_string(r.method) << r.runtime_ms << '\n';
        }
    }

    void check(const CheckLine& c) {
        if (format_ == "json") {
            out_ << "{\"check\":\"" << json_escape(c.check) << "\",\"expected\":\""
                 << json_escape(c.expected) << "\",\"actual\":\"" << json_escape(c.actual)
                 << "\",\"pass\":" << (c.pass ? "true" : "false") << "}\n";
        } else if (format_ == "csv") {
            if (!csv_check_header_) {
                out_ << "check,expected,actual,pass\n";
                csv_check_header_ = true;
            }
            out_ << c.check << ',' << c.expected << ',' << c.actual << ','
                 << (c.pass ? "true" : "false") << '\n';
        } else {
            out_ << (c.pass ? "[ok]   " : "[FAIL] ") << c.check << ": expected "
                 << c.expected << ", got " << c.actual << '\n';
        }
    }

    void summary(const std::string& name, int checks, int failures) {
        if (format_ == "json") {
            out_ << "{\"verify\":\"" << json_escape(name) << "\",\"checks\":" << checks
                 << ",\"failures\":" << failures
                 << ",\"pass\":" << (failures == 0 ? "true" : "false") << "}\n";
        } else if (format_ == "table") {
            out_ << name << ": " << (checks - failures) << '/' << checks
                 << " checks passed\n";
        }
        // CSV reports carry the verdict in the rows and the exit code.
    }

private:
    std::string format_;
    std::ostream& out_;
    bool csv_check_header_ = false;
};

class Verifier {
public:
    explicit Verifier(Emitter& emitter) : emitter_(emitter) {}

    void expect(const std::string& check, const BigCount& expected,
                const BigCount& actual) {
        expect_str(check, expected.str(), actual.str());
    }

    void expect_str(const std::string& check, const std::string& expected,
                    const std::string& actual) {
        const bool pass = expected == actual;
        emitter_.check({check, expected, actual, pass});
        ++checks_;
        failures_ += !pass;
    }

    int finish(const std::string& name) {
        emitter_.summary(name, checks_, failures_);
        return failures_ == 0 ? 0 : 1;
    }

private:
    Emitter& emitter_;
    int checks_ = 0;
    int failures_ = 0;
};

inline std::string cube_descriptor(int n) { return "cube(" + std::to_string(n) + ")"; }

inline long long elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
}

// ---------------------------------------------------------------------------
// Count and enumeration commands.
// ---------------------------------------------------------------------------

struct Settings {
    std::string format = "table";
    int jobs = 1;
    bool allow_long_runs = false;

    int enum_cap() const { return allow_long_runs ? kLongRunEnumCap : kDefaultEnumCap; }
    int product_free_bits_cap() const {
        return allow_long_runs ? kLongRunProductFreeBits : kDefaultProductFreeBits;
    }
};

inline void require_cap(bool ok, const std::string& what) {
    if (!ok) throw CapExceededError(what + " (use --allow-long-runs to raise the cap)");
}

inline int run_count_dj_cube(const Settings& s, int n, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const BigCount value = labeled_dag_count(n);
    Emitter(s.format, out)
        .record({Quantity::dj_classes, cube_descriptor(n),
                 value.str(), Method::recurrence, elapsed_ms(start)});
    return 0;
}

inline int run_count_dj_product(const Settings& s, const std::vector<int>& factors,
                                std::ostream& out) {
    require_cap(static_cast<int>(factors.size()) <= s.enum_cap(),
                "count dj: factor count above cap");
    const auto start = std::chrono::steady_clock::now();
    const BigCount value = dj_class_count(factors);
    Emitter(s.format, out)
        .record({Quantity::dj_classes,
                 PolytopeSpec::simplex_product(factors).descriptor(), value.str(),
                 Method::formula, elapsed_ms(start)});
    return 0;
}

inline int run_count_equivariant(const Settings& s, int n, bool bruteforce,
                                 std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    BigCount value;
    Method method;
    if (bruteforce) {
        require_cap(n <= kBruteForceCubeCap, "count equivariant --bruteforce: n above cap");
        method = Method::bruteforce;
        if (n == 0) {
            value = 1;
        } else {
            const auto cf = enumerate_cf_cube(n);
            std::vector<std::vector<int>> maps;
            for (const auto& g : all_cube_symmetries(n)) maps.push_back(g.column_map());
            const auto keys = parallel_reduce<std::set<std::uint64_t>>(
                0, cf.size(), s.jobs,
                [&](IndexRange r) {
                    const auto part = equivariant_canonical_keys_in(cf, maps, r);
                    return std::set<std::uint64_t>(part.begin(), part.end());
                },
                [](std::set<std::uint64_t>& acc, std::set<std::uint64_t>&& part) {
                    acc.merge(part);
                });
            value = BigCount(keys.size());
        }
    } else {
        method = Method::formula;
        value = equivariant_class_count(n);
    }
    Emitter(s.format, out)
        .record({Quantity::equivariant_classes,
                 cube_descriptor(n), value.str(), method,
                 elapsed_ms(start)});
    return 0;
}

inline int run_count_unlabeled_bound(const Settings& s, int n, bool compute,
                                     std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    BigCount value;
    Method method;
    if (compute) {
        require_cap(n <= s.enum_cap(), "count unlabeled-bound --compute: n above cap");
        method = Method::bruteforce;
        const auto keys = parallel_reduce<std::set<std::uint64_t>>(
            0, dag_mask_space(n), s.jobs,
            [&](IndexRange r) {
                const auto part = unlabeled_canonical_keys_in(n, r);
                return std::set<std::uint64_t>(part.begin(), part.end());
            },
            [](std::set<std::uint64_t>& acc, std::set<std::uint64_t>&& part) {
                acc.merge(part);
            });
        value = BigCount(keys.size());
        if (n < static_cast<int>(kUnlabeledDagTable.size()) &&
            value != unlabeled_dag_bound_table(n))
            throw InternalConsistencyError(
                "count unlabeled-bound: computed value disagrees with the table");
    } else {
        method = Method::table;
        value = unlabeled_dag_bound_table(n);  // throws CapExceededError past n = 7
    }
    Emitter(s.format, out)
        .record({Quantity::unlabeled_dag_bound,
                 cube_descriptor(n), value.str(), method,
                 elapsed_ms(start)});
    return 0;
}

// Shared by `enumerate mn` and `enumerate dags`: with --out, stream the
// objects to the dump file and finish with a manifest line; the emitted
// record always carries the exact count.
template <class ForEachInRange, class CountInRange, class Serialize>
int run_enumerate(const Settings& s, const std::string& spec_name, Quantity quantity,
                  int n, const std::string& out_path, std::uint64_t space,
                  ForEachInRange for_each_in, CountInRange count_in, Serialize serialize,
                  std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    BigCount value = 0;
    if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) throw InvalidInputError("enumerate: cannot open " + out_path);
        std::uint64_t count = 0;
        for_each_in(IndexRange{0, space}, [&](const auto& obj) {
            file << serialize(obj) << '\n';
            ++count;
        });
        file << "# spec=" << spec_name << "(" << n << ") count=" << count
             << " generator=" << kGeneratorVersion << '\n';
        value = BigCount(count);
    } else {
        value = parallel_reduce<BigCount>(
            0, space, s.jobs, [&](IndexRange r) { return count_in(r); },
            [](BigCount& acc, BigCount&& part) { acc += part; });
    }
    Emitter(s.format, out)
        .record({quantity, cube_descriptor(n), value.str(),
                 Method::bruteforce, elapsed_ms(start)});
    return 0;
}

inline int run_enumerate_mn(const Settings& s, int n, const std::string& out_path,
                            std::ostream& out) {
    require_cap(n <= s.enum_cap(), "enumerate mn: n above cap");
    return run_enumerate(
        s, "mn", Quantity::dj_classes, n, out_path, mn_mask_space(n),
        [n](IndexRange r, auto&& f) { for_each_mn_in(n, r, f); },
        [n](IndexRange r) { return count_mn_in(n, r); },
        [](const BitMatrix& m) { return to_line(m); }, out);
}

inline int run_enumerate_dags(const Settings& s, int n, const std::string& out_path,
                              std::ostream& out) {
    require_cap(n <= s.enum_cap(), "enumerate dags: n above cap");
    return run_enumerate(
        s, "dags", Quantity::labeled_dags, n, out_path, dag_mask_space(n),
        [n](IndexRange r, auto&& f) { for_each_dag_in(n, r, f); },
        [n](IndexRange r) { return count_dags_in(n, r); },
        [](const Digraph& g) { return to_line(g); }, out);
}

// ---------------------------------------------------------------------------
// Verification commands.
// ---------------------------------------------------------------------------

inline int run_verify_bijection(const Settings& s, int n, std::ostream& out) {
    require_cap(n <= s.enum_cap(), "verify bijection: n above cap");
    Emitter emitter(s.format, out);
    Verifier v(emitter);

    const BigCount recurrence = labeled_dag_count(n);
    v.expect("dag_count_vs_recurrence(n=" + std::to_string(n) + ")", recurrence,
             count_dags(n));
    v.expect("mn_count_vs_recurrence(n=" + std::to_string(n) + ")", recurrence,
             count_mn(n));

    if (n >= 1) {
        std::uint64_t bad_round_trips = 0;
        std::set<std::uint64_t> image;
        for_each_dag(n, [&](const Digraph& g) {
            const BitMatrix b = dag_to_matrix(g);
            if (matrix_to_dag(b) != g) ++bad_round_trips;
            image.insert(packed_key(b));
        });
        v.expect("round_trip_failures", 0, BigCount(bad_round_trips));

        std::set<std::uint64_t> members;
        for_each_mn(n, [&](const BitMatrix& m) { members.insert(packed_key(m)); });
        v.expect_str("image_equals_mn", "equal", image == members ? "equal" : "different");
    }
    return v.finish("bijection(" + std::to_string(n) + ")");
}

inline int run_verify_burnside(const Settings& s, int n, std::ostream& out) {
    require_cap(n <= kBruteForceCubeCap, "verify burnside: n above cap");
    Emitter emitter(s.format, out);
    Verifier v(emitter);

    if (n == 0) {
        v.expect("orbits_vs_formula(n=0)", equivariant_class_count(0),
                 orbit_count_equivariant_bruteforce(0));
        return v.finish("burnside(0)");
    }

    const auto cf = enumerate_cf_cube(n);
    v.expect("census_equals_gl_order_times_dags", gl2_order(n) * labeled_dag_count(n),
             BigCount(cf.size()));

    std::vector<BigCount> fixed;
    BigCount nontrivial_pair_perm_fixed = 0;
    std::vector<BigCount> per_reflection_count_mismatch(static_cast<size_t>(n) + 1, 0);
    for (const auto& g : all_cube_symmetries(n)) {
        const BigCount f = fixed_set_size(cf, g);
        fixed.push_back(f);
        if (!g.pair_perm().is_identity()) {
            nontrivial_pair_perm_fixed += f;
        } else {
            const int k = g.reflection_count();
            if (f != reflection_fixed_count(n, k))
                per_reflection_count_mismatch[static_cast<size_t>(k)] += 1;
        }
    }
    v.expect("nontrivial_pair_permutation_fixed_total", 0, nontrivial_pair_perm_fixed);
    for (int k = 0; k <= n; ++k)
        v.expect("fixed_set_matches_closed_form(reflections=" + std::to_string(k) + ")",
                 0, per_reflection_count_mismatch[static_cast<size_t>(k)]);

    const BigCount brute = orbit_count_equivariant_bruteforce(n);
    v.expect("burnside_average_vs_orbits", brute,
             burnside(fixed, pow2(n) * factorial(n)));
    v.expect("orbits_vs_formula", equivariant_class_count(n), brute);
    return v.finish("burnside(" + std::to_string(n) + ")");
}

inline int run_verify_product(const Settings& s, const std::vector<int>& factors,
                              std::ostream& out) {
    const PolytopeSpec spec = PolytopeSpec::simplex_product(factors);
    const int free_bits = spec.dimension() * spec.factor_count() - spec.dimension();
    require_cap(static_cast<int>(factors.size()) <= s.enum_cap(),
                "verify product: factor count above cap");
    require_cap(free_bits <= s.product_free_bits_cap(),
                "verify product: candidate space above cap");
    Emitter emitter(s.format, out);
    Verifier v(emitter);

    const BigCount formula = dj_class_count(factors);

    std::map<std::uint64_t, BigCount> fiber;
    std::uint64_t cyclic_images = 0;
    BigCount enumerated = 0;
    for_each_reduced_product(spec, [&](const BitMatrix& m) {
        const Digraph g = reduced_to_dag(ReducedMatrix(spec, m));
        if (!is_acyclic(g)) ++cyclic_images;
        fiber[g.edge_mask()] += 1;
        enumerated += 1;
    });

    v.expect("formula_vs_enumeration", formula, enumerated);
    v.expect("cyclic_block_digraphs", 0, BigCount(cyclic_images));

    BigCount fiber_mismatches = 0;
    for_each_dag(spec.factor_count(), [&](const Digraph& g) {
        BigCount expected = 1;
        const auto degs = outdegrees(g);
        for (int i = 0; i < spec.factor_count(); ++i)
            for (int d = 0; d < degs[static_cast<size_t>(i)]; ++d)
                expected *= pow2(factors[static_cast<size_t>(i)]) - 1;
        const auto it = fiber.find(g.edge_mask());
        const BigCount actual = it == fiber.end() ? BigCount(0) : it->second;
        if (actual != expected) fiber_mismatches += 1;
    });
    v.expect("fiber_law_mismatches", 0, fiber_mismatches);

    return v.finish("product(" + spec.descriptor() + ")");
}

inline int run_verify_tables(const Settings& s, std::ostream& out) {
    Emitter emitter(s.format, out);
    Verifier v(emitter);
    for (int n = 0; n < static_cast<int>(kLabeledDagTable.size()); ++n)
        v.expect("labeled_dags(n=" + std::to_string(n) + ")",
                 BigCount(kLabeledDagTable[static_cast<size_t>(n)]),
                 labeled_dag_count(n));
    for (int n = 0; n < static_cast<int>(kEquivariantTable.size()); ++n)
        v.expect("equivariant_classes(n=" + std::to_string(n) + ")",
                 BigCount(kEquivariantTable[static_cast<size_t>(n)]),
                 equivariant_class_count(n));
    for (int n = 0; n <= 5; ++n)
        v.expect("unlabeled_bound(n=" + std::to_string(n) + ")",
                 unlabeled_dag_bound_table(n), count_unlabeled_dags(n));
    return v.finish("tables");
}

// ---------------------------------------------------------------------------
// Argument parsing. Exit codes: 0 success / all checks pass, 1 verification
// failure, 2 usage error, 3 cap exceeded.
// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"Exact counts of small covers over cubes and products of simplices"};
    app.require_subcommand(1);

    Settings settings;
    app.add_option("--format", settings.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    app.add_option("--jobs", settings.jobs, "Worker threads for enumerations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--allow-long-runs", settings.allow_long_runs,
                 "Raise enumeration caps to the long-run limits");

    // count
    auto* count = app.add_subcommand("count", "Closed-form and table-backed counts");
    count->fallthrough();
    count->require_subcommand(1);

    auto* count_dj = count->add_subcommand("dj", "D-J equivalence classes");
    count_dj->fallthrough();
    int dj_cube = -1;
    std::vector<int> dj_factors;
    auto* cube_opt = count_dj->add_option("--cube", dj_cube, "Cube dimension n");
    cube_opt->check(CLI::NonNegativeNumber);
    auto* simp_opt = count_dj->add_option("--simplices", dj_factors,
                                          "Simplex dimensions n1,n2,...")
                         ->delimiter(',');
    cube_opt->excludes(simp_opt);

    auto* count_eq = count->add_subcommand("equivariant",
                                           "Equivariant homeomorphism classes over a cube");
    count_eq->fallthrough();
    int eq_n = 0;
    bool eq_brute = false;
    count_eq->add_option("N", eq_n, "Cube dimension")->required()->check(CLI::NonNegativeNumber);
    count_eq->add_flag("--bruteforce", eq_brute, "Count orbits by explicit enumeration");

    auto* count_ub = count->add_subcommand("unlabeled-bound",
                                           "Unlabeled-DAG bound for homeomorphism classes");
    count_ub->fallthrough();
    int ub_n = 0;
    bool ub_compute = false;
    count_ub->add_option("N", ub_n, "Cube dimension")->required()->check(CLI::NonNegativeNumber);
    count_ub->add_flag("--compute", ub_compute, "Recompute by orbit enumeration");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "Exhaustive enumerations");
    enumerate->fallthrough();
    enumerate->require_subcommand(1);

    auto* enum_mn = enumerate->add_subcommand("mn", "Matrices with all principal minors 1");
    enum_mn->fallthrough();
    int mn_n = 0;
    std::string mn_out;
    enum_mn->add_option("N", mn_n, "Matrix size")->required()->check(CLI::PositiveNumber);
    enum_mn->add_option("--out", mn_out, "Dump file path");

    auto* enum_dags = enumerate->add_subcommand("dags", "Labeled acyclic digraphs");
    enum_dags->fallthrough();
    int dag_n = 0;
    std::string dag_out;
    enum_dags->add_option("N", dag_n, "Node count")->required()->check(CLI::NonNegativeNumber);
    enum_dags->add_option("--out", dag_out, "Dump file path");

    // verify
    auto* verify = app.add_subcommand("verify", "Cross-check independent routes");
    verify->fallthrough();
    verify->require_subcommand(1);

    auto* v_bij = verify->add_subcommand("bijection",
                                         "DAG enumeration vs minor-condition enumeration");
    v_bij->fallthrough();
    int bij_n = 0;
    v_bij->add_option("N", bij_n, "Size")->required()->check(CLI::NonNegativeNumber);

    auto* v_burn = verify->add_subcommand("burnside", "Fixed sets and orbit counts");
    v_burn->fallthrough();
    int burn_n = 0;
    v_burn->add_option("N", burn_n, "Cube dimension")->required()->check(CLI::NonNegativeNumber);

    auto* v_prod = verify->add_subcommand("product", "Formula vs brute force over a product");
    v_prod->fallthrough();
    std::vector<int> prod_factors;
    v_prod->add_option("factors", prod_factors, "Simplex dimensions n1,n2,...")
        ->required()
        ->delimiter(',');

    auto* v_tables = verify->add_subcommand("tables", "Formulas against stored tables");
    v_tables->fallthrough();

    std::vector<const char*> argv;
    argv.push_back("covercount");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (count_dj->parsed()) {
            if (dj_cube >= 0 && !dj_factors.empty()) {
                err << "count dj: pass either --cube or --simplices, not both\n";
                return 2;
            }
            if (dj_cube >= 0) return run_count_dj_cube(settings, dj_cube, out);
            if (!dj_factors.empty())
                return run_count_dj_product(settings, dj_factors, out);
            err << "count dj: one of --cube or --simplices is required\n";
            return 2;
        }
        if (count_eq->parsed())
            return run_count_equivariant(settings, eq_n, eq_brute, out);
        if (count_ub->parsed())
            return run_count_unlabeled_bound(settings, ub_n, ub_compute, out);
        if (enum_mn->parsed()) return run_enumerate_mn(settings, mn_n, mn_out, out);
        if (enum_dags->parsed()) return run_enumerate_dags(settings, dag_n, dag_out, out);
        if (v_bij->parsed()) return run_verify_bijection(settings, bij_n, out);
        if (v_burn->parsed()) return run_verify_burnside(settings, burn_n, out);
        if (v_prod->parsed()) return run_verify_product(settings, prod_factors, out);
        if (v_tables->parsed()) return run_verify_tables(settings, out);
        err << "no subcommand selected\n";
        return 2;
    } catch (const CapExceededError& e) {
        err << "cap exceeded: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace covercount::cli
