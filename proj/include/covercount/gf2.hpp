#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covercount/bigcount.hpp"
#include "covercount/errors.hpp"

namespace covercount {

// ---------------------------------------------------------------------------
// Permutations of {0, ..., n-1}.
// ---------------------------------------------------------------------------

class Perm {
public:
    Perm() = default;

    explicit Perm(std::vector<int> images) : map_(std::move(images)) {
        const int n = static_cast<int>(map_.size());
        std::vector<char> seen(static_cast<size_t>(n), 0);
        for (int v : map_) {
            if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
                throw InvalidInputError("Perm: image sequence is not a bijection");
            seen[static_cast<size_t>(v)] = 1;
        }
    }

    static Perm identity(int n) {
        std::vector<int> m(static_cast<size_t>(n));
        std::iota(m.begin(), m.end(), 0);
        return Perm(std::move(m));
    }

    int size() const { return static_cast<int>(map_.size()); }

    int operator()(int i) const { return map_[static_cast<size_t>(i)]; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (map_[static_cast<size_t>(i)] != i) return false;
        return true;
    }

    Perm inverse() const {
        std::vector<int> inv(map_.size());
        for (int i = 0; i < size(); ++i) inv[static_cast<size_t>((*this)(i))] = i;
        return Perm(std::move(inv));
    }

    // (f.then_apply_after(g))(i) = f(g(i)); composition applies g first.
    static Perm compose(const Perm& f, const Perm& g) {
        if (f.size() != g.size())
            throw DimensionError("Perm::compose: size mismatch");
        std::vector<int> m(static_cast<size_t>(f.size()));
        for (int i = 0; i < f.size(); ++i) m[static_cast<size_t>(i)] = f(g(i));
        return Perm(std::move(m));
    }

    const std::vector<int>& images() const { return map_; }

    friend bool operator==(const Perm&, const Perm&) = default;

private:
    std::vector<int> map_;
};

// All n! permutations in lexicographic image order. n <= 8.
inline std::vector<Perm> all_perms(int n) {
    if (n < 0 || n > 8) throw CapExceededError("all_perms: n out of range");
    std::vector<int> m(static_cast<size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    std::vector<Perm> out;
    do {
        out.emplace_back(m);
    } while (std::next_permutation(m.begin(), m.end()));
    return out;
}

// ---------------------------------------------------------------------------
// Dense bit matrix; one 64-bit word per row, entry (i,j) = bit j of row i.
// ---------------------------------------------------------------------------

class BitMatrix {
public:
    static constexpr int kMaxRows = 16;
    static constexpr int kMaxCols = 64;

    BitMatrix(int n_rows, int n_cols) : n_rows_(n_rows), n_cols_(n_cols) {
        if (n_rows < 1 || n_rows > kMaxRows || n_cols < 1 || n_cols > kMaxCols)
            throw DimensionError("BitMatrix: shape out of supported range");
    }

    static BitMatrix identity(int n) {
        BitMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static BitMatrix zero(int n_rows, int n_cols) { return BitMatrix(n_rows, n_cols); }

    int rows() const { return n_rows_; }
    int cols() const { return n_cols_; }
    bool square() const { return n_rows_ == n_cols_; }

    int get(int i, int j) const {
        check_index(i, j);
        return static_cast<int>((row_[static_cast<size_t>(i)] >> j) & 1u);
    }

    void set(int i, int j, int v) {
        check_index(i, j);
        const std::uint64_t bit = std::uint64_t{1} << j;
        if (v)
            row_[static_cast<size_t>(i)] |= bit;
        else
            row_[static_cast<size_t>(i)] &= ~bit;
    }

    std::uint64_t row_bits(int i) const { return row_[static_cast<size_t>(i)]; }

    void set_row_bits(int i, std::uint64_t bits) {
        const std::uint64_t mask =
            n_cols_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_cols_) - 1;
        row_[static_cast<size_t>(i)] = bits & mask;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    void check_index(int i, int j) const {
        if (i < 0 || i >= n_rows_ || j < 0 || j >= n_cols_)
            throw DimensionError("BitMatrix: index out of range");
    }

    int n_rows_;
    int n_cols_;
    std::array<std::uint64_t, kMaxRows> row_{};
};

// ---------------------------------------------------------------------------
// Serialization: one matrix per line, rows joined by commas, character j of
// row i is entry (i,j) as '0'/'1'. No whitespace.
// ---------------------------------------------------------------------------

inline std::string to_line(const BitMatrix& m) {
    std::string out;
    out.reserve(static_cast<size_t>(m.rows() * (m.cols() + 1)));
    for (int i = 0; i < m.rows(); ++i) {
        if (i) out.push_back(',');
        for (int j = 0; j < m.cols(); ++j)
            out.push_back(m.get(i, j) ? '1' : '0');
    }
    return out;
}

inline BitMatrix bitmatrix_from_line(std::string_view line) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            parts.push_back(line.substr(start));
            break;
        }
        parts.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    if (parts.empty() || parts[0].empty())
        throw InvalidInputError("bitmatrix_from_line: empty row");
    BitMatrix m(static_cast<int>(parts.size()), static_cast<int>(parts[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(parts[static_cast<size_t>(i)].size()) != m.cols())
            throw InvalidInputError("bitmatrix_from_line: ragged rows");
        for (int j = 0; j < m.cols(); ++j) {
            const char c = parts[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (c != '0' && c != '1')
                throw InvalidInputError("bitmatrix_from_line: bad character");
            m.set(i, j, c == '1');
        }
    }
    return m;
}

// Packs the matrix into one word so that numeric order on keys equals
// lexicographic order on to_line() output (for fixed shape). Requires
// rows*cols <= 64.
inline std::uint64_t packed_key(const BitMatrix& m) {
    const int total = m.rows() * m.cols();
    if (total > 64) throw CapExceededError("packed_key: matrix too large");
    std::uint64_t key = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.get(i, j))
                key |= std::uint64_t{1} << (total - 1 - (i * m.cols() + j));
    return key;
}

// ---------------------------------------------------------------------------
// GF(2) linear algebra.
// ---------------------------------------------------------------------------

namespace detail {

// Elimination on raw row masks; returns 1 iff the n x n system is invertible.
inline int det_gf2_rows(std::array<std::uint64_t, BitMatrix::kMaxRows>& r, int n) {
    for (int c = 0; c < n; ++c) {
        const std::uint64_t bit = std::uint64_t{1} << c;
        int pivot = -1;
        for (int i = c; i < n; ++i)
            if (r[static_cast<size_t>(i)] & bit) {
                pivot = i;
                break;
            }
        if (pivot < 0) return 0;
        std::swap(r[static_cast<size_t>(c)], r[static_cast<size_t>(pivot)]);
        for (int i = c + 1; i < n; ++i)
            if (r[static_cast<size_t>(i)] & bit)
                r[static_cast<size_t>(i)] ^= r[static_cast<size_t>(c)];
    }
    return 1;
}

}  // namespace detail

inline int det_gf2(const BitMatrix& m) {
    if (!m.square()) throw DimensionError("det_gf2: matrix not square");
    std::array<std::uint64_t, BitMatrix::kMaxRows> r{};
    for (int i = 0; i < m.rows(); ++i) r[static_cast<size_t>(i)] = m.row_bits(i);
    return detail::det_gf2_rows(r, m.rows());
}

// Determinant of the submatrix on row/column set S, S given as a bitmask
// over {0, ..., n-1}. S must be non-empty.
inline int principal_minor_gf2(const BitMatrix& m, std::uint32_t subset) {
    if (!m.square()) throw DimensionError("principal_minor_gf2: matrix not square");
    const int n = m.rows();
    if (subset == 0 || (subset >> n) != 0)
        throw InvalidInputError("principal_minor_gf2: bad index subset");
    int cols[BitMatrix::kMaxRows];
    int k = 0;
    for (int j = 0; j < n; ++j)
        if (subset & (1u << j)) cols[k++] = j;
    std::array<std::uint64_t, BitMatrix::kMaxRows> r{};
    for (int i = 0; i < k; ++i) {
        const std::uint64_t src = m.row_bits(cols[i]);
        std::uint64_t packed = 0;
        for (int j = 0; j < k; ++j)
            packed |= ((src >> cols[j]) & 1u) << j;
        r[static_cast<size_t>(i)] = packed;
    }
    return detail::det_gf2_rows(r, k);
}

inline int principal_minor_gf2(const BitMatrix& m, std::span<const int> subset) {
    std::uint32_t mask = 0;
    for (int j : subset) {
        if (j < 0 || j >= m.rows())
            throw InvalidInputError("principal_minor_gf2: index out of range");
        mask |= 1u << j;
    }
    return principal_minor_gf2(m, mask);
}

// True iff every one of the 2^n - 1 principal minors is 1. Subsets are
// visited in increasing bitmask order with a short-circuit on the first
// zero minor; the predicate is pure so the order is unobservable.
inline bool all_principal_minors_one(const BitMatrix& m) {
    if (!m.square())
        throw DimensionError("all_principal_minors_one: matrix not square");
    const int n = m.rows();
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (std::uint32_t s = 1; s <= full; ++s)
        if (principal_minor_gf2(m, s) == 0) return false;
    return true;
}

inline BitMatrix inverse_gf2(const BitMatrix& m) {
    if (!m.square()) throw DimensionError("inverse_gf2: matrix not square");
    const int n = m.rows();
    std::array<std::uint64_t, BitMatrix::kMaxRows> a{};
    std::array<std::uint64_t, BitMatrix::kMaxRows> inv{};
    for (int i = 0; i < n; ++i) {
        a[static_cast<size_t>(i)] = m.row_bits(i);
        inv[static_cast<size_t>(i)] = std::uint64_t{1} << i;
    }
    for (int c = 0; c < n; ++c) {
        const std::uint64_t bit = std::uint64_t{1} << c;
        int pivot = -1;
        for (int i = c; i < n; ++i)
            if (a[static_cast<size_t>(i)] & bit) {
                pivot = i;
                break;
            }
        if (pivot < 0) throw SingularMatrixError("inverse_gf2: singular matrix");
        std::swap(a[static_cast<size_t>(c)], a[static_cast<size_t>(pivot)]);
        std::swap(inv[static_cast<size_t>(c)], inv[static_cast<size_t>(pivot)]);
        for (int i = 0; i < n; ++i)
            if (i != c && (a[static_cast<size_t>(i)] & bit)) {
                a[static_cast<size_t>(i)] ^= a[static_cast<size_t>(c)];
                inv[static_cast<size_t>(i)] ^= inv[static_cast<size_t>(c)];
            }
    }
    BitMatrix out(n, n);
    for (int i = 0; i < n; ++i) out.set_row_bits(i, inv[static_cast<size_t>(i)]);
    return out;
}

inline BitMatrix mul_gf2(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("mul_gf2: shape mismatch");
    BitMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        std::uint64_t acc = 0;
        std::uint64_t bits = a.row_bits(i);
        while (bits) {
            const int j = std::countr_zero(bits);
            bits &= bits - 1;
            acc ^= b.row_bits(j);
        }
        out.set_row_bits(i, acc);
    }
    return out;
}

inline BitMatrix select_columns(const BitMatrix& m, std::span<const int> idx) {
    if (idx.empty()) throw DimensionError("select_columns: empty selection");
    BitMatrix out(m.rows(), static_cast<int>(idx.size()));
    for (int k = 0; k < static_cast<int>(idx.size()); ++k) {
        const int j = idx[static_cast<size_t>(k)];
        if (j < 0 || j >= m.cols())
            throw DimensionError("select_columns: column index out of range");
        for (int i = 0; i < m.rows(); ++i)
            if (m.get(i, j)) out.set(i, k, 1);
    }
    return out;
}

// Conjugation convention, shared by every module: result(i,j) = m(p(i), p(j)).
// It is an action: conjugating by p then by q equals conjugating by
// Perm::compose(p, q).
inline BitMatrix conjugate_by_perm(const BitMatrix& m, const Perm& p) {
    if (!m.square() || m.rows() != p.size())
        throw DimensionError("conjugate_by_perm: size mismatch");
    const int n = m.rows();
    BitMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t src = m.row_bits(p(i));
        std::uint64_t packed = 0;
        for (int j = 0; j < n; ++j)
            packed |= ((src >> p(j)) & 1u) << j;
        out.set_row_bits(i, packed);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact integer paths (entries read as integers 0/1).
// ---------------------------------------------------------------------------

namespace detail {

// Fraction-free (Bareiss) determinant; divisions are exact by construction.
inline BigCount bareiss_det(std::vector<std::vector<BigCount>> a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    BigCount prev = 1;
    int sign = 1;
    for (int c = 0; c < n - 1; ++c) {
        if (a[static_cast<size_t>(c)][static_cast<size_t>(c)] == 0) {
            int pivot = -1;
            for (int i = c + 1; i < n; ++i)
                if (a[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return 0;
            std::swap(a[static_cast<size_t>(c)], a[static_cast<size_t>(pivot)]);
            sign = -sign;
        }
        for (int i = c + 1; i < n; ++i) {
            for (int j = c + 1; j < n; ++j) {
                BigCount num = a[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                                   a[static_cast<size_t>(c)][static_cast<size_t>(c)] -
                               a[static_cast<size_t>(i)][static_cast<size_t>(c)] *
                                   a[static_cast<size_t>(c)][static_cast<size_t>(j)];
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] = num / prev;
            }
            a[static_cast<size_t>(i)][static_cast<size_t>(c)] = 0;
        }
        prev = a[static_cast<size_t>(c)][static_cast<size_t>(c)];
    }
    return sign * a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
}

inline std::vector<std::vector<BigCount>> int_matrix(const BitMatrix& m) {
    std::vector<std::vector<BigCount>> a(
        static_cast<size_t>(m.rows()),
        std::vector<BigCount>(static_cast<size_t>(m.cols())));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.get(i, j);
    return a;
}

}  // namespace detail

// Exact integer determinant of the principal submatrix on the subset mask.
inline BigCount principal_minor_int(const BitMatrix& m, std::uint32_t subset) {
    if (!m.square()) throw DimensionError("principal_minor_int: matrix not square");
    const int n = m.rows();
    if (subset == 0 || (subset >> n) != 0)
        throw InvalidInputError("principal_minor_int: bad index subset");
    std::vector<int> idx;
    for (int j = 0; j < n; ++j)
        if (subset & (1u << j)) idx.push_back(j);
    const int k = static_cast<int>(idx.size());
    std::vector<std::vector<BigCount>> a(static_cast<size_t>(k),
                                         std::vector<BigCount>(static_cast<size_t>(k)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                m.get(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    return detail::bareiss_det(std::move(a));
}

inline BigCount det_int(const BitMatrix& m) {
    if (!m.square()) throw DimensionError("det_int: matrix not square");
    const std::uint32_t full =
        (m.rows() == 32) ? ~0u : ((1u << m.rows()) - 1);
    return principal_minor_int(m, full);
}

// Exact characteristic polynomial of the 0/1 matrix via the trace
// recurrence (Faddeev-LeVerrier). Coefficients ordered from x^n down to
// the constant term, leading coefficient 1.
inline std::vector<BigCount> char_poly_int(const BitMatrix& m) {
    if (!m.square()) throw DimensionError("char_poly_int: matrix not square");
    const int n = m.rows();
    const auto a = detail::int_matrix(m);
    std::vector<BigCount> coef(static_cast<size_t>(n) + 1);
    coef[0] = 1;
    std::vector<std::vector<BigCount>> mk;  // running power-sum matrix
    for (int k = 1; k <= n; ++k) {
        if (k == 1) {
            mk = a;
        } else {
            // mk <- a * (mk + coef[k-1] * I)
            auto t = mk;
            for (int i = 0; i < n; ++i)
                t[static_cast<size_t>(i)][static_cast<size_t>(i)] +=
                    coef[static_cast<size_t>(k - 1)];
            std::vector<std::vector<BigCount>> next(
                static_cast<size_t>(n), std::vector<BigCount>(static_cast<size_t>(n)));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    BigCount s = 0;
                    for (int r = 0; r < n; ++r)
                        s += a[static_cast<size_t>(i)][static_cast<size_t>(r)] *
                             t[static_cast<size_t>(r)][static_cast<size_t>(j)];
                    next[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(s);
                }
            mk = std::move(next);
        }
        BigCount tr = 0;
        for (int i = 0; i < n; ++i)
            tr += mk[static_cast<size_t>(i)][static_cast<size_t>(i)];
        coef[static_cast<size_t>(k)] = -exact_div(tr, k, "char_poly_int");
    }
    return coef;
}

}  // namespace covercount
