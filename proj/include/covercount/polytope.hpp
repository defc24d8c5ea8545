#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "covercount/errors.hpp"

namespace covercount {

// An n-cube or a product of simplices Delta^{n_1} x ... x Delta^{n_l}.
// The cube is the all-ones product; a separate tag is kept only so that
// descriptors print the way the object was requested.
//
// Facet/column convention: the leading n columns hold, factor by factor,
// the facets k = 1..n_i of each factor; the trailing l columns hold each
// factor's omitted facet (k = 0). For the cube this is the usual pairing
// in which columns j and n+j are the two opposite facets of direction j,
// and the leading n facets share a vertex, so the left block of a valid
// characteristic matrix is always invertible.
class PolytopeSpec {
public:
    static PolytopeSpec cube(int n) {
        if (n < 1) throw InvalidInputError("PolytopeSpec: cube dimension < 1");
        return PolytopeSpec(std::vector<int>(static_cast<size_t>(n), 1), true);
    }

    static PolytopeSpec simplex_product(std::vector<int> factors) {
        return PolytopeSpec(std::move(factors), false);
    }

    int dimension() const { return n_; }
    int factor_count() const { return static_cast<int>(factors_.size()); }
    int facet_count() const { return n_ + factor_count(); }
    const std::vector<int>& factors() const { return factors_; }

    // Structural cube test (every factor is a 1-simplex), regardless of how
    // the spec was requested.
    bool is_cube() const { return n_ == factor_count(); }

    // Column of facet k (1 <= k <= n_i) of factor i.
    int leading_col(int factor, int k) const {
        return row_offset(factor) + (k - 1);
    }

    // Column of the omitted facet of factor i.
    int trailing_col(int factor) const { return n_ + factor; }

    // First row of the block belonging to factor i (rows are grouped by
    // factor in the same order as the leading columns).
    int row_offset(int factor) const {
        return offsets_[static_cast<size_t>(factor)];
    }

    // All vertices as sorted n-element sets of facet column indices. Each
    // vertex omits exactly one facet per factor; choices are visited in
    // mixed-radix order (factor 0 fastest).
    std::vector<std::vector<int>> vertices() const {
        const int l = factor_count();
        std::vector<int> omit(static_cast<size_t>(l), 0);
        std::vector<std::vector<int>> out;
        while (true) {
            std::vector<int> v;
            v.reserve(static_cast<size_t>(n_));
            for (int i = 0; i < l; ++i) {
                for (int k = 1; k <= factors_[static_cast<size_t>(i)]; ++k)
                    if (k != omit[static_cast<size_t>(i)])
                        v.push_back(leading_col(i, k));
                if (omit[static_cast<size_t>(i)] != 0)
                    v.push_back(trailing_col(i));
            }
            std::sort(v.begin(), v.end());
            out.push_back(std::move(v));
            int i = 0;
            for (; i < l; ++i) {
                if (++omit[static_cast<size_t>(i)] <= factors_[static_cast<size_t>(i)])
                    break;
                omit[static_cast<size_t>(i)] = 0;
            }
            if (i == l) break;
        }
        return out;
    }

    std::string descriptor() const {
        if (cube_tag_) return "cube(" + std::to_string(n_) + ")";
        std::string s = "simplices(";
        for (size_t i = 0; i < factors_.size(); ++i) {
            if (i) s.push_back(',');
            s += std::to_string(factors_[i]);
        }
        s.push_back(')');
        return s;
    }

    friend bool operator==(const PolytopeSpec& a, const PolytopeSpec& b) {
        return a.factors_ == b.factors_;
    }

private:
    PolytopeSpec(std::vector<int> factors, bool cube_tag)
        : factors_(std::move(factors)), cube_tag_(cube_tag) {
        if (factors_.empty())
            throw InvalidInputError("PolytopeSpec: needs at least one factor");
        for (int f : factors_)
            if (f < 1) throw InvalidInputError("PolytopeSpec: factor dimension < 1");
        offsets_.resize(factors_.size());
        int acc = 0;
        for (size_t i = 0; i < factors_.size(); ++i) {
            offsets_[i] = acc;
            acc += factors_[i];
        }
        n_ = acc;
    }

    std::vector<int> factors_;
    std::vector<int> offsets_;
    int n_ = 0;
    bool cube_tag_ = false;
};

}  // namespace covercount
