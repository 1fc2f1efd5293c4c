#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qstab/errors.hpp"

namespace qstab {

// Dense matrix over the prime field F_p. Entries are stored reduced mod p.
// Zero rows or columns are legal; a 0x0 matrix is the identity of the empty
// vector space.
class FpMat {
public:
    FpMat() : p_(2), rows_(0), cols_(0) {}
    FpMat(uint32_t p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static FpMat identity(uint32_t p, std::size_t n);
    static FpMat from_rows(uint32_t p,
                           const std::vector<std::vector<uint32_t>>& rows);

    uint32_t p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    uint32_t at(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    void set(std::size_t r, std::size_t c, uint32_t v) {
        data_[r * cols_ + c] = v % p_;
    }

    bool operator==(const FpMat& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ &&
               data_ == o.data_;
    }
    bool operator!=(const FpMat& o) const { return !(*this == o); }

    bool is_zero() const;
    FpMat transpose() const;
    FpMat mul(const FpMat& rhs) const;
    FpMat add(const FpMat& rhs) const;
    FpMat sub(const FpMat& rhs) const;
    FpMat scale(uint32_t c) const;
    FpMat hstack(const FpMat& rhs) const;
    FpMat vstack(const FpMat& below) const;
    FpMat columns(const std::vector<std::size_t>& idx) const;

    // Reduced row echelon form; if pivots is non-null it receives the pivot
    // column of each nonzero row in order.
    FpMat rref(std::vector<std::size_t>* pivots = nullptr) const;
    std::size_t rank() const;

    // Columns form a basis of the null space, in column echelon form.
    // Returns a cols x nullity matrix.
    FpMat kernel_basis() const;

    // Canonical basis of the column span: column echelon form with pivot
    // rows normalized, computed as transpose of rref of transpose. Two
    // matrices have the same column span iff their canonical forms agree.
    FpMat column_span_canonical() const;

    // Inverse of a square matrix; InternalAssertion if singular.
    FpMat inverse() const;

    // True if every column of cand lies in the column span of this.
    bool columns_in_span(const FpMat& cand) const;

    // Solves this * X = rhs column by column. Returns false if any column
    // is unsolvable, otherwise stores a solution (cols x rhs.cols) in out.
    bool solve_columns(const FpMat& rhs, FpMat* out) const;

    // Row-major entry dump, used for canonical encodings.
    std::string encode() const;

private:
    uint32_t p_;
    std::size_t rows_, cols_;
    std::vector<uint32_t> data_;
};

uint32_t fp_inv(uint32_t a, uint32_t p);

// All subspaces of F_p^d as canonical column-echelon basis matrices (d x k
// each), every dimension 0..d, memoized. Order: by dimension, then
// lexicographic on the encoding.
const std::vector<FpMat>& all_subspaces(uint32_t p, std::size_t d);

bool is_prime(uint32_t n);

} // namespace qstab
