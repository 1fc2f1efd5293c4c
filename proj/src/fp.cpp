#include "qstab/fp.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace qstab {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint32_t fp_inv(uint32_t a, uint32_t p) {
    a %= p;
    if (a == 0) throw InternalAssertion("fp_inv of zero");
    // p is small and prime, so Fermat is fine.
    uint32_t result = 1, base = a, e = p - 2;
    while (e) {
        if (e & 1) result = (uint64_t(result) * base) % p;
        base = (uint64_t(base) * base) % p;
        e >>= 1;
    }
    return result;
}

FpMat FpMat::identity(uint32_t p, std::size_t n) {
    FpMat m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMat FpMat::from_rows(uint32_t p,
                       const std::vector<std::vector<uint32_t>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    FpMat m(p, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw InternalAssertion("from_rows: ragged input");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

bool FpMat::is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](uint32_t v) { return v == 0; });
}

FpMat FpMat::transpose() const {
    FpMat t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
}

FpMat FpMat::mul(const FpMat& rhs) const {
    if (cols_ != rhs.rows_ || p_ != rhs.p_)
        throw InternalAssertion("mul: shape or field mismatch");
    FpMat out(p_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            uint32_t a = at(i, k);
            if (!a) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                uint64_t v = out.at(i, j) + uint64_t(a) * rhs.at(k, j);
                out.set(i, j, uint32_t(v % p_));
            }
        }
    return out;
}

FpMat FpMat::add(const FpMat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
        throw InternalAssertion("add: shape or field mismatch");
    FpMat out(p_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = (data_[i] + rhs.data_[i]) % p_;
    return out;
}

FpMat FpMat::sub(const FpMat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
        throw InternalAssertion("sub: shape or field mismatch");
    FpMat out(p_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = (data_[i] + p_ - rhs.data_[i]) % p_;
    return out;
}

FpMat FpMat::scale(uint32_t c) const {
    FpMat out(p_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = (uint64_t(data_[i]) * c) % p_;
    return out;
}

FpMat FpMat::hstack(const FpMat& rhs) const {
    if (rows_ != rhs.rows_ || p_ != rhs.p_)
        throw InternalAssertion("hstack: shape or field mismatch");
    FpMat out(p_, rows_, cols_ + rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, at(r, c));
        for (std::size_t c = 0; c < rhs.cols_; ++c)
            out.set(r, cols_ + c, rhs.at(r, c));
    }
    return out;
}

FpMat FpMat::vstack(const FpMat& below) const {
    if (cols_ != below.cols_ || p_ != below.p_)
        throw InternalAssertion("vstack: shape or field mismatch");
    FpMat out(p_, rows_ + below.rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, at(r, c));
    for (std::size_t r = 0; r < below.rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out.set(rows_ + r, c, below.at(r, c));
    return out;
}

FpMat FpMat::columns(const std::vector<std::size_t>& idx) const {
    FpMat out(p_, rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] >= cols_) throw InternalAssertion("columns: index range");
        for (std::size_t r = 0; r < rows_; ++r) out.set(r, j, at(r, idx[j]));
    }
    return out;
}

FpMat FpMat::rref(std::vector<std::size_t>* pivots) const {
    FpMat m = *this;
    if (pivots) pivots->clear();
    std::size_t lead = 0;
    for (std::size_t col = 0; col < cols_ && lead < rows_; ++col) {
        std::size_t piv = lead;
        while (piv < rows_ && m.at(piv, col) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != lead)
            for (std::size_t c = 0; c < cols_; ++c) {
                uint32_t t = m.at(lead, c);
                m.set(lead, c, m.at(piv, c));
                m.set(piv, c, t);
            }
        uint32_t inv = fp_inv(m.at(lead, col), p_);
        for (std::size_t c = 0; c < cols_; ++c)
            m.set(lead, c, (uint64_t(m.at(lead, c)) * inv) % p_);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == lead) continue;
            uint32_t f = m.at(r, col);
            if (!f) continue;
            for (std::size_t c = 0; c < cols_; ++c) {
                uint64_t v =
                    m.at(r, c) + uint64_t(p_ - f) * m.at(lead, c);
                m.set(r, c, uint32_t(v % p_));
            }
        }
        if (pivots) pivots->push_back(col);
        ++lead;
    }
    return m;
}

std::size_t FpMat::rank() const {
    std::vector<std::size_t> piv;
    rref(&piv);
    return piv.size();
}

FpMat FpMat::kernel_basis() const {
    std::vector<std::size_t> piv;
    FpMat r = rref(&piv);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : piv) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    FpMat out(p_, cols_, free_cols.size());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        std::size_t fc = free_cols[j];
        out.set(fc, j, 1);
        for (std::size_t i = 0; i < piv.size(); ++i) {
            uint32_t v = r.at(i, fc);
            if (v) out.set(piv[i], j, p_ - v);
        }
    }
    return out;
}

FpMat FpMat::column_span_canonical() const {
    std::vector<std::size_t> piv;
    FpMat rt = transpose().rref(&piv); // rows of rt live in F_p^rows_
    FpMat trimmed(p_, piv.size(), rows_);
    for (std::size_t r = 0; r < piv.size(); ++r)
        for (std::size_t c = 0; c < rows_; ++c)
            trimmed.set(r, c, rt.at(r, c));
    return trimmed.transpose();
}

FpMat FpMat::inverse() const {
    if (rows_ != cols_) throw InternalAssertion("inverse: not square");
    FpMat aug = hstack(identity(p_, rows_));
    std::vector<std::size_t> piv;
    FpMat r = aug.rref(&piv);
    for (std::size_t i = 0; i < rows_; ++i)
        if (i >= piv.size() || piv[i] != i)
            throw InternalAssertion("inverse: singular matrix");
    FpMat out(p_, rows_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < rows_; ++j)
            out.set(i, j, r.at(i, rows_ + j));
    return out;
}

bool FpMat::columns_in_span(const FpMat& cand) const {
    if (cand.rows_ != rows_ || cand.p_ != p_)
        throw InternalAssertion("columns_in_span: shape or field mismatch");
    if (cand.cols_ == 0) return true;
    return hstack(cand).rank() == rank();
}

bool FpMat::solve_columns(const FpMat& rhs, FpMat* out) const {
    if (rhs.rows_ != rows_ || rhs.p_ != p_)
        throw InternalAssertion("solve_columns: shape or field mismatch");
    std::vector<std::size_t> piv;
    FpMat r = hstack(rhs).rref(&piv);
    // A pivot beyond this->cols_ marks an inconsistent column.
    for (std::size_t c : piv)
        if (c >= cols_) return false;
    FpMat x(p_, cols_, rhs.cols_);
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < rhs.cols_; ++j)
            x.set(piv[i], j, r.at(i, cols_ + j));
    if (out) *out = x;
    return true;
}

std::string FpMat::encode() const {
    std::string s;
    s.reserve(data_.size() * 2 + 16);
    s += std::to_string(rows_) + "x" + std::to_string(cols_) + ":";
    for (uint32_t v : data_) {
        s += std::to_string(v);
        s += ',';
    }
    return s;
}

namespace {

// Enumerate canonical column-echelon bases of k-dim subspaces of F_p^d.
// A canonical basis is determined by the pivot rows r_1 < ... < r_k plus
// arbitrary entries in rows below each pivot that are not pivot rows
// themselves. Column j has a 1 in row r_j, zeros in the other pivot rows,
// zeros above r_j.
void subspaces_of_dim(uint32_t p, std::size_t d, std::size_t k,
                      std::vector<FpMat>& out) {
    if (k == 0) {
        out.emplace_back(p, d, 0);
        return;
    }
    if (k > d) return;
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    while (true) {
        // Free positions: (row, col) with row > piv[col], row not a pivot.
        std::vector<std::pair<std::size_t, std::size_t>> free_pos;
        std::vector<bool> is_piv(d, false);
        for (std::size_t c : piv) is_piv[c] = true;
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t r = piv[j] + 1; r < d; ++r)
                if (!is_piv[r]) free_pos.emplace_back(r, j);
        std::vector<uint32_t> vals(free_pos.size(), 0);
        while (true) {
            FpMat m(p, d, k);
            for (std::size_t j = 0; j < k; ++j) m.set(piv[j], j, 1);
            for (std::size_t i = 0; i < free_pos.size(); ++i)
                m.set(free_pos[i].first, free_pos[i].second, vals[i]);
            out.push_back(std::move(m));
            std::size_t i = 0;
            for (; i < vals.size(); ++i) {
                if (++vals[i] < p) break;
                vals[i] = 0;
            }
            if (i == vals.size()) break;
        }
        // Next pivot combination in lexicographic order; piv[j] may grow
        // only while leaving room for the k-1-j entries after it.
        bool advanced = false;
        for (std::size_t j = k; j-- > 0;) {
            if (piv[j] < d - k + j) {
                ++piv[j];
                for (std::size_t l = j + 1; l < k; ++l)
                    piv[l] = piv[l - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) return;
    }
}

} // namespace

const std::vector<FpMat>& all_subspaces(uint32_t p, std::size_t d) {
    static std::map<std::pair<uint32_t, std::size_t>, std::vector<FpMat>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<FpMat> out;
    for (std::size_t k = 0; k <= d; ++k) {
        std::vector<FpMat> dim_k;
        subspaces_of_dim(p, d, k, dim_k);
        std::sort(dim_k.begin(), dim_k.end(),
                  [](const FpMat& a, const FpMat& b) {
                      return a.encode() < b.encode();
                  });
        for (auto& m : dim_k) out.push_back(std::move(m));
    }
    return cache.emplace(key, std::move(out)).first->second;
}

} // namespace qstab
