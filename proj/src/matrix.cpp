#include "koszul/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace koszul {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(std::size_t cols, const std::vector<RatVec>& rows) {
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw AmbientMismatch("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

RatVec RationalMatrix::row(std::size_t i) const {
    RatVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

void RationalMatrix::append_row(const RatVec& r) {
    if (cols_ == 0 && rows_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw AmbientMismatch("row length mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
}

RationalMatrix RationalMatrix::reduced() const {
    RationalMatrix m = *this;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols_ && pivot_row < rows_; ++col) {
        // first nonzero column, topmost row
        std::size_t sel = rows_;
        for (std::size_t r = pivot_row; r < rows_; ++r) {
            if (!is_zero(m.at(r, col))) {
                sel = r;
                break;
            }
        }
        if (sel == rows_) continue;
        if (sel != pivot_row)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(pivot_row, j));
        Rat inv = 1 / m.at(pivot_row, col);
        for (std::size_t j = col; j < cols_; ++j) m.at(pivot_row, j) *= inv;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == pivot_row || is_zero(m.at(r, col))) continue;
            Rat f = m.at(r, col);
            for (std::size_t j = col; j < cols_; ++j) m.at(r, j) -= f * m.at(pivot_row, j);
        }
        ++pivot_row;
    }
    // drop zero rows
    RationalMatrix out(0, cols_);
    out.rows_ = 0;
    for (std::size_t r = 0; r < pivot_row; ++r) out.append_row(m.row(r));
    return out;
}

std::vector<std::size_t> RationalMatrix::pivot_columns() const {
    RationalMatrix r = reduced();
    std::vector<std::size_t> piv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (std::size_t j = 0; j < r.cols(); ++j) {
            if (!is_zero(r.at(i, j))) {
                piv.push_back(j);
                break;
            }
        }
    }
    return piv;
}

std::size_t RationalMatrix::rank() const { return reduced().rows(); }

RationalMatrix RationalMatrix::kernel() const {
    RationalMatrix r = reduced();
    std::vector<std::size_t> piv;
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (!is_zero(r.at(i, j))) {
                piv.push_back(j);
                is_pivot[j] = true;
                break;
            }
        }
    }
    RationalMatrix k(0, cols_);
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(cols_, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r.at(i, f);
        k.append_row(v);
    }
    return k.reduced();
}

RationalMatrix RationalMatrix::inverse() const {
    if (rows_ != cols_) throw AmbientMismatch("inverse of a non-square matrix");
    RationalMatrix aug(rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = 1;
    }
    RationalMatrix r = aug.reduced();
    if (r.rows() != rows_) throw AmbientMismatch("matrix is singular");
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (r.at(i, j) != Rat(i == j ? 1 : 0)) throw AmbientMismatch("matrix is singular");
    RationalMatrix inv(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) inv.at(i, j) = r.at(i, cols_ + j);
    return inv;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RationalMatrix RationalMatrix::multiply(const RationalMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw AmbientMismatch("matrix product shape mismatch");
    RationalMatrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (is_zero(at(i, k))) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                p.at(i, j) += at(i, k) * rhs.at(k, j);
        }
    return p;
}

RatVec RationalMatrix::apply(const RatVec& v) const {
    if (v.size() != cols_) throw AmbientMismatch("matrix apply shape mismatch");
    RatVec out(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!is_zero(at(i, j))) out[i] += at(i, j) * v[j];
    return out;
}

RatVec RationalMatrix::apply_left(const RatVec& v) const {
    if (v.size() != rows_) throw AmbientMismatch("matrix apply_left shape mismatch");
    RatVec out(cols_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i) {
        if (is_zero(v[i])) continue;
        for (std::size_t j = 0; j < cols_; ++j)
            if (!is_zero(at(i, j))) out[j] += v[i] * at(i, j);
    }
    return out;
}

RationalMatrix RationalMatrix::stacked(const RationalMatrix& below) const {
    if (rows_ == 0) return below;
    if (below.rows() == 0) return *this;
    if (cols_ != below.cols()) throw AmbientMismatch("stack shape mismatch");
    RationalMatrix s = *this;
    for (std::size_t i = 0; i < below.rows(); ++i) s.append_row(below.row(i));
    return s;
}

std::string RationalMatrix::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << " ";
            os << rat_str(at(i, j));
        }
        os << "]";
        if (i + 1 < rows_) os << "\n";
    }
    return os.str();
}

Subspace Subspace::from_span(const RationalMatrix& spanning_rows) {
    Subspace s;
    s.ambient_ = spanning_rows.cols();
    s.basis_ = spanning_rows.reduced();
    return s;
}

Subspace Subspace::zero(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = RationalMatrix(0, ambient);
    return s;
}

Subspace Subspace::full(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = RationalMatrix::identity(ambient);
    return s;
}

RatVec Subspace::residue(const RatVec& v) const {
    if (v.size() != ambient_) throw AmbientMismatch("residue ambient mismatch");
    RatVec r = v;
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        std::size_t p = 0;
        while (p < ambient_ && is_zero(basis_.at(i, p))) ++p;
        if (p == ambient_ || is_zero(r[p])) continue;
        Rat f = r[p];  // pivot entries are 1
        for (std::size_t j = p; j < ambient_; ++j) r[j] -= f * basis_.at(i, j);
    }
    return r;
}

bool Subspace::contains(const RatVec& v) const {
    RatVec r = residue(v);
    for (const Rat& x : r)
        if (!is_zero(x)) return false;
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw AmbientMismatch("contains ambient mismatch");
    for (std::size_t i = 0; i < other.basis_.rows(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

RatVec Subspace::coordinates(const RatVec& v) const {
    // pivot entries of the canonical basis read the coordinates off directly
    RatVec c(basis_.rows(), Rat(0));
    RatVec r = v;
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        std::size_t p = 0;
        while (p < ambient_ && is_zero(basis_.at(i, p))) ++p;
        c[i] = r[p];
        if (!is_zero(c[i]))
            for (std::size_t j = p; j < ambient_; ++j) r[j] -= c[i] * basis_.at(i, j);
    }
    for (const Rat& x : r)
        if (!is_zero(x)) throw AmbientMismatch("coordinates: vector not in subspace");
    return c;
}

Subspace Subspace::annihilator() const { return from_span(basis_.kernel()); }

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw AmbientMismatch("intersect ambient mismatch");
    return sum(a.annihilator(), b.annihilator()).annihilator();
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw AmbientMismatch("sum ambient mismatch");
    return Subspace::from_span(a.basis().stacked(b.basis()));
}

bool solve(const RationalMatrix& m, const RatVec& rhs, RatVec& x) {
    if (rhs.size() != m.rows()) throw AmbientMismatch("solve shape mismatch");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = rhs[i];
    }
    RationalMatrix r = aug.reduced();
    x.assign(m.cols(), Rat(0));
    for (std::size_t i = 0; i < r.rows(); ++i) {
        std::size_t p = 0;
        while (p < r.cols() && is_zero(r.at(i, p))) ++p;
        if (p == m.cols()) return false;  // row [0 ... 0 | 1]
        x[p] = r.at(i, m.cols());
    }
    return true;
}

}  // namespace koszul
