#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "koszul/rational.hpp"

namespace koszul {

struct AmbientMismatch : std::runtime_error {
    explicit AmbientMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Dense matrix over the rationals.  Row reduction uses a fixed pivot rule
// (first nonzero column, topmost row, pivot normalized to 1), so the reduced
// form is canonical and every derived basis is reproducible bit for bit.
class RationalMatrix {
  public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_rows(std::size_t cols, const std::vector<RatVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatVec row(std::size_t i) const;
    void append_row(const RatVec& r);

    bool operator==(const RationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    // Unique reduced row-echelon form; row space preserved.
    RationalMatrix reduced() const;
    // Indices of pivot columns of the reduced form, ascending.
    std::vector<std::size_t> pivot_columns() const;
    std::size_t rank() const;

    // Rows form a basis of the right null space { v : M v = 0 }, in reduced
    // row-echelon form.
    RationalMatrix kernel() const;

    RationalMatrix transpose() const;
    RationalMatrix inverse() const;  // throws AmbientMismatch when singular
    RationalMatrix multiply(const RationalMatrix& rhs) const;
    RatVec apply(const RatVec& v) const;          // M v
    RatVec apply_left(const RatVec& v) const;     // v^T M

    // Stacks rows of `below` underneath this matrix (equal column counts).
    RationalMatrix stacked(const RationalMatrix& below) const;

    std::string str() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

// A linear subspace of Q^n stored by its canonical (RREF) basis.  Two equal
// subspaces have identical representations.
class Subspace {
  public:
    Subspace() : ambient_(0) {}
    static Subspace from_span(const RationalMatrix& spanning_rows);
    static Subspace zero(std::size_t ambient);
    static Subspace full(std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const RationalMatrix& basis() const { return basis_; }

    bool contains(const RatVec& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

    // Perp in the dual coordinate space; involutive.
    Subspace annihilator() const;

    // Residue of v modulo the subspace: v minus its reduction against the
    // canonical basis.  Zero iff contains(v).
    RatVec residue(const RatVec& v) const;

    // Coordinates of v in the canonical basis.  Requires contains(v).
    RatVec coordinates(const RatVec& v) const;

  private:
    std::size_t ambient_;
    RationalMatrix basis_;  // RREF, independent rows
};

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

// Solves M x = rhs; returns true and writes one solution into x (the one with
// zero free coordinates) or returns false if inconsistent.
bool solve(const RationalMatrix& m, const RatVec& rhs, RatVec& x);

}  // namespace koszul
