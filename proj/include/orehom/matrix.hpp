#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "orehom/rational.hpp"

namespace orehom {

using Vec = std::vector<Rat>;

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rat& c, const Vec& a);
bool vec_is_zero(const Vec& a);

// Dense matrix over exact rationals, row-major.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec column(std::size_t j) const;
    Vec row(std::size_t i) const;
    void set_column(std::size_t j, const Vec& v);

    Matrix transpose() const;
    bool is_zero() const;

    friend bool operator==(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Rat& c, const Matrix& a);
    Matrix operator-() const;

private:
    std::size_t rows_, cols_;
    std::vector<Rat> data_;
};

Vec mat_vec(const Matrix& m, const Vec& v);

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;  // pivot column indices, increasing
};

// Reduced row-echelon form; preserves the row space.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

// Columns form a basis of { v : m v = 0 }.
Matrix kernel_basis(const Matrix& m);

// Some x with m x = b, free variables set to zero; nullopt when inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

// Particular solutions for several right-hand sides at once (columns of b).
std::optional<Matrix> solve_columns(const Matrix& m, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& m);

// Kronecker product: entry (i*rb+k, j*cb+l) = a(i,j) b(k,l).
Matrix kron(const Matrix& a, const Matrix& b);

Matrix hstack(const Matrix& a, const Matrix& b);

// True iff v lies in the column space of m.
bool column_space_contains(const Matrix& m, const Vec& v);

}  // namespace orehom
