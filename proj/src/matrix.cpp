#include "orehom/matrix.hpp"

#include <stdexcept>

namespace orehom {

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_add: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_sub: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vec_scale(const Rat& c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

bool vec_is_zero(const Vec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("from_columns: column size mismatch");
        for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

Vec Matrix::column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

Vec Matrix::row(std::size_t i) const {
    Vec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
    if (v.size() != rows_) throw std::invalid_argument("set_column: size mismatch");
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix add: shape mismatch");
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sub: shape mismatch");
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix mul: shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rat& aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Rat& bkj = b.at(k, j);
                if (bkj != 0) r.at(i, j) += aik * bkj;
            }
        }
    return r;
}

Matrix operator*(const Rat& c, const Matrix& a) {
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = c * a.data_[i];
    return r;
}

Matrix Matrix::operator-() const { return Rat(-1) * (*this); }

Vec mat_vec(const Matrix& m, const Vec& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    Vec r(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (v[j] == 0) continue;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const Rat& mij = m.at(i, j);
            if (mij != 0) r[i] += mij * v[j];
        }
    }
    return r;
}

RrefResult rref(const Matrix& m) {
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = row;
        while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(row, j));
        Rat inv = Rat(1) / a.at(row, col);
        for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a.at(i, col) == 0) continue;
            Rat f = a.at(i, col);
            for (std::size_t j = col; j < a.cols(); ++j) a.at(i, j) -= f * a.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix kernel_basis(const Matrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<Vec> cols;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols());
        v[free] = 1;
        for (std::size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.reduced.at(k, free);
        cols.push_back(std::move(v));
    }
    return Matrix::from_columns(m.cols(), cols);
}

std::optional<Matrix> solve_columns(const Matrix& m, const Matrix& b) {
    if (b.rows() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
    Matrix aug = hstack(m, b);
    RrefResult r = rref(aug);
    Matrix x(m.cols(), b.cols());
    for (std::size_t k = 0; k < r.pivots.size(); ++k) {
        std::size_t p = r.pivots[k];
        if (p >= m.cols()) return std::nullopt;  // pivot in the augmented block
        for (std::size_t j = 0; j < b.cols(); ++j) x.at(p, j) = r.reduced.at(k, m.cols() + j);
    }
    return x;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    auto x = solve_columns(m, Matrix::from_columns(b.size(), {b}));
    if (!x) return std::nullopt;
    return x->column(0);
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve_columns(m, Matrix::identity(m.rows()));
    if (!x) return std::nullopt;
    if (!((m * *x) == Matrix::identity(m.rows()))) return std::nullopt;
    return x;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Rat& aij = a.at(i, j);
            if (aij == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r.at(i * b.rows() + k, j * b.cols() + l) = aij * b.at(k, l);
        }
    return r;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Matrix r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

bool column_space_contains(const Matrix& m, const Vec& v) {
    return rank(m) == rank(hstack(m, Matrix::from_columns(v.size(), {v})));
}

}  // namespace orehom
