#pragma once

#include "mfcat/poly.hpp"

#include <stdexcept>
#include <vector>

namespace mfcat {

/// Dense matrix of polynomials. Zero-sized dimensions are legal (maps to or
/// from a zero module).
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(size_t rows, size_t cols, RingPtr ring)
        : rows_(rows), cols_(cols), ring_(std::move(ring)),
          data_(rows * cols, Poly::zero(ring_)) {}

    static PolyMatrix identity(size_t n, RingPtr ring) {
        PolyMatrix m(n, n, ring);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = Poly::constant(ring, Scalar(1));
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const RingPtr& ring() const { return ring_; }

    Poly& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const Poly& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    PolyMatrix operator*(const PolyMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("PolyMatrix: dimension mismatch");
        PolyMatrix r(rows_, o.cols_, ring_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const Poly& a = at(i, k);
                if (a.is_zero()) continue;
                for (size_t j = 0; j < o.cols_; ++j) {
                    const Poly& b = o.at(k, j);
                    if (!b.is_zero()) r.at(i, j) += a * b;
                }
            }
        return r;
    }

    PolyMatrix operator+(const PolyMatrix& o) const {
        PolyMatrix r(*this);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
        return r;
    }

    PolyMatrix operator-() const {
        PolyMatrix r(*this);
        for (auto& p : r.data_) p = -p;
        return r;
    }

    PolyMatrix operator-(const PolyMatrix& o) const { return *this + (-o); }

    PolyMatrix scaled(const Poly& s) const {
        PolyMatrix r(*this);
        for (auto& p : r.data_) p = p * s;
        return r;
    }

    PolyMatrix transposed() const {
        PolyMatrix r(cols_, rows_, ring_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    bool is_zero() const {
        for (auto& p : data_)
            if (!p.is_zero()) return false;
        return true;
    }

    bool operator==(const PolyMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

    PolyMatrix mapped_to(const RingPtr& target) const {
        PolyMatrix r(rows_, cols_, target);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].mapped_to(target);
        return r;
    }

    bool equals_scaled_identity(const Poly& s) const {
        if (rows_ != cols_) return false;
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) {
                if (i == j) { if (at(i, j) != s) return false; }
                else if (!at(i, j).is_zero()) return false;
            }
        return true;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    RingPtr ring_;
    std::vector<Poly> data_;
};

} // namespace mfcat
