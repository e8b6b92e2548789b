#pragma once

#include <cstdint>
#include <memory>
#include <vector>

// Exact integer matrices and Smith normal form. The elimination workspace
// uses arbitrary-precision integers (GMP): unimodular transforms outgrow any
// fixed width even on small inputs. Invariant factors are returned as int64
// and the conversion is checked.

namespace okh {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows, std::vector<int64_t>(cols, 0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    int64_t get(std::size_t i, std::size_t j) const { return a_[i][j]; }
    void set(std::size_t i, std::size_t j, int64_t v) { a_[i][j] = v; }
    void add(std::size_t i, std::size_t j, int64_t v);  // checked +=

    IntMatrix mul(const IntMatrix& o) const;  // checked
    bool is_zero() const;

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::vector<int64_t>> a_;
};

// Arbitrary-precision matrix, only as large as the transforms need.
class BigMatrix {
public:
    BigMatrix();
    BigMatrix(std::size_t rows, std::size_t cols);
    BigMatrix(const BigMatrix&);
    BigMatrix(BigMatrix&&) noexcept;
    BigMatrix& operator=(const BigMatrix&);
    BigMatrix& operator=(BigMatrix&&) noexcept;
    ~BigMatrix();

    std::size_t rows() const;
    std::size_t cols() const;
    void set(std::size_t i, std::size_t j, int64_t v);

    BigMatrix mul(const BigMatrix& o) const;
    static BigMatrix lift(const IntMatrix& m);

    bool operator==(const BigMatrix& o) const;

private:
    struct Impl;
    std::unique_ptr<Impl> p_;
    friend struct SmithAccess;
};

struct SmithResult {
    std::vector<int64_t> diag;  // d1 | d2 | ... , di >= 0
    BigMatrix u, v;             // unimodular, u * a * v = diag(padded)
};

SmithResult smith_normal_form(const IntMatrix& a);

// invariant factors only; skips the transform bookkeeping
std::vector<int64_t> smith_diag(const IntMatrix& a);

// rank over Q (= number of nonzero diagonal entries of the SNF)
std::size_t int_rank(const IntMatrix& a);

}  // namespace okh
