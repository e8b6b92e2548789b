#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <vector>

// Exact linear algebra over F2. Rows are packed into 64-bit blocks; all
// operations are pure and deterministic (leftmost pivot, topmost row).

namespace okh {

class F2Vec {
public:
    F2Vec() = default;
    explicit F2Vec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    F2Vec& operator^=(const F2Vec& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    friend F2Vec operator^(F2Vec a, const F2Vec& b) { a ^= b; return a; }

    bool is_zero() const {
        for (uint64_t w : w_) if (w) return false;
        return true;
    }
    // index of lowest set bit, or npos
    static constexpr std::size_t npos = ~std::size_t(0);
    std::size_t first_set() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return 64 * k + std::size_t(__builtin_ctzll(w_[k]));
        return npos;
    }
    std::size_t popcount() const {
        std::size_t c = 0;
        for (uint64_t w : w_) c += std::size_t(__builtin_popcountll(w));
        return c;
    }
    bool dot(const F2Vec& o) const {
        uint64_t acc = 0;
        for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
        return __builtin_popcountll(acc) & 1;
    }
    bool operator==(const F2Vec& o) const { return n_ == o.n_ && w_ == o.w_; }

private:
    std::size_t n_ = 0;
    std::vector<uint64_t> w_;
};

class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), r_(rows, F2Vec(cols)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t i, std::size_t j) const { return r_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool v) { r_[i].set(j, v); }
    void flip(std::size_t i, std::size_t j) { r_[i].flip(j); }

    F2Vec& row(std::size_t i) { return r_[i]; }
    const F2Vec& row(std::size_t i) const { return r_[i]; }

    F2Vec mul(const F2Vec& x) const;            // this * x
    F2Matrix mul(const F2Matrix& o) const;      // this * o
    F2Matrix transposed() const;

    bool operator==(const F2Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && r_ == o.r_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<F2Vec> r_;
};

struct RrefResult {
    F2Matrix m;
    std::vector<std::size_t> pivots;  // pivot column per nonzero row, increasing
};

// Row-reduced echelon form; row space preserved, leftmost pivot / topmost row.
RrefResult rref(const F2Matrix& m);

std::size_t rank(const F2Matrix& m);

// Some x with A x = b, if any. b.size() must equal A.rows().
std::optional<F2Vec> solve_f2(const F2Matrix& a, const F2Vec& b);

// Subspace of F2^n: basis rows in reduced echelon form, pivots increasing.
struct Subspace {
    std::size_t ambient = 0;
    std::vector<F2Vec> basis;            // echelonized
    std::vector<std::size_t> pivots;

    std::size_t dim() const { return basis.size(); }
    bool contains(const F2Vec& v) const; // membership via pivot reduction
    // reduce v modulo the subspace (eliminate pivot coordinates)
    F2Vec reduce(const F2Vec& v) const;
};

Subspace make_subspace(std::size_t ambient, std::vector<F2Vec> gens);

Subspace kernel_basis(const F2Matrix& a);
Subspace image_basis(const F2Matrix& a);

// Representatives projecting to a basis of V/W. Pre: W subset of V (checked).
std::vector<F2Vec> quotient_reps(const Subspace& v, const Subspace& w);

}  // namespace okh
