#include "okh/intmat.hpp"

#include <gmpxx.h>

#include <stdexcept>

namespace okh {

namespace {

[[noreturn]] void overflow_abort() {
    throw std::overflow_error("exact integer arithmetic overflowed 64 bits");
}

int64_t narrow(const mpz_class& v) {
    if (!v.fits_slong_p()) overflow_abort();
    return int64_t(v.get_si());
}

}  // namespace

void IntMatrix::add(std::size_t i, std::size_t j, int64_t v) {
    int64_t r;
    if (__builtin_add_overflow(a_[i][j], v, &r)) overflow_abort();
    a_[i][j] = r;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    if (cols_ != o.rows()) throw std::invalid_argument("IntMatrix::mul: dimension mismatch");
    IntMatrix out(rows_, o.cols());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < o.cols(); ++j) {
            __int128 acc = 0;
            for (std::size_t k = 0; k < cols_; ++k)
                acc += __int128(a_[i][k]) * o.get(k, j);
            if (acc > INT64_MAX || acc < INT64_MIN) overflow_abort();
            out.set(i, j, int64_t(acc));
        }
    return out;
}

bool IntMatrix::is_zero() const {
    for (const auto& row : a_)
        for (int64_t v : row)
            if (v) return false;
    return true;
}

struct BigMatrix::Impl {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<mpz_class>> a;
};

BigMatrix::BigMatrix() : p_(new Impl) {}
BigMatrix::BigMatrix(std::size_t rows, std::size_t cols) : p_(new Impl) {
    p_->rows = rows;
    p_->cols = cols;
    p_->a.assign(rows, std::vector<mpz_class>(cols, mpz_class(0)));
}
BigMatrix::BigMatrix(const BigMatrix& o) : p_(new Impl(*o.p_)) {}
BigMatrix::BigMatrix(BigMatrix&&) noexcept = default;
BigMatrix& BigMatrix::operator=(const BigMatrix& o) {
    if (this != &o) p_.reset(new Impl(*o.p_));
    return *this;
}
BigMatrix& BigMatrix::operator=(BigMatrix&&) noexcept = default;
BigMatrix::~BigMatrix() = default;

std::size_t BigMatrix::rows() const { return p_->rows; }
std::size_t BigMatrix::cols() const { return p_->cols; }
void BigMatrix::set(std::size_t i, std::size_t j, int64_t v) { p_->a[i][j] = mpz_class((long)v); }

BigMatrix BigMatrix::mul(const BigMatrix& o) const {
    if (p_->cols != o.rows()) throw std::invalid_argument("BigMatrix::mul: dimension mismatch");
    BigMatrix out(p_->rows, o.cols());
    for (std::size_t i = 0; i < p_->rows; ++i)
        for (std::size_t j = 0; j < o.cols(); ++j) {
            mpz_class acc = 0;
            for (std::size_t k = 0; k < p_->cols; ++k) acc += p_->a[i][k] * o.p_->a[k][j];
            out.p_->a[i][j] = acc;
        }
    return out;
}

BigMatrix BigMatrix::lift(const IntMatrix& m) {
    BigMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.set(i, j, m.get(i, j));
    return out;
}

bool BigMatrix::operator==(const BigMatrix& o) const {
    return p_->rows == o.p_->rows && p_->cols == o.p_->cols && p_->a == o.p_->a;
}

struct SmithAccess {
    static std::vector<std::vector<mpz_class>>& raw(BigMatrix& m) { return m.p_->a; }
};

namespace {

struct SnfWork {
    std::vector<std::vector<mpz_class>> a, u, v;
    std::size_t rows = 0, cols = 0;
    bool track = true;

    void row_swap(std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        if (track) std::swap(u[i], u[j]);
    }
    void col_swap(std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
        if (track)
            for (std::size_t r = 0; r < cols; ++r) std::swap(v[r][i], v[r][j]);
    }
    void row_axpy(std::size_t i, std::size_t j, const mpz_class& q) {  // row i -= q*row j
        if (q == 0) return;
        for (std::size_t c = 0; c < cols; ++c) a[i][c] -= q * a[j][c];
        if (track)
            for (std::size_t c = 0; c < rows; ++c) u[i][c] -= q * u[j][c];
    }
    void col_axpy(std::size_t i, std::size_t j, const mpz_class& q) {  // col i -= q*col j
        if (q == 0) return;
        for (std::size_t r = 0; r < rows; ++r) a[r][i] -= q * a[r][j];
        if (track)
            for (std::size_t r = 0; r < cols; ++r) v[r][i] -= q * v[r][j];
    }
    void row_negate(std::size_t i) {
        for (auto& x : a[i]) x = -x;
        if (track)
            for (auto& x : u[i]) x = -x;
    }
};

SnfWork run_snf(const IntMatrix& m, bool track) {
    std::size_t rows = m.rows(), cols = m.cols();
    SnfWork w;
    w.rows = rows;
    w.cols = cols;
    w.track = track;
    w.a.assign(rows, std::vector<mpz_class>(cols, mpz_class(0)));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) w.a[i][j] = mpz_class((long)m.get(i, j));
    if (track) {
        w.u.assign(rows, std::vector<mpz_class>(rows, mpz_class(0)));
        w.v.assign(cols, std::vector<mpz_class>(cols, mpz_class(0)));
        for (std::size_t i = 0; i < rows; ++i) w.u[i][i] = 1;
        for (std::size_t i = 0; i < cols; ++i) w.v[i][i] = 1;
    }

    std::size_t n = rows < cols ? rows : cols;
    std::size_t t = 0;
    while (t < n) {
        // smallest nonzero magnitude in the remaining block as pivot
        std::size_t pi = rows, pj = cols;
        mpz_class best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (w.a[i][j] == 0) continue;
                mpz_class x = abs(w.a[i][j]);
                if (best == 0 || x < best) { best = x; pi = i; pj = j; }
            }
        if (best == 0) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        // Euclidean cleaning of column t and row t until both stay zero
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i)
                while (w.a[i][t] != 0) {
                    mpz_class q = w.a[i][t] / w.a[t][t];
                    w.row_axpy(i, t, q);
                    if (w.a[i][t] != 0) w.row_swap(t, i);  // remainder becomes pivot
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                while (w.a[t][j] != 0) {
                    mpz_class q = w.a[t][j] / w.a[t][t];
                    w.col_axpy(j, t, q);
                    if (w.a[t][j] != 0) { w.col_swap(t, j); dirty = true; }
                }
            if (!dirty) {
                bool col_ok = true;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (w.a[i][t] != 0) col_ok = false;
                if (col_ok) break;
            }
        }
        if (w.a[t][t] < 0) w.row_negate(t);

        bool divides_all = true;
        for (std::size_t i = t + 1; i < rows && divides_all; ++i)
            for (std::size_t j = t + 1; j < cols; ++j)
                if (w.a[i][j] % w.a[t][t] != 0) {
                    w.row_axpy(t, i, mpz_class(-1));  // fold row i into the pivot row, redo
                    divides_all = false;
                    break;
                }
        if (divides_all) ++t;
    }
    return w;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    SnfWork w = run_snf(m, true);
    std::size_t rows = m.rows(), cols = m.cols();
    std::size_t n = rows < cols ? rows : cols;
    SmithResult res;
    res.diag.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) res.diag[i] = narrow(w.a[i][i]);
    res.u = BigMatrix(rows, rows);
    res.v = BigMatrix(cols, cols);
    SmithAccess::raw(res.u) = std::move(w.u);
    SmithAccess::raw(res.v) = std::move(w.v);
    return res;
}

std::vector<int64_t> smith_diag(const IntMatrix& m) {
    SnfWork w = run_snf(m, false);
    std::size_t n = m.rows() < m.cols() ? m.rows() : m.cols();
    std::vector<int64_t> d(n, 0);
    for (std::size_t i = 0; i < n; ++i) d[i] = narrow(w.a[i][i]);
    return d;
}

std::size_t int_rank(const IntMatrix& a) {
    std::vector<int64_t> d = smith_diag(a);
    std::size_t r = 0;
    for (int64_t x : d)
        if (x != 0) ++r;
    return r;
}

}  // namespace okh
