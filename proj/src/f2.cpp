#include "okh/f2.hpp"

#include <stdexcept>

namespace okh {

F2Vec F2Matrix::mul(const F2Vec& x) const {
    if (x.size() != cols_) throw std::invalid_argument("F2Matrix::mul: dimension mismatch");
    F2Vec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        if (r_[i].dot(x)) y.set(i, true);
    return y;
}

F2Matrix F2Matrix::mul(const F2Matrix& o) const {
    if (cols_ != o.rows()) throw std::invalid_argument("F2Matrix::mul: dimension mismatch");
    F2Matrix out(rows_, o.cols());
    for (std::size_t i = 0; i < rows_; ++i) {
        const F2Vec& ri = r_[i];
        for (std::size_t k = 0; k < cols_; ++k)
            if (ri.get(k)) out.row(i) ^= o.row(k);
    }
    return out;
}

F2Matrix F2Matrix::transposed() const {
    F2Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (r_[i].get(j)) t.set(j, i, true);
    return t;
}

RrefResult rref(const F2Matrix& m) {
    RrefResult res{m, {}};
    std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = F2Vec::npos;
        for (std::size_t i = r; i < rows; ++i)
            if (res.m.get(i, c)) { pr = i; break; }
        if (pr == F2Vec::npos) continue;
        if (pr != r) std::swap(res.m.row(pr), res.m.row(r));
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && res.m.get(i, c)) res.m.row(i) ^= res.m.row(r);
        res.pivots.push_back(c);
        ++r;
    }
    return res;
}

std::size_t rank(const F2Matrix& m) { return rref(m).pivots.size(); }

std::optional<F2Vec> solve_f2(const F2Matrix& a, const F2Vec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_f2: dimension mismatch");
    // eliminate on [A | b]
    F2Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        aug.row(i) = F2Vec(a.cols() + 1);
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.get(i, j)) aug.set(i, j, true);
        if (b.get(i)) aug.set(i, a.cols(), true);
    }
    RrefResult rr = rref(aug);
    F2Vec x(a.cols());
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) {
        std::size_t p = rr.pivots[k];
        if (p == a.cols()) return std::nullopt;  // row [0 ... 0 | 1]
        if (rr.m.get(k, a.cols())) x.set(p, true);
    }
    return x;
}

bool Subspace::contains(const F2Vec& v) const { return reduce(v).is_zero(); }

F2Vec Subspace::reduce(const F2Vec& v) const {
    F2Vec r = v;
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (r.get(pivots[k])) r ^= basis[k];
    return r;
}

Subspace make_subspace(std::size_t ambient, std::vector<F2Vec> gens) {
    F2Matrix m(gens.size(), ambient);
    for (std::size_t i = 0; i < gens.size(); ++i) m.row(i) = gens[i];
    RrefResult rr = rref(m);
    Subspace s;
    s.ambient = ambient;
    s.pivots = rr.pivots;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) s.basis.push_back(rr.m.row(i));
    return s;
}

Subspace kernel_basis(const F2Matrix& a) {
    RrefResult rr = rref(a);
    std::size_t cols = a.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : rr.pivots) is_pivot[p] = true;
    std::vector<F2Vec> gens;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        F2Vec v(cols);
        v.set(c, true);
        for (std::size_t k = 0; k < rr.pivots.size(); ++k)
            if (rr.m.get(k, c)) v.set(rr.pivots[k], true);
        gens.push_back(v);
    }
    return make_subspace(cols, std::move(gens));
}

Subspace image_basis(const F2Matrix& a) {
    std::vector<F2Vec> cols;
    F2Matrix t = a.transposed();
    for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(t.row(j));
    return make_subspace(a.rows(), std::move(cols));
}

std::vector<F2Vec> quotient_reps(const Subspace& v, const Subspace& w) {
    if (v.ambient != w.ambient) throw std::invalid_argument("quotient_reps: ambient mismatch");
    for (const F2Vec& b : w.basis)
        if (!v.contains(b)) throw std::invalid_argument("quotient_reps: W not contained in V");
    std::vector<F2Vec> reps;
    Subspace span = w;  // grow W by chosen reps
    for (const F2Vec& b : v.basis) {
        F2Vec r = span.reduce(b);
        if (!r.is_zero()) {
            reps.push_back(b);
            std::vector<F2Vec> gens = span.basis;
            gens.push_back(b);
            span = make_subspace(v.ambient, std::move(gens));
        }
    }
    return reps;
}

}  // namespace okh
