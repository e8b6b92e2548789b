#include "doctest.h"
#include <stdexcept>
#include "okh/f2.hpp"
#include "okh/intmat.hpp"

#include <random>

using namespace okh;

namespace {

BigMatrix diag_padded(const SmithResult& s, std::size_t rows, std::size_t cols) {
    BigMatrix d(rows, cols);
    for (std::size_t i = 0; i < s.diag.size(); ++i) d.set(i, i, s.diag[i]);
    return d;
}

bool divisibility_chain(const std::vector<int64_t>& d) {
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        if (d[i] < 0) return false;
        if (d[i + 1] != 0 && d[i] == 0) return false;
        if (d[i] != 0 && d[i + 1] % d[i] != 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("snf small cases") {
    IntMatrix z(2, 3);
    SmithResult sz = smith_normal_form(z);
    CHECK(sz.diag == std::vector<int64_t>{0, 0});

    IntMatrix one(1, 1);
    one.set(0, 0, 2);
    CHECK(smith_normal_form(one).diag == std::vector<int64_t>{2});

    IntMatrix m(2, 2);
    m.set(0, 0, 2);
    m.set(1, 1, 3);
    SmithResult s = smith_normal_form(m);
    CHECK(s.diag == std::vector<int64_t>{1, 6});
    CHECK(s.u.mul(BigMatrix::lift(m)).mul(s.v) == diag_padded(s, 2, 2));
}

TEST_CASE("snf random: UAV = diag, divisibility, mod-2 rank agreement") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
        IntMatrix a(r, c);
        F2Matrix a2(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                int64_t v = int64_t(rng() % 7) - 3;
                a.set(i, j, v);
                if (v & 1) a2.set(i, j, true);
            }
        SmithResult s = smith_normal_form(a);
        CHECK(divisibility_chain(s.diag));
        CHECK(s.diag == smith_diag(a));
        CHECK(s.u.mul(BigMatrix::lift(a)).mul(s.v) == diag_padded(s, r, c));
        std::size_t odd = 0;
        for (int64_t d : s.diag)
            if (d % 2 != 0) ++odd;
        CHECK(odd == rank(a2));  // F2 rank equals count of odd invariant factors
    }
}
