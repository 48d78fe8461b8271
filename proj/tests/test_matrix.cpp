#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orehom/matrix.hpp"
#include "orehom/rng.hpp"

using namespace orehom;

namespace {

Matrix make(std::size_t r, std::size_t c, std::initializer_list<int> entries) {
    Matrix m(r, c);
    auto it = entries.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = *it++;
    return m;
}

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rng.small_rational();
    return m;
}

}  // namespace

TEST_CASE("rref on pinned inputs") {
    auto id2 = Matrix::identity(2);
    auto r = rref(id2);
    CHECK(r.reduced == id2);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});

    auto m = make(2, 2, {2, 4, 1, 2});
    auto rm = rref(m);
    CHECK(rm.reduced == make(2, 2, {1, 2, 0, 0}));
    CHECK(rm.pivots == std::vector<std::size_t>{0});

    Matrix z(3, 2);
    auto rz = rref(z);
    CHECK(rz.reduced == z);
    CHECK(rz.pivots.empty());
}

TEST_CASE("kernel_basis on pinned inputs") {
    CHECK(kernel_basis(Matrix::identity(3)).cols() == 0);

    Matrix z(4, 4);
    CHECK(kernel_basis(z) == Matrix::identity(4));

    auto k = kernel_basis(make(1, 2, {1, 1}));
    REQUIRE(k.cols() == 1);
    CHECK(k.at(0, 0) == -k.at(1, 0));
    CHECK(k.at(0, 0) != 0);
}

TEST_CASE("solve") {
    Vec b = {Rat(3), Rat(-2)};
    auto x = solve(Matrix::identity(2), b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    auto y = solve(make(1, 2, {1, 1}), Vec{Rat(2)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] + (*y)[1] == 2);

    CHECK(!solve(make(1, 1, {0}), Vec{Rat(1)}).has_value());
    CHECK_THROWS(solve(Matrix::identity(2), Vec{Rat(1)}));
}

TEST_CASE("kron") {
    CHECK(kron(Matrix::identity(2), Matrix::identity(3)) == Matrix::identity(6));

    Rng rng(7);
    auto m = random_matrix(rng, 2, 3);
    CHECK(kron(make(1, 1, {2}), m) == Rat(2) * m);

    auto a = random_matrix(rng, 2, 2);
    auto b = random_matrix(rng, 2, 2);
    auto k = kron(a, b);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t p = 0; p < 2; ++p)
                for (std::size_t q = 0; q < 2; ++q)
                    CHECK(k.at(i * 2 + p, j * 2 + q) == a.at(i, j) * b.at(p, q));
}

TEST_CASE("rank, kernel and solve properties on random matrices") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t r = 1 + rng.below(4), c = 1 + rng.below(4);
        auto m = random_matrix(rng, r, c);

        CHECK(rank(rref(m).reduced) == rank(m));

        auto k = kernel_basis(m);
        CHECK(rank(m) + k.cols() == c);
        if (k.cols() > 0) CHECK((m * k).is_zero());

        Vec x(c);
        for (auto& e : x) e = rng.small_rational();
        Vec b = mat_vec(m, x);
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        CHECK(mat_vec(m, *sol) == b);
    }
}

TEST_CASE("kron mixed product") {
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = random_matrix(rng, 2, 3);
        auto c = random_matrix(rng, 3, 2);
        auto b = random_matrix(rng, 2, 2);
        auto d = random_matrix(rng, 2, 3);
        CHECK(kron(a, b) * kron(c, d) == kron(a * c, b * d));
    }
}

TEST_CASE("inverse") {
    auto m = make(2, 2, {1, 1, 0, 1});
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK((m * *inv) == Matrix::identity(2));
    CHECK(!inverse(make(2, 2, {1, 1, 1, 1})).has_value());
}
