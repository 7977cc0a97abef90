#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dgf/csv.hpp"
#include "dgf/harness.hpp"
#include "test_support.hpp"

using namespace dgf;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("dgf_matrix_core_" + name);
}

}  // namespace

TEST_CASE("validate_interaction accepts the 5-node ring and flags it doubly stochastic") {
    const SquareMatrix& raw = preset_matrix_raw("ring");
    const InteractionMatrix c = validate_interaction(raw);
    CHECK(c.size() == 5);
    CHECK(c.doubly_stochastic());
    // Validation never renormalizes: entries match the input bit for bit.
    CHECK(c.entries() == raw);
}

TEST_CASE("validate_interaction accepts the complete-graph matrices with the right flags") {
    CHECK(preset_matrix("complete").doubly_stochastic());
    CHECK_FALSE(preset_matrix("c1").doubly_stochastic());
    CHECK_FALSE(preset_matrix("c2").doubly_stochastic());
}

TEST_CASE("validate_interaction rejects the identity matrix (nonzero diagonal)") {
    CHECK_THROWS_AS(validate_interaction(SquareMatrix::identity(4)), DiagonalError);
}

TEST_CASE("validate_interaction rejects two disconnected 2-cycles") {
    const SquareMatrix two_cycles{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    CHECK_THROWS_AS(validate_interaction(two_cycles), ReducibleError);
}

TEST_CASE("validate_interaction error taxonomy") {
    CHECK_THROWS_AS(validate_interaction(SquareMatrix{{0.0, 1.2, -0.2}, {1, 0, 0}, {1, 0, 0}}),
                    NegativeEntryError);
    CHECK_THROWS_AS(validate_interaction(SquareMatrix{{0, 0.5, 0.4}, {1, 0, 0}, {1, 0, 0}}),
                    RowSumError);
    CHECK_THROWS_AS(validate_interaction(SquareMatrix(1, 0.0)), DimensionMismatch);
    // n = 2 is structurally forced to the swap matrix and is accepted.
    const InteractionMatrix swap = validate_interaction(SquareMatrix{{0, 1}, {1, 0}});
    CHECK(swap.doubly_stochastic());
}

TEST_CASE("doubly stochastic flag implies the transpose validates identically") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        for (std::size_t n : {3u, 5u, 8u}) {
            const InteractionMatrix c = generate_matrix({n, MatrixKind::DoublyStochastic, seed, 1e-12});
            REQUIRE(c.doubly_stochastic());
            const InteractionMatrix t = validate_interaction(c.entries().transposed());
            CHECK(t.doubly_stochastic());
        }
    }
}

TEST_CASE("is_irreducible on canonical patterns") {
    BoolMatrix ring(5);
    for (std::size_t i = 0; i < 5; ++i) ring.set(i, (i + 1) % 5, true);
    CHECK(is_irreducible(ring));

    BoolMatrix path(3);
    path.set(0, 1, true);
    path.set(1, 2, true);
    CHECK_FALSE(is_irreducible(path));

    BoolMatrix complete(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) complete.set(i, j, true);
    CHECK(is_irreducible(complete));
}

TEST_CASE("is_irreducible is invariant under node relabeling") {
    Xoshiro256pp rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + rng.next() % 6;
        BoolMatrix adj(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && rng.uniform01() < 0.3) adj.set(i, j, true);

        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.next() % i]);

        BoolMatrix relabeled(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) relabeled.set(perm[i], perm[j], adj.at(i, j));
        CHECK(is_irreducible(adj) == is_irreducible(relabeled));
    }
}

TEST_CASE("validate_simplex accepts and rejects as specified") {
    CHECK_NOTHROW(validate_simplex(std::vector<double>{0.2, 0.2, 0.2, 0.2, 0.2}));
    CHECK_THROWS_AS(validate_simplex(std::vector<double>{0.6, 0.6, -0.2}), RangeError);
    CHECK_THROWS_AS(validate_simplex(std::vector<double>{0.5, 0.5, 0.1}), SumError);
    CHECK_THROWS_AS(validate_simplex(std::vector<double>{1.0}), DimensionMismatch);
    // Published initial condition.
    CHECK_NOTHROW(validate_simplex(std::vector<double>{0.0439, 0.1305, 0.2834, 0.2452, 0.2970}));
}

TEST_CASE("vertices and barycenter are representable without tolerance slack") {
    for (std::size_t n = 2; n <= 8; ++n) {
        for (std::size_t i = 0; i < n; ++i) {
            const SimplexVector e = SimplexVector::vertex(n, i);
            CHECK(validate_simplex(e.values()) == e);
            CHECK(e.vertex_index() == i);
        }
        const SimplexVector u = SimplexVector::uniform(n);
        CHECK(validate_simplex(u.values()) == u);
        CHECK(u.vertex_index() == SimplexVector::npos);
    }
}

TEST_CASE("matrix CSV round-trips bit-faithfully") {
    const auto path = temp_file("roundtrip.csv");
    for (const char* key : {"complete", "c2"}) {
        const SquareMatrix& m = preset_matrix_raw(key);
        write_matrix_csv(path, m);
        CHECK(read_matrix_csv(path) == m);
    }
    const InteractionMatrix random = generate_matrix({6, MatrixKind::RowStochastic, 99, 1e-12});
    write_matrix_csv(path, random.entries());
    CHECK(read_matrix_csv(path) == random.entries());
    std::filesystem::remove(path);
}

TEST_CASE("matrix CSV rejects ragged and malformed input") {
    const auto path = temp_file("bad.csv");
    {
        std::ofstream out(path);
        out << "0,1\n1\n";
    }
    CHECK_THROWS_AS(read_matrix_csv(path), CsvError);
    {
        std::ofstream out(path);
        out << "0,abc\n1,0\n";
    }
    CHECK_THROWS_AS(read_matrix_csv(path), CsvError);
    {
        std::ofstream out(path);
        out << "0,nan\n1,0\n";
    }
    CHECK_THROWS_AS(read_matrix_csv(path), CsvError);
    std::filesystem::remove(path);
}

TEST_CASE("vector CSV is a single row") {
    const auto path = temp_file("vec.csv");
    const std::vector<double> v{0.6097, 0.0275, 0.2391, 0.0399, 0.0838};
    write_vector_csv(path, v);
    CHECK(read_vector_csv(path) == v);
    {
        std::ofstream out(path);
        out << "0.5,0.5\n0.5,0.5\n";
    }
    CHECK_THROWS_AS(read_vector_csv(path), CsvError);
    std::filesystem::remove(path);
}

TEST_CASE("validated matrices always have an irreducible pattern and unit row sums") {
    Xoshiro256pp rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + rng.next() % 6;
        const InteractionMatrix c = trial % 2 == 0
                                        ? generate_matrix({n, MatrixKind::RowStochastic,
                                                           rng.next(), 1e-12})
                                        : support::random_sparse_interaction(rng, n);
        CHECK(is_irreducible(positivity_pattern(c.entries())));
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += c(i, j);
            CHECK(std::abs(s - 1.0) <= kValidationTol);
        }
    }
}
