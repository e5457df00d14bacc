#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "wormhole/error.hpp"
#include "wormhole/spectral.hpp"
#include "wormhole/walk.hpp"

using namespace wormhole;
using namespace wormhole::walk;

namespace {

OrbitGraph graph(Int n, std::vector<Int> alphas) { return OrbitGraph::build(n, alphas); }
MarkSet marks_of(std::vector<Int> v, Int n) { return MarkSet::from(std::move(v), n); }

bool in(const std::vector<Int>& set, Int v) {
    return std::find(set.begin(), set.end(), v) != set.end();
}

// Per-vertex trajectory across every snapshot.
std::vector<double> trajectory(const WalkTrace& trace, Int v) {
    std::vector<double> out;
    for (const auto& s : trace.snapshots) out.push_back(trace.full_distribution(s)[v - 1]);
    return out;
}

bool rises_then_falls(const std::vector<double>& x) {
    const double peak = *std::max_element(x.begin(), x.end());
    return peak > x.front() + 1e-12 && peak > x.back() + 1e-12;
}

bool falls_then_rises(const std::vector<double>& x) {
    const double low = *std::min_element(x.begin(), x.end());
    return low < x.front() - 1e-12 && low < x.back() - 1e-12;
}

bool monotone(const std::vector<double>& x) {
    bool up = true, down = true;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (x[i] < x[i - 1] - 1e-15) up = false;
        if (x[i] > x[i - 1] + 1e-15) down = false;
    }
    return up || down;
}

}  // namespace

TEST_CASE("grounded Laplacian is the principal submatrix of the Laplacian") {
    std::mt19937_64 rng(8);
    for (const auto& [n, alphas] : std::vector<std::pair<Int, std::vector<Int>>>{
             {15, {2}}, {35, {2}}, {55, {3}}, {77, {2, 10}}}) {
        const auto g = graph(n, alphas);
        const Matrix full = laplacian(g);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Int> pool;
            for (Int v = 1; v < n; ++v) pool.push_back(v);
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(1 + rng() % 10);
            const MarkSet m = MarkSet::from(pool, n);
            const auto lp = grounded_laplacian(g, m);
            std::vector<std::size_t> keep;
            for (Int v : lp.vertices) keep.push_back(static_cast<std::size_t>(v - 1));
            const Matrix expected = full.principal_submatrix(keep);
            CHECK(std::ranges::equal(lp.matrix.data(), expected.data()));
            CHECK(lp.matrix.asymmetry() == 0.0);
            CHECK(lp.dimension() == static_cast<std::size_t>(n - 1) - m.size());
            for (std::size_t i = 0; i < lp.dimension(); ++i) {
                for (std::size_t j = 0; j < lp.dimension(); ++j) {
                    if (i != j) CHECK((lp.matrix(i, j) == 0.0 || lp.matrix(i, j) == -1.0));
                }
            }
            CHECK(spectral::full_eigen(lp.matrix).eigenvalues.front() > -1e-12);
        }
    }
    CHECK_THROWS_AS(grounded_laplacian(graph(35, {2}), marks_of({1}, 35), 10), Error);
}

TEST_CASE("walking matrix") {
    const auto g = graph(15, {2});
    const auto lp = grounded_laplacian(g, marks_of({1, 14}, 15));
    const Matrix id = walking_matrix(lp, 0.0);
    const Matrix eye = Matrix::identity(lp.dimension());
    CHECK(std::ranges::equal(id.data(), eye.data()));

    const Matrix e = walking_matrix(lp, 0.2);
    const std::size_t r5 = *lp.row_of(5), r10 = *lp.row_of(10);
    CHECK(e(r5, r5) == doctest::Approx(0.8));
    CHECK(e(r5, r10) == doctest::Approx(0.2));
    for (double x : walking_matrix(lp, default_dt(lp)).data()) CHECK(x >= 0.0);
    CHECK(default_dt(lp) == doctest::Approx(1.0 / 5.0));

    for (double bad : {1.0 / 2.0 + 1.0, -0.1, std::nan("")}) {
        try {
            walking_matrix(lp, bad);
            FAIL("expected invalid-dt");
        } catch (const Error& err) {
            CHECK(err.code() == ErrorCode::InvalidDt);
        }
    }
    // An exact lambda_max loosens the bound: lambda_max = 4 for a 4-cycle.
    const auto untouched = grounded_laplacian(graph(15, {2}), marks_of({3, 6, 9, 12, 5, 10, 7, 14, 13, 11}, 15));
    CHECK_NOTHROW(walking_matrix(untouched, 0.2, 4.0));
    CHECK_THROWS_AS(walking_matrix(untouched, 0.3, 4.0), Error);
}

TEST_CASE("step keeps the distribution normalized and matches the reference") {
    const auto g = graph(15, {2, 7});
    const auto lp = grounded_laplacian(g, marks_of({2, 11}, 15));
    const Matrix e = walking_matrix(lp, default_dt(lp));
    WalkState p = uniform_start(lp.dimension());
    for (int i = 0; i < 200; ++i) {
        const WalkState q = step(p, e);
        const WalkState r = step_serial(p, e);
        std::vector<double> v(lp.dimension());
        double s = 0.0;
        for (std::size_t a = 0; a < v.size(); ++a) {
            for (std::size_t b = 0; b < v.size(); ++b) v[a] += e(a, b) * p.distribution[b];
            s += v[a];
        }
        double total = 0.0;
        for (std::size_t a = 0; a < v.size(); ++a) {
            CHECK(std::abs(q.distribution[a] - v[a] / s) < 1e-12);
            CHECK(std::abs(q.distribution[a] - r.distribution[a]) < 1e-15);
            CHECK(q.distribution[a] >= 0.0);
            total += q.distribution[a];
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
        CHECK(q.t == p.t + 1);
        p = q;
    }
    const WalkState start = uniform_start(lp.dimension());
    const WalkState same = step(start, Matrix::identity(lp.dimension()));
    CHECK(same.distribution == start.distribution);
}

TEST_CASE("one step moves mass onto factor multiples") {
    const auto g = graph(15, {2, 7});
    const auto lp = grounded_laplacian(g, marks_of({2, 11}, 15));
    const WalkState p = step(uniform_start(lp.dimension()), walking_matrix(lp, default_dt(lp)));
    double mass = 0.0;
    for (std::size_t i = 0; i < lp.dimension(); ++i) {
        if (in({3, 5, 6, 9, 10, 12}, lp.vertices[i])) mass += p.distribution[i];
    }
    CHECK(mass > 6.0 / 12.0);
}

TEST_CASE("mass on untouched components never decreases") {
    const auto g = graph(35, {2});
    const MarkSet m = marks_of({1, 5, 17}, 35);
    const auto trace = run(g, m, {.tol = 1e-12, .snapshot_cadence = 1});
    const std::vector<Int> untouched{7, 14, 15, 21, 25, 28, 30};
    double prev = 0.0;
    for (const auto& s : trace.snapshots) {
        const auto full = trace.full_distribution(s);
        double mass = 0.0, total = 0.0;
        for (Int v : untouched) mass += full[v - 1];
        for (double x : full) {
            CHECK(x >= 0.0);
            total += x;
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
        CHECK(mass >= prev - 1e-15);
        prev = mass;
    }
}

TEST_CASE("walk limit, example 1") {
    const auto g = graph(15, {2, 7});
    const auto trace = run(g, marks_of({2, 11}, 15), {.snapshot_cadence = 1});
    REQUIRE(trace.converged);
    const auto full = trace.full_distribution(trace.final_state());
    for (Int v = 1; v < 15; ++v) {
        CHECK(std::abs(full[v - 1] - (in({3, 5, 6, 9, 10, 12}, v) ? 1.0 / 6.0 : 0.0)) <= 1e-6);
        CHECK(monotone(trajectory(trace, v)));
    }
    const auto f = extract_factor(trace.final_state().distribution, trace.vertices, 15, 1.0 / 28.0);
    REQUIRE(f.has_value());
    CHECK(*f == FactorPair{3, 5, 15});
}

TEST_CASE("walk limit, example 2") {
    const auto g = graph(35, {2});
    const auto trace = run(g, marks_of({1, 5, 17}, 35), {.tol = 1e-12, .snapshot_cadence = 1});
    REQUIRE(trace.converged);
    const auto full = trace.full_distribution(trace.final_state());
    const std::vector<Int> support{7, 14, 15, 21, 25, 28, 30};
    for (Int v = 1; v < 35; ++v) CHECK(std::abs(full[v - 1] - (in(support, v) ? 1.0 / 7.0 : 0.0)) <= 1e-6);
    for (Int v : {3, 4, 6, 8}) CHECK(rises_then_falls(trajectory(trace, v)));
    for (Int v = 1; v < 35; ++v) CHECK_FALSE(falls_then_rises(trajectory(trace, v)));
    const auto f = extract_factor(trace.final_state().distribution, trace.vertices, 35, 1.0 / 68.0);
    REQUIRE(f.has_value());
    CHECK(*f == FactorPair{5, 7, 35});
}

TEST_CASE("walk limit agrees with the spectral projection") {
    std::mt19937_64 rng(31);
    const std::vector<std::pair<Int, std::vector<Int>>> cases{
        {15, {2}}, {15, {2, 7}}, {21, {2}}, {35, {2}}, {55, {3}}};
    for (const auto& [n, alphas] : cases) {
        const auto g = graph(n, alphas);
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<Int> pool;
            for (Int v = 1; v < n; ++v) pool.push_back(v);
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(1 + rng() % static_cast<std::uint64_t>(n / 3));
            const MarkSet m = MarkSet::from(pool, n);
            const auto trace = run(g, m, {.tol = 1e-13});
            if (!trace.converged) continue;
            const auto lp = grounded_laplacian(g, m);
            const std::vector<double> start(lp.dimension(), 1.0 / static_cast<double>(lp.dimension()));
            const auto proj = spectral::minimal_space_projection(lp.matrix, start);
            for (std::size_t i = 0; i < proj.size(); ++i) {
                CHECK(std::abs(trace.final_state().distribution[i] - proj[i]) <= 1e-8);
            }
            // The projection is a fixed point of the step.
            const WalkState fixed{proj, 0};
            const WalkState next = step(fixed, walking_matrix(lp, default_dt(lp)));
            for (std::size_t i = 0; i < proj.size(); ++i) CHECK(std::abs(next.distribution[i] - proj[i]) < 1e-12);
        }
    }
}

TEST_CASE("run stops at max_iters without convergence") {
    const auto trace = run(graph(35, {2}), marks_of({1, 5, 17}, 35), {.max_iters = 5});
    CHECK_FALSE(trace.converged);
    CHECK(trace.iterations == 5);
    CHECK(trace.final_state().t == 5);
    CHECK(trace.snapshots.front().t == 0);
}

TEST_CASE("single unmarked vertex holds all the mass") {
    std::vector<Int> marks;
    for (Int v = 1; v <= 13; ++v) marks.push_back(v);
    const auto trace = run(graph(15, {2}), marks_of(marks, 15));
    CHECK(trace.converged);
    CHECK(trace.vertices == std::vector<Int>{14});
    CHECK(trace.final_state().distribution[0] == doctest::Approx(1.0));
}

TEST_CASE("extract_factor ignores black mass") {
    const std::vector<Int> vertices{1, 2, 4, 7};
    const std::vector<double> dist{0.25, 0.25, 0.25, 0.25};
    CHECK_FALSE(extract_factor(dist, vertices, 15, 1.0 / 28.0).has_value());
    const std::vector<Int> v2{1, 10};
    const std::vector<double> d2{0.5, 0.5};
    CHECK(*extract_factor(d2, v2, 15, 0.1) == FactorPair{3, 5, 15});
    const std::vector<double> d3{1.0, 0.0};
    CHECK_FALSE(extract_factor(d3, v2, 15, 0.1).has_value());
}
