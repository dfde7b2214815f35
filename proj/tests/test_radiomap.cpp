#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "autoplan/radiomap.hpp"
#include "autoplan/rng.hpp"
#include "autoplan/scene_gen.hpp"
#include "test_support.hpp"

using namespace autoplan;

namespace {
const EngineConfig kConfig{};
}

TEST_CASE("solve_radiomap on a single point matches rsrp directly") {
    Scene scene = test_support::open_field_scene(2.0, 2.0);
    const Grid grid = make_grid(scene, 2.0);
    REQUIRE(grid.count == 1);
    const RadioMap map =
        solve_radiomap(scene, kConfig, scene.materials, scene.existing_bs, grid);
    const double direct =
        rsrp(scene, kConfig, scene.materials, scene.existing_bs[0], grid.point3(0));
    CHECK(map.best_rsrp[0] == direct);
    CHECK(map.serving_bs[0] == 0);
    CHECK(map.snr_linear[0] ==
          doctest::Approx(std::pow(10.0, (direct - kConfig.noise_floor_dbm) / 10.0)));
}

TEST_CASE("co-located identical base stations: max is idempotent, tie to lower index") {
    Scene scene = test_support::open_field_scene();
    scene.existing_bs.push_back(scene.existing_bs[0]);  // exact duplicate
    const Grid grid = make_grid(scene, 10.0);
    const RadioMap one = solve_radiomap(scene, kConfig, scene.materials,
                                        std::span(scene.existing_bs.data(), 1), grid);
    const RadioMap two =
        solve_radiomap(scene, kConfig, scene.materials, scene.existing_bs, grid);
    for (long long i = 0; i < grid.count; ++i) {
        const std::size_t iu = static_cast<std::size_t>(i);
        CHECK(two.best_rsrp[iu] == one.best_rsrp[iu]);
        CHECK(two.serving_bs[iu] == 0);
    }
}

TEST_CASE("empty BS set is rejected") {
    Scene scene = test_support::open_field_scene();
    const Grid grid = make_grid(scene, 10.0);
    CHECK_THROWS_AS(
        solve_radiomap(scene, kConfig, scene.materials, std::span<const BaseStation>{}, grid),
        std::invalid_argument);
}

TEST_CASE("radio map equals the naive double-loop oracle") {
    const Scene base = generate_scene(SceneGenSpec{.n_buildings = 6, .seed = 5});
    Scene scene = base;
    scene.existing_bs.push_back({250.0, 250.0, 15.0, 40.0, 2.0});
    const Grid grid = make_grid(scene, 100.0);  // 3x3
    REQUIRE(grid.count == 9);
    const RadioMap map =
        solve_radiomap(scene, kConfig, scene.materials, scene.existing_bs, grid);
    const auto naive = test_support::naive_radiomap(scene, kConfig, scene.materials,
                                                    scene.existing_bs, grid, -90.0);
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(map.best_rsrp[i] == doctest::Approx(naive.best_rsrp[i]).epsilon(1e-12));
        CHECK(map.serving_bs[i] == naive.serving[i]);
    }
}

TEST_CASE("coverage counts strict exceedances only") {
    RadioMap map;
    map.best_rsrp = {-95.0, -85.0, -89.0};
    map.snr_linear = {1.0, 1.0, 1.0};
    map.serving_bs = {0, 0, 0};
    CHECK(coverage(map, -90.0) == doctest::Approx(2.0 / 3.0));

    map.best_rsrp = {-50.0, -50.0, -50.0};
    CHECK(coverage(map, -90.0) == doctest::Approx(1.0));

    map.best_rsrp = {-90.0, -90.0, -90.0};  // exactly at threshold: not covered
    CHECK(coverage(map, -90.0) == doctest::Approx(0.0));
}

TEST_CASE("capacity is the mean Shannon efficiency") {
    RadioMap map;
    map.snr_linear = {1.0, 1.0};
    map.best_rsrp = {0.0, 0.0};
    map.serving_bs = {0, 0};
    CHECK(capacity(map) == doctest::Approx(1.0));

    map.snr_linear = {3.0, 15.0};  // log2(4) = 2, log2(16) = 4
    CHECK(capacity(map) == doctest::Approx(3.0));

    map.snr_linear = {1e-12, 1e-12};
    CHECK(capacity(map) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("target combines coverage and capacity with the alpha weight") {
    RadioMap map;
    // 86.04% coverage: 8604 of 10000 points above threshold.
    map.best_rsrp.assign(10000, -100.0);
    for (int i = 0; i < 8604; ++i) map.best_rsrp[static_cast<std::size_t>(i)] = -50.0;
    map.snr_linear.assign(10000, 0.0);
    map.serving_bs.assign(10000, 0);
    const Metrics m = target(map, 10.0, -90.0);
    CHECK(m.coverage == doctest::Approx(0.8604));
    // With capacity S this tracks the reported composite: 10*0.8604 + S.
    CHECK(m.target == doctest::Approx(10.0 * 0.8604 + m.capacity).epsilon(1e-12));

    // Composite identity on reference value pairs: T = alpha*C + S.
    CHECK(10.0 * 0.8604 + 8.04 == doctest::Approx(16.644));
    CHECK(10.0 * 0.8378 + 8.32 == doctest::Approx(16.698));

    // Nothing covered, no capacity: the composite collapses to zero.
    map.best_rsrp.assign(4, -200.0);
    map.snr_linear.assign(4, 0.0);
    map.serving_bs.assign(4, 0);
    const Metrics zero = target(map, 10.0, -90.0);
    CHECK(zero.coverage == 0.0);
    CHECK(zero.capacity == 0.0);
    CHECK(zero.target == 0.0);
}

TEST_CASE("alpha must be positive") {
    RadioMap map;
    map.best_rsrp = {-50.0};
    map.snr_linear = {1.0};
    map.serving_bs = {0};
    CHECK_THROWS_AS(target(map, 0.0, -90.0), std::invalid_argument);
}

TEST_CASE("metrics are non-decreasing under BS addition") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const Scene base =
            generate_scene(SceneGenSpec{.n_buildings = 8, .seed = 40 + static_cast<std::uint64_t>(trial)});
        const Grid grid = make_grid(base, 25.0);

        std::vector<BaseStation> set = base.existing_bs;
        RadioMap prev = solve_radiomap(base, kConfig, base.materials, set, grid);
        Metrics prev_m = target(prev, 10.0, -90.0);
        for (int add = 0; add < 3; ++add) {
            set.push_back({rng.uniform(10, 290), rng.uniform(10, 290),
                           rng.uniform(5, 25), 43.0, 0.0});
            const RadioMap next = solve_radiomap(base, kConfig, base.materials, set, grid);
            for (long long i = 0; i < grid.count; ++i) {
                CHECK(next.best_rsrp[static_cast<std::size_t>(i)] >=
                      prev.best_rsrp[static_cast<std::size_t>(i)]);
            }
            const Metrics next_m = target(next, 10.0, -90.0);
            CHECK(next_m.coverage >= prev_m.coverage);
            CHECK(next_m.capacity >= prev_m.capacity);
            CHECK(next_m.target >= prev_m.target);
            prev = next;
            prev_m = next_m;
        }
    }
}

TEST_CASE("merge_field reproduces a full re-solve exactly") {
    const Scene base = generate_scene(SceneGenSpec{.n_buildings = 7, .seed = 77});
    const Grid grid = make_grid(base, 20.0);
    const BaseStation extra{120.0, 220.0, 18.0, 43.0, 0.0};

    RadioMap merged = solve_radiomap(base, kConfig, base.materials, base.existing_bs, grid);
    merge_field(merged, rsrp_field(base, kConfig, base.materials, extra, grid),
                static_cast<int>(base.existing_bs.size()));

    std::vector<BaseStation> full_set = base.existing_bs;
    full_set.push_back(extra);
    const RadioMap full = solve_radiomap(base, kConfig, base.materials, full_set, grid);

    for (long long i = 0; i < grid.count; ++i) {
        const std::size_t iu = static_cast<std::size_t>(i);
        CHECK(merged.best_rsrp[iu] == full.best_rsrp[iu]);
        CHECK(merged.snr_linear[iu] == full.snr_linear[iu]);
        CHECK(merged.serving_bs[iu] == full.serving_bs[iu]);
    }
}
