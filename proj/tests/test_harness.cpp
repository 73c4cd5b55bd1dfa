#include <doctest.h>

#include "mbl/classify.hpp"
#include "mbl/errors.hpp"
#include "mbl/experiments.hpp"
#include "mbl/export.hpp"
#include "mbl/manifest.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

using namespace mbl;
namespace fs = std::filesystem;

namespace {

using Vec = std::vector<double>;

constexpr double kDx = 1e-3;

// nodes on [0, 1] with a tanh front of half-width w at x0 dropping from `from` to 0
Vec front(double from, double x0, double w = 0.003, int n = 1000)
{
    Vec u(n + 1);
    for (int j = 0; j <= n; ++j)
        u[j] = from * 0.5 * (1.0 - std::tanh((j * kDx - x0) / w));
    return u;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("smooth ramp initial data")
{
    CHECK(smooth_ramp_ic(-3.0, 0.9) == 0.9);
    CHECK(smooth_ramp_ic(0.0, 0.9) == doctest::Approx(0.9));
    CHECK(smooth_ramp_ic(5.0, 0.9) == doctest::Approx(0.45).epsilon(1e-15));
    CHECK(smooth_ramp_ic(10.0, 0.9) == doctest::Approx(0.0).scale(1.0).epsilon(1e-16));
    CHECK(smooth_ramp_ic(12.0, 0.9) == 0.0);
    double prev = 1.0;
    for (int i = 0; i <= 100; ++i) {
        const double v = smooth_ramp_ic(0.1 * i, 1.0);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("manifest parsing")
{
    const auto d = manifest_from_json("{}");
    CHECK(d.scheme == SchemeKind::trapezoid);
    CHECK(d.u_B == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
    CHECK(d.n_cells() == 1500);

    const auto m = manifest_from_json(R"({"scheme": "third_order", "tau": 1, "u_B": 0.75, "snapshot_times": [0.1, 0.2]})");
    CHECK(m.scheme == SchemeKind::third_order);
    CHECK(m.tau == 1.0);
    CHECK(m.u_B == 0.75);
    CHECK(m.snapshot_times == Vec{0.1, 0.2});

    const auto a = manifest_from_json(R"({"M": 1.0, "u_B": "alpha"})");
    CHECK(a.u_B == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

    CHECK_THROWS_AS(manifest_from_json(R"({"tua": 1})"), ValidationError);
    CHECK_THROWS_AS(manifest_from_json(R"({"u_B": "beta"})"), ValidationError);
    CHECK_THROWS_AS(manifest_from_json(R"({"u_B": 1.5})"), ValidationError);
    CHECK_THROWS_AS(manifest_from_json(R"({"scheme": "fourth"})"), ValidationError);
    CHECK_THROWS_AS(manifest_from_json(R"({"L": 1.0, "dx": 0.3})"), ValidationError);
    CHECK_THROWS_AS(manifest_from_json(R"({"lambda": 0.5})"), ValidationError);
    CHECK_THROWS_AS(manifest_from_json(R"({"snapshot_times": [0.3, 0.1]})"), ValidationError);
    CHECK_THROWS_AS(manifest_from_json(R"({"tau": "five"})"), ValidationError);
    CHECK_THROWS_AS(manifest_from_json("[1, 2]"), ValidationError);
    CHECK_THROWS_AS(manifest_from_json("{not json"), ValidationError);
    CHECK_THROWS_AS(load_manifest(fs::path(MBL_TEST_TMPDIR) / "missing" / "nothing.json"), IoError);

    // round trip, including the code_version key written on export
    const auto text = manifest_to_json(m);
    CHECK(text.find("code_version") != std::string::npos);
    const auto back = manifest_from_json(text);
    CHECK(manifest_to_json(back) == text);
}

TEST_CASE("manifest domain-sizing warning")
{
    RunManifest m;
    CHECK(m.warnings().empty());
    m.t_final = 1.0;
    REQUIRE(m.warnings().size() == 1);
    CHECK(m.warnings()[0].find("domain sizing") != std::string::npos);
}

TEST_CASE("snapshot CSV")
{
    const auto grid = GridSpec::make(1.0, 4, 0.1);
    const std::vector<Field> snaps{{Vec{0.1, 0.2, 0.3, 0.4, 0.5}, Phase::integer_grid, 0.0},
                                   {Vec{1.0 / 3.0, 0, 0, 0, 0}, Phase::integer_grid, 0.5}};
    const auto csv = snapshots_csv(grid, snaps);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,u,t");
    int rows = 0;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        ++rows;
        lines.push_back(line);
    }
    CHECK(rows == (grid.n_cells + 1) * 2);
    CHECK(lines[0] == "0,0.10000000000000001,0");
    CHECK(lines[5] == "0,0.33333333333333331,0.5");
    CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("export and bit-identical rerun")
{
    RunManifest m;
    m.epsilon = 0.01;
    m.tau = 1.0;
    m.u_B = 0.7;
    m.dx = 0.002;
    m.L = 0.3;
    m.t_final = 0.05;
    m.snapshot_times = {0.025};
    m.output_dir = (fs::path(MBL_TEST_TMPDIR) / "export_run").string();
    fs::remove_all(m.output_dir);

    const auto run = simulate(m);
    REQUIRE(run.snapshots.size() == 2);
    const auto dir = export_run(m, &run);
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(fs::exists(dir / "snapshots.csv"));
    CHECK(fs::exists(dir / "plot_snapshots.py"));

    const auto again = simulate(load_manifest(dir / "manifest.json"));
    REQUIRE(again.snapshots.size() == run.snapshots.size());
    for (std::size_t i = 0; i < run.snapshots.size(); ++i)
        CHECK(again.snapshots[i].values == run.snapshots[i].values);
    CHECK(slurp(dir / "snapshots.csv") == snapshots_csv(run.grid, again.snapshots));

    CHECK_THROWS_AS(write_text(fs::path("/proc/definitely/not/here.txt"), "x"), IoError);
}

TEST_CASE("plateau finder")
{
    Vec u(60, 0.0);
    for (int j = 0; j < 20; ++j)
        u[j] = 0.8;
    for (int j = 20; j < 25; ++j)
        u[j] = 0.5;
    for (int j = 25; j < 45; ++j)
        u[j] = 0.9 + (j % 2 ? 1e-3 : -1e-3);
    const auto p = find_plateaus(u, 5e-3, 10);
    REQUIRE(p.size() == 3);
    CHECK(p[0].begin == 0);
    CHECK(p[0].end == 20);
    CHECK(p[0].value == doctest::Approx(0.8));
    CHECK(p[1].begin == 25);
    CHECK(p[1].end == 45);
    CHECK(p[1].value == doctest::Approx(0.9).epsilon(1e-3));
    CHECK(p[2].begin == 45);
}

TEST_CASE("classifier on synthetic profiles")
{
    SUBCASE("single shock")
    {
        const auto r = classify_profile(front(0.7, 0.4), kDx, 0.7);
        CHECK(r.classification == ProfileClass::single_shock);
        REQUIRE(r.shock_positions.size() == 1);
        CHECK(r.leading_shock == doctest::Approx(0.4).epsilon(2 * kDx / 0.4));
        CHECK(r.overshoot <= 1e-12);
    }
    SUBCASE("oscillatory single shock")
    {
        auto u = front(0.7, 0.4);
        for (std::size_t j = 0; j < u.size(); ++j)
            u[j] += 0.03 * std::exp(-std::pow((j * kDx - 0.39) / 0.003, 2));
        const auto r = classify_profile(u, kDx, 0.7);
        CHECK(r.classification == ProfileClass::oscillatory_single_shock);
        CHECK(r.overshoot > 5e-3);
    }
    SUBCASE("two shocks around a plateau")
    {
        auto u = front(0.9, 0.5);
        const auto lower = front(0.1, 0.2);
        for (std::size_t j = 0; j < u.size(); ++j)
            u[j] -= lower[j] * (j * kDx < 0.5 ? 1.0 : 0.0);
        const auto r = classify_profile(u, kDx, 0.8);
        CHECK(r.classification == ProfileClass::two_shock_plateau);
        REQUIRE(r.plateau_value.has_value());
        CHECK(*r.plateau_value == doctest::Approx(0.9).epsilon(1e-3));
        CHECK(r.leading_shock == doctest::Approx(0.5).epsilon(0.01));
    }
    SUBCASE("rarefaction then shock")
    {
        const double uB = 0.98, a = 0.816;
        Vec u(1001);
        for (int j = 0; j <= 1000; ++j) {
            const double x = j * kDx;
            const double top = x < 0.1 ? uB : (x < 0.3 ? uB + (a - uB) * (x - 0.1) / 0.2 : a);
            u[j] = top * 0.5 * (1.0 - std::tanh((x - 0.6) / 0.003));
        }
        const auto r = classify_profile(u, kDx, uB);
        CHECK(r.classification == ProfileClass::rarefaction_shock);
        REQUIRE(r.plateau_value.has_value());
        CHECK(*r.plateau_value == doctest::Approx(a).epsilon(1e-3));
    }
    SUBCASE("front reaching the right boundary")
    {
        const auto r = classify_profile(front(0.7, 0.999), kDx, 0.7);
        CHECK(r.classification == ProfileClass::truncated_invalid);
    }
    SUBCASE("plateau length in units of epsilon")
    {
        const auto opt = classify_options(0.005, 5e-4);
        CHECK(opt.plateau_min_cells == 50);
        CHECK(classify_options(0.005, 0.01).plateau_min_cells == 10);
    }
}

TEST_CASE("transition width of a tanh front")
{
    const double w = 0.01;
    const auto u = front(0.6, 0.5, w);
    CHECK(transition_width(u, kDx, 0.6) == doctest::Approx(2.0 * w * std::atanh(0.8)).epsilon(2 * kDx / 0.022));
}

TEST_CASE("parallel_for runs every job once")
{
    for (int threads : {1, 3, 0}) {
        std::vector<std::atomic<int>> hits(37);
        parallel_for(37, threads, [&](int i) { hits[i].fetch_add(1); });
        for (const auto& h : hits)
            CHECK(h.load() == 1);
    }
}

TEST_CASE("sweep cell lists")
{
    const FluxModel m(2.0);
    const auto nine = reference_nine_cells(m);
    CHECK(nine.size() == 9);
    int at_alpha = 0;
    for (const auto& [tau, uB] : nine)
        at_alpha += uB == m.alpha();
    CHECK(at_alpha == 3);
    CHECK(default_sweep_pairs(m).size() >= nine.size());
}

TEST_CASE("order table on coarse levels")
{
    const int levels[] = {60, 120};
    const auto rows = order_table(SchemeKind::trapezoid, 0.2, 0.9, levels);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].N == 60);
    CHECK_FALSE(rows[0].order_l1.has_value());
    CHECK(rows[0].l1 == doctest::Approx(7.5416e-3).epsilon(0.01));
    REQUIRE(rows[1].order_l1.has_value());
    CHECK(*rows[1].order_l1 == doctest::Approx(1.93).epsilon(0.02));
    CHECK(rows[0].linf >= rows[0].l2 / std::sqrt(30.0));
    CHECK_THROWS_AS(order_table(SchemeKind::trapezoid, 0.2, 0.9, std::span<const int>{}), ValidationError);
}
