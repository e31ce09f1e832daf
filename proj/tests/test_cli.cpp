#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "heatpath/csv.hpp"
#include "heatpath/experiments.hpp"

using namespace heatpath;

TEST_CASE("config parsing round trip") {
    std::istringstream in(
        "# a comment\n"
        "experiment = boundary\n"
        "manifold = interval\n"
        "length = 3.14\n"
        "boundary = neumann\n"
        "t = 0.25\n"
        "n_list = 2 4 8\n"
        "resolution = 96\n"
        "seed = 17\n"
        "n_samples = 12345\n"
        "tolerance_scale = 2.0\n"
        "out = /tmp/somewhere\n");
    ExperimentConfig cfg = parse_config(in, "round.cfg");
    CHECK(cfg.experiment == "boundary");
    CHECK(cfg.manifold == "interval");
    CHECK(cfg.length == doctest::Approx(3.14));
    CHECK(cfg.boundary == "neumann");
    CHECK(cfg.n_list == std::vector<int>{2, 4, 8});
    CHECK(cfg.resolution == 96);
    CHECK(cfg.seed == 17);
    CHECK(cfg.n_samples == 12345);
    CHECK(cfg.tolerance_scale == doctest::Approx(2.0));
    CHECK(cfg.out_dir == "/tmp/somewhere");

    ManifoldSpec m = cfg.manifold_spec();
    CHECK(m.kind == ManifoldKind::Interval);
    CHECK(m.bc == BoundaryCondition::Neumann);
}

TEST_CASE("config errors carry the origin and line number") {
    std::istringstream unknown("t = 0.5\nbogus_key = 3\n");
    try {
        parse_config(unknown, "bad.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("bad.cfg:2") != std::string::npos);
        CHECK(msg.find("bogus_key") != std::string::npos);
    }

    std::istringstream badval("resolution = many\n");
    CHECK_THROWS_AS(parse_config(badval), ConfigError);
    std::istringstream noeq("resolution 64\n");
    CHECK_THROWS_AS(parse_config(noeq), ConfigError);
    std::istringstream badbc("boundary = robin\n");
    CHECK_THROWS_AS(parse_config(badbc), ConfigError);

    ExperimentConfig cfg;
    cfg.manifold = "klein";
    CHECK_THROWS_AS(cfg.manifold_spec(), ConfigError);
}

TEST_CASE("manifold selection from config") {
    ExperimentConfig cfg;
    cfg.manifold = "torus";
    cfg.sides = {1.0, 2.0};
    CHECK(cfg.manifold_spec().kind == ManifoldKind::FlatTorus);
    CHECK(cfg.manifold_spec().dim == 2);
    cfg.manifold = "euclidean";
    cfg.dim = 3;
    CHECK(cfg.manifold_spec().dim == 3);
    cfg.manifold = "sphere";
    cfg.radius = 2.5;
    CHECK(cfg.manifold_spec().radius == doctest::Approx(2.5));
}

TEST_CASE("experiment registry") {
    std::string listing = list_experiments();
    CHECK(listing.find("boundary") != std::string::npos);
    CHECK(listing.find("determinants") != std::string::npos);
    int lines = 0;
    for (char c : listing) lines += (c == '\n');
    CHECK(lines == 8);

    ExperimentConfig cfg;
    cfg.experiment = "no-such-thing";
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("csv output is deterministic modulo the timestamp") {
    namespace fs = std::filesystem;
    auto body = [](const std::string& path) {
        std::ifstream in(path);
        std::string line, acc;
        while (std::getline(in, line))
            if (line.rfind("# timestamp", 0) != 0) acc += line + "\n";
        return acc;
    };
    std::string a = (fs::temp_directory_path() / "hp_csv_a.csv").string();
    std::string b = (fs::temp_directory_path() / "hp_csv_b.csv").string();
    for (const std::string& p : {a, b}) {
        CsvWriter w(p, "unit_test_report", {"x", "y"}, 3);
        w.row({csv_real(1.0 / 3.0), csv_real(-2.5e-11)});
        w.row({"0", csv_real(7.0)});
    }
    CHECK(body(a) == body(b));
    std::ifstream in(a);
    std::string first;
    std::getline(in, first);
    CHECK(first == "# unit_test_report v3");

    CsvWriter w(a, "n", {"only"});
    CHECK_THROWS_AS(w.row({"1", "2"}), std::runtime_error);
}

TEST_CASE("determinants experiment runs end to end") {
    namespace fs = std::filesystem;
    ExperimentConfig cfg;
    cfg.experiment = "determinants";
    cfg.out_dir = (fs::temp_directory_path() / "hp_cli_e2e").string();
    ExperimentResult res = run_experiment(cfg);
    CHECK(res.pass());
    CHECK(res.name == "determinants");
    REQUIRE(!res.outputs.empty());
    CHECK(fs::exists(res.outputs.front()));
    for (const auto& c : res.checks) CHECK(!c.name.empty());
}
