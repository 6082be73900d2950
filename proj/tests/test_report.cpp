#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <fpgame/parallel.hpp>
#include <fpgame/report.hpp>
#include <fpgame/rng.hpp>

using namespace fpgame;

TEST_CASE("doubles format cleanly and round-trip", "[report]") {
    REQUIRE(format_double(0.125) == "0.125");
    REQUIRE(format_double(2.0) == "2");
    // 17 significant digits, so every double round-trips (the printed form
    // is not always the shortest one)
    for (double v : {3.141592653589793, 1.0 / 3.0, 195.274327947, 1e-17, -7.25e300,
                     -0.0282253192626}) {
        const double back = std::stod(format_double(v));
        REQUIRE(back == v);
    }
    // no locale commas, ever
    REQUIRE(format_double(1234567.75).find(',') == std::string::npos);
}

TEST_CASE("csv schema is enforced", "[report]") {
    Csv t({"a", "b", "c"});
    t.add(1, 0.5, true);
    t.add("x", false, 2.25);
    REQUIRE(t.size() == 2);
    REQUIRE(t.str() == "a,b,c\n1,0.5,true\nx,false,2.25\n");
    REQUIRE_THROWS_AS(t.add(1, 2), std::invalid_argument);
}

TEST_CASE("files land under out/<command>/<label>", "[report]") {
    const auto root = std::filesystem::temp_directory_path() / "fpgame_report_test";
    std::filesystem::remove_all(root);
    const auto dir = report_dir(root, "verify-measure", "case7");
    REQUIRE(std::filesystem::is_directory(dir));
    REQUIRE(dir == root / "verify-measure" / "case7");

    Csv t({"k", "v"});
    t.add("mass", 0.25);
    t.write(dir / "results.csv");
    std::ifstream f(dir / "results.csv", std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    REQUIRE(ss.str() == t.str());

    write_json(dir / "verdicts.json", nlohmann::json{{"pass", true}});
    std::ifstream g(dir / "verdicts.json");
    nlohmann::json doc;
    g >> doc;
    REQUIRE(doc["pass"] == true);
    std::filesystem::remove_all(root);
}

TEST_CASE("parallel maps are deterministic in the worker count", "[report][parallel]") {
    REQUIRE(resolve_workers(0) >= 1);
    REQUIRE(resolve_workers(3) == 3);

    auto job = [](std::size_t i) {
        Rng rng = Rng::stream(99, i);
        double acc = 0.0;
        for (int k = 0; k < 100; ++k) acc += rng.uniform();
        return acc;
    };
    const auto serial = parallel_map(64, 1, job);
    const auto wide = parallel_map(64, 4, job);
    REQUIRE(serial.size() == 64);
    REQUIRE(serial == wide);

    std::vector<std::atomic<int>> hits(50);
    parallel_for(50, 4, [&](std::size_t i) { hits[i].fetch_add(1); });
    for (auto& h : hits) REQUIRE(h.load() == 1);
}
