#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace
{
    const std::string kFig5 = " --x 2.64101 -1.78042 -0.371051 --v -0.323321 0.729589 0.602631";

    struct Run
    {
        int status = -1;
        std::string out;
    };

    Run cli(const std::string &args)
    {
        const auto file = std::filesystem::temp_directory_path() /
                          ("dubins3d_cli_test_" + std::to_string(std::hash<std::string>{}(args)) + ".out");
        const std::string cmd = std::string(DUBINS3D_CLI) + " " + args + " > " + file.string() + " 2>/dev/null";
        const int raw = std::system(cmd.c_str());
        Run r;
        r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        std::ifstream in(file);
        std::stringstream ss;
        ss << in.rdbuf();
        r.out = ss.str();
        std::filesystem::remove(file);
        return r;
    }

    std::vector<std::string> lines(const std::string &text)
    {
        std::vector<std::string> out;
        std::stringstream ss(text);
        for (std::string line; std::getline(ss, line);)
            out.push_back(line);
        return out;
    }
} // namespace

TEST_CASE("solve prints every path as JSON")
{
    const Run r = cli("solve" + kFig5);
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["solutions"].size() == 7);
    CHECK(doc["kind"] == "discrete");

    const Run axis = cli("solve --x 0 0 5 --v 0 0 1");
    REQUIRE(axis.status == 0);
    CHECK(nlohmann::json::parse(axis.out)["kind"] == "infinite_family");
}

TEST_CASE("solve exit codes")
{
    CHECK(cli("solve --x 0 0 0 --v 0 0 1").status == 1);
    CHECK(cli("solve --x 1 2 3 --v 0 0 0").status == 1);
    CHECK(cli("solve --x 1 2 --v 0 0 1").status == 64);
    CHECK(cli("no-such-command").status == 64);
}

TEST_CASE("solve reads a JSON goal")
{
    const auto file = std::filesystem::temp_directory_path() / "dubins3d_cli_goal.json";
    std::ofstream(file) << R"({"x": [2.64101, -1.78042, -0.371051], "v": [-0.323321, 0.729589, 0.602631], "r": 1})";
    const Run r = cli("solve --json-in " + file.string());
    std::filesystem::remove(file);
    REQUIRE(r.status == 0);
    CHECK(nlohmann::json::parse(r.out)["solutions"].size() == 7);
}

TEST_CASE("sample histogram is reproducible")
{
    const Run a = cli("sample --n 100 --seed 7");
    const Run b = cli("sample --n 100 --seed 7 --threads 3");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    const auto rows = lines(a.out);
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0] == "solution_count,frequency,percent");
    int total = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        int count = 0, freq = 0;
        double pct = 0;
        REQUIRE(std::sscanf(rows[i].c_str(), "%d,%d,%lf", &count, &freq, &pct) == 3);
        CHECK(count >= 2);
        CHECK(count <= 7);
        total += freq;
    }
    CHECK(total == 100);
}

TEST_CASE("slice grid values")
{
    const Run r = cli("slice --preset fig1a --steps 11");
    REQUIRE(r.status == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 2 + 121);
    CHECK(rows[0].rfind("#", 0) == 0);
    CHECK(rows[1] == "x,z,n_solutions,shortest_length");
    std::set<int> counts;
    for (std::size_t i = 2; i < rows.size(); ++i)
    {
        double x = 0, z = 0, len = 0;
        int n = 0;
        REQUIRE(std::sscanf(rows[i].c_str(), "%lf,%lf,%d,%lf", &x, &z, &n, &len) == 4);
        counts.insert(n);
    }
    CHECK(*counts.begin() >= 2);
    CHECK(*counts.rbegin() <= 7);

    // Far from the origin the shortest path keeps getting longer.
    const Run line = cli("slice --preset fig1a --xmin 6 --xmax 12 --zmin 0 --zmax 0 --steps 4");
    const auto far = lines(line.out);
    REQUIRE(far.size() == 2 + 16);
    double previous = 0.0;
    for (std::size_t i = 2; i < 6; ++i) // first z row, x ascending
    {
        double x = 0, z = 0, len = 0;
        int n = 0;
        REQUIRE(std::sscanf(far[i].c_str(), "%lf,%lf,%d,%lf", &x, &z, &n, &len) == 4);
        CHECK(len > previous);
        previous = len;
    }
}

TEST_CASE("slice cell agrees with solve")
{
    const Run cell = cli("slice --y 0.5 --v 0.5 1 0 --xmin 1.5 --xmax 1.5 --zmin -2 --zmax -2 --steps 1");
    const Run one = cli("solve --x 1.5 0.5 -2 --v 0.5 1 0");
    REQUIRE(cell.status == 0);
    REQUIRE(one.status == 0);
    const auto rows = lines(cell.out);
    REQUIRE(rows.size() == 3);
    double x = 0, z = 0, len = 0;
    int n = 0;
    REQUIRE(std::sscanf(rows[2].c_str(), "%lf,%lf,%d,%lf", &x, &z, &n, &len) == 4);
    const auto doc = nlohmann::json::parse(one.out);
    REQUIRE(static_cast<int>(doc["solutions"].size()) == n);
    CHECK(std::abs(doc["solutions"][0]["length"].get<double>() - len) < 1e-8);
}

TEST_CASE("bench reports timing fields")
{
    const Run r = cli("bench --n 1 --seed 3");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    for (const char *key : {"median_ms", "mean_ms", "p95_ms", "solved", "n"})
        CHECK(doc.contains(key));
    CHECK(doc["solved"] == 1);
}

TEST_CASE("export polylines")
{
    const Run straight = cli("export --x 0 0 5 --v 0 0 1 --samples-per-path 2");
    REQUIRE(straight.status == 0);
    const auto rows = lines(straight.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "solution_index,t,x,y,z");
    CHECK(rows[1] == "0,0,0,0,0");
    CHECK(rows[2] == "0,1,0,0,5");

    const Run fig5 = cli("export" + kFig5 + " --samples-per-path 20");
    REQUIRE(fig5.status == 0);
    std::set<int> indices;
    for (const std::string &row : lines(fig5.out))
    {
        int idx = 0;
        double t = 0, x = 0, y = 0, z = 0;
        if (std::sscanf(row.c_str(), "%d,%lf,%lf,%lf,%lf", &idx, &t, &x, &y, &z) != 5)
            continue;
        indices.insert(idx);
        if (t == 1.0)
            CHECK(std::hypot(x - 2.64101, y + 1.78042, z + 0.371051) < 1e-6);
    }
    CHECK(indices.size() == 7);

    CHECK(cli("export --x 0 0 5 --v 0 0 1 --samples-per-path 1").status == 64);
}
