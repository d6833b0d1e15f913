// Command-line front end: solve single goals, sample the workspace, scan 2D
// slices, time the solver and export path polylines.

#include "dubins3d/kinematics.hpp"
#include "dubins3d/oracle.hpp"
#include "dubins3d/serialization.hpp"
#include "dubins3d/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

namespace
{
    using namespace dubins3d;

    constexpr int kExitOk = 0;
    constexpr int kExitInvalid = 1;
    constexpr int kExitEmpty = 2;
    constexpr int kExitUsage = 64;

    struct GoalArgs
    {
        std::vector<double> x;
        std::vector<double> v;
        double r = 1.0;
        double tol_fk = Tolerances{}.fk_residual;
        std::string json_in;
    };

    void add_goal_options(CLI::App *cmd, GoalArgs &g)
    {
        cmd->add_option("--x", g.x, "goal position (3 numbers)")->expected(3);
        cmd->add_option("--v", g.v, "goal heading (3 numbers, normalized)")->expected(3);
        cmd->add_option("--r", g.r, "turning radius");
        cmd->add_option("--tol-fk", g.tol_fk, "FK residual acceptance bound");
        cmd->add_option("--json-in", g.json_in, "read {x, v, r} from a JSON file");
    }

    GoalPose make_goal(const GoalArgs &g)
    {
        if (!g.json_in.empty())
        {
            std::ifstream in(g.json_in);
            if (!in)
                throw CLI::ValidationError("--json-in", "cannot open " + g.json_in);
            nlohmann::json doc;
            try
            {
                in >> doc;
            }
            catch (const nlohmann::json::exception &e)
            {
                throw InvalidGoal(std::string("malformed goal JSON: ") + e.what());
            }
            return goal_from_json(doc);
        }
        if (g.x.size() != 3 || g.v.size() != 3)
            throw CLI::RequiredError("--x and --v (or --json-in)");
        return GoalPose(Vec3(g.x[0], g.x[1], g.x[2]), Vec3(g.v[0], g.v[1], g.v[2]), g.r);
    }

    class Output
    {
      public:
        explicit Output(const std::string &path)
        {
            if (!path.empty())
            {
                file_.open(path);
                if (!file_)
                    throw CLI::ValidationError("--out", "cannot write " + path);
            }
        }
        std::ostream &stream() { return file_.is_open() ? file_ : std::cout; }

      private:
        std::ofstream file_;
    };

    std::uint64_t splitmix64(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Each sample draws from its own stream so results do not depend on threading.
    GoalPose random_goal(std::uint64_t seed, std::uint64_t index, double cube, double r)
    {
        std::mt19937_64 rng(splitmix64(seed ^ index));
        std::uniform_real_distribution<double> uni(-cube, cube);
        std::normal_distribution<double> normal(0.0, 1.0);
        Vec3 x(uni(rng), uni(rng), uni(rng));
        Vec3 v;
        do
        {
            v = Vec3(normal(rng), normal(rng), normal(rng));
        } while (v.norm() < 1e-12);
        return GoalPose(x, v.normalized(), r);
    }

    template <typename Fn>
    void parallel_for(std::size_t n, int threads, Fn fn)
    {
        const std::size_t k = static_cast<std::size_t>(std::max(1, threads));
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < k; ++t)
            pool.emplace_back([=, &fn] {
                for (std::size_t i = t; i < n; i += k)
                    fn(i);
            });
        for (auto &th : pool)
            th.join();
    }

    struct Outcome
    {
        int count = -1; ///< -1 when the solver threw
        double shortest = std::numeric_limits<double>::infinity();
        double wall_ms = 0.0;
    };

    Outcome run_one(const GoalPose &goal)
    {
        Outcome o;
        try
        {
            const SolutionSet set = solve(goal);
            o.count = static_cast<int>(set.paths.size());
            if (!set.paths.empty())
                o.shortest = path_length(set.paths.front(), goal.radius());
            o.wall_ms = set.wall_ms;
        }
        catch (const Error &)
        {
        }
        return o;
    }

    double percentile(std::vector<double> v, double q)
    {
        if (v.empty())
            return 0.0;
        std::sort(v.begin(), v.end());
        const double pos = q * static_cast<double>(v.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
    }

    int cmd_solve(const GoalArgs &args, const std::string &out_path)
    {
        const GoalPose goal = make_goal(args);
        Tolerances tol;
        tol.fk_residual = args.tol_fk;
        const SolutionSet set = solve(goal, tol);
        Output out(out_path);
        out.stream() << to_json(set, goal).dump(2) << '\n';
        return set.paths.empty() && !set.family ? kExitEmpty : kExitOk;
    }

    int cmd_export(const GoalArgs &args, int samples, const std::string &out_path)
    {
        if (samples < 2)
            throw CLI::ValidationError("--samples-per-path", "must be at least 2");
        const GoalPose goal = make_goal(args);
        Tolerances tol;
        tol.fk_residual = args.tol_fk;
        const SolutionSet set = solve(goal, tol);
        Output out(out_path);
        std::ostream &os = out.stream();
        os << "solution_index,t,x,y,z\n" << std::setprecision(12);
        for (std::size_t i = 0; i < set.paths.size(); ++i)
        {
            const auto pts = fk_geometric(set.paths[i], goal.radius(), samples);
            for (std::size_t k = 0; k < pts.size(); ++k)
            {
                const double t = static_cast<double>(k) / static_cast<double>(pts.size() - 1);
                os << i << ',' << t << ',' << pts[k].x() << ',' << pts[k].y() << ',' << pts[k].z() << '\n';
            }
        }
        return set.paths.empty() ? kExitEmpty : kExitOk;
    }

    struct SampleArgs
    {
        std::size_t n = 1000;
        std::uint64_t seed = 0;
        double cube = 4.0;
        double r = 1.0;
        int threads = 1;
        std::string summary;
    };

    int cmd_sample(const SampleArgs &a, const std::string &out_path)
    {
        std::vector<Outcome> results(a.n);
        parallel_for(a.n, a.threads, [&](std::size_t i) { results[i] = run_one(random_goal(a.seed, i, a.cube, a.r)); });

        std::map<int, std::size_t> histogram;
        std::vector<double> times;
        int min_count = std::numeric_limits<int>::max(), max_count = -1;
        std::size_t failures = 0;
        for (const Outcome &o : results)
        {
            if (o.count < 0)
            {
                ++failures;
                continue;
            }
            ++histogram[o.count];
            min_count = std::min(min_count, o.count);
            max_count = std::max(max_count, o.count);
            times.push_back(o.wall_ms);
        }

        Output out(out_path);
        std::ostream &os = out.stream();
        os << "solution_count,frequency,percent\n";
        for (const auto &[count, freq] : histogram)
        {
            std::ostringstream pct;
            pct << std::fixed << std::setprecision(4) << 100.0 * static_cast<double>(freq) / static_cast<double>(a.n);
            os << count << ',' << freq << ',' << pct.str() << '\n';
        }

        nlohmann::json summary;
        summary["n"] = a.n;
        summary["seed"] = a.seed;
        summary["cube"] = a.cube;
        summary["r"] = a.r;
        summary["min_count"] = histogram.empty() ? nlohmann::json(nullptr) : nlohmann::json(min_count);
        summary["max_count"] = histogram.empty() ? nlohmann::json(nullptr) : nlohmann::json(max_count);
        summary["failures"] = failures;
        summary["mean_wall_ms"] = times.empty() ? 0.0 : std::accumulate(times.begin(), times.end(), 0.0) / times.size();
        if (a.summary.empty())
            std::cerr << summary.dump(2) << '\n';
        else
        {
            std::ofstream s(a.summary);
            s << summary.dump(2) << '\n';
        }
        return kExitOk;
    }

    struct SliceArgs
    {
        std::string preset;
        double y = 0.0;
        std::vector<double> v;
        double xmin = -4.0, xmax = 4.0, zmin = -4.0, zmax = 4.0;
        int steps = 101;
        double r = 1.0;
        int threads = 1;
    };

    int cmd_slice(SliceArgs a, const std::string &out_path)
    {
        if (a.preset == "fig1a")
        {
            a.y = 0.0;
            a.v = {0.0, 1.0, 0.0};
        }
        else if (a.preset == "fig1b")
        {
            a.y = 0.5;
            a.v = {0.5, 1.0, 0.0};
        }
        else if (!a.preset.empty())
            throw CLI::ValidationError("--preset", "expected fig1a or fig1b");
        if (a.v.size() != 3)
            throw CLI::RequiredError("--v (or --preset)");
        if (a.steps < 1)
            throw CLI::ValidationError("--steps", "must be positive");

        const std::size_t n = static_cast<std::size_t>(a.steps);
        auto coord = [n](double lo, double hi, std::size_t i) {
            return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        };
        std::vector<Outcome> results(n * n);
        const Vec3 heading(a.v[0], a.v[1], a.v[2]);
        parallel_for(n * n, a.threads, [&](std::size_t k) {
            const double z = coord(a.zmin, a.zmax, k / n);
            const double x = coord(a.xmin, a.xmax, k % n);
            try
            {
                results[k] = run_one(GoalPose(Vec3(x, a.y, z), heading, a.r));
            }
            catch (const Error &)
            {
            }
        });

        Output out(out_path);
        std::ostream &os = out.stream();
        os << "# row-major scan: z outer (zmin to zmax), x inner (xmin to xmax); y = " << a.y << '\n';
        os << "x,z,n_solutions,shortest_length\n" << std::setprecision(10);
        for (std::size_t k = 0; k < n * n; ++k)
        {
            const Outcome &o = results[k];
            os << coord(a.xmin, a.xmax, k % n) << ',' << coord(a.zmin, a.zmax, k / n) << ',' << std::max(o.count, 0)
               << ',';
            if (std::isfinite(o.shortest))
                os << o.shortest;
            else
                os << "inf";
            os << '\n';
        }
        return kExitOk;
    }

    int cmd_bench(std::size_t n, std::uint64_t seed, double cube, const std::string &out_path)
    {
        std::vector<double> times;
        std::size_t general = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            const Outcome o = run_one(random_goal(seed, i, cube, 1.0));
            if (o.count < 0)
                continue;
            ++general;
            times.push_back(o.wall_ms);
        }
        nlohmann::json j;
        j["n"] = n;
        j["seed"] = seed;
        j["solved"] = general;
        j["median_ms"] = percentile(times, 0.5);
        j["mean_ms"] = times.empty() ? 0.0 : std::accumulate(times.begin(), times.end(), 0.0) / times.size();
        j["p95_ms"] = percentile(times, 0.95);
        Output out(out_path);
        out.stream() << j.dump(2) << '\n';
        return kExitOk;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"All 3D CSC Dubins paths between the canonical start and a goal pose"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write primary output to this file instead of stdout");

    GoalArgs solve_args;
    auto *solve_cmd = app.add_subcommand("solve", "all CSC paths to one goal, as JSON");
    add_goal_options(solve_cmd, solve_args);
    solve_cmd->add_option("--out", out_path, "output file");

    SampleArgs sample_args;
    auto *sample_cmd = app.add_subcommand("sample", "histogram of solution counts over random goals");
    sample_cmd->add_option("--n", sample_args.n, "number of goals");
    sample_cmd->add_option("--seed", sample_args.seed, "base seed");
    sample_cmd->add_option("--cube", sample_args.cube, "half-width of the position cube");
    sample_cmd->add_option("--r", sample_args.r, "turning radius");
    sample_cmd->add_option("--threads", sample_args.threads, "worker threads")->check(CLI::PositiveNumber);
    sample_cmd->add_option("--summary", sample_args.summary, "summary JSON file (default: stderr)");
    sample_cmd->add_option("--out", out_path, "output file");

    SliceArgs slice_args;
    auto *slice_cmd = app.add_subcommand("slice", "solution count and shortest length on an x-z grid");
    slice_cmd->add_option("--preset", slice_args.preset, "fig1a or fig1b");
    slice_cmd->add_option("--y", slice_args.y, "fixed y coordinate");
    slice_cmd->add_option("--v", slice_args.v, "goal heading")->expected(3);
    slice_cmd->add_option("--xmin", slice_args.xmin);
    slice_cmd->add_option("--xmax", slice_args.xmax);
    slice_cmd->add_option("--zmin", slice_args.zmin);
    slice_cmd->add_option("--zmax", slice_args.zmax);
    slice_cmd->add_option("--steps", slice_args.steps, "grid points per axis");
    slice_cmd->add_option("--r", slice_args.r, "turning radius");
    slice_cmd->add_option("--threads", slice_args.threads, "worker threads")->check(CLI::PositiveNumber);
    slice_cmd->add_option("--out", out_path, "output file");

    std::size_t bench_n = 1000;
    std::uint64_t bench_seed = 0;
    double bench_cube = 4.0;
    auto *bench_cmd = app.add_subcommand("bench", "wall-time statistics over random goals");
    bench_cmd->add_option("--n", bench_n, "number of goals");
    bench_cmd->add_option("--seed", bench_seed, "base seed");
    bench_cmd->add_option("--cube", bench_cube, "half-width of the position cube");
    bench_cmd->add_option("--out", out_path, "output file");

    GoalArgs export_args;
    int samples_per_path = 50;
    auto *export_cmd = app.add_subcommand("export", "sampled polylines of every solution, as CSV");
    add_goal_options(export_cmd, export_args);
    export_cmd->add_option("--samples-per-path", samples_per_path, "points per path (at least 2)");
    export_cmd->add_option("--out", out_path, "output file");

    try
    {
        app.parse(argc, argv);
        if (*solve_cmd)
            return cmd_solve(solve_args, out_path);
        if (*sample_cmd)
            return cmd_sample(sample_args, out_path);
        if (*slice_cmd)
            return cmd_slice(slice_args, out_path);
        if (*bench_cmd)
            return cmd_bench(bench_n, bench_seed, bench_cube, out_path);
        if (*export_cmd)
            return cmd_export(export_args, samples_per_path, out_path);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitUsage;
    }
    catch (const Error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitUsage;
}
