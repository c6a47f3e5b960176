#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cdl/core.hpp"
#include "cdl/io.hpp"
#include "cli.hpp"
#include "oracle.hpp"

using namespace cdl;

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

/// A scratch directory removed at scope exit.
struct TempDir
{
    std::filesystem::path path;

    TempDir()
    {
        path = std::filesystem::temp_directory_path() /
               ("cdl_cli_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::string file(const std::string &name, const std::string &contents = "") const
    {
        const auto p = (path / name).string();
        if (!contents.empty())
            io::write_file(p, contents);
        return p;
    }
};

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("build")
    {
        TempDir tmp;
        auto r = run({"build", "-n", "8", "--scheme", "alternating"});
        CHECK(r.code == cli::kSuccess);
        CHECK(r.out == "size=222\n");

        const auto empty = tmp.file("empty.trs", "# nothing assigned\n");
        const auto out = tmp.file("d3.txt");
        r = run({"build", "-n", "3", "--trs", empty, "-o", out});
        CHECK(r.code == cli::kSuccess);
        CHECK(r.out == "size=6\n");
        std::istringstream in(io::read_file(out));
        CHECK(io::read_domain(in).size() == 6);

        std::ostringstream tls;
        io::write_tls(tls, pattern_avoidance_constraints(4, Pattern{2, 3, 1}));
        const auto avoid = tmp.file("avoid231.tls", tls.str());
        r = run({"build", "-n", "4", "--tls", avoid});
        CHECK(r.out == "size=14\n");
    }

    TEST_CASE("size")
    {
        CHECK(run({"size", "-n", "10", "--scheme", "alternating"}).out == "size=1069\n");
        const auto c8 = pattern_avoidance_constraints(8, Pattern{2, 5, 3, 1, 4});
        const std::string expected = "size=" + std::to_string(oracle::size(c8)) + "\n";
        CHECK(run({"size", "-n", "8", "--pattern", "2-5-3-1-4"}).out == expected);
        CHECK(run({"size", "-n", "8", "--pattern", "2-5-3-1-4", "--jobs", "4"}).out == expected);
        CHECK(run({"size", "-n", "7", "--scheme", "alternating", "--ordering", "colex"}).out ==
              "size=100\n");
    }

    TEST_CASE("hash")
    {
        TempDir tmp;
        const auto single = tmp.file("single.txt", "2 1 3\n");
        auto r = run({"hash", single});
        CHECK(r.code == cli::kSuccess);
        CHECK(r.out == "1 2 3\n");

        std::mt19937 rng(109);
        const Domain d = oracle::random_domain(5, rng);
        std::ostringstream a, b;
        io::write_domain(a, d);
        io::write_domain(b, relabel_domain(d, oracle::random_relabeling(5, rng)));
        const auto ha = run({"hash", tmp.file("a.txt", a.str())});
        const auto hb = run({"hash", tmp.file("b.txt", b.str())});
        CHECK(ha.out == hb.out);
        std::istringstream in(ha.out);
        CHECK(oracle::to_seqs(io::read_domain(in)) == oracle::min_relabeling(oracle::to_seqs(d), 5));

        const auto out = tmp.file("h.txt");
        CHECK(run({"hash", single, "-o", out}).out.empty());
        CHECK(io::read_file(out) == "1 2 3\n");
    }

    TEST_CASE("subsets")
    {
        TempDir tmp;
        const auto trs = tmp.file("one.trs", "1 2 3 1N2\n1 2 4 -\n1 3 4 -\n2 3 4 -\n");
        const auto r = run({"subsets", "-n", "4", "--trs", trs, "-t", "3"});
        CHECK(r.code == cli::kSuccess);
        CHECK(r.out == "2\n0\n0\n0\n");
    }

    TEST_CASE("search")
    {
        TempDir tmp;
        auto r = run({"search", "-n", "6", "--ordering", "dynamic", "--target", "45"});
        CHECK(r.code == cli::kSuccess);
        std::istringstream in(r.out);
        const auto hits = io::read_results(in);
        REQUIRE_FALSE(hits.empty());
        CHECK(hits.front().size >= 45);
        CHECK(r.err.find("reached_target=1") != std::string::npos);

        r = run({"search", "-n", "6", "--ordering", "dynamic", "--target", "45", "--dfs"});
        CHECK(r.code == cli::kSuccess);

        const auto plain = run({"search", "-n", "5", "--prune-iso"});
        const auto unpruned = run({"search", "-n", "5", "--dfs"});
        std::istringstream p(plain.out), u(unpruned.out);
        CHECK(io::read_results(p).front().size == io::read_results(u).front().size);

        // Interrupted and resumed runs give the same results.
        const auto cp = tmp.file("run.cp");
        r = run({"search", "-n", "5", "--prune-iso", "--checkpoint", cp, "--stop-after", "25"});
        CHECK(r.code == cli::kSuccess);
        CHECK(r.out.empty());
        CHECK(io::read_file(cp).rfind("n=5 k=3 ordering=rz rules=3467\n", 0) == 0);
        r = run({"search", "-n", "5", "--prune-iso", "--resume", cp});
        CHECK(r.out == plain.out);

        CHECK(run({"search", "-n", "5", "--rules", "1N3,9N9"}).code == cli::kUsageError);
        CHECK(run({"search", "-n", "5", "--score", "depth"}).code == cli::kUsageError);
        CHECK(run({"search", "-n", "5", "--checkpoint", cp}).code == cli::kUsageError);
        CHECK(run({"search", "-n", "5", "--ordering", "zigzag"}).code == cli::kUsageError);
    }

    TEST_CASE("verify")
    {
        auto r = run({"verify", "catalan", "--max-n", "6"});
        CHECK(r.code == cli::kSuccess);
        CHECK(r.out.find("avoid 1-2-3 n=6 expected=132 got=132 ok") != std::string::npos);
        CHECK(run({"verify", "length4", "--max-n", "8"}).code == cli::kSuccess);
        r = run({"verify", "table1"});
        CHECK(r.code == cli::kSuccess);
        CHECK(r.out.find("n=11 expected=2324 got=2324 ok") != std::string::npos);

        TempDir tmp;
        std::filesystem::create_directories(tmp.path / "oeis");
        tmp.file("oeis/A000108.txt", "1 1\n2 2\n3 5\n4 14\n5 43\n6 132\n");
        r = run({"verify", "catalan", "--data-dir", tmp.path.string()});
        CHECK(r.code == cli::kVerificationFailure);
        CHECK(r.out.find("MISMATCH") != std::string::npos);

        CHECK(run({"verify", "length4", "--data-dir", tmp.path.string()}).code == cli::kDataError);
    }

    TEST_CASE("exit codes for bad input")
    {
        TempDir tmp;
        CHECK(run({}).code == cli::kUsageError);
        CHECK(run({"frobnicate"}).code == cli::kUsageError);
        CHECK(run({"size", "-n", "5"}).code == cli::kUsageError);
        CHECK(run({"size", "-n", "5", "--scheme", "alternating", "--pattern", "1-2-3"}).code ==
              cli::kUsageError);
        CHECK(run({"size", "-n", "5", "--scheme", "zigzag"}).code == cli::kUsageError);
        CHECK(run({"hash", (tmp.path / "missing.txt").string()}).code == cli::kDataError);
        CHECK(run({"hash", tmp.file("bad.txt", "1 2 3\n1 2\n")}).code == cli::kDataError);
        CHECK(run({"build", "-n", "4", "--trs", tmp.file("bad.trs", "1 2 3 7N7\n")}).code ==
              cli::kDataError);
        CHECK(run({"--help"}).code == cli::kSuccess);
    }
}
