#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// run the CLI with stdout+stderr captured to a file
RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() /
                         ("legendre-cli-out-" + std::to_string(getpid()) + "-" +
                          std::to_string(counter++) + ".txt");
    const std::string cmd = std::string(LEGENDRE_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    fs::remove(out);
    return r;
}

}  // namespace

TEST_CASE("cli: sieve") {
    const RunResult r = run_cli("sieve --limit 1000000");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "limit=1000000 primes=78498\n");

    const RunResult tiny = run_cli("sieve --limit 2");
    CHECK(tiny.exit_code == 0);
    CHECK(tiny.output == "limit=2 primes=1\n");

    const RunResult bad = run_cli("sieve --limit 1");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("cli: table1 default rows and --b-list") {
    const RunResult one = run_cli("table1 --limit 1000000 --b-list 1.0825");
    CHECK(one.exit_code == 0);
    REQUIRE(one.output.rfind("B,avg_error\n", 0) == 0);
    const std::string row = one.output.substr(one.output.find('\n') + 1);
    const double avg = std::stod(row.substr(row.find(',') + 1));
    CHECK(std::fabs(avg - (-0.95052)) < 0.01);

    const RunResult empty = run_cli("table1 --limit 100000 --b-list \"\"");
    CHECK(empty.exit_code == 0);
    CHECK(empty.output == "B,avg_error\n");  // header only

    const RunResult full = run_cli("table1 --limit 1000000");
    CHECK(full.exit_code == 0);
    int lines = 0;
    for (char c : full.output)
        if (c == '\n') ++lines;
    CHECK(lines == 11);  // header + ten default B rows
}

TEST_CASE("cli: repeated runs are byte-identical") {
    const RunResult a = run_cli("table1 --limit 1000000");
    const RunResult b = run_cli("table1 --limit 1000000");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);

    const RunResult f1 = run_cli("fit --limit 1000000 --target pi --tol 1e-5");
    const RunResult f2 = run_cli("fit --limit 1000000 --target pi --tol 1e-5");
    CHECK(f1.exit_code == 0);
    CHECK(f1.output == f2.output);
}

TEST_CASE("cli: fit reports B0 and the gap to Legendre's constant") {
    const RunResult r = run_cli("fit --limit 1000000 --target pi --tol 1e-5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("target=pi B0=1.0827") != std::string::npos);
    const auto dpos = r.output.find("delta=");
    REQUIRE(dpos != std::string::npos);
    const double delta = std::stod(r.output.substr(dpos + 6));
    CHECK(std::fabs(delta - 0.00087) < 2e-5);

    const RunResult li = run_cli("fit --limit 1000000 --target li --start 5");
    CHECK(li.exit_code == 0);
    CHECK(li.output.find("target=li B0=1.10") != std::string::npos);

    const RunResult bad = run_cli("fit --limit 1000000 --bracket-lo 1.08 --bracket-hi 1.0825");
    CHECK(bad.exit_code == 3);
}

TEST_CASE("cli: bias scan summary") {
    const RunResult r = run_cli("bias --lo 8 --hi 1000000 --limit 1000000");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("violations=0 ", 0) == 0);
}

TEST_CASE("cli: riemann inversion check") {
    const RunResult r = run_cli("riemann --limit 1000000 --check-inversion --x 100");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "pi=25 exact\n");

    const RunResult p = run_cli("riemann --limit 1000000 --check-inversion --x 97");
    CHECK(p.exit_code == 0);
    CHECK(p.output.find("half-count") != std::string::npos);
}

TEST_CASE("cli: riemann magnitudes and partial sums") {
    const std::string zeros = (fs::path(LEGENDRE_DATA_DIR) / "zeta_zeros_100.txt").string();
    const RunResult m = run_cli("riemann --limit 1000000 --x 1000000 --magnitudes --zeros-file " +
                                zeros);
    CHECK(m.exit_code == 0);
    CHECK(m.output.find("squares_dominate=true") != std::string::npos);

    const RunResult z = run_cli("riemann --limit 1000000 --x 1000000 --zeros 10 --zeros-file " +
                                zeros);
    CHECK(z.exit_code == 0);
    CHECK(z.output.find("zeros=10 approx=") != std::string::npos);
}

TEST_CASE("cli: crossover report") {
    const RunResult r = run_cli("crossover --limit 10000000");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("crossover_x=4850000") != std::string::npos);
    CHECK(r.output.find("x,li_error,legendre_error\n") != std::string::npos);
    // li wins at the far end: its error column is smaller on the 1e7 row
    const auto row = r.output.find("\n10000000,");
    REQUIRE(row != std::string::npos);
    double li_err = 0, lg_err = 0;
    REQUIRE(std::sscanf(r.output.c_str() + row, "\n10000000,%lf,%lf", &li_err, &lg_err) == 2);
    CHECK(li_err < lg_err);
}

TEST_CASE("cli: tracks CSV header") {
    const RunResult r =
        run_cli("tracks --limit 10000 --hi 100 --b-list 1,1.0825 --no-unity-offset");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("x,B=1,B=1.0825,li\n", 0) == 0);
}

TEST_CASE("cli: cache workflow") {
    const fs::path dir = fs::temp_directory_path() / "legendre-cli-cache";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const RunResult fresh = run_cli("table1 --limit 1000000 --b-list 1.0825");
    const RunResult sieve = run_cli("sieve --limit 1000000 --cache-dir " + dir.string());
    CHECK(sieve.exit_code == 0);
    CHECK(fs::exists(dir / "pi-checkpoints.txt"));

    const RunResult cached =
        run_cli("table1 --limit 1000000 --b-list 1.0825 --cache-dir " + dir.string());
    CHECK(cached.exit_code == 0);
    CHECK(cached.output == fresh.output);

    // never silently upgrade past the cached limit
    const RunResult beyond =
        run_cli("table1 --limit 2000000 --b-list 1.0825 --cache-dir " + dir.string());
    CHECK(beyond.exit_code == 1);
    CHECK(beyond.output.find("re-sieve") != std::string::npos);

    // the cache directory can come from the environment
    setenv("LEGENDRE_CACHE_DIR", dir.string().c_str(), 1);
    const RunResult via_env = run_cli("table1 --limit 1000000 --b-list 1.0825");
    unsetenv("LEGENDRE_CACHE_DIR");
    CHECK(via_env.exit_code == 0);
    CHECK(via_env.output == fresh.output);

    fs::remove_all(dir);
}

TEST_CASE("cli: I/O failures exit with 2") {
    const RunResult r = run_cli("table1 --limit 100000 --b-list 1.05 "
                                "--out /nonexistent-dir/x.csv");
    CHECK(r.exit_code == 2);

    const RunResult z = run_cli("riemann --limit 100000 --x 10000 --magnitudes "
                                "--zeros-file /nonexistent-dir/zeros.txt");
    CHECK(z.exit_code == 2);

    // a cache dir that collides with an existing file is unwritable
    const fs::path blocker = fs::temp_directory_path() / "legendre-cache-blocker";
    std::ofstream(blocker) << "x";
    const RunResult c = run_cli("sieve --limit 10000 --cache-dir " +
                                (blocker / "sub").string());
    CHECK(c.exit_code == 2);
    fs::remove(blocker);
}

TEST_CASE("cli: usage errors exit with 1") {
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("nonsense").exit_code == 1);
    CHECK(run_cli("bias --lo 8 --hi 5 --limit 1000").exit_code == 1);
    CHECK(run_cli("--help").exit_code == 0);
}
