// Harness layer: config parsing and environment overrides, CSV emission,
// checksums, manifest round trips with tamper detection, worker-count
// invariance of experiment artifacts, and the offline report.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>

#include "support.hpp"
#include "warmhmc/harness/checksum.hpp"
#include "warmhmc/harness/config.hpp"
#include "warmhmc/harness/criteria.hpp"
#include "warmhmc/harness/csv.hpp"
#include "warmhmc/harness/experiments.hpp"
#include "warmhmc/harness/manifest.hpp"
#include "warmhmc/harness/report.hpp"
#include "warmhmc/harness/thread_pool.hpp"

using namespace warmhmc;
using testsupport::TempDir;

TEST_CASE("config parses comments, blank lines, and typed values") {
    KeyValueConfig cfg = KeyValueConfig::parse(
        "# header comment\n"
        "experiment = figure1\n"
        "\n"
        "alpha = 2.5\n"
        "dims = 2, 10,100\n"
        "flag = true\r\n"
        "name = two words  \n");
    CHECK(cfg.get_string("experiment") == "figure1");
    CHECK(cfg.get_double("alpha") == 2.5);
    CHECK(cfg.get_long_list("dims") == std::vector<long>{2, 10, 100});
    CHECK(cfg.get_bool("flag"));
    CHECK(cfg.get_string("name") == "two words");
    CHECK(cfg.get_long("missing", 7) == 7);
    CHECK_THROWS_AS(cfg.get_string("missing"), ConfigError);
    CHECK_THROWS_AS(cfg.get_long("name"), ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::parse("a = 1\na = 2\n"), ConfigError);  // duplicate
    CHECK_THROWS_AS(KeyValueConfig::parse("just some text\n"), ConfigError);
}

TEST_CASE("config serialization round-trips byte for byte") {
    const std::string text =
        "# pinned\n"
        "experiment = contraction\n"
        "seeds = 1,2\n"
        "contraction.trials = 250\n";
    KeyValueConfig cfg = KeyValueConfig::parse(text);
    const std::string once = cfg.serialize();
    KeyValueConfig again = KeyValueConfig::parse(once);
    CHECK(again.serialize() == once);
}

TEST_CASE("environment overrides touch only existing keys") {
    KeyValueConfig cfg = KeyValueConfig::parse("proximal.n_outer = 5\nseeds = 1\n");
    ::setenv("WARMHMC_PROXIMAL_N_OUTER", "9", 1);
    ::setenv("WARMHMC_NOT_A_KEY", "17", 1);
    const std::vector<std::string> changed = cfg.apply_env_overrides();
    ::unsetenv("WARMHMC_PROXIMAL_N_OUTER");
    ::unsetenv("WARMHMC_NOT_A_KEY");
    REQUIRE(changed == std::vector<std::string>{"proximal.n_outer"});
    CHECK(cfg.get_long("proximal.n_outer") == 9);
    CHECK_FALSE(cfg.has("not.a_key"));
}

TEST_CASE("CSV writer emits RFC-4180 quoting and CRLF records") {
    TempDir dir;
    {
        CsvWriter csv(dir.file("t.csv"), {"a", "b"});
        csv.row({"plain", "with,comma"});
        csv.row({"quote\"inside", "line\nbreak"});
        csv.close();
    }
    const std::string text = testsupport::read_file(dir.file("t.csv"));
    CHECK(text ==
          "a,b\r\n"
          "plain,\"with,comma\"\r\n"
          "\"quote\"\"inside\",\"line\nbreak\"\r\n");
}

TEST_CASE("CSV writer enforces the header width") {
    TempDir dir;
    CsvWriter csv(dir.file("w.csv"), {"x", "y"});
    CHECK_THROWS_AS(csv.row({"only-one"}), ConfigError);
}

TEST_CASE("numeric CSV formatting is shortest round-trip") {
    CHECK(csv_format(0.1) == "0.1");
    CHECK(csv_format(1.0) == "1");
    CHECK(csv_format(-2.5e-8) == "-2.5e-08");
    CHECK(csv_format(static_cast<long>(-12)) == "-12");
    const double v = 0.03659790866172654;
    CHECK(std::stod(csv_format(v)) == v);
}

TEST_CASE("checksums: reference vectors and file streaming") {
    // FNV-1a 64-bit reference values.
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
    CHECK(checksum_hex(fnv1a64("")) == "cbf29ce484222325");

    TempDir dir;
    testsupport::write_file(dir.file("f.bin"), "foobar");
    CHECK(checksum_file(dir.file("f.bin")) == fnv1a64("foobar"));
}

TEST_CASE("thread pool runs every task and propagates exceptions") {
    std::vector<int> slots(64, 0);
    {
        ThreadPool pool(4);
        for (int i = 0; i < 64; ++i)
            pool.submit([&slots, i] { slots[static_cast<std::size_t>(i)] = i + 1; });
        pool.wait();
    }
    for (int i = 0; i < 64; ++i) CHECK(slots[static_cast<std::size_t>(i)] == i + 1);

    ThreadPool pool(2);
    pool.submit([] { throw std::runtime_error("task failure"); });
    CHECK_THROWS_WITH(pool.wait(), "task failure");
}

TEST_CASE("criterion result passes only when every check holds") {
    CriterionResult c;
    c.name = "demo";
    c.add("first", 0.5, 1.0, "<=", true);
    c.finalize();
    CHECK(c.pass);
    c.add("second", 2.0, 1.0, "<=", false);
    c.finalize();
    CHECK_FALSE(c.pass);

    CriterionResult empty;
    empty.name = "empty";
    empty.finalize();
    CHECK_FALSE(empty.pass);  // no evidence, no pass
}

TEST_CASE("experiments require a nonempty seed list") {
    RunContext ctx;
    ctx.out_dir = ".";
    CHECK_THROWS_AS(run_experiment("contraction", ctx), ConfigError);
    ctx.seeds = {1};
    CHECK_THROWS_AS(run_experiment("no-such-experiment", ctx), ConfigError);
}

TEST_CASE("a full run writes artifacts, a manifest, and reports cleanly") {
    TempDir dir;
    RunContext ctx;
    ctx.config = KeyValueConfig::parse(
        "experiment = contraction\nseeds = 1\ncontraction.dims = 2,5\n"
        "contraction.trials = 40\n");
    ctx.out_dir = dir.str();
    ctx.seeds = {1};

    const ExperimentResult result = run_experiment("contraction", ctx);
    REQUIRE(result.criteria.size() == 1);
    CHECK(result.criteria[0].pass);
    const Manifest manifest = Manifest::build("contraction", ctx.config, ctx.seeds, 0,
                                              result.files, ctx.out_dir, result.criteria);
    manifest.write(ctx.out_dir);

    // The report verifies checksums and reproduces the verdicts.
    std::ostringstream os;
    const ReportSummary summary = report_run(ctx.out_dir, os);
    CHECK(summary.exit_code() == 0);
    CHECK(summary.criteria == 1);
    CHECK(os.str().find("oho-twisted-norm-contraction: PASS") != std::string::npos);

    // Tampering with an artifact must be detected.
    testsupport::write_file(dir.file(result.files[0]),
                            testsupport::read_file(dir.file(result.files[0])) + "x");
    std::ostringstream os2;
    const ReportSummary tampered = report_run(ctx.out_dir, os2);
    CHECK(tampered.exit_code() == 1);
    REQUIRE(tampered.tampered.size() == 1);
    CHECK(tampered.tampered[0] == result.files[0]);

    CHECK_THROWS_AS(report_run(dir.file("nonexistent"), os2), ConfigError);
}

TEST_CASE("rerunning an experiment reproduces artifacts byte for byte") {
    TempDir dir1, dir2;
    RunContext ctx;
    ctx.config = KeyValueConfig::parse(
        "experiment = contraction\nseeds = 3\ncontraction.dims = 4\n"
        "contraction.trials = 60\n");
    ctx.seeds = {3};

    ctx.out_dir = dir1.str();
    const ExperimentResult r1 = run_experiment("contraction", ctx);
    Manifest::build("contraction", ctx.config, ctx.seeds, 0, r1.files, ctx.out_dir, r1.criteria)
        .write(ctx.out_dir);
    ctx.out_dir = dir2.str();
    const ExperimentResult r2 = run_experiment("contraction", ctx);
    Manifest::build("contraction", ctx.config, ctx.seeds, 0, r2.files, ctx.out_dir, r2.criteria)
        .write(ctx.out_dir);

    REQUIRE(r1.files == r2.files);
    for (const std::string& f : r1.files)
        CHECK(testsupport::read_file(dir1.file(f)) == testsupport::read_file(dir2.file(f)));
    CHECK(testsupport::read_file(dir1.file(manifest_filename())) ==
          testsupport::read_file(dir2.file(manifest_filename())));
}

TEST_CASE("artifacts do not depend on the worker count") {
    // The backward-step experiment fans its draws across the pool; one worker
    // and three workers must produce identical bytes.
    const std::string cfg_text =
        "experiment = proximal-e2e\nseeds = 2\nproximal.d = 4\n"
        "proximal.draws = 600\nproximal.eps = 0.5\nproximal.n_outer = 2\n";
    TempDir dir1, dir2;
    RunContext ctx;
    ctx.config = KeyValueConfig::parse(cfg_text);
    ctx.seeds = {2};

    ctx.workers = 1;
    ctx.out_dir = dir1.str();
    const ExperimentResult r1 = run_experiment("proximal-e2e", ctx);
    ctx.workers = 3;
    ctx.out_dir = dir2.str();
    const ExperimentResult r2 = run_experiment("proximal-e2e", ctx);

    REQUIRE(r1.files == r2.files);
    for (const std::string& f : r1.files)
        CHECK(testsupport::read_file(dir1.file(f)) == testsupport::read_file(dir2.file(f)));
}
