// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dstm/cli/commands.hpp"
#include "dstm/cli/config.hpp"
#include "dstm/cli/csv.hpp"
#include "dstm/cli/plot_script.hpp"
#include "dstm/cli/presets.hpp"

using namespace dstm;
using namespace dstm::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "dstm_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_tool(const std::string& args) {
    const std::string cmd = std::string(DSTM_SIM_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("empty config gives the reference defaults") {
    const RunConfig rc = parse_config("");
    CHECK(rc.system.n_tx == 4);
    CHECK(rc.system.n_rx == 4);
    CHECK(rc.system.antenna_spacing == 0.05);
    CHECK_THAT(rc.system.snr_db(), Catch::Matchers::WithinAbs(5.0, 1e-12));
    CHECK(rc.decisions == 100000);
    CHECK(load_config("").seed == rc.seed);
}

TEST_CASE("config errors name the field") {
    try {
        parse_config("antenna_spacing = 0.04\n");
        FAIL("accepted D below half a wavelength");
    } catch (const ConfigError& e) {
        CHECK(e.field == "antenna_spacing");
    }
    CHECK_THROWS_AS(parse_config("no equals sign here\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("n_rx = four\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("bogus_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("theta = 2.0\n"), ConfigError);
}

TEST_CASE("config snapshot reloads to the same configuration") {
    const RunConfig rc = parse_config("theta = 0, pi/16\nsnr_db = 7.5\nspacings = 0.05, 0.1\nseed = 99\n");
    std::string text;
    for (const auto& [k, v] : config_snapshot(rc)) text += k + " = " + v + "\n";
    const RunConfig back = parse_config(text);
    CHECK(config_snapshot(back) == config_snapshot(rc));
    CHECK(back.theta.at(1) == std::numbers::pi / 16);
    CHECK(back.seed == 99);
}

TEST_CASE("presets") {
    RunConfig rc;
    rc.decisions = 100;
    const Codebook cb = rc.codebook();
    CHECK(make_preset("fig5", rc, cb).plans.size() == 328);

    const Preset f9 = make_preset("fig9", rc, cb);
    CHECK(f9.plans.size() == 5 * 41);
    std::set<std::pair<double, int>> have;
    for (const auto& p : f9.plans) have.insert({p.mobility.speed, p.cfg.block_len});
    CHECK(have.count({50.0, 5}) == 1);
    CHECK(have.count({125.0, 2}) == 1);

    const Preset f10 = make_preset("fig10", rc, cb);
    CHECK(f10.metadata.count("v0_D0.05") == 1);
    CHECK(f10.metadata.count("v0_D0.1") == 1);
    CHECK(f10.plans.size() == 2 * 3 * 31);

    const Preset f7 = make_preset("fig7", rc, cb);
    int conventional = 0;
    for (const auto& p : f7.plans) conventional += p.scheme == Scheme::Conventional;
    CHECK(conventional >= 1);

    CHECK_THROWS_AS(make_preset("fig6", rc, cb), ConfigError);
}

TEST_CASE("fig8 floor column is constant per speed") {
    RunConfig rc;
    rc.decisions = 64;
    const Codebook cb = rc.codebook();
    const Preset f8 = make_preset("fig8", rc, cb);
    const CsvTable t = ser_table("fig8", run_points(f8.plans, cb, 1));
    const int v = t.column("v_mps");
    const int floor = t.column("pep_floor");
    const int bound = t.column("pep_bound");
    REQUIRE(v >= 0);
    REQUIRE(floor >= 0);
    std::map<std::string, std::set<std::string>> floors;
    for (const auto& row : t.rows) {
        CHECK_FALSE(row[floor].empty());
        CHECK_FALSE(row[bound].empty());
        floors[row[v]].insert(row[floor]);
    }
    CHECK(floors.size() == 3);
    for (const auto& [speed, values] : floors) CHECK(values.size() == 1);
}

TEST_CASE("csv round trip") {
    CsvTable t;
    t.header = {"a", "b", "c"};
    t.rows = {{"1", "x", ""}, {"2.5", "", "-3e-05"}};
    const CsvTable back = parse_csv(render_csv(t));
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK(back.column("c") == 2);
    CHECK(back.column("zz") == -1);
    CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), ConfigError);
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.333333333");
}

TEST_CASE("plot script") {
    RunConfig rc;
    rc.decisions = 32;
    const Codebook cb = rc.codebook();
    const Preset f5 = make_preset("fig5", rc, cb);
    const CsvTable t = ser_table("fig5", run_points(f5.plans, cb, 1));
    const PlotScript ps = make_plot_script(t, "fig5");
    CHECK(ps.series == 8);
    CHECK(ps.warning.empty());
    CHECK(ps.text.find("set logscale y") != std::string::npos);

    CsvTable empty;
    empty.header = ser_columns();
    const PlotScript none = make_plot_script(empty, "empty");
    CHECK(none.series == 0);
    CHECK_FALSE(none.warning.empty());

    CsvTable no_ser;
    no_ser.header = {"v_mps"};
    CHECK_THROWS_AS(make_plot_script(no_ser, "x"), ConfigError);
}

TEST_CASE("execute: correlation and pep-bound tables") {
    CommandOptions opts;
    opts.command = "correlation";
    opts.preset = "fig9";
    const CommandResult corr = execute(opts);
    CHECK(corr.table.rows.size() == 205);
    CHECK(corr.table.column("safeguard_applied") >= 0);
    CHECK(corr.manifest.command == "correlation");
    CHECK_FALSE(corr.manifest.rng_algorithm.empty());

    opts.command = "pep-bound";
    opts.preset = "fig8";
    const CommandResult pep = execute(opts);
    CHECK(pep.table.rows.size() == 48);
    CHECK(pep.table.column("pep_bound_log10") >= 0);
}

TEST_CASE("tool exit codes and output files") {
    const fs::path dir = scratch_dir();
    const fs::path bad = dir / "bad.cfg";
    std::ofstream(bad) << "antenna_spacing = 0.04\n";
    CHECK(run_tool("correlation --config " + bad.string()) == 1);
    CHECK(run_tool("correlation --preset nope") == 1);
    CHECK(run_tool("no-such-command") == 1);

    const fs::path good = dir / "good.cfg";
    std::ofstream(good) << "speed = 100\ndecisions = 200\nseed = 5\n";
    const fs::path out = dir / "sweep.csv";
    fs::remove(out);
    CHECK(run_tool("ser-sweep --config " + good.string() + " --out " + out.string() + " --emit-plot") == 0);
    const CsvTable t = parse_csv(slurp(out));
    CHECK(t.header == ser_columns());
    CHECK(t.rows.size() == 2);
    CHECK(fs::exists(out.string() + ".manifest"));
    CHECK(fs::exists(out.string() + ".gp"));

    // the manifest loads back as a config and reproduces the table
    const fs::path again = dir / "again.csv";
    CHECK(run_tool("ser-sweep --config " + out.string() + ".manifest --out " + again.string()) == 0);
    CHECK(slurp(again) == slurp(out));
}
