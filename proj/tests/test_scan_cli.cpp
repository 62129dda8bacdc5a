// Tests for the scan layer (config parsing, per-command resolution, CSV and
// metadata emission) and end-to-end checks of the command-line binary,
// whose path arrives as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cwscat/averaging.hpp>
#include <cwscat/errors.hpp>
#include <cwscat/partialwave.hpp>
#include <cwscat/scan.hpp>
#include <cwscat/scenario.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace cwscat;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_work;

double rel_err(double got, double want)
{
    return std::abs(got - want) / std::abs(want);
}

std::string slurp(fs::path const& p)
{
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(fs::path const& p, std::string const& text)
{
    std::ofstream out(p);
    out << text;
}

//! Run the CLI binary; returns its exit status (or -1 on launch failure).
int run_cli(std::string const& args, fs::path const& stdout_file = {},
            fs::path const& stderr_file = {})
{
    std::string cmd = "\"" + g_cli + "\" " + args;
    cmd += stdout_file.empty() ? std::string(" >/dev/null")
                               : " >" + stdout_file.string();
    cmd += stderr_file.empty() ? std::string(" 2>/dev/null")
                               : " 2>" + stderr_file.string();
    int const rc = std::system(cmd.c_str());
    if (rc == -1) { return -1; }
    if (WIFEXITED(rc)) { return WEXITSTATUS(rc); }
    return -1;
}

} // namespace

//----------------------------------------------------------------------------
// Config store and file parsing
//----------------------------------------------------------------------------

TEST_CASE("config store tracks values, origins, and overrides")
{
    ConfigStore store;
    CHECK(ConfigStore::known_key("eta"));
    CHECK(ConfigStore::known_key("n_beta"));
    CHECK(!ConfigStore::known_key("bogus"));

    store.set_from_config("eta", "10.5", 3);
    CHECK(store.has("eta"));
    CHECK(store.get("eta") == "10.5");
    CHECK(store.origin("eta") == "config(line 3)");

    store.set_from_flag("eta", "12.5");
    CHECK(store.get("eta") == "12.5");
    CHECK(store.origin("eta") == "flag");

    store.note_default("beta", "0");
    CHECK(store.get("beta") == "0");
    CHECK(store.origin("beta") == "default");
    CHECK(!store.has("beta")); // defaults do not count as user-provided
    store.note_default("beta", "1"); // no-op: already recorded
    CHECK(store.get("beta") == "0");

    CHECK(store.origin("theta") == "unset");
    CHECK_THROWS_AS(store.set_from_config("nope", "1", 7), ScenarioError);
    CHECK_THROWS_AS(store.set_from_config("eta", "11", 9), ScenarioError);
}

TEST_CASE("duplicate config keys are reported with both line numbers")
{
    ConfigStore store;
    store.set_from_config("beta", "1", 2);
    try {
        store.set_from_config("beta", "2", 5);
        FAIL("expected a duplicate-key error");
    } catch (ScenarioError const& e) {
        std::string const msg = e.what();
        CHECK(msg.find("beta") != std::string::npos);
        CHECK(msg.find('2') != std::string::npos);
        CHECK(msg.find('5') != std::string::npos);
    }
}

TEST_CASE("config files parse comments, blanks, and report line numbers")
{
    auto const path = g_work / "good.cfg";
    spit(path,
         "# full-line comment\n"
         "\n"
         "eta = 20.0\n"
         "beta=1.5   # trailing comment\n"
         "  theta = 0.25\n");
    auto store = parse_config(path.string());
    CHECK(store.get("eta") == "20.0");
    CHECK(store.get("beta") == "1.5");
    CHECK(store.get("theta") == "0.25");
    CHECK(store.origin("eta") == "config(line 3)");
    CHECK(store.origin("beta") == "config(line 4)");
    CHECK(store.origin("theta") == "config(line 5)");

    auto const bad_syntax = g_work / "bad_syntax.cfg";
    spit(bad_syntax, "eta = 20\nthis line has no equals\n");
    try {
        parse_config(bad_syntax.string());
        FAIL("expected a syntax error");
    } catch (ScenarioError const& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    auto const unknown = g_work / "unknown.cfg";
    spit(unknown, "etaa = 20\n");
    CHECK_THROWS_AS(parse_config(unknown.string()), ScenarioError);

    auto const duped = g_work / "duped.cfg";
    spit(duped, "eta = 20\n# gap\neta = 21\n");
    try {
        parse_config(duped.string());
        FAIL("expected a duplicate-key error");
    } catch (ScenarioError const& e) {
        std::string const msg = e.what();
        CHECK(msg.find('1') != std::string::npos);
        CHECK(msg.find('3') != std::string::npos);
    }

    // A bad --config path is a usage problem, not an I/O failure mid-run.
    CHECK_THROWS_AS(parse_config((g_work / "absent.cfg").string()),
                    ScenarioError);
}

//----------------------------------------------------------------------------
// Per-command resolution
//----------------------------------------------------------------------------

TEST_CASE("per-command defaults resolve as documented")
{
    {
        ConfigStore store;
        auto const spec = resolve_spec(Command::shadow_zone, store);
        CHECK(spec.axis == "theta");
        CHECK(spec.axis_lo == 0.001);
        CHECK(spec.axis_hi == 0.5);
        CHECK(spec.axis_steps == 200);
        CHECK(spec.delta_policy.kind == DeltaPolicyKind::maximize_per_point);
        CHECK(spec.out_path == "shadow_zone.csv");
        CHECK(store.origin("axis") == "default");
    }
    {
        ConfigStore store;
        auto const spec = resolve_spec(Command::forward_vs_beta, store);
        CHECK(spec.axis == "beta");
        CHECK(spec.axis_lo == 10.0);
        CHECK(spec.axis_hi == 250.0);
        CHECK(spec.axis_steps == 25);
        CHECK(spec.delta_policy.kind == DeltaPolicyKind::fixed);
        CHECK(spec.delta_policy.fixed_value == 0.0);
    }
    {
        ConfigStore store;
        auto const spec = resolve_spec(Command::lm_density, store);
        CHECK(spec.beta == 10.0);
        CHECK(spec.axis.empty());
        CHECK(spec.l_stride == 10);
    }
    {
        ConfigStore store;
        auto const spec = resolve_spec(Command::beta_phi_profile, store);
        CHECK(spec.axis == "beta");
        CHECK(spec.axis_lo == 0.0);
        CHECK(spec.axis_hi == 3.0);
        CHECK(spec.axis_steps == 31);
        CHECK(spec.phi_steps == 16);
        CHECK(spec.delta_policy.kind == DeltaPolicyKind::maximize_origin);
    }
    {
        ConfigStore store;
        auto const spec = resolve_spec(Command::averaged_points, store);
        CHECK(spec.axis == "theta");
        CHECK(spec.axis_lo == 0.1);
        CHECK(spec.axis_hi == 0.2);
        CHECK(spec.axis_steps == 3);
        CHECK(spec.quad.n_beta == 32);
        CHECK(spec.quad.n_phi == 16);
    }
    {
        ConfigStore store;
        auto const spec = resolve_spec(Command::physical_map, store);
        CHECK(spec.out_path.empty());
        CHECK(spec.z1 == 79);
        CHECK(spec.energy_mev == 4.8);
    }
}

TEST_CASE("resolution rejects bad grids, axes, and regime violations")
{
    {
        ConfigStore store;
        store.set_from_flag("axis", "beta");
        CHECK_THROWS_AS(resolve_spec(Command::shadow_zone, store), ScenarioError);
    }
    {
        ConfigStore store;
        store.set_from_flag("axis_steps", "1");
        CHECK_THROWS_AS(resolve_spec(Command::shadow_zone, store), ScenarioError);
    }
    {
        ConfigStore store;
        store.set_from_flag("axis_lo", "0.4");
        store.set_from_flag("axis_hi", "0.2");
        CHECK_THROWS_AS(resolve_spec(Command::shadow_zone, store), ScenarioError);
    }
    {
        ConfigStore store;
        store.set_from_flag("axis", "theta"); // no axis on this command
        CHECK_THROWS_AS(resolve_spec(Command::lm_density, store), ScenarioError);
    }
    {
        ConfigStore store;
        store.set_from_flag("axis_steps", "5");
        CHECK_THROWS_AS(resolve_spec(Command::physical_map, store), ScenarioError);
    }
    {
        ConfigStore store;
        store.set_from_flag("eps", "0.2");
        CHECK_THROWS_AS(resolve_spec(Command::shadow_zone, store), ScenarioError);
    }
    {
        ConfigStore store;
        store.set_from_flag("beta", "40"); // beyond 1/sqrt(eps)
        CHECK_THROWS_AS(resolve_spec(Command::shadow_zone, store), ScenarioError);
    }
    {
        ConfigStore store; // forward form has no time-shift structure to scan
        store.set_from_flag("delta_policy", "maximize_origin");
        CHECK_THROWS_AS(resolve_spec(Command::forward_vs_beta, store),
                        ScenarioError);
    }
    {
        ConfigStore store;
        store.set_from_flag("delta_policy", "nonsense");
        CHECK_THROWS_AS(resolve_spec(Command::shadow_zone, store), ScenarioError);
    }
    {
        ConfigStore store;
        store.set_from_flag("eta", "not-a-number");
        CHECK_THROWS_AS(resolve_spec(Command::shadow_zone, store), ScenarioError);
    }
    {
        ConfigStore store;
        store.set_from_flag("format", "png");
        CHECK_THROWS_AS(resolve_spec(Command::shadow_zone, store), ScenarioError);
    }
}

TEST_CASE("flags take precedence over config entries at resolution")
{
    ConfigStore store;
    store.set_from_config("eta", "10", 1);
    store.set_from_flag("eta", "12");
    store.set_from_flag("out", "");
    auto const spec = resolve_spec(Command::shadow_zone, store);
    CHECK(spec.eta == 12.0);
    CHECK(store.origin("eta") == "flag");
    CHECK(spec.out_path.empty());
}

TEST_CASE("delta policy strings parse in all forms")
{
    ConfigStore store;
    store.set_from_flag("delta_policy", "fixed:0.25");
    auto const spec = resolve_spec(Command::shadow_zone, store);
    CHECK(spec.delta_policy.kind == DeltaPolicyKind::fixed);
    CHECK(spec.delta_policy.fixed_value == 0.25);

    ConfigStore store2;
    store2.set_from_flag("delta_policy", "fixed");
    store2.set_from_flag("delta", "0.4");
    auto const spec2 = resolve_spec(Command::shadow_zone, store2);
    CHECK(spec2.delta_policy.fixed_value == 0.4);

    ConfigStore store3;
    store3.set_from_flag("delta_policy", "zero");
    auto const spec3 = resolve_spec(Command::shadow_zone, store3);
    CHECK(spec3.delta_policy.kind == DeltaPolicyKind::zero);
}

//----------------------------------------------------------------------------
// run_scan: rows and files
//----------------------------------------------------------------------------

TEST_CASE("shadow-zone rows recompute against the library")
{
    ConfigStore store;
    store.set_from_flag("axis_lo", "0.05");
    store.set_from_flag("axis_hi", "0.4");
    store.set_from_flag("axis_steps", "5");
    store.set_from_flag("delta_policy", "zero");
    store.set_from_flag("out", "");
    auto const spec = resolve_spec(Command::shadow_zone, store);
    auto const res = run_scan(spec);
    CHECK(res.header == std::vector<std::string>{"theta", "p_model", "p_ruth",
                                                 "delta_used"});
    REQUIRE(res.rows.size() == 5);
    CHECK(res.csv_path.empty()); // nothing written

    auto const table = build_phase_table(spec.eta, spec.eps, spec.beta);
    for (auto const& row : res.rows) {
        Scenario s;
        s.eta = spec.eta;
        s.eps = spec.eps;
        s.beta = spec.beta;
        s.theta = row[0];
        s.delta = 0.0;
        CHECK(rel_err(row[1], probability_general(s, table).value) < 1e-13);
        CHECK(rel_err(row[2], rutherford_probability(row[0], spec.eta, spec.eps)) < 1e-13);
        CHECK(row[3] == 0.0);
    }
    CHECK(res.rows.front()[0] == 0.05);
    CHECK(res.rows.back()[0] == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("forward rows recompute against the library")
{
    ConfigStore store;
    store.set_from_flag("axis_steps", "4");
    store.set_from_flag("axis_lo", "10");
    store.set_from_flag("axis_hi", "100");
    store.set_from_flag("out", "");
    auto const spec = resolve_spec(Command::forward_vs_beta, store);
    auto const res = run_scan(spec);
    CHECK(res.header == std::vector<std::string>{"beta", "p_forward",
                                                 "delta_used"});
    REQUIRE(res.rows.size() == 4);
    for (auto const& row : res.rows) {
        CHECK(rel_err(row[1],
                      probability_forward(spec.eta, row[0], spec.eps).value) < 1e-13);
    }
}

TEST_CASE("channel-density rows respect the stride and match the library")
{
    ConfigStore store;
    store.set_from_flag("beta", "4");
    store.set_from_flag("l_stride", "100");
    store.set_from_flag("out", "");
    auto const spec = resolve_spec(Command::lm_density, store);
    auto const res = run_scan(spec);
    CHECK(res.header == std::vector<std::string>{"l", "m", "density"});

    Scenario s;
    s.eta = spec.eta;
    s.eps = spec.eps;
    s.beta = 4.0;
    auto const grid = lm_density(s);
    int const m_cols = 2 * grid.m_cut + 1;
    std::int64_t const l_rows = (grid.l_hi - grid.l_lo) / 100 + 1;
    CHECK(res.rows.size() == static_cast<std::size_t>(l_rows * m_cols));
    CHECK(res.rows[0][0] == static_cast<double>(grid.l_lo));
    CHECK(res.rows[1][0] == static_cast<double>(grid.l_lo)); // m varies first
    bool all_match = true;
    for (auto const& row : res.rows) {
        auto const l = static_cast<std::int64_t>(row[0]);
        auto const m = static_cast<int>(row[1]);
        if (row[2] != grid.at(l, m)) { all_match = false; }
    }
    CHECK(all_match);
}

TEST_CASE("profile rows run beta-major with a held time shift")
{
    ConfigStore store;
    store.set_from_flag("theta", "0.3");
    store.set_from_flag("axis_steps", "3");
    store.set_from_flag("axis_hi", "2");
    store.set_from_flag("phi_steps", "4");
    store.set_from_flag("out", "");
    auto const spec = resolve_spec(Command::beta_phi_profile, store);
    auto const res = run_scan(spec);
    CHECK(res.header == std::vector<std::string>{"beta", "phi", "p_model",
                                                 "delta_used"});
    REQUIRE(res.rows.size() == 12);
    CHECK(res.rows[0][0] == 0.0);
    CHECK(res.rows[3][0] == 0.0);
    CHECK(res.rows[4][0] == 1.0);
    CHECK(res.rows[1][1] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));

    // Held delta: all rows carry the origin maximizer.
    double const held = res.rows[0][3];
    for (auto const& row : res.rows) { CHECK(row[3] == held); }

    // Recompute one interior node with the library; at theta <= 0.5 the
    // profile runs the small-angle bracket kernel.
    Scenario s;
    s.eta = spec.eta;
    s.eps = spec.eps;
    s.beta = res.rows[5][0];
    s.phi_b = res.rows[5][1];
    s.theta = 0.3;
    s.delta = held;
    auto const table = build_phase_table(s.eta, s.eps, s.beta);
    CHECK(rel_err(res.rows[5][2], probability_small_angle(s, table).value) < 1e-12);
    // ...which agrees with the exact-d route at its approximation level.
    CHECK(rel_err(res.rows[5][2], probability_general(s, table).value) < 2e-2);
}

TEST_CASE("averaged rows recompute against the library")
{
    ConfigStore store;
    store.set_from_flag("axis_steps", "2");
    store.set_from_flag("n_beta", "6");
    store.set_from_flag("n_phi", "9");
    store.set_from_flag("delta_policy", "fixed:0.3");
    store.set_from_flag("out", "");
    auto const spec = resolve_spec(Command::averaged_points, store);
    auto const res = run_scan(spec);
    CHECK(res.header == std::vector<std::string>{"theta", "p_avg", "p_ruth",
                                                 "ratio", "delta_used"});
    REQUIRE(res.rows.size() == 2);
    for (auto const& row : res.rows) {
        auto const direct = average_over_impact(row[0], spec.eta, spec.eps,
                                                spec.quad, spec.trunc);
        CHECK(rel_err(row[1], direct.value) < 1e-13);
        CHECK(rel_err(row[3], row[1] / row[2]) < 1e-14);
        CHECK(row[4] == 0.3);
    }
}

TEST_CASE("physical-map summary matches the mapping module")
{
    ConfigStore store;
    auto const spec = resolve_spec(Command::physical_map, store);
    auto const res = run_scan(spec);
    REQUIRE(res.rows.size() == 1);
    auto const& row = res.rows[0];
    CHECK(rel_err(row[0], 22.7189668072) < 1e-9);   // eta
    CHECK(rel_err(row[1], 189.163522911) < 1e-9);   // p (MeV)
    CHECK(rel_err(row[2], 0.00521577779277) < 1e-9); // sigma_x (Angstrom)
    CHECK(rel_err(row[3], 0.164937375945) < 1e-9);  // R (Angstrom)
    // Angular scales recompute from the derived eta in the same row.
    CHECK(rel_err(row[4], 4.0 * spec.eps * row[0]) < 1e-14);
    CHECK(rel_err(row[5], spec.eps * std::sqrt(8.0 * row[0])) < 1e-14);
    CHECK(rel_err(row[6], -63.24555320336758663997787) < 1e-12); // delta(T=0)
}

TEST_CASE("CSV, metadata, and SVG files are written and round-trip")
{
    auto const out = (g_work / "emit.csv").string();
    ConfigStore store;
    store.set_from_flag("axis_lo", "0.1");
    store.set_from_flag("axis_hi", "0.3");
    store.set_from_flag("axis_steps", "3");
    store.set_from_flag("delta_policy", "zero");
    store.set_from_flag("format", "csv+svg");
    store.set_from_flag("out", out);
    auto const spec = resolve_spec(Command::shadow_zone, store);
    auto const res = run_scan(spec, &store);
    CHECK(res.csv_path == out);
    REQUIRE(fs::exists(out));
    REQUIRE(fs::exists(out + ".meta.json"));
    REQUIRE(fs::exists(out + ".svg"));

    // CSV: header line plus one line per row; doubles round-trip exactly.
    std::istringstream csv(slurp(out));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "theta,p_model,p_ruth,delta_used");
    std::size_t n_lines = 0;
    while (std::getline(csv, line)) {
        std::istringstream fields(line);
        std::string field;
        for (std::size_t col = 0; std::getline(fields, field, ','); ++col) {
            REQUIRE(col < res.rows[n_lines].size());
            CHECK(std::strtod(field.c_str(), nullptr) == res.rows[n_lines][col]);
        }
        ++n_lines;
    }
    CHECK(n_lines == res.rows.size());

    // Metadata sidecar: provenance and bookkeeping.
    auto const meta = nlohmann::json::parse(slurp(out + ".meta.json"));
    CHECK(meta.at("command") == "shadow_zone");
    CHECK(meta.at("library_version") == "1.0.0");
    CHECK(meta.at("row_count") == 3);
    CHECK(meta.at("header").size() == 4);
    CHECK(meta.at("parameters").at("axis_lo").at("origin") == "flag");
    CHECK(meta.at("parameters").at("eta").at("origin") == "default");
    CHECK(meta.at("parameters").at("eta").at("value") == "22.8");
    CHECK(meta.at("outputs").at("csv") == out);
    CHECK(meta.at("wall_time_seconds").is_number());

    // SVG plot: well-formed enough to start with an <svg tag.
    auto const svg = slurp(out + ".svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);

    // Unwritable destination: an I/O error, not a scenario error.
    ConfigStore bad;
    bad.set_from_flag("axis_lo", "0.1");
    bad.set_from_flag("axis_hi", "0.3");
    bad.set_from_flag("axis_steps", "2");
    bad.set_from_flag("delta_policy", "zero");
    bad.set_from_flag("out", "/nonexistent-dir/x.csv");
    auto const bad_spec = resolve_spec(Command::shadow_zone, bad);
    CHECK_THROWS_AS(run_scan(bad_spec, &bad), std::runtime_error);
}

TEST_CASE("csv serialization keeps 17 significant digits")
{
    for (double v : {1.0 / 3.0, 8.31744e-9, -0.0, 1e-300, 22.8,
                     0.5369910099907489, 3.3201104846426174e-4}) {
        auto const s = format_csv_value(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

//----------------------------------------------------------------------------
// End-to-end binary checks
//----------------------------------------------------------------------------

TEST_CASE("binary: help and version exit cleanly")
{
    auto const out = g_work / "help.txt";
    CHECK(run_cli("--help", out) == 0);
    auto const help = slurp(out);
    CHECK(help.find("shadow_zone") != std::string::npos);
    CHECK(help.find("averaged_points") != std::string::npos);

    CHECK(run_cli("--version", out) == 0);
    CHECK(slurp(out).find("1.0.0") != std::string::npos);
}

TEST_CASE("binary: usage errors exit 1, regime errors 2, I/O errors 3")
{
    auto const err = g_work / "err.txt";
    CHECK(run_cli("no_such_command", {}, err) == 1);
    CHECK(run_cli("shadow_zone --no-such-flag", {}, err) == 1);
    CHECK(run_cli("shadow_zone --eps 0.5 --out ''", {}, err) == 1);
    CHECK(slurp(err).find("error") != std::string::npos);

    // Forward form below its validity floor: a regime error.
    CHECK(run_cli("forward_vs_beta --axis-lo 5 --axis-hi 20 --axis-steps 2 --out ''",
                  {}, err) == 2);
    CHECK(slurp(err).find("regime") != std::string::npos);

    CHECK(run_cli("shadow_zone --axis-steps 2 --axis-lo 0.1 --axis-hi 0.2 "
                  "--delta-policy zero --out /nonexistent-dir/x.csv",
                  {}, err) == 3);
}

TEST_CASE("binary: config file plus flag override, recorded in metadata")
{
    auto const cfg = g_work / "run.cfg";
    spit(cfg,
         "# shadow-zone sample\n"
         "axis_lo = 0.1\n"
         "axis_hi = 0.3\n"
         "axis_steps = 3\n"
         "delta_policy = zero\n"
         "eta = 10\n");
    auto const out = (g_work / "cfgrun.csv").string();
    int const rc = run_cli("shadow_zone --config " + cfg.string() +
                           " --eta 12 --out " + out);
    CHECK(rc == 0);
    REQUIRE(fs::exists(out + ".meta.json"));
    auto const meta = nlohmann::json::parse(slurp(out + ".meta.json"));
    CHECK(meta.at("parameters").at("eta").at("value") == "12");
    CHECK(meta.at("parameters").at("eta").at("origin") == "flag");
    CHECK(meta.at("parameters").at("axis_lo").at("origin") == "config(line 2)");
    CHECK(meta.at("parameters").at("axis_steps").at("value") == "3");

    // A broken config is a usage error.
    auto const bad = g_work / "bad.cfg";
    spit(bad, "eta = 10\neta = 11\n");
    auto const err = g_work / "cfg_err.txt";
    CHECK(run_cli("shadow_zone --config " + bad.string() + " --out ''", {},
                  err) == 1);
    auto const msg = slurp(err);
    CHECK(msg.find("duplicate") != std::string::npos);
}

TEST_CASE("binary: physical_map prints the mapping to stdout")
{
    auto const out = g_work / "pm.txt";
    CHECK(run_cli("physical_map", out) == 0);
    auto const text = slurp(out);
    CHECK(text.find("eta") != std::string::npos);
    CHECK(text.find("22.7189") != std::string::npos);
}

TEST_CASE("binary: identical CSV bytes at any thread count")
{
    std::string const base_args =
        "shadow_zone --axis-lo 0.05 --axis-hi 0.45 --axis-steps 6 "
        "--delta-policy maximize_per_point --beta 1 ";
    auto const t1 = (g_work / "det1.csv").string();
    auto const t2 = (g_work / "det2.csv").string();
    auto const t4 = (g_work / "det4.csv").string();
    REQUIRE(run_cli(base_args + "--threads 1 --out " + t1) == 0);
    REQUIRE(run_cli(base_args + "--threads 2 --out " + t2) == 0);
    REQUIRE(run_cli(base_args + "--threads 4 --out " + t4) == 0);
    auto const b1 = slurp(t1);
    CHECK(b1 == slurp(t2));
    CHECK(b1 == slurp(t4));
    CHECK(!b1.empty());

    std::string const avg_args =
        "averaged_points --axis-steps 2 --n-beta 6 --n-phi 9 ";
    auto const a1 = (g_work / "avg1.csv").string();
    auto const a2 = (g_work / "avg2.csv").string();
    REQUIRE(run_cli(avg_args + "--threads 1 --out " + a1) == 0);
    REQUIRE(run_cli(avg_args + "--threads 3 --out " + a2) == 0);
    CHECK(slurp(a1) == slurp(a2));
}

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_scan_cli <path-to-cli-binary>\n");
        return 2;
    }
    g_cli = argv[1];
    g_work = fs::temp_directory_path() / "cwscat_scan_cli_tests";
    std::error_code ec;
    fs::remove_all(g_work, ec);
    fs::create_directories(g_work);

    doctest::Context context;
    return context.run();
}
